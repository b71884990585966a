use findim_core::algebra::BoundAlgebra;
use findim_core::linalg::{PrimeField, Subspace};
use findim_core::quiver::{LinComb, Path, Quiver};
use findim_core::samples;
use proptest::prelude::*;

/// All paths of length < n, in enumeration order.
fn paths_below(q: &Quiver, n: usize) -> Vec<Path> {
    let mut all: Vec<Path> = (0..q.vertex_count()).map(Path::trivial).collect();
    let mut layer = all.clone();
    for _ in 1..n {
        let mut next = Vec::new();
        for p in &layer {
            for (k, a) in q.arrows().iter().enumerate() {
                if a.source == p.target {
                    let mut arrows = p.arrows.clone();
                    arrows.push(k);
                    next.push(Path { source: p.source, target: a.target, arrows });
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

/// dim kQ/(I + J^n) computed as |paths of length < n| minus the rank of every
/// `u * r * v`, with no reference to normal forms.
fn brute_dim(f: PrimeField, q: &Quiver, rels: &[LinComb], n: usize) -> usize {
    let paths = paths_below(q, n);
    let mut vecs = Vec::new();
    for r in rels {
        let (s, t) = r.endpoints().unwrap();
        let m = r.terms().map(|(p, _)| p.len()).min().unwrap();
        for u in paths.iter().filter(|u| u.target == s && u.len() + m < n) {
            for v in paths.iter().filter(|v| v.source == t && u.len() + v.len() + m < n) {
                let x = r.sandwich(u, v);
                let mut row = vec![0u32; paths.len()];
                for (p, c) in x.terms() {
                    if let Some(i) = paths.iter().position(|y| y == p) {
                        row[i] = f.add(row[i], c);
                    }
                }
                vecs.push(row);
            }
        }
    }
    paths.len() - Subspace::from_vectors(f, paths.len(), &vecs).dim()
}

#[test]
fn five_vertex_dimension_matches_enumeration() {
    for p in [2, 3, 5] {
        let f = PrimeField::new(p).unwrap();
        let a = samples::five_vertex(f);
        let n = a.nilpotency_bound();
        let brute = brute_dim(f, a.quiver(), a.relations(), n);
        assert_eq!(brute, 33);
        assert_eq!(brute_dim(f, a.quiver(), a.relations(), n + 2), 33);
        // per projective: count surviving paths from each vertex
        let per: Vec<usize> = (0..5)
            .map(|i| {
                let sub: Vec<LinComb> = a.relations().to_vec();
                let q = a.quiver();
                let paths = paths_below(q, n);
                let mut vecs = Vec::new();
                for r in &sub {
                    let (s, t) = r.endpoints().unwrap();
                    for u in paths.iter().filter(|u| u.target == s && u.source == i) {
                        for v in paths.iter().filter(|v| v.source == t) {
                            let x = r.sandwich(u, v);
                            let mut row = vec![0u32; paths.len()];
                            for (pp, c) in x.terms() {
                                if let Some(k) = paths.iter().position(|y| y == pp) {
                                    row[k] = f.add(row[k], c);
                                }
                            }
                            vecs.push(row);
                        }
                    }
                }
                paths.iter().filter(|p| p.source == i).count()
                    - Subspace::from_vectors(f, paths.len(), &vecs).dim()
            })
            .collect();
        assert_eq!(per, vec![10, 7, 5, 4, 7]);
    }
}

#[test]
fn non_admissible_is_rejected() {
    let f = PrimeField::gf2();
    let q = Quiver::new(&["1"], &[("x", "1", "1")]).unwrap();
    // x^2 = x^3 leaves x idempotent-like: kQ/I is finite but not admissible
    let r = LinComb::from_terms(f, [(1, q.path(&["x", "x"]).unwrap()), (1, q.path(&["x", "x", "x"]).unwrap())]);
    assert!(BoundAlgebra::build(f, q.clone(), vec![r], 12).is_err());
    assert!(BoundAlgebra::build(f, q, vec![], 12).is_err());
}

#[test]
fn mixed_length_relation_is_certified() {
    // x*y = y*x*y, x^2 = 0, y^2 = 0 on one vertex
    let f = PrimeField::new(3).unwrap();
    let q = Quiver::new(&["1"], &[("x", "1", "1"), ("y", "1", "1")]).unwrap();
    let p = |n: &[&str]| q.path(n).unwrap();
    let rels = vec![
        LinComb::from_terms(f, [(1, p(&["x", "y"])), (2, p(&["y", "x", "y"]))]),
        LinComb::from_path(p(&["x", "x"])),
        LinComb::from_path(p(&["y", "y"])),
    ];
    let a = BoundAlgebra::build(f, q.clone(), rels.clone(), 12).unwrap();
    assert_eq!(a.dim(), brute_dim(f, &q, &rels, a.nilpotency_bound() + 1));
}

fn random_algebra() -> impl Strategy<Value = (u32, Vec<(usize, usize)>, Vec<Vec<(u32, Vec<usize>)>>)> {
    (1usize..=3, 1usize..=4).prop_flat_map(|(nv, na)| {
        (
            prop::sample::select(vec![2u32, 3]),
            prop::collection::vec((0..nv, 0..nv), na),
            prop::collection::vec(
                prop::collection::vec((1u32..3, prop::collection::vec(0..na, 2..4)), 1..3),
                0..5,
            ),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]
    #[test]
    fn dimension_agrees_with_brute_force((p, arrows, rels) in random_algebra()) {
        let f = PrimeField::new(p).unwrap();
        let nv = arrows.iter().map(|&(s, t)| s.max(t)).max().unwrap() + 1;
        let names: Vec<String> = (0..arrows.len()).map(|k| format!("a{k}")).collect();
        let verts: Vec<String> = (0..nv).map(|v| v.to_string()).collect();
        let spec: Vec<(String, String, String)> = arrows
            .iter()
            .enumerate()
            .map(|(k, &(s, t))| (names[k].clone(), s.to_string(), t.to_string()))
            .collect();
        let q = Quiver::new(&verts, &spec).unwrap();
        // keep only composable words, then group parallel ones into relations;
        // all words of length 4 are killed so the ideal is admissible
        let mut relations = Vec::new();
        for r in &rels {
            let terms: Vec<(u32, Path)> = r
                .iter()
                .filter_map(|(c, w)| Path::from_arrows(&q, w.clone()).ok().map(|p| (*c, p)))
                .collect();
            if let Some((_, first)) = terms.first() {
                let ends = (first.source, first.target);
                let lc = LinComb::from_terms(
                    f,
                    terms.iter().filter(|(_, p)| (p.source, p.target) == ends).cloned(),
                );
                if !lc.is_zero() {
                    relations.push(lc);
                }
            }
        }
        for w in paths_below(&q, 5).into_iter().filter(|p| p.len() == 4) {
            relations.push(LinComb::from_path(w));
        }
        let a = BoundAlgebra::build(f, q.clone(), relations.clone(), 12).unwrap();
        prop_assert_eq!(a.dim(), brute_dim(f, &q, &relations, 5));
        prop_assert_eq!(a.opposite().unwrap().dim(), a.dim());
        let total: usize = (0..nv).map(|i| a.projective_dim(i)).sum();
        prop_assert_eq!(total, a.dim());
    }
}
