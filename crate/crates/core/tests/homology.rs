use findim_core::algebra::BoundAlgebra;
use findim_core::hom::{cover_from_generators, projective_cover, top_generators};
use findim_core::homology::{syzygy_power, Caps, PdStatus, Session};
use findim_core::linalg::PrimeField;
use findim_core::random::{monomial_algebra, random_module, AlgebraShape};
use findim_core::rep::Representation;
use findim_core::samples;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn is_projective_by_dims(alg: &BoundAlgebra, m: &Representation) -> bool {
    let top = m.top_dims();
    let want: usize = top.iter().enumerate().map(|(v, &t)| t * alg.projective_dim(v)).sum();
    m.total_dim() == want
}

/// pd read off a deliberately non-minimal resolution: each cover gets one
/// redundant generator. Returns `None` if nothing is projective within `steps`.
fn pd_non_minimal(alg: &BoundAlgebra, m: &Representation, steps: usize) -> Option<usize> {
    let mut cur = m.clone();
    for n in 0..=steps {
        if is_projective_by_dims(alg, &cur) {
            return Some(n);
        }
        if n == steps {
            break;
        }
        let mut gens = top_generators(&cur);
        let v = (0..cur.vertex_count()).find(|&v| cur.dim_at(v) > 0).unwrap();
        let mut e = vec![0; cur.dim_at(v)];
        e[cur.dim_at(v) - 1] = 1;
        gens.push((v, e));
        cur = cover_from_generators(alg, &cur, gens).syzygy();
    }
    None
}

#[test]
fn trivial_cases() {
    let a = samples::a2(PrimeField::gf2());
    let mut s = Session::new(&a, 0, Caps::default());
    assert_eq!(s.pd(&Representation::simple(&a, 0)).unwrap(), PdStatus::Finite(1));
    assert_eq!(s.pd(&Representation::simple(&a, 1)).unwrap(), PdStatus::Finite(0));
    assert_eq!(s.pd(&Representation::projective(&a, 0)).unwrap(), PdStatus::Finite(0));
    assert!(syzygy_power(&a, &Representation::simple(&a, 0), 2).is_zero());

    let d = samples::dual_numbers(PrimeField::gf2());
    let mut s = Session::new(&d, 0, Caps::default());
    let simple = Representation::simple(&d, 0);
    match s.pd(&simple).unwrap() {
        PdStatus::Infinite(w) => {
            assert_eq!(w.len(), 1);
            let g = s.syzygy_graph(&w).unwrap();
            assert!(g.has_edge(w[0], w[0]));
        }
        other => panic!("{other:?}"),
    }
    let o3 = syzygy_power(&d, &simple, 3);
    assert!(s.registry.is_isomorphic(&o3, &simple).unwrap());
    assert_eq!(syzygy_power(&d, &simple, 0), simple);
    assert!(syzygy_power(&d, &Representation::projective(&d, 0), 1).is_zero());
    let c = s.classify_simples().unwrap();
    assert_eq!((c.infinite.clone(), c.alpha), (vec![0], 0));
}

#[test]
fn simples_of_the_five_vertex_example() {
    for p in [2, 3, 5] {
        let a = samples::five_vertex(PrimeField::new(p).unwrap());
        let mut s = Session::new(&a, 7, Caps::default());
        let c = s.classify_simples().unwrap();
        assert_eq!(c.infinite, vec![0, 3]);
        assert_eq!(c.finite, vec![1, 2, 4]);
        assert_eq!(c.alpha, 2);
        for v in 0..5 {
            let simple = Representation::simple(&a, v);
            assert_eq!(pd_non_minimal(&a, &simple, 3), c.pds[v].finite(), "vertex {v}");
            if let PdStatus::Infinite(w) = &c.pds[v] {
                let g = s.syzygy_graph(&w[..1]).unwrap();
                for k in 0..w.len() {
                    assert!(g.has_edge(w[k], w[(k + 1) % w.len()]));
                }
            }
        }
        assert_eq!(c.sigma(&a).dims(), &[1, 0, 0, 1, 0]);
    }
}

#[test]
fn third_and_fourth_syzygies_of_sigma() {
    let a = samples::five_vertex(PrimeField::gf2());
    let mut s = Session::new(&a, 1, Caps::default());
    let sigma = s.classify_simples().unwrap().sigma(&a);
    let m = syzygy_power(&a, &sigma, 3).direct_sum(&syzygy_power(&a, &sigma, 4));
    let d = s.register(&m).unwrap();
    // only the summand classes matter for Ψ; each occurs three times
    let np = s.registry.non_projective(&d);
    let mut found: Vec<(Vec<usize>, usize)> =
        np.ids().map(|id| (s.registry.module(id).dims().to_vec(), np.multiplicity(id))).collect();
    found.sort();
    assert_eq!(found, vec![(vec![1, 0, 0, 0, 0], 3), (vec![2, 0, 0, 0, 0], 3)]);
    let t = np.ids().find(|&id| s.registry.module(id).total_dim() == 2).unwrap();
    let t = s.registry.module(t).clone();
    assert_eq!(t.top_dims(), vec![1, 0, 0, 0, 0]);
    assert_eq!(t.socle_dims(), vec![1, 0, 0, 0, 0]);
}

#[test]
fn random_modules_against_non_minimal_resolutions() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let shape = AlgebraShape { max_dim: 24, ..AlgebraShape::default() };
    let mut checked = 0;
    for round in 0..20 {
        let a = monomial_algebra(&mut rng, PrimeField::gf2(), shape);
        let mut s = Session::new(&a, round, Caps::default());
        for _ in 0..5 {
            let m = random_module(&mut rng, &a, 10);
            let n = random_module(&mut rng, &a, 10);
            let pm = s.pd(&m).unwrap();
            let pn = s.pd(&n).unwrap();
            assert!(!pm.is_unknown());
            assert_eq!(s.pd(&m.direct_sum(&n)).unwrap().is_finite(), pm.is_finite() && pn.is_finite());
            if let (Some(x), Some(y)) = (pm.finite(), pn.finite()) {
                assert_eq!(s.pd(&m.direct_sum(&n)).unwrap(), PdStatus::Finite(x.max(y)));
            }
            match &pm {
                PdStatus::Finite(k) => {
                    assert_eq!(pd_non_minimal(&a, &m, *k), Some(*k));
                    assert!(syzygy_power(&a, &m, k + 1).is_zero());
                    assert!(*k == 0 || !syzygy_power(&a, &m, *k).is_zero());
                    checked += 1;
                }
                PdStatus::Infinite(w) => {
                    let g = s.syzygy_graph(&w[..1]).unwrap();
                    for k in 0..w.len() {
                        assert!(g.has_edge(w[k], w[(k + 1) % w.len()]));
                    }
                    assert_eq!(pd_non_minimal(&a, &m, 2), None);
                }
                PdStatus::Unknown(_) => unreachable!(),
            }
            // minimality: the kernel of the cover lies in its radical
            let cover = projective_cover(&a, &m);
            assert!(cover.projective.radical().contains(&cover.kernel));
            assert_eq!(cover.projective.top_dims(), m.top_dims());
            assert_eq!(cover.syzygy().total_dim() + m.total_dim(), cover.projective.total_dim());
            let _ = rng.gen::<u8>();
        }
    }
    assert!(checked > 10, "{checked}");
}
