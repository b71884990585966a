//! Bound quiver algebras `kQ/I` with Gröbner normal forms.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::linalg::{PrimeField, Subspace};
use crate::quiver::{LinComb, Path, Quiver};

pub const DEFAULT_MAX_LEN: usize = 20;

/// Cap on the size of the Gröbner basis before giving up.
const MAX_GENERATORS: usize = 20_000;
/// Cap on the number of paths used to certify inhomogeneous ideals.
const MAX_CERTIFY_PATHS: usize = 20_000;

/// Monic polynomials indexed by their tips, for division.
#[derive(Clone, Debug, Default)]
struct Reducer {
    gens: Vec<LinComb>,
    tips: HashMap<Vec<usize>, usize>,
    lens: Vec<usize>,
}

impl Reducer {
    fn new(gens: Vec<LinComb>) -> Self {
        let mut tips = HashMap::new();
        let mut lens = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            let t = g.tip().expect("nonzero generator").0;
            tips.insert(t.arrows.clone(), i);
            lens.push(t.len());
        }
        lens.sort_unstable();
        lens.dedup();
        Reducer { gens, tips, lens }
    }

    /// First (leftmost, shortest) generator whose tip divides `p`.
    fn divisor(&self, p: &Path) -> Option<(usize, usize)> {
        let n = p.len();
        for &l in &self.lens {
            if l > n {
                break;
            }
            for start in 0..=n - l {
                if let Some(&g) = self.tips.get(&p.arrows[start..start + l]) {
                    return Some((g, start));
                }
            }
        }
        None
    }

    fn is_reducible(&self, p: &Path) -> bool {
        self.divisor(p).is_some()
    }

    fn reduce(&self, f: PrimeField, q: &Quiver, x: &LinComb) -> LinComb {
        let mut work = x.clone();
        let mut out = LinComb::zero();
        while let Some((p, c)) = work.pop_tip() {
            match self.divisor(&p) {
                None => out.add_term(f, p, c),
                Some((gi, start)) => {
                    let g = &self.gens[gi];
                    let l = g.tip().unwrap().0.len();
                    let (u, v) = split_around(q, &p, start, l);
                    let neg = f.neg(c);
                    for (t, d) in g.terms().rev().skip(1) {
                        let s = u.concat(t).and_then(|s| s.concat(&v)).expect("parallel");
                        work.add_term(f, s, f.mul(neg, d));
                    }
                }
            }
        }
        out
    }
}

/// Splits `p` as `u * (p[start..start+len]) * v`.
fn split_around(q: &Quiver, p: &Path, start: usize, len: usize) -> (Path, Path) {
    let mid_source =
        if start == 0 { p.source } else { q.arrow(p.arrows[start - 1]).target };
    let mid_target =
        if start + len == 0 { p.source } else { q.arrow(p.arrows[start + len - 1]).target };
    let u = Path { source: p.source, target: mid_source, arrows: p.arrows[..start].to_vec() };
    let v = Path { source: mid_target, target: p.target, arrows: p.arrows[start + len..].to_vec() };
    (u, v)
}

fn monic(f: PrimeField, x: &LinComb) -> LinComb {
    let c = x.tip().expect("nonzero").1;
    x.scale(f, f.inv(c))
}

/// `Λ = kQ/I` with a reduced Gröbner basis under the length-lexicographic
/// order, its basis of irreducible paths and the right action of arrows.
#[derive(Clone, Debug)]
pub struct BoundAlgebra {
    field: PrimeField,
    quiver: Quiver,
    relations: Vec<LinComb>,
    reducer: Reducer,
    max_len: usize,
    basis: Vec<Path>,
    basis_index: HashMap<Path, usize>,
    /// `by_ends[i][j]`: basis indices of paths from `i` to `j`, in path order.
    by_ends: Vec<Vec<Vec<usize>>>,
    /// `action[b][a]`: normal form of `basis[b] * a` over the basis.
    action: Vec<Vec<Vec<(usize, u32)>>>,
    nilpotency_bound: usize,
}

impl BoundAlgebra {
    pub fn build(
        field: PrimeField,
        quiver: Quiver,
        relations: Vec<LinComb>,
        max_len: usize,
    ) -> Result<Self> {
        for (k, r) in relations.iter().enumerate() {
            if r.is_zero() {
                return Err(Error::InvalidRelation(format!("relation {k} is zero")));
            }
            if r.endpoints().is_none() {
                return Err(Error::InvalidRelation(format!(
                    "relation {} has non-parallel paths",
                    r.display(&quiver)
                )));
            }
            if r.terms().any(|(p, _)| p.len() < 2) {
                return Err(Error::InvalidRelation(format!(
                    "relation {} has a path of length < 2",
                    r.display(&quiver)
                )));
            }
        }
        let reducer = groebner(field, &quiver, &relations, max_len)?;

        // irreducible paths, breadth first; irreducibility is closed under subpaths
        let mut basis: Vec<Path> = (0..quiver.vertex_count()).map(Path::trivial).collect();
        let mut frontier = basis.clone();
        let mut len = 0;
        while !frontier.is_empty() {
            if len >= max_len {
                return Err(Error::NotAdmissible(max_len));
            }
            let mut next = Vec::new();
            for p in &frontier {
                for &a in quiver.arrows_from(p.target) {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    let np = Path { source: p.source, target: quiver.arrow(a).target, arrows };
                    if !reducer.is_reducible(&np) {
                        next.push(np);
                    }
                }
            }
            basis.extend(next.iter().cloned());
            frontier = next;
            len += 1;
        }
        basis.sort_by(|x, y| x.source.cmp(&y.source).then_with(|| x.cmp(y)));
        let basis_index: HashMap<Path, usize> =
            basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let n = quiver.vertex_count();
        let mut by_ends = vec![vec![Vec::new(); n]; n];
        for (i, p) in basis.iter().enumerate() {
            by_ends[p.source][p.target].push(i);
        }

        let mut action = Vec::with_capacity(basis.len());
        for p in &basis {
            let mut row = vec![Vec::new(); quiver.arrow_count()];
            for &a in quiver.arrows_from(p.target) {
                let mut arrows = p.arrows.clone();
                arrows.push(a);
                let np = Path { source: p.source, target: quiver.arrow(a).target, arrows };
                let nf = reducer.reduce(field, &quiver, &LinComb::from_path(np));
                row[a] = nf.terms().map(|(q, c)| (basis_index[q], c)).collect();
            }
            action.push(row);
        }

        let mut alg = BoundAlgebra {
            field,
            quiver,
            relations,
            reducer,
            max_len,
            basis,
            basis_index,
            by_ends,
            action,
            nilpotency_bound: 0,
        };
        alg.nilpotency_bound = alg.compute_nilpotency()?;
        if !alg.is_length_homogeneous() {
            alg.certify_dimension()?;
        }
        Ok(alg)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[LinComb] {
        &self.relations
    }

    pub fn groebner_basis(&self) -> &[LinComb] {
        &self.reducer.gens
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn path_basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.basis_index.get(p).copied()
    }

    /// Basis indices of irreducible paths from `i` to `j`.
    pub fn paths_between(&self, i: usize, j: usize) -> &[usize] {
        &self.by_ends[i][j]
    }

    /// Normal form of `basis[b] * a` over basis indices.
    pub fn right_action(&self, b: usize, a: usize) -> &[(usize, u32)] {
        &self.action[b][a]
    }

    /// Least `N` such that every path of length `N` lies in the ideal.
    pub fn nilpotency_bound(&self) -> usize {
        self.nilpotency_bound
    }

    /// `dim P(i)`: number of irreducible paths starting at `i`.
    pub fn projective_dim(&self, i: usize) -> usize {
        self.by_ends[i].iter().map(Vec::len).sum()
    }

    pub fn normal_form(&self, x: &LinComb) -> LinComb {
        self.reducer.reduce(self.field, &self.quiver, x)
    }

    pub fn opposite(&self) -> Result<BoundAlgebra> {
        BoundAlgebra::build(
            self.field,
            self.quiver.opposite(),
            self.relations.iter().map(LinComb::reversed).collect(),
            self.max_len,
        )
    }

    fn is_length_homogeneous(&self) -> bool {
        self.relations.iter().all(|r| {
            let mut lens = r.terms().map(|(p, _)| p.len());
            let first = lens.next();
            lens.all(|l| Some(l) == first)
        })
    }

    fn compute_nilpotency(&self) -> Result<usize> {
        let d = self.dim();
        let mut layer: Vec<Vec<u32>> = (0..self.vertex_count())
            .map(|v| {
                let mut e = vec![0; d];
                e[self.basis_index[&Path::trivial(v)]] = 1;
                e
            })
            .collect();
        for k in 0..=self.max_len {
            let space = Subspace::from_vectors(self.field, d, &layer);
            if space.is_zero() {
                return Ok(k);
            }
            layer = space
                .vectors()
                .iter()
                .flat_map(|v| (0..self.quiver.arrow_count()).map(move |a| self.act_vector(v, a)))
                .collect();
        }
        Err(Error::NotAdmissible(self.max_len))
    }

    /// Right multiplication of a vector over the path basis by an arrow.
    pub fn act_vector(&self, v: &[u32], a: usize) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0; v.len()];
        for (b, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &(t, d) in &self.action[b][a] {
                out[t] = f.add(out[t], f.mul(c, d));
            }
        }
        out
    }

    /// Independent dimension count: `kQ_{<N}` modulo the span of all
    /// `u * r * v`. Needed when relations mix lengths, where truncated
    /// completion alone is not conclusive.
    fn certify_dimension(&self) -> Result<()> {
        let n = self.nilpotency_bound;
        let q = &self.quiver;
        let mut paths: Vec<Path> = (0..q.vertex_count()).map(Path::trivial).collect();
        let mut frontier = paths.clone();
        for _ in 1..n {
            let mut next = Vec::new();
            for p in &frontier {
                for &a in q.arrows_from(p.target) {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    next.push(Path { source: p.source, target: q.arrow(a).target, arrows });
                }
            }
            paths.extend(next.iter().cloned());
            if paths.len() > MAX_CERTIFY_PATHS {
                return Err(Error::Uncertified("too many paths to certify the ideal".into()));
            }
            frontier = next;
        }
        let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let to_vec = |x: &LinComb| {
            let mut v = vec![0; paths.len()];
            for (p, c) in x.terms() {
                if let Some(&i) = index.get(p) {
                    v[i] = c;
                }
            }
            v
        };
        let mut gens: Vec<LinComb> = self.relations.clone();
        let mut space = Subspace::zero(self.field, paths.len());
        let mut seen = HashSet::new();
        while let Some(g) = gens.pop() {
            let g = g.truncated(n);
            if g.is_zero() {
                continue;
            }
            let v = to_vec(&g);
            if space.contains(&v) || !seen.insert(v.clone()) {
                continue;
            }
            space = space.sum(&Subspace::from_vectors(self.field, paths.len(), &[v]));
            let (s, t) = g.endpoints().expect("parallel");
            for &a in q.arrows_into(s) {
                let left = Path { source: q.arrow(a).source, target: s, arrows: vec![a] };
                gens.push(g.sandwich(&left, &Path::trivial(t)).truncated(n));
            }
            for &a in q.arrows_from(t) {
                let right = Path { source: t, target: q.arrow(a).target, arrows: vec![a] };
                gens.push(g.sandwich(&Path::trivial(s), &right).truncated(n));
            }
        }
        if paths.len() - space.dim() != self.dim() {
            return Err(Error::Uncertified(format!(
                "Gröbner completion inconclusive within max_len {}",
                self.max_len
            )));
        }
        Ok(())
    }
}

/// Noncommutative Buchberger completion. Overlaps are processed in order of
/// increasing length and ignored beyond `2 * max_len`.
fn groebner(f: PrimeField, q: &Quiver, relations: &[LinComb], max_len: usize) -> Result<Reducer> {
    let mut gens = interreduce(f, q, relations.iter().filter(|r| !r.is_zero()).cloned().collect());
    let mut done: HashSet<(LinComb, LinComb, usize)> = HashSet::new();
    loop {
        // unprocessed overlaps grouped by their length
        let mut pending: Vec<(usize, usize, usize, usize)> = Vec::new();
        for (i, gi) in gens.iter().enumerate() {
            let ti = &gi.tip().unwrap().0.arrows;
            for (j, gj) in gens.iter().enumerate() {
                let tj = &gj.tip().unwrap().0.arrows;
                for k in 1..ti.len().min(tj.len()) {
                    if ti[ti.len() - k..] != tj[..k] {
                        continue;
                    }
                    let total = ti.len() + tj.len() - k;
                    if total > 2 * max_len || done.contains(&(gi.clone(), gj.clone(), k)) {
                        continue;
                    }
                    pending.push((total, i, j, k));
                }
            }
        }
        let Some(min_len) = pending.iter().map(|t| t.0).min() else {
            break;
        };
        let reducer = Reducer::new(gens.clone());
        let mut fresh = Vec::new();
        for &(_, i, j, k) in pending.iter().filter(|t| t.0 == min_len) {
            let (gi, gj) = (&gens[i], &gens[j]);
            done.insert((gi.clone(), gj.clone(), k));
            let ti = gi.tip().unwrap().0;
            let tj = gj.tip().unwrap().0;
            // ti = u v, tj = v w
            let (u, _) = split_around(q, ti, ti.len() - k, k);
            let (_, w) = split_around(q, tj, 0, k);
            let mut s = gi.sandwich(&Path::trivial(ti.source), &w);
            s.add_scaled(f, &gj.sandwich(&u, &Path::trivial(tj.target)), f.neg(1));
            let r = reducer.reduce(f, q, &s);
            if !r.is_zero() {
                fresh.push(monic(f, &r));
            }
        }
        if !fresh.is_empty() {
            gens.extend(fresh);
            gens = interreduce(f, q, gens);
            if gens.len() > MAX_GENERATORS {
                return Err(Error::NotAdmissible(max_len));
            }
        }
    }
    Ok(Reducer::new(gens))
}

/// Fully reduces every generator by the others, drops zeros, makes them
/// monic and sorts by tip.
fn interreduce(f: PrimeField, q: &Quiver, mut gens: Vec<LinComb>) -> Vec<LinComb> {
    gens.retain(|g| !g.is_zero());
    gens = gens.iter().map(|g| monic(f, g)).collect();
    loop {
        gens.sort_by(|a, b| a.tip().unwrap().0.cmp(b.tip().unwrap().0));
        gens.dedup();
        let mut changed = false;
        let mut i = 0;
        while i < gens.len() {
            let others: Vec<LinComb> =
                gens.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, g)| g.clone()).collect();
            let r = Reducer::new(others).reduce(f, q, &gens[i]);
            if r != gens[i] {
                changed = true;
                if r.is_zero() {
                    gens.remove(i);
                    continue;
                }
                gens[i] = monic(f, &r);
            }
            i += 1;
        }
        if !changed {
            return gens;
        }
    }
}
