//! Certified Krull–Schmidt decomposition and a registry of indecomposable
//! isomorphism classes.
//!
//! Splitting uses idempotents of `End(M)`: for `x ∈ End(M)` with minimal
//! polynomial `μ`, the Frobenius-fixed part of `k[t]/μ` has dimension equal
//! to the number of distinct irreducible factors of `μ`, and a non-scalar
//! fixed element yields a nontrivial idempotent. When no basis element
//! splits, locality is certified through the ideal `J0` generated by
//! commutators and nilpotent parts: if `J0` is nilpotent it is the Jacobson
//! radical and `End/J0` is commutative, so `End(M)` is local exactly when
//! Frobenius fixes a one-dimensional subspace of `End/J0`.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::BoundAlgebra;
use crate::error::{Error, Result};
use crate::hom::{hom_basis, syzygy};
use crate::linalg::poly::{find_root, frobenius_fixed_basis, krylov_relation};
use crate::linalg::{minimal_polynomial, Matrix, Poly, PrimeField, Subspace};
use crate::quiver::{LinComb, Path};
use crate::rep::{ModuleMap, Representation};

pub type ClassId = usize;

/// Exhaustive idempotent search is used up to this many endomorphisms.
const EXHAUSTIVE_LIMIT: u64 = 1 << 16;
const RANDOM_TRIALS: usize = 256;

/// Multiset of indecomposable classes, sorted by id.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Decomposition {
    pub parts: Vec<(ClassId, usize)>,
}

impl Decomposition {
    pub fn from_ids(ids: impl IntoIterator<Item = ClassId>) -> Self {
        let mut counts: HashMap<ClassId, usize> = HashMap::new();
        for id in ids {
            *counts.entry(id).or_default() += 1;
        }
        let mut parts: Vec<_> = counts.into_iter().collect();
        parts.sort_unstable();
        Decomposition { parts }
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn count(&self) -> usize {
        self.parts.iter().map(|p| p.1).sum()
    }

    pub fn ids(&self) -> impl Iterator<Item = ClassId> + '_ {
        self.parts.iter().map(|p| p.0)
    }

    pub fn multiplicity(&self, id: ClassId) -> usize {
        self.parts.iter().find(|p| p.0 == id).map_or(0, |p| p.1)
    }

    pub fn union(&self, o: &Decomposition) -> Decomposition {
        let ids = self
            .parts
            .iter()
            .chain(&o.parts)
            .flat_map(|&(id, k)| std::iter::repeat(id).take(k));
        Decomposition::from_ids(ids)
    }

    /// `add M`: the set of classes, multiplicities dropped.
    pub fn support(&self) -> Decomposition {
        Decomposition { parts: self.parts.iter().map(|&(id, _)| (id, 1)).collect() }
    }
}

fn flat(m: &ModuleMap) -> Vec<u32> {
    m.blocks.iter().flat_map(|b| b.data().iter().copied()).collect()
}

fn unflat(f: PrimeField, shape: &[usize], v: &[u32]) -> ModuleMap {
    let mut off = 0;
    let blocks = shape
        .iter()
        .map(|&d| {
            let b = Matrix::from_vec(f, d, d, v[off..off + d * d].to_vec());
            off += d * d;
            b
        })
        .collect();
    ModuleMap { blocks }
}

fn map_minpoly(f: PrimeField, x: &ModuleMap) -> Poly {
    x.blocks
        .iter()
        .filter(|b| b.rows() > 0)
        .fold(Poly::constant(1), |acc, b| acc.lcm(&minimal_polynomial(b), f))
}

fn eval_map(p: &Poly, x: &ModuleMap) -> ModuleMap {
    ModuleMap { blocks: x.blocks.iter().map(|b| p.eval_matrix(b)).collect() }
}

/// A nontrivial idempotent in `k[x]`, if `k[x]` is not local.
fn idempotent_from<R: Rng>(f: PrimeField, x: &ModuleMap, rng: &mut R) -> Result<Option<ModuleMap>> {
    let mu = map_minpoly(f, x);
    let fixed = frobenius_fixed_basis(&mu, f);
    if fixed.len() <= 1 {
        return Ok(None);
    }
    let y = fixed
        .into_iter()
        .find(|y| y.degree().unwrap_or(0) >= 1)
        .expect("fixed space of dimension >= 2 has a non-constant element");
    // minimal polynomial of y inside k[t]/μ splits into distinct linear factors
    let d = mu.degree().unwrap();
    let as_vec = |p: &Poly| {
        let mut v = p.coeffs.clone();
        v.resize(d, 0);
        v
    };
    let ymin = krylov_relation(
        f,
        d,
        |_, prev: Option<&Poly>| match prev {
            None => Poly::constant(1),
            Some(q) => q.mulmod(&y, &mu, f),
        },
        as_vec,
    );
    let c = find_root(&ymin, f, rng)
        .ok_or_else(|| Error::Uncertified("no root found for a split polynomial".into()))?;
    let e = y
        .sub(&Poly::constant(c), f)
        .powmod(f.modulus() as u64 - 1, &mu, f);
    let em = eval_map(&e, x);
    debug_assert!(em.compose(&em) == em);
    Ok(Some(em))
}

enum Locality {
    Local(Subspace),
    Split(ModuleMap),
}

fn ideal_closure(f: PrimeField, shape: &[usize], basis: &[ModuleMap], gens: Vec<Vec<u32>>) -> Subspace {
    let len: usize = shape.iter().map(|d| d * d).sum();
    let mut space = Subspace::from_vectors(f, len, &gens);
    let mut queue = space.vectors();
    while let Some(v) = queue.pop() {
        let x = unflat(f, shape, &v);
        for b in basis {
            for prod in [b.compose(&x), x.compose(b)] {
                let w = flat(&prod);
                if !space.contains(&w) {
                    space = space.sum(&Subspace::from_vectors(f, len, &[w.clone()]));
                    queue.push(w);
                }
            }
        }
    }
    space
}

fn is_nilpotent_ideal(f: PrimeField, shape: &[usize], j: &Subspace) -> bool {
    let jb: Vec<ModuleMap> = j.vectors().iter().map(|v| unflat(f, shape, v)).collect();
    let mut power = j.clone();
    loop {
        if power.is_zero() {
            return true;
        }
        let prods: Vec<Vec<u32>> = power
            .vectors()
            .iter()
            .flat_map(|v| {
                let a = unflat(f, shape, v);
                jb.iter().map(move |b| flat(&a.compose(b))).collect::<Vec<_>>()
            })
            .collect();
        let next = Subspace::from_vectors(f, power.ambient(), &prods);
        if next.dim() >= power.dim() {
            return false;
        }
        power = next;
    }
}

/// Nilpotent elements of `k[b]`: the kernel of a high enough Frobenius power.
fn nilradical_gens(f: PrimeField, b: &ModuleMap) -> Vec<ModuleMap> {
    let mu = map_minpoly(f, b);
    let d = mu.degree().unwrap_or(0);
    if d <= 1 {
        return Vec::new();
    }
    let p = f.modulus() as u64;
    let mut q = p;
    while q < d as u64 {
        q *= p;
    }
    let tq = Poly::x().powmod(q, &mu, f);
    let mut frob = Matrix::zeros(f, d, d);
    let mut img = Poly::constant(1);
    for j in 0..d {
        for (i, &c) in img.coeffs.iter().enumerate() {
            frob.set(i, j, c);
        }
        img = img.mulmod(&tq, &mu, f);
    }
    let ker = frob.kernel_basis();
    (0..ker.cols()).map(|j| eval_map(&Poly::new(ker.col(j)), b)).collect()
}

fn analyse<R: Rng>(f: PrimeField, shape: &[usize], basis: &[ModuleMap], rng: &mut R) -> Result<Locality> {
    let len: usize = shape.iter().map(|d| d * d).sum();
    if basis.len() == 1 {
        return Ok(Locality::Local(Subspace::zero(f, len)));
    }
    for b in basis {
        if let Some(e) = idempotent_from(f, b, rng)? {
            return Ok(Locality::Split(e));
        }
    }
    let mut gens = Vec::new();
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i + 1..] {
            let c = a.compose(b).add(&b.compose(a).scale(f.neg(1)));
            if !c.is_zero() {
                gens.push(flat(&c));
            }
        }
        gens.extend(nilradical_gens(f, a).iter().map(flat));
    }
    let j = ideal_closure(f, shape, basis, gens);
    if is_nilpotent_ideal(f, shape, &j) {
        // End/J is commutative and reduced: count its field factors
        let mut quotient: Vec<&ModuleMap> = Vec::new();
        let mut span = j.clone();
        for b in basis {
            let v = flat(b);
            if !span.contains(&v) {
                span = span.sum(&Subspace::from_vectors(f, len, &[v]));
                quotient.push(b);
            }
        }
        let r = quotient.len();
        let mut cols: Vec<Vec<u32>> = j.vectors();
        let jd = cols.len();
        cols.extend(quotient.iter().map(|b| flat(b)));
        let a = Matrix::from_columns(f, len, &cols);
        let coords = |x: &ModuleMap| -> Vec<u32> {
            let c = a.solve(&flat(x)).expect("shape").expect("element of End");
            c[jd..].to_vec()
        };
        let mut frob = Matrix::zeros(f, r, r);
        for (k, b) in quotient.iter().enumerate() {
            let bp = ModuleMap { blocks: b.blocks.iter().map(|m| m.pow(f.modulus() as u64)).collect() };
            for (i, c) in coords(&bp).into_iter().enumerate() {
                frob.set(i, k, c);
            }
        }
        let fixed = frob.sub(&Matrix::identity(f, r)).kernel_basis();
        if fixed.cols() <= 1 {
            return Ok(Locality::Local(j));
        }
        let one = coords(&ModuleMap { blocks: shape.iter().map(|&d| Matrix::identity(f, d)).collect() });
        let ones = Subspace::from_vectors(f, r, &[one]);
        let z = (0..fixed.cols())
            .map(|c| fixed.col(c))
            .find(|z| !ones.contains(z))
            .expect("fixed space larger than the scalars");
        let mut y = ModuleMap { blocks: shape.iter().map(|&d| Matrix::zeros(f, d, d)).collect() };
        for (c, b) in z.iter().zip(&quotient) {
            y = y.add(&b.scale(*c));
        }
        return match idempotent_from(f, &y, rng)? {
            Some(e) => Ok(Locality::Split(e)),
            None => Err(Error::Uncertified("fixed element without idempotent".into())),
        };
    }
    // not local: look for an element whose minimal polynomial is not primary
    let d = basis.len() as u32;
    let p = f.modulus() as u64;
    let combine = |coeffs: &[u32]| {
        let mut y = ModuleMap { blocks: shape.iter().map(|&d| Matrix::zeros(f, d, d)).collect() };
        for (c, b) in coeffs.iter().zip(basis) {
            if *c != 0 {
                y = y.add(&b.scale(*c));
            }
        }
        y
    };
    if p.checked_pow(d).is_some_and(|n| n <= EXHAUSTIVE_LIMIT) {
        let total = p.pow(d);
        for idx in 1..total {
            let mut k = idx;
            let coeffs: Vec<u32> = (0..d)
                .map(|_| {
                    let c = (k % p) as u32;
                    k /= p;
                    c
                })
                .collect();
            if let Some(e) = idempotent_from(f, &combine(&coeffs), rng)? {
                return Ok(Locality::Split(e));
            }
        }
    } else {
        for _ in 0..RANDOM_TRIALS {
            let coeffs: Vec<u32> = (0..d).map(|_| rng.gen_range(0..f.modulus())).collect();
            if let Some(e) = idempotent_from(f, &combine(&coeffs), rng)? {
                return Ok(Locality::Split(e));
            }
        }
    }
    Err(Error::Uncertified(format!(
        "endomorphism ring of dimension {} is not local but no idempotent was found",
        basis.len()
    )))
}

/// An indecomposable summand with the Jacobson radical of its endomorphism
/// ring (flattened block coordinates).
#[derive(Clone, Debug)]
pub struct Piece {
    pub module: Representation,
    pub radical: Subspace,
}

/// Splits `m` into indecomposable summands, each certified local.
pub fn indecomposable_summands<R: Rng>(
    alg: &BoundAlgebra,
    m: &Representation,
    rng: &mut R,
) -> Result<Vec<Piece>> {
    let f = m.field();
    let mut out = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(x) = stack.pop() {
        if x.is_zero() {
            continue;
        }
        let basis = hom_basis(alg, &x, &x);
        match analyse(f, x.dims(), &basis, rng)? {
            Locality::Local(radical) => out.push(Piece { module: x, radical }),
            Locality::Split(e) => {
                let one = ModuleMap::identity(&x);
                let comp = one.add(&e.scale(f.neg(1)));
                let (b, _) = x.submodule(&comp.image());
                let (a, _) = x.submodule(&e.image());
                stack.push(b);
                stack.push(a);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct ClassInfo {
    pub module: Representation,
    pub radical: Subspace,
    pub projective: bool,
    pub syzygy: Option<Decomposition>,
}

/// Nontrivial basis paths, and sums of every set of at least two parallel
/// arrows (up to six arrows per pair of vertices).
fn rank_probes(alg: &BoundAlgebra) -> Vec<LinComb> {
    let f = alg.field();
    let q = alg.quiver();
    let mut out: Vec<LinComb> =
        alg.path_basis().iter().filter(|p| !p.is_trivial()).map(|p| LinComb::from_path(p.clone())).collect();
    for s in 0..q.vertex_count() {
        for t in 0..q.vertex_count() {
            let par: Vec<usize> = q.arrows_from(s).iter().copied().filter(|&a| q.arrow(a).target == t).collect();
            if par.len() < 2 || par.len() > 6 {
                continue;
            }
            for mask in 1u32..(1 << par.len()) {
                if mask.count_ones() < 2 {
                    continue;
                }
                let terms = par
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask & (1 << k) != 0)
                    .map(|(_, &a)| (1, Path::from_arrows(q, vec![a]).expect("arrow")));
                out.push(LinComb::from_terms(f, terms));
            }
        }
    }
    out
}

/// Serializable content of an [`IsoRegistry`]: class representatives with
/// their endomorphism radicals and known syzygies, plus the decompositions
/// already computed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegistrySnapshot {
    pub classes: Vec<ClassRecord>,
    pub decompositions: Vec<(Representation, Decomposition)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub module: Representation,
    pub radical_ambient: usize,
    pub radical: Vec<Vec<u32>>,
    pub projective: bool,
    pub syzygy: Option<Decomposition>,
}

/// Session-scoped catalogue of indecomposable classes. Registration is the
/// only mutation; everything else reads.
#[derive(Clone, Debug)]
pub struct IsoRegistry {
    alg: BoundAlgebra,
    classes: Vec<ClassInfo>,
    /// Classes bucketed by [`IsoRegistry::invariant`].
    by_invariant: HashMap<Vec<usize>, Vec<ClassId>>,
    /// Elements of the algebra whose action ranks are compared before any
    /// Hom computation.
    probes: Vec<LinComb>,
    memo: HashMap<Representation, Decomposition>,
    projectives: Vec<Representation>,
    rng: ChaCha8Rng,
}

impl IsoRegistry {
    pub fn new(alg: &BoundAlgebra, seed: u64) -> Self {
        let projectives = (0..alg.vertex_count()).map(|v| Representation::projective(alg, v)).collect();
        IsoRegistry {
            alg: alg.clone(),
            classes: Vec::new(),
            by_invariant: HashMap::new(),
            probes: rank_probes(alg),
            memo: HashMap::new(),
            projectives,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn algebra(&self) -> &BoundAlgebra {
        &self.alg
    }

    pub fn projective(&self, v: usize) -> &Representation {
        &self.projectives[v]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class(&self, id: ClassId) -> &ClassInfo {
        &self.classes[id]
    }

    pub fn module(&self, id: ClassId) -> &Representation {
        &self.classes[id].module
    }

    pub fn is_projective(&self, id: ClassId) -> bool {
        self.classes[id].projective
    }

    /// Rebuilds a module from a decomposition using class representatives.
    pub fn assemble(&self, d: &Decomposition) -> Representation {
        let mut out = Representation::zero(&self.alg);
        for &(id, k) in &d.parts {
            out = out.direct_sum(&self.classes[id].module.power(k));
        }
        out
    }

    /// Drops projective classes.
    pub fn non_projective(&self, d: &Decomposition) -> Decomposition {
        Decomposition { parts: d.parts.iter().copied().filter(|&(id, _)| !self.is_projective(id)).collect() }
    }

    pub fn register(&mut self, m: &Representation) -> Result<Decomposition> {
        if let Some(d) = self.memo.get(m) {
            return Ok(d.clone());
        }
        let pieces = indecomposable_summands(&self.alg, m, &mut self.rng)?;
        let mut ids = Vec::with_capacity(pieces.len());
        for piece in pieces {
            ids.push(self.classify(piece));
        }
        let d = Decomposition::from_ids(ids);
        self.memo.insert(m.clone(), d.clone());
        Ok(d)
    }

    /// Alias of [`register`](Self::register).
    pub fn decompose(&mut self, m: &Representation) -> Result<Decomposition> {
        self.register(m)
    }

    fn classify(&mut self, piece: Piece) -> ClassId {
        let m = &piece.module;
        let key = self.invariant(m);
        if let Some(cands) = self.by_invariant.get(&key) {
            for &id in cands {
                if self.same_class(id, m) {
                    return id;
                }
            }
        }
        let top = m.top_dims();
        let projective = top.iter().sum::<usize>() == 1 && {
            let v = top.iter().position(|&x| x == 1).unwrap();
            m.total_dim() == self.projectives[v].total_dim()
        };
        let id = self.classes.len();
        self.classes.push(ClassInfo {
            module: piece.module,
            radical: piece.radical,
            projective,
            syzygy: None,
        });
        self.by_invariant.entry(key).or_default().push(id);
        id
    }

    /// Dimension vector followed by the ranks of the probe elements; equal
    /// for isomorphic modules.
    fn invariant(&self, m: &Representation) -> Vec<usize> {
        let mut key = m.dims().to_vec();
        key.extend(self.probes.iter().map(|x| m.eval(x).rank()));
        key
    }

    /// `X ≅ R` for indecomposable `X` iff some `g ∘ f: R -> X -> R` is a unit
    /// of the local ring `End(R)`, i.e. lies outside its radical.
    fn same_class(&self, id: ClassId, x: &Representation) -> bool {
        let r = &self.classes[id];
        if r.module.top_dims() != x.top_dims() || r.module.socle_dims() != x.socle_dims() {
            return false;
        }
        let fs = hom_basis(&self.alg, &r.module, x);
        if fs.is_empty() {
            return false;
        }
        let gs = hom_basis(&self.alg, x, &r.module);
        fs.iter().any(|fm| gs.iter().any(|g| !r.radical.contains(&flat(&g.compose(fm)))))
    }

    pub fn is_isomorphic(&mut self, m: &Representation, n: &Representation) -> Result<bool> {
        if m.dims() != n.dims() {
            return Ok(false);
        }
        Ok(self.register(m)? == self.register(n)?)
    }

    /// Decomposition of the minimal syzygy of a class (memoized).
    pub fn syzygy_of(&mut self, id: ClassId) -> Result<Decomposition> {
        if let Some(d) = &self.classes[id].syzygy {
            return Ok(d.clone());
        }
        let om = syzygy(&self.alg, &self.classes[id].module);
        let d = self.register(&om)?;
        self.classes[id].syzygy = Some(d.clone());
        Ok(d)
    }

    /// `Ω` applied summandwise to a decomposition.
    pub fn syzygy_of_decomposition(&mut self, d: &Decomposition) -> Result<Decomposition> {
        let mut out = Decomposition::default();
        for &(id, k) in &d.parts {
            let s = self.syzygy_of(id)?;
            for _ in 0..k {
                out = out.union(&s);
            }
        }
        Ok(out)
    }

    pub fn snapshot(&self) -> RegistrySnapshot {
        let classes = self
            .classes
            .iter()
            .map(|c| ClassRecord {
                module: c.module.clone(),
                radical_ambient: c.radical.ambient(),
                radical: c.radical.vectors(),
                projective: c.projective,
                syzygy: c.syzygy.clone(),
            })
            .collect();
        let decompositions = self.memo.iter().map(|(m, d)| (m.clone(), d.clone())).collect();
        RegistrySnapshot { classes, decompositions }
    }

    /// Rebuilds a registry from a snapshot, re-validating every module
    /// against `alg`. Class identities are trusted, not recertified.
    pub fn restore(alg: &BoundAlgebra, seed: u64, snap: RegistrySnapshot) -> Result<Self> {
        let mut reg = IsoRegistry::new(alg, seed);
        let n = snap.classes.len();
        let check_ids = |d: &Decomposition| {
            if d.ids().all(|id| id < n) {
                Ok(())
            } else {
                Err(Error::Uncertified("snapshot refers to an unknown class".into()))
            }
        };
        let valid = |m: &Representation| -> Result<()> {
            let again = Representation::new(alg, m.dims().to_vec(), m.maps().to_vec())?;
            if &again == m {
                Ok(())
            } else {
                Err(Error::DimensionMismatch("snapshot module does not match the algebra".into()))
            }
        };
        for c in snap.classes {
            valid(&c.module)?;
            if let Some(d) = &c.syzygy {
                check_ids(d)?;
            }
            let f = alg.field();
            if c.radical.iter().any(|v| v.len() != c.radical_ambient || v.iter().any(|&x| x >= f.modulus())) {
                return Err(Error::DimensionMismatch("snapshot radical".into()));
            }
            let radical = Subspace::from_vectors(f, c.radical_ambient, &c.radical);
            let id = reg.classes.len();
            let key = reg.invariant(&c.module);
            reg.by_invariant.entry(key).or_default().push(id);
            reg.classes.push(ClassInfo { module: c.module, radical, projective: c.projective, syzygy: c.syzygy });
        }
        for (m, d) in snap.decompositions {
            valid(&m)?;
            check_ids(&d)?;
            reg.memo.insert(m, d);
        }
        Ok(reg)
    }
}
