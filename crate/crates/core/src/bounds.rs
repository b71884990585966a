//! Upper bounds for the finitistic dimension, the `[t]_L` / `⟨α⟩_L`
//! recurrences, sampled probes of the classes `𝒞(Λ)` and `𝒦(Λ)`, and a
//! truncated brute-force `fin.dim` used to sanity-check the bounds.

use std::collections::BTreeSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::decomp::{ClassId, Decomposition};
use crate::error::{Error, Result};
use crate::hom::syzygy;
use crate::homology::{PdStatus, Session};
use crate::igusa_todorov::{psi_of_decomposition, PhiParams};
use crate::layers::Layers;
use crate::linalg::{Matrix, Subspace};
use crate::quiver::Path;
use crate::random::random_module;
use crate::rep::Representation;

/// Which statement produced `bound_main`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Applicable {
    /// No simple of infinite pd: `gl.dim Λ = fin.dim Λ = α`.
    NoInfiniteSimples,
    /// `ℓℓ^∞(Λ) ≤ 3`: `fin.dim Λ ≤ α + 3 + Ψ(Ω^{α+1}Σ ⊕ Ω^{α+2}Σ)`.
    LayerLengthAtMostThree,
    /// Only the reduction `fin.dim Λ ≤ max{α, 1 + fin.dim ℒ^∞_β}` applies.
    ReductionOnly,
}

/// A Ψ value, or `None` when caps or the Φ window prevented certifying it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiTerm {
    pub value: Option<usize>,
    pub stable: bool,
    /// Ω steps examined before giving up (0 when the value is known).
    pub explored: usize,
    pub note: Option<String>,
}

impl PsiTerm {
    fn eval(session: &mut Session, d: &Decomposition, params: PhiParams) -> Result<PsiTerm> {
        match psi_of_decomposition(session, d, params) {
            Ok(r) => Ok(PsiTerm { value: Some(r.psi), stable: r.phi.stable, explored: 0, note: None }),
            Err(e @ (Error::RaiseCaps(_) | Error::NoPlateau { .. })) => {
                let explored = match &e {
                    Error::RaiseCaps(d) => *d,
                    Error::NoPlateau { ranks, .. } => ranks.len(),
                    _ => 0,
                };
                Ok(PsiTerm { value: None, stable: false, explored, note: Some(e.to_string()) })
            }
            Err(e) => Err(e),
        }
    }

    pub fn is_certified(&self) -> bool {
        self.value.is_some() && self.stable
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub alpha: usize,
    pub infinite_simples: Vec<usize>,
    pub ll_inf_algebra: usize,
    /// `ℓℓ^∞(Λ) − 1`; absent when `ℓℓ^∞(Λ) = 0`.
    pub beta: Option<usize>,
    /// `Ψ(Ω^{α+1}Σ)`
    pub psi_term1: PsiTerm,
    /// `Ψ(Ω^{α+1}Σ ⊕ Ω^{α+2}Σ)`
    pub psi_term2: PsiTerm,
    /// Bound on `Ψdim ℒ^∞_1`.
    pub bound_l1: Option<usize>,
    /// Bound on `fin.dim ℒ^∞_2`.
    pub bound_l2: Option<usize>,
    /// Bound on `fin.dim Λ`, present iff `ℓℓ^∞(Λ) ≤ 3` and the Ψ term is known.
    pub bound_main: Option<usize>,
    /// Exact value when there are no simples of infinite pd.
    pub findim_exact: Option<usize>,
    pub applicable: Applicable,
}

impl BoundReport {
    /// Every number in the report is certified.
    pub fn is_certified(&self) -> bool {
        self.psi_term1.is_certified() && self.psi_term2.is_certified()
    }
}

/// `M ∈ ℒ^∞_i`, i.e. `ℓℓ^∞(M) ≤ i`.
pub fn class_membership(layers: &Layers, m: &Representation, i: usize) -> bool {
    layers.ll_inf(m) <= i
}

/// `Ω^{a}Σ ⊕ Ω^{b}Σ ...` as a decomposition.
fn sigma_syzygies(session: &mut Session, sigma: &Decomposition, powers: &[usize]) -> Result<Decomposition> {
    let mut out = Decomposition::default();
    for &k in powers {
        out = out.union(&session.syzygy_power_of(sigma, k)?);
    }
    Ok(out)
}

pub fn evaluate_bounds(session: &mut Session, params: PhiParams) -> Result<BoundReport> {
    let c = session.classify_simples()?;
    let alg = session.algebra().clone();
    let layers = Layers::new(&c);
    let ll = layers.ll_inf(&Representation::regular(&alg));
    let sigma = session.register(&c.sigma(&alg))?;
    let a = c.alpha;
    let d1 = sigma_syzygies(session, &sigma, &[a + 1])?;
    let d2 = sigma_syzygies(session, &sigma, &[a + 1, a + 2])?;
    let psi_term1 = PsiTerm::eval(session, &d1, params)?;
    let psi_term2 = PsiTerm::eval(session, &d2, params)?;
    let applicable = if c.infinite.is_empty() {
        Applicable::NoInfiniteSimples
    } else if ll <= 3 {
        Applicable::LayerLengthAtMostThree
    } else {
        Applicable::ReductionOnly
    };
    let bound_main = match applicable {
        Applicable::NoInfiniteSimples => Some(a),
        Applicable::LayerLengthAtMostThree => psi_term2.value.map(|p| a + 3 + p),
        Applicable::ReductionOnly => None,
    };
    Ok(BoundReport {
        alpha: a,
        infinite_simples: c.infinite.clone(),
        ll_inf_algebra: ll,
        beta: ll.checked_sub(1),
        bound_l1: psi_term1.value.map(|p| a + 1 + p),
        bound_l2: psi_term2.value.map(|p| a + 2 + p),
        psi_term1,
        psi_term2,
        bound_main,
        findim_exact: c.infinite.is_empty().then_some(a),
        applicable,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceTable {
    pub s: usize,
    pub t: usize,
    /// `[t]_L(0..=n)`
    pub bracket: Vec<usize>,
    /// `⟨α⟩_L(0..=n)`
    pub angle: Vec<usize>,
    pub ll_inf_algebra: usize,
    /// `[α]_L(ℓℓ^∞(Λ))` when `t = α` and the table reaches that far.
    pub implied_bracket_bound: Option<usize>,
    pub implied_angle_bound: Option<usize>,
    /// Set when a Ψ evaluation could not be certified; tables stop there.
    pub truncated: bool,
}

/// Both recurrences for user-supplied `s` and `L` (which are assumed, not
/// checked, to satisfy `Ω^s(𝒞(Λ)) ⊆ add L`, resp. the `𝒦` version).
pub fn recurrence_tables(
    session: &mut Session,
    s: usize,
    l: &Representation,
    t: usize,
    n: usize,
    params: PhiParams,
) -> Result<RecurrenceTable> {
    let c = session.classify_simples()?;
    let alg = session.algebra().clone();
    let ll = Layers::new(&c).ll_inf(&Representation::regular(&alg));
    let sigma = session.register(&c.sigma(&alg))?;
    let ld = session.register(l)?;
    let mut truncated = false;

    let step = |session: &mut Session, x: usize, sig: usize, lp: usize| -> Result<Option<usize>> {
        let d = sigma_syzygies(session, &sigma, &[sig])?.union(&session.syzygy_power_of(&ld, lp)?);
        let term = PsiTerm::eval(session, &d, params)?;
        Ok(match term.value {
            Some(p) if term.stable => Some(x + 2 + s + p),
            _ => None,
        })
    };

    let mut bracket = vec![t];
    let mut angle = vec![c.alpha];
    for _ in 0..n {
        let x = *bracket.last().unwrap();
        match step(session, x, 1 + s + x, 2 + x)? {
            Some(v) => bracket.push(v),
            None => {
                truncated = true;
                break;
            }
        }
    }
    for _ in 0..n {
        let x = *angle.last().unwrap();
        match step(session, x, 2 + s + x, 1 + x)? {
            Some(v) => angle.push(v),
            None => {
                truncated = true;
                break;
            }
        }
    }
    Ok(RecurrenceTable {
        s,
        t,
        implied_bracket_bound: if t == c.alpha { bracket.get(ll).copied() } else { None },
        implied_angle_bound: angle.get(ll).copied(),
        bracket,
        angle,
        ll_inf_algebra: ll,
        truncated,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassProbe {
    /// Number of finite-pd modules examined.
    pub sampled: usize,
    /// Infinite-pd indecomposable summands of `M / soc M` seen (⊆ `𝒞(Λ)`).
    pub c_classes: Vec<ClassId>,
    /// Infinite-pd indecomposable summands of `rad M` seen (⊆ `𝒦(Λ)`).
    pub k_classes: Vec<ClassId>,
}

/// Sampled under-approximation of `𝒞(Λ)` and `𝒦(Λ)`: the indecomposable
/// projectives plus `budget` random modules of finite pd (rejection sampled).
pub fn probe_c_and_k_classes<R: Rng>(
    session: &mut Session,
    budget: usize,
    max_dim: usize,
    rng: &mut R,
) -> Result<ClassProbe> {
    let alg = session.algebra().clone();
    let mut sample: Vec<Representation> =
        (0..alg.vertex_count()).map(|v| Representation::projective(&alg, v)).collect();
    let mut attempts = 0;
    while sample.len() < alg.vertex_count() + budget && attempts < 20 * budget.max(1) {
        attempts += 1;
        let m = random_module(rng, &alg, max_dim);
        if session.pd(&m)?.is_finite() {
            sample.push(m);
        }
    }
    let mut c = BTreeSet::new();
    let mut k = BTreeSet::new();
    for m in &sample {
        let top_part = m.quotient(&m.socle()).0;
        let rad_part = m.submodule(&m.radical()).0;
        for (src, out) in [(top_part, &mut c), (rad_part, &mut k)] {
            let d = session.register(&src)?;
            for id in d.ids().collect::<Vec<_>>() {
                if session.class_pd(id)?.is_infinite() {
                    out.insert(id);
                }
            }
        }
    }
    Ok(ClassProbe { sampled: sample.len(), c_classes: c.into_iter().collect(), k_classes: k.into_iter().collect() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedFindim {
    pub max_dim: usize,
    /// Indecomposable classes found, by total dimension `1..=max_dim`.
    pub counts: Vec<usize>,
    /// Largest finite pd among them (hence among all modules of that size).
    pub max_finite_pd: usize,
    pub witness: Option<ClassId>,
}

/// All indecomposables of total dimension `≤ max_dim`, up to iso.
///
/// Every module of dimension `n` contains a simple `S(v)` with quotient of
/// dimension `n − 1`, so it is an extension of some `M'` (up to iso) by
/// `S(v)`: one new basis vector at `v` and a row `c_a` for each arrow `a`
/// into `v`. The rows must satisfy the relations ending at `v` (a linear
/// condition, since the new vector is killed by every arrow), and rows
/// differing by `λ∘M'_a` or by a nonzero scalar give isomorphic modules, so
/// one representative per point of `P(Ext¹(M', S(v)))` suffices.
/// Fails with `Uncertified` if some `M', v` would need more than
/// `max_cocycles` representatives.
pub fn indecomposables_up_to(
    session: &mut Session,
    max_dim: usize,
    max_cocycles: u64,
) -> Result<Vec<Vec<ClassId>>> {
    let alg = session.algebra().clone();
    let f = alg.field();
    let p = f.modulus() as u64;
    let nv = alg.vertex_count();
    let mut by_dim: Vec<Vec<ClassId>> = vec![Vec::new(); max_dim + 1];
    if max_dim == 0 {
        return Ok(by_dim);
    }
    for v in 0..nv {
        let d = session.register(&Representation::simple(&alg, v))?;
        by_dim[1].push(d.parts[0].0);
    }
    let mut seen: BTreeSet<ClassId> = by_dim[1].iter().copied().collect();
    for n in 2..=max_dim {
        let quotients = multisets(&by_dim, n - 1);
        for q in quotients {
            let base = session.registry.assemble(&q);
            for v in 0..nv {
                let into: Vec<usize> = (0..base.arrow_count()).filter(|&a| base.arrow_ends(a).1 == v).collect();
                let reps = extension_classes(&alg, &base, v, &into);
                if reps.is_empty() {
                    continue;
                }
                let k = reps.len() as u32;
                let total = p.checked_pow(k).map_or(u64::MAX, |t| (t - 1) / (p - 1));
                if total > max_cocycles {
                    return Err(Error::Uncertified(format!(
                        "{total} extensions at dimension {n} exceed the limit {max_cocycles}"
                    )));
                }
                for coeffs in projective_points(k as usize, f.modulus()) {
                    let mut c = vec![0u32; reps[0].len()];
                    for (x, r) in coeffs.iter().zip(&reps) {
                        for (ci, &ri) in c.iter_mut().zip(r) {
                            *ci = f.add(*ci, f.mul(*x, ri));
                        }
                    }
                    let m = extend(&base, v, &into, &c, f);
                    debug_assert!(m.satisfies_relations(&alg));
                    let d = session.register(&m)?;
                    if d.count() == 1 && seen.insert(d.parts[0].0) {
                        by_dim[n].push(d.parts[0].0);
                    }
                }
            }
        }
    }
    Ok(by_dim)
}

/// Offsets of the rows `c_a` inside a flat cocycle vector.
fn row_offsets(base: &Representation, into: &[usize]) -> Vec<usize> {
    let mut off = vec![0];
    for &a in into {
        off.push(off.last().unwrap() + base.dim_at(base.arrow_ends(a).0));
    }
    off
}

/// Cocycles modulo coboundaries: vectors whose classes form a basis of
/// `Ext¹(base, S(v))`.
fn extension_classes(
    alg: &crate::algebra::BoundAlgebra,
    base: &Representation,
    v: usize,
    into: &[usize],
) -> Vec<Vec<u32>> {
    let f = alg.field();
    let off = row_offsets(base, into);
    let unknowns = *off.last().unwrap();
    if unknowns == 0 {
        return Vec::new();
    }
    // each relation ending at v gives one equation per column
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for r in alg.relations() {
        let Some((s, t)) = r.endpoints() else { continue };
        if t != v {
            continue;
        }
        let mut eqs = vec![vec![0u32; unknowns]; base.dim_at(s)];
        for (path, coeff) in r.terms() {
            let (&last, prefix) = path.arrows.split_last().expect("relations have length ≥ 2");
            let k = into.iter().position(|&a| a == last).expect("arrow into v");
            let pre = Path { source: path.source, target: base.arrow_ends(last).0, arrows: prefix.to_vec() };
            let pm = base.path_matrix(&pre);
            for (j, eq) in eqs.iter_mut().enumerate() {
                for i in 0..pm.rows() {
                    let x = pm.get(i, j);
                    if x != 0 {
                        let u = off[k] + i;
                        eq[u] = f.add(eq[u], f.mul(coeff, x));
                    }
                }
            }
        }
        rows.extend(eqs);
    }
    let cocycles = if rows.is_empty() {
        Subspace::full(f, unknowns)
    } else {
        let flat: Vec<u32> = rows.concat();
        Subspace::column_span(&Matrix::from_vec(f, rows.len(), unknowns, flat).kernel_basis())
    };
    // coboundaries: c_a = λ∘base_a for λ ∈ (base_v)^*
    let mut cob = Vec::new();
    for i in 0..base.dim_at(v) {
        let mut c = vec![0u32; unknowns];
        for (k, &a) in into.iter().enumerate() {
            let row = base.map(a).row(i);
            c[off[k]..off[k + 1]].copy_from_slice(row);
        }
        cob.push(c);
    }
    let mut span = Subspace::from_vectors(f, unknowns, &cob);
    let mut out = Vec::new();
    for z in cocycles.vectors() {
        if !span.contains(&z) {
            span = span.sum(&Subspace::from_vectors(f, unknowns, std::slice::from_ref(&z)));
            out.push(z);
        }
    }
    out
}

/// Nonzero vectors of `GF(p)^k` whose first nonzero entry is 1.
fn projective_points(k: usize, p: u32) -> impl Iterator<Item = Vec<u32>> {
    let total = (p as u64).pow(k as u32);
    (1..total).filter_map(move |mut code| {
        let mut v = Vec::with_capacity(k);
        for _ in 0..k {
            v.push((code % p as u64) as u32);
            code /= p as u64;
        }
        (v.iter().find(|&&x| x != 0) == Some(&1)).then_some(v)
    })
}

/// `base ⊕ S(v)` with the arrows into `v` twisted by the rows `c`.
fn extend(
    base: &Representation,
    v: usize,
    into: &[usize],
    c: &[u32],
    f: crate::linalg::PrimeField,
) -> Representation {
    let off = row_offsets(base, into);
    let mut dims = base.dims().to_vec();
    dims[v] += 1;
    let mut maps = Vec::with_capacity(base.arrow_count());
    for a in 0..base.arrow_count() {
        let (s, t) = base.arrow_ends(a);
        let mut m = Matrix::zeros(f, dims[t], dims[s]);
        m.set_block(0, 0, base.map(a));
        if let Some(k) = into.iter().position(|&b| b == a) {
            for j in 0..base.dim_at(s) {
                m.set(dims[t] - 1, j, c[off[k] + j]);
            }
        }
        maps.push(m);
    }
    base.from_parts(dims, maps)
}

/// All multisets of classes with total dimension exactly `n`.
fn multisets(by_dim: &[Vec<ClassId>], n: usize) -> Vec<Decomposition> {
    let items: Vec<(ClassId, usize)> =
        by_dim.iter().enumerate().flat_map(|(d, ids)| ids.iter().map(move |&id| (id, d))).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(items: &[(ClassId, usize)], start: usize, left: usize, cur: &mut Vec<ClassId>, out: &mut Vec<Decomposition>) {
        if left == 0 {
            out.push(Decomposition::from_ids(cur.iter().copied()));
            return;
        }
        for i in start..items.len() {
            let (id, d) = items[i];
            if d <= left {
                cur.push(id);
                go(items, i, left - d, cur, out);
                cur.pop();
            }
        }
    }
    go(&items, 0, n, &mut cur, &mut out);
    out
}

/// Syzygy depth and size limit of the cheap infinite-pd test in
/// [`truncated_findim`].
const QUICK_DEPTH: usize = 2;
const QUICK_MAX_DIM: usize = 256;

/// `X` has infinite pd if some `Ω^k X` (`1 ≤ k ≤ depth`) has a simple
/// summand of infinite pd. A simple `S(v)` splits off iff
/// `(soc X)_v ⊄ (rad X)_v`.
fn quick_infinite(session: &Session, infinite: &[usize], x: &Representation, depth: usize) -> bool {
    let alg = session.algebra();
    let mut cur = x.clone();
    for _ in 0..depth {
        if cur.total_dim() > QUICK_MAX_DIM {
            return false;
        }
        cur = syzygy(alg, &cur);
        if cur.is_zero() || cur.total_dim() > QUICK_MAX_DIM.min(session.caps.max_total_dim) {
            return false;
        }
        let soc = cur.socle();
        let rad = cur.radical();
        if infinite.iter().any(|&v| !rad.parts[v].contains_space(&soc.parts[v])) {
            return true;
        }
    }
    false
}

/// Largest finite pd over all modules of total dimension `≤ max_dim`.
pub fn truncated_findim(session: &mut Session, max_dim: usize, max_cocycles: u64) -> Result<TruncatedFindim> {
    let infinite = session.classify_simples()?.infinite;
    let by_dim = indecomposables_up_to(session, max_dim, max_cocycles)?;
    let mut best = 0;
    let mut witness = None;
    for &id in by_dim.iter().flatten() {
        if quick_infinite(session, &infinite, session.registry.module(id), QUICK_DEPTH) {
            continue;
        }
        match session.class_pd(id)? {
            PdStatus::Finite(k) if k > best || witness.is_none() => {
                best = best.max(k);
                witness = Some(id);
            }
            PdStatus::Unknown(depth) => return Err(Error::RaiseCaps(depth)),
            _ => {}
        }
    }
    Ok(TruncatedFindim { max_dim, counts: by_dim[1..].iter().map(Vec::len).collect(), max_finite_pd: best, witness })
}
