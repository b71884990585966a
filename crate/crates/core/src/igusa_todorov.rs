//! Igusa–Todorov functions. `Ω` acts on the free abelian group spanned by
//! non-projective indecomposable classes; `⟨M⟩` is the span of the summands
//! of `M`, and `Φ(M)` is where the ranks of `Ω^k⟨M⟩` stop dropping.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::decomp::{ClassId, Decomposition};
use crate::error::{Error, Result};
use crate::homology::{PdStatus, Session};
use crate::rep::Representation;

pub const DEFAULT_WINDOW: usize = 8;
pub const DEFAULT_CAP: usize = 64;

/// Sparse integer vector over non-projective classes.
pub type ClassVector = BTreeMap<ClassId, BigInt>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiResult {
    pub phi: usize,
    /// `rank Ω^k⟨M⟩` for `k = 0..`
    pub ranks: Vec<usize>,
    /// Steps after `phi` over which the rank was seen constant.
    pub verified_window: usize,
    pub stable: bool,
    /// `Ω^Φ M`
    pub c_m: Decomposition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiResult {
    pub psi: usize,
    pub phi: PhiResult,
    /// `fin.dim` of the summands of `Ω^Φ M`.
    pub findim_c_m: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiParams {
    pub window: usize,
    pub cap: usize,
}

impl Default for PhiParams {
    fn default() -> Self {
        PhiParams { window: DEFAULT_WINDOW, cap: DEFAULT_CAP }
    }
}

/// `Ω` on a class vector.
pub fn omega(session: &mut Session, v: &ClassVector) -> Result<ClassVector> {
    let mut out = ClassVector::new();
    for (&id, c) in v {
        if session.registry.module(id).total_dim() > session.caps.max_total_dim {
            return Err(Error::RaiseCaps(0));
        }
        let d = session.registry.syzygy_of(id)?;
        for &(y, k) in &d.parts {
            if session.registry.is_projective(y) {
                continue;
            }
            let e = out.entry(y).or_insert_with(BigInt::zero);
            *e += c * BigInt::from(k);
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Rank over `Z` (equivalently `Q`) by fraction-free elimination.
pub fn integer_rank(vectors: &[ClassVector]) -> usize {
    let cols: Vec<ClassId> = {
        let mut c: Vec<ClassId> = vectors.iter().flat_map(|v| v.keys().copied()).collect();
        c.sort_unstable();
        c.dedup();
        c
    };
    let mut a: Vec<Vec<BigInt>> = vectors
        .iter()
        .map(|v| cols.iter().map(|k| v.get(k).cloned().unwrap_or_default()).collect())
        .collect();
    bareiss_rank(&mut a)
}

fn bareiss_rank(a: &mut [Vec<BigInt>]) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let x = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = x / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Generators of `⟨M⟩`: one unit vector per distinct non-projective summand.
fn generators(session: &Session, d: &Decomposition) -> Vec<ClassVector> {
    d.ids()
        .filter(|&id| !session.registry.is_projective(id))
        .map(|id| ClassVector::from([(id, BigInt::one())]))
        .collect()
}

pub fn phi_of_decomposition(
    session: &mut Session,
    d: &Decomposition,
    params: PhiParams,
) -> Result<PhiResult> {
    let mut gens = generators(session, d);
    let mut ranks = vec![integer_rank(&gens)];
    let mut phi = 0;
    loop {
        let k = ranks.len() - 1;
        if ranks[k] == 0 || k - phi >= params.window {
            break;
        }
        if k >= params.cap {
            if k == phi {
                return Err(Error::NoPlateau { cap: params.cap, ranks });
            }
            break;
        }
        gens = gens.iter().map(|g| omega(session, g)).collect::<Result<_>>()?;
        gens.retain(|g| !g.is_empty());
        let r = integer_rank(&gens);
        if r < ranks[k] {
            phi = k + 1;
        }
        ranks.push(r);
    }
    let k = ranks.len() - 1;
    // rank 0 is absorbing, so reaching it certifies stability outright
    let stable = ranks[k] == 0 || k - phi >= params.window;
    let c_m = session.syzygy_power_of(d, phi)?;
    Ok(PhiResult { phi, verified_window: k - phi, stable, ranks, c_m })
}

pub fn phi(session: &mut Session, m: &Representation, params: PhiParams) -> Result<PhiResult> {
    let d = session.register(m)?;
    phi_of_decomposition(session, &d, params)
}

/// `fin.dim` of the summand classes of `d`: the largest finite pd, else 0.
pub fn findim_of_decomposition(session: &mut Session, d: &Decomposition) -> Result<usize> {
    let mut best = 0;
    for id in d.ids().collect::<Vec<_>>() {
        match session.class_pd(id)? {
            PdStatus::Finite(n) => best = best.max(n),
            PdStatus::Infinite(_) => {}
            PdStatus::Unknown(depth) => return Err(Error::RaiseCaps(depth)),
        }
    }
    Ok(best)
}

pub fn findim_of_class(session: &mut Session, mods: &[Representation]) -> Result<usize> {
    let mut best = 0;
    for m in mods {
        match session.pd(m)? {
            PdStatus::Finite(n) => best = best.max(n),
            PdStatus::Infinite(_) => {}
            PdStatus::Unknown(depth) => return Err(Error::RaiseCaps(depth)),
        }
    }
    Ok(best)
}

pub fn psi_of_decomposition(
    session: &mut Session,
    d: &Decomposition,
    params: PhiParams,
) -> Result<PsiResult> {
    let phi = phi_of_decomposition(session, d, params)?;
    let findim_c_m = findim_of_decomposition(session, &phi.c_m)?;
    Ok(PsiResult { psi: phi.phi + findim_c_m, findim_c_m, phi })
}

pub fn psi(session: &mut Session, m: &Representation, params: PhiParams) -> Result<PsiResult> {
    let d = session.register(m)?;
    psi_of_decomposition(session, &d, params)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(ClassId, i64)]) -> ClassVector {
        entries.iter().map(|&(k, c)| (k, BigInt::from(c))).collect()
    }

    #[test]
    fn ranks() {
        assert_eq!(integer_rank(&[]), 0);
        assert_eq!(integer_rank(&[v(&[(0, 2), (1, 4)]), v(&[(0, 1), (1, 2)])]), 1);
        assert_eq!(integer_rank(&[v(&[(0, 2)]), v(&[(1, 3)]), v(&[(0, 2), (1, 3)])]), 2);
        // full rank over Z even though singular mod 2 and mod 3
        assert_eq!(integer_rank(&[v(&[(0, 2), (1, 0)]), v(&[(0, 0), (1, 3)])]), 2);
        assert_eq!(
            integer_rank(&[v(&[(0, 1), (2, 1)]), v(&[(1, 1), (2, 1)]), v(&[(0, 1), (1, -1)])]),
            2
        );
    }
}
