//! The functors `K, Q, S, C`, the iterators `F = S∘rad` and `G = Q/soc Q`,
//! and the infinite-layer lengths built from them.
//!
//! Everything here depends on the algebra only through the set of vertices
//! whose simple has infinite projective dimension. A semisimple layer "has
//! infinite pd" iff it contains one of those simples.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::SimpleClassification;
use crate::linalg::Subspace;
use crate::rep::{ModuleMap, Representation, Submodule};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerProfile {
    pub ll_inf_top: usize,
    pub ll_inf_soc: usize,
    pub l_inf_rad: usize,
    pub l_inf_soc: usize,
    pub r_inf: usize,
    pub zeta: Vec<usize>,
    pub phi_first: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layers {
    infinite: Vec<bool>,
}

impl Layers {
    pub fn new(c: &SimpleClassification) -> Self {
        let n = c.infinite.len() + c.finite.len();
        Layers::from_vertices(n, &c.infinite)
    }

    /// Use an explicit vertex set (e.g. transported to the opposite algebra).
    pub fn from_vertices(vertex_count: usize, infinite: &[usize]) -> Self {
        let mut flags = vec![false; vertex_count];
        for &v in infinite {
            flags[v] = true;
        }
        Layers { infinite: flags }
    }

    pub fn infinite_vertices(&self) -> Vec<usize> {
        (0..self.infinite.len()).filter(|&v| self.infinite[v]).collect()
    }

    pub fn is_infinite_vertex(&self, v: usize) -> bool {
        self.infinite[v]
    }

    /// Whether a semisimple layer with this dimension vector has infinite pd.
    pub fn layer_is_infinite(&self, dims: &[usize]) -> bool {
        dims.iter().zip(&self.infinite).any(|(&d, &i)| i && d > 0)
    }

    /// `[M : 𝒮^∞]`
    pub fn infinite_factors(&self, m: &Representation) -> usize {
        m.factor_count(&self.infinite_vertices())
    }

    /// Filtered by the simples of finite pd.
    pub fn is_finitely_filtered(&self, m: &Representation) -> bool {
        self.infinite_factors(m) == 0
    }

    /// `K(U)` for a submodule `U ⊆ M`, in the coordinates of `M`.
    pub fn k_within(&self, m: &Representation, u: &Submodule) -> Submodule {
        let mut k = m.zero_submodule();
        loop {
            let mut next = m.annihilator_preimage(&k).intersect(u);
            for (v, part) in next.parts.iter_mut().enumerate() {
                if self.infinite[v] {
                    *part = Subspace::zero(m.field(), m.dim_at(v));
                }
            }
            if next.dim() == k.dim() {
                return k;
            }
            k = next;
        }
    }

    /// `S(U)` for a submodule `U ⊆ M`: peel off finite-pd tops until stable.
    pub fn s_within(&self, m: &Representation, u: &Submodule) -> Submodule {
        let mut s = u.clone();
        loop {
            let mut next = m.radical_of(&s);
            for v in 0..m.vertex_count() {
                if self.infinite[v] {
                    next.parts[v] = s.parts[v].clone();
                }
            }
            if next.dim() == s.dim() {
                return s;
            }
            s = next;
        }
    }

    pub fn k_sub(&self, m: &Representation) -> Submodule {
        self.k_within(m, &m.full_submodule())
    }

    pub fn s_sub(&self, m: &Representation) -> Submodule {
        self.s_within(m, &m.full_submodule())
    }

    pub fn k(&self, m: &Representation) -> (Representation, ModuleMap) {
        m.submodule(&self.k_sub(m))
    }

    pub fn q(&self, m: &Representation) -> (Representation, ModuleMap) {
        m.quotient(&self.k_sub(m))
    }

    pub fn s(&self, m: &Representation) -> (Representation, ModuleMap) {
        m.submodule(&self.s_sub(m))
    }

    pub fn c(&self, m: &Representation) -> (Representation, ModuleMap) {
        m.quotient(&self.s_sub(m))
    }

    /// `F = S∘rad`
    pub fn f(&self, m: &Representation) -> Representation {
        let (r, _) = m.submodule(&m.radical());
        self.s(&r).0
    }

    /// `G = Q / soc Q`
    pub fn g(&self, m: &Representation) -> Representation {
        let q = self.q(m).0;
        q.quotient(&q.socle()).0
    }

    /// `F^i S(M)` for `i = 0, 1, ...` up to and including the first zero,
    /// as submodules of `M`.
    pub fn f_chain(&self, m: &Representation) -> Vec<Submodule> {
        let mut out = vec![self.s_sub(m)];
        while !out.last().unwrap().is_zero() {
            let next = self.s_within(m, &m.radical_of(out.last().unwrap()));
            out.push(next);
        }
        out
    }

    /// `Q G^i (M)` for `i = 0, 1, ...` up to and including the first zero.
    pub fn qg_chain(&self, m: &Representation) -> Vec<Representation> {
        let mut out = Vec::new();
        let mut x = m.clone();
        loop {
            let q = self.q(&x).0;
            let done = q.is_zero();
            if !done {
                x = q.quotient(&q.socle()).0;
            }
            out.push(q);
            if done {
                return out;
            }
        }
    }

    /// `ℓℓ^∞(M) = min{i : F^i S(M) = 0}`
    pub fn ll_inf(&self, m: &Representation) -> usize {
        self.f_chain(m).len() - 1
    }

    /// `ℓℓ_∞(M) = min{i : Q G^i(M) = 0}`
    pub fn ll_inf_dual(&self, m: &Representation) -> usize {
        self.qg_chain(m).len() - 1
    }

    /// Radical layers containing a simple of infinite pd.
    pub fn l_inf_rad(&self, m: &Representation) -> usize {
        m.radical_layers().iter().filter(|l| self.layer_is_infinite(l)).count()
    }

    pub fn l_inf_soc(&self, m: &Representation) -> usize {
        m.socle_layers().iter().filter(|l| self.layer_is_infinite(l)).count()
    }

    /// Least `j` with `top rad^j M` of infinite pd; needs `S(M) ≠ 0`.
    pub fn phi(&self, m: &Representation) -> Result<usize> {
        if self.s_sub(m).is_zero() {
            return Err(Error::Undefined("phi: S(M) = 0"));
        }
        first_infinite(self, &m.radical_layers(), 0).ok_or(Error::Undefined("phi: S(M) = 0"))
    }

    /// `ζ(0) = φ(M)`, `ζ(i+1) = ζ(i) + 1 + φ(rad^{ζ(i)+1} M)` for `i < ℓℓ^∞(M)`.
    pub fn zeta(&self, m: &Representation) -> Result<Vec<usize>> {
        let ll = self.ll_inf(m);
        if ll == 0 {
            return Err(Error::Undefined("zeta: ll_inf = 0"));
        }
        let series = m.radical_series();
        let mut out = vec![self.phi(m)?];
        while out.len() < ll {
            let k = out.last().unwrap() + 1;
            let r = match series.get(k) {
                Some(u) => m.submodule(u).0,
                None => return Err(Error::Undefined("zeta: radical exhausted")),
            };
            out.push(k + self.phi(&r)?);
        }
        Ok(out)
    }

    /// Infinite radical layers strictly below `ζ(ℓℓ^∞(M) − 1)`.
    pub fn r_inf(&self, m: &Representation) -> Result<usize> {
        if self.ll_inf(m) == 0 {
            return Ok(0);
        }
        let last = *self.zeta(m)?.last().unwrap();
        Ok(m.radical_layers()
            .iter()
            .enumerate()
            .filter(|(k, l)| *k > last && self.layer_is_infinite(l))
            .count())
    }

    pub fn profile(&self, m: &Representation) -> Result<LayerProfile> {
        let ll = self.ll_inf(m);
        let zeta = if ll > 0 { self.zeta(m)? } else { Vec::new() };
        Ok(LayerProfile {
            ll_inf_top: ll,
            ll_inf_soc: self.ll_inf_dual(m),
            l_inf_rad: self.l_inf_rad(m),
            l_inf_soc: self.l_inf_soc(m),
            r_inf: self.r_inf(m)?,
            phi_first: zeta.first().copied(),
            zeta,
        })
    }

    /// `Q(f): Q(M) -> Q(N)` for a homomorphism `f: M -> N`.
    pub fn q_map(&self, f: &ModuleMap, m: &Representation, n: &Representation) -> ModuleMap {
        let (_, pm) = self.q(m);
        let (_, pn) = self.q(n);
        descend(&pn.compose(f), &pm)
    }

    /// `S(f): S(M) -> S(N)`.
    pub fn s_map(&self, f: &ModuleMap, m: &Representation, n: &Representation) -> ModuleMap {
        let (_, im) = self.s(m);
        let (_, in_) = self.s(n);
        restrict(&f.compose(&im), &in_)
    }

    pub fn k_map(&self, f: &ModuleMap, m: &Representation, n: &Representation) -> ModuleMap {
        let (_, im) = self.k(m);
        let (_, in_) = self.k(n);
        restrict(&f.compose(&im), &in_)
    }

    pub fn c_map(&self, f: &ModuleMap, m: &Representation, n: &Representation) -> ModuleMap {
        let (_, pm) = self.c(m);
        let (_, pn) = self.c(n);
        descend(&pn.compose(f), &pm)
    }
}

fn first_infinite(l: &Layers, layers: &[Vec<usize>], from: usize) -> Option<usize> {
    (from..layers.len()).find(|&j| l.layer_is_infinite(&layers[j]))
}

/// The unique `X` with `incl ∘ X = g` (the image of `g` lies in that of `incl`).
pub fn restrict(g: &ModuleMap, incl: &ModuleMap) -> ModuleMap {
    ModuleMap {
        blocks: g
            .blocks
            .iter()
            .zip(&incl.blocks)
            .map(|(a, i)| i.solve_matrix(a).expect("map does not factor through the submodule"))
            .collect(),
    }
}

/// The unique `X` with `X ∘ proj = g` (`g` vanishes on the kernel of `proj`).
pub fn descend(g: &ModuleMap, proj: &ModuleMap) -> ModuleMap {
    ModuleMap {
        blocks: g
            .blocks
            .iter()
            .zip(&proj.blocks)
            .map(|(a, p)| {
                p.transpose()
                    .solve_matrix(&a.transpose())
                    .expect("map does not factor through the quotient")
                    .transpose()
            })
            .collect(),
    }
}
