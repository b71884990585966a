//! Quiver representations: finite-dimensional left modules over a bound
//! quiver algebra, their maps and submodules.
//!
//! An arrow `a: s -> t` acts by a `dim_t x dim_s` matrix; a path
//! `a1*...*ak` acts by `M_ak * ... * M_a1`.

use serde::{Deserialize, Serialize};

use crate::algebra::BoundAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, PrimeField, Subspace};
use crate::quiver::{LinComb, Path};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Representation {
    field: PrimeField,
    dims: Vec<usize>,
    ends: Vec<(usize, usize)>,
    maps: Vec<Matrix>,
}

impl Representation {
    /// Checks shapes and every relation of `alg`.
    pub fn new(alg: &BoundAlgebra, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let m = Self::unchecked(alg, dims, maps)?;
        for (k, r) in alg.relations().iter().enumerate() {
            if !m.eval(r).is_zero() {
                return Err(Error::RelationViolated(k));
            }
        }
        Ok(m)
    }

    fn unchecked(alg: &BoundAlgebra, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let q = alg.quiver();
        if dims.len() != q.vertex_count() || maps.len() != q.arrow_count() {
            return Err(Error::DimensionMismatch("vertex or arrow count".into()));
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] {
                return Err(Error::DimensionMismatch(format!(
                    "arrow {} needs a {}x{} matrix",
                    a.name, dims[a.target], dims[a.source]
                )));
            }
        }
        let ends = q.arrows().iter().map(|a| (a.source, a.target)).collect();
        Ok(Representation { field: alg.field(), dims, ends, maps })
    }

    pub(crate) fn from_parts(&self, dims: Vec<usize>, maps: Vec<Matrix>) -> Self {
        Representation { field: self.field, dims, ends: self.ends.clone(), maps }
    }

    pub fn zero(alg: &BoundAlgebra) -> Self {
        let dims = vec![0; alg.vertex_count()];
        let maps = alg.quiver().arrows().iter().map(|_| Matrix::zeros(alg.field(), 0, 0)).collect();
        Self::unchecked(alg, dims, maps).expect("shapes")
    }

    pub fn simple(alg: &BoundAlgebra, v: usize) -> Self {
        let mut dims = vec![0; alg.vertex_count()];
        dims[v] = 1;
        let maps = alg
            .quiver()
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(alg.field(), dims[a.target], dims[a.source]))
            .collect();
        Self::unchecked(alg, dims, maps).expect("shapes")
    }

    /// `P(v)`: basis the irreducible paths from `v`, arrows acting by right
    /// concatenation followed by normal form.
    pub fn projective(alg: &BoundAlgebra, v: usize) -> Self {
        let n = alg.vertex_count();
        let dims: Vec<usize> = (0..n).map(|j| alg.paths_between(v, j).len()).collect();
        let mut maps = Vec::new();
        for (k, a) in alg.quiver().arrows().iter().enumerate() {
            let src = alg.paths_between(v, a.source);
            let tgt = alg.paths_between(v, a.target);
            let mut m = Matrix::zeros(alg.field(), tgt.len(), src.len());
            for (j, &b) in src.iter().enumerate() {
                for &(t, c) in alg.right_action(b, k) {
                    let i = tgt.iter().position(|&x| x == t).expect("endpoint");
                    m.set(i, j, c);
                }
            }
            maps.push(m);
        }
        Self::unchecked(alg, dims, maps).expect("shapes")
    }

    /// `Λ` as the direct sum of all indecomposable projectives.
    pub fn regular(alg: &BoundAlgebra) -> Self {
        let ps: Vec<Self> = (0..alg.vertex_count()).map(|v| Self::projective(alg, v)).collect();
        Self::direct_sum_of(alg, &ps)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn vertex_count(&self) -> usize {
        self.dims.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.maps.len()
    }

    pub fn arrow_ends(&self, a: usize) -> (usize, usize) {
        self.ends[a]
    }

    pub fn map(&self, a: usize) -> &Matrix {
        &self.maps[a]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.dims.len() + 1);
        let mut acc = 0;
        off.push(0);
        for &d in &self.dims {
            acc += d;
            off.push(acc);
        }
        off
    }

    /// Matrix of a path (identity for a trivial path).
    pub fn path_matrix(&self, p: &Path) -> Matrix {
        let mut m = Matrix::identity(self.field, self.dims[p.source]);
        for &a in &p.arrows {
            m = self.maps[a].mul(&m);
        }
        m
    }

    /// Value of a linear combination of parallel paths.
    pub fn eval(&self, x: &LinComb) -> Matrix {
        let Some((s, t)) = x.endpoints() else {
            return Matrix::zeros(self.field, 0, 0);
        };
        let mut out = Matrix::zeros(self.field, self.dims[t], self.dims[s]);
        for (p, c) in x.terms() {
            out.add_scaled(&self.path_matrix(p), c);
        }
        out
    }

    /// Path matrices of every basis path of `alg`, indexed like the basis.
    pub fn basis_path_matrices(&self, alg: &BoundAlgebra) -> Vec<Matrix> {
        let basis = alg.path_basis();
        let mut out: Vec<Option<Matrix>> = vec![None; basis.len()];
        // basis is sorted by length within each source, so prefixes come first
        let mut order: Vec<usize> = (0..basis.len()).collect();
        order.sort_by_key(|&i| basis[i].len());
        for i in order {
            let p = &basis[i];
            let m = match p.arrows.split_last() {
                None => Matrix::identity(self.field, self.dims[p.source]),
                Some((&last, rest)) => {
                    let prefix = Path {
                        source: p.source,
                        target: self.ends[last].0,
                        arrows: rest.to_vec(),
                    };
                    let j = alg.basis_index(&prefix).expect("prefix of irreducible path");
                    self.maps[last].mul(out[j].as_ref().expect("computed"))
                }
            };
            out[i] = Some(m);
        }
        out.into_iter().map(Option::unwrap).collect()
    }

    pub fn satisfies_relations(&self, alg: &BoundAlgebra) -> bool {
        alg.relations().iter().all(|r| self.eval(r).is_zero())
    }

    /// The sum with canonical inclusions and projections.
    pub fn direct_sum_of(alg: &BoundAlgebra, parts: &[Representation]) -> Self {
        let mut acc = Self::zero(alg);
        for p in parts {
            acc = acc.direct_sum(p);
        }
        acc
    }

    pub fn direct_sum(&self, other: &Representation) -> Representation {
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| {
                let mut m = Matrix::zeros(self.field, a.rows() + b.rows(), a.cols() + b.cols());
                m.set_block(0, 0, a);
                m.set_block(a.rows(), a.cols(), b);
                m
            })
            .collect();
        self.from_parts(dims, maps)
    }

    pub fn power(&self, n: usize) -> Representation {
        let mut acc = self.from_parts(
            vec![0; self.dims.len()],
            self.maps.iter().map(|_| Matrix::zeros(self.field, 0, 0)).collect(),
        );
        for _ in 0..n {
            acc = acc.direct_sum(self);
        }
        acc
    }

    /// `g_t M_a g_s^{-1}` for invertible per-vertex matrices `g`.
    pub fn conjugate(&self, g: &[Matrix]) -> Representation {
        let inv: Vec<Matrix> = g.iter().map(|m| m.inverse().expect("invertible")).collect();
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(a, m)| {
                let (s, t) = self.ends[a];
                g[t].mul(m).mul(&inv[s])
            })
            .collect();
        self.from_parts(self.dims.clone(), maps)
    }

    /// Transposed maps on the reversed arrows: a module over the opposite algebra.
    pub fn dual(&self) -> Representation {
        Representation {
            field: self.field,
            dims: self.dims.clone(),
            ends: self.ends.iter().map(|&(s, t)| (t, s)).collect(),
            maps: self.maps.iter().map(Matrix::transpose).collect(),
        }
    }

    pub fn full_submodule(&self) -> Submodule {
        Submodule {
            parts: self.dims.iter().map(|&d| Subspace::full(self.field, d)).collect(),
        }
    }

    pub fn zero_submodule(&self) -> Submodule {
        Submodule {
            parts: self.dims.iter().map(|&d| Subspace::zero(self.field, d)).collect(),
        }
    }

    /// Smallest submodule containing the given per-vertex subspaces.
    pub fn generated(&self, seed: Vec<Subspace>) -> Submodule {
        let mut parts = seed;
        loop {
            let mut changed = false;
            for (a, m) in self.maps.iter().enumerate() {
                let (s, t) = self.ends[a];
                let img = parts[s].image(m);
                if !parts[t].contains_space(&img) {
                    parts[t] = parts[t].sum(&img);
                    changed = true;
                }
            }
            if !changed {
                return Submodule { parts };
            }
        }
    }

    /// Image of a submodule under all arrows: `rad U`.
    pub fn radical_of(&self, u: &Submodule) -> Submodule {
        let mut parts: Vec<Subspace> =
            self.dims.iter().map(|&d| Subspace::zero(self.field, d)).collect();
        for (a, m) in self.maps.iter().enumerate() {
            let (s, t) = self.ends[a];
            parts[t] = parts[t].sum(&u.parts[s].image(m));
        }
        Submodule { parts }
    }

    pub fn radical(&self) -> Submodule {
        self.radical_of(&self.full_submodule())
    }

    /// `{x : a x ∈ U for every arrow a}`; applied to `soc^i` gives `soc^{i+1}`.
    pub fn annihilator_preimage(&self, u: &Submodule) -> Submodule {
        let mut parts: Vec<Subspace> =
            self.dims.iter().map(|&d| Subspace::full(self.field, d)).collect();
        for (a, m) in self.maps.iter().enumerate() {
            let (s, t) = self.ends[a];
            parts[s] = parts[s].intersect(&u.parts[t].preimage(m));
        }
        Submodule { parts }
    }

    pub fn socle(&self) -> Submodule {
        self.annihilator_preimage(&self.zero_submodule())
    }

    /// Radical series `M = rad^0 ⊇ rad^1 ⊇ ... ⊇ 0`, ending at the first zero.
    pub fn radical_series(&self) -> Vec<Submodule> {
        let mut out = vec![self.full_submodule()];
        while !out.last().unwrap().is_zero() {
            let next = self.radical_of(out.last().unwrap());
            out.push(next);
        }
        out
    }

    /// Socle series `0 = soc^0 ⊆ soc^1 ⊆ ... ⊆ M`.
    pub fn socle_series(&self) -> Vec<Submodule> {
        let mut out = vec![self.zero_submodule()];
        while out.last().unwrap().dim() < self.total_dim() {
            let next = self.annihilator_preimage(out.last().unwrap());
            out.push(next);
        }
        out
    }

    pub fn loewy_length(&self) -> usize {
        self.radical_series().len() - 1
    }

    /// Dimension vectors of the radical layers `rad^i M / rad^{i+1} M`.
    pub fn radical_layers(&self) -> Vec<Vec<usize>> {
        layers(&self.radical_series())
    }

    /// Dimension vectors of the socle layers `soc^{i+1} M / soc^i M`, top down
    /// from the socle.
    pub fn socle_layers(&self) -> Vec<Vec<usize>> {
        layers(&self.socle_series())
    }

    pub fn top_dims(&self) -> Vec<usize> {
        let r = self.radical();
        self.dims.iter().zip(r.dims()).map(|(a, b)| a - b).collect()
    }

    pub fn socle_dims(&self) -> Vec<usize> {
        self.socle().dims()
    }

    pub fn top(&self) -> Representation {
        self.quotient(&self.radical()).0
    }

    pub fn is_semisimple(&self) -> bool {
        self.radical().is_zero()
    }

    /// `U` as a representation together with its inclusion into `self`.
    pub fn submodule(&self, u: &Submodule) -> (Representation, ModuleMap) {
        let dims = u.dims();
        let cols: Vec<Matrix> = u.parts.iter().map(Subspace::as_columns).collect();
        let mut maps = Vec::with_capacity(self.maps.len());
        for (a, m) in self.maps.iter().enumerate() {
            let (s, t) = self.ends[a];
            let mut r = Matrix::zeros(self.field, dims[t], dims[s]);
            for j in 0..dims[s] {
                let img = m.mul_vec(&cols[s].col(j));
                let c = u.parts[t].coordinates(&img).expect("submodule is arrow stable");
                for (i, x) in c.into_iter().enumerate() {
                    r.set(i, j, x);
                }
            }
            maps.push(r);
        }
        (self.from_parts(dims, maps), ModuleMap { blocks: cols })
    }

    /// `M / U` on the standard complement of `U`, with the projection.
    pub fn quotient(&self, u: &Submodule) -> (Representation, ModuleMap) {
        let comp: Vec<Vec<usize>> = u.parts.iter().map(Subspace::complement_indices).collect();
        let dims: Vec<usize> = comp.iter().map(Vec::len).collect();
        let mut maps = Vec::with_capacity(self.maps.len());
        for (a, m) in self.maps.iter().enumerate() {
            let (s, t) = self.ends[a];
            let mut r = Matrix::zeros(self.field, dims[t], dims[s]);
            for (j, &c) in comp[s].iter().enumerate() {
                let img = u.parts[t].reduce(&m.col(c));
                for (i, &k) in comp[t].iter().enumerate() {
                    r.set(i, j, img[k]);
                }
            }
            maps.push(r);
        }
        let proj = (0..self.dims.len())
            .map(|v| {
                let mut p = Matrix::zeros(self.field, dims[v], self.dims[v]);
                for j in 0..self.dims[v] {
                    let mut e = vec![0; self.dims[v]];
                    e[j] = 1;
                    let r = u.parts[v].reduce(&e);
                    for (i, &k) in comp[v].iter().enumerate() {
                        p.set(i, j, r[k]);
                    }
                }
                p
            })
            .collect();
        (self.from_parts(dims, maps), ModuleMap { blocks: proj })
    }

    /// Number of composition factors at the given vertices.
    pub fn factor_count(&self, vertices: &[usize]) -> usize {
        vertices.iter().map(|&v| self.dims[v]).sum()
    }

    /// Basis of `Hom(self, n)` by solving the intertwiner equations directly.
    pub fn hom_basis_direct(&self, n: &Representation) -> Vec<ModuleMap> {
        let f = self.field;
        let nv = self.dims.len();
        let mut off = vec![0; nv + 1];
        for v in 0..nv {
            off[v + 1] = off[v] + n.dims[v] * self.dims[v];
        }
        let unknowns = off[nv];
        // f_v stored row-major: entry (i, j) at off[v] + i * dim M_v + j
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for (a, ma) in self.maps.iter().enumerate() {
            let (s, t) = self.ends[a];
            let na = &n.maps[a];
            // (N_a f_s - f_t M_a)_{i,j} = 0
            for i in 0..n.dims[t] {
                for j in 0..self.dims[s] {
                    let mut row = vec![0u32; unknowns];
                    for k in 0..n.dims[s] {
                        let c = na.get(i, k);
                        if c != 0 {
                            let x = off[s] + k * self.dims[s] + j;
                            row[x] = f.add(row[x], c);
                        }
                    }
                    for k in 0..self.dims[t] {
                        let c = ma.get(k, j);
                        if c != 0 {
                            let x = off[t] + i * self.dims[t] + k;
                            row[x] = f.sub(row[x], c);
                        }
                    }
                    rows.push(row);
                }
            }
        }
        let sys = Matrix::from_vec(f, rows.len(), unknowns, rows.concat());
        let ker = sys.kernel_basis();
        (0..ker.cols())
            .map(|c| {
                let col = ker.col(c);
                ModuleMap {
                    blocks: (0..nv)
                        .map(|v| {
                            Matrix::from_vec(f, n.dims[v], self.dims[v], col[off[v]..off[v + 1]].to_vec())
                        })
                        .collect(),
                }
            })
            .collect()
    }
}

fn layers(series: &[Submodule]) -> Vec<Vec<usize>> {
    series
        .windows(2)
        .map(|w| {
            let (a, b) = (w[0].dims(), w[1].dims());
            a.iter().zip(&b).map(|(x, y)| x.max(y) - x.min(y)).collect()
        })
        .collect()
}

/// A submodule given by one subspace per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Submodule {
    pub parts: Vec<Subspace>,
}

impl Submodule {
    pub fn dims(&self) -> Vec<usize> {
        self.parts.iter().map(Subspace::dim).collect()
    }

    pub fn dim(&self) -> usize {
        self.parts.iter().map(Subspace::dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn sum(&self, o: &Submodule) -> Submodule {
        Submodule { parts: self.parts.iter().zip(&o.parts).map(|(a, b)| a.sum(b)).collect() }
    }

    pub fn intersect(&self, o: &Submodule) -> Submodule {
        Submodule {
            parts: self.parts.iter().zip(&o.parts).map(|(a, b)| a.intersect(b)).collect(),
        }
    }

    pub fn contains(&self, o: &Submodule) -> bool {
        self.parts.iter().zip(&o.parts).all(|(a, b)| a.contains_space(b))
    }

    /// Checks closure under every arrow of `m`.
    pub fn is_stable_in(&self, m: &Representation) -> bool {
        (0..m.arrow_count()).all(|a| {
            let (s, t) = m.arrow_ends(a);
            self.parts[t].contains_space(&self.parts[s].image(m.map(a)))
        })
    }

    /// Image under a module map out of the ambient module.
    pub fn image_under(&self, f: &ModuleMap) -> Submodule {
        Submodule {
            parts: self.parts.iter().zip(&f.blocks).map(|(u, b)| u.image(b)).collect(),
        }
    }

    /// Preimage under a module map into the ambient module.
    pub fn preimage_under(&self, f: &ModuleMap) -> Submodule {
        Submodule {
            parts: self.parts.iter().zip(&f.blocks).map(|(u, b)| u.preimage(b)).collect(),
        }
    }
}

/// A homomorphism of representations, one block `dim N_v x dim M_v` per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleMap {
    pub blocks: Vec<Matrix>,
}

impl ModuleMap {
    pub fn identity(m: &Representation) -> Self {
        ModuleMap { blocks: m.dims.iter().map(|&d| Matrix::identity(m.field, d)).collect() }
    }

    pub fn zero(m: &Representation, n: &Representation) -> Self {
        ModuleMap {
            blocks: m.dims.iter().zip(&n.dims).map(|(&a, &b)| Matrix::zeros(m.field, b, a)).collect(),
        }
    }

    /// `self ∘ g`
    pub fn compose(&self, g: &ModuleMap) -> ModuleMap {
        ModuleMap { blocks: self.blocks.iter().zip(&g.blocks).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn add(&self, o: &ModuleMap) -> ModuleMap {
        ModuleMap { blocks: self.blocks.iter().zip(&o.blocks).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, c: u32) -> ModuleMap {
        ModuleMap { blocks: self.blocks.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Matrix::rank).sum()
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.blocks.iter().all(|b| b.is_square() && b.is_invertible())
    }

    pub fn kernel(&self) -> Submodule {
        Submodule { parts: self.blocks.iter().map(|b| Subspace::column_span(&b.kernel_basis())).collect() }
    }

    pub fn image(&self) -> Submodule {
        Submodule { parts: self.blocks.iter().map(Subspace::column_span).collect() }
    }

    pub fn is_homomorphism(&self, m: &Representation, n: &Representation) -> bool {
        (0..m.arrow_count()).all(|a| {
            let (s, t) = m.arrow_ends(a);
            n.map(a).mul(&self.blocks[s]) == self.blocks[t].mul(m.map(a))
        })
    }

    /// Whole map as one block-diagonal matrix.
    pub fn to_matrix(&self) -> Matrix {
        let f = self.blocks.first().map(Matrix::field).unwrap_or_else(PrimeField::gf2);
        let rows = self.blocks.iter().map(Matrix::rows).sum();
        let cols = self.blocks.iter().map(Matrix::cols).sum();
        let mut out = Matrix::zeros(f, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in &self.blocks {
            out.set_block(r, c, b);
            r += b.rows();
            c += b.cols();
        }
        out
    }
}
