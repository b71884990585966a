//! Seeded generators of small admissible algebras and modules.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::BoundAlgebra;
use crate::linalg::{PrimeField, Subspace};
use crate::quiver::{LinComb, Path, Quiver};
use crate::rep::Representation;

/// Shape limits for random monomial algebras.
#[derive(Clone, Copy, Debug)]
pub struct AlgebraShape {
    pub max_vertices: usize,
    pub max_arrows: usize,
    /// Every path of this length is killed, which makes the ideal admissible.
    pub max_path_len: usize,
    pub max_dim: usize,
    /// Most arrows from one vertex to another (loops included).
    pub max_parallel: usize,
}

impl Default for AlgebraShape {
    fn default() -> Self {
        AlgebraShape { max_vertices: 4, max_arrows: 6, max_path_len: 4, max_dim: 40, max_parallel: 6 }
    }
}

fn paths_of_len(q: &Quiver, len: usize) -> Vec<Path> {
    let mut layer: Vec<Path> = (0..q.vertex_count()).map(Path::trivial).collect();
    for _ in 0..len {
        let mut next = Vec::new();
        for p in &layer {
            for &a in q.arrows_from(p.target) {
                let mut arrows = p.arrows.clone();
                arrows.push(a);
                next.push(Path { source: p.source, target: q.arrow(a).target, arrows });
            }
        }
        layer = next;
    }
    layer
}

/// A connected-or-not random quiver with monomial relations. Retries until
/// the algebra has dimension at most `shape.max_dim`.
pub fn monomial_algebra<R: Rng>(rng: &mut R, field: PrimeField, shape: AlgebraShape) -> BoundAlgebra {
    loop {
        let nv = rng.gen_range(1..=shape.max_vertices);
        let na = rng.gen_range(1..=shape.max_arrows);
        let verts: Vec<String> = (1..=nv).map(|v| v.to_string()).collect();
        let mut arrows: Vec<(String, String, String)> = Vec::with_capacity(na);
        for k in 0..na {
            let s = rng.gen_range(1..=nv).to_string();
            let t = rng.gen_range(1..=nv).to_string();
            if arrows.iter().filter(|(_, a, b)| *a == s && *b == t).count() < shape.max_parallel {
                arrows.push((format!("a{k}"), s, t));
            }
        }
        let q = Quiver::new(&verts, &arrows).expect("valid");
        let mut rels = Vec::new();
        for len in 2..shape.max_path_len {
            for p in paths_of_len(&q, len) {
                if rng.gen_bool(0.3) {
                    rels.push(LinComb::from_path(p));
                }
            }
        }
        let cap = rng.gen_range(3..=shape.max_path_len);
        for p in paths_of_len(&q, cap) {
            rels.push(LinComb::from_path(p));
        }
        if let Ok(a) = BoundAlgebra::build(field, q, rels, shape.max_path_len + 2) {
            if a.dim() <= shape.max_dim {
                return a;
            }
        }
    }
}

fn random_vector<R: Rng>(rng: &mut R, field: PrimeField, n: usize) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(0..field.modulus())).collect()
}

/// Submodule of `m` generated by `count` random homogeneous vectors.
pub fn random_submodule<R: Rng>(
    rng: &mut R,
    m: &Representation,
    count: usize,
) -> crate::rep::Submodule {
    let f = m.field();
    let mut seed: Vec<Subspace> = m.dims().iter().map(|&d| Subspace::zero(f, d)).collect();
    let live: Vec<usize> = (0..m.vertex_count()).filter(|&v| m.dim_at(v) > 0).collect();
    for _ in 0..count {
        if let Some(&v) = live.choose(rng) {
            let x = random_vector(rng, f, m.dim_at(v));
            seed[v] = seed[v].sum(&Subspace::from_vectors(f, m.dim_at(v), &[x]));
        }
    }
    m.generated(seed)
}

/// A random module of total dimension at most `max_dim`: a quotient of a
/// small projective, or a submodule of one, or a sum of two such.
pub fn random_module<R: Rng>(rng: &mut R, alg: &BoundAlgebra, max_dim: usize) -> Representation {
    loop {
        let branches = if max_dim >= 4 { 4 } else { 3 };
        let m = match rng.gen_range(0..branches) {
            0 | 1 => {
                let p = random_projective(rng, alg);
                let u = truncation(rng, &p);
                p.quotient(&u).0
            }
            2 => {
                let p = random_projective(rng, alg);
                let k = rng.gen_range(1..=2);
                let u = random_submodule(rng, &p, k);
                let (sub, _) = p.submodule(&u);
                let w = truncation(rng, &sub);
                sub.quotient(&w).0
            }
            _ => {
                let a = random_module(rng, alg, max_dim / 2);
                let b = random_module(rng, alg, max_dim / 2);
                a.direct_sum(&b)
            }
        };
        if !m.is_zero() && m.total_dim() <= max_dim {
            return m;
        }
    }
}

/// A random submodule containing some radical power, so that quotients stay small.
fn truncation<R: Rng>(rng: &mut R, m: &Representation) -> crate::rep::Submodule {
    let series = m.radical_series();
    let depth = rng.gen_range(1..series.len().max(2));
    let base = series[depth.min(series.len() - 1)].clone();
    let k = rng.gen_range(0..=2);
    base.sum(&random_submodule(rng, m, k))
}

pub fn random_projective<R: Rng>(rng: &mut R, alg: &BoundAlgebra) -> Representation {
    let count = rng.gen_range(1..=2);
    let parts: Vec<Representation> = (0..count)
        .map(|_| Representation::projective(alg, rng.gen_range(0..alg.vertex_count())))
        .collect();
    Representation::direct_sum_of(alg, &parts)
}

/// Random invertible change of basis at every vertex.
pub fn random_basis_change<R: Rng>(rng: &mut R, m: &Representation) -> Representation {
    let f = m.field();
    let g: Vec<_> = m
        .dims()
        .iter()
        .map(|&d| loop {
            let data = random_vector(rng, f, d * d);
            let g = crate::linalg::Matrix::from_vec(f, d, d, data);
            if g.is_invertible() {
                break g;
            }
        })
        .collect();
    m.conjugate(&g)
}
