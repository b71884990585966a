//! Projective covers, syzygies and Hom spaces via projective presentations.

use crate::algebra::BoundAlgebra;
use crate::linalg::Matrix;
use crate::rep::{ModuleMap, Representation, Submodule};

/// A minimal projective cover `π: P0 -> M` with a vector-space section.
#[derive(Clone, Debug)]
pub struct Cover {
    /// Generators `(vertex, vector in M_vertex)` lifting a basis of the top.
    pub generators: Vec<(usize, Vec<u32>)>,
    pub projective: Representation,
    pub map: ModuleMap,
    pub kernel: Submodule,
    /// For each generator and vertex `w`: the basis paths from its vertex to
    /// `w`, giving the coordinates of `P0_w`.
    layout: Vec<Vec<(usize, usize)>>,
}

/// Lifts of a basis of `top M`: the standard basis vectors outside the
/// pivots of `rad M`.
pub fn top_generators(m: &Representation) -> Vec<(usize, Vec<u32>)> {
    let rad = m.radical();
    let mut out = Vec::new();
    for (v, part) in rad.parts.iter().enumerate() {
        for c in part.complement_indices() {
            let mut e = vec![0; m.dim_at(v)];
            e[c] = 1;
            out.push((v, e));
        }
    }
    out
}

pub fn projective_cover(alg: &BoundAlgebra, m: &Representation) -> Cover {
    let gens = top_generators(m);
    cover_from_generators(alg, m, gens)
}

/// Cover by the free module on the given generators (minimal when the
/// generators lift a basis of the top).
pub fn cover_from_generators(
    alg: &BoundAlgebra,
    m: &Representation,
    gens: Vec<(usize, Vec<u32>)>,
) -> Cover {
    let f = m.field();
    let nv = m.vertex_count();
    let paths = m.basis_path_matrices(alg);
    let projective = Representation::direct_sum_of(
        alg,
        &gens.iter().map(|&(v, _)| Representation::projective(alg, v)).collect::<Vec<_>>(),
    );
    let mut layout = vec![Vec::new(); nv];
    let mut blocks = Vec::with_capacity(nv);
    for w in 0..nv {
        let mut cols = Vec::new();
        for (k, (v, g)) in gens.iter().enumerate() {
            for &b in alg.paths_between(*v, w) {
                layout[w].push((k, b));
                cols.push(paths[b].mul_vec(g));
            }
        }
        blocks.push(Matrix::from_columns(f, m.dim_at(w), &cols));
    }
    let map = ModuleMap { blocks };
    let kernel = map.kernel();
    Cover { generators: gens, projective, map, kernel, layout }
}

impl Cover {
    pub fn syzygy(&self) -> Representation {
        self.projective.submodule(&self.kernel).0
    }

    /// Inclusion of the syzygy into the cover.
    pub fn syzygy_with_inclusion(&self) -> (Representation, ModuleMap) {
        self.projective.submodule(&self.kernel)
    }
}

pub fn syzygy(alg: &BoundAlgebra, m: &Representation) -> Representation {
    projective_cover(alg, m).syzygy()
}

/// Basis of `Hom(M, N)`. A map is fixed by the images `n_k ∈ N_{v_k}` of the
/// top generators; the constraints are that the induced map `P0 -> N`
/// vanishes on `ker π`.
pub fn hom_basis(alg: &BoundAlgebra, m: &Representation, n: &Representation) -> Vec<ModuleMap> {
    let f = m.field();
    let nv = m.vertex_count();
    if m.is_zero() || n.is_zero() {
        return Vec::new();
    }
    let cover = projective_cover(alg, m);
    let npaths = n.basis_path_matrices(alg);
    let gens = &cover.generators;
    let mut uoff = vec![0; gens.len() + 1];
    for (k, (v, _)) in gens.iter().enumerate() {
        uoff[k + 1] = uoff[k] + n.dim_at(*v);
    }
    let unknowns = uoff[gens.len()];
    if unknowns == 0 {
        return Vec::new();
    }

    let mut rows: Vec<u32> = Vec::new();
    let mut nrows = 0;
    for w in 0..nv {
        let kw = cover.kernel.parts[w].vectors();
        for kappa in &kw {
            for r in 0..n.dim_at(w) {
                let mut row = vec![0u32; unknowns];
                for (idx, &(k, b)) in cover.layout[w].iter().enumerate() {
                    let c = kappa[idx];
                    if c == 0 {
                        continue;
                    }
                    let nb = &npaths[b];
                    for s in 0..nb.cols() {
                        let x = nb.get(r, s);
                        if x != 0 {
                            let u = uoff[k] + s;
                            row[u] = f.add(row[u], f.mul(c, x));
                        }
                    }
                }
                rows.extend(row);
                nrows += 1;
            }
        }
    }
    let sys = Matrix::from_vec(f, nrows, unknowns, rows);
    let sols = sys.kernel_basis();

    let sections: Vec<Matrix> = (0..nv)
        .map(|w| {
            cover.map.blocks[w]
                .solve_matrix(&Matrix::identity(f, m.dim_at(w)))
                .expect("cover is surjective")
        })
        .collect();

    (0..sols.cols())
        .map(|j| {
            let sol = sols.col(j);
            let blocks = (0..nv)
                .map(|w| {
                    let cols: Vec<Vec<u32>> = cover.layout[w]
                        .iter()
                        .map(|&(k, b)| npaths[b].mul_vec(&sol[uoff[k]..uoff[k + 1]]))
                        .collect();
                    Matrix::from_columns(f, n.dim_at(w), &cols).mul(&sections[w])
                })
                .collect();
            ModuleMap { blocks }
        })
        .collect()
}

pub fn hom_dim(alg: &BoundAlgebra, m: &Representation, n: &Representation) -> usize {
    hom_basis(alg, m, n).len()
}
