//! Small algebras used throughout the tests and the self-test command.

use crate::algebra::{BoundAlgebra, DEFAULT_MAX_LEN};
use crate::linalg::PrimeField;
use crate::quiver::{LinComb, Quiver};

fn build(
    field: PrimeField,
    vertices: &[&str],
    arrows: &[(&str, &str, &str)],
    relations: &[&[(i64, &[&str])]],
) -> BoundAlgebra {
    let q = Quiver::new(vertices, arrows).expect("valid quiver");
    let rels = relations
        .iter()
        .map(|terms| {
            LinComb::from_terms(
                field,
                terms.iter().map(|(c, names)| (field.reduce(*c), q.path(names).expect("path"))),
            )
        })
        .collect();
    BoundAlgebra::build(field, q, rels, DEFAULT_MAX_LEN).expect("admissible")
}

/// `1 -> 2`, no relations.
pub fn a2(field: PrimeField) -> BoundAlgebra {
    build(field, &["1", "2"], &[("a", "1", "2")], &[])
}

/// One loop `x` with `x^2 = 0`.
pub fn dual_numbers(field: PrimeField) -> BoundAlgebra {
    build(field, &["1"], &[("x", "1", "1")], &[&[(1, &["x", "x"])]])
}

/// Five vertices, loop `alpha` at 1, `beta: 1->2`, `gamma1, gamma2: 2->3`,
/// `delta: 3->4`, `rho: 4->5`, `mu1, mu2: 5->1`, bound by
/// `alpha^3, alpha*beta, rho*mu_i*alpha, mu_i*beta, gamma1*delta - gamma2*delta`.
pub fn five_vertex(field: PrimeField) -> BoundAlgebra {
    build(
        field,
        &["1", "2", "3", "4", "5"],
        &[
            ("alpha", "1", "1"),
            ("beta", "1", "2"),
            ("gamma1", "2", "3"),
            ("gamma2", "2", "3"),
            ("delta", "3", "4"),
            ("rho", "4", "5"),
            ("mu1", "5", "1"),
            ("mu2", "5", "1"),
        ],
        &[
            &[(1, &["alpha", "alpha", "alpha"])],
            &[(1, &["alpha", "beta"])],
            &[(1, &["rho", "mu1", "alpha"])],
            &[(1, &["rho", "mu2", "alpha"])],
            &[(1, &["mu1", "beta"])],
            &[(1, &["mu2", "beta"])],
            &[(1, &["gamma1", "delta"]), (-1, &["gamma2", "delta"])],
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Path;

    #[test]
    fn hereditary_a2() {
        let a = a2(PrimeField::gf2());
        assert_eq!(a.dim(), 3);
        assert_eq!(a.nilpotency_bound(), 2);
    }

    #[test]
    fn dual_numbers_basis() {
        let a = dual_numbers(PrimeField::gf2());
        assert_eq!(a.dim(), 2);
        assert_eq!(a.nilpotency_bound(), 2);
    }

    #[test]
    fn five_vertex_projectives() {
        let a = five_vertex(PrimeField::gf2());
        let dims: Vec<usize> = (0..5).map(|i| a.projective_dim(i)).collect();
        assert_eq!(dims, vec![10, 7, 5, 4, 7]);
        assert_eq!(a.dim(), 33);
        assert_eq!(a.nilpotency_bound(), 6);
    }

    #[test]
    fn five_vertex_normal_forms() {
        let f = PrimeField::gf2();
        let a = five_vertex(f);
        let q = a.quiver();
        let nf = |names: &[&str]| a.normal_form(&LinComb::from_path(q.path(names).unwrap()));
        assert!(nf(&["alpha", "alpha", "alpha"]).is_zero());
        // gamma2 is declared after gamma1, so gamma2*delta is the tip
        assert_eq!(nf(&["gamma2", "delta"]), LinComb::from_path(q.path(&["gamma1", "delta"]).unwrap()));
        let e1 = LinComb::from_path(Path::trivial(0));
        assert_eq!(a.normal_form(&e1), e1);
    }

    #[test]
    fn opposite_is_involutive_on_dimension() {
        for a in [a2(PrimeField::gf2()), dual_numbers(PrimeField::gf2()), five_vertex(PrimeField::gf2())] {
            let op = a.opposite().unwrap();
            assert_eq!(op.dim(), a.dim());
            assert_eq!(op.opposite().unwrap().dim(), a.dim());
        }
    }
}
