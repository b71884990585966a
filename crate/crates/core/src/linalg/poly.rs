//! Univariate polynomials over GF(p), enough for minimal polynomials,
//! Frobenius fixed spaces and root finding.

use rand::Rng;

use super::field::PrimeField;
use super::matrix::Matrix;

/// Coefficients low degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub coeffs: Vec<u32>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn constant(c: u32) -> Self {
        Self::new(vec![c])
    }

    /// `t - c`
    pub fn linear(f: PrimeField, c: u32) -> Self {
        Self::new(vec![f.neg(c), 1])
    }

    pub fn x() -> Self {
        Poly { coeffs: vec![0, 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> u32 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn add(&self, o: &Poly, f: PrimeField) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    f.add(
                        *self.coeffs.get(i).unwrap_or(&0),
                        *o.coeffs.get(i).unwrap_or(&0),
                    )
                })
                .collect(),
        )
    }

    pub fn sub(&self, o: &Poly, f: PrimeField) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    f.sub(
                        *self.coeffs.get(i).unwrap_or(&0),
                        *o.coeffs.get(i).unwrap_or(&0),
                    )
                })
                .collect(),
        )
    }

    pub fn mul(&self, o: &Poly, f: PrimeField) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u32; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn divrem(&self, d: &Poly, f: PrimeField) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let inv = f.inv(d.lead());
        let mut r = self.coeffs.clone();
        let mut q = vec![0u32; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(r[i], inv);
            if c == 0 {
                continue;
            }
            q[i - dd] = c;
            for (j, &b) in d.coeffs.iter().enumerate() {
                let k = i - dd + j;
                r[k] = f.sub(r[k], f.mul(c, b));
            }
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly, f: PrimeField) -> Poly {
        self.divrem(d, f).1
    }

    pub fn monic(&self, f: PrimeField) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = f.inv(self.lead());
        Poly::new(self.coeffs.iter().map(|&c| f.mul(c, inv)).collect())
    }

    pub fn gcd(&self, o: &Poly, f: PrimeField) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn lcm(&self, o: &Poly, f: PrimeField) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        self.mul(o, f).divrem(&self.gcd(o, f), f).0.monic(f)
    }

    pub fn mulmod(&self, o: &Poly, m: &Poly, f: PrimeField) -> Poly {
        self.mul(o, f).rem(m, f)
    }

    pub fn powmod(&self, mut e: u64, m: &Poly, f: PrimeField) -> Poly {
        let mut base = self.rem(m, f);
        let mut acc = Poly::constant(1 % f.modulus()).rem(m, f);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mulmod(&base, m, f);
            }
        }
        acc
    }

    pub fn eval(&self, x: u32, f: PrimeField) -> u32 {
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Evaluates at a square matrix (Horner).
    pub fn eval_matrix(&self, a: &Matrix) -> Matrix {
        let f = a.field();
        let n = a.rows();
        let mut acc = Matrix::zeros(f, n, n);
        let id = Matrix::identity(f, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(a);
            acc.add_scaled(&id, c);
        }
        acc
    }
}

/// Minimal polynomial of a square matrix, monic.
pub fn minimal_polynomial(a: &Matrix) -> Poly {
    let f = a.field();
    let n = a.rows();
    krylov_relation(
        f,
        n * n,
        |_, prev: Option<&Matrix>| match prev {
            None => Matrix::identity(f, n),
            Some(m) => m.mul(a),
        },
        |m: &Matrix| m.data().to_vec(),
    )
}

/// Finds the first linear dependency among `v_0, v_1, ...` where
/// `v_k = flatten(next(k, v_{k-1}))` and returns it as a monic polynomial.
pub(crate) fn krylov_relation<T>(
    f: PrimeField,
    len: usize,
    mut next: impl FnMut(usize, Option<&T>) -> T,
    flatten: impl Fn(&T) -> Vec<u32>,
) -> Poly {
    // Reduced vectors with the pivot and the coefficient vector expressing them.
    let mut basis: Vec<(usize, Vec<u32>, Vec<u32>)> = Vec::new();
    let mut cur: Option<T> = None;
    for k in 0..=len {
        let item = next(k, cur.as_ref());
        let mut v = flatten(&item);
        let mut comb = vec![0u32; k + 1];
        comb[k] = 1;
        for (piv, bv, bc) in &basis {
            let x = v[*piv];
            if x != 0 {
                for (a, &b) in v.iter_mut().zip(bv) {
                    *a = f.sub(*a, f.mul(x, b));
                }
                for (a, &b) in comb.iter_mut().zip(bc) {
                    *a = f.sub(*a, f.mul(x, b));
                }
            }
        }
        match v.iter().position(|&x| x != 0) {
            None => return Poly::new(comb),
            Some(piv) => {
                let inv = f.inv(v[piv]);
                for a in v.iter_mut() {
                    *a = f.mul(*a, inv);
                }
                for a in comb.iter_mut() {
                    *a = f.mul(*a, inv);
                }
                // keep earlier basis vectors reduced at the new pivot
                for (_, bv, bc) in basis.iter_mut() {
                    let x = bv[piv];
                    if x != 0 {
                        for (a, &b) in bv.iter_mut().zip(&v) {
                            *a = f.sub(*a, f.mul(x, b));
                        }
                        bc.resize(k + 1, 0);
                        for (a, &b) in bc.iter_mut().zip(&comb) {
                            *a = f.sub(*a, f.mul(x, b));
                        }
                    }
                }
                basis.push((piv, v, comb));
            }
        }
        cur = Some(item);
    }
    unreachable!("more than `len` vectors in a space of dimension `len`")
}

/// The Frobenius fixed subalgebra `{c : c^p = c}` of `GF(p)[t]/(m)`, as a list
/// of polynomials of degree `< deg m` forming a basis.
pub fn frobenius_fixed_basis(m: &Poly, f: PrimeField) -> Vec<Poly> {
    let d = m.degree().expect("nonzero modulus");
    let p = f.modulus() as u64;
    let xp = Poly::x().powmod(p, m, f);
    // columns: images of t^j under c -> c^p, which is linear over GF(p)
    let mut frob = Matrix::zeros(f, d, d);
    let mut img = Poly::constant(1 % f.modulus()).rem(m, f);
    for j in 0..d {
        for (i, &c) in img.coeffs.iter().enumerate() {
            frob.set(i, j, c);
        }
        img = img.mulmod(&xp, m, f);
    }
    let fixed = frob.sub(&Matrix::identity(f, d)).kernel_basis();
    (0..fixed.cols()).map(|j| Poly::new(fixed.col(j))).collect()
}

/// A root in GF(p) of a polynomial that splits into distinct linear factors.
pub fn find_root<R: Rng>(g: &Poly, f: PrimeField, rng: &mut R) -> Option<u32> {
    let deg = g.degree()?;
    if deg == 0 {
        return None;
    }
    let g = g.monic(f);
    let p = f.modulus();
    if p <= 1 << 16 {
        return (0..p).find(|&c| g.eval(c, f) == 0);
    }
    let mut h = g;
    for _ in 0..256 {
        if h.degree() == Some(1) {
            return Some(f.neg(h.coeffs[0]));
        }
        let a = rng.gen_range(0..p);
        let base = Poly::new(vec![a, 1]);
        let w = base.powmod((p as u64 - 1) / 2, &h, f).sub(&Poly::constant(1), f);
        let d = w.gcd(&h, f);
        if let Some(dd) = d.degree() {
            if dd > 0 && dd < h.degree().unwrap() {
                h = if 2 * dd <= h.degree().unwrap() { d } else { h.divrem(&d, f).0.monic(f) };
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn minpoly_of_nilpotent_and_idempotent() {
        let f = PrimeField::gf2();
        let n = Matrix::from_rows(f, &[[0, 1], [0, 0]], 2).unwrap();
        assert_eq!(minimal_polynomial(&n), Poly::new(vec![0, 0, 1]));
        let e = Matrix::from_rows(f, &[[1, 0], [0, 0]], 2).unwrap();
        assert_eq!(minimal_polynomial(&e), Poly::new(vec![0, 1, 1]));
        let id = Matrix::identity(f, 3);
        assert_eq!(minimal_polynomial(&id), Poly::new(vec![1, 1]));
    }

    #[test]
    fn minpoly_annihilates() {
        let f = PrimeField::new(5).unwrap();
        let a = Matrix::from_rows(f, &[[1, 2, 0], [0, 1, 3], [4, 0, 2]], 3).unwrap();
        let m = minimal_polynomial(&a);
        assert!(m.eval_matrix(&a).is_zero());
    }

    #[test]
    fn frobenius_counts_factors() {
        let f = PrimeField::new(3).unwrap();
        // (t-1)(t-2)(t^2+1): three irreducible factors
        let m = Poly::linear(f, 1)
            .mul(&Poly::linear(f, 2), f)
            .mul(&Poly::new(vec![1, 0, 1]), f);
        assert_eq!(frobenius_fixed_basis(&m, f).len(), 3);
        // (t-1)^2 is primary
        let m = Poly::linear(f, 1).mul(&Poly::linear(f, 1), f);
        assert_eq!(frobenius_fixed_basis(&m, f).len(), 1);
    }

    #[test]
    fn roots_large_prime() {
        let f = PrimeField::new(2147483647).unwrap();
        let g = Poly::linear(f, 12345).mul(&Poly::linear(f, 999_999), f);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = find_root(&g, f, &mut rng).unwrap();
        assert!(r == 12345 || r == 999_999);
    }
}
