//! The complex adjoint representation `chi(A)` of a quaternion matrix.
//!
//! Writing every entry as `q = c1 + c2 j` with complex `c1, c2`, an `m x n`
//! quaternion matrix maps to the `2m x 2n` complex block matrix
//! `[[C1, C2], [-conj(C2), conj(C1)]]`. The map is an injective ring
//! homomorphism compatible with conjugate transposition, which is what lets
//! rank, SVD and the Moore-Penrose inverse be computed on the complex side.

use alloc::format;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::QuatMatrix;
use crate::quat::Quaternion;
use crate::svd::CMat;

/// A `2m x 2n` complex matrix with the adjoint block symmetry.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexAdjoint {
    m: usize,
    n: usize,
    pub(crate) mat: CMat,
}

impl ComplexAdjoint {
    /// Source quaternion dimensions `(m, n)`; the stored matrix is `2m x 2n`.
    pub fn source_shape(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn rows(&self) -> usize {
        2 * self.m
    }

    pub fn cols(&self) -> usize {
        2 * self.n
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.mat[(r, c)]
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.mat.frobenius_norm()
    }

    /// Product of two adjoint images; equals `chi(A B)` up to rounding.
    pub fn matmul(&self, rhs: &ComplexAdjoint) -> Result<ComplexAdjoint> {
        if self.n != rhs.m {
            return Err(Error::Shape(format!(
                "adjoint product: {}x{} times {}x{}",
                self.m, self.n, rhs.m, rhs.n
            )));
        }
        Ok(ComplexAdjoint {
            m: self.m,
            n: rhs.n,
            mat: self.mat.matmul(&rhs.mat),
        })
    }

    pub fn sub_norm(&self, rhs: &ComplexAdjoint) -> f64 {
        self.mat.sub(&rhs.mat).frobenius_norm()
    }

    pub(crate) fn from_cmat(m: usize, n: usize, mat: CMat) -> Self {
        debug_assert_eq!((mat.rows, mat.cols), (2 * m, 2 * n));
        ComplexAdjoint { m, n, mat }
    }
}

/// `chi(A)`.
pub fn to_adjoint(a: &QuatMatrix) -> ComplexAdjoint {
    let (m, n) = a.shape();
    let mut mat = CMat::zeros(2 * m, 2 * n);
    for r in 0..m {
        for c in 0..n {
            let (c1, c2) = a[(r, c)].complex_parts();
            mat[(r, c)] = c1;
            mat[(r, n + c)] = c2;
            mat[(m + r, c)] = -c2.conj();
            mat[(m + r, n + c)] = c1.conj();
        }
    }
    ComplexAdjoint { m, n, mat }
}

/// Inverse of [`to_adjoint`] on structured images.
///
/// The four blocks are averaged pairwise, which projects small rounding
/// asymmetries back onto the structured subspace; inputs whose asymmetry
/// exceeds `cond_tol * (1 + norm)` are rejected as corrupted.
pub fn from_adjoint(adj: &ComplexAdjoint, cond_tol: f64) -> Result<QuatMatrix> {
    let (m, n) = (adj.m, adj.n);
    let mat = &adj.mat;
    let mut asym_sqr = 0.0f64;
    let mut out = QuatMatrix::zeros(m, n);
    for r in 0..m {
        for c in 0..n {
            let x11 = mat[(r, c)];
            let x12 = mat[(r, n + c)];
            let x21 = mat[(m + r, c)];
            let x22 = mat[(m + r, n + c)];
            asym_sqr += (x11 - x22.conj()).norm_sqr() + (x12 + x21.conj()).norm_sqr();
            let c1 = (x11 + x22.conj()) * 0.5;
            let c2 = (x12 - x21.conj()) * 0.5;
            out[(r, c)] = Quaternion::from_complex_parts(c1, c2);
        }
    }
    let asym = libm::sqrt(asym_sqr);
    let bound = cond_tol * (1.0 + mat.frobenius_norm());
    if asym > bound {
        return Err(Error::ToleranceFailure(format!(
            "block symmetry violated: asymmetry {asym:e} exceeds {bound:e}"
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::Quaternion as Q;

    #[test]
    fn one_plus_j_image() {
        let a = QuatMatrix::scalar(Q::ONE + Q::J);
        let adj = to_adjoint(&a);
        assert_eq!(adj.get(0, 0), Complex64::new(1.0, 0.0));
        assert_eq!(adj.get(0, 1), Complex64::new(1.0, 0.0));
        assert_eq!(adj.get(1, 0), Complex64::new(-1.0, 0.0));
        assert_eq!(adj.get(1, 1), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn zero_image_and_round_trip() {
        let z = QuatMatrix::zeros(2, 3);
        let adj = to_adjoint(&z);
        assert_eq!(adj.frobenius_norm(), 0.0);
        assert_eq!(from_adjoint(&adj, 1e-9).unwrap(), z);

        let a = QuatMatrix::from_fn(3, 2, |r, c| {
            Q::new(r as f64, c as f64 - 1.0, 0.5, -2.0)
        });
        assert_eq!(from_adjoint(&to_adjoint(&a), 1e-9).unwrap(), a);
    }

    #[test]
    fn rejects_broken_symmetry() {
        let a = QuatMatrix::scalar(Q::ONE);
        let mut adj = to_adjoint(&a);
        adj.mat[(1, 1)] = Complex64::new(2.0, 0.0);
        assert!(matches!(
            from_adjoint(&adj, 1e-9),
            Err(Error::ToleranceFailure(_))
        ));
    }

    #[test]
    fn conj_transpose_commutes() {
        let a = QuatMatrix::from_fn(2, 4, |r, c| Q::new(1.0, r as f64, c as f64, -1.0));
        let lhs = to_adjoint(&a.conj_transpose());
        let rhs_mat = to_adjoint(&a).mat.adjoint();
        assert!(lhs.mat.sub(&rhs_mat).frobenius_norm() < 1e-14);
    }
}
