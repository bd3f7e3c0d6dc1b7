//! Rank, Moore-Penrose inverse and the projectors `L_A = I - A^† A`,
//! `R_A = I - A A^†`, all computed through one SVD of the complex adjoint.

use alloc::format;

use crate::adjoint::{from_adjoint, to_adjoint, ComplexAdjoint};
use crate::error::{Error, Result};
use crate::matrix::QuatMatrix;
use crate::svd::{jacobi_svd, pinv_from_svd};
use crate::tol::Tolerances;

impl QuatMatrix {
    /// Quaternionic rank: half the complex rank of `chi(A)`.
    ///
    /// The complex rank of an exact adjoint image is even (singular values
    /// come in pairs); an odd count means the cutoff landed inside a pair
    /// and is reported as a tolerance failure instead of being rounded.
    pub fn rank(&self, tol: &Tolerances) -> Result<usize> {
        self.rank_floored(tol, 0.0)
    }

    /// Rank with an additional absolute cutoff floor; used on operator
    /// blocks derived through projector products, whose exact value may be
    /// zero while the computed one carries rounding noise.
    pub(crate) fn rank_floored(&self, tol: &Tolerances, floor: f64) -> Result<usize> {
        if self.is_empty_shape() {
            return Ok(0);
        }
        let adj = to_adjoint(self);
        let svd = jacobi_svd(&adj.mat);
        let smax = svd.s.first().copied().unwrap_or(0.0);
        let cutoff = tol.cutoff(adj.rows(), adj.cols(), smax).max(floor);
        let kept = svd.s.iter().filter(|&&s| s > cutoff).count();
        if kept % 2 != 0 {
            return Err(Error::ToleranceFailure(format!(
                "complex rank of the adjoint is odd ({kept}); cutoff {cutoff:e} split a singular pair"
            )));
        }
        Ok(kept / 2)
    }

    /// Moore-Penrose inverse `A^†`, the unique solution of
    /// `A X A = A`, `X A X = X`, `(A X)* = A X`, `(X A)* = X A`.
    ///
    /// Computed as the structured preimage of the complex pseudoinverse of
    /// `chi(A)`; the pseudoinverse of a block-symmetric matrix keeps the
    /// block symmetry, so the preimage is well defined.
    pub fn pinv(&self, tol: &Tolerances) -> Result<QuatMatrix> {
        self.pinv_floored(tol, 0.0)
    }

    /// Pseudoinverse with an additional absolute cutoff floor (see
    /// [`QuatMatrix::rank_floored`]).
    pub(crate) fn pinv_floored(&self, tol: &Tolerances, floor: f64) -> Result<QuatMatrix> {
        let (m, n) = self.shape();
        if self.is_empty_shape() {
            return Ok(QuatMatrix::zeros(n, m));
        }
        let adj = to_adjoint(self);
        let svd = jacobi_svd(&adj.mat);
        let smax = svd.s.first().copied().unwrap_or(0.0);
        let cutoff = tol.cutoff(adj.rows(), adj.cols(), smax).max(floor);
        let (p, kept) = pinv_from_svd(&svd, cutoff);
        if kept % 2 != 0 {
            return Err(Error::ToleranceFailure(format!(
                "pseudoinverse cutoff {cutoff:e} split a singular pair (kept {kept})"
            )));
        }
        from_adjoint(&ComplexAdjoint::from_cmat(n, m, p), tol.cond_tol)
    }

    /// `L_A = I - A^† A` (square of size `cols`).
    pub fn proj_l(&self, tol: &Tolerances) -> Result<QuatMatrix> {
        Ok(proj_l_from(self, &self.pinv(tol)?))
    }

    /// `R_A = I - A A^†` (square of size `rows`).
    pub fn proj_r(&self, tol: &Tolerances) -> Result<QuatMatrix> {
        Ok(proj_r_from(self, &self.pinv(tol)?))
    }
}

/// `L_A` from a precomputed pseudoinverse.
pub fn proj_l_from(a: &QuatMatrix, a_pinv: &QuatMatrix) -> QuatMatrix {
    &QuatMatrix::identity(a.cols()) - &(a_pinv * a)
}

/// `R_A` from a precomputed pseudoinverse.
pub fn proj_r_from(a: &QuatMatrix, a_pinv: &QuatMatrix) -> QuatMatrix {
    &QuatMatrix::identity(a.rows()) - &(a * a_pinv)
}

/// The three Moore-Penrose derived operators of one matrix, computed from a
/// single SVD: `A^†`, `L_A` and `R_A`.
#[derive(Debug, Clone)]
pub(crate) struct MpOps {
    pub p: QuatMatrix,
    pub l: QuatMatrix,
    pub r: QuatMatrix,
}

/// Computes `MpOps` with the derived-matrix cutoff floor `floor`
/// (pass `0.0` for raw input matrices).
pub(crate) fn mp(a: &QuatMatrix, tol: &Tolerances, floor: f64) -> Result<MpOps> {
    let p = a.pinv_floored(tol, floor)?;
    Ok(MpOps {
        l: proj_l_from(a, &p),
        r: proj_r_from(a, &p),
        p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::Quaternion as Q;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn identity_and_zero() {
        let id = QuatMatrix::identity(3);
        assert_eq!(id.rank(&tol()).unwrap(), 3);
        assert!((id.pinv(&tol()).unwrap() - &id).frobenius_norm() < 1e-14);
        assert!(id.proj_l(&tol()).unwrap().is_zero());

        let z = QuatMatrix::zeros(2, 3);
        assert_eq!(z.rank(&tol()).unwrap(), 0);
        assert_eq!(z.pinv(&tol()).unwrap().shape(), (3, 2));
        assert!(z.pinv(&tol()).unwrap().is_zero());
        let z33 = QuatMatrix::zeros(3, 3);
        assert_eq!(z33.proj_l(&tol()).unwrap(), QuatMatrix::identity(3));
    }

    #[test]
    fn scalar_pinv_is_conjugate_over_norm() {
        let a = QuatMatrix::scalar(Q::I);
        let p = a.pinv(&tol()).unwrap();
        assert!((p[(0, 0)] - (-Q::I)).norm() < 1e-14);

        let q = Q::new(1.0, 2.0, -1.0, 0.5);
        let a = QuatMatrix::scalar(q);
        let p = a.pinv(&tol()).unwrap();
        let expect = q.conj().scale(1.0 / q.norm_sqr());
        assert!((p[(0, 0)] - expect).norm() < 1e-14);
    }

    #[test]
    fn rank_of_two_independent_rows() {
        let a = QuatMatrix::new(
            2,
            2,
            alloc::vec![Q::ONE, Q::I, Q::J, Q::K],
        )
        .unwrap();
        assert_eq!(a.rank(&tol()).unwrap(), 2);
    }

    #[test]
    fn empty_conventions() {
        let a = QuatMatrix::zeros(0, 3);
        assert_eq!(a.rank(&tol()).unwrap(), 0);
        assert_eq!(a.pinv(&tol()).unwrap().shape(), (3, 0));
        assert_eq!(a.proj_l(&tol()).unwrap(), QuatMatrix::identity(3));
        assert_eq!(a.proj_r(&tol()).unwrap(), QuatMatrix::identity(0));
    }
}
