//! Dense complex matrices and a one-sided Jacobi SVD.
//!
//! The systems this crate targets stay small (block matrices of a few dozen
//! rows), so a cyclic one-sided Jacobi iteration is the right trade: it is
//! simple, unconditionally convergent in practice, computes small singular
//! values to high relative accuracy, and is bit-deterministic.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;

/// Row-major dense complex matrix (crate-internal carrier for the adjoint
/// representation and its factorizations).
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct CMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat {
            rows,
            cols,
            data: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    pub fn adjoint(&self) -> CMat {
        let mut out = CMat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(c, r)] = self[(r, c)].conj();
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &CMat) -> CMat {
        assert_eq!(self.cols, rhs.rows, "complex matmul shape mismatch");
        let mut out = CMat::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for t in 0..self.cols {
                let a = self[(r, t)];
                if a == Complex64::ZERO {
                    continue;
                }
                for c in 0..rhs.cols {
                    let add = a * rhs[(t, c)];
                    out[(r, c)] += add;
                }
            }
        }
        out
    }

    pub fn sub(&self, rhs: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.cols + c]
    }
}

/// Thin SVD: `a = u * diag(s) * v^H` with `s` sorted descending.
/// Columns of `u` whose singular value is exactly zero are zero vectors.
pub(crate) struct ThinSvd {
    pub s: Vec<f64>,
    pub u: CMat,
    pub v: CMat,
}

const MAX_SWEEPS: usize = 128;
const ORTHO_TOL: f64 = 64.0 * f64::EPSILON;

/// One-sided Jacobi on the columns of `a` (transposed internally when the
/// matrix is wide so the iteration always works on the short side).
pub(crate) fn jacobi_svd(a: &CMat) -> ThinSvd {
    let (m, n) = (a.rows, a.cols);
    if m == 0 || n == 0 {
        return ThinSvd {
            s: Vec::new(),
            u: CMat::zeros(m, 0),
            v: CMat::zeros(n, 0),
        };
    }
    if m < n {
        let t = jacobi_svd(&a.adjoint());
        return ThinSvd {
            s: t.s,
            u: t.v,
            v: t.u,
        };
    }

    let mut w = a.clone();
    let mut v = CMat::identity(n);

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let mut app = 0.0f64;
                let mut aqq = 0.0f64;
                let mut apq = Complex64::ZERO;
                for i in 0..m {
                    let wp = w[(i, p)];
                    let wq = w[(i, q)];
                    app += wp.norm_sqr();
                    aqq += wq.norm_sqr();
                    apq += wp.conj() * wq;
                }
                let mag = apq.norm();
                if mag <= ORTHO_TOL * libm::sqrt(app * aqq) || mag == 0.0 {
                    continue;
                }
                rotated = true;
                let zeta = (app - aqq) / (2.0 * mag);
                let t = if zeta.is_finite() {
                    let sign = if zeta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (libm::fabs(zeta) + libm::sqrt(1.0 + zeta * zeta))
                } else {
                    0.0
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                let alpha = apq / mag;
                let s_conj_alpha = alpha.conj() * s;
                let s_alpha = alpha * s;
                for i in 0..m {
                    let wp = w[(i, p)];
                    let wq = w[(i, q)];
                    w[(i, p)] = wp * c + wq * s_conj_alpha;
                    w[(i, q)] = wq * c - wp * s_alpha;
                }
                for i in 0..n {
                    let vp = v[(i, p)];
                    let vq = v[(i, q)];
                    v[(i, p)] = vp * c + vq * s_conj_alpha;
                    v[(i, q)] = vq * c - vp * s_alpha;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut norms: Vec<f64> = (0..n)
        .map(|j| libm::sqrt((0..m).map(|i| w[(i, j)].norm_sqr()).sum()))
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| norms[b].partial_cmp(&norms[a]).unwrap());

    let k = n; // m >= n, thin factor keeps all n columns
    let mut u = CMat::zeros(m, k);
    let mut vs = CMat::zeros(n, k);
    let mut s = Vec::with_capacity(k);
    for (out_j, &j) in order.iter().enumerate() {
        let sigma = norms[j];
        s.push(sigma);
        if sigma > 0.0 {
            let inv = 1.0 / sigma;
            for i in 0..m {
                u[(i, out_j)] = w[(i, j)] * inv;
            }
        }
        for i in 0..n {
            vs[(i, out_j)] = v[(i, j)];
        }
    }
    norms.clear();

    ThinSvd { s, u, v: vs }
}

/// Moore-Penrose inverse from a thin SVD, keeping singular values above
/// `cutoff`. Returns the pseudoinverse and the number of kept values.
pub(crate) fn pinv_from_svd(svd: &ThinSvd, cutoff: f64) -> (CMat, usize) {
    let m = svd.u.rows;
    let n = svd.v.rows;
    let mut out = CMat::zeros(n, m);
    let mut kept = 0;
    for (j, &sigma) in svd.s.iter().enumerate() {
        if sigma <= cutoff || sigma == 0.0 {
            continue;
        }
        kept += 1;
        let inv = 1.0 / sigma;
        for r in 0..n {
            let vr = svd.v[(r, j)] * inv;
            for c in 0..m {
                let add = vr * svd.u[(c, j)].conj();
                out[(r, c)] += add;
            }
        }
    }
    (out, kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_rank_r(rng: &mut ChaCha8Rng, m: usize, n: usize, r: usize) -> CMat {
        let mut f = CMat::zeros(m, r);
        let mut g = CMat::zeros(r, n);
        for z in f.data.iter_mut().chain(g.data.iter_mut()) {
            *z = Complex64::new(
                rng.gen_range(-3..=3) as f64,
                rng.gen_range(-3..=3) as f64,
            );
        }
        f.matmul(&g)
    }

    fn reconstruction_error(a: &CMat, svd: &ThinSvd) -> f64 {
        let k = svd.s.len();
        let mut us = svd.u.clone();
        for j in 0..k {
            for i in 0..us.rows {
                us[(i, j)] *= svd.s[j];
            }
        }
        us.matmul(&svd.v.adjoint()).sub(a).frobenius_norm()
    }

    #[test]
    fn svd_reconstructs_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let m = rng.gen_range(1..=10);
            let n = rng.gen_range(1..=10);
            let r = rng.gen_range(0..=m.min(n));
            let a = random_rank_r(&mut rng, m, n, r);
            let svd = jacobi_svd(&a);
            let scale = 1.0 + a.frobenius_norm();
            assert!(
                reconstruction_error(&a, &svd) <= 1e-12 * scale,
                "reconstruction failed for {m}x{n} rank {r}"
            );
            let numeric_rank = svd
                .s
                .iter()
                .filter(|&&s| s > 10.0 * (m.max(n) as f64) * f64::EPSILON * svd.s[0].max(1.0))
                .count();
            assert!(numeric_rank <= r, "rank overshoot: {numeric_rank} > {r}");
        }
    }

    #[test]
    fn penrose_equations_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut worst: f64 = 0.0;
        for _ in 0..300 {
            let m = rng.gen_range(1..=9);
            let n = rng.gen_range(1..=9);
            let r = rng.gen_range(0..=m.min(n));
            let a = random_rank_r(&mut rng, m, n, r);
            let svd = jacobi_svd(&a);
            let smax = svd.s.first().copied().unwrap_or(0.0);
            let cutoff = (m.max(n) as f64) * f64::EPSILON * smax;
            let (x, _) = pinv_from_svd(&svd, cutoff);
            let axa = a.matmul(&x).matmul(&a).sub(&a).frobenius_norm();
            let xax = x.matmul(&a).matmul(&x).sub(&x).frobenius_norm();
            let ax = a.matmul(&x);
            let herm1 = ax.sub(&ax.adjoint()).frobenius_norm();
            let xa = x.matmul(&a);
            let herm2 = xa.sub(&xa.adjoint()).frobenius_norm();
            let scale = 1.0 + a.frobenius_norm() + x.frobenius_norm();
            let rel = [axa, xax, herm1, herm2]
                .into_iter()
                .fold(0.0f64, f64::max)
                / scale;
            worst = worst.max(rel);
        }
        assert!(worst < 1e-12, "worst relative penrose residual {worst:e}");
    }

    #[test]
    fn empty_and_zero() {
        let e = CMat::zeros(0, 4);
        let svd = jacobi_svd(&e);
        assert!(svd.s.is_empty());
        let z = CMat::zeros(3, 2);
        let svd = jacobi_svd(&z);
        assert_eq!(svd.s, vec![0.0, 0.0]);
        let (p, kept) = pinv_from_svd(&svd, 0.0);
        assert_eq!(kept, 0);
        assert_eq!((p.rows, p.cols), (2, 3));
    }
}
