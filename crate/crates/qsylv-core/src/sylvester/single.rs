//! The one-sided generalized Sylvester equation `A X - Y B = C`.

use alloc::format;

use crate::error::{Error, Result};
use crate::matrix::QuatMatrix;
use crate::params::{FreeParams, ParamId};
use crate::pinv::mp;
use crate::tol::Tolerances;

/// Solves `A X - Y B = C`.
///
/// The equation is consistent iff `r([C A; B 0]) = r(A) + r(B)`,
/// equivalently `R_A C L_B = 0`; in that case the general solution is
///
/// ```text
/// X = A^† C + U B + L_A W,
/// Y = -R_A C B^† + A U + V R_B,
/// ```
///
/// with `U`, `W`, `V` arbitrary (looked up as `U1`, `W1`, `V1` in `free`,
/// defaulting to zero).
pub fn solve_single(
    a: &QuatMatrix,
    b: &QuatMatrix,
    c: &QuatMatrix,
    free: &FreeParams,
    tol: &Tolerances,
) -> Result<(QuatMatrix, QuatMatrix)> {
    if c.rows() != a.rows() || c.cols() != b.cols() {
        return Err(Error::Shape(format!(
            "A X - Y B = C: C is {}x{}, A has {} rows, B has {} cols",
            c.rows(),
            c.cols(),
            a.rows(),
            b.cols()
        )));
    }
    let scale = Tolerances::scale_of([a, b, c]);
    let floor = tol.derived_floor(scale);
    let ao = mp(a, tol, floor)?;
    let bo = mp(b, tol, floor)?;
    let obstruction = (&(&ao.r * c) * &bo.l).frobenius_norm();
    if obstruction > tol.cond_tol * scale {
        return Err(Error::Inconsistent(format!(
            "||R_A C L_B|| = {obstruction:e} exceeds {:e}",
            tol.cond_tol * scale
        )));
    }
    let u = free.resolve(ParamId::U(1), a.cols(), b.rows())?;
    let w = free.resolve(ParamId::W(1), a.cols(), c.cols())?;
    let v = free.resolve(ParamId::V(1), a.rows(), b.rows())?;
    let x = &(&ao.p * c) + &(&u * b) + &(&ao.l * &w);
    let y = &(&(a * &u) - &(&(&ao.r * c) * &bo.p)) + &(&v * &bo.r);
    Ok((x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::Quaternion as Q;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_coefficients_collapse() {
        let c = QuatMatrix::from_fn(3, 3, |r, s| Q::new(r as f64, s as f64, 1.0, 0.0));
        let id = QuatMatrix::identity(3);
        let (x, y) = solve_single(&id, &id, &c, &FreeParams::zero(), &Tolerances::default())
            .unwrap();
        assert!((&x - &c).frobenius_norm() < 1e-12);
        assert!(y.is_zero());
    }

    #[test]
    fn zero_coefficients_inconsistent() {
        let z = QuatMatrix::zeros(2, 2);
        let c = QuatMatrix::from_fn(2, 2, |_, _| Q::ONE);
        let err = solve_single(&z, &z, &c, &FreeParams::zero(), &Tolerances::default());
        assert!(matches!(err, Err(Error::Inconsistent(_))));
    }

    #[test]
    fn constructed_instances_solve() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let tol = Tolerances::default();
        for _ in 0..50 {
            let (m, n, p, q) = (
                rng.gen_range(1..=4),
                rng.gen_range(1..=4),
                rng.gen_range(1..=4),
                rng.gen_range(1..=4),
            );
            let qr = |rng: &mut ChaCha8Rng| {
                Q::new(
                    rng.gen_range(-2..=2) as f64,
                    rng.gen_range(-2..=2) as f64,
                    rng.gen_range(-2..=2) as f64,
                    rng.gen_range(-2..=2) as f64,
                )
            };
            let a = QuatMatrix::from_fn(m, n, |_, _| qr(&mut rng));
            let b = QuatMatrix::from_fn(p, q, |_, _| qr(&mut rng));
            let x0 = QuatMatrix::from_fn(n, q, |_, _| qr(&mut rng));
            let y0 = QuatMatrix::from_fn(m, p, |_, _| qr(&mut rng));
            let c = &(&a * &x0) - &(&y0 * &b);
            let scale = Tolerances::scale_of([&a, &b, &c]);
            for draw in 0..2 {
                let free = if draw == 0 {
                    FreeParams::zero()
                } else {
                    FreeParams::zero()
                        .with(ParamId::U(1), QuatMatrix::from_fn(n, p, |_, _| qr(&mut rng)))
                        .with(ParamId::W(1), QuatMatrix::from_fn(n, q, |_, _| qr(&mut rng)))
                        .with(ParamId::V(1), QuatMatrix::from_fn(m, p, |_, _| qr(&mut rng)))
                };
                let (x, y) = solve_single(&a, &b, &c, &free, &tol).unwrap();
                let res = (&(&a * &x) - &(&y * &b) - &c).frobenius_norm();
                assert!(res <= 1e-8 * scale, "residual {res:e} at scale {scale:e}");
            }
        }
    }
}
