//! Rank bookkeeping identities used throughout the solvability proofs:
//! `r(A) + r(R_A B) = r([A B])` and `r(A) + r(C L_A) = r([A; C])`.

use crate::error::Result;
use crate::matrix::QuatMatrix;
use crate::tol::Tolerances;

/// Evaluates both identities on concrete inputs, returning
/// `(columns identity holds, rows identity holds)`.
pub fn rank_identity_check(
    a: &QuatMatrix,
    b: &QuatMatrix,
    c: &QuatMatrix,
    tol: &Tolerances,
) -> Result<(bool, bool)> {
    // The projected blocks R_A B and C L_A are derived matrices: their exact
    // singular values may be zero while the computed ones carry rounding
    // noise, so their ranks take the derived-matrix cutoff floor.
    let floor = tol.derived_floor(Tolerances::scale_of([a, b, c]));
    let ra_b = &a.proj_r(tol)? * b;
    let cols =
        a.rank(tol)? + ra_b.rank_floored(tol, floor)? == QuatMatrix::hstack(&[a, b])?.rank(tol)?;
    let c_la = c * &a.proj_l(tol)?;
    let rows =
        a.rank(tol)? + c_la.rank_floored(tol, floor)? == QuatMatrix::vstack(&[a, c])?.rank(tol)?;
    Ok((cols, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::Quaternion as Q;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_coefficient() {
        let a = QuatMatrix::identity(3);
        let b = QuatMatrix::from_fn(3, 2, |r, c| Q::new(1.0, r as f64, c as f64, 0.0));
        let c = QuatMatrix::from_fn(2, 3, |r, c| Q::new(c as f64, 0.0, r as f64, 1.0));
        let tol = Tolerances::default();
        assert_eq!(rank_identity_check(&a, &b, &c, &tol).unwrap(), (true, true));
        // with A = I the column identity reduces to r([I B]) = r(I)
        assert_eq!((&a.proj_r(&tol).unwrap() * &b).rank(&tol).unwrap(), 0);
    }

    #[test]
    fn zero_coefficient() {
        let a = QuatMatrix::zeros(2, 2);
        let b = QuatMatrix::from_fn(2, 2, |_, _| Q::I);
        let c = QuatMatrix::from_fn(2, 2, |_, _| Q::J);
        let tol = Tolerances::default();
        assert_eq!(rank_identity_check(&a, &b, &c, &tol).unwrap(), (true, true));
    }

    #[test]
    fn random_sweep() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let tol = Tolerances::default();
        for _ in 0..200 {
            let m = rng.gen_range(1..=5);
            let n = rng.gen_range(1..=5);
            let k = rng.gen_range(1..=5);
            let l = rng.gen_range(1..=5);
            let rq = |rng: &mut ChaCha8Rng| {
                Q::new(
                    rng.gen_range(-2..=2) as f64,
                    rng.gen_range(-2..=2) as f64,
                    rng.gen_range(-2..=2) as f64,
                    rng.gen_range(-2..=2) as f64,
                )
            };
            let a = QuatMatrix::from_fn(m, n, |_, _| rq(&mut rng));
            let b = QuatMatrix::from_fn(m, k, |_, _| rq(&mut rng));
            let c = QuatMatrix::from_fn(l, n, |_, _| rq(&mut rng));
            assert_eq!(
                rank_identity_check(&a, &b, &c, &tol).unwrap(),
                (true, true),
                "identities failed for {m}x{n}, B {m}x{k}, C {l}x{n}"
            );
        }
    }
}
