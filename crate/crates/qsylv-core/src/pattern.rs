//! Shared machinery for equation patterns of the form
//! `A_i X_{l(i)} - X_{r(i)} B_i = C_i`.
//!
//! Every pair system and every coupled system is such a pattern; the shape
//! inference, residual evaluation and instance generation below are written
//! once against the pattern and reused by both.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::QuatMatrix;
use crate::quat::Quaternion;
use crate::tol::Tolerances;

/// Indices `(left unknown, right unknown)` per equation, 0-based.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Pattern {
    pub unknowns: usize,
    pub eqs: &'static [(usize, usize)],
}

/// Derives the unknowns' shapes from the coefficients and validates full
/// conformability. For every equation `i`:
/// `rows(X_l) = cols(A_i)`, `cols(X_l) = cols(B_i) = cols(C_i)`,
/// `rows(X_r) = rows(A_i) = rows(C_i)`, `cols(X_r) = rows(B_i)`.
pub(crate) fn infer_unknown_shapes(
    pat: Pattern,
    a: &[&QuatMatrix],
    b: &[&QuatMatrix],
    c: &[&QuatMatrix],
) -> Result<Vec<(usize, usize)>> {
    let mut rows: Vec<Option<usize>> = vec![None; pat.unknowns];
    let mut cols: Vec<Option<usize>> = vec![None; pat.unknowns];
    let set = |slot: &mut Option<usize>, value: usize, what: &str, eq: usize| -> Result<()> {
        match *slot {
            None => {
                *slot = Some(value);
                Ok(())
            }
            Some(v) if v == value => Ok(()),
            Some(v) => Err(Error::Shape(format!(
                "equation {}: {what} = {value} conflicts with {v}",
                eq + 1
            ))),
        }
    };
    for (i, &(l, r)) in pat.eqs.iter().enumerate() {
        if c[i].rows() != a[i].rows() {
            return Err(Error::Shape(format!(
                "equation {}: C has {} rows, A has {}",
                i + 1,
                c[i].rows(),
                a[i].rows()
            )));
        }
        if c[i].cols() != b[i].cols() {
            return Err(Error::Shape(format!(
                "equation {}: C has {} columns, B has {}",
                i + 1,
                c[i].cols(),
                b[i].cols()
            )));
        }
        set(&mut rows[l], a[i].cols(), "rows of left unknown", i)?;
        set(&mut cols[l], b[i].cols(), "cols of left unknown", i)?;
        set(&mut rows[r], a[i].rows(), "rows of right unknown", i)?;
        set(&mut cols[r], b[i].rows(), "cols of right unknown", i)?;
    }
    Ok(rows
        .into_iter()
        .zip(cols)
        .map(|(r, c)| (r.expect("pattern covers every unknown"), c.expect("pattern covers every unknown")))
        .collect())
}

/// Per-equation Frobenius residuals of `xs` substituted into the pattern.
pub(crate) fn equation_residuals(
    pat: Pattern,
    a: &[&QuatMatrix],
    b: &[&QuatMatrix],
    c: &[&QuatMatrix],
    xs: &[QuatMatrix],
) -> Result<Vec<f64>> {
    let shapes = infer_unknown_shapes(pat, a, b, c)?;
    if xs.len() != pat.unknowns {
        return Err(Error::Shape(format!(
            "expected {} unknowns, got {}",
            pat.unknowns,
            xs.len()
        )));
    }
    for (j, x) in xs.iter().enumerate() {
        if x.shape() != shapes[j] {
            return Err(Error::Shape(format!(
                "X{}: expected {}x{}, got {}x{}",
                j + 1,
                shapes[j].0,
                shapes[j].1,
                x.rows(),
                x.cols()
            )));
        }
    }
    Ok(pat
        .eqs
        .iter()
        .enumerate()
        .map(|(i, &(l, r))| (a[i] * &xs[l] - &xs[r] * b[i] - c[i]).frobenius_norm())
        .collect())
}

fn random_quat(rng: &mut impl Rng, lo: i32, hi: i32) -> Quaternion {
    Quaternion::new(
        rng.gen_range(lo..=hi) as f64,
        rng.gen_range(lo..=hi) as f64,
        rng.gen_range(lo..=hi) as f64,
        rng.gen_range(lo..=hi) as f64,
    )
}

/// Random integer-entry matrix of rank at most `rank`, built as a product of
/// `rows x rank` and `rank x cols` factors with components in `-1..=1`.
fn random_with_rank(rng: &mut impl Rng, rows: usize, cols: usize, rank: usize) -> QuatMatrix {
    let f = QuatMatrix::from_fn(rows, rank, |_, _| random_quat(rng, -1, 1));
    let g = QuatMatrix::from_fn(rank, cols, |_, _| random_quat(rng, -1, 1));
    &f * &g
}

/// A consistent instance planted from integer unknowns.
pub(crate) struct PlantedInstance {
    pub a: Vec<QuatMatrix>,
    pub b: Vec<QuatMatrix>,
    pub c: Vec<QuatMatrix>,
    pub xs: Vec<QuatMatrix>,
}

/// Draws coefficients and unknowns with small-integer entries and computes
/// the right-hand sides exactly, so the instance is consistent by
/// construction (all arithmetic is exact in f64 at these magnitudes).
///
/// The first equation's `A` is drawn with row rank strictly below its row
/// count and its `B` with column rank strictly below its column count; that
/// keeps `R_A1` and `L_B1` nonzero, which [`perturb_first_rhs`] relies on.
pub(crate) fn plant(
    pat: Pattern,
    unknown_shapes: &[(usize, usize)],
    rng: &mut impl Rng,
) -> PlantedInstance {
    let xs: Vec<QuatMatrix> = unknown_shapes
        .iter()
        .map(|&(r, c)| QuatMatrix::from_fn(r, c, |_, _| random_quat(rng, -2, 2)))
        .collect();
    let mut a = Vec::with_capacity(pat.eqs.len());
    let mut b = Vec::with_capacity(pat.eqs.len());
    for (i, &(l, r)) in pat.eqs.iter().enumerate() {
        let a_shape = (xs[r].rows(), xs[l].rows());
        let b_shape = (xs[r].cols(), xs[l].cols());
        let (a_rank, b_rank) = if i == 0 {
            (
                rng.gen_range(0..a_shape.0.max(1)).min(a_shape.1),
                rng.gen_range(0..b_shape.1.max(1)).min(b_shape.0),
            )
        } else {
            (
                rng.gen_range(0..=a_shape.0.min(a_shape.1)),
                rng.gen_range(0..=b_shape.0.min(b_shape.1)),
            )
        };
        a.push(random_with_rank(rng, a_shape.0, a_shape.1, a_rank));
        b.push(random_with_rank(rng, b_shape.0, b_shape.1, b_rank));
    }
    let c: Vec<QuatMatrix> = pat
        .eqs
        .iter()
        .enumerate()
        .map(|(i, &(l, r))| &(&a[i] * &xs[l]) - &(&xs[r] * &b[i]))
        .collect();
    PlantedInstance { a, b, c, xs }
}

/// Bumps one entry of the first right-hand side by a nonzero integer
/// quaternion, placed where the diagonal entries of `R_A1` and `L_B1` are
/// largest. For instances from [`plant`] this provably breaks
/// `R_A1 C1 L_B1 = 0` with margin at least `|q| / (rows * cols)`.
pub(crate) fn perturb_first_rhs(
    a1: &QuatMatrix,
    b1: &QuatMatrix,
    c1: &QuatMatrix,
    rng: &mut impl Rng,
    tol: &Tolerances,
) -> Result<QuatMatrix> {
    let r_a1 = a1.proj_r(tol)?;
    let l_b1 = b1.proj_l(tol)?;
    let argmax_diag = |m: &QuatMatrix| {
        (0..m.rows())
            .max_by(|&i, &j| {
                m[(i, i)]
                    .norm()
                    .partial_cmp(&m[(j, j)].norm())
                    .unwrap()
            })
            .unwrap_or(0)
    };
    let row = argmax_diag(&r_a1);
    let col = argmax_diag(&l_b1);
    let mut q = random_quat(rng, -2, 2);
    if q.is_zero() {
        q = Quaternion::ONE;
    }
    let mut c1 = c1.clone();
    c1[(row, col)] += q;
    Ok(c1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const CHAIN: Pattern = Pattern {
        unknowns: 3,
        eqs: &[(0, 1), (1, 2)],
    };

    #[test]
    fn inference_and_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let shapes = [(2, 3), (4, 2), (3, 4)];
        let inst = plant(CHAIN, &shapes, &mut rng);
        fn refs(v: &[QuatMatrix]) -> Vec<&QuatMatrix> {
            v.iter().collect()
        }
        let inferred =
            infer_unknown_shapes(CHAIN, &refs(&inst.a), &refs(&inst.b), &refs(&inst.c)).unwrap();
        assert_eq!(inferred, shapes.to_vec());
        let res =
            equation_residuals(CHAIN, &refs(&inst.a), &refs(&inst.b), &refs(&inst.c), &inst.xs)
                .unwrap();
        assert!(res.iter().all(|&r| r == 0.0), "planted residual {res:?}");
    }

    #[test]
    fn perturbation_violates_first_equation() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let tol = Tolerances::default();
        for _ in 0..20 {
            let shapes = [
                (rng.gen_range(1..=3), rng.gen_range(1..=3)),
                (rng.gen_range(1..=3), rng.gen_range(1..=3)),
                (rng.gen_range(1..=3), rng.gen_range(1..=3)),
            ];
            let inst = plant(CHAIN, &shapes, &mut rng);
            let bumped = perturb_first_rhs(&inst.a[0], &inst.b[0], &inst.c[0], &mut rng, &tol)
                .unwrap();
            let obstruction = &(&inst.a[0].proj_r(&tol).unwrap() * &bumped)
                * &inst.b[0].proj_l(&tol).unwrap();
            assert!(
                obstruction.frobenius_norm() > 1e-3,
                "perturbation did not break consistency"
            );
        }
    }
}
