//! The four-term equation `A1 X1 + X2 B1 + C3 X3 D3 + C4 X4 D4 = E1`.
//!
//! This is the equation the coupled solvers reduce to when they equate the
//! two parameterizations of the shared unknown. Its general solution is an
//! affine family in eight arbitrary matrices `T1..T8`.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::certificate::{Certificate, ProjectorCondition};
use crate::error::{Error, Result};
use crate::matrix::QuatMatrix;
use crate::params::{FreeParams, ParamId, ParamShapes};
use crate::pinv::{mp, MpOps};
use crate::tol::Tolerances;

/// `A1 X1 + X2 B1 + C3 X3 D3 + C4 X4 D4 = E1` with unknowns `X1..X4`.
#[derive(Debug, Clone)]
pub struct FourTermEquation {
    pub a1: QuatMatrix,
    pub b1: QuatMatrix,
    pub c3: QuatMatrix,
    pub d3: QuatMatrix,
    pub c4: QuatMatrix,
    pub d4: QuatMatrix,
    pub e1: QuatMatrix,
}

#[derive(Debug, Clone)]
pub struct FourTermSolution {
    pub x1: QuatMatrix,
    pub x2: QuatMatrix,
    pub x3: QuatMatrix,
    pub x4: QuatMatrix,
    pub params: FreeParams,
}

impl FourTermEquation {
    pub fn new(
        a1: QuatMatrix,
        b1: QuatMatrix,
        c3: QuatMatrix,
        d3: QuatMatrix,
        c4: QuatMatrix,
        d4: QuatMatrix,
        e1: QuatMatrix,
    ) -> Result<Self> {
        let (m, q) = e1.shape();
        for (name, rows_ok) in [
            ("A1", a1.rows() == m),
            ("C3", c3.rows() == m),
            ("C4", c4.rows() == m),
            ("B1", b1.cols() == q),
            ("D3", d3.cols() == q),
            ("D4", d4.cols() == q),
        ] {
            if !rows_ok {
                return Err(Error::Shape(format!(
                    "four-term equation: {name} does not conform with E1 ({m}x{q})"
                )));
            }
        }
        Ok(FourTermEquation {
            a1,
            b1,
            c3,
            d3,
            c4,
            d4,
            e1,
        })
    }

    /// Shape of the equation space (that of `E1`).
    pub fn shape(&self) -> (usize, usize) {
        self.e1.shape()
    }

    pub fn coefficients(&self) -> [&QuatMatrix; 7] {
        [
            &self.a1, &self.b1, &self.c3, &self.d3, &self.c4, &self.d4, &self.e1,
        ]
    }

    pub fn scale(&self) -> f64 {
        Tolerances::scale_of(self.coefficients())
    }

    /// Residual `||A1 X1 + X2 B1 + C3 X3 D3 + C4 X4 D4 - E1||_F`.
    pub fn residual(&self, sol: &FourTermSolution) -> f64 {
        (&self.a1 * &sol.x1 + &sol.x2 * &self.b1 + &self.c3 * &sol.x3 * &self.d3
            + &self.c4 * &sol.x4 * &self.d4
            - &self.e1)
            .frobenius_norm()
    }

    /// Consistency certificate (projector route only; the four conditions
    /// are `R_M R_A E = 0`, `E L_B L_N = 0`, `R_A E L_D = 0`, `R_C E L_B = 0`).
    pub fn check(&self, tol: &Tolerances) -> Result<Certificate> {
        let ops = FourTermOps::new(self, tol)?;
        let scale = self.scale();
        let bound = tol.cond_tol * scale;
        let projector_conditions = ops
            .projector_residuals()
            .into_iter()
            .zip(["R_M R_A E", "E L_B L_N", "R_A E L_D", "R_C E L_B"])
            .map(|(residual, id)| ProjectorCondition {
                id: id.to_string(),
                residual,
                bound,
            })
            .collect();
        Ok(Certificate {
            rank_conditions: vec![],
            projector_conditions,
            scale,
        })
    }

    /// Shapes of the eight arbitrary parameters `T1..T8`.
    pub fn param_shapes(&self) -> ParamShapes {
        let (m, q) = self.shape();
        let shapes = [
            (self.c4.cols(), self.d4.rows()), // T1
            (self.c4.cols(), self.d4.rows()), // T2
            (self.c4.cols(), self.d4.rows()), // T3
            (self.c3.cols(), self.d3.rows()), // T4
            (self.c3.cols(), self.d3.rows()), // T5
            (self.a1.cols(), q),              // T6
            (m, self.b1.rows()),              // T7
            (m, self.b1.rows()),              // T8
        ];
        shapes
            .into_iter()
            .enumerate()
            .map(|(i, s)| (ParamId::T(i as u8 + 1), s))
            .collect()
    }

    /// General solution; consistency is certified first.
    pub fn solve(&self, free: &FreeParams, tol: &Tolerances) -> Result<FourTermSolution> {
        let cert = self.check(tol)?;
        if !cert.consistent() {
            return Err(Error::Inconsistent(
                "four-term equation failed its projector conditions".to_string(),
            ));
        }
        self.solve_unchecked(free, tol)
    }

    /// General solution without the consistency gate (used by the coupled
    /// solvers, which certify consistency at the system level).
    pub(crate) fn solve_unchecked(
        &self,
        free: &FreeParams,
        tol: &Tolerances,
    ) -> Result<FourTermSolution> {
        let shapes = self.param_shapes();
        free.validate(&shapes)?;
        let mut t = Vec::with_capacity(8);
        for i in 1..=8u8 {
            let id = ParamId::T(i);
            let &(r, c) = shapes.get(&id).expect("shape for every T");
            t.push(free.resolve(id, r, c)?);
        }
        let t: [QuatMatrix; 8] = t.try_into().expect("eight parameters");
        let ops = FourTermOps::new(self, tol)?;
        let (x1, x2, x3, x4) = ops.solve(&t);
        Ok(FourTermSolution {
            x1,
            x2,
            x3,
            x4,
            params: free.clone(),
        })
    }
}

/// Derived operators of the four-term equation:
/// `A = R_A1 C3`, `B = D3 L_B1`, `C = R_A1 C4`, `D = D4 L_B1`,
/// `E = R_A1 E1 L_B1`, `M = R_A C`, `N = D L_B`, `S = C L_M`.
pub(crate) struct FourTermOps {
    eq: FourTermEquation,
    pub a: QuatMatrix,
    pub b: QuatMatrix,
    pub c: QuatMatrix,
    pub d: QuatMatrix,
    pub e: QuatMatrix,
    pub m: QuatMatrix,
    pub n: QuatMatrix,
    pub s: QuatMatrix,
    pub a1o: MpOps,
    pub b1o: MpOps,
    pub ao: MpOps,
    pub bo: MpOps,
    pub co: MpOps,
    pub d_o: MpOps,
    pub mo: MpOps,
    pub no: MpOps,
    pub so: MpOps,
}

impl FourTermOps {
    pub fn new(eq: &FourTermEquation, tol: &Tolerances) -> Result<Self> {
        let floor = tol.derived_floor(eq.scale());
        let a1o = mp(&eq.a1, tol, floor)?;
        let b1o = mp(&eq.b1, tol, floor)?;
        let a = &a1o.r * &eq.c3;
        let b = &eq.d3 * &b1o.l;
        let c = &a1o.r * &eq.c4;
        let d = &eq.d4 * &b1o.l;
        let e = &a1o.r * &eq.e1 * &b1o.l;
        let ao = mp(&a, tol, floor)?;
        let bo = mp(&b, tol, floor)?;
        let co = mp(&c, tol, floor)?;
        let d_o = mp(&d, tol, floor)?;
        let m = &ao.r * &c;
        let n = &d * &bo.l;
        let mo = mp(&m, tol, floor)?;
        let no = mp(&n, tol, floor)?;
        let s = &c * &mo.l;
        let so = mp(&s, tol, floor)?;
        Ok(FourTermOps {
            eq: eq.clone(),
            a,
            b,
            c,
            d,
            e,
            m,
            n,
            s,
            a1o,
            b1o,
            ao,
            bo,
            co,
            d_o,
            mo,
            no,
            so,
        })
    }

    /// `[ ||R_M R_A E||, ||E L_B L_N||, ||R_A E L_D||, ||R_C E L_B|| ]`
    pub fn projector_residuals(&self) -> [f64; 4] {
        [
            (&self.mo.r * &self.ao.r * &self.e).frobenius_norm(),
            (&self.e * &self.bo.l * &self.no.l).frobenius_norm(),
            (&self.ao.r * &self.e * &self.d_o.l).frobenius_norm(),
            (&self.co.r * &self.e * &self.bo.l).frobenius_norm(),
        ]
    }

    /// `(X1, X2, X3, X4)` for parameters `t = [T1..T8]`.
    pub fn solve(&self, t: &[QuatMatrix; 8]) -> (QuatMatrix, QuatMatrix, QuatMatrix, QuatMatrix) {
        let ap_e_bp = &self.ao.p * &self.e * &self.bo.p;
        let x3 = ap_e_bp
            - &self.ao.p * &self.c * &self.mo.p * &self.e * &self.bo.p
            - &self.ao.p * &self.s * &self.co.p * &self.e * &self.no.p * &self.d * &self.bo.p
            - &self.ao.p * &self.s * &t[1] * &self.no.r * &self.d * &self.bo.p
            + &self.ao.l * &t[3]
            + &t[4] * &self.bo.r;
        let x4 = &self.mo.p * &self.e * &self.d_o.p
            + &self.so.p * &self.s * &self.co.p * &self.e * &self.no.p
            + &self.mo.l * &self.so.l * &t[0]
            + &self.mo.l * &t[1] * &self.no.r
            + &t[2] * &self.d_o.r;
        let f = &self.eq.e1 - &self.eq.c3 * &x3 * &self.eq.d3 - &self.eq.c4 * &x4 * &self.eq.d4;
        let x1 = &self.a1o.p * &f - &self.a1o.p * &t[6] * &self.eq.b1 + &self.a1o.l * &t[5];
        let x2 = &self.a1o.r * &f * &self.b1o.p
            + &self.eq.a1 * &self.a1o.p * &t[6]
            + &t[7] * &self.b1o.r;
        (x1, x2, x3, x4)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::Quaternion as Q;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rq(rng: &mut ChaCha8Rng) -> Q {
        Q::new(
            rng.gen_range(-2..=2) as f64,
            rng.gen_range(-2..=2) as f64,
            rng.gen_range(-2..=2) as f64,
            rng.gen_range(-2..=2) as f64,
        )
    }

    #[test]
    fn zero_rhs_zero_solution() {
        let eye = QuatMatrix::identity(2);
        let z = QuatMatrix::zeros(2, 2);
        let eq = FourTermEquation::new(
            eye.clone(),
            eye.clone(),
            z.clone(),
            z.clone(),
            z.clone(),
            z.clone(),
            z.clone(),
        )
        .unwrap();
        let sol = eq.solve(&FreeParams::zero(), &Tolerances::default()).unwrap();
        assert!(sol.x1.is_zero() && sol.x2.is_zero() && sol.x3.is_zero() && sol.x4.is_zero());
    }

    #[test]
    fn identity_collapse() {
        // A1 = I, B1 = I, C3 = C4 = 0: X1 + X2 = E1, zero parameters give
        // X1 = E1, X2 = 0.
        let eye = QuatMatrix::identity(3);
        let z = QuatMatrix::zeros(3, 3);
        let e1 = QuatMatrix::from_fn(3, 3, |r, c| Q::new(r as f64 - 1.0, c as f64, 1.0, 0.0));
        let eq = FourTermEquation::new(
            eye.clone(),
            eye.clone(),
            z.clone(),
            z.clone(),
            z.clone(),
            z.clone(),
            e1.clone(),
        )
        .unwrap();
        let sol = eq.solve(&FreeParams::zero(), &Tolerances::default()).unwrap();
        assert!((&sol.x1 - &e1).frobenius_norm() < 1e-12);
        assert!(sol.x2.frobenius_norm() < 1e-12);
    }

    #[test]
    fn generated_instances_solve_for_any_parameters() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let tol = Tolerances::default();
        for trial in 0..30 {
            let d = |rng: &mut ChaCha8Rng| rng.gen_range(1..=3usize);
            let (m, q) = (d(&mut rng), d(&mut rng));
            let (n1, p1) = (d(&mut rng), d(&mut rng));
            let (n3, p3) = (d(&mut rng), d(&mut rng));
            let (n4, p4) = (d(&mut rng), d(&mut rng));
            let mat = |rng: &mut ChaCha8Rng, r, c| QuatMatrix::from_fn(r, c, |_, _| rq(rng));
            let a1 = mat(&mut rng, m, n1);
            let b1 = mat(&mut rng, p1, q);
            let c3 = mat(&mut rng, m, n3);
            let d3 = mat(&mut rng, p3, q);
            let c4 = mat(&mut rng, m, n4);
            let d4 = mat(&mut rng, p4, q);
            let x1 = mat(&mut rng, n1, q);
            let x2 = mat(&mut rng, m, p1);
            let x3 = mat(&mut rng, n3, p3);
            let x4 = mat(&mut rng, n4, p4);
            let e1 = &a1 * &x1 + &x2 * &b1 + &c3 * &x3 * &d3 + &c4 * &x4 * &d4;
            let eq = FourTermEquation::new(a1, b1, c3, d3, c4, d4, e1).unwrap();
            let scale = eq.scale();
            for draw in 0..6 {
                let free = if draw == 0 {
                    FreeParams::zero()
                } else {
                    FreeParams::random(&eq.param_shapes(), &mut rng)
                };
                let sol = eq.solve(&free, &tol).unwrap();
                let res = eq.residual(&sol);
                assert!(
                    res <= 1e-8 * scale,
                    "trial {trial} draw {draw}: residual {res:e} at scale {scale:e}"
                );
            }
        }
    }
}
