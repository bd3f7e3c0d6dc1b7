//! The three two-equation pair shapes sharing one unknown:
//!
//! - `common_right`: `A1 X1 - X2 B1 = C1`, `A2 X3 - X2 B2 = C2` (shared X2)
//! - `chain`:        `A1 X1 - X2 B1 = C1`, `A2 X2 - X3 B2 = C2` (X2 passes sides)
//! - `common_left`:  `A1 X1 - X2 B1 = C1`, `A2 X1 - X3 B2 = C2` (shared X1)
//!
//! Each shape has a closed-form general solution in six arbitrary matrices
//! `W1..W6`; the engines below also expose their intermediate operator
//! blocks, which the coupled solvers re-label and reuse.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::certificate::{Certificate, ProjectorCondition, RankCondition};
use crate::error::{Error, Result};
use crate::matrix::QuatMatrix;
use crate::params::{FreeParams, ParamId, ParamShapes};
use crate::pattern::{infer_unknown_shapes, Pattern};
use crate::pinv::{mp, MpOps};
use crate::qblock;
use crate::tol::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    CommonRight,
    Chain,
    CommonLeft,
}

impl PairKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            PairKind::CommonRight => "common_right",
            PairKind::Chain => "chain",
            PairKind::CommonLeft => "common_left",
        }
    }

    pub(crate) fn pattern(&self) -> Pattern {
        match self {
            PairKind::CommonRight => Pattern {
                unknowns: 3,
                eqs: &[(0, 1), (2, 1)],
            },
            PairKind::Chain => Pattern {
                unknowns: 3,
                eqs: &[(0, 1), (1, 2)],
            },
            PairKind::CommonLeft => Pattern {
                unknowns: 3,
                eqs: &[(0, 1), (0, 2)],
            },
        }
    }
}

/// A pair of one-sided Sylvester equations with one shared unknown.
#[derive(Debug, Clone)]
pub struct PairSystem {
    kind: PairKind,
    a1: QuatMatrix,
    b1: QuatMatrix,
    c1: QuatMatrix,
    a2: QuatMatrix,
    b2: QuatMatrix,
    c2: QuatMatrix,
}

/// The three unknowns plus the parameter assignment that produced them.
#[derive(Debug, Clone)]
pub struct PairSolution {
    pub x1: QuatMatrix,
    pub x2: QuatMatrix,
    pub x3: QuatMatrix,
    pub params: FreeParams,
}

impl PairSystem {
    pub fn new(
        kind: PairKind,
        a1: QuatMatrix,
        b1: QuatMatrix,
        c1: QuatMatrix,
        a2: QuatMatrix,
        b2: QuatMatrix,
        c2: QuatMatrix,
    ) -> Result<Self> {
        let sys = PairSystem {
            kind,
            a1,
            b1,
            c1,
            a2,
            b2,
            c2,
        };
        sys.unknown_shapes()?;
        Ok(sys)
    }

    pub fn kind(&self) -> PairKind {
        self.kind
    }

    pub fn coefficients(&self) -> [&QuatMatrix; 6] {
        [&self.a1, &self.b1, &self.c1, &self.a2, &self.b2, &self.c2]
    }

    pub fn unknown_shapes(&self) -> Result<Vec<(usize, usize)>> {
        infer_unknown_shapes(
            self.kind.pattern(),
            &[&self.a1, &self.a2],
            &[&self.b1, &self.b2],
            &[&self.c1, &self.c2],
        )
    }

    pub fn scale(&self) -> f64 {
        Tolerances::scale_of(self.coefficients())
    }

    /// Per-equation residuals of a candidate `(x1, x2, x3)`.
    pub fn equation_residuals(&self, xs: &[QuatMatrix]) -> Result<Vec<f64>> {
        crate::pattern::equation_residuals(
            self.kind.pattern(),
            &[&self.a1, &self.a2],
            &[&self.b1, &self.b2],
            &[&self.c1, &self.c2],
            xs,
        )
    }

    /// Two-route solvability certificate.
    pub fn check(&self, tol: &Tolerances) -> Result<Certificate> {
        let scale = self.scale();
        let bound = tol.cond_tol * scale;
        let (a1, b1, c1, a2, b2, c2) =
            (&self.a1, &self.b1, &self.c1, &self.a2, &self.b2, &self.c2);

        let mut rank_conditions = vec![
            RankCondition {
                id: "eq1".to_string(),
                lhs: qblock![[c1, a1]; [b1, 0]]?.rank(tol)?,
                rhs: a1.rank(tol)? + b1.rank(tol)?,
            },
            RankCondition {
                id: "eq2".to_string(),
                lhs: qblock![[c2, a2]; [b2, 0]]?.rank(tol)?,
                rhs: a2.rank(tol)? + b2.rank(tol)?,
            },
        ];
        let combined = match self.kind {
            PairKind::CommonRight => RankCondition {
                id: "combined".to_string(),
                lhs: qblock![[b2, b1, 0, 0]; [c2, c1, a1, a2]]?.rank(tol)?,
                rhs: QuatMatrix::hstack(&[a1, a2])?.rank(tol)?
                    + QuatMatrix::hstack(&[b1, b2])?.rank(tol)?,
            },
            PairKind::Chain => {
                let a21 = a2 * a1;
                let b21 = b2 * b1;
                let top = a2 * c1 + c2 * b1;
                RankCondition {
                    id: "combined".to_string(),
                    lhs: qblock![[a21, top]; [0, b21]]?.rank(tol)?,
                    rhs: a21.rank(tol)? + b21.rank(tol)?,
                }
            }
            PairKind::CommonLeft => RankCondition {
                id: "combined".to_string(),
                lhs: qblock![[c1, a1]; [c2, a2]; [b1, 0]; [b2, 0]]?.rank(tol)?,
                rhs: QuatMatrix::vstack(&[a1, a2])?.rank(tol)?
                    + QuatMatrix::vstack(&[b1, b2])?.rank(tol)?,
            },
        };
        rank_conditions.push(combined);

        let (ids, residuals): ([&str; 3], [f64; 3]) = match self.kind {
            PairKind::CommonRight => {
                let ops = CommonRightOps::new(a1, b1, c1, a2, b2, c2, tol)?;
                (["R_A1 C1 L_B1", "R_A C", "C L_B"], ops.projector_residuals())
            }
            PairKind::Chain => {
                let ops = ChainOps::new(a1, b1, c1, a2, b2, c2, tol)?;
                (
                    ["R_A1 C1 L_B1", "R_A11 C11", "C11 L_B11"],
                    ops.projector_residuals(),
                )
            }
            PairKind::CommonLeft => {
                let ops = CommonLeftOps::new(a1, b1, c1, a2, b2, c2, tol)?;
                (
                    ["R_A1 C1 L_B1", "R_A11 C11", "C11 L_B11"],
                    ops.projector_residuals(),
                )
            }
        };
        let projector_conditions = ids
            .iter()
            .zip(residuals)
            .map(|(id, residual)| ProjectorCondition {
                id: id.to_string(),
                residual,
                bound,
            })
            .collect();

        Ok(Certificate {
            rank_conditions,
            projector_conditions,
            scale,
        })
    }

    /// Shapes of the six arbitrary parameters `W1..W6`.
    pub fn param_shapes(&self) -> Result<ParamShapes> {
        let (a1, b1, a2, b2) = (&self.a1, &self.b1, &self.a2, &self.b2);
        let shapes: [(usize, usize); 6] = match self.kind {
            PairKind::CommonRight => [
                (a1.cols(), b1.cols()),
                (a1.cols(), b1.rows()),
                (a1.cols(), b1.rows()),
                (a2.cols(), b1.rows()),
                (a1.rows(), b1.rows()),
                (a2.cols(), b2.cols()),
            ],
            PairKind::Chain => [
                (a1.cols(), b1.cols()),
                (a2.cols(), b1.rows()),
                (a2.cols(), b1.rows()),
                (a1.cols(), b2.rows()),
                (a2.rows(), b2.rows()),
                (a1.cols(), b1.rows()),
            ],
            PairKind::CommonLeft => [
                (a1.cols(), b2.rows()),
                (a1.cols(), b1.cols()),
                (a2.rows(), b2.rows()),
                (a2.cols(), b1.rows()),
                (a1.cols(), b1.rows()),
                (a1.rows(), b1.rows()),
            ],
        };
        Ok(shapes
            .into_iter()
            .enumerate()
            .map(|(i, s)| (ParamId::W(i as u8 + 1), s))
            .collect())
    }

    /// General solution for a consistent pair; any parameter assignment
    /// yields a valid solution.
    pub fn solve(&self, free: &FreeParams, tol: &Tolerances) -> Result<PairSolution> {
        let cert = self.check(tol)?;
        if !cert.consistent() {
            return Err(Error::Inconsistent(format!(
                "{} pair failed its solvability certificate",
                self.kind.as_str()
            )));
        }
        let shapes = self.param_shapes()?;
        free.validate(&shapes)?;
        let w = resolve_six(free, &shapes, ParamId::W)?;
        let (a1, b1, c1, a2, b2, c2) =
            (&self.a1, &self.b1, &self.c1, &self.a2, &self.b2, &self.c2);
        let (x1, x2, x3) = match self.kind {
            PairKind::CommonRight => {
                CommonRightOps::new(a1, b1, c1, a2, b2, c2, tol)?.solve(&w)
            }
            PairKind::Chain => ChainOps::new(a1, b1, c1, a2, b2, c2, tol)?.solve(&w),
            PairKind::CommonLeft => CommonLeftOps::new(a1, b1, c1, a2, b2, c2, tol)?.solve(&w),
        };
        Ok(PairSolution {
            x1,
            x2,
            x3,
            params: free.clone(),
        })
    }
}

pub(crate) fn resolve_six(
    free: &FreeParams,
    shapes: &ParamShapes,
    name: impl Fn(u8) -> ParamId,
) -> Result<[QuatMatrix; 6]> {
    let mut out = Vec::with_capacity(6);
    for i in 1..=6u8 {
        let id = name(i);
        let &(r, c) = shapes
            .get(&id)
            .ok_or_else(|| Error::Shape(format!("missing shape for {id}")))?;
        out.push(free.resolve(id, r, c)?);
    }
    Ok(out.try_into().expect("six parameters"))
}

/// Engine for the `common_right` shape: `A1 X - Y B1 = C1`, `A2 Z - Y B2 = C2`.
///
/// Intermediates: `D1 = R_B1 B2`, `A = R_A2 A1`, `B = B2 L_D1`,
/// `C = R_A2 (R_A1 C1 B1^† B2 - C2) L_D1`.
pub(crate) struct CommonRightOps {
    a1: QuatMatrix,
    b1: QuatMatrix,
    c1: QuatMatrix,
    a2: QuatMatrix,
    b2: QuatMatrix,
    c2: QuatMatrix,
    pub d1: QuatMatrix,
    pub a: QuatMatrix,
    pub b: QuatMatrix,
    pub c: QuatMatrix,
    pub a1o: MpOps,
    pub b1o: MpOps,
    pub a2o: MpOps,
    pub d1o: MpOps,
    pub ao: MpOps,
    pub bo: MpOps,
}

impl CommonRightOps {
    pub fn new(
        a1: &QuatMatrix,
        b1: &QuatMatrix,
        c1: &QuatMatrix,
        a2: &QuatMatrix,
        b2: &QuatMatrix,
        c2: &QuatMatrix,
        tol: &Tolerances,
    ) -> Result<Self> {
        let floor = tol.derived_floor(Tolerances::scale_of([a1, b1, c1, a2, b2, c2]));
        let a1o = mp(a1, tol, floor)?;
        let b1o = mp(b1, tol, floor)?;
        let a2o = mp(a2, tol, floor)?;
        let d1 = &b1o.r * b2;
        let d1o = mp(&d1, tol, floor)?;
        let a = &a2o.r * a1;
        let b = b2 * &d1o.l;
        let g = &a1o.r * c1 * &b1o.p;
        let c = &a2o.r * (&g * b2 - c2) * &d1o.l;
        let ao = mp(&a, tol, floor)?;
        let bo = mp(&b, tol, floor)?;
        Ok(CommonRightOps {
            a1: a1.clone(),
            b1: b1.clone(),
            c1: c1.clone(),
            a2: a2.clone(),
            b2: b2.clone(),
            c2: c2.clone(),
            d1,
            a,
            b,
            c,
            a1o,
            b1o,
            a2o,
            d1o,
            ao,
            bo,
        })
    }

    /// `[ ||R_A1 C1 L_B1||, ||R_A C||, ||C L_B|| ]`
    pub fn projector_residuals(&self) -> [f64; 3] {
        [
            (&self.a1o.r * &self.c1 * &self.b1o.l).frobenius_norm(),
            (&self.ao.r * &self.c).frobenius_norm(),
            (&self.c * &self.bo.l).frobenius_norm(),
        ]
    }

    /// `(X, Y, Z)` for parameters `w = [W1..W6]`.
    pub fn solve(&self, w: &[QuatMatrix; 6]) -> (QuatMatrix, QuatMatrix, QuatMatrix) {
        let g = &self.a1o.r * &self.c1 * &self.b1o.p;
        let u1 = &self.ao.p * &self.c * &self.bo.p + &self.ao.l * &w[1] + &w[2] * &self.bo.r;
        let phi = &self.c2 - &g * &self.b2 + &self.a1 * &u1 * &self.b2;
        let v1 = -(&self.a2o.r * &phi * &self.d1o.p) + &self.a2 * &w[3] + &w[4] * &self.d1o.r;
        let x = &self.a1o.p * &self.c1 + &u1 * &self.b1 + &self.a1o.l * &w[0];
        let y = -g + &self.a1 * &u1 + v1 * &self.b1o.r;
        let z = &self.a2o.p * phi + &w[3] * &self.d1 + &self.a2o.l * &w[5];
        (x, y, z)
    }
}

/// Engine for the `chain` shape: `A1 X1 - X2 B1 = C1`, `A2 X2 - X3 B2 = C2`.
///
/// Intermediates: `A11 = R_(A2A1) A2`, `B11 = R_B1 L_B2`,
/// `C11 = R_(A2A1) (A2 R_A1 C1 B1^† + C2) L_B2`.
pub(crate) struct ChainOps {
    a1: QuatMatrix,
    b1: QuatMatrix,
    c1: QuatMatrix,
    a2: QuatMatrix,
    b2: QuatMatrix,
    c2: QuatMatrix,
    pub a21: QuatMatrix,
    pub a11: QuatMatrix,
    pub b11: QuatMatrix,
    pub c11: QuatMatrix,
    pub a1o: MpOps,
    pub b1o: MpOps,
    pub b2o: MpOps,
    pub a21o: MpOps,
    pub a11o: MpOps,
    pub b11o: MpOps,
}

impl ChainOps {
    pub fn new(
        a1: &QuatMatrix,
        b1: &QuatMatrix,
        c1: &QuatMatrix,
        a2: &QuatMatrix,
        b2: &QuatMatrix,
        c2: &QuatMatrix,
        tol: &Tolerances,
    ) -> Result<Self> {
        let floor = tol.derived_floor(Tolerances::scale_of([a1, b1, c1, a2, b2, c2]));
        let a1o = mp(a1, tol, floor)?;
        let b1o = mp(b1, tol, floor)?;
        let b2o = mp(b2, tol, floor)?;
        let a21 = a2 * a1;
        let a21o = mp(&a21, tol, floor)?;
        let a11 = &a21o.r * a2;
        let b11 = &b1o.r * &b2o.l;
        let g = &a1o.r * c1 * &b1o.p;
        let c11 = &a21o.r * (a2 * &g + c2) * &b2o.l;
        let a11o = mp(&a11, tol, floor)?;
        let b11o = mp(&b11, tol, floor)?;
        Ok(ChainOps {
            a1: a1.clone(),
            b1: b1.clone(),
            c1: c1.clone(),
            a2: a2.clone(),
            b2: b2.clone(),
            c2: c2.clone(),
            a21,
            a11,
            b11,
            c11,
            a1o,
            b1o,
            b2o,
            a21o,
            a11o,
            b11o,
        })
    }

    /// `[ ||R_A1 C1 L_B1||, ||R_A11 C11||, ||C11 L_B11|| ]`
    pub fn projector_residuals(&self) -> [f64; 3] {
        [
            (&self.a1o.r * &self.c1 * &self.b1o.l).frobenius_norm(),
            (&self.a11o.r * &self.c11).frobenius_norm(),
            (&self.c11 * &self.b11o.l).frobenius_norm(),
        ]
    }

    /// `(X1, X2, X3)` for parameters `w = [W1..W6]`.
    pub fn solve(&self, w: &[QuatMatrix; 6]) -> (QuatMatrix, QuatMatrix, QuatMatrix) {
        let v1 =
            &self.a11o.p * &self.c11 * &self.b11o.p + &self.a11o.l * &w[1] + &w[2] * &self.b11o.r;
        let g = &self.a1o.r * &self.c1 * &self.b1o.p;
        let phi = &self.c2 + &self.a2 * &g - &self.a2 * &v1 * &self.b1o.r;
        let u1 = &self.a21o.p * &phi + &w[3] * &self.b2 + &self.a21o.l * &w[5];
        let x1 = &self.a1o.p * &self.c1 + &u1 * &self.b1 + &self.a1o.l * &w[0];
        let x2 = -g + &self.a1 * &u1 + v1 * &self.b1o.r;
        let x3 = -(&self.a21o.r * phi * &self.b2o.p) + &self.a21 * &w[3] + &w[4] * &self.b2o.r;
        (x1, x2, x3)
    }
}

/// Engine for the `common_left` shape: `A1 X1 - X2 B1 = C1`, `A2 X1 - X3 B2 = C2`.
///
/// Intermediates: `A11 = R_(A2 L_A1) A2`, `B11 = B1 L_B2`,
/// `C11 = R_(A2 L_A1) (C2 - A2 A1^† C1) L_B2`.
pub(crate) struct CommonLeftOps {
    a1: QuatMatrix,
    b1: QuatMatrix,
    c1: QuatMatrix,
    a2: QuatMatrix,
    b2: QuatMatrix,
    c2: QuatMatrix,
    pub a2la1: QuatMatrix,
    pub a11: QuatMatrix,
    pub b11: QuatMatrix,
    pub c11: QuatMatrix,
    pub a1o: MpOps,
    pub b1o: MpOps,
    pub b2o: MpOps,
    pub a2la1o: MpOps,
    pub a11o: MpOps,
    pub b11o: MpOps,
}

impl CommonLeftOps {
    pub fn new(
        a1: &QuatMatrix,
        b1: &QuatMatrix,
        c1: &QuatMatrix,
        a2: &QuatMatrix,
        b2: &QuatMatrix,
        c2: &QuatMatrix,
        tol: &Tolerances,
    ) -> Result<Self> {
        let floor = tol.derived_floor(Tolerances::scale_of([a1, b1, c1, a2, b2, c2]));
        let a1o = mp(a1, tol, floor)?;
        let b1o = mp(b1, tol, floor)?;
        let b2o = mp(b2, tol, floor)?;
        let a2la1 = a2 * &a1o.l;
        let a2la1o = mp(&a2la1, tol, floor)?;
        let a11 = &a2la1o.r * a2;
        let b11 = b1 * &b2o.l;
        let c11 = &a2la1o.r * (c2 - a2 * &a1o.p * c1) * &b2o.l;
        let a11o = mp(&a11, tol, floor)?;
        let b11o = mp(&b11, tol, floor)?;
        Ok(CommonLeftOps {
            a1: a1.clone(),
            b1: b1.clone(),
            c1: c1.clone(),
            a2: a2.clone(),
            b2: b2.clone(),
            c2: c2.clone(),
            a2la1,
            a11,
            b11,
            c11,
            a1o,
            b1o,
            b2o,
            a2la1o,
            a11o,
            b11o,
        })
    }

    /// `[ ||R_A1 C1 L_B1||, ||R_A11 C11||, ||C11 L_B11|| ]`
    pub fn projector_residuals(&self) -> [f64; 3] {
        [
            (&self.a1o.r * &self.c1 * &self.b1o.l).frobenius_norm(),
            (&self.a11o.r * &self.c11).frobenius_norm(),
            (&self.c11 * &self.b11o.l).frobenius_norm(),
        ]
    }

    /// `(X1, X2, X3)` for parameters `w = [W1..W6]`.
    pub fn solve(&self, w: &[QuatMatrix; 6]) -> (QuatMatrix, QuatMatrix, QuatMatrix) {
        let u1 =
            &self.a11o.p * &self.c11 * &self.b11o.p + &self.a11o.l * &w[3] + &w[4] * &self.b11o.r;
        let phi = &self.c2 - &self.a2 * &self.a1o.p * &self.c1 - &self.a2 * &u1 * &self.b1;
        let u2 = &self.a2la1o.p * &phi + &w[0] * &self.b2 + &self.a2la1o.l * &w[1];
        let x1 = &self.a1o.p * &self.c1 + &u1 * &self.b1 + &self.a1o.l * u2;
        let x2 = -(&self.a1o.r * &self.c1 * &self.b1o.p)
            + &self.a1 * &u1
            + &w[5] * &self.b1o.r;
        let x3 = -(&self.a2la1o.r * phi * &self.b2o.p) + &self.a2la1 * &w[0] + &w[2] * &self.b2o.r;
        (x1, x2, x3)
    }
}
