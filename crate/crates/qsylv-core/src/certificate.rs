//! Solvability certificates: every consistency test is reported through two
//! independent routes, a list of rank equalities over block matrices and a
//! list of projector-product residuals. The theorems make the two routes
//! equivalent; the certificate carries both so callers can cross-check.

use alloc::string::String;
use alloc::vec::Vec;

/// One rank equality, `r(lhs block matrix) = r(first) + r(second)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankCondition {
    /// Identifier of the condition as printed in the certificate
    /// (e.g. `3.8` or `6.2 k=1`).
    pub id: String,
    pub lhs: usize,
    pub rhs: usize,
}

impl RankCondition {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// One projector product that must vanish, reported as a Frobenius residual
/// against `cond_tol * scale`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorCondition {
    pub id: String,
    pub residual: f64,
    pub bound: f64,
}

impl ProjectorCondition {
    pub fn holds(&self) -> bool {
        self.residual <= self.bound
    }
}

/// The full two-route certificate for one system.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub rank_conditions: Vec<RankCondition>,
    pub projector_conditions: Vec<ProjectorCondition>,
    /// `1 + max Frobenius norm of the inputs`; the projector bounds are
    /// `cond_tol * scale`.
    pub scale: f64,
}

impl Certificate {
    pub fn rank_verdict(&self) -> bool {
        self.rank_conditions.iter().all(RankCondition::holds)
    }

    pub fn projector_verdict(&self) -> bool {
        self.projector_conditions.iter().all(ProjectorCondition::holds)
    }

    /// Overall verdict: conjunction over both routes.
    pub fn consistent(&self) -> bool {
        self.rank_verdict() && self.projector_verdict()
    }
}
