//! Floating-point policy knobs shared across the crate.

/// Tolerances used by rank decisions, consistency tests and solution
/// verification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative singular-value cutoff for rank and pseudoinverse decisions.
    /// `None` selects `max(rows, cols) * f64::EPSILON` of the complex
    /// adjoint being decomposed.
    pub rank_rtol: Option<f64>,
    /// Residual tolerance for projector products and consistency tests,
    /// relative to `1 + max input Frobenius norm`.
    pub cond_tol: f64,
    /// Residual tolerance for accepting a solution, same scaling.
    pub verify_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rank_rtol: None,
            cond_tol: 1e-9,
            verify_tol: 1e-8,
        }
    }
}

impl Tolerances {
    /// Absolute singular-value cutoff for a decomposition of a
    /// `rows x cols` complex matrix with largest singular value `smax`.
    pub(crate) fn cutoff(&self, rows: usize, cols: usize, smax: f64) -> f64 {
        let rtol = self
            .rank_rtol
            .unwrap_or_else(|| rows.max(cols).max(1) as f64 * f64::EPSILON);
        rtol * smax
    }

    /// Cutoff floor for matrices derived through projector products.
    ///
    /// Operator blocks like `R_A C` are exactly zero in exact arithmetic
    /// whenever the consistency conditions bind, but carry rounding noise of
    /// order `eps * scale` in floating point; a relative cutoff alone would
    /// invert that noise. `scale` is the affine-invariant input scale.
    pub(crate) fn derived_floor(&self, scale: f64) -> f64 {
        1024.0 * f64::EPSILON * scale
    }

    /// Affine-invariant residual scale: `1 + max Frobenius norm`.
    pub fn scale_of<'a>(inputs: impl IntoIterator<Item = &'a crate::QuatMatrix>) -> f64 {
        1.0 + inputs
            .into_iter()
            .map(|m| m.frobenius_norm())
            .fold(0.0, f64::max)
    }
}
