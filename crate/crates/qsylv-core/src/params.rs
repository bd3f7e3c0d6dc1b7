//! Free parameters of the general solutions.
//!
//! Every solution display is an affine family in a set of named arbitrary
//! matrices (`W`, `T`, `Z` for the coupled systems, `U`/`V` in the
//! three-equation specializations). Parameters not supplied default to zero,
//! which selects the canonical particular solution.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::QuatMatrix;
use crate::quat::Quaternion;

/// Name of one free parameter, e.g. `W4`, `T2`, `Z7`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ParamId {
    W(u8),
    T(u8),
    Z(u8),
    U(u8),
    V(u8),
}

impl fmt::Display for ParamId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamId::W(i) => write!(f, "W{i}"),
            ParamId::T(i) => write!(f, "T{i}"),
            ParamId::Z(i) => write!(f, "Z{i}"),
            ParamId::U(i) => write!(f, "U{i}"),
            ParamId::V(i) => write!(f, "V{i}"),
        }
    }
}

/// Shapes of the free parameters of one system, keyed by name.
pub type ParamShapes = BTreeMap<ParamId, (usize, usize)>;

/// A (possibly partial) assignment of free parameters.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FreeParams {
    map: BTreeMap<ParamId, QuatMatrix>,
}

impl FreeParams {
    /// The all-zero assignment.
    pub fn zero() -> Self {
        FreeParams::default()
    }

    pub fn insert(&mut self, id: ParamId, value: QuatMatrix) {
        self.map.insert(id, value);
    }

    pub fn with(mut self, id: ParamId, value: QuatMatrix) -> Self {
        self.insert(id, value);
        self
    }

    pub fn get(&self, id: ParamId) -> Option<&QuatMatrix> {
        self.map.get(&id)
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (ParamId, &QuatMatrix)> {
        self.map.iter().map(|(&k, v)| (k, v))
    }

    /// The assignment for `id` at the required shape: the stored matrix if
    /// present (shape-checked), otherwise a zero matrix.
    pub fn resolve(&self, id: ParamId, rows: usize, cols: usize) -> Result<QuatMatrix> {
        match self.map.get(&id) {
            None => Ok(QuatMatrix::zeros(rows, cols)),
            Some(m) if m.shape() == (rows, cols) => Ok(m.clone()),
            Some(m) => Err(Error::Shape(format!(
                "parameter {id}: expected {rows}x{cols}, got {}x{}",
                m.rows(),
                m.cols()
            ))),
        }
    }

    /// Rejects assignments naming parameters outside `shapes` or with the
    /// wrong shape.
    pub fn validate(&self, shapes: &ParamShapes) -> Result<()> {
        for (id, m) in self.iter() {
            match shapes.get(&id) {
                None => {
                    return Err(Error::Shape(format!(
                        "parameter {id} is not free for this system"
                    )))
                }
                Some(&(r, c)) if m.shape() != (r, c) => {
                    return Err(Error::Shape(format!(
                        "parameter {id}: expected {r}x{c}, got {}x{}",
                        m.rows(),
                        m.cols()
                    )))
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Draws every parameter in `shapes` with small-integer quaternion
    /// entries from `rng`.
    pub fn random(shapes: &ParamShapes, rng: &mut impl Rng) -> Self {
        let mut params = FreeParams::zero();
        for (&id, &(rows, cols)) in shapes {
            let m = QuatMatrix::from_fn(rows, cols, |_, _| {
                Quaternion::new(
                    rng.gen_range(-2..=2) as f64,
                    rng.gen_range(-2..=2) as f64,
                    rng.gen_range(-2..=2) as f64,
                    rng.gen_range(-2..=2) as f64,
                )
            });
            params.insert(id, m);
        }
        params
    }

    pub fn names(&self) -> Vec<ParamId> {
        self.map.keys().copied().collect()
    }
}
