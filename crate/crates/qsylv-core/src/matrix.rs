//! Dense quaternion matrices, row-major, with the block/stack helpers the
//! rank certificates are built from.
//!
//! Degenerate shapes (0 rows and/or 0 columns) are legal everywhere; they
//! show up when a whole equation of a coupled system vanishes.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::quat::Quaternion;

#[derive(Debug, Clone, PartialEq)]
pub struct QuatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

impl QuatMatrix {
    /// Builds a matrix from a row-major entry sequence.
    pub fn new(rows: usize, cols: usize, data: Vec<Quaternion>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "entry count {} does not match {rows}x{cols}",
                data.len()
            )));
        }
        Ok(QuatMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QuatMatrix {
            rows,
            cols,
            data: vec![Quaternion::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QuatMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Quaternion::ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        QuatMatrix { rows, cols, data }
    }

    /// 1x1 matrix.
    pub fn scalar(q: Quaternion) -> Self {
        QuatMatrix {
            rows: 1,
            cols: 1,
            data: vec![q],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// True when either dimension is zero.
    pub fn is_empty_shape(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|q| q.is_zero())
    }

    /// Conjugate transpose; an involution satisfying `(A B)* = B* A*`.
    pub fn conj_transpose(&self) -> QuatMatrix {
        QuatMatrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|q| q.norm_sqr()).sum())
    }

    pub fn map(&self, f: impl Fn(Quaternion) -> Quaternion) -> QuatMatrix {
        QuatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&q| f(q)).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> QuatMatrix {
        self.map(|q| q.scale(s))
    }

    /// Copy of rows `lo..hi`.
    pub fn row_block(&self, lo: usize, hi: usize) -> QuatMatrix {
        assert!(lo <= hi && hi <= self.rows, "row range out of bounds");
        QuatMatrix::from_fn(hi - lo, self.cols, |r, c| self[(lo + r, c)])
    }

    /// Copy of columns `lo..hi`.
    pub fn col_block(&self, lo: usize, hi: usize) -> QuatMatrix {
        assert!(lo <= hi && hi <= self.cols, "column range out of bounds");
        QuatMatrix::from_fn(self.rows, hi - lo, |r, c| self[(r, lo + c)])
    }

    /// Horizontal concatenation; all parts must share the row count.
    pub fn hstack(parts: &[&QuatMatrix]) -> Result<QuatMatrix> {
        let rows = parts.first().map_or(0, |m| m.rows);
        if parts.iter().any(|m| m.rows != rows) {
            return Err(Error::Shape("hstack: mismatched row counts".into()));
        }
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = QuatMatrix::zeros(rows, cols);
        let mut off = 0;
        for m in parts {
            for r in 0..rows {
                for c in 0..m.cols {
                    out[(r, off + c)] = m[(r, c)];
                }
            }
            off += m.cols;
        }
        Ok(out)
    }

    /// Vertical concatenation; all parts must share the column count.
    pub fn vstack(parts: &[&QuatMatrix]) -> Result<QuatMatrix> {
        let cols = parts.first().map_or(0, |m| m.cols);
        if parts.iter().any(|m| m.cols != cols) {
            return Err(Error::Shape("vstack: mismatched column counts".into()));
        }
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = QuatMatrix::zeros(rows, cols);
        let mut off = 0;
        for m in parts {
            for r in 0..m.rows {
                for c in 0..cols {
                    out[(off + r, c)] = m[(r, c)];
                }
            }
            off += m.rows;
        }
        Ok(out)
    }

    /// Assembles a block matrix. `Block::Zero` entries take their shape from
    /// the other blocks in the same block-row and block-column; the assembly
    /// fails if a zero block's shape cannot be inferred or blocks disagree.
    pub fn block(layout: &[&[Block<'_>]]) -> Result<QuatMatrix> {
        let nrows = layout.len();
        let ncols = layout.first().map_or(0, |r| r.len());
        if layout.iter().any(|r| r.len() != ncols) {
            return Err(Error::Shape("block: ragged layout".into()));
        }
        let mut row_heights = vec![None; nrows];
        let mut col_widths = vec![None; ncols];
        for (i, row) in layout.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                if let Block::M(m) = b {
                    match row_heights[i] {
                        None => row_heights[i] = Some(m.rows),
                        Some(h) if h != m.rows => {
                            return Err(Error::Shape(format!(
                                "block ({i},{j}): row height {} conflicts with {h}",
                                m.rows
                            )))
                        }
                        _ => {}
                    }
                    match col_widths[j] {
                        None => col_widths[j] = Some(m.cols),
                        Some(w) if w != m.cols => {
                            return Err(Error::Shape(format!(
                                "block ({i},{j}): column width {} conflicts with {w}",
                                m.cols
                            )))
                        }
                        _ => {}
                    }
                }
            }
        }
        let row_heights: Vec<usize> = row_heights
            .into_iter()
            .enumerate()
            .map(|(i, h)| h.ok_or_else(|| Error::Shape(format!("block row {i} is all zeros"))))
            .collect::<Result<_>>()?;
        let col_widths: Vec<usize> = col_widths
            .into_iter()
            .enumerate()
            .map(|(j, w)| w.ok_or_else(|| Error::Shape(format!("block column {j} is all zeros"))))
            .collect::<Result<_>>()?;

        let rows = row_heights.iter().sum();
        let cols = col_widths.iter().sum();
        let mut out = QuatMatrix::zeros(rows, cols);
        let mut roff = 0;
        for (i, row) in layout.iter().enumerate() {
            let mut coff = 0;
            for (j, b) in row.iter().enumerate() {
                if let Block::M(m) = b {
                    for r in 0..m.rows {
                        for c in 0..m.cols {
                            out[(roff + r, coff + c)] = m[(r, c)];
                        }
                    }
                }
                coff += col_widths[j];
            }
            roff += row_heights[i];
        }
        Ok(out)
    }
}

/// One cell of a block layout.
#[derive(Clone, Copy)]
pub enum Block<'a> {
    M(&'a QuatMatrix),
    Zero,
}

/// Builds a block matrix with paper-like syntax; `0` denotes a zero block
/// whose shape is inferred from its row and column.
///
/// ```
/// # use qsylv_core::{qblock, QuatMatrix};
/// let a = QuatMatrix::identity(2);
/// let b = QuatMatrix::zeros(2, 3);
/// let m = qblock![[a, b]; [0, b]].unwrap();
/// assert_eq!(m.shape(), (4, 5));
/// ```
#[macro_export]
macro_rules! qblock {
    ($([$($e:tt),+ $(,)?]);+ $(;)?) => {
        $crate::matrix::QuatMatrix::block(&[
            $(&[$($crate::qblock_entry!($e)),+][..]),+
        ])
    };
}

#[doc(hidden)]
#[macro_export]
macro_rules! qblock_entry {
    (0) => {
        $crate::matrix::Block::Zero
    };
    ($e:expr) => {
        $crate::matrix::Block::M(&$e)
    };
}

impl Index<(usize, usize)> for QuatMatrix {
    type Output = Quaternion;
    fn index(&self, (r, c): (usize, usize)) -> &Quaternion {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for QuatMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Quaternion {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Add for &QuatMatrix {
    type Output = QuatMatrix;
    fn add(self, rhs: &QuatMatrix) -> QuatMatrix {
        assert_eq!(self.shape(), rhs.shape(), "add: shape mismatch");
        QuatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &QuatMatrix {
    type Output = QuatMatrix;
    fn sub(self, rhs: &QuatMatrix) -> QuatMatrix {
        assert_eq!(self.shape(), rhs.shape(), "sub: shape mismatch");
        QuatMatrix {
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
}

impl Neg for &QuatMatrix {
    type Output = QuatMatrix;
    fn neg(self) -> QuatMatrix {
        self.map(Neg::neg)
    }
}

impl Mul for &QuatMatrix {
    type Output = QuatMatrix;
    fn mul(self, rhs: &QuatMatrix) -> QuatMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "mul: inner dimensions {}x{} vs {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = QuatMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for t in 0..self.cols {
                let a = self[(r, t)];
                if a.is_zero() {
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
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<QuatMatrix> for QuatMatrix {
            type Output = QuatMatrix;
            fn $method(self, rhs: QuatMatrix) -> QuatMatrix {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuatMatrix> for QuatMatrix {
            type Output = QuatMatrix;
            fn $method(self, rhs: &QuatMatrix) -> QuatMatrix {
                (&self).$method(rhs)
            }
        }
        impl $trait<QuatMatrix> for &QuatMatrix {
            type Output = QuatMatrix;
            fn $method(self, rhs: QuatMatrix) -> QuatMatrix {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for QuatMatrix {
    type Output = QuatMatrix;
    fn neg(self) -> QuatMatrix {
        -&self
    }
}

impl fmt::Display for QuatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, " ({})", self[(r, c)])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::Quaternion as Q;

    fn sample() -> QuatMatrix {
        QuatMatrix::from_fn(2, 3, |r, c| {
            Q::new(r as f64, c as f64, (r * c) as f64, 1.0)
        })
    }

    #[test]
    fn conj_transpose_involution() {
        let a = sample();
        assert_eq!(a.conj_transpose().conj_transpose(), a);
        assert_eq!(a.conj_transpose().shape(), (3, 2));
    }

    #[test]
    fn conj_transpose_of_product() {
        let a = sample();
        let b = QuatMatrix::from_fn(3, 2, |r, c| Q::new(1.0, r as f64, -(c as f64), 0.5));
        let lhs = (&a * &b).conj_transpose();
        let rhs = &b.conj_transpose() * &a.conj_transpose();
        assert!((lhs - rhs).frobenius_norm() < 1e-13);
    }

    #[test]
    fn single_entry_conj() {
        let m = QuatMatrix::scalar(Q::I);
        assert_eq!(m.conj_transpose()[(0, 0)], -Q::I);
        let id = QuatMatrix::identity(3);
        assert_eq!(id.conj_transpose(), id);
    }

    #[test]
    fn block_inference() {
        let a = QuatMatrix::identity(2);
        let b = QuatMatrix::zeros(2, 3);
        let m = qblock![[a, b]; [0, b]].unwrap();
        assert_eq!(m.shape(), (4, 5));
        assert_eq!(m[(0, 0)], Q::ONE);
        assert_eq!(m[(2, 0)], Q::ZERO);

        // a fully-zero block row cannot be sized
        assert!(qblock![[a]; [0]].is_err());
        let bad = QuatMatrix::block(&[&[Block::Zero]]);
        assert!(bad.is_err());
    }

    #[test]
    fn empty_shapes() {
        let e = QuatMatrix::zeros(0, 3);
        let f = QuatMatrix::zeros(3, 0);
        assert_eq!((&f * &e).shape(), (3, 3));
        assert!((&f * &e).is_zero());
        assert_eq!((&e * &QuatMatrix::identity(3)).shape(), (0, 3));
        assert_eq!(QuatMatrix::identity(0).shape(), (0, 0));
        assert_eq!(e.frobenius_norm(), 0.0);
    }

    #[test]
    fn mul_not_commutative() {
        let i = QuatMatrix::scalar(Q::I);
        let j = QuatMatrix::scalar(Q::J);
        assert_eq!((&i * &j)[(0, 0)], Q::K);
        assert_eq!((&j * &i)[(0, 0)], -Q::K);
    }
}
