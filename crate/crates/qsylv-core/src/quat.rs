//! The quaternion scalar: `a0 + a1 i + a2 j + a3 k` with
//! `i^2 = j^2 = k^2 = ijk = -1`.

use core::fmt;
use core::iter::Sum;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;

/// A real quaternion in double precision.
///
/// Multiplication is associative and distributes over addition but is not
/// commutative (`i * j == k`, `j * i == -k`).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(a0: f64, a1: f64, a2: f64, a3: f64) -> Self {
        Quaternion { a0, a1, a2, a3 }
    }

    pub const fn real(a0: f64) -> Self {
        Quaternion::new(a0, 0.0, 0.0, 0.0)
    }

    /// Conjugate: negates the `i`, `j`, `k` parts.
    pub fn conj(self) -> Self {
        Quaternion::new(self.a0, -self.a1, -self.a2, -self.a3)
    }

    /// Squared Euclidean norm; satisfies `q * q.conj() == q.norm_sqr() * 1`.
    pub fn norm_sqr(self) -> f64 {
        self.a0 * self.a0 + self.a1 * self.a1 + self.a2 * self.a2 + self.a3 * self.a3
    }

    pub fn norm(self) -> f64 {
        libm::sqrt(self.norm_sqr())
    }

    pub fn is_zero(self) -> bool {
        self == Quaternion::ZERO
    }

    /// Splits `q = c1 + c2 j` into the two complex coordinates
    /// `c1 = a0 + a1 i`, `c2 = a2 + a3 i`.
    pub fn complex_parts(self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.a0, self.a1),
            Complex64::new(self.a2, self.a3),
        )
    }

    /// Rebuilds a quaternion from its complex coordinates.
    pub fn from_complex_parts(c1: Complex64, c2: Complex64) -> Self {
        Quaternion::new(c1.re, c1.im, c2.re, c2.im)
    }

    pub fn scale(self, s: f64) -> Self {
        Quaternion::new(self.a0 * s, self.a1 * s, self.a2 * s, self.a3 * s)
    }
}

impl From<f64> for Quaternion {
    fn from(a0: f64) -> Self {
        Quaternion::real(a0)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: Self) -> Self {
        Quaternion::new(
            self.a0 + rhs.a0,
            self.a1 + rhs.a1,
            self.a2 + rhs.a2,
            self.a3 + rhs.a3,
        )
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: Self) -> Self {
        Quaternion::new(
            self.a0 - rhs.a0,
            self.a1 - rhs.a1,
            self.a2 - rhs.a2,
            self.a3 - rhs.a3,
        )
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Self {
        Quaternion::new(-self.a0, -self.a1, -self.a2, -self.a3)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    /// Hamilton product.
    fn mul(self, q: Self) -> Self {
        let p = self;
        Quaternion::new(
            p.a0 * q.a0 - p.a1 * q.a1 - p.a2 * q.a2 - p.a3 * q.a3,
            p.a0 * q.a1 + p.a1 * q.a0 + p.a2 * q.a3 - p.a3 * q.a2,
            p.a0 * q.a2 - p.a1 * q.a3 + p.a2 * q.a0 + p.a3 * q.a1,
            p.a0 * q.a3 + p.a1 * q.a2 - p.a2 * q.a1 + p.a3 * q.a0,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

impl Sum for Quaternion {
    fn sum<I: Iterator<Item = Quaternion>>(iter: I) -> Self {
        iter.fold(Quaternion::ZERO, Add::add)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i{:+}j{:+}k", self.a0, self.a1, self.a2, self.a3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamilton_table() {
        use Quaternion as Q;
        assert_eq!(Q::I * Q::I, -Q::ONE);
        assert_eq!(Q::J * Q::J, -Q::ONE);
        assert_eq!(Q::K * Q::K, -Q::ONE);
        assert_eq!(Q::I * Q::J, Q::K);
        assert_eq!(Q::J * Q::I, -Q::K);
        assert_eq!(Q::J * Q::K, Q::I);
        assert_eq!(Q::K * Q::J, -Q::I);
        assert_eq!(Q::K * Q::I, Q::J);
        assert_eq!(Q::I * Q::K, -Q::J);
        assert_eq!(Q::I * Q::J * Q::K, -Q::ONE);
    }

    #[test]
    fn one_plus_i_times_one_plus_j() {
        let p = Quaternion::ONE + Quaternion::I;
        let q = Quaternion::ONE + Quaternion::J;
        // (1+i)(1+j) = 1 + j + i + ij = 1 + i + j + k
        assert_eq!(p * q, Quaternion::new(1.0, 1.0, 1.0, 1.0));
    }

    #[test]
    fn conj_and_norm() {
        let q = Quaternion::new(1.0, -2.0, 3.0, 0.5);
        let n = q.norm_sqr();
        let qqbar = q * q.conj();
        assert!((qqbar.a0 - n).abs() < 1e-14);
        assert_eq!(qqbar.a1, 0.0);
        assert_eq!(qqbar.a2, 0.0);
        assert_eq!(qqbar.a3, 0.0);
    }

    #[test]
    fn conj_is_antiautomorphism() {
        let p = Quaternion::new(0.5, 1.0, -2.0, 3.0);
        let q = Quaternion::new(-1.0, 2.0, 0.25, -0.5);
        let lhs = (p * q).conj();
        let rhs = q.conj() * p.conj();
        assert!((lhs - rhs).norm() < 1e-14);
    }
}
