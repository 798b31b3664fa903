//! Real quaternions `w + x i + y j + z k` with `i² = j² = k² = ijk = -1`.
//!
//! Multiplication is the Hamilton product. It is associative but not
//! commutative, so every product in this crate is written in the order
//! it must be evaluated.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    /// Scalar part.
    pub w: f64,
    /// Coefficient of `i`.
    pub x: f64,
    /// Coefficient of `j`.
    pub y: f64,
    /// Coefficient of `k`.
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    pub fn from_array(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    /// The vector part `x i + y j + z k`.
    pub fn imag(self) -> Self {
        Self::new(0.0, self.x, self.y, self.z)
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    /// `w² + x² + y² + z²`, equal to `conj(q) q`.
    pub fn norm_sq(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn modulus(self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Two-sided inverse `conj(q) / |q|²`.
    pub fn inverse(self) -> Result<Self> {
        let n = self.norm_sq();
        if n == 0.0 {
            return Err(Error::ZeroDivisor);
        }
        Ok(self.conj() / n)
    }

    /// Largest absolute value among the imaginary coefficients.
    pub fn imag_abs_max(self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    /// Componentwise comparison with absolute tolerance.
    pub fn approx_eq(self, other: Self, tol: f64) -> bool {
        (self - other).to_array().iter().all(|c| c.abs() <= tol)
    }

    /// Largest absolute componentwise difference.
    pub fn max_abs_diff(self, other: Self) -> f64 {
        (self - other)
            .to_array()
            .iter()
            .fold(0.0, |acc: f64, c| acc.max(c.abs()))
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Self::real(w)
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self::new(self.w + r.w, self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Self::new(self.w - r.w, self.x - r.x, self.y - r.y, self.z - r.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        let (a0, a1, a2, a3) = (self.w, self.x, self.y, self.z);
        let (b0, b1, b2, b3) = (r.w, r.x, r.y, r.z);
        Self::new(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    fn div(self, s: f64) -> Self {
        Self::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, r: Self) {
        *self = *self + r;
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, r: Self) {
        *self = *self - r;
    }
}

impl MulAssign for Quaternion {
    /// Right multiplication: `self = self * r`.
    fn mul_assign(&mut self, r: Self) {
        *self = *self * r;
    }
}

impl Sum for Quaternion {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

/// Ordered product, left to right.
impl Product for Quaternion {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ONE, |a, b| a * b)
    }
}

fn fmt_real(f: &mut fmt::Formatter<'_>, v: f64) -> String {
    match f.precision() {
        Some(p) => format!("{v:.p$}"),
        None => format!("{v}"),
    }
}

fn renders_as_zero(s: &str) -> bool {
    s.trim_start_matches(['-', '+'])
        .chars()
        .all(|c| c == '0' || c == '.')
}

/// Renders `a+bi+cj+dk`, dropping zero terms and absorbing signs, so
/// `1-2i+0j+3k` prints as `1-2i+3k`. Honors `{:.N}` precision.
impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let parts = [(self.w, ""), (self.x, "i"), (self.y, "j"), (self.z, "k")];
        for (v, unit) in parts {
            let s = fmt_real(f, v);
            if renders_as_zero(&s) {
                continue;
            }
            if !out.is_empty() && !s.starts_with('-') {
                out.push('+');
            }
            out.push_str(&s);
            out.push_str(unit);
        }
        if out.is_empty() {
            out = fmt_real(f, 0.0);
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;
    const K: Quaternion = Quaternion::K;

    #[test]
    fn unit_products() {
        let m1 = Quaternion::real(-1.0);
        assert_eq!(I * I, m1);
        assert_eq!(J * J, m1);
        assert_eq!(K * K, m1);
        assert_eq!(I * J * K, m1);
        assert_eq!(I * J, K);
        assert_eq!(J * I, -K);
        assert_eq!(J * K, I);
        assert_eq!(K * J, -I);
        assert_eq!(K * I, J);
        assert_eq!(I * K, -J);
    }

    #[test]
    fn not_commutative() {
        let p = Quaternion::new(1.0, 2.0, 0.0, -1.0);
        let q = Quaternion::new(0.5, 0.0, 3.0, 1.0);
        assert!(p * q != q * p);
        assert!((p * q).max_abs_diff(q * p) > 1.0);
    }

    #[test]
    fn product_examples() {
        let q = Quaternion::new(1.0, 2.0, 3.0, 4.0);
        assert_eq!(q * Quaternion::ONE, q);
        // (1+i)(1+j) = 1 + j + i + ij = 1+i+j+k
        assert_eq!(
            Quaternion::new(1.0, 1.0, 0.0, 0.0) * Quaternion::new(1.0, 0.0, 1.0, 0.0),
            Quaternion::new(1.0, 1.0, 1.0, 1.0)
        );
    }

    #[test]
    fn conjugation() {
        let q = Quaternion::new(1.0, 1.0, -1.0, 1.0);
        assert_eq!(q.conj(), Quaternion::new(1.0, -1.0, 1.0, -1.0));
        assert_eq!(q.conj().conj(), q);
        assert_eq!((I * J).conj(), -K);
        assert_eq!((I * J).conj(), J.conj() * I.conj());
    }

    #[test]
    fn norms() {
        assert_eq!(Quaternion::new(0.0, 1.0, -1.0, 1.0).norm_sq(), 3.0);
        assert_eq!(Quaternion::ZERO.norm_sq(), 0.0);
        let p = Quaternion::new(1.0, 1.0, 0.0, 0.0);
        let q = Quaternion::new(2.0, 0.0, 0.0, 3.0);
        assert_eq!((p * q).norm_sq(), 26.0);
        let c = p.conj() * p;
        assert_eq!(c, Quaternion::real(2.0));
    }

    #[test]
    fn inverses() {
        assert_eq!(Quaternion::real(2.0).inverse().unwrap(), Quaternion::real(0.5));
        assert_eq!(I.inverse().unwrap(), -I);
        let q = Quaternion::new(1.0, 1.0, 1.0, 1.0);
        assert_eq!(q.inverse().unwrap(), Quaternion::new(0.25, -0.25, -0.25, -0.25));
        assert!((q * q.inverse().unwrap()).approx_eq(Quaternion::ONE, 1e-15));
        assert_eq!(Quaternion::ZERO.inverse(), Err(Error::ZeroDivisor));
    }

    #[test]
    fn display() {
        assert_eq!(Quaternion::new(1.0, -2.0, 0.0, 3.0).to_string(), "1-2i+3k");
        assert_eq!(Quaternion::ZERO.to_string(), "0");
        assert_eq!(Quaternion::new(0.0, 1.0, -1.0, 1.0).to_string(), "1i-1j+1k");
        let v = Quaternion::new(0.0, 0.46141, -0.46141, 0.46141);
        assert_eq!(format!("{v:.4}"), "0.4614i-0.4614j+0.4614k");
        assert_eq!(format!("{:.2}", Quaternion::new(3.0, 1e-9, 0.0, 0.0)), "3.00");
        assert_eq!(format!("{:.2}", Quaternion::new(0.0, -1e-9, 0.0, 0.0)), "0.00");
    }
}
