use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// A complex 2×2 matrix, row major.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Self([[a, b], [c, d]])
    }

    pub fn identity() -> Self {
        Self::scalar(Complex64::new(1.0, 0.0))
    }

    pub fn scalar(c: Complex64) -> Self {
        let z = Complex64::new(0.0, 0.0);
        Self::new(c, z, z, c)
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn adjugate(&self) -> Self {
        let [[a, b], [c, d]] = self.0;
        Self::new(d, -b, -c, a)
    }

    pub fn inverse(&self) -> Self {
        self.adjugate().scale(self.det().inv())
    }

    pub fn scale(&self, k: Complex64) -> Self {
        let [[a, b], [c, d]] = self.0;
        Self::new(a * k, b * k, c * k, d * k)
    }

    /// Largest entry modulus.
    pub fn sup_norm(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn distance(&self, other: &Self) -> f64 {
        (*self - *other).sup_norm()
    }

    /// `g · self · g⁻¹`
    pub fn conjugate_by(&self, g: &Self) -> Self {
        *g * *self * g.inverse()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.is_finite())
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let (l, r) = (self.0, rhs.0);
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = l[i][0] * r[0][j] + l[i][1] * r[1][j];
            }
        }
        Mat2(out)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let (l, r) = (self.0, rhs.0);
        Mat2::new(l[0][0] + r[0][0], l[0][1] + r[0][1], l[1][0] + r[1][0], l[1][1] + r[1][1])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        self + (-rhs)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn inverse_and_det() {
        let m = Mat2::new(c(2.0, 1.0), c(1.0, 0.0), c(0.5, -1.0), c(3.0, 0.0));
        assert!((m * m.inverse()).distance(&Mat2::identity()) < 1e-14);
        let n = Mat2::new(c(0.0, 1.0), c(2.0, 0.0), c(1.0, 1.0), c(-1.0, 0.0));
        assert!(((m * n).det() - m.det() * n.det()).norm() < 1e-13);
        assert!((m.conjugate_by(&n).trace() - m.trace()).norm() < 1e-13);
    }
}
