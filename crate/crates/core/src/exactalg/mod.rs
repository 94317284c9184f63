//! Exact polynomial arithmetic over the rationals and Gaussian rationals.
//!
//! Nothing in this module rounds. Floats only appear in the explicit
//! `to_complex` conversions used to hand squarefree polynomials to the
//! numerical root finder.

mod bipoly;
mod gaussian;
mod laurent;
mod unipoly;

use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

pub use bipoly::{discriminant_y, resultant_y, substitute_x, BiPoly, FloatBiPoly};
pub use gaussian::GaussianRational;
pub use laurent::{laurent_normalize, LaurentPoly2};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use unipoly::{gcd_univariate, squarefree_decomposition, SquarefreeFactor, UniPoly};

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

/// Exact coefficient field.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(q: &BigRational) -> Self;
    fn to_complex(&self) -> Complex64;
}

impl Field for BigRational {
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// `n / d` as a rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Integer-coefficient representative with positive leading coefficient.
pub fn primitive_integer(p: &UniPoly<BigRational>) -> UniPoly<BigRational> {
    BiPoly::from_x_poly(p.clone()).primitive_integer().y_coeff(0)
}
