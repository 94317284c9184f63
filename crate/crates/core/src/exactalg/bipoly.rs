use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write};
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Float, One, Signed, Zero};

use super::{gcd_univariate, rational_to_f64, Field, UniPoly};
use crate::error::{Error, Result};

type QPoly = UniPoly<BigRational>;

/// Bivariate polynomial over the rationals, stored as a polynomial in `y`
/// whose coefficients are polynomials in `x`.
///
/// `rows[j]` is the coefficient of `y^j`. Trailing zero rows are trimmed and
/// each row is itself trimmed, so the representation is canonical.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BiPoly {
    rows: Vec<QPoly>,
}

impl BiPoly {
    pub fn new(mut rows: Vec<QPoly>) -> Self {
        while rows.last().is_some_and(|r| r.is_zero()) {
            rows.pop();
        }
        Self { rows }
    }

    pub fn zero() -> Self {
        Self { rows: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_x_poly(QPoly::one())
    }

    /// A polynomial that does not depend on `y`.
    pub fn from_x_poly(p: QPoly) -> Self {
        Self::new(vec![p])
    }

    pub fn x() -> Self {
        Self::from_x_poly(QPoly::var())
    }

    pub fn y() -> Self {
        Self::new(vec![QPoly::zero(), QPoly::one()])
    }

    /// Builds `Σ c · x^i · y^j` from `(i, j, c)` triples.
    pub fn from_int_terms(terms: &[(usize, usize, i64)]) -> Self {
        let mut grid: Vec<Vec<BigRational>> = Vec::new();
        for &(i, j, c) in terms {
            if grid.len() <= j {
                grid.resize(j + 1, Vec::new());
            }
            if grid[j].len() <= i {
                grid[j].resize(i + 1, BigRational::zero());
            }
            grid[j][i] += super::int(c);
        }
        Self::new(grid.into_iter().map(QPoly::new).collect())
    }

    pub fn rows(&self) -> &[QPoly] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn deg_y(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.rows.iter().filter_map(UniPoly::degree).max()
    }

    /// Coefficient of `x^i y^j`.
    pub fn coeff(&self, i: usize, j: usize) -> BigRational {
        self.rows.get(j).map(|r| r.coeff(i)).unwrap_or_else(BigRational::zero)
    }

    /// Coefficient of `y^j` as a polynomial in `x`.
    pub fn y_coeff(&self, j: usize) -> QPoly {
        self.rows.get(j).cloned().unwrap_or_else(QPoly::zero)
    }

    /// Leading coefficient in `y`, a polynomial in `x`.
    pub fn lc_y(&self) -> QPoly {
        self.rows.last().cloned().unwrap_or_else(QPoly::zero)
    }

    pub fn derivative_y(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, r)| r.scale(&super::int(j as i64)))
            .collect();
        Self::new(rows)
    }

    pub fn scale_x(&self, c: &QPoly) -> Self {
        Self::new(self.rows.iter().map(|r| r * c).collect())
    }

    fn shift_y(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut rows = vec![QPoly::zero(); k];
        rows.extend(self.rows.iter().cloned());
        Self::new(rows)
    }

    pub fn eval<F: Field>(&self, x: &F, y: &F) -> F {
        substitute_x(self, x).eval(y)
    }

    /// `P(x, q(x, y))`.
    pub fn compose_y(&self, q: &BiPoly) -> Self {
        self.rows
            .iter()
            .rev()
            .fold(Self::zero(), |acc, row| &(&acc * q) + &Self::from_x_poly(row.clone()))
    }

    /// Pseudo-remainder with respect to `y`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.deg_y().expect("pseudo-division by zero");
        let lcd = d.lc_y();
        let mut r = self.clone();
        while let Some(dr) = r.deg_y() {
            if dr < dd {
                break;
            }
            let lcr = r.lc_y();
            r = &r.scale_x(&lcd) - &d.scale_x(&lcr).shift_y(dr - dd);
        }
        r
    }

    /// Monic gcd of the `x`-coefficients. Zero for the zero polynomial.
    pub fn content_x(&self) -> QPoly {
        let mut g = QPoly::zero();
        for r in self.rows.iter().filter(|r| !r.is_zero()) {
            g = gcd_univariate(&g, r).expect("row is nonzero");
            if g.is_constant() {
                break;
            }
        }
        g
    }

    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content_x();
        Self::new(self.rows.iter().map(|r| r.exact_div(&c).expect("content divides")).collect())
    }

    /// Greatest common divisor in `Q[x, y]` by the primitive remainder
    /// sequence. The result is normalized with [`BiPoly::primitive_integer`].
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZero);
        }
        if self.is_zero() {
            return Ok(other.primitive_integer());
        }
        if other.is_zero() {
            return Ok(self.primitive_integer());
        }
        let content = gcd_univariate(&self.content_x(), &other.content_x())?;
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.deg_y() < b.deg_y() {
            core::mem::swap(&mut a, &mut b);
        }
        while b.deg_y() != Some(0) {
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                break;
            }
            a = b;
            b = r.primitive_part();
        }
        if b.deg_y() == Some(0) {
            b = Self::one();
        }
        Ok(b.scale_x(&content).primitive_integer())
    }

    /// Quotient when `d` divides `self` exactly in `Q[x, y]`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.deg_y()?;
        let lcd = d.lc_y();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(dr) = rem.deg_y() {
            if dr < dd {
                return None;
            }
            let lead = rem.lc_y().exact_div(&lcd)?;
            let term = Self::from_x_poly(lead).shift_y(dr - dd);
            rem = &rem - &(&term * d);
            quot = &quot + &term;
        }
        Some(quot)
    }

    /// Clears denominators and integer content, then makes the leading
    /// coefficient positive. "Leading" means the highest power of `x` in the
    /// highest power of `y`.
    pub fn primitive_integer(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut lcm = BigInt::one();
        for c in self.rows.iter().flat_map(|r| r.coeffs().iter()) {
            lcm = lcm.lcm(c.denom());
        }
        let scaled: Vec<QPoly> = self
            .rows
            .iter()
            .map(|r| r.scale(&BigRational::from_integer(lcm.clone())))
            .collect();
        let mut g = BigInt::zero();
        for c in scaled.iter().flat_map(|r| r.coeffs().iter()) {
            g = g.gcd(c.numer());
        }
        if self.lc_y().leading().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        let factor = BigRational::new(BigInt::one(), g);
        Self::new(scaled.iter().map(|r| r.scale(&factor)).collect())
    }

    pub fn to_float(&self) -> FloatBiPoly {
        FloatBiPoly {
            rows: self
                .rows
                .iter()
                .map(|r| r.coeffs().iter().map(rational_to_f64).collect())
                .collect(),
        }
    }

    /// Renders highest `y` power first, `x` powers descending inside.
    pub fn display(&self, var_x: &str, var_y: &str) -> String {
        let mut out = String::new();
        for (j, row) in self.rows.iter().enumerate().rev() {
            for (i, c) in row.coeffs().iter().enumerate().rev() {
                if c.is_zero() {
                    continue;
                }
                let negative = c.is_negative();
                let mag = c.abs();
                if out.is_empty() {
                    if negative {
                        out.push('-');
                    }
                } else {
                    out.push_str(if negative { " - " } else { " + " });
                }
                let mut parts: Vec<String> = Vec::new();
                if !mag.is_one() || (i == 0 && j == 0) {
                    parts.push(alloc::format!("{mag}"));
                }
                match i {
                    0 => {}
                    1 => parts.push(var_x.into()),
                    _ => parts.push(alloc::format!("{var_x}^{i}")),
                }
                match j {
                    0 => {}
                    1 => parts.push(var_y.into()),
                    _ => parts.push(alloc::format!("{var_y}^{j}")),
                }
                let _ = write!(out, "{}", parts.join("*"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("x", "y"))
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: Self) -> BiPoly {
        let n = self.rows.len().max(rhs.rows.len());
        BiPoly::new((0..n).map(|j| &self.y_coeff(j) + &rhs.y_coeff(j)).collect())
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: Self) -> BiPoly {
        let n = self.rows.len().max(rhs.rows.len());
        BiPoly::new((0..n).map(|j| &self.y_coeff(j) - &rhs.y_coeff(j)).collect())
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: Self) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut rows = vec![QPoly::zero(); self.rows.len() + rhs.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in rhs.rows.iter().enumerate() {
                rows[i + j] = &rows[i + j] + &(a * b);
            }
        }
        BiPoly::new(rows)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::new(self.rows.iter().map(|r| -r).collect())
    }
}

/// Float image of a [`BiPoly`] for evaluation along numerical paths.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatBiPoly {
    rows: Vec<Vec<f64>>,
}

impl FloatBiPoly {
    /// Coefficients in `y` (lowest first) of `P(τ, y)`.
    pub fn slice(&self, tau: Complex64) -> Vec<Complex64> {
        let mut out: Vec<Complex64> = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .rev()
                    .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * tau + c)
            })
            .collect();
        while out.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            out.pop();
        }
        out
    }

    pub fn eval(&self, tau: Complex64, y: Complex64) -> Complex64 {
        horner(&self.slice(tau), y)
    }

    /// Sum of absolute values of the terms at `(τ, y)`, used to scale
    /// residuals.
    pub fn magnitude(&self, tau: Complex64, y: Complex64) -> f64 {
        let (at, ay) = (tau.norm(), y.norm());
        self.rows
            .iter()
            .enumerate()
            .map(|(j, row)| {
                let r: f64 = row
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c.abs() * Float::powi(at, i as i32))
                    .sum();
                r * Float::powi(ay, j as i32)
            })
            .sum()
    }
}

pub(crate) fn horner(coeffs: &[Complex64], y: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * y + c)
}

/// Exact evaluation of every `x`-coefficient at `tau`.
pub fn substitute_x<F: Field>(p: &BiPoly, tau: &F) -> UniPoly<F> {
    UniPoly::new(
        p.rows
            .iter()
            .map(|row| row.map(F::from_rational).eval(tau))
            .collect(),
    )
}

/// Determinant over `Q[x]` by Bareiss fraction-free elimination.
fn bareiss_det(mut m: Vec<Vec<QPoly>>) -> QPoly {
    let n = m.len();
    if n == 0 {
        return QPoly::one();
    }
    let mut prev = QPoly::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(pivot) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return QPoly::zero();
            };
            m.swap(k, pivot);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// Sylvester resultant eliminating `y`; a polynomial in `x`.
pub fn resultant_y(a: &BiPoly, b: &BiPoly) -> Result<QPoly> {
    let (Some(m), Some(n)) = (a.deg_y(), b.deg_y()) else {
        return Err(Error::ConstantInY);
    };
    if m == 0 || n == 0 {
        return Err(Error::ConstantInY);
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (poly, deg, copies) in [(a, m, n), (b, n, m)] {
        for shift in 0..copies {
            let mut row = vec![QPoly::zero(); size];
            for k in 0..=deg {
                row[shift + k] = poly.y_coeff(deg - k);
            }
            rows.push(row);
        }
    }
    Ok(bareiss_det(rows))
}

/// `(-1)^{n(n-1)/2} · Res_y(p, ∂p/∂y) / lc_y(p)`; the constant 1 when `p`
/// is linear in `y`.
pub fn discriminant_y(p: &BiPoly) -> Result<QPoly> {
    let n = match p.deg_y() {
        None | Some(0) => return Err(Error::ConstantInY),
        Some(n) => n,
    };
    if n == 1 {
        return Ok(QPoly::one());
    }
    let res = resultant_y(p, &p.derivative_y())?;
    let disc = res
        .exact_div(&p.lc_y())
        .ok_or(Error::Internal("leading coefficient does not divide the resultant"))?;
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -&disc } else { disc })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, GaussianRational};
    use proptest::prelude::*;

    fn q(coeffs: &[i64]) -> QPoly {
        QPoly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// Figure-eight factor in the `z = x² − y` coordinate, z² − (x²−1)z + (x²−1).
    fn fig8_z() -> BiPoly {
        BiPoly::new(vec![q(&[-1, 0, 1]), q(&[1, 0, -1]), q(&[1])])
    }

    #[test]
    fn resultant_linear_case() {
        let a = BiPoly::from_int_terms(&[(0, 1, 1), (1, 0, -1)]);
        let b = BiPoly::from_int_terms(&[(0, 1, 1), (1, 0, 1)]);
        let r = resultant_y(&a, &b).unwrap();
        assert!(r == q(&[0, 2]) || r == q(&[0, -2]), "{r}");
    }

    #[test]
    fn resultant_of_monic_quadratics() {
        // Res_t(t² − 3t + 1, t² − (w − 2)t + 1) = (w − 5)², with w as "x".
        let a = BiPoly::from_int_terms(&[(0, 2, 1), (0, 1, -3), (0, 0, 1)]);
        let b = BiPoly::from_int_terms(&[(0, 2, 1), (1, 1, -1), (0, 1, 2), (0, 0, 1)]);
        let r = resultant_y(&a, &b).unwrap();
        assert_eq!(r, q(&[25, -10, 1]));
    }

    #[test]
    fn resultant_with_abelian_locus_figure_eight() {
        // The abelian locus is z = 2 here: 4 − 2(x²−1) + x²−1 = 5 − x².
        let abelian = BiPoly::from_int_terms(&[(0, 1, 1), (0, 0, -2)]);
        let r = resultant_y(&fig8_z(), &abelian).unwrap();
        let direct = substitute_x(&fig8_z().compose_y(&BiPoly::from_int_terms(&[(0, 0, 2)])), &int(0));
        assert!(direct.is_constant());
        assert_eq!(r.monic(), q(&[-5, 0, 1]));
    }

    #[test]
    fn resultant_rejects_constant_in_y() {
        assert_eq!(resultant_y(&BiPoly::x(), &BiPoly::y()), Err(Error::ConstantInY));
    }

    #[test]
    fn discriminant_figure_eight() {
        let d = discriminant_y(&fig8_z()).unwrap();
        let expected = &q(&[-1, 0, 1]) * &q(&[-5, 0, 1]);
        assert_eq!(d, expected);
    }

    #[test]
    fn discriminant_small_cases() {
        let p = BiPoly::from_int_terms(&[(0, 2, 1), (0, 1, 1), (0, 0, -1)]);
        assert_eq!(discriminant_y(&p).unwrap(), q(&[5]));
        let p = BiPoly::from_int_terms(&[(0, 2, 1)]);
        assert_eq!(discriminant_y(&p).unwrap(), QPoly::zero());
        assert_eq!(discriminant_y(&BiPoly::x()), Err(Error::ConstantInY));
        assert_eq!(discriminant_y(&BiPoly::y()).unwrap(), QPoly::one());
    }

    #[test]
    fn substitute_figure_eight() {
        assert_eq!(substitute_x(&fig8_z(), &int(0)), q(&[-1, 1, 1]));
        assert_eq!(substitute_x(&fig8_z(), &int(1)), q(&[0, 0, 1]));
        let c = BiPoly::from_int_terms(&[(0, 2, 3), (0, 0, -1)]);
        assert_eq!(substitute_x(&c, &int(17)), q(&[-1, 0, 3]));
        let g = substitute_x(&fig8_z(), &GaussianRational::i());
        // x² − 1 = −2 at x = i
        assert_eq!(g.coeff(0), GaussianRational::real(int(-2)));
    }

    #[test]
    fn bivariate_gcd_recovers_common_factor() {
        let f = BiPoly::from_int_terms(&[(0, 1, 1), (2, 0, 1), (0, 0, -3)]);
        let a = &f * &BiPoly::from_int_terms(&[(1, 1, 2), (0, 0, 1)]);
        let b = &f * &BiPoly::from_int_terms(&[(0, 2, 1), (3, 0, 1)]);
        assert_eq!(a.gcd(&b).unwrap(), f);
        let coprime = BiPoly::from_int_terms(&[(0, 1, 1), (1, 0, 1)]);
        assert_eq!(coprime.gcd(&f).unwrap(), BiPoly::one());
    }

    #[test]
    fn div_exact_and_primitive_integer() {
        let f = BiPoly::from_int_terms(&[(0, 1, 1), (2, 0, -1), (0, 0, 2)]);
        let g = BiPoly::from_int_terms(&[(1, 2, 3), (0, 0, 1)]);
        let prod = &f * &g;
        assert_eq!(prod.div_exact(&f), Some(g.clone()));
        assert_eq!((&prod + &BiPoly::one()).div_exact(&f), None);
        let neg_half = BiPoly::new(prod.rows().iter().map(|r| r.scale(&crate::exactalg::rat(-1, 2))).collect());
        assert_eq!(neg_half.primitive_integer(), prod.primitive_integer());
    }

    fn small_bipoly() -> impl Strategy<Value = BiPoly> {
        prop::collection::vec(prop::collection::vec(-3i64..=3, 0..3), 2..4)
            .prop_map(|rows| BiPoly::new(rows.iter().map(|r| q(r)).collect()))
            .prop_filter("positive degree in y", |p| p.deg_y().is_some_and(|d| d > 0))
    }

    fn resultant_vanishing_agrees(a: &BiPoly, b: &BiPoly, x0: i64) -> bool {
        let r = resultant_y(a, b).unwrap();
        let x0 = int(x0);
        let vanishes = r.eval(&x0).is_zero();
        let sa = substitute_x(a, &x0);
        let sb = substitute_x(b, &x0);
        let both_leading_vanish = a.lc_y().eval(&x0).is_zero() && b.lc_y().eval(&x0).is_zero();
        let shared = if sa.is_zero() || sb.is_zero() {
            true
        } else {
            !gcd_univariate(&sa, &sb).unwrap().is_constant()
        };
        vanishes == (shared || both_leading_vanish)
    }

    proptest! {
        #[test]
        fn resultant_vanishing_criterion(a in small_bipoly(), b in small_bipoly(), x0 in -3i64..=3) {
            prop_assert!(resultant_vanishing_agrees(&a, &b, x0));
        }

        #[test]
        fn resultant_vanishes_on_planted_common_root(
            a in small_bipoly(), b in small_bipoly(), x0 in -3i64..=3, c in -3i64..=3,
        ) {
            // Shift both so they vanish at (x0, c).
            let at = |p: &BiPoly| p.eval(&int(x0), &int(c));
            let a = &a - &BiPoly::from_x_poly(QPoly::constant(at(&a)));
            let b = &b - &BiPoly::from_x_poly(QPoly::constant(at(&b)));
            prop_assert!(resultant_y(&a, &b).unwrap().eval(&int(x0)).is_zero());
            prop_assert!(resultant_vanishing_agrees(&a, &b, x0));
        }
    }
}
