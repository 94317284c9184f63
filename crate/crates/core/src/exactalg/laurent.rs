use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{BiPoly, UniPoly};
use crate::error::{Error, Result};

/// Polynomial in `s, s⁻¹, u` over the rationals.
///
/// Keys are `(exponent of s, exponent of u)`; zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LaurentPoly2 {
    terms: BTreeMap<(i64, u32), BigRational>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(BigRational::one(), 0, 0)
    }

    pub fn term(c: BigRational, s_exp: i64, u_exp: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((s_exp, u_exp), c);
        }
        Self { terms }
    }

    /// `s^k`
    pub fn s_pow(k: i64) -> Self {
        Self::term(BigRational::one(), k, 0)
    }

    pub fn u() -> Self {
        Self::term(BigRational::one(), 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, u32, &BigRational)> {
        self.terms.iter().map(|(&(e, k), c)| (e, k, c))
    }

    fn insert_add(&mut self, key: (i64, u32), c: BigRational) {
        let entry = self.terms.entry(key).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Multiplies by `s^k`.
    pub fn shift_s(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(e, j), c)| ((e + k, j), c.clone())).collect(),
        }
    }

    /// The substitution `s ↦ s⁻¹`.
    pub fn invert_s(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(e, j), c)| ((-e, j), c.clone())).collect(),
        }
    }

    pub fn s_range(&self) -> Option<(i64, i64)> {
        let lo = self.terms.keys().map(|k| k.0).min()?;
        let hi = self.terms.keys().map(|k| k.0).max()?;
        Some((lo, hi))
    }

    /// Clears negative powers of `s`: returns `(B, k)` with
    /// `self = s^k · B(s, u)` and `B` a polynomial not divisible by `s`.
    /// `B` is a [`BiPoly`] with `s` in the `x` slot and `u` in the `y` slot.
    pub fn to_polynomial(&self) -> (BiPoly, i64) {
        let Some((lo, _)) = self.s_range() else {
            return (BiPoly::zero(), 0);
        };
        let mut grid: Vec<Vec<BigRational>> = Vec::new();
        for (&(e, j), c) in &self.terms {
            let (i, j) = ((e - lo) as usize, j as usize);
            if grid.len() <= j {
                grid.resize(j + 1, Vec::new());
            }
            if grid[j].len() <= i {
                grid[j].resize(i + 1, BigRational::zero());
            }
            grid[j][i] = c.clone();
        }
        (BiPoly::new(grid.into_iter().map(UniPoly::new).collect()), lo)
    }

    /// Inverse of [`LaurentPoly2::to_polynomial`].
    pub fn from_polynomial(p: &BiPoly, shift: i64) -> Self {
        let mut out = Self::zero();
        for (j, row) in p.rows().iter().enumerate() {
            for (i, c) in row.coeffs().iter().enumerate() {
                out.insert_add((i as i64 + shift, j as u32), c.clone());
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&(e, j), c) in self.terms.iter().rev() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            write!(f, "{}", c.abs())?;
            if e != 0 {
                write!(f, "*s^{e}")?;
            }
            if j != 0 {
                write!(f, "*u^{j}")?;
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(self, rhs: Self) -> LaurentPoly2 {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.insert_add(k, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn sub(self, rhs: Self) -> LaurentPoly2 {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.insert_add(k, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, rhs: Self) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero();
        for (&(e1, j1), c1) in &self.terms {
            for (&(e2, j2), c2) in &rhs.terms {
                out.insert_add((e1 + e2, j1 + j2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        LaurentPoly2 {
            terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect(),
        }
    }
}

/// `s^k + s^{-k}` as a polynomial in `x = s + s⁻¹`, for `k = 0..=n`.
fn power_sums(n: usize) -> Vec<UniPoly<BigRational>> {
    let x = UniPoly::var();
    let mut out = vec![UniPoly::constant(super::int(2)), x.clone()];
    while out.len() <= n {
        let k = out.len();
        let next = &(&x * &out[k - 1]) - &out[k - 2];
        out.push(next);
    }
    out.truncate(n + 1);
    out
}

/// Rewrites an `s ↔ s⁻¹` symmetric Laurent polynomial as a polynomial in
/// `x = s + s⁻¹` and `u` (returned with `x` in the `x` slot and `u` in the
/// `y` slot). A global factor `s^k` is cleared first.
pub fn laurent_normalize(m: &LaurentPoly2) -> Result<BiPoly> {
    let Some((lo, hi)) = m.s_range() else {
        return Ok(BiPoly::zero());
    };
    if (lo + hi) % 2 != 0 {
        return Err(Error::NotTraceExpressible { residue: m.to_string() });
    }
    let centered = m.shift_s(-(lo + hi) / 2);
    let residue = &centered - &centered.invert_s();
    if !residue.is_zero() {
        return Err(Error::NotTraceExpressible { residue: residue.to_string() });
    }
    let half = ((hi - lo) / 2) as usize;
    let sums = power_sums(half);
    let mut rows: Vec<UniPoly<BigRational>> = Vec::new();
    for (&(e, j), c) in &centered.terms {
        if e < 0 {
            continue;
        }
        let j = j as usize;
        if rows.len() <= j {
            rows.resize(j + 1, UniPoly::zero());
        }
        // s^e + s^{-e} accounts for both terms; the middle term stands alone.
        let contribution = if e == 0 {
            UniPoly::constant(c.clone())
        } else {
            sums[e as usize].scale(c)
        };
        rows[j] = &rows[j] + &contribution;
    }
    Ok(BiPoly::new(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    fn s(k: i64) -> LaurentPoly2 {
        LaurentPoly2::s_pow(k)
    }

    #[test]
    fn classical_identity() {
        let m = &s(2) + &s(-2);
        assert_eq!(laurent_normalize(&m).unwrap(), BiPoly::from_int_terms(&[(2, 0, 1), (0, 0, -2)]));
    }

    #[test]
    fn linear_with_u() {
        let m = &(&s(1) + &s(-1)) + &LaurentPoly2::u();
        assert_eq!(laurent_normalize(&m).unwrap(), BiPoly::from_int_terms(&[(1, 0, 1), (0, 1, 1)]));
    }

    #[test]
    fn antisymmetric_is_rejected() {
        let m = &s(1) - &s(-1);
        assert!(matches!(laurent_normalize(&m), Err(Error::NotTraceExpressible { .. })));
    }

    #[test]
    fn central_power_is_cleared() {
        // s⁴ + s²u − s² + 1 = s² · (s² + u − 1 + s⁻²) → x² + u − 3
        let m = &(&(&s(4) + &(&s(2) * &LaurentPoly2::u())) - &s(2)) + &LaurentPoly2::one();
        assert_eq!(
            laurent_normalize(&m).unwrap(),
            BiPoly::from_int_terms(&[(2, 0, 1), (0, 1, 1), (0, 0, -3)])
        );
    }

    #[test]
    fn odd_span_is_rejected() {
        let m = &s(1) + &LaurentPoly2::one();
        assert!(laurent_normalize(&m).is_err());
    }

    #[test]
    fn polynomial_round_trip() {
        let m = &(&s(-3) * &LaurentPoly2::u()) + &LaurentPoly2::term(int(5), 2, 4);
        let (p, k) = m.to_polynomial();
        assert_eq!(k, -3);
        assert_eq!(LaurentPoly2::from_polynomial(&p, k), m);
    }
}
