use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{Generator, Letter, TwoBridgePresentation};
use crate::error::{Error, Result};
use crate::exactalg::{int, primitive_integer, resultant_y, BiPoly, UniPoly};
use crate::tracker::all_roots;

/// Alexander polynomial in `t`, normalized to nonnegative exponents, a
/// nonzero constant term and a positive leading coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlexanderPolynomial {
    poly: UniPoly<BigRational>,
}

impl AlexanderPolynomial {
    /// Normalizes an arbitrary Laurent representative.
    pub fn from_laurent(terms: &BTreeMap<i64, i64>) -> Option<Self> {
        let lo = *terms.iter().find(|(_, c)| **c != 0)?.0;
        let hi = *terms.iter().rev().find(|(_, c)| **c != 0)?.0;
        let mut coeffs: Vec<BigRational> = (lo..=hi)
            .map(|e| int(terms.get(&e).copied().unwrap_or(0)))
            .collect();
        if coeffs.last().is_some_and(|c| c.is_negative()) {
            coeffs.iter_mut().for_each(|c| *c = -c.clone());
        }
        Some(Self { poly: UniPoly::new(coeffs) })
    }

    pub fn from_poly(poly: UniPoly<BigRational>) -> Option<Self> {
        let terms = poly
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| (k as i64, num_traits::ToPrimitive::to_i64(c.numer()).unwrap_or(0)))
            .collect();
        Self::from_laurent(&terms)
    }

    pub fn poly(&self) -> &UniPoly<BigRational> {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }
}

impl fmt::Display for AlexanderPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.display("t"))
    }
}

/// Image of the free derivative `∂word/∂generator` under `a, b ↦ t`, as a
/// Laurent polynomial `exponent → coefficient`.
fn abelian_fox_derivative(word: &[Letter], generator: Generator) -> BTreeMap<i64, i64> {
    let mut out = BTreeMap::new();
    let mut prefix = 0i64;
    for letter in word {
        if letter.generator == generator {
            let (e, sign) = if letter.exponent > 0 { (prefix, 1) } else { (prefix - 1, -1) };
            *out.entry(e).or_insert(0) += sign;
        }
        prefix += letter.exponent as i64;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Alexander polynomial from the Fox Jacobian of the one-relator
/// presentation. Both `1 × 1` minors are computed and must agree up to
/// `±t^k`.
pub fn fox_alexander(pres: &TwoBridgePresentation) -> Result<AlexanderPolynomial> {
    let relator = pres.relator();
    let by_a = abelian_fox_derivative(&relator, Generator::A);
    let by_b = abelian_fox_derivative(&relator, Generator::B);
    let delta = AlexanderPolynomial::from_laurent(&by_b).ok_or(Error::FoxMismatch)?;
    let check = AlexanderPolynomial::from_laurent(&by_a).ok_or(Error::FoxMismatch)?;
    if delta != check {
        return Err(Error::FoxMismatch);
    }
    Ok(delta)
}

/// Traces `τ` with `τ = e^{α/2} + e^{−α/2}` for a root `e^α` of `Δ`,
/// cut out exactly by `Res_t(Δ(t), t² − (τ² − 2)t + 1)`.
#[derive(Clone, PartialEq, Debug)]
pub struct GoodTraceWitness {
    pub defining_poly: UniPoly<BigRational>,
    pub approximations: Vec<Complex64>,
}

pub fn alexander_bad_traces(delta: &AlexanderPolynomial) -> Result<GoodTraceWitness> {
    if delta.poly.is_constant() {
        return Err(Error::OutOfRange("Alexander polynomial must be nonconstant"));
    }
    let in_t = BiPoly::new(delta.poly.coeffs().iter().cloned().map(UniPoly::constant).collect());
    // t² − (τ² − 2)t + 1 with τ in the x slot
    let quadratic = BiPoly::new(alloc::vec![
        UniPoly::constant(int(1)),
        UniPoly::new(alloc::vec![int(2), BigRational::zero(), int(-1)]),
        UniPoly::constant(int(1)),
    ]);
    let res = resultant_y(&in_t, &quadratic)?;
    let defining_poly = primitive_integer(&res);
    let approximations = all_roots(&defining_poly.squarefree_part().to_complex())?;
    Ok(GoodTraceWitness { defining_poly, approximations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knotspec::two_bridge_word;

    /// Hand-computed Fox derivative of the trefoil relator a·b·a·b⁻¹·a⁻¹·b⁻¹:
    /// ∂/∂a = 1 + ab − abab⁻¹a⁻¹ ↦ 1 + t² − t.
    #[test]
    fn trefoil_fixture() {
        let pres = two_bridge_word(3, 1).unwrap();
        let by_a = abelian_fox_derivative(&pres.relator(), Generator::A);
        let expected: BTreeMap<i64, i64> = [(0, 1), (1, -1), (2, 1)].into_iter().collect();
        assert_eq!(by_a, expected);
        let delta = fox_alexander(&pres).unwrap();
        assert_eq!(delta.poly(), &UniPoly::new(alloc::vec![int(1), int(-1), int(1)]));
    }

    #[test]
    fn figure_eight() {
        let delta = fox_alexander(&two_bridge_word(5, 3).unwrap()).unwrap();
        assert_eq!(delta.poly(), &UniPoly::new(alloc::vec![int(1), int(-3), int(1)]));
    }

    #[test]
    fn table_values() {
        let cases: [(u64, u64, &[i64]); 5] = [
            (5, 1, &[1, -1, 1, -1, 1]),
            (7, 3, &[2, -3, 2]),
            (9, 7, &[2, -5, 2]),
            (7, 1, &[1, -1, 1, -1, 1, -1, 1]),
            (5, 2, &[1, -3, 1]),
        ];
        for (p, q, coeffs) in cases {
            let delta = fox_alexander(&two_bridge_word(p, q).unwrap()).unwrap();
            let expected = UniPoly::new(coeffs.iter().map(|&c| int(c)).collect());
            assert_eq!(delta.poly(), &expected, "({p},{q})");
        }
    }

    #[test]
    fn alexander_invariants() {
        for (p, q) in [(3, 1), (5, 1), (5, 3), (7, 3), (9, 7), (7, 1), (11, 3), (13, 5)] {
            let delta = fox_alexander(&two_bridge_word(p, q).unwrap()).unwrap();
            let at_one = delta.poly().eval(&int(1));
            assert!(at_one == int(1) || at_one == int(-1), "Δ(1) = {at_one} for ({p},{q})");
            let c = delta.poly().coeffs();
            let reversed: Vec<_> = c.iter().rev().cloned().collect();
            let negated: Vec<_> = c.iter().map(|x| -x.clone()).collect();
            assert!(c == reversed.as_slice() || negated == reversed, "({p},{q})");
        }
    }

    #[test]
    fn figure_eight_bad_traces() {
        let delta = fox_alexander(&two_bridge_word(5, 3).unwrap()).unwrap();
        let w = alexander_bad_traces(&delta).unwrap();
        // (τ² − 5)²
        let expected = UniPoly::new(
            [25, 0, -10, 0, 1].iter().map(|&c| int(c)).collect(),
        );
        assert_eq!(w.defining_poly, expected);
        let mut re: Vec<f64> = w.approximations.iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        let r5 = 5f64.sqrt();
        assert!((re[0] + r5).abs() < 1e-12 && (re[1] - r5).abs() < 1e-12, "{re:?}");
    }

    #[test]
    fn trefoil_bad_traces() {
        let delta = fox_alexander(&two_bridge_word(3, 1).unwrap()).unwrap();
        let w = alexander_bad_traces(&delta).unwrap();
        for z in &w.approximations {
            assert!((z.norm_sqr() - 3.0).abs() < 1e-10 && z.im.abs() < 1e-10, "{z}");
        }
        assert_eq!(w.approximations.len(), 2);
    }

    #[test]
    fn defining_poly_is_even() {
        for (p, q) in [(3, 1), (5, 1), (7, 3), (9, 7)] {
            let delta = fox_alexander(&two_bridge_word(p, q).unwrap()).unwrap();
            let w = alexander_bad_traces(&delta).unwrap();
            for (k, c) in w.defining_poly.coeffs().iter().enumerate() {
                assert!(k % 2 == 0 || c.is_zero());
            }
        }
    }

    #[test]
    fn constant_alexander_rejected() {
        let one = AlexanderPolynomial::from_poly(UniPoly::constant(int(1))).unwrap();
        assert!(alexander_bad_traces(&one).is_err());
    }
}
