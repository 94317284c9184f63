use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write};
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::Field;
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients lowest degree first.
///
/// The coefficient vector is always trimmed, so the zero polynomial is the
/// empty vector and `degree() == len - 1` otherwise.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniPoly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// `c · var^k`
    pub fn monomial(c: F, k: usize) -> Self {
        let mut coeffs = vec![F::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The polynomial `var`.
    pub fn var() -> Self {
        Self::monomial(F::one(), 1)
    }

    /// `var - root`
    pub fn linear(root: F) -> Self {
        Self::new(vec![-root, F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Nonzero constants and the zero polynomial.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn eval(&self, at: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * at.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * F::from_rational(&super::int(k as i64)))
            .collect();
        Self::new(coeffs)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Divides by the leading coefficient. The zero polynomial is returned
    /// unchanged.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) if !lc.is_one() => {
                let inv = F::one() / lc.clone();
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    /// Euclidean division. `None` when `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lc_inv = F::one() / divisor.leading()?.clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() * lc_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * d.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Some((Self::new(quot), Self::new(rem)))
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor)?;
        r.is_zero().then_some(q)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `self / gcd(self, self')`, monic.
    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return self.monic();
        }
        let g = gcd_univariate(self, &self.derivative()).expect("nonzero input");
        self.exact_div(&g).expect("gcd divides").monic()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> UniPoly<G> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(Field::to_complex).collect()
    }

    /// Renders with the given variable name, highest degree first.
    pub fn display(&self, var: &str) -> String {
        let mut out = String::new();
        if self.is_zero() {
            out.push('0');
            return out;
        }
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !out.is_empty() {
                out.push_str(" + ");
            }
            let _ = match k {
                0 => write!(out, "{c}"),
                _ if c.is_one() => Ok(()),
                _ => write!(out, "({c})*"),
            };
            let _ = match k {
                0 => Ok(()),
                1 => write!(out, "{var}"),
                _ => write!(out, "{var}^{k}"),
            };
        }
        out
    }
}

impl<F: Field> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("y"))
    }
}

impl<F: Field> Add for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn add(self, rhs: Self) -> UniPoly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<F: Field> Sub for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn sub(self, rhs: Self) -> UniPoly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<F: Field> Mul for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn mul(self, rhs: Self) -> UniPoly<F> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(out)
    }
}

impl<F: Field> Neg for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn neg(self) -> UniPoly<F> {
        UniPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl<F: Field> $tr for UniPoly<F> {
            type Output = UniPoly<F>;
            fn $m(self, rhs: Self) -> UniPoly<F> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

/// Monic gcd via the Euclidean algorithm.
pub fn gcd_univariate<F: Field>(a: &UniPoly<F>, b: &UniPoly<F>) -> Result<UniPoly<F>> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::GcdOfZero);
    }
    let (mut r0, mut r1) = (a.monic(), b.monic());
    while !r1.is_zero() {
        let (_, r) = r0.div_rem(&r1).expect("divisor is nonzero");
        r0 = r1;
        r1 = r.monic();
    }
    Ok(r0.monic())
}

/// One factor of a squarefree decomposition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SquarefreeFactor<F> {
    pub factor: UniPoly<F>,
    pub multiplicity: usize,
}

/// Yun's algorithm. Returns monic, squarefree, pairwise coprime factors
/// with `p = lc(p) · Π factor^multiplicity`, ordered by multiplicity.
pub fn squarefree_decomposition<F: Field>(p: &UniPoly<F>) -> Result<Vec<SquarefreeFactor<F>>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = p.monic();
    let mut out = Vec::new();
    if f.is_constant() {
        return Ok(out);
    }
    let df = f.derivative();
    let a0 = gcd_univariate(&f, &df)?;
    let mut b = f.exact_div(&a0).expect("gcd divides f");
    let c = df.exact_div(&a0).expect("gcd divides f'");
    let mut d = &c - &b.derivative();
    let mut mult = 1;
    while !b.is_constant() {
        let a = gcd_univariate(&b, &d)?;
        let next_b = b.exact_div(&a).expect("gcd divides b");
        let c = d.exact_div(&a).expect("gcd divides d");
        if !a.is_constant() {
            out.push(SquarefreeFactor { factor: a, multiplicity: mult });
        }
        d = &c - &next_b.derivative();
        b = next_b;
        mult += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, BigRational, GaussianRational};
    use proptest::prelude::*;

    fn q(coeffs: &[i64]) -> UniPoly<BigRational> {
        UniPoly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn gcd_shared_linear_factor() {
        assert_eq!(gcd_univariate(&q(&[-1, 0, 1]), &q(&[-1, 1])).unwrap(), q(&[-1, 1]));
    }

    #[test]
    fn gcd_coprime_is_one() {
        assert_eq!(gcd_univariate(&q(&[-1, 1, 1]), &q(&[1, 2])).unwrap(), q(&[1]));
    }

    #[test]
    fn gcd_of_nested_powers() {
        let y2 = q(&[-2, 1]);
        let a = y2.pow(2);
        let b = y2.pow(3);
        assert_eq!(gcd_univariate(&a, &b).unwrap(), a);
    }

    #[test]
    fn gcd_of_zeros_errors() {
        assert_eq!(
            gcd_univariate(&UniPoly::<BigRational>::zero(), &UniPoly::zero()),
            Err(Error::GcdOfZero)
        );
    }

    #[test]
    fn gcd_with_one_zero_input_is_monic_other() {
        assert_eq!(gcd_univariate(&q(&[2, 4]), &UniPoly::zero()).unwrap(), q(&[1, 2]).monic());
    }

    #[test]
    fn squarefree_pure_power() {
        let sf = squarefree_decomposition(&q(&[0, 0, 1])).unwrap();
        assert_eq!(sf, vec![SquarefreeFactor { factor: q(&[0, 1]), multiplicity: 2 }]);
    }

    #[test]
    fn squarefree_constructed_input() {
        let p = &q(&[-2, 1]).pow(2) * &q(&[1, 1]);
        let sf = squarefree_decomposition(&p).unwrap();
        assert_eq!(
            sf,
            vec![
                SquarefreeFactor { factor: q(&[1, 1]), multiplicity: 1 },
                SquarefreeFactor { factor: q(&[-2, 1]), multiplicity: 2 },
            ]
        );
    }

    #[test]
    fn squarefree_figure_eight_slice_at_three() {
        // y² − 8y + 8, discriminant 32
        let p = q(&[8, -8, 1]);
        let sf = squarefree_decomposition(&p).unwrap();
        assert_eq!(sf, vec![SquarefreeFactor { factor: p, multiplicity: 1 }]);
    }

    #[test]
    fn squarefree_over_gaussian_rationals() {
        let i = GaussianRational::i();
        let lin = UniPoly::linear(i.clone());
        let p = &lin.pow(3) * &UniPoly::linear(-i);
        let sf = squarefree_decomposition(&p.scale(&GaussianRational::from_ints(3, 1, 1, 2)))
            .unwrap();
        assert_eq!(sf.len(), 2);
        assert_eq!(sf[1], SquarefreeFactor { factor: lin, multiplicity: 3 });
    }

    #[test]
    fn squarefree_zero_errors() {
        assert_eq!(
            squarefree_decomposition(&UniPoly::<BigRational>::zero()),
            Err(Error::ZeroPolynomial)
        );
    }

    fn small_poly() -> impl Strategy<Value = UniPoly<BigRational>> {
        prop::collection::vec(-6i64..=6, 1..5).prop_map(|c| q(&c))
    }

    proptest! {
        #[test]
        fn gcd_divides_both(a in small_poly(), b in small_poly(), c in small_poly()) {
            let a = &a * &c;
            let b = &b * &c;
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let g = gcd_univariate(&a, &b).unwrap();
            prop_assert!(a.div_rem(&g).unwrap().1.is_zero());
            prop_assert!(b.div_rem(&g).unwrap().1.is_zero());
            if !c.is_zero() {
                prop_assert!(g.div_rem(&c.monic()).unwrap().1.is_zero());
            }
        }

        #[test]
        fn squarefree_reassembles(parts in prop::collection::vec((small_poly(), 1u32..4), 1..4)) {
            let p = parts.iter().fold(UniPoly::one(), |acc, (f, m)| &acc * &f.pow(*m));
            prop_assume!(!p.is_zero());
            let sf = squarefree_decomposition(&p).unwrap();
            let total: usize = sf.iter().map(|f| f.multiplicity * f.factor.degree().unwrap()).sum();
            prop_assert_eq!(total, p.degree().unwrap());
            let rebuilt = sf.iter().fold(UniPoly::one(), |acc, f| &acc * &f.factor.pow(f.multiplicity as u32));
            prop_assert_eq!(rebuilt.scale(p.leading().unwrap()), p);
            for (i, f) in sf.iter().enumerate() {
                prop_assert_eq!(f.factor.leading().cloned(), Some(int(1)));
                let d = gcd_univariate(&f.factor, &f.factor.derivative()).unwrap();
                prop_assert!(d.is_constant());
                for g in &sf[i + 1..] {
                    prop_assert!(gcd_univariate(&f.factor, &g.factor).unwrap().is_constant());
                }
            }
        }
    }
}
