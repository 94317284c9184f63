//! Knot descriptors, two-bridge presentations and Alexander polynomials.
//!
//! Only two-bridge atoms in S³ are accepted; connected sums stay a list of
//! atoms and are never flattened into a single presentation.

mod descriptor;
mod fox;

pub use descriptor::{parse_descriptor, KnotDescriptor, TwoBridgeParams, NAMED_KNOTS};
pub use fox::{alexander_bad_traces, fox_alexander, AlexanderPolynomial, GoodTraceWitness};

use alloc::vec::Vec;
use core::fmt;

use crate::error::Result;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Generator {
    A,
    B,
}

/// A generator raised to `±1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Letter {
    pub generator: Generator,
    pub exponent: i8,
}

impl Letter {
    pub fn inverse(self) -> Self {
        Self { generator: self.generator, exponent: -self.exponent }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = match self.generator {
            Generator::A => 'a',
            Generator::B => 'b',
        };
        if self.exponent < 0 {
            write!(f, "{g}^-1")
        } else {
            write!(f, "{g}")
        }
    }
}

pub fn invert_word(word: &[Letter]) -> Vec<Letter> {
    word.iter().rev().map(|l| l.inverse()).collect()
}

/// `⟨a, b | a·w = w·b⟩` with `w = b^{ε₁} a^{ε₂} b^{ε₃} ⋯ a^{ε_{p−1}}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwoBridgePresentation {
    params: TwoBridgeParams,
    exponents: Vec<i8>,
    w: Vec<Letter>,
}

impl TwoBridgePresentation {
    pub fn params(&self) -> TwoBridgeParams {
        self.params
    }

    /// `ε₁ … ε_{p−1}`
    pub fn exponents(&self) -> &[i8] {
        &self.exponents
    }

    pub fn w(&self) -> &[Letter] {
        &self.w
    }

    /// `a·w·b⁻¹·w⁻¹`
    pub fn relator(&self) -> Vec<Letter> {
        let mut r = Vec::with_capacity(2 * self.w.len() + 2);
        r.push(Letter { generator: Generator::A, exponent: 1 });
        r.extend_from_slice(&self.w);
        r.push(Letter { generator: Generator::B, exponent: -1 });
        r.extend(invert_word(&self.w));
        r
    }
}

/// Riley normal form of the two-bridge knot `b(p, q)`.
///
/// The exponents are `ε_i = (−1)^{⌊i·q/p⌋}`. When `q` is even that sequence
/// is not palindromic and does not give a knot group, so `q + p` (which
/// names the same knot) is used instead.
pub fn two_bridge_word(p: u64, q: u64) -> Result<TwoBridgePresentation> {
    let params = TwoBridgeParams::new(p, q)?;
    let q_odd = if q.is_multiple_of(2) { q + p } else { q };
    let exponents: Vec<i8> = (1..p)
        .map(|i| if ((i * q_odd) / p).is_multiple_of(2) { 1 } else { -1 })
        .collect();
    let w = exponents
        .iter()
        .enumerate()
        .map(|(i, &e)| Letter {
            generator: if i % 2 == 0 { Generator::B } else { Generator::A },
            exponent: e,
        })
        .collect();
    Ok(TwoBridgePresentation { params, exponents, w })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::String;
    use core::fmt::Write;

    fn render(word: &[Letter]) -> String {
        let mut s = String::new();
        for l in word {
            let _ = write!(s, "{l} ");
        }
        s.trim_end().into()
    }

    #[test]
    fn trefoil_word() {
        let pres = two_bridge_word(3, 1).unwrap();
        assert_eq!(pres.exponents(), &[1, 1]);
        assert_eq!(render(pres.w()), "b a");
        assert_eq!(render(&pres.relator()), "a b a b^-1 a^-1 b^-1");
    }

    #[test]
    fn figure_eight_exponents() {
        // ⌊3i/5⌋ = 0, 1, 1, 2
        let pres = two_bridge_word(5, 3).unwrap();
        assert_eq!(pres.exponents(), &[1, -1, -1, 1]);
        assert_eq!(pres.w().len(), 4);
    }

    #[test]
    fn exponents_are_palindromic() {
        for (p, q) in [(3, 1), (5, 1), (5, 2), (5, 3), (7, 2), (7, 3), (9, 7), (11, 4)] {
            let pres = two_bridge_word(p, q).unwrap();
            let e = pres.exponents();
            assert_eq!(e.len() as u64, p - 1);
            assert!(e.iter().eq(e.iter().rev()), "({p},{q})");
        }
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(two_bridge_word(4, 1).is_err());
        assert!(two_bridge_word(9, 3).is_err());
        assert!(two_bridge_word(5, 5).is_err());
        assert!(two_bridge_word(1, 0).is_err());
    }
}
