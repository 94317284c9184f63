use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Named knots accepted by the descriptor grammar.
pub const NAMED_KNOTS: [(&str, u64, u64); 6] = [
    ("3_1", 3, 1),
    ("4_1", 5, 3),
    ("5_1", 5, 1),
    ("5_2", 7, 3),
    ("6_1", 9, 7),
    ("7_1", 7, 1),
];

/// The pair `(p, q)` of a two-bridge knot `b(p, q)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TwoBridgeParams {
    pub p: u64,
    pub q: u64,
}

impl TwoBridgeParams {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        let reason = if p < 3 {
            Some("p must be at least 3")
        } else if p.is_multiple_of(2) {
            Some("p must be odd")
        } else if q == 0 || q >= p {
            Some("q must satisfy 0 < q < p")
        } else if p.gcd(&q) != 1 {
            Some("gcd(p, q) must be 1")
        } else {
            None
        };
        match reason {
            Some(reason) => Err(Error::InvalidParams { p, q, reason }),
            None => Ok(Self { p, q }),
        }
    }

    pub fn name(&self) -> Option<&'static str> {
        NAMED_KNOTS
            .iter()
            .find(|&&(_, p, q)| p == self.p && q == self.q)
            .map(|&(n, _, _)| n)
    }

    /// `(p − 1) / 2`, the number of irreducible characters on a generic slice.
    pub fn generic_degree(&self) -> usize {
        ((self.p - 1) / 2) as usize
    }
}

impl fmt::Display for TwoBridgeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name() {
            Some(n) => f.write_str(n),
            None => write!(f, "2b({},{})", self.p, self.q),
        }
    }
}

/// A prime two-bridge knot, or a connected sum of them in left-to-right
/// order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct KnotDescriptor {
    atoms: Vec<TwoBridgeParams>,
}

impl KnotDescriptor {
    pub fn new(atoms: Vec<TwoBridgeParams>) -> Option<Self> {
        (!atoms.is_empty()).then_some(Self { atoms })
    }

    pub fn atoms(&self) -> &[TwoBridgeParams] {
        &self.atoms
    }

    pub fn is_prime(&self) -> bool {
        self.atoms.len() == 1
    }
}

impl fmt::Display for KnotDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(" # ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    // Non-whitespace characters with their byte offsets in the input.
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.text.len(), |&(o, _)| o)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position: self.offset(), message: message.into() })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected '{c}'"))
        }
    }

    fn token(&mut self) -> String {
        let mut out = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_alphanumeric() || *c == '_') {
            out.push(c);
            self.pos += 1;
        }
        out
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.pos += 1;
        }
        if digits.is_empty() {
            return self.error("expected an integer");
        }
        digits.parse().or_else(|_| {
            self.pos = start;
            self.error("integer out of range")
        })
    }

    fn atom(&mut self) -> Result<TwoBridgeParams> {
        let start = self.pos;
        let token = self.token();
        if token.is_empty() {
            return self.error("expected a knot name or 2b(p,q)");
        }
        if token == "2b" && self.peek() == Some('(') {
            self.pos += 1;
            let p = self.integer()?;
            self.expect(',')?;
            let q = self.integer()?;
            self.expect(')')?;
            return TwoBridgeParams::new(p, q).or_else(|e| {
                self.pos = start;
                self.error(e.to_string())
            });
        }
        match NAMED_KNOTS.iter().find(|&&(n, _, _)| n == token) {
            Some(&(_, p, q)) => Ok(TwoBridgeParams { p, q }),
            None => {
                self.pos = start;
                self.error(format!("unknown knot name '{token}'"))
            }
        }
    }
}

/// Parses `knot := atom { "#" atom }`, `atom := "2b(" INT "," INT ")" | NAME`.
/// Whitespace is ignored everywhere; error positions are byte offsets into
/// the original text.
pub fn parse_descriptor(text: &str) -> Result<KnotDescriptor> {
    let chars = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut parser = Parser { chars, pos: 0, text };
    let mut atoms = Vec::new();
    loop {
        atoms.push(parser.atom()?);
        match parser.peek() {
            None => break,
            Some('#') => parser.pos += 1,
            Some(_) => return parser.error("expected '#' or end of input"),
        }
    }
    Ok(KnotDescriptor { atoms })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, q: u64) -> TwoBridgeParams {
        TwoBridgeParams { p, q }
    }

    #[test]
    fn named_knot() {
        assert_eq!(parse_descriptor("4_1").unwrap().atoms(), &[params(5, 3)]);
    }

    #[test]
    fn connected_sum_with_whitespace() {
        let d = parse_descriptor("2b(3,1) # 4_1").unwrap();
        assert_eq!(d.atoms(), &[params(3, 1), params(5, 3)]);
        let d = parse_descriptor("  2b ( 3 , 1 )#4_1 ").unwrap();
        assert_eq!(d.atoms(), &[params(3, 1), params(5, 3)]);
        assert_eq!(d.to_string(), "3_1 # 4_1");
    }

    #[test]
    fn even_p_rejected_with_position() {
        match parse_descriptor("3_1 # 2b(4,1)") {
            Err(Error::Parse { position, message }) => {
                assert_eq!(position, 6);
                assert!(message.contains("odd"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn malformed_inputs() {
        for (text, pos) in [("", 0), ("4_1 #", 5), ("2b(5,)", 5), ("2b(5 3)", 6), ("9_9", 0), ("4_1 4_1", 0)] {
            match parse_descriptor(text) {
                Err(Error::Parse { position, .. }) => assert_eq!(position, pos, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(parse_descriptor("2b(9,3)").is_err());
        assert!(parse_descriptor("2b(7,7)").is_err());
        assert!(parse_descriptor("2b(7,0)").is_err());
    }

    #[test]
    fn display_uses_names_when_known() {
        assert_eq!(params(7, 3).to_string(), "5_2");
        assert_eq!(params(11, 3).to_string(), "2b(11,3)");
    }
}
