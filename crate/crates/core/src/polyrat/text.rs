//! Plain-text polynomial syntax: `6x^4 + 4x^3 + x^2 - 1`.
//!
//! Terms are `c*x^e`, `cx^e`, `c*x`, `cx`, `c`, `x^e` or `x`, joined by `+`
//! or `-` in any order. Whitespace is ignored. Exponents may be negative
//! (`x^-1`) when parsing Laurent polynomials.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Formats terms given in descending exponent order.
pub(crate) fn format_terms<'a, I>(terms: I) -> String
where
    I: IntoIterator<Item = (i64, &'a BigInt)>,
{
    let mut out = String::new();
    for (e, c) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        if e == 0 {
            out.push_str(&a.to_string());
            continue;
        }
        if !a.is_one() {
            out.push_str(&a.to_string());
        }
        out.push('x');
        if e != 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.bytes[start..self.pos]).unwrap())
    }
}

/// Parses into an exponent → coefficient map with zero coefficients removed.
pub(crate) fn parse_terms(text: &str) -> Result<BTreeMap<i64, BigInt>> {
    let mut lx = Lexer {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let mut out: BTreeMap<i64, BigInt> = BTreeMap::new();
    if lx.peek().is_none() {
        return Err(lx.err("empty input"));
    }
    let mut first = true;
    while lx.peek().is_some() {
        let sign = if lx.eat(b'+') {
            1
        } else if lx.eat(b'-') {
            -1
        } else if first {
            1
        } else {
            return Err(lx.err("expected '+' or '-'"));
        };
        first = false;
        let coeff = lx.digits().map(|d| d.parse::<BigInt>().unwrap());
        let has_x = if coeff.is_some() && lx.eat(b'*') {
            if lx.peek() != Some(b'x') {
                return Err(lx.err("expected 'x' after '*'"));
            }
            lx.pos += 1;
            true
        } else {
            lx.eat(b'x')
        };
        if coeff.is_none() && !has_x {
            return Err(lx.err("expected a coefficient or 'x'"));
        }
        let exp = if has_x {
            if lx.eat(b'^') {
                let neg = lx.eat(b'-');
                let d = lx.digits().ok_or_else(|| lx.err("expected exponent"))?;
                let e: i64 = d.parse().map_err(|_| lx.err("exponent too large"))?;
                if neg {
                    -e
                } else {
                    e
                }
            } else {
                1
            }
        } else {
            0
        };
        let c = coeff.unwrap_or_else(BigInt::one) * sign;
        *out.entry(exp).or_default() += c;
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fmt(text: &str) -> String {
        let m = parse_terms(text).unwrap();
        format_terms(m.iter().rev().map(|(e, c)| (*e, c)))
    }

    #[test]
    fn canonical_round_trip() {
        for s in ["x^2 - 3x + 1", "6x^4 + 4x^3 + x^2 - 1", "-x", "0", "5 + 2x^-1", "-12"] {
            assert_eq!(fmt(s), s);
        }
    }

    #[test]
    fn accepts_loose_input() {
        assert_eq!(fmt("1 - 3*x + x^2"), "x^2 - 3x + 1");
        assert_eq!(fmt("2x^3+x^2-1"), "2x^3 + x^2 - 1");
        assert_eq!(fmt("x + x - 2x"), "0");
    }

    #[test]
    fn reports_position() {
        match parse_terms("x^2 + + 1") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_terms("").is_err());
        assert!(parse_terms("2 3").is_err());
        assert!(parse_terms("x^").is_err());
        assert!(parse_terms("2*").is_err());
    }
}
