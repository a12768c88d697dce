use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::IntPoly;
use crate::error::{Error, Result};

/// Laurent polynomial with integer coefficients and arbitrary integer exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial<T: Into<BigInt>>(c: T, e: i64) -> Self {
        Self::from_terms([(e, c.into())])
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(terms: I) -> Self {
        let mut coeffs: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *coeffs.entry(e).or_default() += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Self { coeffs }
    }

    /// Embeds `x^k · p`.
    pub fn from_poly_shifted(p: &IntPoly, k: i64) -> Self {
        Self::from_terms(p.terms().map(|(e, c)| (e as i64 + k, c.clone())))
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn low_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Converts to an ordinary polynomial if no exponent is negative.
    pub fn to_poly(&self) -> Option<IntPoly> {
        if self.low_degree().is_some_and(|e| e < 0) {
            return None;
        }
        Some(IntPoly::from_terms(
            self.coeffs.iter().map(|(e, c)| (*e as usize, c.clone())),
        ))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format_terms(self.terms().rev()))
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(Self {
            coeffs: super::text::parse_terms(s)?,
        })
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.coeffs
                .iter()
                .chain(rhs.coeffs.iter())
                .map(|(e, c)| (*e, c.clone())),
        )
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.coeffs
                .iter()
                .flat_map(|(ea, ca)| rhs.coeffs.iter().map(move |(eb, cb)| (ea + eb, ca * cb))),
        )
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |a, b| a + b)
    }
}
