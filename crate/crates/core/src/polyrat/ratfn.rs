use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::IntPoly;
use crate::error::{Error, Result};

/// Reduced rational function `num / den` over the integers.
///
/// The denominator is nonzero, coprime to the numerator, and has positive
/// leading coefficient; the numerator and denominator share no integer factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: IntPoly,
    den: IntPoly,
}

impl RatFn {
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        let mut c = num.content().gcd(&den.content());
        if den.leading_coeff().unwrap().is_negative() {
            c = -c;
        }
        num = num.div_scalar_exact(&c);
        den = den.div_scalar_exact(&c);
        Ok(Self { num, den })
    }

    pub fn zero() -> Self {
        Self {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(IntPoly::one())
    }

    pub fn from_poly(p: IntPoly) -> Self {
        Self {
            num: p,
            den: IntPoly::one(),
        }
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Taylor coefficients `c_0..=c_m` at the origin.
    pub fn series_coeffs(&self, m: usize) -> Result<Vec<BigRational>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::PoleAtOrigin);
        }
        let d0 = BigRational::from_integer(d0);
        let mut out: Vec<BigRational> = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let mut acc = BigRational::from_integer(self.num.coeff(k));
            for j in 1..=k.min(self.den.degree().unwrap_or(0)) {
                acc -= BigRational::from_integer(self.den.coeff(j)) * &out[k - j];
            }
            out.push(acc / &d0);
        }
        Ok(out)
    }

    /// Like [`series_coeffs`](Self::series_coeffs) but requires every
    /// coefficient to be an integer.
    pub fn series_integers(&self, m: usize) -> Result<Vec<BigInt>> {
        self.series_coeffs(m)?
            .into_iter()
            .map(|r| {
                if r.is_integer() {
                    Ok(r.to_integer())
                } else {
                    Err(Error::OutOfRange(format!("non-integer series coefficient {r}")))
                }
            })
            .collect()
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        RatFn::new(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
        .unwrap()
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        RatFn::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl Div for &RatFn {
    type Output = Result<RatFn>;
    fn div(self, rhs: &RatFn) -> Result<RatFn> {
        RatFn::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}
