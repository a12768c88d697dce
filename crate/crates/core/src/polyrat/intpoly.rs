use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense univariate polynomial with arbitrary-precision integer coefficients.
///
/// `coeffs[i]` is the coefficient of `x^i`. The vector never ends in a zero,
/// so the zero polynomial is the empty vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `c * x^e`.
    pub fn monomial<T: Into<BigInt>>(c: T, e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = c.into();
        Self::from_coeffs(coeffs)
    }

    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, BigInt)>,
    {
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (e, c) in terms {
            if coeffs.len() <= e {
                coeffs.resize(e + 1, BigInt::zero());
            }
            coeffs[e] += c;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^e` (zero past the degree).
    pub fn coeff(&self, e: usize) -> BigInt {
        self.coeffs.get(e).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (usize, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Nonnegative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides every coefficient by `d`, which must divide all of them.
    pub fn div_scalar_exact(&self, d: &BigInt) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .map(|c| {
                    debug_assert!((c % d).is_zero());
                    c / d
                })
                .collect(),
        )
    }

    /// Content-free part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading_coeff().is_some_and(Signed::is_negative) {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`, computed over the integers.
    pub fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        let db = b.degree().expect("pseudo_rem by zero polynomial");
        let lb = b.leading_coeff().unwrap().clone();
        let mut r = self.coeffs.clone();
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for c in r.iter_mut() {
                *c *= &lb;
            }
            let off = dr - db;
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[off + i] -= &lr * bc;
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        IntPoly::from_coeffs(r)
    }

    /// Greatest common divisor over the rationals, returned primitive with
    /// positive leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a
    }

    /// Exact quotient `self / d` over the integers, or `None` when `d` does not
    /// divide `self` in `Z[x]`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let ds = self.degree().unwrap();
        if ds < dd {
            return None;
        }
        let ld = d.leading_coeff().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); ds - dd + 1];
        for k in (0..=ds - dd).rev() {
            let top = &r[k + dd];
            let (qk, rem) = top.div_rem(ld);
            if !rem.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &qk * dc;
            }
            q[k] = qk;
        }
        if r.iter().all(Zero::is_zero) {
            Some(IntPoly::from_coeffs(q))
        } else {
            None
        }
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        (0..e).fold(IntPoly::one(), |acc, _| &acc * self)
    }
}

impl From<BigInt> for IntPoly {
    fn from(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format_terms(
            self.terms().rev().map(|(e, c)| (e as i64, c)),
        ))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: &IntPoly) -> IntPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl std::iter::Sum for IntPoly {
    fn sum<I: Iterator<Item = IntPoly>>(iter: I) -> Self {
        iter.fold(IntPoly::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn trims_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(IntPoly::zero().degree(), None);
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        assert_eq!(&a + &b, p(&[0, 2]));
        assert_eq!(&a - &a, IntPoly::zero());
        assert_eq!(a.pow(3), p(&[1, 3, 3, 1]));
    }

    #[test]
    fn gcd_cancels_common_factor() {
        let g = p(&[-1, 0, 1]).gcd(&p(&[-1, 1]));
        assert_eq!(g, p(&[-1, 1]));
        // (x+1)(2x+3) and (x+1)(x-5)
        let a = &p(&[1, 1]) * &p(&[3, 2]);
        let b = &p(&[1, 1]) * &p(&[-5, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        assert_eq!(p(&[2, 4]).gcd(&IntPoly::zero()), p(&[1, 2]));
    }

    #[test]
    fn exact_division() {
        let a = &p(&[1, 1]) * &p(&[3, 2]);
        assert_eq!(a.div_exact(&p(&[3, 2])), Some(p(&[1, 1])));
        assert_eq!(p(&[1, 0, 1]).div_exact(&p(&[1, 1])), None);
        assert_eq!(p(&[1, 1]).div_exact(&p(&[2, 2])), None);
    }

    #[test]
    fn eval_and_content() {
        assert_eq!(p(&[3, 1, 1]).eval(&BigInt::from(1)), BigInt::from(5));
        assert_eq!(p(&[4, -6, 2]).content(), BigInt::from(2));
        assert_eq!(p(&[4, -6, -2]).primitive_part(), p(&[-2, 3, 1]));
    }
}
