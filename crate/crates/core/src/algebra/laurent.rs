//! Laurent polynomials in `q` with cyclotomic coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use super::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};

/// Finitely supported Laurent polynomial over `Q(ζ_N)`. Zero coefficients
/// are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    conductor: u32,
    terms: BTreeMap<i64, CyclotomicNumber>,
}

impl LaurentPoly {
    pub fn zero(conductor: u32) -> Result<Self> {
        CyclotomicNumber::zero(conductor)?;
        Ok(Self { conductor, terms: BTreeMap::new() })
    }

    pub fn one(conductor: u32) -> Result<Self> {
        Ok(Self::monomial(CyclotomicNumber::one(conductor)?, 0))
    }

    /// `c · q^exponent`.
    pub fn monomial(c: CyclotomicNumber, exponent: i64) -> Self {
        let mut p = Self { conductor: c.conductor(), terms: BTreeMap::new() };
        p.insert_add(exponent, c);
        p
    }

    pub fn from_rational_terms(
        conductor: u32,
        terms: impl IntoIterator<Item = (i64, BigRational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(conductor)?;
        for (e, c) in terms {
            p.insert_add(e, CyclotomicNumber::from_rational(conductor, c)?);
        }
        Ok(p)
    }

    fn insert_add(&mut self, exponent: i64, c: CyclotomicNumber) {
        assert_eq!(c.conductor(), self.conductor, "LaurentPoly: coefficient conductor mismatch");
        if c.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&exponent) {
            Some(old) => &old + &c,
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(exponent, merged);
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &CyclotomicNumber)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, exponent: i64) -> CyclotomicNumber {
        self.terms
            .get(&exponent)
            .cloned()
            .unwrap_or_else(|| CyclotomicNumber::zero(self.conductor).expect("valid conductor"))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> Self {
        let mut out = Self { conductor: self.conductor, terms: BTreeMap::new() };
        for (&e, x) in &self.terms {
            out.insert_add(e, x * c);
        }
        out
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        let mut out = Self { conductor: self.conductor, terms: BTreeMap::new() };
        for (&e, x) in &self.terms {
            out.insert_add(e, x.scale(r));
        }
        out
    }

    /// A unit of the Laurent ring is a single nonzero monomial.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn unit_inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NotInvertible);
        }
        let (&e, c) = self.terms.iter().next().expect("one term");
        Ok(Self::monomial(c.inverse()?, -e))
    }

    pub fn eval_at_one(&self) -> CyclotomicNumber {
        self.terms
            .values()
            .fold(CyclotomicNumber::zero(self.conductor).expect("valid conductor"), |acc, c| &acc + c)
    }

    pub fn is_rational(&self) -> bool {
        self.terms.values().all(CyclotomicNumber::is_rational)
    }

    pub fn to_rational_terms(&self) -> Option<BTreeMap<i64, BigRational>> {
        self.terms.iter().map(|(&e, c)| c.to_rational().map(|r| (e, r))).collect()
    }

    pub fn embed(&self, target: u32) -> Result<Self> {
        let mut out = Self::zero(target)?;
        for (&e, c) in &self.terms {
            out.insert_add(e, c.embed(target)?);
        }
        Ok(out)
    }

    /// Polynomial long division; both operands must have no negative powers.
    /// Returns `(quotient, remainder)` with `deg remainder < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        assert_eq!(self.conductor, divisor.conductor, "LaurentPoly division: conductor mismatch");
        let Some(dmax) = divisor.max_exponent() else {
            return Err(Error::DivisionByZero);
        };
        if self.min_exponent().is_some_and(|e| e < 0) || divisor.min_exponent().is_some_and(|e| e < 0) {
            return Err(Error::Dimension("polynomial division needs nonnegative exponents".into()));
        }
        let lead_inv = divisor.terms[&dmax].inverse()?;
        let mut rem = self.clone();
        let mut quo = Self::zero(self.conductor)?;
        while let Some(top) = rem.max_exponent() {
            if top < dmax {
                break;
            }
            let c = &rem.terms[&top] * &lead_inv;
            let step = Self::monomial(c, top - dmax);
            rem = &rem - &(&step * divisor);
            quo = &quo + &step;
        }
        Ok((quo, rem))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.insert_add(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.insert_add(e, -c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.conductor, rhs.conductor, "LaurentPoly product: conductor mismatch");
        let mut out = LaurentPoly { conductor: self.conductor, terms: BTreeMap::new() };
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.insert_add(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match e {
                0 => write!(f, "[{c}]")?,
                _ => write!(f, "[{c}]·q^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rpoly(n: u32, terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_rational_terms(n, terms.iter().map(|&(e, c)| (e, BigRational::from_integer(BigInt::from(c)))))
            .unwrap()
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = &rpoly(1, &[(0, 1), (1, -1)]) + &rpoly(1, &[(1, 1)]);
        assert_eq!(p, rpoly(1, &[(0, 1)]));
        assert_eq!(p.terms().count(), 1);
    }

    #[test]
    fn laurent_product_and_shift() {
        let p = rpoly(1, &[(-2, 1), (0, 1)]);
        let q = rpoly(1, &[(2, 1), (3, -1)]);
        assert_eq!(&p * &q, rpoly(1, &[(0, 1), (1, -1), (2, 1), (3, -1)]));
        assert_eq!(p.shift(2), rpoly(1, &[(0, 1), (2, 1)]));
    }

    #[test]
    fn exact_division() {
        // (1 - q)^4 = (1 - q)^2 * (1 - 2q + q^2)
        let a = rpoly(1, &[(0, 1), (1, -4), (2, 6), (3, -4), (4, 1)]);
        let b = rpoly(1, &[(0, 1), (1, -2), (2, 1)]);
        let (quo, rem) = a.div_rem(&b).unwrap();
        assert!(rem.is_zero());
        assert_eq!(quo, b);
        let (_, rem) = rpoly(1, &[(0, 1), (3, 1)]).div_rem(&b).unwrap();
        assert!(!rem.is_zero());
        assert_eq!(a.div_rem(&LaurentPoly::zero(1).unwrap()).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn unit_inverse_of_monomial() {
        let c = CyclotomicNumber::zeta_power(3, 1).unwrap();
        let m = LaurentPoly::monomial(c, 2);
        let inv = m.unit_inverse().unwrap();
        assert_eq!(&m * &inv, LaurentPoly::one(3).unwrap());
        assert_eq!(rpoly(1, &[(0, 1), (1, 1)]).unit_inverse(), Err(Error::NotInvertible));
    }

    #[test]
    fn evaluation_and_rationality() {
        let p = rpoly(3, &[(-1, 2), (4, 3)]);
        assert_eq!(p.eval_at_one().to_rational(), Some(BigRational::from_integer(5.into())));
        assert!(p.is_rational());
        let w = LaurentPoly::monomial(CyclotomicNumber::zeta_power(3, 1).unwrap(), 0);
        assert!(!w.is_rational());
        assert!(w.to_rational_terms().is_none());
    }
}
