//! Power series in `t`, truncated at a fixed order, whose coefficients are
//! Laurent polynomials in `q`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::cyclotomic::CyclotomicNumber;
use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedBiSeries {
    order: usize,
    coeffs: Vec<LaurentPoly>,
}

impl TruncatedBiSeries {
    pub fn zero(conductor: u32, order: usize) -> Result<Self> {
        Ok(Self { order, coeffs: vec![LaurentPoly::zero(conductor)?; order + 1] })
    }

    pub fn one(conductor: u32, order: usize) -> Result<Self> {
        let mut s = Self::zero(conductor, order)?;
        s.coeffs[0] = LaurentPoly::one(conductor)?;
        Ok(s)
    }

    /// Builds a series from `t`-coefficients, dropping anything past `order`
    /// and padding with zeros.
    pub fn from_coeffs(conductor: u32, order: usize, mut coeffs: Vec<LaurentPoly>) -> Result<Self> {
        coeffs.truncate(order + 1);
        while coeffs.len() < order + 1 {
            coeffs.push(LaurentPoly::zero(conductor)?);
        }
        if let Some(bad) = coeffs.iter().find(|c| c.conductor() != conductor) {
            return Err(Error::ConductorMismatch { left: conductor, right: bad.conductor() });
        }
        Ok(Self { order, coeffs })
    }

    /// The series `P(q^q_exp · t^t_exp)` for an integer polynomial `P`
    /// (coefficients lowest degree first).
    pub fn substitute(
        conductor: u32,
        order: usize,
        poly: &[BigInt],
        q_exp: i64,
        t_exp: usize,
    ) -> Result<Self> {
        assert!(t_exp > 0, "substitution needs a positive t-exponent");
        let mut s = Self::zero(conductor, order)?;
        for (k, c) in poly.iter().enumerate() {
            let t_deg = k * t_exp;
            if t_deg > order {
                break;
            }
            let term = LaurentPoly::monomial(
                CyclotomicNumber::from_rational(conductor, BigRational::from_integer(c.clone()))?,
                q_exp * k as i64,
            );
            s.coeffs[t_deg] = &s.coeffs[t_deg] + &term;
        }
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn conductor(&self) -> u32 {
        self.coeffs[0].conductor()
    }

    pub fn coeff(&self, k: usize) -> &LaurentPoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        Self {
            order,
            coeffs: (0..=order).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
        }
    }

    /// Product truncated at the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut coeffs = vec![LaurentPoly::zero(self.conductor()).expect("valid conductor"); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(&self.coeffs[i] * &other.coeffs[j]);
            }
        }
        Self { order, coeffs }
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> Self {
        Self { order: self.order, coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect() }
    }

    /// Multiplicative inverse up to the truncation order. The constant term
    /// must be a unit of the Laurent ring (a single monomial).
    pub fn invert(&self) -> Result<Self> {
        let c0_inv = self.coeffs[0].unit_inverse()?;
        let conductor = self.conductor();
        let mut out = vec![LaurentPoly::zero(conductor)?; self.order + 1];
        out[0] = c0_inv.clone();
        for k in 1..=self.order {
            let mut acc = LaurentPoly::zero(conductor)?;
            for j in 1..=k {
                if self.coeffs[j].is_zero() || out[k - j].is_zero() {
                    continue;
                }
                acc = &acc + &(&self.coeffs[j] * &out[k - j]);
            }
            out[k] = -&(&acc * &c0_inv);
        }
        Ok(Self { order: self.order, coeffs: out })
    }

    /// `exp(self)` for a series without constant term, via `k E_k = Σ j F_j E_{k-j}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvariantViolation("exp of a series with nonzero constant term".into()));
        }
        let conductor = self.conductor();
        let mut out = vec![LaurentPoly::zero(conductor)?; self.order + 1];
        out[0] = LaurentPoly::one(conductor)?;
        for k in 1..=self.order {
            let mut acc = LaurentPoly::zero(conductor)?;
            for j in 1..=k {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                let weighted = self.coeffs[j].scale_rational(&BigRational::from_integer(j.into()));
                acc = &acc + &(&weighted * &out[k - j]);
            }
            out[k] = acc.scale_rational(&BigRational::new(1.into(), k.into()));
        }
        Ok(Self { order: self.order, coeffs: out })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_rational_terms(1, terms.iter().map(|&(e, c)| (e, BigRational::from_integer(c.into()))))
            .unwrap()
    }

    #[test]
    fn invert_geometric() {
        let s = TruncatedBiSeries::from_coeffs(1, 3, vec![rp(&[(0, 1)]), rp(&[(0, -1)])]).unwrap();
        let inv = s.invert().unwrap();
        for k in 0..=3 {
            assert_eq!(inv.coeff(k), &rp(&[(0, 1)]));
        }
    }

    #[test]
    fn invert_identity() {
        let one = TruncatedBiSeries::one(1, 5).unwrap();
        assert_eq!(one.invert().unwrap(), one);
    }

    #[test]
    fn invert_with_q() {
        let s = TruncatedBiSeries::from_coeffs(1, 2, vec![rp(&[(0, 1)]), rp(&[(1, -1)])]).unwrap();
        let inv = s.invert().unwrap();
        assert_eq!(inv.coeffs(), &[rp(&[(0, 1)]), rp(&[(1, 1)]), rp(&[(2, 1)])]);
        assert_eq!(s.mul(&inv), TruncatedBiSeries::one(1, 2).unwrap());
    }

    #[test]
    fn non_unit_constant_is_rejected() {
        let s = TruncatedBiSeries::from_coeffs(1, 2, vec![rp(&[(0, 1), (1, 1)])]).unwrap();
        assert_eq!(s.invert(), Err(Error::NotInvertible));
        let z = TruncatedBiSeries::zero(1, 2).unwrap();
        assert_eq!(z.invert(), Err(Error::NotInvertible));
    }

    #[test]
    fn exp_of_t() {
        let s = TruncatedBiSeries::from_coeffs(1, 4, vec![rp(&[]), rp(&[(0, 1)])]).unwrap();
        let e = s.exp().unwrap();
        let expect = [1i64, 1, 2, 6, 24];
        for (k, d) in expect.iter().enumerate() {
            let c = e.coeff(k).coeff(0).to_rational().unwrap();
            assert_eq!(c, BigRational::new(1.into(), (*d).into()));
        }
    }

    #[test]
    fn substitution_truncates() {
        let poly: Vec<BigInt> = [1, -4, 6, -4, 1].iter().map(|&x| BigInt::from(x)).collect();
        let s = TruncatedBiSeries::substitute(1, 3, &poly, -1, 2).unwrap();
        assert_eq!(s.coeff(0), &rp(&[(0, 1)]));
        assert!(s.coeff(1).is_zero());
        assert_eq!(s.coeff(2), &rp(&[(-1, -4)]));
        assert!(s.coeff(3).is_zero());
    }
}
