//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` modulo the
//! `N`-th cyclotomic polynomial, so two elements are equal iff their
//! coefficient vectors are equal.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::QMatrix;
use crate::error::{Error, Result};

/// Largest supported conductor.
pub const MAX_CONDUCTOR: u32 = 60;

pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|&k| k.gcd(&n) == 1).count() as u32
}

/// Möbius function.
pub fn mobius(n: u32) -> i32 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Coefficients (lowest degree first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic polynomial of index 0");
    // x^n - 1 divided by Φ_d for every proper divisor d of n
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = BigInt::from(-1);
    p[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        p = div_monic(&p, &cyclotomic_polynomial(d));
    }
    p
}

/// Exact quotient of integer polynomials by a monic divisor.
fn div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quo = vec![BigInt::zero(); num.len() - dd];
    for k in (0..quo.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quo[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quo
}

/// Element of `Q(ζ_N)` in the power basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

impl CyclotomicNumber {
    pub fn zero(conductor: u32) -> Result<Self> {
        check_conductor(conductor)?;
        Ok(Self {
            conductor,
            coeffs: vec![BigRational::zero(); euler_phi(conductor) as usize],
        })
    }

    pub fn one(conductor: u32) -> Result<Self> {
        Self::from_rational(conductor, BigRational::one())
    }

    pub fn from_rational(conductor: u32, value: BigRational) -> Result<Self> {
        let mut z = Self::zero(conductor)?;
        z.coeffs[0] = value;
        Ok(z)
    }

    pub fn from_integer(conductor: u32, value: i64) -> Result<Self> {
        Self::from_rational(conductor, BigRational::from_integer(value.into()))
    }

    /// `ζ_N^k` for any integer `k`.
    pub fn zeta_power(conductor: u32, k: i64) -> Result<Self> {
        check_conductor(conductor)?;
        let e = k.rem_euclid(conductor as i64) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        Ok(Self::from_polynomial(conductor, poly))
    }

    /// Reduces an arbitrary polynomial in `ζ` (lowest degree first).
    pub fn from_polynomial(conductor: u32, mut poly: Vec<BigRational>) -> Self {
        let phi = cyclotomic_polynomial(conductor);
        let deg = phi.len() - 1;
        for top in (deg..poly.len()).rev() {
            let c = std::mem::take(&mut poly[top]);
            if c.is_zero() {
                continue;
            }
            for (i, p) in phi.iter().enumerate().take(deg) {
                poly[top - deg + i] -= &c * BigRational::from_integer(p.clone());
            }
        }
        poly.resize(deg, BigRational::zero());
        Self { conductor, coeffs: poly }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.to_rational().is_some_and(|r| r.is_one())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    fn same_conductor(&self, other: &Self) -> Result<()> {
        if self.conductor == other.conductor {
            Ok(())
        } else {
            Err(Error::ConductorMismatch { left: self.conductor, right: other.conductor })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_conductor(other)?;
        Ok(Self {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_conductor(other)?;
        Ok(Self {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_conductor(other)?;
        if self.coeffs.len() == 1 {
            return Ok(Self {
                conductor: self.conductor,
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            });
        }
        let mut prod = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(Self::from_polynomial(self.conductor, prod))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Multiplicative inverse, by solving the linear system for the
    /// multiplication-by-`self` map.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = self.coeffs.len();
        let columns: Vec<Vec<BigRational>> = (0..d)
            .map(|j| {
                let zj = Self::zeta_power(self.conductor, j as i64).expect("conductor already valid");
                self.checked_mul(&zj).expect("same conductor").coeffs
            })
            .collect();
        let mut e0 = vec![BigRational::zero(); d];
        e0[0] = BigRational::one();
        let coeffs = QMatrix::from_columns(d, &columns).solve(&e0).ok_or(Error::DivisionByZero)?;
        Ok(Self { conductor: self.conductor, coeffs })
    }

    /// Image under the embedding `Q(ζ_N) → Q(ζ_M)`, `ζ_N ↦ ζ_M^{M/N}`.
    pub fn embed(&self, target: u32) -> Result<Self> {
        check_conductor(target)?;
        if !target.is_multiple_of(self.conductor) {
            return Err(Error::ConductorMismatch { left: self.conductor, right: target });
        }
        let step = (target / self.conductor) as usize;
        let mut poly = vec![BigRational::zero(); step * self.coeffs.len().max(1)];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[k * step] = c.clone();
        }
        Ok(Self::from_polynomial(target, poly))
    }
}

fn check_conductor(n: u32) -> Result<()> {
    if (1..=MAX_CONDUCTOR).contains(&n) {
        Ok(())
    } else {
        Err(Error::ConductorOutOfRange(n))
    }
}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;

    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.checked_add(rhs).expect("cyclotomic sum with mismatched conductors")
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;

    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.checked_sub(rhs).expect("cyclotomic difference with mismatched conductors")
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;

    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.checked_mul(rhs).expect("cyclotomic product with mismatched conductors")
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;

    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})·ζ{}", self.conductor)?,
                _ => write!(f, "({c})·ζ{}^{k}", self.conductor)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
