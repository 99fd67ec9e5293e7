//! Exact arithmetic substrate: integer and rational matrices, cyclotomic
//! fields, Laurent polynomials and truncated power series.

pub mod cyclotomic;
pub mod laurent;
pub mod matrix;
pub mod series;

pub use cyclotomic::CyclotomicNumber;
pub use laurent::LaurentPoly;
pub use matrix::{IntMatrix, QMatrix, Smith};
pub use num_rational::BigRational as Rational;
pub use series::TruncatedBiSeries;

use num_bigint::BigInt;
use num_traits::Signed;

/// `Some(r)` with `r*r == n` if `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorisation as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
