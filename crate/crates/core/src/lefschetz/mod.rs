//! Lefschetz numbers of natural automorphisms of generalized Kummer
//! varieties `K_n(A)`, from the character-sum generating function.
//!
//! A torus automorphism `ψ = t_b ∘ h` is given by the integer matrix `H` of
//! `h` on `H₁(A, Z)` and the class of `n·b` in `(Z/n)^4`. Throughout,
//! `Ψ = Hᵀ` is the action on `H¹`.

pub mod catalog;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::cyclotomic::MAX_CONDUCTOR;
use crate::algebra::{CyclotomicNumber, IntMatrix, LaurentPoly, TruncatedBiSeries};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusAutomorphism {
    h: IntMatrix,
    b: Vec<u64>,
    n: u64,
}

impl TorusAutomorphism {
    pub fn new(h: IntMatrix, b: &[i64], n: u64) -> Result<Self> {
        if h.rows() != 4 || h.cols() != 4 {
            return Err(Error::Dimension(format!("H must be 4x4, got {}x{}", h.rows(), h.cols())));
        }
        if !h.det().abs().is_one() {
            return Err(Error::InvalidLattice(format!("det H = {}, expected ±1", h.det())));
        }
        if b.len() != 4 {
            return Err(Error::Dimension(format!("b must have 4 entries, got {}", b.len())));
        }
        if n == 0 || n > MAX_CONDUCTOR as u64 {
            return Err(Error::ConductorOutOfRange(n as u32));
        }
        let b = b.iter().map(|&x| x.rem_euclid(n as i64) as u64).collect();
        Ok(Self { h, b, n })
    }

    pub fn h(&self) -> &IntMatrix {
        &self.h
    }

    pub fn b(&self) -> &[u64] {
        &self.b
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Action on `H¹`.
    pub fn psi(&self) -> IntMatrix {
        self.h.transpose()
    }

    pub fn with_translation(&self, b: &[i64]) -> Result<Self> {
        Self::new(self.h.clone(), b, self.n)
    }

    /// `t_b ∘ (−h)`.
    pub fn negated(&self) -> Self {
        Self { h: -&self.h, b: self.b.clone(), n: self.n }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterClass {
    pub c: Vec<u64>,
    pub order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LefschetzResult {
    /// `L(ψ^[n], q)` by exponent.
    pub poly: BTreeMap<i64, BigRational>,
    pub value: BigInt,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `∧^i M` in the basis of sorted index subsets, lexicographically ordered.
pub fn exterior_power(m: &IntMatrix, i: usize) -> IntMatrix {
    assert!(m.is_square() && i <= m.rows(), "exterior power of a square matrix up to its size");
    let subsets = combinations(m.rows(), i);
    let k = subsets.len();
    let mut out = IntMatrix::zeros(k, k);
    for (r, rs) in subsets.iter().enumerate() {
        for (c, cs) in subsets.iter().enumerate() {
            out.set(r, c, m.submatrix(rs, cs).det());
        }
    }
    out
}

/// Coefficients of `det(xI − M)`, lowest degree first (Faddeev–LeVerrier).
pub fn characteristic_polynomial(m: &IntMatrix) -> Vec<BigInt> {
    let n = m.rows();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut aux = IntMatrix::zeros(n, n);
    for k in 1..=n {
        aux = &(m * &aux) + &IntMatrix::identity(n).scale(&coeffs[n + 1 - k]);
        let tr = (m * &aux).trace();
        let (quot, rem) = tr.div_rem(&BigInt::from(k));
        debug_assert!(rem.is_zero(), "Faddeev–LeVerrier division is exact for integer matrices");
        coeffs[n - k] = -quot;
    }
    coeffs
}

/// Coefficients of `det(1 − xM) = Σ (−1)^k tr(∧^k M) x^k`.
pub fn det_one_minus(m: &IntMatrix) -> Vec<BigInt> {
    let mut c = characteristic_polynomial(m);
    c.reverse();
    c
}

/// The same polynomial computed from traces of exterior powers.
pub fn det_one_minus_by_traces(m: &IntMatrix) -> Vec<BigInt> {
    (0..=m.rows())
        .map(|k| {
            let t = exterior_power(m, k).trace();
            if k % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .collect()
}

/// `L(ψ, q) = Σ (−1)^k tr(∧^k Ψ) q^k`, which equals `det(1 − qΨ)`.
pub fn lefschetz_poly_surface(h: &IntMatrix) -> LaurentPoly {
    let coeffs = det_one_minus_by_traces(&h.transpose());
    LaurentPoly::from_rational_terms(
        1,
        coeffs.into_iter().enumerate().map(|(k, c)| (k as i64, BigRational::from_integer(c))),
    )
    .expect("conductor 1 is valid")
}

/// Characters `c ∈ (Z/n)^4` with `Hᵀc ≡ c (mod n)`, lexicographic.
pub fn fixed_characters(h: &IntMatrix, n: u64) -> Vec<CharacterClass> {
    let psi = h.transpose();
    let nb = BigInt::from(n);
    let mut out = Vec::new();
    let total = n.pow(4);
    for idx in 0..total {
        let c: Vec<u64> = (0..4).rev().map(|j| (idx / n.pow(j)) % n).collect();
        let cb: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
        let image = psi.mul_vec(&cb);
        if image.iter().zip(&cb).all(|(x, y)| ((x - y) % &nb).is_zero()) {
            let g = c.iter().fold(n, |acc, &x| acc.gcd(&x));
            out.push(CharacterClass { c, order: n / g });
        }
    }
    out
}

/// `Σ_{χ of order d} χ(b)` for each order `d` occurring among fixed characters.
fn weights_by_order(aut: &TorusAutomorphism) -> Result<BTreeMap<u64, CyclotomicNumber>> {
    let n = aut.n;
    let mut out: BTreeMap<u64, CyclotomicNumber> = BTreeMap::new();
    for chi in fixed_characters(&aut.h, n) {
        let pairing: u64 = chi.c.iter().zip(&aut.b).map(|(c, b)| c * b).sum::<u64>() % n;
        let value = CyclotomicNumber::zeta_power(n as u32, pairing as i64)?;
        match out.get_mut(&chi.order) {
            Some(acc) => *acc = acc.checked_add(&value)?,
            None => {
                out.insert(chi.order, value);
            }
        }
    }
    Ok(out)
}

/// `Π_{v ≥ 1} Π_i det(1 − ∧^iΨ q^{i−2} t^{vd})^{(−1)^{i+1}}` modulo `t^{trunc+1}`.
fn character_product(psi: &IntMatrix, d: u64, conductor: u32, trunc: usize) -> Result<TruncatedBiSeries> {
    let factors: Vec<Vec<BigInt>> = (0..=4).map(|i| det_one_minus(&exterior_power(psi, i))).collect();
    let mut acc = TruncatedBiSeries::one(conductor, trunc)?;
    let d = d as usize;
    for v in (1..).take_while(|v| v * d <= trunc) {
        for (i, poly) in factors.iter().enumerate() {
            let f = TruncatedBiSeries::substitute(conductor, trunc, poly, i as i64 - 2, v * d)?;
            let f = if i % 2 == 0 { f.invert()? } else { f };
            acc = acc.mul(&f);
        }
    }
    Ok(acc)
}

/// The character sum `Σ_χ χ(b) Π_v Π_i …` to order `trunc` in `t`.
pub fn generating_series(aut: &TorusAutomorphism, trunc: usize) -> Result<TruncatedBiSeries> {
    let conductor = aut.n as u32;
    let psi = aut.psi();
    let mut total = TruncatedBiSeries::zero(conductor, trunc)?;
    for (d, weight) in weights_by_order(aut)? {
        if weight.is_zero() {
            continue;
        }
        let product = character_product(&psi, d, conductor, trunc)?;
        total = total.add(&product.scale(&weight));
    }
    Ok(total)
}

fn rational_value(x: &CyclotomicNumber, what: &str) -> Result<BigRational> {
    x.to_rational()
        .ok_or_else(|| Error::GaloisStability(format!("{what} is not rational: {x}")))
}

/// `L(ψ^[n], q)` via exact division of `q^{2n} [t^n](series)` by `L(ψ, q)`.
pub fn lefschetz_q(aut: &TorusAutomorphism) -> Result<LefschetzResult> {
    let n = aut.n as usize;
    let conductor = aut.n as u32;
    let series = generating_series(aut, n)?;
    let numerator = series.coeff(n).shift(2 * n as i64);
    if let Some(low) = numerator.min_exponent() {
        if low < 0 {
            return Err(Error::InvariantViolation(format!(
                "q^{{2n}}·[t^n] still has a q^{low} term"
            )));
        }
    }
    let surface = lefschetz_poly_surface(&aut.h).embed(conductor)?;
    let (quotient, remainder) = numerator.div_rem(&surface)?;
    if !remainder.is_zero() {
        return Err(Error::DivisionIdentity(format!("remainder {remainder} after dividing by L(ψ, q)")));
    }
    let mut poly = BTreeMap::new();
    let mut value = BigRational::zero();
    for (e, c) in quotient.terms() {
        let r = rational_value(c, &format!("coefficient of q^{e}"))?;
        value += &r;
        poly.insert(e, r);
    }
    if !value.is_integer() {
        return Err(Error::GaloisStability(format!("L(ψ^[n]) = {value} is not an integer")));
    }
    Ok(LefschetzResult { poly, value: value.to_integer() })
}

/// `[t^n] Σ_χ χ(b) Π_v exp(Σ_s det(1 − Ψ^s)/s · t^{v|χ|s})`, which should
/// equal `L(ψ) · L(ψ^[n])`.
pub fn corollary_value(aut: &TorusAutomorphism) -> Result<BigRational> {
    let n = aut.n as usize;
    let conductor = aut.n as u32;
    let psi = aut.psi();
    let id = IntMatrix::identity(4);
    let dets: Vec<BigInt> = (0..=n)
        .map(|s| if s == 0 { BigInt::zero() } else { (&id - &psi.pow(s as u32)).det() })
        .collect();
    let mut total = CyclotomicNumber::zero(conductor)?;
    for (d, weight) in weights_by_order(aut)? {
        let d = d as usize;
        let mut coeffs = vec![LaurentPoly::zero(conductor)?; n + 1];
        for v in (1..).take_while(|v| v * d <= n) {
            for s in (1..).take_while(|s| v * d * s <= n) {
                let c = BigRational::new(dets[s].clone(), BigInt::from(s));
                let term = LaurentPoly::monomial(CyclotomicNumber::from_rational(conductor, c)?, 0);
                coeffs[v * d * s] = &coeffs[v * d * s] + &term;
            }
        }
        let exp = TruncatedBiSeries::from_coeffs(conductor, n, coeffs)?.exp()?;
        let top = exp.coeff(n).coeff(0);
        total = total.checked_add(&top.checked_mul(&weight)?)?;
    }
    rational_value(&total, "corollary value")
}

/// `L(ψ) = det(1 − Ψ)`.
pub fn surface_value(h: &IntMatrix) -> BigInt {
    (&IntMatrix::identity(h.rows()) - &h.transpose()).det()
}

/// Whether `corollary_value = L(ψ) · L(ψ^[n])`.
pub fn corollary_holds(aut: &TorusAutomorphism, result: &LefschetzResult) -> Result<bool> {
    let lhs = corollary_value(aut)?;
    let rhs = BigRational::from_integer(surface_value(&aut.h) * &result.value);
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use num_traits::ToPrimitive;

    use super::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn companion5() -> IntMatrix {
        IntMatrix::from_rows(&[[0, 0, 0, -1], [1, 0, 0, -1], [0, 1, 0, -1], [0, 0, 1, -1]])
    }

    fn rat_poly(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_rational_terms(1, terms.iter().map(|&(e, c)| (e, BigRational::from_integer(c.into()))))
            .unwrap()
    }

    #[test]
    fn exterior_powers() {
        let id = IntMatrix::identity(4);
        assert_eq!(exterior_power(&id, 2), IntMatrix::identity(6));
        let m = companion5();
        assert_eq!(exterior_power(&m, 4), IntMatrix::from_rows(&[[1]]));
        assert_eq!(exterior_power(&m, 0), IntMatrix::from_rows(&[[1]]));
        let d = IntMatrix::diagonal(&ints(&[1, 1, -1, -1]));
        assert_eq!(exterior_power(&d, 2), IntMatrix::diagonal(&ints(&[1, -1, -1, -1, -1, 1])));
    }

    #[test]
    fn two_routes_to_det_one_minus() {
        let mats = [
            companion5(),
            IntMatrix::from_rows(&[[2, 1, 0, 3], [0, -1, 4, 1], [5, 0, 1, 1], [1, 1, 1, 0]]),
            IntMatrix::identity(4).scale(&BigInt::from(-1)),
        ];
        for m in &mats {
            assert_eq!(det_one_minus(m), det_one_minus_by_traces(m));
        }
    }

    #[test]
    fn surface_polynomials() {
        let id = IntMatrix::identity(4);
        assert_eq!(lefschetz_poly_surface(&id), rat_poly(&[(0, 1), (1, -4), (2, 6), (3, -4), (4, 1)]));
        assert_eq!(lefschetz_poly_surface(&-&id), rat_poly(&[(0, 1), (1, 4), (2, 6), (3, 4), (4, 1)]));
        assert_eq!(lefschetz_poly_surface(&companion5()), rat_poly(&[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1)]));
        assert_eq!(surface_value(&companion5()), BigInt::from(5));
    }

    #[test]
    fn fixed_character_counts() {
        let id = IntMatrix::identity(4);
        assert_eq!(fixed_characters(&id, 3).len(), 81);
        assert_eq!(fixed_characters(&id, 1), vec![CharacterClass { c: vec![0; 4], order: 1 }]);
        let h = companion5();
        let brute = (0..81u64)
            .filter(|idx| {
                let c: Vec<i64> = (0..4).rev().map(|j| ((idx / 3u64.pow(j)) % 3) as i64).collect();
                let cb = ints(&c);
                let img = h.transpose().mul_vec(&cb);
                img.iter().zip(&cb).all(|(x, y)| ((x - y) % BigInt::from(3)).is_zero())
            })
            .count();
        assert_eq!(fixed_characters(&h, 3).len(), brute);
        // Φ5(1) = 5 is a unit mod 3, so only c = 0 survives
        assert_eq!(brute, 1);
    }

    #[test]
    fn point_case_n1() {
        let aut = TorusAutomorphism::new(IntMatrix::identity(4), &[0; 4], 1).unwrap();
        let s = generating_series(&aut, 1).unwrap();
        assert_eq!(s.coeff(0), &LaurentPoly::one(1).unwrap());
        let r = lefschetz_q(&aut).unwrap();
        assert_eq!(r.value, BigInt::from(1));
        let minus = TorusAutomorphism::new(-&IntMatrix::identity(4), &[0; 4], 1).unwrap();
        assert_eq!(lefschetz_q(&minus).unwrap().value, BigInt::from(1));
        assert_eq!(corollary_value(&minus).unwrap(), BigRational::from_integer(16.into()));
    }

    #[test]
    fn identity_n3() {
        let aut = TorusAutomorphism::new(IntMatrix::identity(4), &[0; 4], 3).unwrap();
        let r = lefschetz_q(&aut).unwrap();
        assert_eq!(r.value, BigInt::from(108));
        let coeffs: Vec<i64> = (0..=8).map(|e| r.poly.get(&e).map_or(0, |c| c.to_integer().to_i64().unwrap())).collect();
        assert_eq!(coeffs, vec![1, 0, 7, -8, 108, -8, 7, 0, 1]);
        assert_eq!(corollary_value(&aut).unwrap(), BigRational::zero());
    }

    #[test]
    fn validation() {
        assert!(TorusAutomorphism::new(IntMatrix::identity(3), &[0; 3], 3).is_err());
        assert!(TorusAutomorphism::new(IntMatrix::identity(4).scale(&BigInt::from(2)), &[0; 4], 3).is_err());
        assert!(TorusAutomorphism::new(IntMatrix::identity(4), &[0; 3], 3).is_err());
        assert!(TorusAutomorphism::new(IntMatrix::identity(4), &[0; 4], 0).is_err());
        let a = TorusAutomorphism::new(IntMatrix::identity(4), &[-1, 4, 0, 2], 3).unwrap();
        assert_eq!(a.b(), &[2, 1, 0, 2]);
    }
}
