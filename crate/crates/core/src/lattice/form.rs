//! Finite quadratic forms (discriminant forms) and isomorphism testing.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::factorize;
use crate::error::{Error, Result};

/// Largest group order the brute-force isomorphism search accepts.
pub const ISOMORPHISM_SEARCH_CAP: u64 = 10_000;

/// `x mod m` as a representative in `[0, m)`.
pub fn reduce_mod(x: &BigRational, m: &BigRational) -> BigRational {
    x - m * (x / m).floor()
}

fn two() -> BigRational {
    BigRational::from_integer(BigInt::from(2))
}

/// A finite abelian group `⊕ Z/d_i` with a quadratic form into `Q/2Z`.
///
/// The generators `g_i` form a basis of the group (one cyclic factor each);
/// `q[i] = q(g_i) mod 2` and `b[i][j] = b(g_i, g_j) mod 1`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteQuadraticForm {
    orders: Vec<u64>,
    q: Vec<BigRational>,
    b: Vec<Vec<BigRational>>,
}

impl FiniteQuadraticForm {
    /// Validates and normalises a form. Generators of order 1 are dropped.
    pub fn new(orders: Vec<u64>, q: Vec<BigRational>, b: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = orders.len();
        if q.len() != n || b.len() != n || b.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidForm("orders, q-values and bilinear matrix disagree in size".into()));
        }
        if orders.contains(&0) {
            return Err(Error::InvalidForm("generator order must be positive".into()));
        }
        let one = BigRational::one();
        for i in 0..n {
            let d = BigRational::from_integer(orders[i].into());
            for j in 0..n {
                if reduce_mod(&(&b[i][j] - &b[j][i]), &one) != BigRational::zero() {
                    return Err(Error::InvalidForm(format!("bilinear form not symmetric at ({i},{j})")));
                }
                if !(&d * &b[i][j]).is_integer() {
                    return Err(Error::InvalidForm(format!("b(g{i}, g{j}) has denominator not dividing {}", orders[i])));
                }
            }
            if reduce_mod(&(&q[i] - &b[i][i]), &one) != BigRational::zero() {
                return Err(Error::InvalidForm(format!("q(g{i}) ≢ b(g{i}, g{i}) mod 1")));
            }
            if reduce_mod(&(&d * &d * &q[i]), &two()) != BigRational::zero() {
                return Err(Error::InvalidForm(format!("q is not well defined on generator {i}")));
            }
        }
        let keep: Vec<usize> = (0..n).filter(|&i| orders[i] > 1).collect();
        Ok(Self {
            orders: keep.iter().map(|&i| orders[i]).collect(),
            q: keep.iter().map(|&i| reduce_mod(&q[i], &two())).collect(),
            b: keep
                .iter()
                .map(|&i| keep.iter().map(|&j| reduce_mod(&b[i][j], &one)).collect())
                .collect(),
        })
    }

    pub fn trivial() -> Self {
        Self { orders: vec![], q: vec![], b: vec![] }
    }

    /// `Z/d(q)`: a cyclic group generated by an element of square `q`.
    pub fn cyclic(order: u64, q: BigRational) -> Result<Self> {
        Self::new(vec![order], vec![q.clone()], vec![vec![q]])
    }

    /// Convenience for `Z/d(num/den)`.
    pub fn cyclic_ratio(order: u64, num: i64, den: i64) -> Result<Self> {
        Self::cyclic(order, BigRational::new(num.into(), den.into()))
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn q_values(&self) -> &[BigRational] {
        &self.q
    }

    pub fn bilinear(&self) -> &[Vec<BigRational>] {
        &self.b
    }

    pub fn group_order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.orders.len();
        let m = other.orders.len();
        let mut b = vec![vec![BigRational::zero(); n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                b[i][j] = self.b[i][j].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                b[n + i][n + j] = other.b[i][j].clone();
            }
        }
        Self {
            orders: self.orders.iter().chain(&other.orders).copied().collect(),
            q: self.q.iter().chain(&other.q).cloned().collect(),
            b,
        }
    }

    /// The form `-q`.
    pub fn negate(&self) -> Self {
        Self {
            orders: self.orders.clone(),
            q: self.q.iter().map(|x| reduce_mod(&-x, &two())).collect(),
            b: self
                .b
                .iter()
                .map(|r| r.iter().map(|x| reduce_mod(&-x, &BigRational::one())).collect())
                .collect(),
        }
    }

    /// `q(x)` for `x = Σ x_i g_i`.
    pub fn eval_q(&self, x: &[u64]) -> BigRational {
        let mut acc = BigRational::zero();
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            let xi = BigRational::from_integer(x[i].into());
            acc += &xi * &xi * &self.q[i];
            for j in i + 1..x.len() {
                if x[j] != 0 {
                    acc += two() * &xi * BigRational::from_integer(x[j].into()) * &self.b[i][j];
                }
            }
        }
        reduce_mod(&acc, &two())
    }

    pub fn eval_b(&self, x: &[u64], y: &[u64]) -> BigRational {
        let mut acc = BigRational::zero();
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            for j in 0..y.len() {
                if y[j] != 0 {
                    acc += BigRational::from_integer((x[i] * y[j]).into()) * &self.b[i][j];
                }
            }
        }
        reduce_mod(&acc, &BigRational::one())
    }

    fn element_order(&self, x: &[u64]) -> u64 {
        x.iter()
            .zip(&self.orders)
            .fold(1, |acc, (&xi, &d)| acc.lcm(&(d / xi.gcd(&d))))
    }

    /// The `p`-primary component, generated by `(d_i / p^{e_i}) g_i`.
    pub fn primary_part(&self, p: u64) -> Self {
        let mut orders = Vec::new();
        let mut mult = Vec::new();
        for (i, &d) in self.orders.iter().enumerate() {
            let mut pe = 1;
            while d % (pe * p) == 0 {
                pe *= p;
            }
            if pe > 1 {
                orders.push(pe);
                mult.push((i, d / pe));
            }
        }
        let q = mult
            .iter()
            .map(|&(i, c)| {
                let c = BigRational::from_integer(c.into());
                reduce_mod(&(&c * &c * &self.q[i]), &two())
            })
            .collect();
        let b = mult
            .iter()
            .map(|&(i, ci)| {
                mult.iter()
                    .map(|&(j, cj)| {
                        reduce_mod(&(BigRational::from_integer((ci * cj).into()) * &self.b[i][j]), &BigRational::one())
                    })
                    .collect()
            })
            .collect();
        Self { orders, q, b }
    }

    /// Tests for a group isomorphism carrying one form to the other.
    ///
    /// Works prime by prime; each primary part is searched exhaustively over
    /// generator images, pruned by element order, `q`-value and pairings with
    /// previously placed generators.
    pub fn is_isomorphic(&self, other: &Self) -> Result<bool> {
        for f in [self, other] {
            let order = f.group_order();
            if order > ISOMORPHISM_SEARCH_CAP {
                return Err(Error::SearchCapExceeded { order, cap: ISOMORPHISM_SEARCH_CAP });
            }
        }
        if self.group_order() != other.group_order() {
            return Ok(false);
        }
        for (p, _) in factorize(self.group_order()) {
            let a = self.primary_part(p);
            let b = other.primary_part(p);
            let mut oa = a.orders.clone();
            let mut ob = b.orders.clone();
            oa.sort_unstable();
            ob.sort_unstable();
            if oa != ob || !primary_isomorphic(&a, &b) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn all_elements(orders: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &d in orders {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..d).map(move |k| {
                    let mut v = prefix.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
    }
    out
}

fn primary_isomorphic(source: &FiniteQuadraticForm, target: &FiniteQuadraticForm) -> bool {
    let elements = all_elements(&target.orders);
    let info: Vec<(u64, BigRational)> = elements
        .iter()
        .map(|x| (target.element_order(x), target.eval_q(x)))
        .collect();

    // place large-order generators first; they have the fewest candidates
    let mut gens: Vec<usize> = (0..source.orders.len()).collect();
    gens.sort_by(|&i, &j| source.orders[j].cmp(&source.orders[i]).then(i.cmp(&j)));

    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            (0..elements.len())
                .filter(|&e| info[e].0 == source.orders[g] && info[e].1 == source.q[g])
                .collect()
        })
        .collect();

    let mut chosen = Vec::with_capacity(gens.len());
    search(source, target, &elements, &gens, &candidates, &mut chosen)
}

fn search(
    source: &FiniteQuadraticForm,
    target: &FiniteQuadraticForm,
    elements: &[Vec<u64>],
    gens: &[usize],
    candidates: &[Vec<usize>],
    chosen: &mut Vec<usize>,
) -> bool {
    let k = chosen.len();
    if k == gens.len() {
        return generates(target, elements, chosen);
    }
    for &e in &candidates[k] {
        let fits = (0..k).all(|j| {
            target.eval_b(&elements[e], &elements[chosen[j]]) == source.b[gens[k]][gens[j]]
        });
        if !fits {
            continue;
        }
        chosen.push(e);
        if search(source, target, elements, gens, candidates, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

fn generates(target: &FiniteQuadraticForm, elements: &[Vec<u64>], chosen: &[usize]) -> bool {
    let orders = &target.orders;
    let zero = vec![0u64; orders.len()];
    let mut seen: HashSet<Vec<u64>> = HashSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for &g in chosen {
            let y: Vec<u64> = x
                .iter()
                .zip(&elements[g])
                .zip(orders)
                .map(|((a, b), d)| (a + b) % d)
                .collect();
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.len() as u64 == target.group_order()
}

impl fmt::Display for FiniteQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "0");
        }
        for (i, d) in self.orders.iter().enumerate() {
            if i > 0 {
                write!(f, " ⊕ ")?;
            }
            write!(f, "Z/{d}({})", self.q[i])?;
        }
        let off: Vec<String> = (0..self.orders.len())
            .flat_map(|i| (i + 1..self.orders.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.b[i][j].is_zero())
            .map(|(i, j)| format!("b(g{i},g{j})={}", self.b[i][j]))
            .collect();
        if !off.is_empty() {
            write!(f, " [{}]", off.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for FiniteQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(d: u64, n: i64, m: i64) -> FiniteQuadraticForm {
        FiniteQuadraticForm::cyclic_ratio(d, n, m).unwrap()
    }

    #[test]
    fn values_are_reduced() {
        let f = cyc(5, -2, 5);
        assert_eq!(f.q_values()[0], BigRational::new(8.into(), 5.into()));
        assert_eq!(f.bilinear()[0][0], BigRational::new(3.into(), 5.into()));
    }

    #[test]
    fn rejects_ill_defined_forms() {
        assert!(FiniteQuadraticForm::cyclic_ratio(5, 1, 3).is_err());
        assert!(FiniteQuadraticForm::cyclic_ratio(2, 1, 4).is_err());
        assert!(FiniteQuadraticForm::new(vec![0], vec![BigRational::zero()], vec![vec![BigRational::zero()]]).is_err());
    }

    #[test]
    fn squares_mod_five() {
        // 2 is not a square mod 5, so Z/5(2/5) and Z/5(4/5) differ
        assert!(!cyc(5, 2, 5).is_isomorphic(&cyc(5, 4, 5)).unwrap());
        // 4 * 2^2 = 16 ≡ 6 mod 10: Z/5(4/5) ≅ Z/5(6/5)
        assert!(cyc(5, 4, 5).is_isomorphic(&cyc(5, 6, 5)).unwrap());
        assert!(cyc(5, 2, 5).is_isomorphic(&cyc(5, 8, 5)).unwrap());
    }

    #[test]
    fn reflexive_and_order_mismatch() {
        let f = cyc(5, -2, 5).direct_sum(&cyc(2, -1, 2));
        assert!(f.is_isomorphic(&f).unwrap());
        assert!(!f.is_isomorphic(&cyc(5, -2, 5)).unwrap());
    }

    #[test]
    fn cyclic_ten_splits() {
        // 5-part generated by 2g, 2-part by 5g
        let f = cyc(10, -1, 10);
        let p5 = f.primary_part(5);
        let p2 = f.primary_part(2);
        assert_eq!(p5.orders(), &[5]);
        assert_eq!(p5.q_values()[0], reduce_mod(&BigRational::new((-4).into(), 10.into()), &two()));
        assert_eq!(p2.q_values()[0], reduce_mod(&BigRational::new((-25).into(), 10.into()), &two()));
        assert!(f.is_isomorphic(&p5.direct_sum(&p2)).unwrap());
    }

    #[test]
    fn hyperbolic_pair_mod_two() {
        // only Z/2(1/2) ⊕ Z/2(-1/2) has elements of square ±1/2
        let half = BigRational::new(1.into(), 2.into());
        let u2 = FiniteQuadraticForm::new(
            vec![2, 2],
            vec![BigRational::zero(), BigRational::zero()],
            vec![vec![BigRational::zero(), half.clone()], vec![half, BigRational::zero()]],
        )
        .unwrap();
        let other = cyc(2, 1, 2).direct_sum(&cyc(2, -1, 2));
        assert!(!u2.is_isomorphic(&other).unwrap());
        assert!(u2.is_isomorphic(&u2.negate()).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let big = cyc(10007, 2, 10007);
        assert!(matches!(big.is_isomorphic(&big), Err(Error::SearchCapExceeded { .. })));
    }
}
