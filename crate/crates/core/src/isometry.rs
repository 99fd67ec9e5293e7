//! Prime-order isometries: invariant and coinvariant lattices and the
//! numerical invariants `(m, a, disc S)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::matrix::span_rational_columns;
use crate::algebra::{exact_sqrt, is_prime, IntMatrix, QMatrix};
use crate::error::{Error, Result};
use crate::lattice::{cartan_a, reduce_mod, Lattice, Sublattice};

/// A nontrivial isometry `φ` of prime order `p` (matrix acts on columns).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeIsometry {
    lattice: Lattice,
    matrix: IntMatrix,
    p: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsometryInvariants {
    pub p: u64,
    pub invariant: Sublattice,
    pub coinvariant: Sublattice,
    pub m: usize,
    pub a: usize,
    pub disc_s: BigInt,
}

/// The numbers only, for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantSummary {
    pub p: u64,
    pub rank_t: usize,
    pub rank_s: usize,
    pub m: usize,
    pub a: usize,
    pub disc_s: String,
}

impl IsometryInvariants {
    pub fn summary(&self) -> InvariantSummary {
        InvariantSummary {
            p: self.p,
            rank_t: self.invariant.rank(),
            rank_s: self.coinvariant.rank(),
            m: self.m,
            a: self.a,
            disc_s: self.disc_s.to_string(),
        }
    }
}

impl LatticeIsometry {
    pub fn new(lattice: Lattice, matrix: IntMatrix, p: u64) -> Result<Self> {
        let n = lattice.rank();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::Dimension(format!(
                "isometry matrix is {}x{}, lattice rank is {n}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if !is_prime(p) {
            return Err(Error::BadOrder(format!("order must be prime, got {p}")));
        }
        let g = lattice.gram();
        if &(&matrix.transpose() * g) * &matrix != *g {
            return Err(Error::NotAnIsometry);
        }
        if matrix.is_identity() {
            return Err(Error::BadOrder("order must be prime, matrix ≠ identity".into()));
        }
        let order = u32::try_from(p).map_err(|_| Error::BadOrder(format!("order {p} too large")))?;
        if !matrix.pow(order).is_identity() {
            return Err(Error::BadOrder(format!("matrix^{p} is not the identity")));
        }
        Ok(Self { lattice, matrix, p })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `T = ker(φ − 1)`.
    pub fn invariant_lattice(&self) -> Sublattice {
        let n = self.lattice.rank();
        let basis = (&self.matrix - &IntMatrix::identity(n)).integer_kernel();
        Sublattice::new(self.lattice.clone(), basis).expect("kernel basis is independent")
    }

    /// `S = T^⊥`, cross-checked against `ker Φ_p(φ)`.
    pub fn coinvariant_lattice(&self) -> Result<Sublattice> {
        let s = self.invariant_lattice().orthogonal_complement();
        let n = self.lattice.rank();
        let mut phi_p = IntMatrix::identity(n);
        let mut power = IntMatrix::identity(n);
        for _ in 1..self.p {
            power = &power * &self.matrix;
            phi_p = &phi_p + &power;
        }
        let kernel = phi_p.integer_kernel();
        if kernel.column_hnf() != s.basis().column_hnf() {
            return Err(Error::InvariantViolation(
                "orthogonal complement of T differs from ker Φ_p(φ)".into(),
            ));
        }
        Ok(s)
    }

    pub fn invariants(&self) -> Result<IsometryInvariants> {
        let t = self.invariant_lattice();
        let s = self.coinvariant_lattice()?;
        let n = self.lattice.rank();
        let p = self.p;
        if t.rank() + s.rank() != n {
            return Err(Error::InvariantViolation(format!(
                "rank T + rank S = {} + {} ≠ {n}",
                t.rank(),
                s.rank()
            )));
        }
        let pm1 = (p - 1) as usize;
        if s.rank() % pm1 != 0 {
            return Err(Error::InvariantViolation(format!(
                "rank S = {} is not divisible by p − 1 = {pm1}",
                s.rank()
            )));
        }
        let m = s.rank() / pm1;

        let stacked = IntMatrix::hstack(&[t.basis(), s.basis()]);
        let index = stacked.det().abs();
        let pb = BigInt::from(p);
        let mut a = 0;
        let mut rest = index.clone();
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            a += 1;
        }
        if !rest.is_one() {
            return Err(Error::InvariantViolation(format!("index [L : T ⊕ S] = {index} is not a power of {p}")));
        }
        let factors = stacked.smith().nontrivial_factors();
        if factors.iter().any(|d| *d != pb) || factors.len() != a {
            return Err(Error::InvariantViolation(format!(
                "L/(T ⊕ S) is not {p}-elementary (invariant factors {factors:?})"
            )));
        }
        let disc_s = s.gram().det().abs();
        Ok(IsometryInvariants { p, invariant: t, coinvariant: s, m, a, disc_s })
    }

    /// The same isometry written in the basis given by the columns of `u`
    /// (a unimodular matrix): `G ↦ uᵀGu`, `φ ↦ u⁻¹φu`.
    pub fn conjugate(&self, u: &IntMatrix) -> Result<Self> {
        if !u.is_square() || !u.det().abs().is_one() {
            return Err(Error::Dimension("change of basis must be unimodular".into()));
        }
        let u_inv = u.to_rational().inverse().and_then(|m| m.to_integer()).ok_or(Error::NotInvertible)?;
        let lattice = self.lattice.change_basis(u)?;
        let matrix = &(&u_inv * &self.matrix) * u;
        Self::new(lattice, matrix, self.p)
    }

    /// `φ ⊕ ψ` on the orthogonal sum of the two lattices.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::BadOrder(format!("orders differ: {} vs {}", self.p, other.p)));
        }
        Self::new(
            self.lattice.direct_sum(&other.lattice),
            IntMatrix::block_diag(&[&self.matrix, &other.matrix]),
            self.p,
        )
    }
}

/// `a ≤ m`.
pub fn check_rank_bound(inv: &IsometryInvariants) -> bool {
    inv.a <= inv.m
}

/// Whether `p^m · disc S` is a perfect square. Only stated for odd `p`.
pub fn check_square_theorem(inv: &IsometryInvariants) -> Result<bool> {
    if inv.p == 2 {
        return Err(Error::Hypothesis("the square theorem requires p ≠ 2".into()));
    }
    let value = BigInt::from(inv.p).pow(inv.m as u32) * &inv.disc_s;
    Ok(exact_sqrt(&value).is_some())
}

/// On a unimodular ambient lattice: `disc S = p^a` and `a ≡ m (mod 2)`.
pub fn check_unimodular_corollary(inv: &IsometryInvariants, lattice: &Lattice) -> Result<bool> {
    if inv.p == 2 {
        return Err(Error::Hypothesis("the unimodular corollary requires p ≠ 2".into()));
    }
    if !lattice.is_unimodular() {
        return Err(Error::Hypothesis(format!(
            "ambient lattice is not unimodular (|det| = {})",
            lattice.disc()
        )));
    }
    let expected = BigInt::from(inv.p).pow(inv.a as u32);
    Ok(inv.disc_s == expected && inv.a % 2 == inv.m % 2)
}

/// An overlattice `M ⊃ pieces` together with its basis expressed in the
/// coordinates of `pieces` (columns).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlattice {
    pub lattice: Lattice,
    pub basis: QMatrix,
}

impl Overlattice {
    /// Rewrites an isometry of `pieces` in the overlattice basis; fails if
    /// it does not preserve the overlattice.
    pub fn transport(&self, matrix: &IntMatrix) -> Result<IntMatrix> {
        let inv = self.basis.inverse().ok_or(Error::NotInvertible)?;
        (&(&inv * &matrix.to_rational()) * &self.basis)
            .to_integer()
            .ok_or(Error::NotAnIsometry)
    }
}

/// The lattice generated by `pieces` and the rational `glue` vectors (in
/// `pieces` coordinates). The result must again be even and integral.
pub fn overlattice_by_glue(pieces: &Lattice, glue: &[Vec<BigRational>]) -> Result<Overlattice> {
    let n = pieces.rank();
    if let Some(bad) = glue.iter().find(|g| g.len() != n) {
        return Err(Error::Dimension(format!("glue vector of length {} for rank {n}", bad.len())));
    }
    let two = BigRational::from_integer(BigInt::from(2));
    for g in glue {
        let q = pieces.pairing(g, g);
        if !reduce_mod(&q, &two).is_zero() {
            return Err(Error::NonIntegralOverlattice(format!("glue vector has norm {q}, not in 2Z")));
        }
    }
    let mut generators: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    generators.extend(glue.iter().cloned());
    let basis = span_rational_columns(n, &generators);
    let gram = &(&basis.transpose() * &pieces.gram().to_rational()) * &basis;
    let gram = gram
        .to_integer()
        .ok_or_else(|| Error::NonIntegralOverlattice("glue pairs non-integrally".into()))?;
    let lattice = Lattice::new(gram).map_err(|e| Error::NonIntegralOverlattice(e.to_string()))?;
    Ok(Overlattice { lattice, basis })
}

/// Ready-made isometries used as witnesses in tests and examples.
pub mod pool {
    use super::*;

    /// The cyclic isometry of `A_{p−1}` on simple roots:
    /// `e_1 ↦ e_2 ↦ … ↦ e_{p−1} ↦ −(e_1 + … + e_{p−1})`.
    pub fn cyclic_root_matrix(p: usize) -> IntMatrix {
        let r = p - 1;
        let mut m = IntMatrix::zeros(r, r);
        for i in 0..r {
            if i + 1 < r {
                m.set(i + 1, i, BigInt::one());
            }
            m.set(i, r - 1, -BigInt::one());
        }
        m
    }

    /// `A_{p−1}(k)` with its cyclic isometry.
    pub fn cyclic_root(p: u64, k: i64) -> Result<LatticeIsometry> {
        let r = (p - 1) as usize;
        let lattice = Lattice::new(cartan_a(r).scale(&BigInt::from(k)))?;
        LatticeIsometry::new(lattice, cyclic_root_matrix(p as usize), p)
    }

    /// Cyclic shift of the `p` summands of `L^p`.
    pub fn permutation(lattice: &Lattice, p: u64) -> Result<LatticeIsometry> {
        let r = lattice.rank();
        let copies: Vec<&IntMatrix> = std::iter::repeat_n(lattice.gram(), p as usize).collect();
        let gram = IntMatrix::block_diag(&copies);
        let n = r * p as usize;
        let mut m = IntMatrix::zeros(n, n);
        for block in 0..p as usize {
            let target = (block + 1) % p as usize;
            for i in 0..r {
                m.set(target * r + i, block * r + i, BigInt::one());
            }
        }
        LatticeIsometry::new(Lattice::new(gram)?, m, p)
    }

    /// `id` on `lattice` (as a summand to pad other isometries).
    pub fn identity_matrix(lattice: &Lattice) -> IntMatrix {
        IntMatrix::identity(lattice.rank())
    }

    /// First fundamental weight of `A_r` in simple-root coordinates.
    fn first_weight(r: usize) -> Vec<BigRational> {
        let inv = cartan_a(r).to_rational().inverse().expect("Cartan matrix is invertible");
        inv.column(0)
    }

    /// Even unimodular `A_{p−1}(−1) ⊕ A_{p−1}` glued along `(ω₁, ω₁)`, with
    /// the isometry `σ ⊕ σ` (`twist = true`) or `σ ⊕ id` (`twist = false`).
    pub fn glued_pair(p: u64, twist: bool) -> Result<LatticeIsometry> {
        let r = (p - 1) as usize;
        let neg = Lattice::new(cartan_a(r).scale(&BigInt::from(-1)))?;
        let pos = Lattice::new(cartan_a(r))?;
        let pieces = neg.direct_sum(&pos);
        let w = first_weight(r);
        let glue: Vec<BigRational> = w.iter().chain(w.iter()).cloned().collect();
        let over = overlattice_by_glue(&pieces, &[glue])?;
        let sigma = cyclic_root_matrix(p as usize);
        let second = if twist { sigma.clone() } else { IntMatrix::identity(r) };
        let phi = over.transport(&IntMatrix::block_diag(&[&sigma, &second]))?;
        LatticeIsometry::new(over.lattice, phi, p)
    }

    /// `E8(−1)` realised as `A4(−1) ⊕ A4(−1)` glued along `(ω₁, 2ω₁)`, with
    /// the isometry `σ ⊕ σ` or `σ ⊕ id`.
    pub fn e8_from_a4(twist: bool) -> Result<LatticeIsometry> {
        let a4 = Lattice::new(cartan_a(4).scale(&BigInt::from(-1)))?;
        let pieces = a4.direct_sum(&a4);
        let w = first_weight(4);
        let two = BigRational::from_integer(BigInt::from(2));
        let glue: Vec<BigRational> = w.iter().cloned().chain(w.iter().map(|x| x * &two)).collect();
        let over = overlattice_by_glue(&pieces, &[glue])?;
        let sigma = cyclic_root_matrix(5);
        let second = if twist { sigma.clone() } else { IntMatrix::identity(4) };
        let phi = over.transport(&IntMatrix::block_diag(&[&sigma, &second]))?;
        LatticeIsometry::new(over.lattice, phi, 5)
    }

    /// `E8(−1)` as `A2(−1)^4` glued by the tetracode, with `σ` on every
    /// summand: an order-3 isometry without fixed vectors.
    pub fn e8_from_a2(copies_rotated: usize) -> Result<LatticeIsometry> {
        let a2 = Lattice::new(cartan_a(2).scale(&BigInt::from(-1)))?;
        let pieces = Lattice::direct_sum_all(&[a2.clone(), a2.clone(), a2.clone(), a2]);
        let w = first_weight(2);
        let word = |code: [i64; 4]| -> Vec<BigRational> {
            code.iter()
                .flat_map(|&c| w.iter().map(move |x| x * BigRational::from_integer(BigInt::from(c))))
                .collect()
        };
        let over = overlattice_by_glue(&pieces, &[word([0, 1, 1, 1]), word([1, 0, 1, 2])])?;
        let sigma = cyclic_root_matrix(3);
        let id = IntMatrix::identity(2);
        let blocks: Vec<&IntMatrix> = (0..4).map(|i| if i < copies_rotated { &sigma } else { &id }).collect();
        let phi = over.transport(&IntMatrix::block_diag(&blocks))?;
        LatticeIsometry::new(over.lattice, phi, 3)
    }
}
