//! Even integral lattices given by Gram matrices.

mod form;

pub use form::{reduce_mod, FiniteQuadraticForm, ISOMORPHISM_SEARCH_CAP};

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{IntMatrix, QMatrix};
use crate::error::{Error, Result};

/// An even lattice: symmetric, nondegenerate, even-diagonal Gram matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    name: Option<String>,
    gram: IntMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.plus, self.minus)
    }
}

/// `L^∨/L` as `⊕ Z/d_i` with dual-vector generators (coordinates in the
/// lattice basis, reduced into `[0,1)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantGroup {
    pub orders: Vec<BigInt>,
    pub generators: Vec<Vec<BigRational>>,
}

impl DiscriminantGroup {
    pub fn order(&self) -> BigInt {
        self.orders.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }
}

impl fmt::Display for DiscriminantGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self.orders.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

impl Lattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::InvalidLattice(format!(
                "Gram matrix is {}x{}, not square",
                gram.rows(),
                gram.cols()
            )));
        }
        if !gram.is_symmetric() {
            return Err(Error::InvalidLattice("Gram matrix is not symmetric".into()));
        }
        if (0..gram.rows()).any(|i| gram.get(i, i).is_odd()) {
            return Err(Error::InvalidLattice("lattice is not even (odd diagonal entry)".into()));
        }
        if gram.det().is_zero() {
            return Err(Error::InvalidLattice("Gram matrix is degenerate".into()));
        }
        Ok(Self { name: None, gram })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows))
    }

    /// Accepts a rational Gram matrix as long as it is integral and even.
    pub fn from_rational_gram(gram: &QMatrix) -> Result<Self> {
        let g = gram
            .to_integer()
            .ok_or_else(|| Error::InvalidLattice(format!("Gram matrix {gram:?} is not integral")))?;
        Self::new(g)
    }

    /// The rank-0 lattice, neutral for [`Lattice::direct_sum`].
    pub fn empty() -> Self {
        Self { name: None, gram: IntMatrix::zeros(0, 0) }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> BigInt {
        self.gram.det()
    }

    /// `|det gram|`, the order of the discriminant group.
    pub fn disc(&self) -> BigInt {
        self.det().abs()
    }

    pub fn is_unimodular(&self) -> bool {
        self.disc().is_one()
    }

    pub fn pairing(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        let g = self.gram.to_rational();
        x.iter().zip(g.mul_vec(y)).fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        let name = match (&self.name, &other.name) {
            (Some(a), Some(b)) => Some(format!("{a} ⊕ {b}")),
            (Some(a), None) if other.rank() == 0 => Some(a.clone()),
            (None, Some(b)) if self.rank() == 0 => Some(b.clone()),
            _ => None,
        };
        Lattice { name, gram: IntMatrix::block_diag(&[&self.gram, &other.gram]) }
    }

    pub fn direct_sum_all<'a>(parts: impl IntoIterator<Item = &'a Lattice>) -> Lattice {
        parts.into_iter().fold(Lattice::empty(), |acc, l| acc.direct_sum(l))
    }

    /// `L(k)`: the Gram matrix multiplied by `k`.
    pub fn rescale(&self, k: i64) -> Result<Lattice> {
        if k == 0 {
            return Err(Error::InvalidLattice("rescaling by 0".into()));
        }
        let scaled = Lattice::new(self.gram.scale(&BigInt::from(k)))?;
        Ok(match &self.name {
            Some(n) => scaled.with_name(format!("({n})({k})")),
            None => scaled,
        })
    }

    /// Gram matrix of the sublattice spanned by the columns of `basis`.
    pub fn change_basis(&self, basis: &IntMatrix) -> Result<Lattice> {
        Lattice::new(&(&basis.transpose() * &self.gram) * basis)
    }

    /// Exact inertia by congruence diagonalisation over `Q`.
    pub fn signature(&self) -> Signature {
        let (plus, minus, zero) = rational_inertia(&self.gram.to_rational());
        debug_assert_eq!(zero, 0, "nondegenerate lattice has no null directions");
        Signature { plus, minus }
    }

    pub fn discriminant_group(&self) -> DiscriminantGroup {
        let snf = self.gram.smith();
        let mut orders = Vec::new();
        let mut generators = Vec::new();
        for (i, d) in snf.diagonal().into_iter().enumerate() {
            if d.is_one() {
                continue;
            }
            let g = snf
                .v
                .column(i)
                .into_iter()
                .map(|x| reduce_mod(&BigRational::new(x, d.clone()), &BigRational::one()))
                .collect();
            orders.push(d);
            generators.push(g);
        }
        DiscriminantGroup { orders, generators }
    }

    pub fn discriminant_form(&self) -> Result<FiniteQuadraticForm> {
        let group = self.discriminant_group();
        let orders = group
            .orders
            .iter()
            .map(|d| {
                d.to_u64()
                    .ok_or_else(|| Error::InvalidForm(format!("discriminant group factor {d} too large")))
            })
            .collect::<Result<Vec<_>>>()?;
        let gens = &group.generators;
        let q = gens.iter().map(|g| self.pairing(g, g)).collect();
        let b = gens
            .iter()
            .map(|x| gens.iter().map(|y| self.pairing(x, y)).collect())
            .collect();
        FiniteQuadraticForm::new(orders, q, b)
    }

    /// `Some(a)` iff `D_L ≅ (Z/p)^a` (`a = 0` for unimodular lattices).
    pub fn p_elementary_exponent(&self, p: u64) -> Option<usize> {
        let group = self.discriminant_group();
        let p = BigInt::from(p);
        group.orders.iter().all(|d| *d == p).then_some(group.orders.len())
    }

    /// Parses and builds a named lattice: `U`, `U(k)`, `H5`, `<k>`, `E8`,
    /// `E8(k)`, `A<n>`, `A<n>(k)`, `A<n>*(k)` (dual of `A_n` rescaled by `k`).
    /// Unicode `−`, `⟨⟩` and `∗` are accepted.
    pub fn standard(name: &str) -> Result<Lattice> {
        let norm: String = name
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '−' => '-',
                '⟨' => '<',
                '⟩' => '>',
                '∗' => '*',
                c => c,
            })
            .collect();
        let unknown = || Error::UnknownLattice(name.to_string());
        let (base, scale) = split_scale(&norm).ok_or_else(unknown)?;
        let lattice = if let Some(inner) = base.strip_prefix('<').and_then(|s| s.strip_suffix('>')) {
            if scale.is_some() {
                return Err(unknown());
            }
            let k: i64 = inner.parse().map_err(|_| unknown())?;
            if k == 0 || k % 2 != 0 {
                return Err(Error::InvalidLattice(format!("⟨{k}⟩ is not an even nondegenerate lattice")));
            }
            Lattice::from_rows(&[[k]])?
        } else {
            let unscaled = match base {
                "U" => hyperbolic_plane(),
                "H5" => Lattice::from_rows(&[[2, 1], [1, -2]])?,
                "E8" => e8(),
                _ => {
                    if let Some(n) = base.strip_prefix('A').and_then(|s| s.strip_suffix('*')) {
                        let n: usize = n.parse().map_err(|_| unknown())?;
                        let k = scale.ok_or_else(unknown)?;
                        let inv = cartan_a(n).to_rational().inverse().expect("Cartan matrix invertible");
                        let scaled = inv.scale(&BigRational::from_integer(k.into()));
                        return Ok(Lattice::from_rational_gram(&scaled)?.with_name(canonical_name(base, Some(k))));
                    }
                    let n: usize = base.strip_prefix('A').ok_or_else(unknown)?.parse().map_err(|_| unknown())?;
                    if n == 0 {
                        return Err(unknown());
                    }
                    Lattice::new(cartan_a(n))?
                }
            };
            match scale {
                Some(k) => Lattice::new(unscaled.gram.scale(&BigInt::from(k)))?,
                None => unscaled,
            }
        };
        Ok(lattice.with_name(canonical_name(base, scale)))
    }

    /// Orthogonal sums of named lattices, e.g. `U ⊕ E8(-1)^2 ⊕ <-2>`
    /// (`+` also separates summands, `^k` repeats one).
    pub fn from_expression(expr: &str) -> Result<Lattice> {
        let mut parts = Vec::new();
        for term in expr.split(['⊕', '+']) {
            let term = term.trim();
            if term.is_empty() {
                return Err(Error::UnknownLattice(expr.to_string()));
            }
            let (name, copies) = match term.rsplit_once('^') {
                Some((name, k)) => {
                    let k: usize = k.trim().parse().map_err(|_| Error::UnknownLattice(term.to_string()))?;
                    (name.trim(), k)
                }
                None => (term, 1),
            };
            let lattice = Lattice::standard(name)?;
            parts.extend(std::iter::repeat_n(lattice, copies));
        }
        let name = expr.split_whitespace().collect::<Vec<_>>().join(" ");
        Ok(Lattice::direct_sum_all(&parts).with_name(name))
    }
}

fn canonical_name(base: &str, scale: Option<i64>) -> String {
    let base = match base.strip_prefix('<').and_then(|s| s.strip_suffix('>')) {
        Some(k) => format!("⟨{k}⟩"),
        None => base.to_string(),
    };
    match scale {
        Some(k) => format!("{base}({k})"),
        None => base,
    }
}

/// Splits `X(k)` into `("X", Some(k))`; plain names give `(name, None)`.
fn split_scale(s: &str) -> Option<(&str, Option<i64>)> {
    match s.strip_suffix(')') {
        Some(rest) => {
            let open = rest.rfind('(')?;
            let k: i64 = rest[open + 1..].parse().ok()?;
            if k == 0 {
                return None;
            }
            Some((&rest[..open], Some(k)))
        }
        None => Some((s, None)),
    }
}

fn hyperbolic_plane() -> Lattice {
    Lattice::from_rows(&[[0, 1], [1, 0]]).expect("U is even unimodular")
}

fn e8() -> Lattice {
    Lattice::from_rows(&[
        [2, 0, -1, 0, 0, 0, 0, 0],
        [0, 2, 0, -1, 0, 0, 0, 0],
        [-1, 0, 2, -1, 0, 0, 0, 0],
        [0, -1, -1, 2, -1, 0, 0, 0],
        [0, 0, 0, -1, 2, -1, 0, 0],
        [0, 0, 0, 0, -1, 2, -1, 0],
        [0, 0, 0, 0, 0, -1, 2, -1],
        [0, 0, 0, 0, 0, 0, -1, 2],
    ])
    .expect("E8 is even unimodular")
}

/// Cartan matrix of `A_n` (simple-root Gram matrix).
pub fn cartan_a(n: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        m.set(i, i, BigInt::from(2));
        if i + 1 < n {
            m.set(i, i + 1, BigInt::from(-1));
            m.set(i + 1, i, BigInt::from(-1));
        }
    }
    m
}

/// Counts `(positive, negative, zero)` directions of a rational symmetric
/// matrix, eliminating with 1×1 pivots on nonzero diagonal entries and 2×2
/// hyperbolic pivots when the remaining diagonal vanishes.
pub fn rational_inertia(m: &QMatrix) -> (usize, usize, usize) {
    let n = m.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n).map(|r| (0..n).map(|c| m.get(r, c).clone()).collect()).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let (mut plus, mut minus) = (0, 0);
    while !active.is_empty() {
        if let Some(pos) = active.iter().position(|&i| !a[i][i].is_zero()) {
            let i = active.remove(pos);
            let p = a[i][i].clone();
            if p.is_positive() {
                plus += 1;
            } else {
                minus += 1;
            }
            for &j in &active {
                if a[j][i].is_zero() {
                    continue;
                }
                let f = &a[j][i] / &p;
                for &k in &active {
                    let s = &f * &a[i][k];
                    a[j][k] -= s;
                }
            }
            continue;
        }
        let pair = active
            .iter()
            .enumerate()
            .flat_map(|(x, &i)| active[x + 1..].iter().map(move |&j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero());
        let Some((i, j)) = pair else { break };
        // block [[0, c], [c, 0]] has one positive and one negative direction
        plus += 1;
        minus += 1;
        active.retain(|&k| k != i && k != j);
        let c = a[i][j].clone();
        let snapshot = a.clone();
        for &k in &active {
            for &l in &active {
                let corr = (&snapshot[k][i] * &snapshot[j][l] + &snapshot[k][j] * &snapshot[i][l]) / &c;
                a[k][l] -= corr;
            }
        }
    }
    let zero = n - plus - minus;
    (plus, minus, zero)
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "Lattice{}", self.gram),
        }
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => write!(f, "{n} {}", self.gram),
            None => write!(f, "{}", self.gram),
        }
    }
}

/// A sublattice given by ambient coordinates of its basis (as columns).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    ambient: Lattice,
    basis: IntMatrix,
}

impl Sublattice {
    pub fn new(ambient: Lattice, basis: IntMatrix) -> Result<Self> {
        if basis.rows() != ambient.rank() {
            return Err(Error::Dimension(format!(
                "basis vectors have {} coordinates, ambient rank is {}",
                basis.rows(),
                ambient.rank()
            )));
        }
        if basis.rank() != basis.cols() {
            return Err(Error::InvalidLattice("sublattice basis is not linearly independent".into()));
        }
        Ok(Self { ambient, basis })
    }

    pub fn ambient(&self) -> &Lattice {
        &self.ambient
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// `basisᵀ · G · basis`.
    pub fn gram(&self) -> IntMatrix {
        &(&self.basis.transpose() * self.ambient.gram()) * &self.basis
    }

    /// The induced lattice; fails if the restricted form is degenerate.
    pub fn to_lattice(&self) -> Result<Lattice> {
        Lattice::new(self.gram())
    }

    pub fn is_primitive(&self) -> bool {
        self.basis.column_hnf() == self.basis.saturation()
    }

    /// Primitive closure `(M ⊗ Q) ∩ L`.
    pub fn saturate(&self) -> Sublattice {
        Sublattice { ambient: self.ambient.clone(), basis: self.basis.saturation() }
    }

    /// All ambient vectors orthogonal to this sublattice (always saturated).
    pub fn orthogonal_complement(&self) -> Sublattice {
        let constraints = &self.basis.transpose() * self.ambient.gram();
        Sublattice { ambient: self.ambient.clone(), basis: constraints.integer_kernel() }
    }
}
