//! Seeded generators and property suites shared by the property tests and
//! the acceptance target. `HKFOUR_SEED` overrides the default seed.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hkfour_core::algebra::{CyclotomicNumber, IntMatrix, LaurentPoly, TruncatedBiSeries};
use hkfour_core::isometry::{
    check_rank_bound, check_square_theorem, check_unimodular_corollary, pool, LatticeIsometry,
};
use hkfour_core::lattice::{FiniteQuadraticForm, Lattice, Sublattice, ISOMORPHISM_SEARCH_CAP};
use hkfour_core::lefschetz::catalog::{CatalogTorus, TYPES};
use hkfour_core::lefschetz::{lefschetz_q, TorusAutomorphism};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;
pub const CASES: usize = 200;

pub fn seed() -> u64 {
    match std::env::var("HKFOUR_SEED") {
        Ok(s) => s.trim().parse().unwrap_or_else(|_| panic!("HKFOUR_SEED must be an integer, got {s:?}")),
        Err(_) => DEFAULT_SEED,
    }
}

/// One independent stream per suite, so suites do not shift each other.
pub fn rng(label: &str) -> ChaCha8Rng {
    // FNV-1a, fixed across toolchains
    let h = label.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    ChaCha8Rng::seed_from_u64(seed() ^ h)
}

pub fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(int(n), int(d))
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data = (0..rows * cols).map(|_| int(rng.gen_range(-bound..=bound))).collect();
    IntMatrix::from_vec(rows, cols, data)
}

/// Product of random elementary column operations with ±1 multipliers.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize, steps: usize) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    if n < 2 {
        return u;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let k = int(if rng.gen_bool(0.5) { 1 } else { -1 });
        for r in 0..n {
            let v = u.get(r, i) + &k * u.get(r, j);
            u.set(r, i, v);
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    u.select_columns(perm)
}

/// A random even nondegenerate Gram matrix, `Aᵀ G₀ A` for a diagonal even `G₀`.
pub fn random_even_lattice(rng: &mut ChaCha8Rng, n: usize) -> Lattice {
    loop {
        let diag: Vec<BigInt> = (0..n).map(|_| int(2 * *[-3, -2, -1, 1, 2, 3].choose(rng).unwrap())).collect();
        let a = random_matrix(rng, n, n, 2);
        if a.det().is_zero() {
            continue;
        }
        let g = &(&a.transpose() * &IntMatrix::diagonal(&diag)) * &a;
        if let Ok(l) = Lattice::new(g) {
            return l;
        }
    }
}

fn lattice(name: &str) -> Lattice {
    Lattice::from_expression(name).expect("builtin lattice")
}

/// `φ ⊕ id_pad`.
fn pad(phi: &LatticeIsometry, padding: &Lattice) -> LatticeIsometry {
    LatticeIsometry::new(
        phi.lattice().direct_sum(padding),
        IntMatrix::block_diag(&[phi.matrix(), &IntMatrix::identity(padding.rank())]),
        phi.p(),
    )
    .expect("padding keeps an isometry")
}

/// One building block of order `p`. `unimodular` restricts to blocks on
/// unimodular lattices.
fn block(rng: &mut ChaCha8Rng, p: u64, unimodular: bool) -> LatticeIsometry {
    // glued pairs and permutations of U have rank 2(p−1) or 2p: too big at 23
    let mut options: Vec<u8> = if p == 23 { vec![] } else { vec![0, 1, 2] };
    if !unimodular {
        options.extend([3, 4]);
    }
    if p == 3 || p == 5 {
        options.push(5);
    }
    match *options.choose(rng).unwrap() {
        0 => pool::glued_pair(p, rng.gen_bool(0.5)).expect("glued pair"),
        1 => {
            let base = if p >= 7 { lattice("U") } else { lattice(["U", "E8(-1)"].choose(rng).unwrap()) };
            pool::permutation(&base, p).expect("permutation")
        }
        2 => {
            // a unimodular block with fixed part: σ on a glued pair plus identity on U
            let phi = pool::glued_pair(p, rng.gen_bool(0.5)).expect("glued pair");
            pad(&phi, &lattice("U"))
        }
        3 => pool::cyclic_root(p, *[-1i64, 1, 2, -3].choose(rng).unwrap()).expect("cyclic root"),
        4 => {
            let base = lattice(["<2>", "<-2>", "H5", "A2(-1)"].choose(rng).unwrap());
            let base = if p == 23 { lattice(["<2>", "<-4>"].choose(rng).unwrap()) } else { base };
            pool::permutation(&base, p).expect("permutation")
        }
        _ if p == 5 => pool::e8_from_a4(rng.gen_bool(0.5)).expect("E8 from A4"),
        _ => pool::e8_from_a2(rng.gen_range(1..=4)).expect("E8 from A2"),
    }
}

pub const POOL_PRIMES: [u64; 5] = [2, 3, 5, 7, 23];
const RANK_CAP: usize = 28;

/// A pool isometry: one to three blocks, optional identity padding, then a
/// random unimodular change of basis.
pub fn pool_member(rng: &mut ChaCha8Rng, p: u64, unimodular: bool) -> LatticeIsometry {
    let mut phi = block(rng, p, unimodular);
    for _ in 0..rng.gen_range(0..3) {
        let next = block(rng, p, unimodular);
        if phi.lattice().rank() + next.lattice().rank() > RANK_CAP {
            break;
        }
        phi = phi.direct_sum(&next).expect("same order");
    }
    if rng.gen_bool(0.5) {
        let choices: &[&str] = if unimodular { &["U", "E8(-1)"] } else { &["U", "<-2>", "H5", "A4(-1)"] };
        let padding = lattice(choices.choose(rng).unwrap());
        if phi.lattice().rank() + padding.rank() <= RANK_CAP + 8 {
            phi = pad(&phi, &padding);
        }
    }
    let n = phi.lattice().rank();
    let steps = rng.gen_range(0..=n);
    phi.conjugate(&random_unimodular(rng, n, steps)).expect("unimodular conjugation")
}

pub type SuiteResult = Result<usize, String>;

/// `a ≤ m` on the pool, all primes including 2.
pub fn suite_rank_bound(cases: usize) -> SuiteResult {
    let mut rng = rng("rank-bound");
    for case in 0..cases {
        let p = *POOL_PRIMES.choose(&mut rng).unwrap();
        let phi = pool_member(&mut rng, p, false);
        let inv = phi.invariants().map_err(|e| format!("case {case}: {e}"))?;
        if !check_rank_bound(&inv) {
            return Err(format!("case {case}: p={p} m={} a={}", inv.m, inv.a));
        }
    }
    Ok(cases)
}

/// `p^m · disc S` is a perfect square, odd primes.
pub fn suite_square(cases: usize) -> SuiteResult {
    let mut rng = rng("square");
    for case in 0..cases {
        let p = *POOL_PRIMES[1..].choose(&mut rng).unwrap();
        let phi = pool_member(&mut rng, p, false);
        let inv = phi.invariants().map_err(|e| format!("case {case}: {e}"))?;
        if !check_square_theorem(&inv).map_err(|e| e.to_string())? {
            return Err(format!("case {case}: p={p} m={} disc S={}", inv.m, inv.disc_s));
        }
    }
    Ok(cases)
}

/// `disc S = p^a` and `a ≡ m (mod 2)` on unimodular pool members.
pub fn suite_unimodular(cases: usize) -> SuiteResult {
    let mut rng = rng("unimodular");
    let mut positive_a = 0;
    for case in 0..cases {
        let p = *[3u64, 5, 7].choose(&mut rng).unwrap();
        let phi = pool_member(&mut rng, p, true);
        if !phi.lattice().is_unimodular() {
            return Err(format!("case {case}: pool produced a non-unimodular lattice"));
        }
        let inv = phi.invariants().map_err(|e| format!("case {case}: {e}"))?;
        positive_a += usize::from(inv.a > 0);
        if !check_unimodular_corollary(&inv, phi.lattice()).map_err(|e| e.to_string())? {
            return Err(format!("case {case}: p={p} m={} a={} disc S={}", inv.m, inv.a, inv.disc_s));
        }
    }
    if positive_a == 0 {
        return Err("pool never produced a > 0".into());
    }
    Ok(cases)
}

/// SNF, kernel and orthogonal-complement invariants on random matrices.
pub fn suite_linear_algebra(cases: usize) -> SuiteResult {
    let mut rng = rng("linear-algebra");
    for case in 0..cases {
        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(1..=6);
        let m = random_matrix(&mut rng, rows, cols, 9);
        let s = m.smith();
        let fail = |what: &str| Err(format!("case {case}: {what} for {:?}", m.to_rows()));
        if &(&s.u * &m) * &s.v != s.d {
            return fail("U·M·V ≠ D");
        }
        if !s.u.det().abs().is_one() || !s.v.det().abs().is_one() {
            return fail("transform not unimodular");
        }
        let diag = s.diagonal();
        let r = s.rank();
        if r != m.rank() || diag[..r].iter().any(|d| !d.is_positive()) || diag[r..].iter().any(|d| !d.is_zero()) {
            return fail("rank / sign of invariant factors");
        }
        if diag[..r].windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return fail("invariant factors do not divide");
        }
        if rows == cols && m.det().abs() != diag.iter().fold(BigInt::one(), |a, d| a * d) {
            return fail("|det| ≠ product of invariant factors");
        }

        let k = m.integer_kernel();
        if k.cols() != cols - r || !(&m * &k).is_zero() {
            return fail("kernel");
        }
        if k.cols() > 0 && (k.rank() != k.cols() || k.column_hnf() != k.saturation()) {
            return fail("kernel not a primitive basis");
        }

        let n = rng.gen_range(2..=6);
        let l = random_even_lattice(&mut rng, n);
        let sub_rank = rng.gen_range(1..n);
        let b = loop {
            let b = random_matrix(&mut rng, n, sub_rank, 3);
            if b.rank() == sub_rank {
                break b;
            }
        };
        let sub = Sublattice::new(l.clone(), b.clone()).map_err(|e| e.to_string())?;
        let c = sub.orthogonal_complement();
        if !(&(&b.transpose() * l.gram()) * c.basis()).is_zero() {
            return fail("complement not orthogonal");
        }
        if c.rank() != n - sub_rank || !c.is_primitive() {
            return fail("complement rank / primitivity");
        }
        if !sub.saturate().is_primitive() {
            return fail("saturation not primitive");
        }
        // (L^⊥)^⊥ is the saturation of L
        let cc = c.orthogonal_complement();
        if cc.basis().column_hnf() != b.saturation() {
            return fail("double complement ≠ saturation");
        }
    }
    Ok(cases)
}

pub fn random_cyclotomic(rng: &mut ChaCha8Rng, conductor: u32) -> CyclotomicNumber {
    let len = rng.gen_range(1..=10);
    let poly = (0..len).map(|_| rat(rng.gen_range(-5..=5), rng.gen_range(1..=4))).collect();
    CyclotomicNumber::from_polynomial(conductor, poly)
}

/// Field axioms in `Q(ζ_N)`, embeddings, and series inversion.
pub fn suite_cyclotomic(cases: usize) -> SuiteResult {
    let mut rng = rng("cyclotomic");
    for case in 0..cases {
        let n = rng.gen_range(1..=60u32);
        let (x, y, z) = (random_cyclotomic(&mut rng, n), random_cyclotomic(&mut rng, n), random_cyclotomic(&mut rng, n));
        let fail = |what: &str| Err(format!("case {case}, N={n}: {what}"));
        if &x + &y != &y + &x || &x * &y != &y * &x {
            return fail("commutativity");
        }
        if &(&x + &y) + &z != &x + &(&y + &z) || &(&x * &y) * &z != &x * &(&y * &z) {
            return fail("associativity");
        }
        if &x * &(&y + &z) != &(&x * &y) + &(&x * &z) {
            return fail("distributivity");
        }
        if !(&x + &(-&x)).is_zero() || &x * &CyclotomicNumber::one(n).unwrap() != x {
            return fail("identities");
        }
        if !x.is_zero() && !(&x * &x.inverse().map_err(|e| e.to_string())?).is_one() {
            return fail("inverse");
        }
        let k = rng.gen_range(-100..100i64);
        let zk = CyclotomicNumber::zeta_power(n, k).unwrap();
        if &zk * &CyclotomicNumber::zeta_power(n, -k).unwrap() != CyclotomicNumber::one(n).unwrap() {
            return fail("ζ^k ζ^-k ≠ 1");
        }
        let mult = rng.gen_range(1..=(60 / n));
        let target = n * mult;
        let (ex, ey) = (x.embed(target).unwrap(), y.embed(target).unwrap());
        if ex.checked_mul(&ey).unwrap() != (&x * &y).embed(target).unwrap()
            || ex.checked_add(&ey).unwrap() != (&x + &y).embed(target).unwrap()
        {
            return fail("embedding is not a homomorphism");
        }

        let order = rng.gen_range(1..=4);
        let mut coeffs = vec![LaurentPoly::monomial(random_unit(&mut rng, n), rng.gen_range(-3..=3))];
        for _ in 0..order {
            let terms = (0..rng.gen_range(0..3))
                .map(|_| LaurentPoly::monomial(random_cyclotomic(&mut rng, n), rng.gen_range(-4..=4)))
                .fold(LaurentPoly::zero(n).unwrap(), |acc, t| &acc + &t);
            coeffs.push(terms);
        }
        let s = TruncatedBiSeries::from_coeffs(n, order, coeffs).unwrap();
        let prod = s.mul(&s.invert().map_err(|e| e.to_string())?);
        if prod != TruncatedBiSeries::one(n, order).unwrap() {
            return fail("series times inverse ≠ 1");
        }
    }
    Ok(cases)
}

/// `r·ζ^k` with `r` a small nonzero rational.
fn random_unit(rng: &mut ChaCha8Rng, n: u32) -> CyclotomicNumber {
    let r = rat(*[-3i64, -2, -1, 1, 2, 3].choose(rng).unwrap(), rng.gen_range(1..=3));
    CyclotomicNumber::zeta_power(n, rng.gen_range(0..n as i64)).unwrap().scale(&r)
}

/// `L(ψ^[n], q)` is unchanged by `b ↦ b + (H − I)c`: conjugating by a
/// translation.
pub fn suite_b_shift(cases: usize) -> SuiteResult {
    let mut rng = rng("b-shift");
    let tori: Vec<CatalogTorus> = TYPES.map(|t| CatalogTorus::new(t).unwrap()).collect();
    for case in 0..cases {
        let torus = tori.choose(&mut rng).unwrap();
        let h = if rng.gen_bool(0.5) { -&torus.h } else { torus.h.clone() };
        let b: Vec<i64> = (0..4).map(|_| rng.gen_range(0..3)).collect();
        let c: Vec<BigInt> = (0..4).map(|_| int(rng.gen_range(-4..=4))).collect();
        let shift = (&h - &IntMatrix::identity(4)).mul_vec(&c);
        let b2: Vec<i64> = b
            .iter()
            .zip(&shift)
            .map(|(x, s)| (int(*x) + s).mod_floor(&int(3)).try_into().unwrap())
            .collect();
        let a = lefschetz_q(&TorusAutomorphism::new(h.clone(), &b, 3).unwrap()).map_err(|e| e.to_string())?;
        let a2 = lefschetz_q(&TorusAutomorphism::new(h.clone(), &b2, 3).unwrap()).map_err(|e| e.to_string())?;
        if a != a2 {
            return Err(format!("case {case}: type {}, b {b:?} vs {b2:?}", torus.torus_type));
        }
    }
    Ok(cases)
}

/// Discriminant forms are invariant under change of basis, and `q ⊕ −q`
/// against itself under a shuffled presentation.
pub fn suite_fqf(cases: usize) -> SuiteResult {
    let mut rng = rng("fqf");
    let names = ["H5", "A4(-1)", "<-2>", "<10>", "U(5)", "A2", "<-6>", "E8(-1)", "A4*(-5)", "U(3)"];
    for case in 0..cases {
        // resample until the discriminant group is small enough to search
        let (parts, l) = loop {
            let k = rng.gen_range(1..=3);
            let parts: Vec<Lattice> = (0..k).map(|_| lattice(names.choose(&mut rng).unwrap())).collect();
            let l = Lattice::direct_sum_all(&parts);
            if l.disc() <= BigInt::from(ISOMORPHISM_SEARCH_CAP) {
                break (parts, l);
            }
        };
        let n = l.rank();
        let steps = rng.gen_range(0..=2 * n);
        let l2 = l.change_basis(&random_unimodular(&mut rng, n, steps)).map_err(|e| e.to_string())?;
        let (f, f2) = (l.discriminant_form().unwrap(), l2.discriminant_form().unwrap());
        if !f.is_isomorphic(&f2).map_err(|e| e.to_string())? {
            return Err(format!("case {case}: change of basis changed the form of {:?}", l.gram().to_rows()));
        }
        let by_parts = parts.iter().fold(FiniteQuadraticForm::trivial(), |acc, p| {
            acc.direct_sum(&p.discriminant_form().unwrap())
        });
        if !by_parts.is_isomorphic(&f2).map_err(|e| e.to_string())? {
            return Err(format!("case {case}: form of a sum ≠ sum of forms"));
        }
        // isomorphism testing is symmetric
        if f.group_order() > 1 && f.is_isomorphic(&f.negate()).unwrap() != f.negate().is_isomorphic(&f).unwrap() {
            return Err(format!("case {case}: isomorphism not symmetric"));
        }
    }
    Ok(cases)
}
