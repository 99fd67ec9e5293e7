//! The classification table of order-5 nonsymplectic actions on the
//! rank-23 lattice `U^3 ⊕ E8(−1)^2 ⊕ ⟨−2⟩`, with checks of every numerical
//! condition the table has to satisfy.
//!
//! Only necessary conditions are verified. Existence of the lattices in
//! each genus and uniqueness of the embeddings are not decided here.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::Result;
use crate::lattice::{FiniteQuadraticForm, Lattice, Signature};

pub const AMBIENT_RANK: usize = 23;
pub const PRIME: u64 = 5;

#[derive(Clone, Debug)]
pub struct ClassificationRow {
    pub m: usize,
    pub a: usize,
    pub s: Lattice,
    pub t: Lattice,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowReport {
    pub m: usize,
    pub a: usize,
    pub s: String,
    pub t: String,
    pub rank_s: usize,
    pub rank_t: usize,
    pub signature_s: Signature,
    pub signature_t: Signature,
    pub disc_group_s: Vec<String>,
    pub disc_group_t: Vec<String>,
    pub checks: Vec<Check>,
}

impl RowReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// The eight rows `(m, a, S, T)`, in table order.
pub fn table_rows() -> Vec<ClassificationRow> {
    const ROWS: [(usize, usize, &str, &str); 8] = [
        (1, 1, "U ⊕ H5", "E8(-1)^2 ⊕ H5 ⊕ <-2>"),
        (2, 2, "U ⊕ H5 ⊕ A4(-1)", "E8(-1) ⊕ H5 ⊕ A4(-1) ⊕ <-2>"),
        (3, 1, "U ⊕ E8(-1) ⊕ H5", "E8(-1) ⊕ H5 ⊕ <-2>"),
        (3, 3, "U ⊕ H5 ⊕ A4(-1)^2", "H5 ⊕ A4(-1)^2 ⊕ <-2>"),
        (4, 2, "U ⊕ E8(-1) ⊕ H5 ⊕ A4(-1)", "H5 ⊕ A4(-1) ⊕ <-2>"),
        (4, 4, "U(5) ⊕ E8(-1) ⊕ H5 ⊕ A4(-1)", "H5 ⊕ A4*(-5) ⊕ <-2>"),
        (5, 1, "U ⊕ E8(-1)^2 ⊕ H5", "H5 ⊕ <-2>"),
        (5, 3, "U ⊕ E8(-1) ⊕ H5 ⊕ A4(-1)^2", "U(5) ⊕ <-10>"),
    ];
    ROWS.iter()
        .map(|&(m, a, s, t)| ClassificationRow {
            m,
            a,
            s: Lattice::from_expression(s).expect("table lattices are well formed"),
            t: Lattice::from_expression(t).expect("table lattices are well formed"),
        })
        .collect()
}

/// All `(m, a)` with `4m ≤ 23`, `a ≤ min(m, 23 − 4m)` and `a ≡ m (mod 2)`.
pub fn candidate_pairs() -> Vec<(usize, usize)> {
    let rank_s = |m: usize| (PRIME as usize - 1) * m;
    let mut out = Vec::new();
    for m in (1..).take_while(|&m| rank_s(m) <= AMBIENT_RANK) {
        let bound = m.min(AMBIENT_RANK - rank_s(m));
        out.extend((0..=bound).filter(|a| a % 2 == m % 2).map(|a| (m, a)));
    }
    out
}

/// The 2-part of the discriminant form of the ambient lattice.
pub fn ambient_two_part() -> FiniteQuadraticForm {
    FiniteQuadraticForm::cyclic_ratio(2, -1, 2).expect("valid form")
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> Check {
    Check { name, passed, detail: detail.into() }
}

fn orders_as_strings(lattice: &Lattice) -> Vec<String> {
    lattice.discriminant_group().orders.iter().map(BigInt::to_string).collect()
}

pub fn verify_row(row: &ClassificationRow) -> Result<RowReport> {
    let (m, a) = (row.m, row.a);
    let p = PRIME;
    let rank_s = row.s.rank();
    let rank_t = row.t.rank();
    let sig_s = row.s.signature();
    let sig_t = row.t.signature();
    let mut checks = Vec::new();

    let want_rank_s = (p as usize - 1) * m;
    let want_rank_t = AMBIENT_RANK.saturating_sub(want_rank_s);
    checks.push(check(
        "rank",
        rank_s == want_rank_s && rank_t == want_rank_t,
        format!("rank S = {rank_s} (want {want_rank_s}), rank T = {rank_t} (want {want_rank_t})"),
    ));

    let want_s = Signature { plus: 2, minus: want_rank_s.saturating_sub(2) };
    let want_t = Signature { plus: 1, minus: want_rank_t.saturating_sub(1) };
    checks.push(check(
        "signature",
        sig_s == want_s && sig_t == want_t,
        format!("S {sig_s} (want {want_s}), T {sig_t} (want {want_t}, hyperbolic)"),
    ));

    let elementary = row.s.p_elementary_exponent(p);
    checks.push(check(
        "S is 5-elementary with exponent a",
        elementary == Some(a),
        format!("D_S = {} (want (Z/5)^{a})", row.s.discriminant_group()),
    ));

    let disc_t = row.t.disc();
    let want_disc_t = BigInt::from(2) * BigInt::from(p).pow(a as u32);
    let q_s = row.s.discriminant_form()?;
    let q_t = row.t.discriminant_form()?;
    let two_part = q_t.primary_part(2);
    let two_ok = two_part.is_isomorphic(&ambient_two_part())?;
    checks.push(check(
        "D_T = Z/2 ⊕ D_S",
        disc_t == want_disc_t && disc_t == BigInt::from(2) * row.s.disc() && two_ok,
        format!("|D_T| = {disc_t} (want {want_disc_t}), 2-part of q_T is {two_part}"),
    ));

    // S and T are orthogonal complements in a lattice whose discriminant is
    // a 2-group, so their 5-parts must be anti-isometric
    let five_t = q_t.primary_part(p);
    let five_s = q_s.primary_part(p);
    checks.push(check(
        "5-part of q_T ≅ −(5-part of q_S)",
        five_t.is_isomorphic(&five_s.negate())?,
        format!("q_T,5 = {five_t}, q_S,5 = {five_s}"),
    ));

    checks.push(check("a ≡ m (mod 2)", a % 2 == m % 2, format!("a = {a}, m = {m}")));

    checks.push(check(
        "a ≤ m and a ≤ 23 − 4m",
        a <= m && a + want_rank_s <= AMBIENT_RANK,
        format!("a = {a}, m = {m}, 23 − 4m = {}", AMBIENT_RANK as i64 - want_rank_s as i64),
    ));

    Ok(RowReport {
        m,
        a,
        s: row.s.to_string(),
        t: row.t.to_string(),
        rank_s,
        rank_t,
        signature_s: sig_s,
        signature_t: sig_t,
        disc_group_s: orders_as_strings(&row.s),
        disc_group_t: orders_as_strings(&row.t),
        checks,
    })
}

/// The form a complement of `S` must carry in the `(5,3)` case:
/// `Z/5(−2/5) ⊕ Z/5(4/5) ⊕ Z/5(4/5) ⊕ Z/2(−1/2)`.
pub fn complement_target_53() -> FiniteQuadraticForm {
    let c = |d, num, den| FiniteQuadraticForm::cyclic_ratio(d, num, den).expect("valid form");
    c(5, -2, 5).direct_sum(&c(5, 4, 5)).direct_sum(&c(5, 4, 5)).direct_sum(&c(2, -1, 2))
}

/// The `S` form of the `(5,3)` case: `Z/5(2/5) ⊕ Z/5(−4/5) ⊕ Z/5(−4/5)`.
pub fn coinvariant_form_53() -> FiniteQuadraticForm {
    let c = |num| FiniteQuadraticForm::cyclic_ratio(5, num, 5).expect("valid form");
    c(2).direct_sum(&c(-4)).direct_sum(&c(-4))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplementReport {
    pub s_form_matches: bool,
    pub complement_form_matches: bool,
    pub complement_signature: Signature,
    pub signature_matches: bool,
}

impl ComplementReport {
    pub fn passed(&self) -> bool {
        self.s_form_matches && self.complement_form_matches && self.signature_matches
    }
}

/// Checks that `U(5) ⊕ ⟨−10⟩` has signature `(1,2)` and the required
/// discriminant form, and that `S` of the `(5,3)` row has the stated form.
pub fn verify_53_complement() -> Result<ComplementReport> {
    let s = Lattice::from_expression("U ⊕ E8(-1) ⊕ H5 ⊕ A4(-1)^2")?;
    let s_form_matches = s.discriminant_form()?.is_isomorphic(&coinvariant_form_53())?;
    let candidate = Lattice::from_expression("U(5) ⊕ <-10>")?;
    let complement_form_matches = candidate.discriminant_form()?.is_isomorphic(&complement_target_53())?;
    let complement_signature = candidate.signature();
    Ok(ComplementReport {
        s_form_matches,
        complement_form_matches,
        complement_signature,
        signature_matches: complement_signature == Signature { plus: 1, minus: 2 },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyProbe {
    pub left: String,
    pub right: String,
    pub same_signature: bool,
    pub isomorphic_forms: bool,
}

/// `U(5) ⊕ A4(−1)` versus `U ⊕ A4*(−5)`: same signature and discriminant
/// form (a genus-level comparison, not an isometry).
pub fn probe_44_consistency() -> Result<ConsistencyProbe> {
    let left = Lattice::from_expression("U(5) ⊕ A4(-1)")?;
    let right = Lattice::from_expression("U ⊕ A4*(-5)")?;
    Ok(ConsistencyProbe {
        same_signature: left.signature() == right.signature(),
        isomorphic_forms: left.discriminant_form()?.is_isomorphic(&right.discriminant_form()?)?,
        left: left.to_string(),
        right: right.to_string(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub rows: Vec<RowReport>,
    pub candidate_pairs: Vec<(usize, usize)>,
    pub candidate_pairs_match: bool,
    pub table_pairs_match: bool,
    pub complement_53: ComplementReport,
    pub probe_44: ConsistencyProbe,
    pub note: &'static str,
}

impl ClassificationReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(RowReport::passed)
            && self.candidate_pairs_match
            && self.table_pairs_match
            && self.complement_53.passed()
            && self.probe_44.same_signature
            && self.probe_44.isomorphic_forms
    }
}

/// The ten pairs allowed by rank, parity and the two `a`-bounds.
pub const EXPECTED_CANDIDATES: [(usize, usize); 10] =
    [(1, 1), (2, 0), (2, 2), (3, 1), (3, 3), (4, 0), (4, 2), (4, 4), (5, 1), (5, 3)];

/// Verifies a (possibly modified) table.
pub fn verify_table(rows: &[ClassificationRow]) -> Result<ClassificationReport> {
    let reports = rows.iter().map(verify_row).collect::<Result<Vec<_>>>()?;
    let candidates = candidate_pairs();
    let mut missing: Vec<(usize, usize)> = candidates.clone();
    missing.retain(|pair| !rows.iter().any(|r| (r.m, r.a) == *pair));
    let table_pairs_ok = missing == [(2, 0), (4, 0)]
        && rows.iter().all(|r| candidates.contains(&(r.m, r.a)))
        && rows.len() == candidates.len() - 2;
    Ok(ClassificationReport {
        rows: reports,
        candidate_pairs_match: candidates == EXPECTED_CANDIDATES,
        candidate_pairs: candidates,
        table_pairs_match: table_pairs_ok,
        complement_53: verify_53_complement()?,
        probe_44: probe_44_consistency()?,
        note: "necessary numerical conditions only; existence and uniqueness of lattices are not decided",
    })
}

pub fn verify_all() -> Result<ClassificationReport> {
    verify_table(&table_rows())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(m: usize, a: usize) -> ClassificationRow {
        table_rows().into_iter().find(|r| (r.m, r.a) == (m, a)).unwrap()
    }

    #[test]
    fn eight_rows() {
        let rows = table_rows();
        assert_eq!(rows.len(), 8);
        assert_eq!(rows[0].s.gram(), Lattice::from_expression("U + H5").unwrap().gram());
        assert_eq!(rows[0].t.rank(), 19);
        assert_eq!(rows[7].t.gram(), Lattice::from_expression("U(5) + <-10>").unwrap().gram());
    }

    #[test]
    fn candidate_list() {
        let c = candidate_pairs();
        assert_eq!(c, EXPECTED_CANDIDATES);
        assert!(c.contains(&(5, 3)) && c.contains(&(4, 0)));
        assert!(!c.contains(&(5, 5)));
    }

    #[test]
    fn row_22_passes() {
        let r = verify_row(&row(2, 2)).unwrap();
        assert_eq!(r.rank_s, 8);
        assert_eq!(r.signature_s, Signature { plus: 2, minus: 6 });
        assert_eq!(r.disc_group_s, vec!["5", "5"]);
        assert!(r.passed(), "{r:#?}");
    }

    #[test]
    fn row_53_discriminant_of_t() {
        let r = verify_row(&row(5, 3)).unwrap();
        assert_eq!(r.disc_group_t, vec!["5", "5", "10"]);
        assert!(r.passed(), "{r:#?}");
    }

    #[test]
    fn bad_parity_is_reported() {
        let mut bad = row(2, 2);
        bad.a = 1;
        let r = verify_row(&bad).unwrap();
        assert!(!r.passed());
        let parity = r.checks.iter().find(|c| c.name == "a ≡ m (mod 2)").unwrap();
        assert!(!parity.passed);
    }

    #[test]
    fn complement_53() {
        let r = verify_53_complement().unwrap();
        assert!(r.passed(), "{r:?}");
        let target = complement_target_53();
        assert!(target.is_isomorphic(&target).unwrap());
        let small = Lattice::from_expression("U(5) ⊕ <-2>").unwrap().discriminant_form().unwrap();
        assert!(!small.is_isomorphic(&target).unwrap());
    }

    #[test]
    fn probe_44() {
        let p = probe_44_consistency().unwrap();
        assert!(p.same_signature && p.isomorphic_forms);
    }
}
