//! Serializable job descriptions and reports. Parsing of the JSON text
//! itself is left to the caller; everything here is plain serde data.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::algebra::IntMatrix;
use crate::class5::ClassificationReport;
use crate::error::{Error, Result};
use crate::isometry::{check_square_theorem, check_unimodular_corollary, InvariantSummary, LatticeIsometry};
use crate::lattice::{Lattice, Signature};
use crate::lefschetz::{LefschetzResult, TorusAutomorphism};

pub const SCHEMA_VERSION: u32 = 1;

/// A lattice given by a Gram matrix, a named expression such as
/// `"U ⊕ H5"`, or both (the Gram matrix wins and the name is a label).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsometryJob {
    pub gram: Vec<Vec<i64>>,
    pub matrix: Vec<Vec<i64>>,
    pub p: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KummerJob {
    #[serde(rename = "H")]
    pub h: Vec<Vec<i64>>,
    pub b: Vec<i64>,
    pub n: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyJob {}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "lowercase")]
pub enum JobFile {
    Lattice(LatticeSpec),
    Isometry(IsometryJob),
    Kummer(KummerJob),
    Classify(ClassifyJob),
}

fn matrix(rows: &[Vec<i64>], what: &str) -> Result<IntMatrix> {
    let big = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    IntMatrix::try_from_rows(big).map_err(|e| Error::Dimension(format!("{what}: {e}")))
}

impl LatticeSpec {
    pub fn to_lattice(&self) -> Result<Lattice> {
        match (&self.gram, &self.name) {
            (Some(g), name) => {
                let l = Lattice::new(matrix(g, "gram")?)?;
                Ok(match name {
                    Some(n) => l.with_name(n.clone()),
                    None => l,
                })
            }
            (None, Some(name)) => Lattice::from_expression(name),
            (None, None) => Err(Error::InvalidLattice("lattice needs a \"gram\" or a \"name\"".into())),
        }
    }
}

impl IsometryJob {
    pub fn to_isometry(&self) -> Result<LatticeIsometry> {
        let lattice = Lattice::new(matrix(&self.gram, "gram")?)?;
        LatticeIsometry::new(lattice, matrix(&self.matrix, "matrix")?, self.p)
    }
}

impl KummerJob {
    pub fn to_automorphism(&self) -> Result<TorusAutomorphism> {
        TorusAutomorphism::new(matrix(&self.h, "H")?, &self.b, self.n)
    }

    pub fn from_automorphism(aut: &TorusAutomorphism) -> Self {
        let h = aut
            .h()
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|x| i64::try_from(x).expect("catalog entries are small")).collect())
            .collect();
        Self { h, b: aut.b().iter().map(|&x| x as i64).collect(), n: aut.n() }
    }
}

fn ratio_string(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KummerReport {
    pub schema_version: u32,
    /// Exponent → rational coefficient, both as strings.
    pub poly_q: BTreeMap<String, String>,
    pub value: i64,
    pub corollary_check: bool,
}

impl KummerReport {
    pub fn new(result: &LefschetzResult, corollary_check: bool) -> Result<Self> {
        let value = i64::try_from(&result.value)
            .map_err(|_| Error::InvariantViolation(format!("value {} does not fit in 64 bits", result.value)))?;
        Ok(Self {
            schema_version: SCHEMA_VERSION,
            poly_q: result.poly.iter().map(|(e, c)| (e.to_string(), ratio_string(c))).collect(),
            value,
            corollary_check,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormReport {
    pub orders: Vec<u64>,
    pub q: Vec<String>,
    pub b: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeReport {
    pub schema_version: u32,
    pub name: Option<String>,
    pub rank: usize,
    pub signature: Signature,
    pub det: String,
    pub discriminant_group: Vec<String>,
    pub discriminant_form: FormReport,
    /// `p → a` when the lattice is `p`-elementary.
    pub p_elementary: BTreeMap<u64, Option<usize>>,
}

pub const REPORTED_PRIMES: [u64; 5] = [2, 3, 5, 7, 23];

impl LatticeReport {
    pub fn new(lattice: &Lattice) -> Result<Self> {
        let form = lattice.discriminant_form()?;
        Ok(Self {
            schema_version: SCHEMA_VERSION,
            name: lattice.name().map(str::to_string),
            rank: lattice.rank(),
            signature: lattice.signature(),
            det: lattice.disc().to_string(),
            discriminant_group: lattice.discriminant_group().orders.iter().map(ToString::to_string).collect(),
            discriminant_form: FormReport {
                orders: form.orders().to_vec(),
                q: form.q_values().iter().map(ratio_string).collect(),
                b: form.bilinear().iter().map(|r| r.iter().map(ratio_string).collect()).collect(),
            },
            p_elementary: REPORTED_PRIMES.iter().map(|&p| (p, lattice.p_elementary_exponent(p))).collect(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsometryReport {
    pub schema_version: u32,
    pub invariants: InvariantSummary,
    pub rank_bound: bool,
    /// `None` when `p = 2`.
    pub square_theorem: Option<bool>,
    /// `None` when the ambient lattice is not unimodular or `p = 2`.
    pub unimodular_corollary: Option<bool>,
}

impl IsometryReport {
    pub fn new(phi: &LatticeIsometry) -> Result<Self> {
        let inv = phi.invariants()?;
        let square_theorem = (inv.p != 2).then(|| check_square_theorem(&inv)).transpose()?;
        let unimodular_corollary = (inv.p != 2 && phi.lattice().is_unimodular())
            .then(|| check_unimodular_corollary(&inv, phi.lattice()))
            .transpose()?;
        Ok(Self {
            schema_version: SCHEMA_VERSION,
            rank_bound: crate::isometry::check_rank_bound(&inv),
            invariants: inv.summary(),
            square_theorem,
            unimodular_corollary,
        })
    }

    pub fn passed(&self) -> bool {
        self.rank_bound && self.square_theorem != Some(false) && self.unimodular_corollary != Some(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifyReport {
    pub schema_version: u32,
    pub passed: bool,
    #[serde(flatten)]
    pub report: ClassificationReport,
}

impl ClassifyReport {
    pub fn new(report: ClassificationReport) -> Self {
        Self { schema_version: SCHEMA_VERSION, passed: report.passed(), report }
    }
}
