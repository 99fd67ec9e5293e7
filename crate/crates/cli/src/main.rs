use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use hkfour_core::class5::{table_rows, verify_table};
use hkfour_core::io::{ClassifyReport, IsometryReport, JobFile, KummerJob, KummerReport, LatticeReport, LatticeSpec};
use hkfour_core::lefschetz::catalog::{find_variant, run_catalog_table, CatalogRow};
use hkfour_core::lefschetz::{corollary_holds, lefschetz_q, TorusAutomorphism};
use hkfour_core::Error;

#[derive(Parser)]
#[command(name = "hkfour", version, about = "Lattice invariants of prime-order isometries and Lefschetz numbers on Kummer fourfolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a lattice file.
    Lattice {
        #[command(subcommand)]
        action: LatticeCmd,
    },
    /// Check a prime-order isometry.
    Isometry {
        #[command(subcommand)]
        action: IsometryCmd,
    },
    /// Verify the order-5 classification table.
    Classify {
        #[command(subcommand)]
        action: ClassifyCmd,
    },
    /// Lefschetz number of a natural automorphism of K_n(A).
    Kummer(KummerArgs),
    /// Run any job file (`{"kind": ..., "payload": ...}`).
    Run {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    Info {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum IsometryCmd {
    Check {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum ClassifyCmd {
    Verify {
        #[arg(long)]
        json: bool,
        /// Bumps `a` in the given table row before verifying (exercises the
        /// failure path).
        #[arg(long, hide = true)]
        corrupt_row: Option<usize>,
    },
}

#[derive(Args)]
struct KummerArgs {
    /// Catalog torus type (0-8).
    #[arg(long = "type", requires = "variant", conflicts_with_all = ["job", "table"])]
    torus_type: Option<u8>,
    /// Catalog variant, e.g. `h`, `-h`, `u=0`.
    #[arg(long, allow_hyphen_values = true, requires = "torus_type")]
    variant: Option<String>,
    /// Job file `{"H": [[..]], "b": [..], "n": ..}`.
    #[arg(long, conflicts_with = "table")]
    job: Option<PathBuf>,
    /// Run the whole catalog against the expected values.
    #[arg(long)]
    table: bool,
    #[arg(long)]
    json: bool,
}

/// 0 = all checks pass, 1 = a verification failed, 2 = bad input.
enum Failure {
    Verification(anyhow::Error),
    Input(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(
                Error::DivisionIdentity(_)
                | Error::GaloisStability(_)
                | Error::InvariantViolation(_)
                | Error::NonIntegralOverlattice(_),
            ) => Failure::Verification(e),
            _ => Failure::Input(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

type Outcome = Result<bool, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::Input)
}

fn parse<T: serde::de::DeserializeOwned>(text: &str, path: &Path) -> Result<T, Failure> {
    serde_json::from_str(text)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(Failure::Input)
}

/// Either a bare payload or a full job file of the matching kind.
fn parse_payload<T: serde::de::DeserializeOwned>(
    path: &Path,
    pick: impl Fn(JobFile) -> Option<T>,
    kind: &str,
) -> Result<T, Failure> {
    let text = read(path)?;
    if let Ok(job) = serde_json::from_str::<JobFile>(&text) {
        return pick(job)
            .ok_or_else(|| Failure::Input(anyhow::anyhow!("{}: job file is not of kind {kind:?}", path.display())));
    }
    parse(&text, path)
}

fn emit<T: Serialize>(value: &T, json: bool, human: impl FnOnce(&T)) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
    } else {
        human(value);
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn lattice_info(spec: &LatticeSpec, json: bool) -> Outcome {
    let lattice = spec.to_lattice()?;
    let report = LatticeReport::new(&lattice)?;
    emit(&report, json, |r| {
        let group = if r.discriminant_group.is_empty() {
            "trivial".to_string()
        } else {
            r.discriminant_group.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" ⊕ ")
        };
        if let Some(name) = &r.name {
            println!("{name}");
        }
        println!("rank {}, sig {}, det {}, D = {group}", r.rank, r.signature, r.det);
        let f = &r.discriminant_form;
        for (i, (d, q)) in f.orders.iter().zip(&f.q).enumerate() {
            println!("  g{i}: order {d}, q = {q} mod 2");
        }
        for i in 0..f.orders.len() {
            for j in i + 1..f.orders.len() {
                if f.b[i][j] != "0" {
                    println!("  b(g{i}, g{j}) = {} mod 1", f.b[i][j]);
                }
            }
        }
        for (p, a) in &r.p_elementary {
            if let Some(a) = a {
                println!("  {p}-elementary, a = {a}");
            }
        }
    });
    Ok(true)
}

fn isometry_check(job: &hkfour_core::io::IsometryJob, json: bool) -> Outcome {
    let phi = job.to_isometry()?;
    let report = IsometryReport::new(&phi)?;
    emit(&report, json, |r| {
        let i = &r.invariants;
        let head = format!("m={} a={} discS={}", i.m, i.a, i.disc_s);
        match r.square_theorem {
            Some(ok) => println!("{head}; p^m·disc = {} square: {}", num_pow(i.p, i.m, &i.disc_s), verdict(ok)),
            None => println!("{head}; square theorem not applicable (p = 2)"),
        }
        println!("p = {}, rank T = {}, rank S = {}", i.p, i.rank_t, i.rank_s);
        println!("a <= m: {}", verdict(r.rank_bound));
        match r.unimodular_corollary {
            Some(ok) => println!("disc S = p^a and a ≡ m mod 2: {}", verdict(ok)),
            None => println!("unimodular corollary: not applicable"),
        }
    });
    Ok(report.passed())
}

fn num_pow(p: u64, m: usize, disc: &str) -> String {
    let disc: num_bigint::BigInt = disc.parse().expect("decimal");
    (num_bigint::BigInt::from(p).pow(m as u32) * disc).to_string()
}

fn classify_verify(json: bool, corrupt_row: Option<usize>) -> Outcome {
    let mut rows = table_rows();
    if let Some(i) = corrupt_row {
        let row = rows
            .get_mut(i)
            .ok_or_else(|| Failure::Input(anyhow::anyhow!("no table row {i}")))?;
        row.a += 1;
    }
    let report = ClassifyReport::new(verify_table(&rows)?);
    emit(&report, json, |r| {
        let rep = &r.report;
        for row in &rep.rows {
            println!("(m,a) = ({},{})  S = {}  T = {}  {}", row.m, row.a, row.s, row.t, verdict(row.passed()));
            for c in row.checks.iter().filter(|c| !c.passed) {
                println!("    {} failed: {}", c.name, c.detail);
            }
        }
        let passed_rows = rep.rows.iter().filter(|r| r.passed()).count();
        println!("rows: {passed_rows}/{} pass", rep.rows.len());
        let pairs: Vec<String> = rep.candidate_pairs.iter().map(|(m, a)| format!("({m},{a})")).collect();
        println!("candidate pairs {}: {}", pairs.join(","), verdict(rep.candidate_pairs_match));
        println!("table pairs = candidates minus (2,0),(4,0): {}", verdict(rep.table_pairs_match));
        println!("U(5) ⊕ <-10> as complement in case (5,3): {}", verdict(rep.complement_53.passed()));
        println!(
            "{} vs {}: same signature and discriminant form: {}",
            rep.probe_44.left,
            rep.probe_44.right,
            verdict(rep.probe_44.same_signature && rep.probe_44.isomorphic_forms)
        );
        println!("note: {}", rep.note);
    });
    Ok(report.passed)
}

fn format_poly(report: &KummerReport) -> String {
    let mut terms: Vec<(i64, &String)> = report.poly_q.iter().map(|(e, c)| (e.parse().expect("int"), c)).collect();
    terms.sort();
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (e, c)) in terms.iter().enumerate() {
        let (sign, mag) = match c.strip_prefix('-') {
            Some(m) => ("-", m),
            None => ("+", c.as_str()),
        };
        if k == 0 {
            if sign == "-" {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let mag = if mag == "1" && *e != 0 { String::new() } else { mag.to_string() };
        let sep = if mag.is_empty() { "" } else { "·" };
        match e {
            0 => out.push_str(&mag),
            1 => out.push_str(&format!("{mag}{sep}q")),
            _ => out.push_str(&format!("{mag}{sep}q^{e}")),
        }
    }
    out
}

fn kummer_single(aut: &TorusAutomorphism, expected: Option<i64>, json: bool) -> Outcome {
    let result = lefschetz_q(aut)?;
    let corollary = corollary_holds(aut, &result)?;
    let report = KummerReport::new(&result, corollary)?;
    let matches = expected.is_none_or(|e| e == report.value);
    emit(&report, json, |r| {
        println!("L(K_{} ψ, q) = {}", aut.n(), format_poly(r));
        match expected {
            Some(e) => println!("value {} (expected {e}: {})", r.value, verdict(matches)),
            None => println!("value {}", r.value),
        }
        println!("corollary check: {}", verdict(r.corollary_check));
    });
    Ok(report.corollary_check && matches)
}

fn kummer_table(json: bool) -> Outcome {
    let rows: Vec<CatalogRow> = run_catalog_table()?;
    let ok = rows.iter().all(|r| r.passed);
    emit(&rows, json, |rows| {
        for r in rows {
            let got = r.value.clone().or_else(|| r.error.clone()).unwrap_or_default();
            println!(
                "type {} {:<20} expected {:>4}  got {:>4}  corollary {}  {}",
                r.torus_type,
                r.variant,
                r.expected,
                got,
                r.corollary_check.map_or("n/a", verdict),
                verdict(r.passed)
            );
        }
        println!("{}/{} entries pass", rows.iter().filter(|r| r.passed).count(), rows.len());
    });
    Ok(ok)
}

fn kummer(args: &KummerArgs) -> Outcome {
    if args.table {
        return kummer_table(args.json);
    }
    if let (Some(t), Some(v)) = (args.torus_type, &args.variant) {
        let var = find_variant(t, v)?;
        let aut = hkfour_core::lefschetz::catalog::catalog(t, v)?;
        return kummer_single(&aut, Some(var.expected), args.json);
    }
    if let Some(path) = &args.job {
        let job: KummerJob = parse_payload(
            path,
            |j| match j {
                JobFile::Kummer(k) => Some(k),
                _ => None,
            },
            "kummer",
        )?;
        return kummer_single(&job.to_automorphism()?, None, args.json);
    }
    Err(Failure::Input(anyhow::anyhow!("kummer needs --type/--variant, --job or --table")))
}

fn run_job(path: &Path, json: bool) -> Outcome {
    let job: JobFile = parse(&read(path)?, path)?;
    match job {
        JobFile::Lattice(spec) => lattice_info(&spec, json),
        JobFile::Isometry(job) => isometry_check(&job, json),
        JobFile::Kummer(job) => kummer_single(&job.to_automorphism()?, None, json),
        JobFile::Classify(_) => classify_verify(json, None),
    }
}

fn dispatch(cli: Cli) -> Outcome {
    match cli.command {
        Command::Lattice { action: LatticeCmd::Info { file, json } } => {
            let spec = parse_payload(
                &file,
                |j| match j {
                    JobFile::Lattice(s) => Some(s),
                    _ => None,
                },
                "lattice",
            )?;
            lattice_info(&spec, json)
        }
        Command::Isometry { action: IsometryCmd::Check { file, json } } => {
            let job = parse_payload(
                &file,
                |j| match j {
                    JobFile::Isometry(s) => Some(s),
                    _ => None,
                },
                "isometry",
            )?;
            isometry_check(&job, json)
        }
        Command::Classify { action: ClassifyCmd::Verify { json, corrupt_row } } => classify_verify(json, corrupt_row),
        Command::Kummer(args) => kummer(&args),
        Command::Run { file, json } => run_job(&file, json),
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Verification(e)) => {
            eprintln!("verification failed: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
