//! Batch front end for the basering engine.
//!
//! Exit codes: 0 success, 1 analysis failure (axiom violation or corpus
//! disconnection under --strict), 2 input error. Reports are JSON with
//! sorted keys and no floats; rationals appear as "num/den" strings.
//! The only environment variable read is BASERING_VERBOSE, which turns
//! on progress lines on stderr.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use basering::catalog::{catalog, catalog_names};
use basering::coeff::CoefficientRing;
use basering::idem::{ConnectednessReportJson, IdempotentReportJson, TimestampJson};
use basering::rep::{build_character_ring_char0, build_grothendieck_modular, CharTable, GroupJson};
use basering::ring::{rationals_to_strings, AxiomReport, RingWithBasis};

#[derive(Parser)]
#[command(
    name = "basering",
    version,
    about = "Exact idempotent analysis of based rings and Grothendieck rings"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// List the fixture catalog, or dump one fixture as ring JSON.
    Catalog {
        /// Fixture name; omit to list all names.
        #[arg(long)]
        name: Option<String>,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively check the based-ring axioms.
    CheckAxioms {
        #[command(flatten)]
        input: RingInput,
        /// Exit with code 1 when any axiom fails.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Complete idempotent analysis over a coefficient ring.
    Idempotents {
        #[command(flatten)]
        input: RingInput,
        /// Coefficient ring: "Z", "Q", or "Z[1/p1,1/p2,...]".
        #[arg(long)]
        coeff: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Idempotent analysis wrapped with the witness profile and timing.
    Connectedness {
        #[command(flatten)]
        input: RingInput,
        /// Coefficient ring: "Z", "Q", or "Z[1/p1,1/p2,...]".
        #[arg(long)]
        coeff: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the Grothendieck ring of F_p[G] from a permutation-group
    /// JSON file.
    BuildModular {
        /// Group JSON: {"degree": n, "perm_generators": [[1-based images]]}.
        #[arg(long)]
        group: PathBuf,
        /// Field characteristic (prime, at most 13).
        #[arg(long)]
        p: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a characteristic-zero character ring from an integer
    /// character table JSON file.
    BuildChar0 {
        /// Table JSON: {"class_sizes": [...], "order": n, "rows": [[...]]}.
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run axiom checks and idempotent analysis over every catalog
    /// fixture.
    Corpus {
        /// Coefficient ring for the idempotent filter.
        #[arg(long, default_value = "Z")]
        coeff: String,
        /// Exit with code 1 when any fixture fails an axiom.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RingInput {
    /// Catalog fixture name.
    #[arg(long, conflicts_with = "input")]
    catalog: Option<String>,
    /// Path to a ring JSON file.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Debug)]
enum AppError {
    Input(String),
    Analysis(String),
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Input(m) => write!(f, "{m}"),
            AppError::Analysis(m) => write!(f, "{m}"),
        }
    }
}

type AppResult<T> = Result<T, AppError>;

fn input_err(e: impl fmt::Display) -> AppError {
    AppError::Input(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Analysis(m)) => {
            eprintln!("analysis failure: {m}");
            ExitCode::from(1)
        }
        Err(AppError::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn verbose() -> bool {
    std::env::var("BASERING_VERBOSE").is_ok_and(|v| !v.is_empty() && v != "0")
}

fn progress(msg: &str) {
    if verbose() {
        eprintln!("basering: {msg}");
    }
}

fn run(cli: Cli) -> AppResult<()> {
    match cli.verb {
        Verb::Catalog { name, out } => {
            let content = match name {
                None => {
                    let names = catalog_names();
                    serde_json::to_string_pretty(&names).expect("name list")
                }
                Some(name) => catalog(&name).map_err(input_err)?.to_json(),
            };
            emit(&out, &content)
        }
        Verb::CheckAxioms { input, strict, out } => {
            let ring = load_ring(&input)?;
            progress(&format!("checking axioms of {}", ring.label()));
            let report = verify(&ring);
            let all_pass = report.all_pass();
            let json = CheckAxiomsJson {
                all_pass,
                axioms: report,
                ring: ring.label().to_string(),
            };
            emit(&out, &serde_json::to_string_pretty(&json).expect("report"))?;
            if strict && !all_pass {
                return Err(AppError::Analysis(format!(
                    "{} violates the based-ring axioms",
                    ring.label()
                )));
            }
            Ok(())
        }
        Verb::Idempotents { input, coeff, out } => {
            let ring = load_ring(&input)?;
            let coeff = parse_coeff_ring(&coeff)?;
            progress(&format!("enumerating idempotents of {}", ring.label()));
            let report = enumerate(&ring, &coeff).map_err(input_err)?;
            let json: IdempotentReportJson = (&report).into();
            emit(&out, &serde_json::to_string_pretty(&json).expect("report"))
        }
        Verb::Connectedness { input, coeff, out } => {
            let ring = load_ring(&input)?;
            let coeff = parse_coeff_ring(&coeff)?;
            progress(&format!("connectedness of {}", ring.label()));
            let report = connectedness(&ring, &coeff).map_err(input_err)?;
            let json: ConnectednessReportJson = (&report).into();
            emit(&out, &serde_json::to_string_pretty(&json).expect("report"))
        }
        Verb::BuildModular { group, p, out } => {
            let text = fs::read_to_string(&group)
                .map_err(|e| input_err(format!("{}: {e}", group.display())))?;
            let parsed: GroupJson = serde_json::from_str(&text).map_err(input_err)?;
            let group = Arc::new(parsed.build().map_err(input_err)?);
            progress(&format!(
                "building modular ring for a group of order {} at p = {p}",
                group.order()
            ));
            let (ring, report, _) = build_grothendieck_modular(&group, p).map_err(input_err)?;
            if !report.all_pass() {
                eprintln!(
                    "note: {} does not satisfy every based-ring axiom (expected off the semisimple case)",
                    ring.label()
                );
            }
            emit(&out, &ring.to_json())
        }
        Verb::BuildChar0 { table, out } => {
            let text = fs::read_to_string(&table)
                .map_err(|e| input_err(format!("{}: {e}", table.display())))?;
            let parsed = CharTable::from_json(&text).map_err(input_err)?;
            let (ring, _) = build_character_ring_char0(&parsed).map_err(input_err)?;
            emit(&out, &ring.to_json())
        }
        Verb::Corpus { coeff, strict, out } => {
            let coeff = parse_coeff_ring(&coeff)?;
            run_corpus(&coeff, strict, &out)
        }
    }
}

/// Coefficient-ring grammar: "Z" | "Q" | "Z[1/a,1/b,...]" with a, b
/// prime. Composite inverted numbers are rejected.
fn parse_coeff_ring(s: &str) -> AppResult<CoefficientRing> {
    CoefficientRing::from_str(s).map_err(input_err)
}

fn load_ring(input: &RingInput) -> AppResult<RingWithBasis> {
    match (&input.catalog, &input.input) {
        (Some(name), None) => catalog(name).map_err(input_err),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| input_err(format!("{}: {e}", path.display())))?;
            RingWithBasis::from_json(&text).map_err(input_err)
        }
        _ => Err(AppError::Input(
            "exactly one of --catalog or --input is required".into(),
        )),
    }
}

fn verify(ring: &RingWithBasis) -> AxiomReport {
    #[cfg(feature = "parallel")]
    {
        ring.par_verify_axioms()
    }
    #[cfg(not(feature = "parallel"))]
    {
        ring.verify_axioms()
    }
}

fn enumerate(
    ring: &RingWithBasis,
    coeff: &CoefficientRing,
) -> Result<basering::idem::IdempotentReport, basering::idem::IdemError> {
    #[cfg(feature = "parallel")]
    {
        basering::idem::par_enumerate_idempotents(ring, coeff)
    }
    #[cfg(not(feature = "parallel"))]
    {
        basering::idem::enumerate_idempotents(ring, coeff)
    }
}

fn connectedness(
    ring: &RingWithBasis,
    coeff: &CoefficientRing,
) -> Result<basering::idem::ConnectednessReport, basering::idem::IdemError> {
    #[cfg(feature = "parallel")]
    {
        basering::idem::par_connectedness_report(ring, coeff)
    }
    #[cfg(not(feature = "parallel"))]
    {
        basering::idem::connectedness_report(ring, coeff)
    }
}

#[derive(Serialize)]
struct CheckAxiomsJson {
    all_pass: bool,
    axioms: AxiomReport,
    ring: String,
}

#[derive(Serialize)]
struct CorpusRowJson {
    all_axioms_pass: bool,
    connected: bool,
    label: String,
    surviving_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<String>>,
}

#[derive(Serialize)]
struct CorpusJson {
    coefficient_ring: String,
    fixtures: Vec<CorpusRowJson>,
    timestamp: TimestampJson,
}

fn run_corpus(coeff: &CoefficientRing, strict: bool, out: &Option<PathBuf>) -> AppResult<()> {
    let start = std::time::Instant::now();
    let names = catalog_names();
    let analyze = |name: &String| -> AppResult<CorpusRowJson> {
        let ring = catalog(name).map_err(input_err)?;
        progress(&format!("corpus: {name}"));
        let axioms = verify(&ring);
        let report = enumerate(&ring, coeff).map_err(input_err)?;
        Ok(CorpusRowJson {
            all_axioms_pass: axioms.all_pass(),
            connected: report.connected,
            label: ring.label().to_string(),
            surviving_count: report.surviving.len(),
            witness: report.witness.as_ref().map(|w| rationals_to_strings(w)),
        })
    };
    #[cfg(feature = "parallel")]
    let rows: Vec<AppResult<CorpusRowJson>> = {
        use rayon::prelude::*;
        names.par_iter().map(analyze).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<AppResult<CorpusRowJson>> = names.iter().map(analyze).collect();

    let mut fixtures = Vec::with_capacity(rows.len());
    for row in rows {
        fixtures.push(row?);
    }
    fixtures.sort_by(|a, b| a.label.cmp(&b.label));
    let failing: Vec<String> = fixtures
        .iter()
        .filter(|r| !r.all_axioms_pass)
        .map(|r| r.label.clone())
        .collect();
    let json = CorpusJson {
        coefficient_ring: coeff.to_string(),
        fixtures,
        timestamp: TimestampJson {
            elapsed_ms: start.elapsed().as_millis(),
            unix: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        },
    };
    emit(out, &serde_json::to_string_pretty(&json).expect("corpus report"))?;
    if strict && !failing.is_empty() {
        return Err(AppError::Analysis(format!(
            "axiom failures in: {}",
            failing.join(", ")
        )));
    }
    Ok(())
}

fn emit(out: &Option<PathBuf>, content: &str) -> AppResult<()> {
    match out {
        None => {
            println!("{content}");
            Ok(())
        }
        Some(path) => atomic_write(path, content),
    }
}

/// Write-then-rename so readers never observe a partial report.
fn atomic_write(path: &Path, content: &str) -> AppResult<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, content).map_err(|e| input_err(format!("{}: {e}", tmp.display())))?;
    fs::rename(&tmp, path).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coeff_ring_grammar() {
        assert_eq!(
            parse_coeff_ring("Z[1/2]").unwrap(),
            CoefficientRing::localized([2]).unwrap()
        );
        assert_eq!(parse_coeff_ring("Q").unwrap(), CoefficientRing::Rationals);
        assert_eq!(parse_coeff_ring("Z").unwrap(), CoefficientRing::Integers);
        assert!(parse_coeff_ring("Z[1/6]").is_err());
        assert!(parse_coeff_ring("R").is_err());
    }
}
