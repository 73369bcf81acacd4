//! The `qlsmub` command line. Each subcommand loads its inputs, calls the
//! library once and renders a report.
//!
//! Exit codes: 0 when the checked property holds, 1 when it is violated,
//! 2 for unreadable or malformed input.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use qlsmub_core::bases::{is_maximally_entangled, qls_meb, lbw_meb, gram_residual, MubReport};
use qlsmub_core::fixtures::{self, Fixture};
use qlsmub_core::hadamard::{constant_family, validate_hadamard, HadamardFamily, HadamardMatrix};
use qlsmub_core::squares::{
    are_left_orthogonal, are_orthogonal, left_conjugate, moqls_witnesses, validate_qls, LatinSquare,
    QuantumLatinSquare, WeakOrthWitness,
};
use qlsmub_core::ueb::{check_mu_ueb, meb_to_ueb, ueb_to_meb, validate_ueb, UnitaryErrorBasis};
use qlsmub_core::{CMatrix, C64};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::format::{Document, FormatError, FORMAT};
use crate::parallel;

#[derive(Debug, Parser)]
#[command(name = "qlsmub", version, about = "Quantum Latin squares and mutually unbiased maximally entangled bases")]
pub struct Cli {
    /// Absolute tolerance for structural checks.
    #[arg(long, global = true, default_value_t = qlsmub_core::DEFAULT_TOL, value_parser = positive)]
    pub tol: f64,
    /// Commutator norm above which a pair counts as non-commuting.
    #[arg(long, global = true, default_value_t = qlsmub_core::DEFAULT_THRESHOLD, value_parser = positive)]
    pub threshold: f64,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "QLSMUB_JOBS")]
    pub jobs: Option<usize>,
    /// Write the document or report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    JsonReport,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(_) => Err("must be a positive number".into()),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that every row and column of a grid is an orthonormal basis.
    ValidateQls { grid: PathBuf },
    /// Check every matrix of a matrices file for the Hadamard identities.
    ValidateHadamard { matrices: PathBuf },
    /// Check pairwise weak orthogonality of two or more grids.
    CheckWeakOrth {
        #[arg(num_args = 2.., required = true)]
        grids: Vec<PathBuf>,
    },
    /// Check two Latin squares for orthogonality.
    CheckOrth { a: PathBuf, b: PathBuf },
    /// Check two Latin squares for left orthogonality.
    CheckLeftOrth { a: PathBuf, b: PathBuf },
    /// Emit the left conjugate of a Latin square.
    LeftConj { latin: PathBuf },
    /// Build the basis of a quantum Latin square and a Hadamard family (one
    /// matrix for a constant family, or one per row).
    BuildMeb { grid: PathBuf, hadamards: PathBuf },
    /// Build the basis of a Latin square and a single Hadamard.
    BuildLbw { latin: PathBuf, hadamard: PathBuf },
    /// Check two bases (or vector lists) for mutual unbiasedness.
    CheckMub { a: PathBuf, b: PathBuf },
    /// Convert between a maximally entangled basis and an error basis.
    #[command(group(ArgGroup::new("direction").required(true).args(["to_ueb", "to_meb"])))]
    Dual {
        #[arg(long)]
        to_ueb: bool,
        #[arg(long)]
        to_meb: bool,
        input: PathBuf,
    },
    /// Check that a matrices file is a unitary error basis.
    CheckUeb { matrices: PathBuf },
    /// Check two error bases for mutual unbiasedness.
    CheckMuUeb { u: PathBuf, v: PathBuf },
    /// Search for a non-commuting pair among normalized lcm(1..n)-th powers.
    MonomialObstruction {
        matrices: PathBuf,
        /// Member used to normalize the basis.
        #[arg(long, default_value_t = 0)]
        normalizer: usize,
    },
    /// Built-in reference data.
    Fixtures {
        #[command(subcommand)]
        action: FixturesCommand,
    },
    /// Exhaustive small-order searches.
    Search {
        #[command(subcommand)]
        what: SearchCommand,
    },
    /// Build the two order-9 bases from the fixtures and check all 6561
    /// overlaps.
    ReproduceAppendixC,
}

#[derive(Debug, Subcommand)]
pub enum FixturesCommand {
    /// Write a fixture as a document.
    Emit { name: String },
    /// List fixture names.
    List,
}

#[derive(Debug, Subcommand)]
pub enum SearchCommand {
    /// All Latin squares of order n (n ≤ 5).
    Latin { n: usize },
    /// All ordered orthogonal pairs of order n (n ≤ 4).
    OrthPairs { n: usize },
    /// Weak orthogonality, left orthogonality and the conjugate permutation
    /// test on every ordered pair of order n (n ≤ 4).
    Lemma16 { n: usize },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Core(#[from] qlsmub_core::Error),
    #[error("{0}")]
    Input(String),
    #[error("cannot write {path}: {source}")]
    Output { path: String, source: std::io::Error },
}

/// Result of a check, rendered as text or as a JSON report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub format: &'static str,
    pub kind: &'static str,
    pub command: String,
    pub pass: bool,
    pub summary: Vec<String>,
    pub details: Value,
}

impl Report {
    fn new(command: &str, pass: bool, summary: Vec<String>, details: Value) -> Self {
        Self {
            format: FORMAT,
            kind: "report",
            command: command.into(),
            pass,
            summary,
            details,
        }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => {
                let mut s = format!("{}: {}\n", self.command, if self.pass { "PASS" } else { "FAIL" });
                for line in &self.summary {
                    let _ = writeln!(s, "  {line}");
                }
                s
            }
            OutputFormat::JsonReport => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
        }
    }
}

/// What a subcommand produced.
#[derive(Debug)]
pub enum Outcome {
    Report(Report),
    /// A constructed object; the report is shown only when the document goes
    /// to a file.
    Document(Document, Report),
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        let r = match self {
            Outcome::Report(r) | Outcome::Document(_, r) => r,
        };
        if r.pass {
            0
        } else {
            1
        }
    }
}

fn complex(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

fn read(path: &Path) -> Result<Document, CliError> {
    Ok(Document::read(path)?)
}

fn hadamard_family(ms: &[CMatrix], n: usize, tol: f64) -> Result<HadamardFamily, CliError> {
    let hs = ms
        .iter()
        .enumerate()
        .map(|(i, m)| validate_hadamard(m, tol).map_err(|e| CliError::Input(format!("matrix {i}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    match hs.len() {
        1 => Ok(constant_family(&hs[0])),
        k if k == n => Ok(HadamardFamily::new(hs)?),
        k => Err(CliError::Input(format!("expected 1 or {n} Hadamard matrices, found {k}"))),
    }
}

fn single_hadamard(path: &Path, tol: f64) -> Result<HadamardMatrix, CliError> {
    let ms = read(path)?.to_matrices()?;
    if ms.len() != 1 {
        return Err(CliError::Input(format!("expected one matrix, found {}", ms.len())));
    }
    validate_hadamard(&ms[0], tol).map_err(|e| CliError::Input(e.to_string()))
}

fn qls(path: &Path, tol: f64) -> Result<QuantumLatinSquare, CliError> {
    validate_qls(&read(path)?.to_grid()?, tol).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn ueb(path: &Path, tol: f64) -> Result<UnitaryErrorBasis, CliError> {
    validate_ueb(&read(path)?.to_matrices()?, tol).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn witness_rows(w: &WeakOrthWitness) -> Vec<Vec<usize>> {
    w.rows().map(<[usize]>::to_vec).collect()
}

fn mub_summary(r: &MubReport) -> Vec<String> {
    vec![
        format!("{} overlaps in dimension {}", r.count, r.dim),
        format!("min {} max {} mean {}", r.min, r.max, r.mean),
        format!("target 1/{} = {} within {:e}", r.dim, r.target(), r.tol),
    ]
}

fn mub_details(r: &MubReport) -> Value {
    json!({
        "dim": r.dim, "count": r.count, "min": r.min, "max": r.max, "mean": r.mean,
        "target": r.target(), "tol": r.tol,
    })
}

fn latin_json(l: &LatinSquare) -> Value {
    json!(l.rows().map(<[usize]>::to_vec).collect::<Vec<_>>())
}

fn built(command: &str, doc: Document, summary: String) -> Outcome {
    Outcome::Document(doc, Report::new(command, true, vec![summary], Value::Null))
}

/// Runs one subcommand. Heavy sweeps use the current rayon pool.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let tol = cli.tol;
    Ok(match &cli.command {
        Command::ValidateQls { grid } => {
            let g = read(grid)?.to_grid()?;
            match validate_qls(&g, tol) {
                Ok(_) => Outcome::Report(Report::new(
                    "validate-qls",
                    true,
                    vec![format!("all {} rows and columns are orthonormal", 2 * g.order())],
                    json!({ "n": g.order() }),
                )),
                Err(v) => Outcome::Report(Report::new(
                    "validate-qls",
                    false,
                    vec![v.to_string()],
                    json!({
                        "line": v.line.to_string(), "index": v.index, "pair": v.pair,
                        "value": complex(v.value),
                        "offending": v.offending.iter()
                            .map(|e| json!({ "pair": e.pair, "value": complex(e.value) }))
                            .collect::<Vec<_>>(),
                    }),
                )),
            }
        }
        Command::ValidateHadamard { matrices } => {
            let ms = read(matrices)?.to_matrices()?;
            let mut summary = Vec::new();
            let mut details = Vec::new();
            let mut pass = true;
            for (i, m) in ms.iter().enumerate() {
                match validate_hadamard(m, tol) {
                    Ok(h) => {
                        summary.push(format!("matrix {i}: Hadamard of order {} (residual {:e})", h.order(), h.residual()));
                        details.push(json!({ "index": i, "pass": true, "residual": h.residual() }));
                    }
                    Err(e) => {
                        pass = false;
                        summary.push(format!("matrix {i}: {e}"));
                        details.push(json!({ "index": i, "pass": false, "violation": e.to_string() }));
                    }
                }
            }
            Outcome::Report(Report::new("validate-hadamard", pass, summary, json!(details)))
        }
        Command::CheckWeakOrth { grids } => {
            let family = grids
                .iter()
                .map(|p| Ok(read(p)?.to_grid()?))
                .collect::<Result<Vec<_>, CliError>>()?;
            let results = moqls_witnesses(&family, tol)?;
            let mut summary = Vec::new();
            let mut details = Vec::new();
            for ((a, b), r) in &results {
                match r {
                    Ok(w) => {
                        summary.push(format!("grids {a},{b}: weak orthogonal"));
                        for row in w.rows() {
                            summary.push(format!("  {}", row.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")));
                        }
                        details.push(json!({ "pair": [a, b], "pass": true, "witness": witness_rows(w) }));
                    }
                    Err(e) => {
                        summary.push(format!("grids {a},{b}: {e}"));
                        details.push(json!({ "pair": [a, b], "pass": false, "violation": e.to_string() }));
                    }
                }
            }
            let pass = results.iter().all(|(_, r)| r.is_ok());
            Outcome::Report(Report::new("check-weak-orth", pass, summary, json!(details)))
        }
        Command::CheckOrth { a, b } => {
            let (x, y) = (read(a)?.to_latin()?, read(b)?.to_latin()?);
            let pass = are_orthogonal(&x, &y)?;
            let word = if pass { "orthogonal" } else { "not orthogonal" };
            Outcome::Report(Report::new("check-orth", pass, vec![format!("squares are {word}")], Value::Null))
        }
        Command::CheckLeftOrth { a, b } => {
            let (x, y) = (read(a)?.to_latin()?, read(b)?.to_latin()?);
            let pass = are_left_orthogonal(&x, &y)?;
            let word = if pass { "left orthogonal" } else { "not left orthogonal" };
            Outcome::Report(Report::new("check-left-orth", pass, vec![format!("squares are {word}")], Value::Null))
        }
        Command::LeftConj { latin } => {
            let l = left_conjugate(&read(latin)?.to_latin()?);
            built("left-conj", Document::from_latin(&l), format!("left conjugate of order {}", l.order()))
        }
        Command::BuildMeb { grid, hadamards } => {
            let q = qls(grid, tol)?;
            let f = hadamard_family(&read(hadamards)?.to_matrices()?, q.order(), tol)?;
            let b = qls_meb(&q, &f)?;
            built("build-meb", Document::from_basis(&b), format!("{} states of dimension {}", b.dim(), b.dim()))
        }
        Command::BuildLbw { latin, hadamard } => {
            let l = read(latin)?.to_latin()?;
            let h = single_hadamard(hadamard, tol)?;
            let b = lbw_meb(&l, &h)?;
            built("build-lbw", Document::from_basis(&b), format!("{} states of dimension {}", b.dim(), b.dim()))
        }
        Command::CheckMub { a, b } => {
            let (x, y) = (read(a)?.to_vectors()?, read(b)?.to_vectors()?);
            let r = parallel::check_mub(&x, &y, tol)?;
            Outcome::Report(Report::new("check-mub", r.pass, mub_summary(&r), mub_details(&r)))
        }
        Command::Dual { to_ueb, input, .. } => {
            let doc = read(input)?;
            if *to_ueb {
                let u = meb_to_ueb(&doc.to_basis(tol)?, tol).map_err(|e| CliError::Input(e.to_string()))?;
                built("dual", Document::from_matrices(u.members()), format!("{} unitaries of order {}", u.members().len(), u.order()))
            } else {
                let u = validate_ueb(&doc.to_matrices()?, tol).map_err(|e| CliError::Input(e.to_string()))?;
                let b = ueb_to_meb(&u);
                built("dual", Document::from_basis(&b), format!("{} states of dimension {}", b.dim(), b.dim()))
            }
        }
        Command::CheckUeb { matrices } => {
            let ms = read(matrices)?.to_matrices()?;
            match validate_ueb(&ms, tol) {
                Ok(u) => Outcome::Report(Report::new(
                    "check-ueb",
                    true,
                    vec![format!("{} unitaries of order {} are trace-orthogonal", ms.len(), u.order())],
                    Value::Null,
                )),
                Err(e) => Outcome::Report(Report::new("check-ueb", false, vec![e.to_string()], Value::Null)),
            }
        }
        Command::CheckMuUeb { u, v } => {
            let (x, y) = (ueb(u, tol)?, ueb(v, tol)?);
            let r = check_mu_ueb(&x, &y, tol)?;
            let mut summary = mub_summary(&r.mub);
            summary[0] = format!("{} pairs, |tr(U†V)/n|² against 1/n²", r.mub.count);
            summary.push(format!("raw |tr(U†V)|²: min {} max {}", r.raw_min(), r.raw_max()));
            let mut details = mub_details(&r.mub);
            details["raw_min"] = json!(r.raw_min());
            details["raw_max"] = json!(r.raw_max());
            Outcome::Report(Report::new("check-mu-ueb", r.mub.pass, summary, details))
        }
        Command::MonomialObstruction { matrices, normalizer } => {
            let u = ueb(matrices, tol)?;
            let r = parallel::monomial_obstruction(&u, cli.threshold, *normalizer)?;
            let summary = vec![
                format!("mu = {}, normalized by member {}", r.mu, r.normalizer_index),
                format!("worst pair {:?}: commutator norm {}", r.worst_pair, r.worst_commutator_norm),
                format!("<0|K|0> = {}", r.sample_entry),
                format!("{} of {} pairs above {:e}", r.obstructed_pairs, r.pairs_checked, r.threshold),
                format!("max unitarity residual of the powers {:e}", r.max_power_unitarity_residual),
                format!("obstructed: {}", r.obstructed),
            ];
            let details = json!({
                "mu": r.mu, "normalizer": r.normalizer_index, "worst_pair": r.worst_pair,
                "worst_commutator_norm": r.worst_commutator_norm, "sample_entry": complex(r.sample_entry),
                "threshold": r.threshold, "obstructed_pairs": r.obstructed_pairs,
                "pairs_checked": r.pairs_checked,
                "max_power_unitarity_residual": r.max_power_unitarity_residual,
                "obstructed": r.obstructed,
            });
            // the property under test is the obstruction itself
            Outcome::Report(Report::new("monomial-obstruction", r.obstructed, summary, details))
        }
        Command::Fixtures { action } => match action {
            FixturesCommand::List => Outcome::Report(Report::new(
                "fixtures list",
                true,
                fixtures::NAMES.iter().map(|s| s.to_string()).collect(),
                json!(fixtures::NAMES),
            )),
            FixturesCommand::Emit { name } => {
                let doc = match fixtures::fixture(name)? {
                    Fixture::Grid(g) => Document::from_grid(&g),
                    Fixture::Triple(t) => Document::from_vectors(&t),
                    Fixture::Hadamard(h) => Document::from_matrices(std::slice::from_ref(h.matrix())),
                    Fixture::Matrix(m) => Document::from_matrices(&[m]),
                };
                built("fixtures emit", doc, format!("fixture {name}"))
            }
        },
        Command::Search { what } => match what {
            SearchCommand::Latin { n } => {
                let r = parallel::enumerate_latin(*n)?;
                Outcome::Report(Report::new(
                    "search latin",
                    true,
                    vec![format!("{} Latin squares of order {n}", r.count())],
                    json!({ "order": n, "count": r.count(), "squares": r.squares.iter().map(latin_json).collect::<Vec<_>>() }),
                ))
            }
            SearchCommand::OrthPairs { n } => {
                let pairs = parallel::find_orthogonal_pairs(*n)?;
                Outcome::Report(Report::new(
                    "search orth-pairs",
                    true,
                    vec![format!("{} ordered orthogonal pairs of order {n}", pairs.len())],
                    json!({
                        "order": n, "count": pairs.len(),
                        "pairs": pairs.iter().map(|(a, b)| json!([latin_json(a), latin_json(b)])).collect::<Vec<_>>(),
                    }),
                ))
            }
            SearchCommand::Lemma16 { n } => {
                let r = parallel::cross_validate_lemma16(*n)?;
                let summary = vec![
                    format!("{} ordered pairs of order {n}", r.pairs),
                    format!(
                        "weak orthogonal {}, left orthogonal {}, conjugate map a permutation {}",
                        r.weak_orthogonal, r.left_orthogonal, r.conjugate_map_is_permutation
                    ),
                    format!("disagreements {}", r.counterexamples.len()),
                ];
                let details = json!({
                    "order": n, "pairs": r.pairs, "weak_orthogonal": r.weak_orthogonal,
                    "left_orthogonal": r.left_orthogonal,
                    "conjugate_map_is_permutation": r.conjugate_map_is_permutation,
                    "counterexamples": r.counterexamples.iter().map(|v| json!([v.a, v.b])).collect::<Vec<_>>(),
                });
                Outcome::Report(Report::new("search lemma16", r.all_agree(), summary, details))
            }
        },
        Command::ReproduceAppendixC => {
            let f = constant_family(&fixtures::hadamard_9_corrected());
            let p = validate_qls(&fixtures::paper_p(), tol).map_err(|e| CliError::Input(e.to_string()))?;
            let q = validate_qls(&fixtures::paper_q(), tol).map_err(|e| CliError::Input(e.to_string()))?;
            let (a, b) = (qls_meb(&p, &f)?, qls_meb(&q, &f)?);
            let r = parallel::check_mub(a.states(), b.states(), tol)?;
            let entangled = a.states().iter().chain(b.states()).all(|s| is_maximally_entangled(s, tol));
            let gram = gram_residual(a.states()).max(gram_residual(b.states()));
            let pass = r.pass && entangled && gram <= tol;
            let mut summary = mub_summary(&r);
            summary.push(format!("Gram residual {gram:e}; all states maximally entangled: {entangled}"));
            summary.push(format!(
                "{} squared overlaps, all equal to 1/81 within {:e}: {}",
                r.count,
                tol,
                if r.pass { "yes" } else { "no" }
            ));
            let mut details = mub_details(&r);
            details["gram_residual"] = json!(gram);
            details["maximally_entangled"] = json!(entangled);
            Outcome::Report(Report::new("reproduce-appendix-c", pass, summary, details))
        }
    })
}

fn write_out(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Output {
        path: path.display().to_string(),
        source,
    })
}

/// Runs `cli` inside a worker pool and prints the result. Returns the
/// process exit code.
pub fn run(cli: &Cli) -> i32 {
    let outcome = parallel::pool(cli.jobs).install(|| execute(cli));
    let result = outcome.and_then(|o| {
        match &o {
            Outcome::Report(r) => {
                let text = r.render(cli.format);
                match &cli.out {
                    Some(p) => write_out(p, &text)?,
                    None => print!("{text}"),
                }
            }
            Outcome::Document(doc, r) => match &cli.out {
                Some(p) => {
                    write_out(p, &doc.to_json())?;
                    print!("{}", r.render(cli.format));
                }
                None => print!("{}", doc.to_json()),
            },
        }
        let _ = std::io::stdout().flush();
        Ok(o.exit_code())
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
