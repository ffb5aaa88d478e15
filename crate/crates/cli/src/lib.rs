//! Command-line front end for `polymat`: evaluation, generation, certificate
//! checks and randomized sweeps over the JSON file formats in [`format`].
//!
//! Exit codes: 0 on success, 1 when a check fails or an inequality is
//! violated, 2 on usage, IO and parse errors.

pub mod format;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use polymat::arrangement::derive_seed;
use polymat::certificates::{self, CertificateReport};
use polymat::functional::orbit;
use polymat::polymatroid::Violation;
use polymat::rational;
use polymat::{
    basic_functionals, kinser, random_arrangement, CheckMode, Field, Functional, Permutation,
    PolymatroidCheck, Rational,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use format::FormatError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Violations printed in full by `random-test`; the rest are only counted.
const MAX_REPORTED_VIOLATIONS: usize = 20;

#[derive(Parser, Debug)]
#[command(
    name = "polymat",
    version,
    about = "Exact checks for polymatroids and the inequalities I_n"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Polymatroid, matroid and connectedness predicates of a set function
    Check { file: PathBuf },
    /// Exact pairing <f, P> of a functional with a set function
    Eval {
        #[arg(long)]
        functional: PathBuf,
        #[arg(long)]
        point: PathBuf,
    },
    /// Writes I_n, optionally with its indices permuted
    GenKinser {
        #[arg(long)]
        n: usize,
        /// Images of 1..n, e.g. "2,1,3,4"
        #[arg(long)]
        permute: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Rank function of a subspace arrangement
    Realize {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Pulls a set function on [n] back along a map Pow(k) -> Pow(n)
    Pullback {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Pushes a functional on [k] forward along a map Pow(k) -> Pow(n)
    Pushforward {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Runs certificate checks and prints their reports
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Cert::All)]
        cert: Cert,
    },
    /// Checks the basic inequalities and every permutation of I_n on random
    /// arrangements over GF(p)
    RandomTest {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 101)]
        prime: u64,
        /// Ambient dimension; defaults to n
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Cert {
    All,
    Hierarchy,
    Witness,
    Vanishing,
    Identities,
    Facet,
    Basis,
}

/// Outcome of a command that ran to completion; errors become exit code 2.
type Exit = Result<i32, String>;

/// Runs the CLI with `args` (including the program name) and returns the exit
/// code. Reports go to `out`, diagnostics to `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Exit {
    match command {
        Command::Check { file } => check(&file, out),
        Command::Eval { functional, point } => eval(&functional, &point, out),
        Command::GenKinser { n, permute, output } => {
            gen_kinser(n, permute.as_deref(), output.as_deref(), out)
        }
        Command::Realize { file, output } => {
            let v = read(&file, format::parse_arrangement)?;
            emit(
                &format::set_function_to_json(&v.rank_function()),
                output.as_deref(),
                out,
            )
        }
        Command::Pullback { map, input, output } => {
            let phi = read(&map, format::parse_union_map)?;
            let p = read(&input, format::parse_set_function)?;
            if p.n() != phi.target() {
                return Err(mismatch(&input, p.n(), phi.target(), "map target"));
            }
            let pulled = phi.pullback(&p).map_err(|e| e.to_string())?;
            emit(&format::set_function_to_json(&pulled), output.as_deref(), out)
        }
        Command::Pushforward { map, input, output } => {
            let phi = read(&map, format::parse_union_map)?;
            let f = read(&input, format::parse_functional)?;
            if f.n() != phi.source() {
                return Err(mismatch(&input, f.n(), phi.source(), "map source k"));
            }
            let pushed = phi.pushforward(&f).map_err(|e| e.to_string())?;
            emit(&format::functional_to_json(&pushed), output.as_deref(), out)
        }
        Command::Verify { n, cert } => verify(n, cert, out),
        Command::RandomTest {
            n,
            trials,
            prime,
            dim,
            seed,
        } => random_test(n, trials, prime, dim.unwrap_or(n), seed, out),
    }
}

fn read<T>(path: &Path, parse: fn(&str) -> Result<T, FormatError>) -> Result<T, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn mismatch(path: &Path, found: usize, expected: usize, what: &str) -> String {
    format!(
        "{}: key \"n\": ground set has n = {found}, {what} is {expected}",
        path.display()
    )
}

fn emit(value: &Value, output: Option<&Path>, out: &mut dyn Write) -> Exit {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())? + "\n";
    match output {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?,
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string())?,
    }
    Ok(EXIT_OK)
}

fn describe(v: &Violation) -> String {
    match v {
        Violation::Monotonicity { smaller, larger } => {
            format!("monotonicity: F({larger}) < F({smaller})")
        }
        Violation::Submodularity { a, b } => {
            format!("submodularity: F(A ∪ B) + F(A ∩ B) > F(A) + F(B) for A = {a}, B = {b}")
        }
    }
}

fn check(path: &Path, out: &mut dyn Write) -> Exit {
    let f = read(path, format::parse_set_function)?;
    let verdict = f.check_polymatroid(CheckMode::Full);
    let polymatroid = verdict == PolymatroidCheck::Polymatroid;
    let violation = match &verdict {
        PolymatroidCheck::Polymatroid => Value::Null,
        PolymatroidCheck::Violated(v) => Value::String(describe(v)),
        PolymatroidCheck::NonIntegral { axioms_hold: true } => {
            Value::String("non-integral values (monotone and submodular otherwise)".into())
        }
        PolymatroidCheck::NonIntegral { axioms_hold: false } => Value::String("non-integral values".into()),
    };
    let connected = match f.is_connected() {
        Ok(c) => Value::Bool(c),
        Err(_) => Value::Null,
    };
    let report = json!({
        "n": f.n(),
        "polymatroid": polymatroid,
        "matroid": f.is_matroid(),
        "connected": connected,
        "integral": f.is_integral(),
        "violation": violation,
    });
    emit(&report, None, out)?;
    Ok(if polymatroid { EXIT_OK } else { EXIT_FAILED })
}

fn eval(functional: &Path, point: &Path, out: &mut dyn Write) -> Exit {
    let f = read(functional, format::parse_functional)?;
    let p = read(point, format::parse_set_function)?;
    if f.n() != p.n() {
        return Err(mismatch(point, p.n(), f.n(), "functional n"));
    }
    let value = f.pair(&p).map_err(|e| e.to_string())?;
    writeln!(out, "{value}").map_err(|e| e.to_string())?;
    Ok(if rational::is_negative(&value) {
        EXIT_FAILED
    } else {
        EXIT_OK
    })
}

fn parse_permutation(n: usize, text: &str) -> Result<Permutation, String> {
    let images = text
        .split(',')
        .map(|part| part.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| format!("--permute: {text:?} is not a comma-separated list of integers"))?;
    if images.len() != n {
        return Err(format!("--permute: expected {n} images, found {}", images.len()));
    }
    Permutation::new(images).map_err(|e| format!("--permute: {e}"))
}

fn gen_kinser(n: usize, permute: Option<&str>, output: Option<&Path>, out: &mut dyn Write) -> Exit {
    let mut f = kinser(n).map_err(|e| e.to_string())?;
    if let Some(text) = permute {
        let sigma = parse_permutation(n, text)?;
        f = f.permute(&sigma).map_err(|e| e.to_string())?;
    }
    emit(&format::functional_to_json(&f), output, out)
}

fn single_cert(n: usize, cert: Cert) -> polymat::Result<CertificateReport> {
    match cert {
        Cert::Hierarchy => certificates::verify_hierarchy(n),
        Cert::Witness => certificates::verify_witness_realizations(n),
        Cert::Vanishing => certificates::verify_vanishing(n),
        Cert::Identities => certificates::verify_line_identities(n),
        Cert::Facet => certificates::verify_facet(n),
        Cert::Basis => certificates::verify_basis_f(n),
        Cert::All => unreachable!("handled by the caller"),
    }
}

fn verify(n: usize, cert: Cert, out: &mut dyn Write) -> Exit {
    let (value, passed) = if cert == Cert::All {
        let reports = certificates::verify_all(n).map_err(|e| e.to_string())?;
        let passed = reports.iter().all(CertificateReport::passed);
        (
            Value::Array(reports.iter().map(format::report_to_json).collect()),
            passed,
        )
    } else {
        let report = single_cert(n, cert).map_err(|e| e.to_string())?;
        (format::report_to_json(&report), report.passed())
    };
    emit(&value, None, out)?;
    Ok(if passed { EXIT_OK } else { EXIT_FAILED })
}

struct Hit {
    trial: u64,
    seed: u64,
    functional: usize,
    value: Rational,
}

fn random_test(n: usize, trials: u64, prime: u64, dim: usize, master: u64, out: &mut dyn Write) -> Exit {
    Field::prime(prime).map_err(|e| format!("--prime: {e}"))?;
    if dim == 0 {
        return Err("--dim: must be at least 1".into());
    }
    let mut functionals: Vec<Functional> = basic_functionals(n).map_err(|e| e.to_string())?;
    let basic = functionals.len();
    if n >= 4 {
        functionals.extend(orbit(&kinser(n).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?);
    }
    let per_trial: Vec<Vec<Hit>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let seed = derive_seed(master, trial);
            let rk = random_arrangement(n, dim, prime, seed)?.rank_function();
            let mut hits = Vec::new();
            for (i, f) in functionals.iter().enumerate() {
                let value = f.pair(&rk)?;
                if rational::is_negative(&value) {
                    hits.push(Hit {
                        trial,
                        seed,
                        functional: i,
                        value,
                    });
                }
            }
            Ok(hits)
        })
        .collect::<polymat::Result<_>>()
        .map_err(|e| e.to_string())?;

    let total: usize = per_trial.iter().map(Vec::len).sum();
    let mut shown = Vec::new();
    for hit in per_trial.iter().flatten().take(MAX_REPORTED_VIOLATIONS) {
        let v = random_arrangement(n, dim, prime, hit.seed).map_err(|e| e.to_string())?;
        let kind = if hit.functional < basic { "basic" } else { "kinser" };
        shown.push(json!({
            "trial": hit.trial,
            "seed": hit.seed,
            "kind": kind,
            "functional": format::functional_to_json(&functionals[hit.functional]),
            "value": hit.value.to_string(),
            "arrangement": format::arrangement_to_json(&v),
        }));
    }
    let report = json!({
        "n": n,
        "trials": trials,
        "prime": prime,
        "dim": dim,
        "seed": master,
        "basic_functionals": basic,
        "kinser_permutations": functionals.len() - basic,
        "violations": total,
        "outcome": if total == 0 { "pass" } else { "fail" },
        "reported": shown,
    });
    emit(&report, None, out)?;
    Ok(if total == 0 { EXIT_OK } else { EXIT_FAILED })
}
