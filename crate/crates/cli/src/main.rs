use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::builder::TypedValueParser;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use leibniz_core::catalog::{
    build_family, build_family_printed, list_families, Family, FamilyFilter, FamilySpec,
};
use leibniz_core::grading::{
    max_length_search, universal_grading_lattice, verify_grading, GradingAssignment,
};
use leibniz_core::invariants::{
    characteristic_sequence, fingerprint_with, FingerprintConfig, SamplingConfig, DEFAULT_SEED,
};
use leibniz_core::io::{parse_algebras, serialize_algebra, NamedAlgebra};
use leibniz_core::suite::{run_verification_suite, Suite, SuiteConfig};
use leibniz_core::{Error, Scalar};

#[derive(Parser)]
#[command(
    name = "leibniz",
    version,
    about = "Exact checks on nilpotent Leibniz algebras"
)]
struct Cli {
    /// Sampling seed, decimal or 0x-prefixed hex.
    #[arg(long, global = true, env = "ALG_SEED", value_parser = parse_seed)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Leibniz identity, Lie check and invariants for each algebra in a file.
    Verify { file: PathBuf },
    /// Invariant fingerprint for each algebra in a file.
    Fingerprint {
        file: PathBuf,
        /// Coefficient bound for the monomial length search (default 2n).
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Monomial gradings: the weight lattice, a search, or a given weight vector.
    Grading(GradingArgs),
    /// Build a catalog family, or list the catalog.
    Catalog(CatalogArgs),
    /// Run a verification suite.
    Suite(SuiteArgs),
}

#[derive(Args)]
struct GradingArgs {
    file: PathBuf,
    #[arg(long, conflicts_with = "weights")]
    search: bool,
    #[arg(long, requires = "search")]
    bound: Option<i64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    weights: Option<Vec<i64>>,
}

#[derive(Args)]
struct CatalogArgs {
    #[arg(long, conflicts_with_all = ["family", "params", "emit", "printed"])]
    list: bool,
    #[arg(long, required_unless_present = "list")]
    family: Option<String>,
    /// With --list, show only families of exactly this dimension.
    #[arg(long, required_unless_present = "list")]
    dim: Option<usize>,
    /// Parameter or template coefficient, `name=value`.
    #[arg(long = "param", value_name = "K=V", allow_hyphen_values = true)]
    params: Vec<String>,
    /// Use the product list as printed, without corrections.
    #[arg(long)]
    printed: bool,
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(value_parser = suite_parser())]
    name: Suite,
    /// Dimension range `A..B`, inclusive.
    #[arg(long, value_parser = parse_dims)]
    dims: Option<(usize, usize)>,
    /// Values for unrestricted parameters.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    grid: Option<Vec<i64>>,
    #[arg(long, default_value_t = 10)]
    basis_changes: usize,
    #[arg(long)]
    emit: Option<PathBuf>,
}

fn suite_parser() -> impl TypedValueParser<Value = Suite> {
    let names: Vec<&'static str> = Suite::ALL.iter().map(|s| s.name()).collect();
    clap::builder::PossibleValuesParser::new(names)
        .map(|s| s.parse::<Suite>().expect("listed suite names parse"))
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let r = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(h) => u64::from_str_radix(h, 16),
        None => s.parse(),
    };
    r.map_err(|e| e.to_string())
}

fn parse_dims(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once("..").ok_or("expected A..B")?;
    let a = a.trim().parse::<usize>().map_err(|e| e.to_string())?;
    let b = b
        .trim()
        .trim_start_matches('=')
        .parse::<usize>()
        .map_err(|e| e.to_string())?;
    Ok((a, b))
}

/// Failure to run at all (exit 2) versus a check that ran and failed (exit 1).
enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotNilpotent | Error::OperatorNotNilpotent | Error::Precondition(_) => {
                Failure::Check(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn read_algebras(path: &Path) -> Result<Vec<NamedAlgebra>, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let algs = parse_algebras(&text)?;
    if algs.is_empty() {
        return Err(Failure::Usage(format!("{}: no algebras", path.display())));
    }
    Ok(algs)
}

fn write_out(emit: Option<&Path>, text: &str) -> Result<(), Failure> {
    match emit {
        Some(p) => fs::write(p, format!("{text}\n"))
            .map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            stdout_line(text);
            Ok(())
        }
    }
}

/// A closed pipe downstream is not an error.
fn stdout_line(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn print_json(v: &Value) {
    stdout_line(&serde_json::to_string(v).expect("json values serialize"));
}

fn verify(path: &Path, seed: u64) -> Outcome {
    let mut all = true;
    for NamedAlgebra { name, algebra: a } in read_algebras(path)? {
        let defect = a.leibniz_defect();
        let mut report = json!({
            "name": name,
            "dim": a.dim(),
            "leibniz": defect.is_zero(),
        });
        match &defect.witness {
            Some(w) => {
                all = false;
                report["defect"] = json!({
                    "triple": [w.triple.0 + 1, w.triple.1 + 1, w.triple.2 + 1],
                    "value": a.describe_defect(w),
                });
            }
            None => {
                let lie = a.is_lie();
                report["lie"] = json!(lie.is_lie());
                if let Some(w) = &lie.witness {
                    report["lie_witness"] = json!(a.describe_lie_witness(w));
                }
                let cfg = FingerprintConfig {
                    sampling: SamplingConfig::with_seed(seed),
                    ..Default::default()
                };
                match fingerprint_with(&a, &cfg) {
                    Ok(f) => {
                        report["fingerprint"] = json!(f);
                        report["generic_element"] =
                            json!(characteristic_sequence(&a, &cfg.sampling)?.attained_at);
                    }
                    Err(Error::NotNilpotent) => report["nilpotent"] = json!(false),
                    Err(e) => return Err(e.into()),
                }
            }
        }
        print_json(&report);
    }
    Ok(all)
}

fn fingerprint_cmd(path: &Path, seed: u64, bound: Option<i64>) -> Outcome {
    let cfg = FingerprintConfig {
        sampling: SamplingConfig::with_seed(seed),
        length_bound: bound,
        skip_length: false,
    };
    let mut all = true;
    for NamedAlgebra { name, algebra } in read_algebras(path)? {
        match fingerprint_with(&algebra, &cfg) {
            Ok(f) => print_json(&json!({ "name": name, "fingerprint": f })),
            Err(e) => {
                all = false;
                print_json(&json!({ "name": name, "error": e.to_string() }));
            }
        }
    }
    Ok(all)
}

fn grading(args: &GradingArgs) -> Outcome {
    let mut all = true;
    for NamedAlgebra { name, algebra } in read_algebras(&args.file)? {
        let n = algebra.dim();
        let report = if let Some(w) = &args.weights {
            let r = verify_grading(&algebra, &GradingAssignment::new(w.clone()))?;
            all &= r.is_grading;
            let violations: Vec<[usize; 3]> = r
                .violations
                .iter()
                .map(|&(i, j, k)| [i + 1, j + 1, k + 1])
                .collect();
            json!({ "name": name, "weights": w, "is_grading": r.is_grading, "is_connected": r.is_connected,
                    "length": r.length, "violations": violations })
        } else if args.search {
            let bound = args.bound.unwrap_or(2 * n as i64);
            let r = max_length_search(&algebra, bound)?;
            let mut v = json!({ "name": name, "bound": bound, "weights": r.best.weights, "length": r.report.length,
                    "maximum_length": r.is_maximum_length(), "examined": r.examined.to_string() });
            if !r.is_maximum_length() {
                v["note"] = json!("no maximum-length monomial grading found within bound");
            }
            v
        } else {
            json!({ "name": name, "lattice": universal_grading_lattice(&algebra) })
        };
        print_json(&report);
    }
    Ok(all)
}

fn catalog(args: &CatalogArgs) -> Outcome {
    if args.list {
        let filter = FamilyFilter {
            fixed_dim: args.dim,
            ..Default::default()
        };
        stdout_line(
            &serde_json::to_string_pretty(&list_families(&filter)).expect("json values serialize"),
        );
        return Ok(true);
    }
    let family: Family = args.family.as_deref().unwrap_or_default().parse()?;
    let mut spec = FamilySpec::new(family, args.dim.unwrap_or_default());
    for kv in &args.params {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("expected K=V, got {kv:?}")))?;
        spec = spec.with(k.trim(), v.trim().parse::<Scalar>()?);
    }
    let alg = if args.printed {
        build_family_printed(&spec)?
    } else {
        build_family(&spec)?
    };
    write_out(
        args.emit.as_deref(),
        &serialize_algebra(Some(&spec.label()), &alg),
    )?;
    Ok(true)
}

fn suite(args: &SuiteArgs, seed: u64) -> Outcome {
    let suite = args.name;
    let dims = args
        .dims
        .map_or_else(|| suite.default_dims(), |(a, b)| a..=b);
    let mut cfg = SuiteConfig::new(dims, seed);
    cfg.basis_changes = args.basis_changes;
    if let Some(g) = &args.grid {
        cfg.grid = g.clone();
    }
    let report = run_verification_suite(suite, &cfg)?;
    write_out(
        args.emit.as_deref(),
        &serde_json::to_string_pretty(&report).expect("json values serialize"),
    )?;
    Ok(report.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    let outcome = match &cli.command {
        Command::Verify { file } => verify(file, seed),
        Command::Fingerprint { file, bound } => fingerprint_cmd(file, seed, *bound),
        Command::Grading(a) => grading(a),
        Command::Catalog(a) => catalog(a),
        Command::Suite(a) => suite(a, seed),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(m)) => {
            eprintln!("leibniz: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("leibniz: {m}");
            ExitCode::from(2)
        }
    }
}
