use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use spin7_core::census::{self, CensusReport};
use spin7_core::cochain::{relative_cohomology, CWPairComplex, Coefficients};
use spin7_core::torsor::{check_group, FiniteAbelianGroup};
use spin7_core::verify::{self, Scope};
use spin7_core::Error;

const DATA_DIR_ENV: &str = "SPIN7_DATA_DIR";
const MAX_TORSOR_ORDER: u64 = 64;

#[derive(Parser)]
#[command(name = "spin7", version, about = "Exact checks for Spin(7) representations, cochains, torsors and 8-manifold census data")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    /// Directory holding bundled data files.
    #[arg(long, env = DATA_DIR_ENV, global = true)]
    data_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites.
    Verify {
        #[arg(value_enum, default_value_t = ScopeArg::All)]
        scope: ScopeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Relative cellular cohomology of a CW pair given in the text format.
    Cohomology {
        file: PathBuf,
        /// Report only this degree.
        #[arg(long)]
        degree: Option<usize>,
        /// Coefficients: z, z2, or zN for Z/N.
        #[arg(long, default_value = "z", value_parser = parse_coeff)]
        coeff: Coefficients,
    },
    /// Spinor Euler numbers and structure counts for a manifold data file.
    Census {
        file: Option<PathBuf>,
        /// Treat the boundary G2-structures as fixed when counting.
        #[arg(long)]
        boundary_g2_fixed: bool,
    },
    /// Check the difference/action correspondence on all abelian groups up to an order.
    TorsorCheck {
        #[arg(long, default_value_t = 16)]
        max_order: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    Clifford,
    Spin,
    Reps,
    Cochain,
    Torsor,
    Census,
    All,
}

impl From<ScopeArg> for Scope {
    fn from(s: ScopeArg) -> Scope {
        match s {
            ScopeArg::Clifford => Scope::Clifford,
            ScopeArg::Spin => Scope::Spin,
            ScopeArg::Reps => Scope::Reps,
            ScopeArg::Cochain => Scope::Cochain,
            ScopeArg::Torsor => Scope::Torsor,
            ScopeArg::Census => Scope::Census,
            ScopeArg::All => Scope::All,
        }
    }
}

fn parse_coeff(s: &str) -> Result<Coefficients, String> {
    let lower = s.to_ascii_lowercase();
    let c = match lower.as_str() {
        "z" => Coefficients::Integers,
        _ => {
            let n = lower
                .strip_prefix('z')
                .and_then(|rest| rest.strip_prefix('/').or(Some(rest)))
                .and_then(|n| n.parse::<u64>().ok())
                .ok_or_else(|| format!("expected z, z2 or zN, got `{s}`"))?;
            Coefficients::Mod(n)
        }
    };
    c.modulus().map_err(|e| e.to_string())
}

enum Failure {
    Usage(anyhow::Error),
    Check(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::Argument(_) | Error::Validation(_) => Failure::Usage(e.into()),
            other => Failure::Check(other.into()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    match &cli.command {
        Command::Verify { scope, seed } => {
            let report = verify::run((*scope).into(), *seed)?;
            match cli.format {
                Format::Text => println!("{report}"),
                Format::Structured => {
                    let checks: Vec<Value> = report
                        .checks
                        .iter()
                        .map(|c| json!({"suite": c.suite, "name": c.name, "detail": c.detail, "passed": c.passed}))
                        .collect();
                    emit(json!({"scope": report.scope.name(), "seed": report.seed, "passed": report.passed(), "checks": checks}));
                }
            }
            Ok(report.passed())
        }
        Command::Cohomology { file, degree, coeff } => {
            let path = resolve(file, cli.data_dir.as_deref());
            let text = read(&path)?;
            let x = CWPairComplex::parse(&text)?;
            let degrees: Vec<usize> = match degree {
                Some(k) if *k > x.top_dim() => {
                    return Err(Error::DegreeOutOfRange { degree: *k, top: x.top_dim() }.into());
                }
                Some(k) => vec![*k],
                None => (0..=x.top_dim()).collect(),
            };
            let space = if x.sub_flags().iter().flatten().any(|&f| f) { "X,Y" } else { "X" };
            let mut rows = Vec::new();
            for k in degrees {
                let g = relative_cohomology(&x, k, *coeff)?;
                match cli.format {
                    Format::Text => println!("H^{k}({space}; {coeff}) = {g}"),
                    Format::Structured => rows.push(json!({
                        "degree": k,
                        "group": g.to_string(),
                        "free_rank": g.free_rank,
                        "torsion": g.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                    })),
                }
            }
            if cli.format == Format::Structured {
                emit(json!({"file": path.display().to_string(), "coefficients": coeff.to_string(), "cohomology": rows}));
            }
            Ok(true)
        }
        Command::Census { file, boundary_g2_fixed } => {
            let path = match file {
                Some(f) => resolve(f, cli.data_dir.as_deref()),
                None => data_dir(cli.data_dir.as_deref()).join("manifolds.txt"),
            };
            let manifolds = census::parse_manifolds(&read(&path)?)?;
            let rows: Vec<(String, Result<CensusReport, Error>)> =
                manifolds.iter().map(|d| (d.name.clone(), census::census(d, *boundary_g2_fixed))).collect();
            let exist = rows.iter().filter(|(_, r)| matches!(r, Ok(r) if r.exists)).count();
            let errors = rows.iter().filter(|(_, r)| r.is_err()).count();
            match cli.format {
                Format::Text => print_census(&rows, exist, errors),
                Format::Structured => {
                    let entries: Vec<Value> = rows
                        .iter()
                        .map(|(name, r)| match r {
                            Ok(r) => json!({
                                "name": r.name,
                                "e_s_plus": r.e_s_plus.to_string(),
                                "e_s_minus": r.e_s_minus.to_string(),
                                "exists": r.exists,
                                "count": r.count.to_string(),
                                "holonomy": r.holonomy_note,
                                "warnings": r.warnings,
                            }),
                            Err(e) => json!({"name": name, "error": e.to_string()}),
                        })
                        .collect();
                    emit(json!({"manifolds": entries, "with_structure": exist, "total": rows.len(), "errors": errors}));
                }
            }
            Ok(errors == 0)
        }
        Command::TorsorCheck { max_order } => {
            if *max_order == 0 || *max_order > MAX_TORSOR_ORDER {
                return Err(Failure::Usage(anyhow::anyhow!("--max-order must lie in 1..={MAX_TORSOR_ORDER}")));
            }
            let mut results = Vec::new();
            for g in FiniteAbelianGroup::all_up_to_order(*max_order) {
                results.push(check_group(&g)?);
            }
            let failed = results.iter().filter(|r| !r.passed()).count();
            match cli.format {
                Format::Text => {
                    for r in &results {
                        println!("{:<4} {:<24} {}", r.group.order(), r.group.to_string(), if r.passed() { "PASS" } else { "FAIL" });
                    }
                    println!("{} groups of order <= {max_order}, {failed} failed", results.len());
                }
                Format::Structured => {
                    let groups: Vec<Value> = results
                        .iter()
                        .map(|r| {
                            json!({
                                "group": r.group.to_string(),
                                "order": r.group.order(),
                                "axioms": r.axioms,
                                "antisymmetric": r.antisymmetric,
                                "roundtrip_action": r.roundtrip_action,
                                "roundtrip_difference": r.roundtrip_difference,
                                "rejects_degenerate": r.rejects_degenerate,
                            })
                        })
                        .collect();
                    emit(json!({"max_order": max_order, "groups": groups, "failed": failed}));
                }
            }
            Ok(failed == 0)
        }
    }
}

fn print_census(rows: &[(String, Result<CensusReport, Error>)], exist: usize, errors: usize) {
    let name_w = rows.iter().map(|(n, _)| n.len()).max().unwrap_or(0).max(8);
    println!("{:<name_w$}  {:>8}  {:>6}  {:>12}  holonomy", "manifold", "e(S+)", "exists", "count");
    for (name, r) in rows {
        match r {
            Ok(r) => {
                println!(
                    "{:<name_w$}  {:>8}  {:>6}  {:>12}  {}",
                    r.name,
                    r.e_s_plus.to_string(),
                    if r.exists { "yes" } else { "no" },
                    r.count.to_string(),
                    r.holonomy_note.as_deref().unwrap_or("-")
                );
                for w in &r.warnings {
                    println!("{:<name_w$}  warning: {w}", "");
                }
            }
            Err(e) => println!("{name:<name_w$}  error: {e}"),
        }
    }
    print!("{} manifolds, {exist} admit a Spin(7)-structure", rows.len());
    if errors > 0 {
        print!(", {errors} could not be evaluated");
    }
    println!();
}

fn emit(v: Value) {
    println!("{}", serde_json::to_string_pretty(&v).expect("json values serialize"));
}

fn data_dir(explicit: Option<&Path>) -> PathBuf {
    explicit.map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("data"))
}

/// Paths that do not exist as given are looked up in the data directory.
fn resolve(file: &Path, data: Option<&Path>) -> PathBuf {
    if file.exists() || file.is_absolute() {
        return file.to_path_buf();
    }
    let candidate = data_dir(data).join(file);
    if candidate.exists() { candidate } else { file.to_path_buf() }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display())).map_err(Failure::Usage)
}
