//! `pil`: exact computations on central hyperplane arrangements and the
//! verification scenarios built on them.
//!
//! Exit codes: 0 when everything passes, 1 on a verification failure, 2 on
//! an input error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use pil_cli::fileformat::parse_arrangement;
use pil_cli::report::{Recorder, ScenarioReport};
use pil_cli::scenario;
use pil_core::{
    exact_sequence_defect, tutte, GradedPoly, IdealSpec, MatroidOracle, OperatorSpace,
    QArrangement, Variant, Q,
};

#[derive(Parser)]
#[command(
    name = "pil",
    about = "Power ideals and inverse systems of central hyperplane arrangements, exactly",
    version
)]
struct Cli {
    /// Emit one machine-readable JSON document instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert function of the inverse system
    Hilbert {
        /// Arrangement file
        #[arg(long)]
        file: PathBuf,
        /// Integer shift of the power ideal
        #[arg(short, allow_negative_numbers = true)]
        k: i64,
        /// Generate from line powers only
        #[arg(long)]
        lines_only: bool,
    },
    /// Basis of one graded piece of the inverse system
    Basis {
        #[arg(long)]
        file: PathBuf,
        #[arg(short, allow_negative_numbers = true)]
        k: i64,
        /// Degree of the graded piece
        #[arg(short)]
        d: usize,
    },
    /// Tutte polynomial of the arrangement's matroid
    Tutte {
        #[arg(long)]
        file: PathBuf,
        /// Evaluate at a rational point x y
        #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_negative_numbers = true)]
        eval: Option<Vec<String>>,
    },
    /// Minimum number of hyperplanes missed by a nonzero vector
    Rho {
        #[arg(long)]
        file: PathBuf,
    },
    /// One-dimensional intersection subspaces
    Lines {
        #[arg(long)]
        file: PathBuf,
    },
    /// Dimension defect of the deletion-contraction sequence
    Defect {
        #[arg(long)]
        file: PathBuf,
        #[arg(short, allow_negative_numbers = true)]
        k: i64,
        /// Label of the hyperplane to delete and contract
        #[arg(long)]
        hyperplane: usize,
    },
    /// Run a verification scenario
    Verify {
        #[arg(value_enum)]
        scenario: ScenarioName,
        /// Planes per pencil for the seeded constructions
        #[arg(short, default_value_t = 3)]
        m: usize,
        /// Seed for the deterministic generic draws
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ScenarioName {
    Prop1,
    Prop2,
    Prop3,
    Lemmas,
    All,
}

fn load(file: &PathBuf) -> Result<QArrangement, String> {
    let text =
        fs::read_to_string(file).map_err(|e| format!("cannot read {}: {e}", file.display()))?;
    parse_arrangement(&text).map_err(|e| format!("{}: {e}", file.display()))
}

fn print_report(report: &ScenarioReport, as_json: bool) {
    if as_json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render_text());
    }
}

fn run(cli: &Cli) -> Result<bool, String> {
    let report = match &cli.command {
        Command::Hilbert {
            file,
            k,
            lines_only,
        } => {
            let a = load(file)?;
            let variant = if *lines_only {
                Variant::Lines
            } else {
                Variant::Full
            };
            let spec = IdealSpec::new(a, *k, variant).map_err(|e| e.to_string())?;
            let hilbert = spec.hilbert_function();
            let mut r = Recorder::new("hilbert");
            r.input("file", file.display().to_string());
            r.input("k", *k);
            r.input("lines_only", *lines_only);
            r.info("hilbert", json!(hilbert.dims));
            r.info("total", hilbert.total());
            r.finish()
        }
        Command::Basis { file, k, d } => {
            let a = load(file)?;
            let spec = IdealSpec::new(a, *k, Variant::Full).map_err(|e| e.to_string())?;
            let basis: Vec<String> = spec
                .inverse_system_basis(*d)
                .iter()
                .map(|p| p.to_string())
                .collect();
            let mut r = Recorder::new("basis");
            r.input("file", file.display().to_string());
            r.input("k", *k);
            r.input("d", *d);
            r.info("dimension", basis.len());
            r.info("basis", json!(basis));
            r.finish()
        }
        Command::Tutte { file, eval } => {
            let a = load(file)?;
            let oracle = MatroidOracle::from_arrangement(&a).map_err(|e| e.to_string())?;
            let t = tutte(&oracle);
            let mut r = Recorder::new("tutte");
            r.input("file", file.display().to_string());
            r.info("polynomial", t.to_string());
            r.info("coefficients", json!(t.coefficients()));
            if let Some(point) = eval {
                let x = Q::from_str(&point[0])
                    .map_err(|_| format!("malformed rational '{}'", point[0]))?;
                let y = Q::from_str(&point[1])
                    .map_err(|_| format!("malformed rational '{}'", point[1]))?;
                r.input("eval", json!([x.to_string(), y.to_string()]));
                r.info("value", t.eval(&x, &y).to_string());
            }
            r.finish()
        }
        Command::Rho { file } => {
            let a = load(file)?;
            let mut r = Recorder::new("rho");
            r.input("file", file.display().to_string());
            r.info("rho", a.rho_min());
            r.info("n", a.n());
            r.info("dim", a.dim());
            r.info("large_span_dim", a.large_span().rows());
            r.finish()
        }
        Command::Lines { file } => {
            let a = load(file)?;
            let mut r = Recorder::new("lines");
            r.input("file", file.display().to_string());
            let lines = a.lines();
            r.info("count", lines.len());
            let listed: Vec<serde_json::Value> = lines
                .iter()
                .map(|l| {
                    let direction: GradedPoly<Q, OperatorSpace> =
                        pil_core::expand_power(l.direction(), 1).expect("line direction nonzero");
                    json!({
                        "direction": l.direction().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                        "as_operator": direction.to_string(),
                        "on_hyperplanes": l.containing_set(),
                        "rho": a.n() - l.m(),
                    })
                })
                .collect();
            r.info("lines", json!(listed));
            r.finish()
        }
        Command::Defect {
            file,
            k,
            hyperplane,
        } => {
            let a = load(file)?;
            let defect = exact_sequence_defect(&a, *hyperplane, *k).map_err(|e| e.to_string())?;
            let deleted = a.delete(*hyperplane).map_err(|e| e.to_string())?;
            let (contracted, _) = a.contract(*hyperplane).map_err(|e| e.to_string())?;
            let mut r = Recorder::new("defect");
            r.input("file", file.display().to_string());
            r.input("k", *k);
            r.input("hyperplane", *hyperplane);
            r.info("defect", json!(defect));
            r.info("all_zero", defect.iter().all(|&x| x == 0));
            r.info("rho_deleted", deleted.rho_min());
            r.info("rho_contracted", contracted.rho_min());
            r.finish()
        }
        Command::Verify { scenario, m, seed } => match scenario {
            ScenarioName::Prop1 => scenario::scenario_prop1(),
            ScenarioName::Prop2 => {
                scenario::scenario_prop2(*m, *seed).map_err(|e| e.to_string())?
            }
            ScenarioName::Prop3 => {
                scenario::scenario_prop3(*m, *seed).map_err(|e| e.to_string())?
            }
            ScenarioName::Lemmas => scenario::scenario_lemmas(*seed).map_err(|e| e.to_string())?,
            ScenarioName::All => scenario::verify_all(*m, *seed).map_err(|e| e.to_string())?,
        },
    };
    print_report(&report, cli.json);
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
