//! Command-line front end: model configs in, curves/reports/verdicts out.
//!
//! Exit codes: 0 on HOLDS/VALIDATED/success, 1 on FAILS/CONTRADICTION,
//! 2 on configuration errors (including unknown flags). Reports go to
//! stdout as JSON; curves go to `--out` as CSV with 17-significant-digit
//! numbers so fixtures stay bit-stable. `STOCHORD_THREADS` caps the worker
//! pool.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use stochord::config::ModelConfig;
use stochord::mc::{empirical_vs_analytic, sample_extreme};
use stochord::orders::{
    default_p_grid, default_x_grid, disp_check, hr_check, lr_check, rh_check, st_check,
    OrderReport, Verdict,
};
use stochord::theorems::{
    check_theorem, default_ce_grid, random_validation_suite, run_counterexample, scan_relaxations,
    Counterexample, Overall, TheoremId,
};
use stochord::{Error, ExtremeModel};

#[derive(Parser)]
#[command(
    name = "stochord",
    about = "Random extremes of dependent Kw-G samples and stochastic-order verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalWhat {
    Cdf,
    Sf,
    Pdf,
    Hazard,
    Rhazard,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    St,
    Hr,
    Rh,
    Lr,
    Disp,
}

#[derive(Clone, Copy, ValueEnum)]
enum CeArg {
    Ce1,
    Ce2,
    Ce3,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a model curve on an x grid and write it as CSV.
    Eval {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum)]
        what: EvalWhat,
        #[arg(long, default_value_t = 0.01)]
        xmin: f64,
        #[arg(long, default_value_t = 10.0)]
        xmax: f64,
        #[arg(long, default_value_t = 200)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Grid verdict of a stochastic order between two models (A vs B).
    CheckOrder {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, value_enum)]
        order: OrderArg,
    },
    /// Check one theorem on a model pair, or run its seeded random suite.
    VerifyTheorem {
        #[arg(long)]
        id: String,
        #[arg(long)]
        a: Option<PathBuf>,
        #[arg(long)]
        b: Option<PathBuf>,
        #[arg(long, default_value_t = false)]
        random: bool,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Reproduce a published counterexample curve and report sign changes.
    Counterexample {
        #[arg(long, value_enum)]
        which: CeArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hypothesis-relaxation search for conclusion violations.
    Scan {
        #[arg(long)]
        id: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Draw extreme-value samples and write them as CSV plus a metadata
    /// sidecar.
    Sample {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        size: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Also report the sup distance between the empirical and analytic cdfs.
        #[arg(long, default_value_t = false)]
        check: bool,
    },
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn load_model(path: &PathBuf) -> Result<(ModelConfig, ExtremeModel), Error> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    let cfg = ModelConfig::from_json(&text)?;
    let model = cfg.to_model()?;
    Ok((cfg, model))
}

fn write_file(path: &PathBuf, content: &str) -> Result<(), Error> {
    fs::write(path, content).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

fn verdict_exit(v: Verdict) -> ExitCode {
    match v {
        Verdict::Holds | Verdict::Inconclusive => ExitCode::SUCCESS,
        Verdict::Fails => ExitCode::from(1),
    }
}

fn report_json(report: &OrderReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Eval {
            model,
            what,
            xmin,
            xmax,
            points,
            out,
        } => {
            let (_, m) = load_model(&model)?;
            if !(xmin > 0.0 && xmax > xmin && points >= 2) {
                return Err(Error::Config("need 0 < xmin < xmax and points >= 2".into()));
            }
            let mut csv = String::from("x,value\n");
            for i in 0..points {
                let x = xmin + (xmax - xmin) * i as f64 / (points - 1) as f64;
                let v = match what {
                    EvalWhat::Cdf => m.cdf(x),
                    EvalWhat::Sf => m.sf(x),
                    EvalWhat::Pdf => m.density(x)?,
                    EvalWhat::Hazard => m.hazard(x)?,
                    EvalWhat::Rhazard => m.reversed_hazard(x)?,
                };
                csv.push_str(&format!("{},{}\n", num(x), num(v)));
            }
            match out {
                Some(p) => write_file(&p, &csv)?,
                None => print!("{csv}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckOrder { a, b, order } => {
            let (_, ma) = load_model(&a)?;
            let (_, mb) = load_model(&b)?;
            let report = match order {
                OrderArg::Disp => disp_check(&ma, &mb, &default_p_grid())?,
                _ => {
                    let grid = default_x_grid(&ma, &mb)?;
                    match order {
                        OrderArg::St => st_check(&ma, &mb, &grid),
                        OrderArg::Hr => hr_check(&ma, &mb, &grid),
                        OrderArg::Rh => rh_check(&ma, &mb, &grid),
                        OrderArg::Lr => lr_check(&ma, &mb, &grid),
                        OrderArg::Disp => unreachable!(),
                    }
                }
            };
            println!("{}", report_json(&report));
            Ok(verdict_exit(report.verdict))
        }
        Command::VerifyTheorem {
            id,
            a,
            b,
            random,
            trials,
            seed,
        } => {
            let id = TheoremId::parse(&id)?;
            if random {
                let summary = random_validation_suite(id, trials, seed)?;
                println!(
                    "{}",
                    serde_json::to_string_pretty(&summary).expect("serializes")
                );
                return Ok(if summary.contradictions == 0 {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                });
            }
            let (a, b) = match (a, b) {
                (Some(a), Some(b)) => (a, b),
                _ => {
                    return Err(Error::Config(
                        "verify-theorem needs --a and --b, or --random".into(),
                    ))
                }
            };
            let (_, ma) = load_model(&a)?;
            let (_, mb) = load_model(&b)?;
            let case = check_theorem(id, &ma, &mb)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&case).expect("serializes")
            );
            Ok(match case.overall {
                Overall::Contradiction => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            })
        }
        Command::Counterexample { which, out } => {
            let which = match which {
                CeArg::Ce1 => Counterexample::Ce1,
                CeArg::Ce2 => Counterexample::Ce2,
                CeArg::Ce3 => Counterexample::Ce3,
            };
            let run = run_counterexample(which, &default_ce_grid());
            if let Some(p) = out {
                let mut csv = String::from("x,diff,model_A_value,model_B_value\n");
                for pt in &run.curve {
                    csv.push_str(&format!(
                        "{},{},{},{}\n",
                        num(pt.x),
                        num(pt.diff),
                        num(pt.model_a_value),
                        num(pt.model_b_value)
                    ));
                }
                write_file(&p, &csv)?;
            }
            let summary = serde_json::json!({
                "which": run.which,
                "sign_change": run.sign_change,
                "crossing_locations": run.crossing_locations,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&summary).expect("serializes")
            );
            Ok(if run.sign_change {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Scan { id, trials, seed } => {
            let id = TheoremId::parse(&id)?;
            let reports = scan_relaxations(id, trials, seed)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&reports).expect("serializes")
            );
            let contradictions: usize = reports.iter().map(|r| r.contradictions).sum();
            Ok(if contradictions == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Sample {
            model,
            size,
            seed,
            out,
            check,
        } => {
            let (cfg, m) = load_model(&model)?;
            let batch = sample_extreme(&m, size, seed)?;
            let mut csv = String::from("draw\n");
            for &d in &batch.draws {
                csv.push_str(&num(d));
                csv.push('\n');
            }
            write_file(&out, &csv)?;
            let meta_path = out.with_extension("meta.json");
            let mut meta = serde_json::json!({
                "seed": seed,
                "size": size,
                "model_hash": cfg.hash(),
                "rng_stream": batch.stream,
            });
            if check {
                let lo = m.quantile(0.001)?;
                let hi = m.quantile(0.999)?;
                let grid: Vec<f64> = (0..512)
                    .map(|i| lo + (hi - lo) * i as f64 / 511.0)
                    .collect();
                let sup = empirical_vs_analytic(&batch, &m, &grid);
                meta["sup_distance"] = serde_json::json!(sup);
            }
            write_file(
                &meta_path,
                &serde_json::to_string_pretty(&meta).expect("serializes"),
            )?;
            println!(
                "{}",
                serde_json::to_string_pretty(&meta).expect("serializes")
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("STOCHORD_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap prints help/version itself with success status
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
