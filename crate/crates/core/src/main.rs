use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use log::{info, warn};

use corrsplit::correlations::{measure_all, MeasureReport, PovmConfig};
use corrsplit::families::werner_state;
use corrsplit::selftest::{run_selftest, SelftestConfig};
use corrsplit::state::DensityMatrix;
use corrsplit::sweep::{fixed6, measure_config, plot_script, run_sweep, write_csv, SweepConfig};

const EXIT_INVALID: u8 = 1;
const EXIT_NOT_CONVERGED: u8 = 2;
const EXIT_SELFTEST_FAILED: u8 = 3;

/// Classical and quantum correlation measures for bipartite states.
#[derive(Parser)]
#[command(name = "corrsplit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Measure one state: a Werner state or a JSON state file.
    Measure(MeasureArgs),
    /// Sweep the Werner family and write the results as CSV.
    Sweep(SweepArgs),
    /// Run reduced-size property checks.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct MeasureArgs {
    /// Werner parameter γ in [0, 1].
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    werner: Option<f64>,
    /// JSON state file with d_a, d_b, re and im.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Frank–Wolfe gap tolerance in bits.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 5000)]
    max_iters: usize,
    /// Also run the stochastic POVM search with this many trials.
    #[arg(long)]
    povm_trials: Option<usize>,
    /// Number of POVM outcomes (2 to 4).
    #[arg(long, default_value_t = 4)]
    povm_outcomes: usize,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 0.0)]
    gamma_min: f64,
    #[arg(long, default_value_t = 1.0)]
    gamma_max: f64,
    #[arg(long, default_value_t = 0.01)]
    gamma_step: f64,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    threads: usize,
    #[arg(long, default_value = "werner_sweep.csv")]
    out: PathBuf,
    /// Also write a gnuplot script for the CSV here.
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[cfg(feature = "fault-injection")]
    #[arg(long, hide = true)]
    inject_fault: bool,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Measure(args) => cmd_measure(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Selftest(args) => cmd_selftest(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}

fn load_state(args: &MeasureArgs) -> anyhow::Result<DensityMatrix> {
    match (&args.file, args.werner) {
        (Some(path), _) => DensityMatrix::load(path).with_context(|| format!("invalid state file {}", path.display())),
        (None, Some(gamma)) => Ok(werner_state(gamma)?),
        (None, None) => anyhow::bail!("one of --werner or --file is required"),
    }
}

fn cmd_measure(args: MeasureArgs) -> anyhow::Result<ExitCode> {
    let rho = load_state(&args)?;
    let mut cfg = measure_config(args.tol, args.seed);
    cfg.ree.max_iters = args.max_iters;
    cfg.povm = args.povm_trials.map(|trials| PovmConfig {
        outcomes: args.povm_outcomes,
        trials,
    });
    let report = measure_all(&rho, &cfg)?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print_report(&rho, &report);
    }
    if report.diagnostics.ree_converged {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!(
            "warning: REE solver did not converge (gap {:.3e} > tol {:.1e})",
            report.diagnostics.ree_gap, args.tol
        );
        Ok(ExitCode::from(EXIT_NOT_CONVERGED))
    }
}

fn print_report(rho: &DensityMatrix, r: &MeasureReport) {
    let d = &r.diagnostics;
    let mut rows: Vec<(&str, String)> = vec![
        ("dims", rho.dims().to_string()),
        ("mutual_info", fixed6(r.mutual_info)),
        ("ree", fixed6(r.ree_value)),
        ("psi", fixed6(r.psi)),
        ("c1", fixed6(r.c1)),
        ("c2", fixed6(r.c2)),
    ];
    if let Some(chi) = r.chi_projective {
        rows.push(("chi_projective", fixed6(chi)));
        rows.push(("psi_minus_chi", fixed6(r.psi - chi)));
    }
    if let Some(chi) = r.chi_povm {
        rows.push(("chi_povm", fixed6(chi)));
    }
    rows.push(("negativity", fixed6(r.negativity)));
    rows.push(("ree_gap", format!("{:.3e}", d.ree_gap)));
    rows.push(("ree_iterations", d.ree_iterations.to_string()));
    rows.push(("ree_converged", d.ree_converged.to_string()));
    rows.push(("ree_certified", d.ree_certified.to_string()));
    rows.push(("ree_support_atoms", d.ree_support_atoms.to_string()));
    if let Some(a) = d.chi_angles {
        rows.push(("chi_theta", fixed6(a.theta)));
        rows.push(("chi_phi", fixed6(a.phi)));
    }
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in rows {
        println!("{k:<width$}  {v}");
    }
}

fn cmd_sweep(args: SweepArgs) -> anyhow::Result<ExitCode> {
    let cfg = SweepConfig {
        gamma_min: args.gamma_min,
        gamma_max: args.gamma_max,
        gamma_step: args.gamma_step,
        tol: args.tol,
        seed: args.seed,
        threads: args.threads,
    };
    let start = Instant::now();
    let rows = run_sweep(&cfg)?;
    for row in rows.iter().filter(|r| !r.converged) {
        warn!("γ = {:.4}: REE gap {:.3e} above tol", row.gamma, row.ree_gap);
    }
    write_csv(&rows, &args.out).with_context(|| format!("writing {}", args.out.display()))?;
    info!(
        "{} rows in {:.2?} -> {}",
        rows.len(),
        start.elapsed(),
        args.out.display()
    );
    if let Some(plot) = &args.plot {
        let script = plot_script(&args.out.to_string_lossy());
        fs::write(plot, script).with_context(|| format!("writing {}", plot.display()))?;
    }
    println!("wrote {} rows to {}", rows.len(), args.out.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_selftest(args: SelftestArgs) -> anyhow::Result<ExitCode> {
    let cfg = SelftestConfig {
        trials: args.trials,
        seed: args.seed,
        #[cfg(feature = "fault-injection")]
        inject_fault: args.inject_fault,
        #[cfg(not(feature = "fault-injection"))]
        inject_fault: false,
    };
    let report = run_selftest(&cfg)?;
    for o in &report.outcomes {
        println!("{} {:<32} {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail);
    }
    match report.first_failure() {
        None => {
            println!("all {} properties passed", report.outcomes.len());
            Ok(ExitCode::SUCCESS)
        }
        Some(f) => {
            eprintln!("selftest failed: {}", f.name);
            Ok(ExitCode::from(EXIT_SELFTEST_FAILED))
        }
    }
}
