//! Werner-family sweep: one row of measures per γ grid point, written as CSV.
//!
//! Rows are independent and may be computed in parallel. Each row's solver
//! seed is `seed ^ splitmix64(index)`, so output depends only on the config
//! and not on the thread count or scheduling.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use rayon::prelude::*;

use crate::correlations::{measure_all, MeasureConfig};
use crate::entanglement::ReeConfig;
use crate::error::{Error, Result};
use crate::families::werner_state;

pub const CSV_HEADER: &str = "gamma,mutual_info,ree,psi,chi_projective,c1,c2,psi_minus_chi,psi_minus_c";

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub gamma_min: f64,
    pub gamma_max: f64,
    pub gamma_step: f64,
    pub tol: f64,
    pub seed: u64,
    /// Worker threads; 0 uses rayon's default.
    pub threads: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            gamma_min: 0.0,
            gamma_max: 1.0,
            gamma_step: 0.01,
            tol: 1e-6,
            seed: 0,
            threads: 0,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = 0.0 <= self.gamma_min
            && self.gamma_min <= self.gamma_max
            && self.gamma_max <= 1.0
            && self.gamma_step > 0.0
            && self.tol > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "need 0 ≤ gamma_min ≤ gamma_max ≤ 1, gamma_step > 0 and tol > 0 \
                 (got gamma_min {}, gamma_max {}, gamma_step {}, tol {})",
                self.gamma_min, self.gamma_max, self.gamma_step, self.tol
            )))
        }
    }

    /// Grid points `gamma_min + k·gamma_step`, up to `gamma_max` inclusive.
    pub fn grid(&self) -> Vec<f64> {
        let count = ((self.gamma_max - self.gamma_min) / self.gamma_step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|k| (self.gamma_min + k as f64 * self.gamma_step).min(self.gamma_max))
            .collect()
    }

    pub fn row_seed(&self, index: usize) -> u64 {
        self.seed ^ splitmix64(index as u64)
    }
}

/// SplitMix64 finalizer, used to decorrelate per-row seeds.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub gamma: f64,
    pub mutual_info: f64,
    pub ree: f64,
    pub psi: f64,
    pub chi_projective: f64,
    pub c1: f64,
    pub c2: f64,
    pub psi_minus_chi: f64,
    pub psi_minus_c: f64,
    /// Solver diagnostics, not written to the CSV.
    pub ree_gap: f64,
    pub negativity: f64,
    pub converged: bool,
}

impl SweepRow {
    pub fn to_csv_line(&self) -> String {
        let fields = [
            self.gamma,
            self.mutual_info,
            self.ree,
            self.psi,
            self.chi_projective,
            self.c1,
            self.c2,
            self.psi_minus_chi,
            self.psi_minus_c,
        ];
        let mut line = String::new();
        for (k, v) in fields.iter().enumerate() {
            if k > 0 {
                line.push(',');
            }
            write!(line, "{}", fixed6(*v)).expect("write to String");
        }
        line
    }
}

/// Six-decimal fixed point without a negative zero.
pub fn fixed6(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

pub fn measure_config(tol: f64, seed: u64) -> MeasureConfig {
    MeasureConfig {
        ree: ReeConfig::default().with_tol(tol).with_seed(seed),
        ..MeasureConfig::default()
    }
}

/// All measures for the Werner state at `gamma`.
pub fn sweep_row(gamma: f64, tol: f64, seed: u64) -> Result<SweepRow> {
    let rho = werner_state(gamma)?;
    let report = measure_all(&rho, &measure_config(tol, seed))?;
    let chi = report.chi_projective.expect("Werner states have a qubit A");
    Ok(SweepRow {
        gamma,
        mutual_info: report.mutual_info,
        ree: report.ree_value,
        psi: report.psi,
        chi_projective: chi,
        c1: report.c1,
        c2: report.c2,
        psi_minus_chi: report.psi - chi,
        psi_minus_c: report.psi - report.c1,
        ree_gap: report.diagnostics.ree_gap,
        negativity: report.negativity,
        converged: report.diagnostics.ree_converged,
    })
}

/// Computes every grid row, in ascending γ order.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let grid = cfg.grid();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    pool.install(|| {
        grid.par_iter()
            .enumerate()
            .map(|(k, &gamma)| sweep_row(gamma, cfg.tol, cfg.row_seed(k)))
            .collect::<Result<Vec<_>>>()
    })
}

pub fn render_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv_line());
        out.push('\n');
    }
    out
}

/// Writes the CSV via a temporary sibling file; nothing is left behind on failure.
pub fn write_csv(rows: &[SweepRow], path: &Path) -> Result<()> {
    let tmp = path.with_extension("csv.partial");
    let result = (|| -> Result<()> {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(render_csv(rows).as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, path)?;
        Ok(())
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

/// Gnuplot script plotting Ψ, Ψ − χ_B^p and Ψ − C from the CSV at `csv_path`.
pub fn plot_script(csv_path: &str) -> String {
    format!(
        "# gnuplot script for the Werner-state classical correlation curves\n\
         set datafile separator ','\n\
         set key top left\n\
         set xlabel 'gamma'\n\
         set ylabel 'bits'\n\
         set xrange [0:1]\n\
         set yrange [-0.05:1.05]\n\
         plot '{csv_path}' using 1:4 skip 1 with lines dashtype 3 title 'Psi', \\\n\
         \x20    '{csv_path}' using 1:8 skip 1 with lines dashtype 1 title 'Psi - chi_B^p', \\\n\
         \x20    '{csv_path}' using 1:9 skip 1 with lines dashtype 2 title 'Psi - C'\n"
    )
}
