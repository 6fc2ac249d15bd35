//! Command-line front end: spectra, sweeps, wavefunction samples and the
//! cross-checks, as CSV (or JSON) on stdout.
//!
//! Exit codes: 0 success, 2 invalid input, 3 not enough roots in the scan
//! window, 1 anything else.

use std::f64::consts::PI;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use heun_sphere::classical::bohr_sommerfeld_level;
use heun_sphere::limits::planar_limit_check;
use heun_sphere::oracle::richardson;
use heun_sphere::sweep::{fmt_float, s_grid, success_rate, sweep, write_csv, Source, SweepPlan};
use heun_sphere::{spectrum, Error, PhysicalConfig, ScanSettings, WaveFunction};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "heun-sphere", version, about = "Charged particle on a sphere: monopole field plus a polar Coulomb charge")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Copy)]
struct ConfigArgs {
    /// Half-flux S through the sphere
    #[arg(long = "S", value_name = "REAL", allow_negative_numbers = true)]
    s: f64,
    /// Azimuthal quantum number
    #[arg(long, allow_negative_numbers = true)]
    m: i64,
    /// Coulomb ratio R/l0
    #[arg(long, allow_negative_numbers = true)]
    coulomb: f64,
}

impl ConfigArgs {
    fn config(&self) -> Result<PhysicalConfig, Error> {
        PhysicalConfig::new(self.s, self.m, self.coulomb)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Lowest levels from the continued-fraction condition
    Spectrum {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long, default_value_t = 3)]
        levels: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Upper end of the energy scan (grows automatically when absent)
        #[arg(long)]
        scan_max: Option<f64>,
    },
    /// Levels over a grid of S and m
    Sweep {
        /// Comma-separated azimuthal numbers
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        m_list: Vec<i64>,
        /// lo:hi:step
        #[arg(long = "S-range", value_name = "LO:HI:STEP", allow_hyphen_values = true)]
        s_range: String,
        #[arg(long)]
        coulomb: f64,
        #[arg(long, default_value_t = 1)]
        levels: usize,
        /// Level sources: cf, oracle, bohr_sommerfeld, landau
        #[arg(long, value_delimiter = ',', default_value = "cf")]
        sources: Vec<String>,
        /// Output file (stdout when absent)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Samples of the normalized eigenfunction F(theta)
    Wavefunction {
        #[command(flatten)]
        config: ConfigArgs,
        /// Level index, from 1
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 256)]
        theta_samples: usize,
    },
    /// Semiclassical levels, optionally against the quantum ones
    Classical {
        #[command(flatten)]
        config: ConfigArgs,
        /// Quantization number, from 0
        #[arg(long)]
        n: u32,
        #[arg(long)]
        compare: bool,
    },
    /// Continued-fraction levels side by side with the finite-difference oracle
    OracleCheck {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Coarse grid; the oracle extrapolates from N and 2N cells
        #[arg(long = "N-grid", default_value_t = 4000)]
        n_grid: usize,
        /// Exit 1 when the largest relative deviation exceeds this
        #[arg(long, default_value_t = 1e-3)]
        tolerance: f64,
    },
    /// Ground-level Coulomb shifts along growing spheres, coulomb = scale * sqrt(S)
    Limits {
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        m: i64,
        #[arg(long, default_value_t = 1.0)]
        coulomb_scale: f64,
        #[arg(long = "S-sequence", value_delimiter = ',', default_value = "25,50,100,200")]
        s_sequence: Vec<f64>,
    },
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Lib(Error),
    Io(io::Error),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 2,
            Failure::Lib(Error::InvalidConfig(_) | Error::InvalidArgument(_)) => 2,
            Failure::Lib(Error::InsufficientRoots { .. }) => 3,
            _ => 1,
        }
    }

    fn message(&self) -> String {
        let text = match self {
            Failure::Invalid(s) | Failure::Check(s) => s.clone(),
            Failure::Lib(e) => e.to_string(),
            Failure::Io(e) => e.to_string(),
        };
        text.replace('\n', " ")
    }
}

#[derive(Serialize)]
struct LevelRow {
    #[serde(rename = "S")]
    s: f64,
    m: i64,
    coulomb: f64,
    n: usize,
    epsilon: f64,
    h_n: Option<f64>,
    cf_residual: f64,
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_float).unwrap_or_default()
}

fn run_spectrum(out: &mut impl Write, args: ConfigArgs, levels: usize, format: Format, scan_max: Option<f64>) -> Result<(), Failure> {
    let config = args.config()?;
    let scan = ScanSettings { eps_max: scan_max, ..Default::default() };
    let rows: Vec<LevelRow> = spectrum(&config, levels, &scan)?
        .into_iter()
        .map(|l| LevelRow {
            s: config.s(),
            m: config.m(),
            coulomb: config.coulomb(),
            n: l.n,
            epsilon: l.epsilon,
            h_n: l.h_n,
            cf_residual: l.cf_residual,
        })
        .collect();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &rows).map_err(|e| Failure::Io(e.into()))?;
            writeln!(out)?;
        }
        Format::Csv => {
            writeln!(out, "S,m,coulomb,n,epsilon,h_n,cf_residual")?;
            for r in rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    fmt_float(r.s),
                    r.m,
                    fmt_float(r.coulomb),
                    r.n,
                    fmt_float(r.epsilon),
                    opt(r.h_n),
                    fmt_float(r.cf_residual)
                )?;
            }
        }
    }
    Ok(())
}

fn parse_range(text: &str) -> Result<(f64, f64, f64), Failure> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || Failure::Invalid(format!("--S-range expects lo:hi:step, got '{text}'"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    Ok((nums[0], nums[1], nums[2]))
}

fn run_sweep(
    out: &mut impl Write,
    m_list: Vec<i64>,
    s_range: &str,
    coulomb: f64,
    levels: usize,
    sources: &[String],
    path: Option<PathBuf>,
) -> Result<(), Failure> {
    let (lo, hi, step) = parse_range(s_range)?;
    let sources = sources
        .iter()
        .map(|s| s.parse::<Source>())
        .collect::<Result<Vec<_>, _>>()?;
    let plan = SweepPlan {
        m_list,
        s_values: s_grid(lo, hi, step)?,
        coulomb,
        levels,
        sources,
    };
    let records = sweep(&plan)?;
    match path {
        Some(p) => write_csv(&records, BufWriter::new(File::create(p)?))?,
        None => write_csv(&records, &mut *out)?,
    }
    let rate = success_rate(&records);
    if rate < 0.9 {
        return Err(Failure::Check(format!(
            "only {:.1}% of sweep rows succeeded",
            100.0 * rate
        )));
    }
    Ok(())
}

fn run_wavefunction(out: &mut impl Write, args: ConfigArgs, n: usize, samples: usize) -> Result<(), Failure> {
    if n == 0 || samples == 0 {
        return Err(Failure::Invalid("--n and --theta-samples must be >= 1".into()));
    }
    let config = args.config()?;
    let level = spectrum(&config, n, &ScanSettings::default())?[n - 1];
    let wf = WaveFunction::new(&config, level)?;
    let step = PI / samples as f64;
    let thetas: Vec<f64> = (0..samples).map(|i| (i as f64 + 0.5) * step).collect();
    let values = wf.eval_many(&thetas)?;
    writeln!(out, "theta,F")?;
    let mut sum = 0.0;
    for (t, f) in thetas.iter().zip(&values) {
        writeln!(out, "{},{}", fmt_float(*t), fmt_float(*f))?;
        sum += f * f * t.sin();
    }
    // Midpoint rule over the printed samples.
    writeln!(out, "# epsilon={}", fmt_float(level.epsilon))?;
    writeln!(out, "# norm={}", fmt_float(2.0 * PI * step * sum))?;
    Ok(())
}

fn run_classical(out: &mut impl Write, args: ConfigArgs, n: u32, compare: bool) -> Result<(), Failure> {
    let config = args.config()?;
    let bs = bohr_sommerfeld_level(&config, n)?;
    if compare {
        let quantum = spectrum(&config, n as usize + 1, &ScanSettings::default())?[n as usize].epsilon;
        let percent = 100.0 * (bs - quantum) / quantum;
        writeln!(out, "n,epsilon_bs,quantum_n,epsilon_quantum,deviation_percent")?;
        writeln!(out, "{n},{},{},{},{}", fmt_float(bs), n + 1, fmt_float(quantum), fmt_float(percent))?;
    } else {
        writeln!(out, "n,epsilon_bs")?;
        writeln!(out, "{n},{}", fmt_float(bs))?;
    }
    Ok(())
}

fn run_oracle_check(out: &mut impl Write, args: ConfigArgs, k: usize, n_grid: usize, tolerance: f64) -> Result<(), Failure> {
    let config = args.config()?;
    let cf = spectrum(&config, k, &ScanSettings::default())?;
    let fd = richardson(&config, k, n_grid)?;
    writeln!(out, "n,epsilon_cf,epsilon_oracle,rel_deviation")?;
    let mut worst = 0.0f64;
    for (l, o) in cf.iter().zip(&fd) {
        let rel = (l.epsilon - o).abs() / o.abs().max(1.0);
        worst = worst.max(rel);
        writeln!(out, "{},{},{},{}", l.n, fmt_float(l.epsilon), fmt_float(*o), fmt_float(rel))?;
    }
    writeln!(out, "# max_rel_deviation={}", fmt_float(worst))?;
    if worst > tolerance {
        return Err(Failure::Check(format!(
            "max relative deviation {worst:e} exceeds {tolerance:e}"
        )));
    }
    Ok(())
}

fn run_limits(out: &mut impl Write, m: i64, scale: f64, s_sequence: &[f64]) -> Result<(), Failure> {
    let report = planar_limit_check(m, |s| scale * s.sqrt(), s_sequence)?;
    writeln!(out, "S,coulomb,shift,scaled_level")?;
    for i in 0..report.s_sequence.len() {
        writeln!(
            out,
            "{},{},{},{}",
            fmt_float(report.s_sequence[i]),
            fmt_float(report.coulomb[i]),
            fmt_float(report.shifts[i]),
            fmt_float(report.scaled_levels[i])
        )?;
    }
    writeln!(out, "# converged={}", report.converged)?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cli.command {
        Command::Spectrum { config, levels, format, scan_max } => run_spectrum(&mut out, config, levels, format, scan_max)?,
        Command::Sweep { m_list, s_range, coulomb, levels, sources, out: path } => {
            run_sweep(&mut out, m_list, &s_range, coulomb, levels, &sources, path)?
        }
        Command::Wavefunction { config, n, theta_samples } => run_wavefunction(&mut out, config, n, theta_samples)?,
        Command::Classical { config, n, compare } => run_classical(&mut out, config, n, compare)?,
        Command::OracleCheck { config, k, n_grid, tolerance } => run_oracle_check(&mut out, config, k, n_grid, tolerance)?,
        Command::Limits { m, coulomb_scale, s_sequence } => run_limits(&mut out, m, coulomb_scale, &s_sequence)?,
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let first = e.to_string().lines().next().unwrap_or("invalid arguments").to_string();
            eprintln!("{first}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
