//! The `dirac-kepler` command line.
//!
//! Exit status: 0 on success, 1 when a computation or a claim fails, 2 on
//! invalid usage or input.

pub mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::claims::ClaimId;
use crate::error::{Error, Result};
use config::{OutputFormat, RunConfig, Settings, CONFIG_ENV};
use output::{render, Row};

#[derive(Debug, Parser)]
#[command(name = "dirac-kepler", version, about = "Dirac Kepler problem with a position-dependent mass")]
pub struct Cli {
    /// Config file of `key = value` lines; flags override it.
    #[arg(long, global = true, env = CONFIG_ENV)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form energy lines.
    #[command(allow_negative_numbers = true)]
    Spectrum(Flags),
    /// Numeric eigenvalues of the radial Dirac equations.
    #[command(allow_negative_numbers = true)]
    Solve(Flags),
    /// Evaluate the claims and the closed-form vs numeric sweep.
    #[command(allow_negative_numbers = true)]
    VerifyClaims(Flags),
    /// Closed-form lines over a coupling grid.
    #[command(allow_negative_numbers = true)]
    Scan(Flags),
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long = "beta-s")]
    pub beta_s: Option<f64>,
    #[arg(long)]
    pub e2: Option<f64>,
    /// Mass slope length.
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub mass: Option<f64>,
    /// Physical inputs in SI: kg, J·m, m.
    #[arg(long)]
    pub si: bool,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub kappa: Vec<i32>,
    #[arg(long)]
    pub nr_max: Option<u32>,
    /// Energy window `lo,hi` in units of mc².
    #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true)]
    pub window: Vec<f64>,
    #[arg(long)]
    pub grid_points: Option<usize>,
    #[arg(long, value_parser = ["csv", "json", "text"])]
    pub format: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', value_parser = parse_claim)]
    pub claim: Vec<ClaimId>,
    #[arg(long)]
    pub reproduce_flaw: bool,
    /// Units of printed energies.
    #[arg(long, value_parser = ["mc2", "ev"])]
    pub units: Option<String>,
    /// Rest energy in eV for `--units ev`.
    #[arg(long)]
    pub mc2_ev: Option<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alpha_grid: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub beta_grid: Vec<f64>,
    /// `scan`: also run the numeric solver.
    #[arg(long)]
    pub numeric: bool,
}

fn parse_claim(s: &str) -> std::result::Result<ClaimId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

impl Flags {
    /// Only the flags that were given.
    pub fn settings(&self) -> Settings {
        let mut s = Settings::default();
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                s.set(k, v);
            }
        };
        put("alpha", self.alpha.map(|v| v.to_string()));
        put("beta-s", self.beta_s.map(|v| v.to_string()));
        put("e2", self.e2.map(|v| v.to_string()));
        put("a", self.a.map(|v| v.to_string()));
        put("mass", self.mass.map(|v| v.to_string()));
        put("si", self.si.then(|| "true".into()));
        put("kappa", (!self.kappa.is_empty()).then(|| join(&self.kappa)));
        put("nr-max", self.nr_max.map(|v| v.to_string()));
        put("window", (!self.window.is_empty()).then(|| join(&self.window)));
        put("grid-points", self.grid_points.map(|v| v.to_string()));
        put("format", self.format.clone());
        put("out", self.out.as_ref().map(|p| p.display().to_string()));
        put("claim", (!self.claim.is_empty()).then(|| join(&self.claim)));
        put("reproduce-flaw", self.reproduce_flaw.then(|| "true".into()));
        put("units", self.units.clone());
        put("mc2-ev", self.mc2_ev.map(|v| v.to_string()));
        put("alpha-grid", (!self.alpha_grid.is_empty()).then(|| join(&self.alpha_grid)));
        put("beta-grid", (!self.beta_grid.is_empty()).then(|| join(&self.beta_grid)));
        put("numeric", self.numeric.then(|| "true".into()));
        s
    }
}

/// Exit status for an error: 2 for bad input, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_)
        | Error::NonFinite { .. }
        | Error::NegativeCoupling(_)
        | Error::NonPositive { .. }
        | Error::ZeroKappa
        | Error::InvalidWindow { .. }
        | Error::EmptyGrid => 2,
        Error::Context { source, .. } => exit_code(source),
        _ => 1,
    }
}

fn resolve(config: Option<&Path>, flags: &Flags) -> Result<RunConfig> {
    let base = match config {
        Some(p) => Settings::load(p)?,
        None => Settings::default(),
    };
    base.overlay(flags.settings()).resolve()
}

fn emit(cfg: &RunConfig, text: &str, stdout: &mut dyn Write) -> Result<()> {
    let io = |e: std::io::Error| Error::Io(e.to_string());
    match &cfg.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(io),
    }
}

fn table<R: Row>(cfg: &RunConfig, rows: &[R], stdout: &mut dyn Write) -> Result<()> {
    let text = render(rows, cfg.format, cfg.energy_units.factor())?;
    emit(cfg, &text, stdout)
}

fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let (flags, which) = match &cli.command {
        Command::Spectrum(f) => (f, 0),
        Command::Solve(f) => (f, 1),
        Command::VerifyClaims(f) => (f, 2),
        Command::Scan(f) => (f, 3),
    };
    let cfg = resolve(cli.config.as_deref(), flags)?;
    macro_rules! finish {
        ($outcome:expr) => {{
            let o = $outcome;
            for w in &o.warnings {
                let _ = writeln!(stderr, "warning: {w}");
            }
            table(&cfg, &o.rows, stdout)?;
            Ok(if o.failed { 1 } else { 0 })
        }};
    }
    match which {
        0 => finish!(commands::spectrum(&cfg)?),
        1 => finish!(commands::solve(&cfg)?),
        3 => finish!(commands::scan(&cfg)?),
        _ => {
            let report = commands::verify_claims(&cfg)?;
            let ok = report.all_supported() && report.sweep.passed;
            match &cfg.out {
                Some(base) => {
                    let write = |ext: &str, body: String| -> Result<()> {
                        let p = base.with_extension(ext);
                        std::fs::write(&p, body).map_err(|e| Error::Io(format!("{}: {e}", p.display())))
                    };
                    write("json", report.to_json()? + "\n")?;
                    write("txt", report.to_text())?;
                }
                None => {
                    let text = match cfg.format {
                        OutputFormat::Json => report.to_json()? + "\n",
                        OutputFormat::Text => report.to_text(),
                        OutputFormat::Csv => render(&commands::claim_rows(&report), OutputFormat::Csv, 1.0)?,
                    };
                    emit(&cfg, &text, stdout)?;
                }
            }
            Ok(if ok { 0 } else { 1 })
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(rendered.as_bytes());
            } else {
                let _ = stderr.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match execute(&cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
