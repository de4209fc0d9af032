//! The four subcommands as functions from a [`RunConfig`] to tables.

use rayon::prelude::*;

use super::config::RunConfig;
use super::output::{ClaimRow, ScanRow, SolveRow, SpectrumRow};
use crate::claims::{full_report, ClaimConfig, ClaimGrid, FullReport, Numerics};
use crate::error::Result;
use crate::params::{channel_from_kappa, CouplingParams};
use crate::radial::{find_eigenvalues, SolverOptions};
use crate::spectrum::{energy_branches, Branch, SpectrumLine};

/// Rows plus human-readable problems; `failed` asks for exit status 1.
#[derive(Debug, Clone)]
pub struct Outcome<R> {
    pub rows: Vec<R>,
    pub warnings: Vec<String>,
    pub failed: bool,
}

impl<R> Default for Outcome<R> {
    fn default() -> Self {
        Self {
            rows: Vec::new(),
            warnings: Vec::new(),
            failed: false,
        }
    }
}

fn solver_options(cfg: &RunConfig) -> SolverOptions {
    SolverOptions {
        grid_points: cfg.grid_points,
        ..SolverOptions::default()
    }
}

fn lines(kappa: i32, c: &CouplingParams, nr_max: u32) -> Result<Vec<SpectrumLine>> {
    let ch = channel_from_kappa(kappa, c)?;
    let mut out = Vec::with_capacity(2 * nr_max as usize + 2);
    for n_r in 0..=nr_max {
        let (p, m) = energy_branches(n_r, &ch, c)?;
        out.push(p);
        out.push(m);
    }
    Ok(out)
}

/// Closed-form lines per κ. A channel that fails yields an error row; the
/// command fails only when every channel does.
pub fn spectrum(cfg: &RunConfig) -> Result<Outcome<SpectrumRow>> {
    let c = cfg.couplings()?;
    let mut out = Outcome::default();
    let kappas = cfg.kappas();
    let mut failures = 0;
    for &k in &kappas {
        match lines(k, &c, cfg.nr_max) {
            Ok(ls) => out.rows.extend(ls.iter().map(SpectrumRow::from_line)),
            Err(e) => {
                failures += 1;
                out.warnings.push(format!("kappa={k}: {e}"));
                out.rows.push(SpectrumRow::failed(k, e.to_string()));
            }
        }
    }
    out.failed = failures == kappas.len();
    Ok(out)
}

/// Numeric bound states of each requested radial system, next to the
/// closed-form line with the same label.
pub fn solve(cfg: &RunConfig) -> Result<Outcome<SolveRow>> {
    let c = cfg.couplings()?;
    let (lo, hi) = cfg.window();
    let mut out = Outcome::default();
    if lo >= hi {
        return Ok(out);
    }
    let opts = solver_options(cfg);
    for &k in &cfg.kappas() {
        let gamma = match c.gamma(k) {
            Ok(g) => g,
            Err(e) => {
                out.warnings.push(format!("kappa={k}: {e}"));
                out.failed = true;
                continue;
            }
        };
        let states = match find_eigenvalues(k, &c, (lo, hi), cfg.nr_max as usize, &opts) {
            Ok(s) => s,
            Err(e) => {
                out.warnings.push(format!("kappa={k}: {e}"));
                out.failed = true;
                continue;
            }
        };
        for s in states {
            let (label_kappa, branch, n_r) = s.spectrum_label();
            let line = channel_from_kappa(label_kappa, &c)
                .and_then(|ch| energy_branches(n_r as u32, &ch, &c))
                .ok()
                .map(|(p, m)| if branch == Branch::Positive { p } else { m });
            out.rows.push(SolveRow {
                kappa: k,
                n_r: n_r as u32,
                e_numeric: s.energy,
                e_analytic: line.map(|l| l.energy),
                abs_err: line.map(|l| (s.energy - l.energy).abs()),
                q_eff: line.map(|l| l.q_eff),
                gamma,
                l_star: line.map(|l| l.l_star),
                principal: line.map(|l| l.principal),
            });
        }
    }
    Ok(out)
}

fn claim_grid(cfg: &RunConfig) -> ClaimGrid {
    let d = ClaimGrid::default();
    ClaimGrid {
        alphas: cfg.alpha_grid.clone().unwrap_or(d.alphas),
        betas: cfg.beta_grid.clone().unwrap_or(d.betas),
        kappas: cfg.kappas.clone().unwrap_or(d.kappas),
        nr_max: cfg.nr_max,
    }
}

pub fn claim_config(cfg: &RunConfig) -> ClaimConfig {
    let d = ClaimConfig::default();
    ClaimConfig {
        grid: claim_grid(cfg),
        window: cfg.window.unwrap_or(d.window),
        solver: solver_options(cfg),
        claims: cfg.claims.clone(),
        reproduce_flaw: cfg.reproduce_flaw,
        ..d
    }
}

pub fn verify_claims(cfg: &RunConfig) -> Result<FullReport> {
    full_report(&claim_config(cfg))
}

pub fn claim_rows(report: &FullReport) -> Vec<ClaimRow> {
    report
        .claims
        .iter()
        .map(|c| ClaimRow {
            id: c.id.to_string(),
            verdict: c.verdict.to_string(),
            evidence_rows: c.evidence.len(),
            summary: c.summary.clone(),
        })
        .collect()
}

/// Closed-form lines over an `(alpha, beta_s)` grid, optionally checked
/// against the solver. Row order does not depend on thread scheduling.
pub fn scan(cfg: &RunConfig) -> Result<Outcome<ScanRow>> {
    let grid = claim_grid(cfg);
    grid.check()?;
    let points = grid.points();
    let numerics = if cfg.numeric {
        Some(Numerics::compute(
            &points,
            &grid.solver_kappas(),
            cfg.window(),
            grid.nr_max,
            &solver_options(cfg),
        )?)
    } else {
        None
    };
    let per_point: Vec<(Vec<ScanRow>, Vec<String>)> = points
        .par_iter()
        .map(|c| {
            let mut rows = Vec::new();
            let mut warnings = Vec::new();
            for &k in &grid.kappas {
                match lines(k, c, grid.nr_max) {
                    Ok(ls) => rows.extend(ls.iter().map(|l| {
                        let numeric = numerics.as_ref().and_then(|n| n.matching(c, l)).map(|s| s.energy);
                        ScanRow {
                            alpha: c.alpha,
                            beta_s: c.beta_s,
                            kappa: l.kappa,
                            n_r: l.n_r,
                            branch: l.branch,
                            energy: l.energy,
                            q_eff: l.q_eff,
                            gamma: l.gamma,
                            l_star: l.l_star,
                            principal: l.principal,
                            admissible: l.admissible,
                            dirac_kappa: l.dirac_kappa,
                            e_numeric: numeric,
                            abs_err: numeric.map(|e| (e - l.energy).abs()),
                        }
                    })),
                    Err(e) => warnings.push(format!("alpha={}, beta_s={}, kappa={k}: {e}", c.alpha, c.beta_s)),
                }
            }
            (rows, warnings)
        })
        .collect();
    let mut out = Outcome::default();
    for (rows, warnings) in per_point {
        out.rows.extend(rows);
        out.warnings.extend(warnings);
    }
    Ok(out)
}
