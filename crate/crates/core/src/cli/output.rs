//! Tables and their CSV / JSON / text renderings.
//!
//! CSV floats carry 17 significant digits and JSON uses the shortest
//! round-trip form, so both parse back to identical bits.

use serde::{Deserialize, Serialize};

use super::config::OutputFormat;
use crate::error::{Error, Result};
use crate::spectrum::{Branch, SpectrumLine};

pub enum Cell {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn text(&self) -> String {
        match self {
            Cell::Float(v) if v.abs() >= 1e5 => format!("{v:.6e}"),
            Cell::Float(v) => format!("{v:.12}"),
            other => other.csv(),
        }
    }
}

fn opt<T>(v: Option<T>, f: impl FnOnce(T) -> Cell) -> Cell {
    v.map(f).unwrap_or(Cell::Empty)
}

pub trait Row: Serialize {
    const HEADER: &'static [&'static str];
    fn cells(&self) -> Vec<Cell>;
    /// Copy with energies multiplied by `factor`.
    fn scaled(&self, factor: f64) -> Self;
}

pub fn render<R: Row>(rows: &[R], format: OutputFormat, energy_factor: f64) -> Result<String> {
    let scaled: Vec<R> = rows.iter().map(|r| r.scaled(energy_factor)).collect();
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&scaled).map_err(|e| Error::Config(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::Io(e.to_string());
            w.write_record(R::HEADER).map_err(io)?;
            for r in &scaled {
                w.write_record(r.cells().iter().map(Cell::csv)).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
        }
        OutputFormat::Text => {
            let body: Vec<Vec<String>> = scaled
                .iter()
                .map(|r| r.cells().iter().map(Cell::text).collect())
                .collect();
            let mut widths: Vec<usize> = R::HEADER.iter().map(|h| h.len()).collect();
            for row in &body {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |cells: Vec<String>| -> String {
                let parts: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect();
                parts.join("  ").trim_end().to_string() + "\n"
            };
            let mut s = line(R::HEADER.iter().map(|h| h.to_string()).collect());
            for row in body {
                s.push_str(&line(row));
            }
            Ok(s)
        }
    }
}

fn branch_cell(b: Branch) -> Cell {
    Cell::Text(b.symbol().to_string())
}

/// Closed-form line, or the error that stopped its channel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub kappa: i32,
    pub n_r: Option<u32>,
    pub branch: Option<Branch>,
    #[serde(rename = "E")]
    pub energy: Option<f64>,
    pub q_eff: Option<f64>,
    pub gamma: Option<f64>,
    pub l_star: Option<f64>,
    #[serde(rename = "N")]
    pub principal: Option<f64>,
    pub admissible: Option<bool>,
    pub dirac_kappa: Option<i32>,
    pub error: Option<String>,
}

impl SpectrumRow {
    pub fn from_line(l: &SpectrumLine) -> Self {
        Self {
            kappa: l.kappa,
            n_r: Some(l.n_r),
            branch: Some(l.branch),
            energy: Some(l.energy),
            q_eff: Some(l.q_eff),
            gamma: Some(l.gamma),
            l_star: Some(l.l_star),
            principal: Some(l.principal),
            admissible: Some(l.admissible),
            dirac_kappa: Some(l.dirac_kappa),
            error: None,
        }
    }

    pub fn failed(kappa: i32, error: String) -> Self {
        Self {
            kappa,
            n_r: None,
            branch: None,
            energy: None,
            q_eff: None,
            gamma: None,
            l_star: None,
            principal: None,
            admissible: None,
            dirac_kappa: None,
            error: Some(error),
        }
    }
}

impl Row for SpectrumRow {
    const HEADER: &'static [&'static str] = &[
        "kappa", "n_r", "branch", "E", "q_eff", "gamma", "l_star", "N", "admissible", "dirac_kappa", "error",
    ];

    fn cells(&self) -> Vec<Cell> {
        vec![
            Cell::Int(self.kappa as i64),
            opt(self.n_r, |v| Cell::Int(v as i64)),
            opt(self.branch, branch_cell),
            opt(self.energy, Cell::Float),
            opt(self.q_eff, Cell::Float),
            opt(self.gamma, Cell::Float),
            opt(self.l_star, Cell::Float),
            opt(self.principal, Cell::Float),
            opt(self.admissible, Cell::Bool),
            opt(self.dirac_kappa, |v| Cell::Int(v as i64)),
            opt(self.error.clone(), Cell::Text),
        ]
    }

    fn scaled(&self, f: f64) -> Self {
        Self {
            energy: self.energy.map(|e| e * f),
            ..self.clone()
        }
    }
}

/// Numeric eigenvalue next to its closed-form partner.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveRow {
    /// κ of the radial system that was solved.
    pub kappa: i32,
    /// Radial quantum number from the Prüfer winding.
    pub n_r: u32,
    #[serde(rename = "E_numeric")]
    pub e_numeric: f64,
    #[serde(rename = "E_analytic")]
    pub e_analytic: Option<f64>,
    pub abs_err: Option<f64>,
    pub q_eff: Option<f64>,
    pub gamma: f64,
    pub l_star: Option<f64>,
    #[serde(rename = "N")]
    pub principal: Option<f64>,
}

impl Row for SolveRow {
    const HEADER: &'static [&'static str] =
        &["kappa", "n_r", "E_numeric", "E_analytic", "abs_err", "q_eff", "gamma", "l_star", "N"];

    fn cells(&self) -> Vec<Cell> {
        vec![
            Cell::Int(self.kappa as i64),
            Cell::Int(self.n_r as i64),
            Cell::Float(self.e_numeric),
            opt(self.e_analytic, Cell::Float),
            opt(self.abs_err, Cell::Float),
            opt(self.q_eff, Cell::Float),
            Cell::Float(self.gamma),
            opt(self.l_star, Cell::Float),
            opt(self.principal, Cell::Float),
        ]
    }

    fn scaled(&self, f: f64) -> Self {
        Self {
            e_numeric: self.e_numeric * f,
            e_analytic: self.e_analytic.map(|e| e * f),
            abs_err: self.abs_err.map(|e| e * f),
            ..self.clone()
        }
    }
}

/// One closed-form line of a coupling scan, optionally with the solver's energy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub alpha: f64,
    pub beta_s: f64,
    pub kappa: i32,
    pub n_r: u32,
    pub branch: Branch,
    #[serde(rename = "E")]
    pub energy: f64,
    pub q_eff: f64,
    pub gamma: f64,
    pub l_star: f64,
    #[serde(rename = "N")]
    pub principal: f64,
    pub admissible: bool,
    pub dirac_kappa: i32,
    #[serde(rename = "E_numeric")]
    pub e_numeric: Option<f64>,
    pub abs_err: Option<f64>,
}

impl Row for ScanRow {
    const HEADER: &'static [&'static str] = &[
        "alpha", "beta_s", "kappa", "n_r", "branch", "E", "q_eff", "gamma", "l_star", "N", "admissible",
        "dirac_kappa", "E_numeric", "abs_err",
    ];

    fn cells(&self) -> Vec<Cell> {
        vec![
            Cell::Float(self.alpha),
            Cell::Float(self.beta_s),
            Cell::Int(self.kappa as i64),
            Cell::Int(self.n_r as i64),
            branch_cell(self.branch),
            Cell::Float(self.energy),
            Cell::Float(self.q_eff),
            Cell::Float(self.gamma),
            Cell::Float(self.l_star),
            Cell::Float(self.principal),
            Cell::Bool(self.admissible),
            Cell::Int(self.dirac_kappa as i64),
            opt(self.e_numeric, Cell::Float),
            opt(self.abs_err, Cell::Float),
        ]
    }

    fn scaled(&self, f: f64) -> Self {
        Self {
            energy: self.energy * f,
            e_numeric: self.e_numeric.map(|e| e * f),
            abs_err: self.abs_err.map(|e| e * f),
            ..self.clone()
        }
    }
}

/// Summary line per claim for `verify-claims --format csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimRow {
    pub id: String,
    pub verdict: String,
    pub evidence_rows: usize,
    pub summary: String,
}

impl Row for ClaimRow {
    const HEADER: &'static [&'static str] = &["id", "verdict", "evidence_rows", "summary"];

    fn cells(&self) -> Vec<Cell> {
        vec![
            Cell::Text(self.id.clone()),
            Cell::Text(self.verdict.clone()),
            Cell::Int(self.evidence_rows as i64),
            Cell::Text(self.summary.clone()),
        ]
    }

    fn scaled(&self, _: f64) -> Self {
        self.clone()
    }
}
