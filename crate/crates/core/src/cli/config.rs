//! Run configuration: defaults, then a flat `key = value` file, then flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::claims::ClaimId;
use crate::error::{Error, Result};
use crate::params::{derive_couplings, CouplingParams, PhysicalInputs, UnitSystem};

/// Solver window unless configured.
pub const DEFAULT_WINDOW: (f64, f64) = (-0.999, 0.999);

/// Environment variable naming a default config file.
pub const CONFIG_ENV: &str = "DIRAC_KEPLER_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
    #[default]
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            "text" => Ok(Self::Text),
            _ => Err(Error::Config(format!("unknown format `{s}` (csv|json|text)"))),
        }
    }
}

/// Unit for printed energies.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnergyUnits {
    /// Multiples of the rest energy.
    #[default]
    Mc2,
    Ev {
        mc2_ev: f64,
    },
}

impl EnergyUnits {
    pub fn factor(self) -> f64 {
        match self {
            EnergyUnits::Mc2 => 1.0,
            EnergyUnits::Ev { mc2_ev } => mc2_ev,
        }
    }
}

/// Where the couplings come from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelSource {
    Couplings { alpha: f64, beta_s: f64 },
    Physical { e2: f64, a: f64, mass: f64, units: UnitSystem },
}

impl ModelSource {
    pub fn couplings(&self) -> Result<CouplingParams> {
        match *self {
            ModelSource::Couplings { alpha, beta_s } => CouplingParams::new(alpha, beta_s),
            ModelSource::Physical { e2, a, mass, units } => {
                derive_couplings(&PhysicalInputs::new(mass, e2, a, units)?)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// `None` when neither couplings nor physical inputs were given.
    pub model: Option<ModelSource>,
    /// `None` keeps the per-command default.
    pub kappas: Option<Vec<i32>>,
    pub nr_max: u32,
    pub window: Option<(f64, f64)>,
    pub grid_points: usize,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub claims: Vec<ClaimId>,
    pub reproduce_flaw: bool,
    pub energy_units: EnergyUnits,
    pub alpha_grid: Option<Vec<f64>>,
    pub beta_grid: Option<Vec<f64>>,
    /// `scan`: add numeric energies.
    pub numeric: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            model: None,
            kappas: None,
            nr_max: 2,
            window: None,
            grid_points: crate::radial::SolverOptions::default().grid_points,
            format: OutputFormat::Text,
            out: None,
            claims: ClaimId::ALL.to_vec(),
            reproduce_flaw: false,
            energy_units: EnergyUnits::Mc2,
            alpha_grid: None,
            beta_grid: None,
            numeric: false,
        }
    }
}

impl RunConfig {
    pub fn kappas(&self) -> Vec<i32> {
        self.kappas.clone().unwrap_or_else(|| vec![-1, 1])
    }

    pub fn window(&self) -> (f64, f64) {
        self.window.unwrap_or(DEFAULT_WINDOW)
    }

    pub fn couplings(&self) -> Result<CouplingParams> {
        self.model
            .ok_or_else(|| Error::Config("give --alpha/--beta-s or --e2/--a/--mass".into()))?
            .couplings()
    }
}

/// Raw settings as strings, keyed by flag name without the dashes.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings(pub BTreeMap<String, String>);

const KEYS: &[&str] = &[
    "alpha", "beta-s", "e2", "a", "mass", "si", "kappa", "nr-max", "window", "grid-points",
    "format", "out", "claim", "reproduce-flaw", "units", "mc2-ev", "alpha-grid", "beta-grid",
    "numeric",
];

fn normalize(key: &str) -> String {
    key.trim().replace('_', "-")
}

impl Settings {
    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", n + 1)))?;
            let key = normalize(k);
            if !KEYS.contains(&key.as_str()) {
                return Err(Error::Config(format!("line {}: unknown key `{key}`", n + 1)));
            }
            map.insert(key, v.trim().to_string());
        }
        Ok(Self(map))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.0.insert(normalize(key), value.into());
    }

    /// Entries of `over` replace entries of `self`.
    pub fn overlay(mut self, over: Settings) -> Settings {
        self.0.extend(over.0);
        self
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.0
            .get(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|_| Error::Config(format!("invalid value `{v}` for {key}")))
            })
            .transpose()
    }

    fn list<T: FromStr>(&self, key: &str) -> Result<Option<Vec<T>>> {
        self.0
            .get(key)
            .map(|v| {
                v.split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<T>()
                            .map_err(|_| Error::Config(format!("invalid entry `{s}` in {key}")))
                    })
                    .collect()
            })
            .transpose()
    }

    fn flag(&self, key: &str) -> Result<bool> {
        match self.0.get(key).map(String::as_str) {
            None | Some("false") | Some("0") | Some("no") => Ok(false),
            Some("true") | Some("1") | Some("yes") | Some("") => Ok(true),
            Some(v) => Err(Error::Config(format!("invalid boolean `{v}` for {key}"))),
        }
    }

    pub fn resolve(&self) -> Result<RunConfig> {
        let d = RunConfig::default();
        let alpha: Option<f64> = self.get("alpha")?;
        let beta: Option<f64> = self.get("beta-s")?;
        let e2: Option<f64> = self.get("e2")?;
        let a: Option<f64> = self.get("a")?;
        let mass: Option<f64> = self.get("mass")?;
        let si = self.flag("si")?;
        let direct = alpha.is_some() || beta.is_some();
        let physical = e2.is_some() || a.is_some() || mass.is_some();
        let model = match (direct, physical) {
            (true, true) => {
                return Err(Error::Config(
                    "give either couplings (alpha, beta-s) or physical inputs (e2, a, mass), not both".into(),
                ))
            }
            (true, false) => Some(ModelSource::Couplings {
                alpha: alpha.unwrap_or(0.0),
                beta_s: beta.unwrap_or(0.0),
            }),
            (false, true) => Some(ModelSource::Physical {
                e2: e2.unwrap_or(0.0),
                a: a.unwrap_or(0.0),
                mass: mass.unwrap_or(1.0),
                units: if si { UnitSystem::SiLike } else { UnitSystem::Natural },
            }),
            (false, false) => None,
        };

        let window = match self.list::<f64>("window")? {
            None => None,
            Some(w) if w.len() == 2 => Some((w[0], w[1])),
            Some(_) => return Err(Error::Config("window takes two values lo,hi".into())),
        };
        if let Some((lo, hi)) = window {
            if !(lo > -1.0 && hi < 1.0 && lo <= hi) {
                return Err(Error::Config(format!("window ({lo}, {hi}) must satisfy -1 < lo <= hi < 1")));
            }
        }

        let energy_units = match self.0.get("units").map(String::as_str) {
            None | Some("mc2") => EnergyUnits::Mc2,
            Some("ev") => {
                let mc2_ev: f64 = self
                    .get("mc2-ev")?
                    .ok_or_else(|| Error::Config("units = ev needs mc2-ev".into()))?;
                if !(mc2_ev > 0.0 && mc2_ev.is_finite()) {
                    return Err(Error::Config(format!("mc2-ev must be positive, got {mc2_ev}")));
                }
                EnergyUnits::Ev { mc2_ev }
            }
            Some(u) => return Err(Error::Config(format!("unknown units `{u}` (mc2|ev)"))),
        };

        let kappas = self.list::<i32>("kappa")?;
        if let Some(k) = &kappas {
            if k.is_empty() || k.contains(&0) {
                return Err(Error::Config("kappa values must be nonzero".into()));
            }
        }
        let grid_points = self.get("grid-points")?.unwrap_or(d.grid_points);
        if grid_points < 100 {
            return Err(Error::Config(format!("grid-points must be at least 100, got {grid_points}")));
        }
        Ok(RunConfig {
            model,
            kappas,
            nr_max: self.get("nr-max")?.unwrap_or(d.nr_max),
            window,
            grid_points,
            format: self.get("format")?.unwrap_or(d.format),
            out: self.0.get("out").map(PathBuf::from),
            claims: self.list::<ClaimId>("claim")?.unwrap_or(d.claims),
            reproduce_flaw: self.flag("reproduce-flaw")?,
            energy_units,
            alpha_grid: self.list("alpha-grid")?,
            beta_grid: self.list("beta-grid")?,
            numeric: self.flag("numeric")?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let file = Settings::parse(
            "# flagship\nalpha = 0.2\nbeta_s = -0.5\nkappa = -1, 1\nnr-max = 0\nformat = json\n",
        )
        .unwrap();
        let mut flags = Settings::default();
        flags.set("nr-max", "3");
        let cfg = file.overlay(flags).resolve().unwrap();
        assert_eq!(cfg.model, Some(ModelSource::Couplings { alpha: 0.2, beta_s: -0.5 }));
        assert_eq!(cfg.kappas(), vec![-1, 1]);
        assert_eq!(cfg.window(), DEFAULT_WINDOW);
        assert_eq!(cfg.nr_max, 3);
        assert_eq!(cfg.format, OutputFormat::Json);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Settings::parse("alpha 0.2").is_err());
        assert!(Settings::parse("colour = red").is_err());
        let both = Settings::parse("alpha = 0.2\ne2 = 0.1").unwrap();
        assert!(both.resolve().is_err());
        for bad in ["window = -1.0,0.5", "window = 0.1", "kappa = 0", "units = ev", "format = xml", "claim = nope"] {
            assert!(Settings::parse(bad).unwrap().resolve().is_err(), "{bad}");
        }
    }

    #[test]
    fn physical_inputs() {
        let cfg = Settings::parse("e2 = 0.2\na = -0.5").unwrap().resolve().unwrap();
        let c = cfg.couplings().unwrap();
        assert_eq!((c.alpha, c.beta_s), (0.2, -0.5));
        let ev = Settings::parse("units = ev\nmc2-ev = 511000").unwrap().resolve().unwrap();
        assert_eq!(ev.energy_units.factor(), 511000.0);
        assert!(RunConfig::default().couplings().is_err());
    }
}
