//! Closed-form bound states of the Schrödinger-like radial equation
//!
//! ```text
//! [-(1/r) d²/dr² r - 2 q(E)/r + l*(l*+1)/r²] R = (E² - 1) R,   q(E) = alpha E - beta_s
//! ```
//!
//! (natural units, both sides doubled). It is hydrogenic with a real
//! effective angular momentum `l*` and an energy-dependent charge, so the
//! quantization `(E² - 1) N² = -q(E)²`, `N = n_r + l* + 1`, is a quadratic
//! in `E` with two roots. Both are returned; a root is an admissible bound
//! state only if `|E| < 1` and `q(E) > 0`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{channel_from_kappa, Channel, CouplingParams};
use crate::special::{laguerre_unchecked, ln_gamma};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// Larger root of the energy quadratic.
    Positive,
    /// Smaller root.
    Negative,
}

impl Branch {
    pub fn symbol(self) -> char {
        match self {
            Branch::Positive => '+',
            Branch::Negative => '-',
        }
    }
}

/// Energy-dependent Coulomb strength `q = alpha E - beta_s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectiveCoulomb {
    pub q_eff: f64,
}

impl EffectiveCoulomb {
    pub fn at(energy: f64, c: &CouplingParams) -> Self {
        Self {
            q_eff: c.alpha * energy - c.beta_s,
        }
    }

    pub fn binds(&self) -> bool {
        self.q_eff > 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumLine {
    pub kappa: i32,
    pub gamma: f64,
    pub l_star: f64,
    pub n_r: u32,
    pub branch: Branch,
    /// Units of `mc²`.
    pub energy: f64,
    pub q_eff: f64,
    pub principal: f64,
    pub admissible: bool,
    /// κ of the first-order radial Dirac system that carries this energy.
    ///
    /// The upper-sign (`l* = γ - 1`) family holds for positive-branch states
    /// with κ < 0 and for negative-branch states with κ > 0, so a negative
    /// root is realised in channel `-κ`. Checked against the shooting solver.
    pub dirac_kappa: i32,
}

impl SpectrumLine {
    /// `(E² - 1) N² + q²`, zero for every root.
    pub fn bohr_defect(&self) -> f64 {
        (self.energy * self.energy - 1.0) * self.principal * self.principal
            + self.q_eff * self.q_eff
    }

    /// Decay constant `λ = q/N = sqrt(1 - E²)` of an admissible state.
    pub fn decay(&self) -> f64 {
        self.q_eff / self.principal
    }
}

/// `N = n_r + l* + 1`.
pub fn effective_principal(n_r: u32, channel: &Channel) -> f64 {
    // Computed from γ directly so that l* = γ - 1 does not round.
    if channel.kappa < 0 {
        n_r as f64 + channel.gamma
    } else {
        n_r as f64 + channel.gamma + 1.0
    }
}

/// Both roots of `E²(N² + alpha²) - 2 alpha beta_s E + beta_s² - N² = 0`,
/// returned as `(positive, negative)`.
pub fn energy_branches(
    n_r: u32,
    channel: &Channel,
    c: &CouplingParams,
) -> Result<(SpectrumLine, SpectrumLine)> {
    let n = effective_principal(n_r, channel);
    let (a, b) = (c.alpha, c.beta_s);
    let disc = n * n + (a - b) * (a + b);
    if disc < 0.0 {
        return Err(Error::NoRealRoots(disc));
    }
    let denom = n * n + a * a;
    let root = n * disc.sqrt();
    let make = |energy: f64, branch: Branch| {
        let q_eff = EffectiveCoulomb::at(energy, c).q_eff;
        SpectrumLine {
            kappa: channel.kappa,
            gamma: channel.gamma,
            l_star: channel.l_star,
            n_r,
            branch,
            energy,
            q_eff,
            principal: n,
            admissible: energy.abs() < 1.0 && q_eff > 0.0,
            dirac_kappa: match branch {
                Branch::Positive => channel.kappa,
                Branch::Negative => -channel.kappa,
            },
        }
    };
    Ok((
        make((a * b + root) / denom, Branch::Positive),
        make((a * b - root) / denom, Branch::Negative),
    ))
}

/// Bound-state condition `beta_s < alpha E`, i.e. `a < e²E/(m²c⁴)`.
pub fn binding_condition(energy: f64, c: &CouplingParams) -> bool {
    c.beta_s < c.alpha * energy
}

/// Energy-independent condition `beta_s < alpha`, i.e. `a < e²/(mc²)`;
/// agrees with [`binding_condition`] only at `E = 1`.
pub fn uncorrected_binding_condition(c: &CouplingParams) -> bool {
    c.beta_s < c.alpha
}

/// Dirac–Coulomb energy for a pure vector coupling:
/// `E = [1 + alpha²/(ñ + γ0)²]^(-1/2)`, `ñ = n_r` for κ < 0, `n_r + 1` for κ > 0.
pub fn sommerfeld_reference(n_r: u32, kappa: i32, alpha: f64) -> Result<f64> {
    let c = CouplingParams::new(alpha, 0.0)?;
    let gamma0 = c.gamma(kappa)?;
    let shift = if kappa < 0 { n_r } else { n_r + 1 };
    let d = shift as f64 + gamma0;
    Ok((1.0 + alpha * alpha / (d * d)).powf(-0.5))
}

/// Both branches for every `(κ, n_r)` with `n_r <= nr_max`, ordered by κ
/// as given, then `n_r`, then branch.
pub fn channel_spectrum(
    kappas: &[i32],
    c: &CouplingParams,
    nr_max: u32,
) -> Vec<Result<Vec<SpectrumLine>>> {
    kappas
        .par_iter()
        .map(|&kappa| {
            let ch = channel_from_kappa(kappa, c)?;
            let mut lines = Vec::with_capacity(2 * (nr_max as usize + 1));
            for n_r in 0..=nr_max {
                let (p, m) = energy_branches(n_r, &ch, c)?;
                lines.push(p);
                lines.push(m);
            }
            Ok(lines)
        })
        .collect()
}

/// `R(r) = C ρ^{l*} e^{-ρ/2} L_{n_r}^{(2l*+1)}(ρ)`, `ρ = 2λr`, normalized so
/// that `∫ R² r² dr = 1`.
pub fn analytic_radial_r(line: &SpectrumLine, grid: &[f64]) -> Result<Vec<f64>> {
    if !line.admissible {
        return Err(Error::Inadmissible {
            energy: line.energy,
            q_eff: line.q_eff,
        });
    }
    let lambda = line.decay();
    let nu = 2.0 * line.l_star + 1.0;
    let n = line.n_r;
    let two_lambda = 2.0 * lambda;
    // ∫ ρ^{ν+1} e^{-ρ} [L_n^ν]² dρ = Γ(n+ν+1)(2n+ν+1)/n!, and 2n+ν+1 = 2N.
    let ln_c = 0.5
        * (3.0 * two_lambda.ln() + ln_gamma(n as f64 + 1.0)?
            - (2.0 * line.principal).ln()
            - ln_gamma(n as f64 + nu + 1.0)?);
    grid.iter()
        .map(|&r| {
            if !(r > 0.0) {
                return Err(Error::NonPositiveRadius(r));
            }
            let rho = two_lambda * r;
            let log_mag = ln_c + line.l_star * rho.ln() - 0.5 * rho;
            Ok(log_mag.exp() * laguerre_unchecked(n, nu, rho))
        })
        .collect()
}

/// Relative sup-norm of the radial-equation residual for `u = rR` on a
/// uniform grid, using the five-point second derivative.
pub fn radial_equation_residual(line: &SpectrumLine, grid: &[f64], r_sample: &[f64]) -> Result<f64> {
    if grid.len() < 5 || r_sample.len() != grid.len() {
        return Err(Error::GridTooSmall {
            needed: 5,
            got: grid.len().min(r_sample.len()),
        });
    }
    let h = grid[1] - grid[0];
    let ll = line.l_star * (line.l_star + 1.0);
    let e2m1 = line.energy * line.energy - 1.0;
    let u: Vec<f64> = grid.iter().zip(r_sample).map(|(r, rr)| r * rr).collect();
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for i in 2..grid.len() - 2 {
        let r = grid[i];
        let d2 = (-u[i + 2] + 16.0 * u[i + 1] - 30.0 * u[i] + 16.0 * u[i - 1] - u[i - 2])
            / (12.0 * h * h);
        let barrier = ll / (r * r) * u[i];
        let coulomb = 2.0 * line.q_eff / r * u[i];
        let rhs = e2m1 * u[i];
        worst = worst.max((-d2 + barrier - coulomb - rhs).abs());
        scale = scale.max(d2.abs() + barrier.abs() + coulomb.abs() + rhs.abs());
    }
    Ok(worst / scale)
}
