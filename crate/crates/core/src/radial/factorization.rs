//! Finite-difference check of the second-order identity
//!
//! ```text
//! A∘B = p² + 1 - E² - 2q/r + [i Σ·n (beta_s β'' + alpha β') + beta_s² - alpha²] / r²
//! A = α·p + m*β + U - E,   B = α·p + m*β + E - U,   q = alpha E - beta_s
//! ```
//!
//! on the radial channels `(u Ω_κ, i v Ω_-κ)/r`. In that basis `α·p` acts as
//! `D(u, v) = (-(v' - κv/r), u' + κu/r)`. Both sides are applied to random
//! compact bumps with `D` discretized by central differences; `p²` is taken
//! as `D∘D`, so the free case matches to rounding and any other mismatch
//! comes from the product rule on `m*` and `U` and falls off as `h²`. The
//! `1/r²` coefficient is the 4×4 barrier matrix projected onto the channel
//! over the sphere, not a hand-reduced formula.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::grid::{RadialGrid, Spacing};
use crate::angular::{barrier_matrix, project_on_pair};
use crate::error::{Error, Result};
use crate::params::{CouplingParams, HalfInt};

pub use crate::angular::SigmaVariant;

/// `amplitude · exp(-1 / (1 - x²))`, `x = (r - center)/width`, zero for `|x| >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bump {
    pub center: f64,
    pub width: f64,
    pub amplitude: f64,
}

impl Bump {
    pub fn eval(&self, r: f64) -> f64 {
        let x = (r - self.center) / self.width;
        if x.abs() >= 1.0 {
            0.0
        } else {
            self.amplitude * (-1.0 / (1.0 - x * x)).exp()
        }
    }
}

/// Radial test vector: `(u, v)` for channel `κ` and for channel `-κ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestFunction {
    /// `components[channel][0 = u, 1 = v]`.
    pub components: [[Vec<Bump>; 2]; 2],
}

impl TestFunction {
    /// Three bumps per component, supported inside the middle 80% of
    /// `[lo, hi]`.
    pub fn random(seed: u64, lo: f64, hi: f64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let span = hi - lo;
        let (a, b) = (lo + 0.1 * span, hi - 0.1 * span);
        let mut comp = || -> Vec<Bump> {
            (0..3)
                .map(|_| {
                    let width = rng.gen_range(0.1..0.25) * span;
                    let center = rng.gen_range(a + width..b - width);
                    Bump {
                        center,
                        width,
                        amplitude: rng.gen_range(-1.0..1.0),
                    }
                })
                .collect()
        };
        Self {
            components: [[comp(), comp()], [comp(), comp()]],
        }
    }

    fn sample(&self, channel: usize, comp: usize, r: &[f64]) -> Vec<f64> {
        r.iter()
            .map(|&x| self.components[channel][comp].iter().map(|b| b.eval(x)).sum())
            .collect()
    }

    /// Every bump must vanish with all derivatives at least three points
    /// inside the grid, or the stencils see a kink.
    fn check(&self, grid: &RadialGrid) -> Result<()> {
        let h = grid.step();
        let (lo, hi) = (grid.r_min() + 3.0 * h, grid.r_max() - 3.0 * h);
        for b in self.components.iter().flatten().flatten() {
            if !(b.width > 0.0) || !b.center.is_finite() || !b.amplitude.is_finite() {
                return Err(Error::NonSmoothTestFunction(format!("degenerate bump {b:?}")));
            }
            if b.center - b.width < lo || b.center + b.width > hi {
                return Err(Error::NonSmoothTestFunction(format!(
                    "bump support [{}, {}] leaves the grid interior [{lo}, {hi}]",
                    b.center - b.width,
                    b.center + b.width
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FactorizationOptions {
    /// Energy in `A` and `B`.
    pub energy: f64,
    pub variant: SigmaVariant,
}

impl Default for FactorizationOptions {
    fn default() -> Self {
        Self {
            energy: 0.37,
            variant: SigmaVariant::Corrected,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FactorizationReport {
    pub kappa: i32,
    pub energy: f64,
    pub h: f64,
    /// `max |A∘B φ - R φ| / max |D∘D φ|` on the given grid.
    pub residual: f64,
    /// Same on the grid with spacing `h/2`.
    pub residual_half: f64,
    /// `log2(residual / residual_half)`.
    pub order: f64,
    /// Projected `1/r²` coefficients for channels `κ` and `-κ`.
    pub barrier: [[[f64; 2]; 2]; 2],
}

/// [`verify_factorization_with`] using bumps drawn from `seed`, `E = 0.37`
/// and the 4×4 `Σ`.
pub fn verify_factorization(
    kappa: i32,
    c: &CouplingParams,
    grid: &RadialGrid,
    seed: u64,
) -> Result<FactorizationReport> {
    let test = TestFunction::random(seed, grid.r_min(), grid.r_max());
    verify_factorization_with(kappa, c, grid, &test, &FactorizationOptions::default())
}

pub fn verify_factorization_with(
    kappa: i32,
    c: &CouplingParams,
    grid: &RadialGrid,
    test: &TestFunction,
    opts: &FactorizationOptions,
) -> Result<FactorizationReport> {
    if kappa == 0 {
        return Err(Error::ZeroKappa);
    }
    if grid.spacing() != Spacing::Uniform {
        return Err(Error::Config("factorization check needs a uniform grid".into()));
    }
    if grid.len() < 7 {
        return Err(Error::GridTooSmall {
            needed: 7,
            got: grid.len(),
        });
    }
    if !(grid.r_min() > 0.0) {
        return Err(Error::NonPositiveRadius(grid.r_min()));
    }
    test.check(grid)?;
    let barrier = [
        channel_barrier(kappa, c, opts.variant)?,
        channel_barrier(-kappa, c, opts.variant)?,
    ];
    let fine = RadialGrid::uniform(grid.r_min(), grid.r_max(), 2 * grid.len() - 1)?;
    let residual = residual_on(kappa, c, grid, test, opts.energy, &barrier);
    let residual_half = residual_on(kappa, c, &fine, test, opts.energy, &barrier);
    Ok(FactorizationReport {
        kappa,
        energy: opts.energy,
        h: grid.step(),
        residual,
        residual_half,
        order: (residual / residual_half).log2(),
        barrier,
    })
}

/// Barrier coefficient on `{(Ω_κ, 0), (0, iΩ_-κ)}`, which is the `(u, v)` basis.
fn channel_barrier(kappa: i32, c: &CouplingParams, variant: SigmaVariant) -> Result<[[f64; 2]; 2]> {
    let (m, _) = project_on_pair(kappa, HalfInt(1), Complex64::i(), |theta, phi| {
        Ok(barrier_matrix(c, theta, phi, variant)?.0)
    })?;
    Ok([[m[(0, 0)].re, m[(0, 1)].re], [m[(1, 0)].re, m[(1, 1)].re]])
}

fn central(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    (0..n)
        .map(|i| {
            let next = if i + 1 < n { f[i + 1] } else { 0.0 };
            let prev = if i > 0 { f[i - 1] } else { 0.0 };
            (next - prev) / (2.0 * h)
        })
        .collect()
}

/// Discrete `α·p` on `(u, v)`.
fn apply_d(k: f64, r: &[f64], h: f64, u: &[f64], v: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let du = central(u, h);
    let dv = central(v, h);
    let top = (0..r.len()).map(|i| -(dv[i] - k * v[i] / r[i])).collect();
    let bot = (0..r.len()).map(|i| du[i] + k * u[i] / r[i]).collect();
    (top, bot)
}

/// `(α·p + m*β + s (E - U)) φ` with `s = +1` for `B`, `-1` for `A`.
fn apply_first_order(
    k: f64,
    c: &CouplingParams,
    energy: f64,
    s: f64,
    r: &[f64],
    h: f64,
    u: &[f64],
    v: &[f64],
) -> (Vec<f64>, Vec<f64>) {
    let (mut top, mut bot) = apply_d(k, r, h, u, v);
    for i in 0..r.len() {
        let mass = 1.0 + c.beta_s / r[i];
        let shift = s * (energy + c.alpha / r[i]);
        top[i] += mass * u[i] + shift * u[i];
        bot[i] += -mass * v[i] + shift * v[i];
    }
    (top, bot)
}

fn residual_on(
    kappa: i32,
    c: &CouplingParams,
    grid: &RadialGrid,
    test: &TestFunction,
    energy: f64,
    barrier: &[[[f64; 2]; 2]; 2],
) -> f64 {
    let r = grid.points();
    let h = grid.step();
    let q = c.alpha * energy - c.beta_s;
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for (ch, k) in [kappa as f64, -kappa as f64].into_iter().enumerate() {
        let u = test.sample(ch, 0, r);
        let v = test.sample(ch, 1, r);
        let (bu, bv) = apply_first_order(k, c, energy, 1.0, r, h, &u, &v);
        let (lu, lv) = apply_first_order(k, c, energy, -1.0, r, h, &bu, &bv);
        let (du, dv) = apply_d(k, r, h, &u, &v);
        let (ddu, ddv) = apply_d(k, r, h, &du, &dv);
        let m = &barrier[ch];
        for i in 0..r.len() {
            let inv = 1.0 / r[i];
            let common = 1.0 - energy * energy - 2.0 * q * inv;
            let ru = ddu[i] + common * u[i] + (m[0][0] * u[i] + m[0][1] * v[i]) * inv * inv;
            let rv = ddv[i] + common * v[i] + (m[1][0] * u[i] + m[1][1] * v[i]) * inv * inv;
            worst = worst.max((lu[i] - ru).abs()).max((lv[i] - rv).abs());
            scale = scale.max(ddu[i].abs()).max(ddv[i].abs());
        }
    }
    worst / scale
}
