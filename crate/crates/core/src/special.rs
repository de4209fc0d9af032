//! Scalar special functions for the closed-form radial solutions.
//!
//! The effective angular momentum `l*` is generally not an integer, so the
//! Laguerre order `2l* + 1` is real and the normalization involves `Γ` at
//! non-integer arguments.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Natural logarithm of `Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::GammaDomain(x));
    }
    if x == 1.0 || x == 2.0 {
        return Ok(0.0);
    }
    // Γ(x) = Γ(x + 1)/x keeps the series argument away from 0.
    if x < 0.5 {
        return Ok(lanczos_ln_gamma_shifted(x) - x.ln());
    }
    Ok(lanczos_ln_gamma_shifted(x - 1.0))
}

/// `ln Γ(z + 1)` for `z >= -0.5`.
fn lanczos_ln_gamma_shifted(z: f64) -> f64 {
    let mut sum = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        sum += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + sum.ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaguerreParams {
    pub degree: u32,
    pub order: f64,
    pub x: f64,
}

/// `L_n^(ν)(x)` by the upward three-term recurrence in `n`.
pub fn generalized_laguerre(p: LaguerreParams) -> Result<f64> {
    if !(p.order > -1.0) || !p.order.is_finite() {
        return Err(Error::LaguerreOrder(p.order));
    }
    if !p.x.is_finite() {
        return Err(Error::NonFinite {
            name: "x",
            value: p.x,
        });
    }
    Ok(laguerre_unchecked(p.degree, p.order, p.x))
}

pub(crate) fn laguerre_unchecked(n: u32, nu: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + nu - x;
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + nu - x) * cur - (k + nu) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Whether the integrand is `f²` (reduced radial functions such as `rR`)
/// or `f² r²` (full radial functions `R`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormMode {
    Reduced,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quadrature {
    Trapezoid,
    Simpson,
}

/// `∫ f² dr` or `∫ f² r² dr` over a strictly increasing, possibly
/// non-uniform grid.
pub fn radial_norm(f: &[f64], grid: &[f64], mode: NormMode, rule: Quadrature) -> Result<f64> {
    check_grid(grid)?;
    if f.len() != grid.len() {
        return Err(Error::LengthMismatch {
            grid: grid.len(),
            samples: f.len(),
        });
    }
    if let Some(bad) = f.iter().find(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            name: "f",
            value: *bad,
        });
    }
    let integrand: Vec<f64> = match mode {
        NormMode::Reduced => f.iter().map(|v| v * v).collect(),
        NormMode::Full => f
            .iter()
            .zip(grid)
            .map(|(v, r)| v * v * r * r)
            .collect(),
    };
    Ok(match rule {
        Quadrature::Trapezoid => trapezoid(&integrand, grid),
        Quadrature::Simpson => simpson(&integrand, grid),
    })
}

pub(crate) fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.len() < 2 {
        return Err(Error::GridTooSmall {
            needed: 2,
            got: grid.len(),
        });
    }
    for (i, w) in grid.windows(2).enumerate() {
        if !(w[1] > w[0]) || !w[1].is_finite() || !w[0].is_finite() {
            return Err(Error::NonMonotoneGrid(i + 1));
        }
    }
    Ok(())
}

pub fn trapezoid(y: &[f64], x: &[f64]) -> f64 {
    x.windows(2)
        .zip(y.windows(2))
        .map(|(xs, ys)| 0.5 * (xs[1] - xs[0]) * (ys[0] + ys[1]))
        .sum()
}

/// Composite Simpson rule for irregular spacing. An odd interval count is
/// closed with the quadratic through the last three points.
pub fn simpson(y: &[f64], x: &[f64]) -> f64 {
    let n = x.len() - 1;
    if n == 1 {
        return trapezoid(y, x);
    }
    let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    let mut total = 0.0;
    let mut i = 0;
    while i + 1 < n {
        let (h0, h1) = (h[i], h[i + 1]);
        let hs = h0 + h1;
        total += hs / 6.0
            * ((2.0 - h1 / h0) * y[i] + hs * hs / (h0 * h1) * y[i + 1] + (2.0 - h0 / h1) * y[i + 2]);
        i += 2;
    }
    if n % 2 == 1 {
        let (h0, h1) = (h[n - 2], h[n - 1]);
        let a = (2.0 * h1 * h1 + 3.0 * h1 * h0) / (6.0 * (h0 + h1));
        let b = (h1 * h1 + 3.0 * h1 * h0) / (6.0 * h0);
        let c = h1 * h1 * h1 / (6.0 * h0 * (h0 + h1));
        total += a * y[n] + b * y[n - 1] - c * y[n - 2];
    }
    total
}

/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton iteration.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else { p1 };
            dp = nf * (x * p - p0) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = x;
        nodes[n - 1 - i] = -x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}
