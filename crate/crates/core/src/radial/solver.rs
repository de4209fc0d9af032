//! Two-sided shooting for the radial Dirac system.
//!
//! Integration runs on a log grid in the Prüfer variables
//! `G = ρ sin θ`, `F = ρ cos θ`:
//!
//! ```text
//! dθ/dt    = r E + alpha + (r + beta_s) cos 2θ - κ sin 2θ
//! d lnρ/dt = κ cos 2θ + (r + beta_s) sin 2θ          (t = ln r)
//! ```
//!
//! This is the same linear system as [`dirac_rhs`] with the amplitude kept
//! in logarithmic form, so the growing half-solutions cannot overflow. The
//! mismatch `Φ(E) = θ_out(r_m) - θ_in(r_m)` is strictly increasing in `E`
//! and an eigenvalue sits wherever `Φ = kπ`. The integer `k` is the winding
//! of the eigenfunction's Prüfer angle and serves as the node count:
//! positive-energy states have `k = n_r >= 0`, negative-energy states
//! `k = -(n_r + 1)`. Plain sign changes of `G` or `F` are also reported, but
//! they jump when a node enters through the origin (for example when
//! `beta_s + alpha` changes sign), whereas `k` does not.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::grid::RadialGrid;
use crate::error::{Error, Result};
use crate::params::CouplingParams;
use crate::special::{radial_norm, NormMode, Quadrature};
use crate::spectrum::Branch;

impl Branch {
    fn from_winding(k: i64) -> Self {
        if k >= 0 {
            Branch::Positive
        } else {
            Branch::Negative
        }
    }
}

fn radial_index(k: i64) -> usize {
    if k >= 0 {
        k as usize
    } else {
        (-k - 1) as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Points on the log grid.
    pub grid_points: usize,
    pub r_min: f64,
    /// Decay lengths `1/λ` kept beyond the classical turning point.
    pub decay_lengths: f64,
    /// Width of the final energy bracket.
    pub energy_tolerance: f64,
    pub max_iterations: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            grid_points: 20_000,
            r_min: 1e-6,
            decay_lengths: 40.0,
            energy_tolerance: 1e-13,
            max_iterations: 200,
        }
    }
}

/// Right-hand side `(G', F')` of the radial Dirac system at radius `r`.
pub fn dirac_rhs(
    r: f64,
    g: f64,
    f: f64,
    energy: f64,
    kappa: i32,
    c: &CouplingParams,
) -> Result<(f64, f64)> {
    if !(r > 0.0) {
        return Err(Error::NonPositiveRadius(r));
    }
    let k = kappa as f64;
    let mass = 1.0 + c.beta_s / r;
    let u = -c.alpha / r;
    let dg = -(k / r) * g + (energy + mass - u) * f;
    let df = (k / r) * f - (energy - mass - u) * g;
    Ok((dg, df))
}

#[derive(Debug, Clone, Copy)]
struct Problem {
    energy: f64,
    kappa: f64,
    alpha: f64,
    beta_s: f64,
}

impl Problem {
    fn new(energy: f64, kappa: i32, c: &CouplingParams) -> Self {
        Self {
            energy,
            kappa: kappa as f64,
            alpha: c.alpha,
            beta_s: c.beta_s,
        }
    }

    #[inline]
    fn angle_rate(&self, r: f64, theta: f64) -> f64 {
        let (s, c) = (2.0 * theta).sin_cos();
        r * self.energy + self.alpha + (r + self.beta_s) * c - self.kappa * s
    }

    #[inline]
    fn log_amp_rate(&self, r: f64, theta: f64) -> f64 {
        let (s, c) = (2.0 * theta).sin_cos();
        self.kappa * c + (r + self.beta_s) * s
    }

    /// Angle of the regular small-r solution `(G, F) ∝ r^γ v`, with `v` an
    /// eigenvector of `[[-κ, beta_s + alpha], [beta_s - alpha, κ]]` for `+γ`.
    ///
    /// The sign is fixed so that the component that dominates in the free
    /// limit is positive: `G` for κ < 0, `F` for κ > 0. With this choice the
    /// winding of θ is continuous in the couplings.
    fn frobenius_angle(&self, gamma: f64) -> f64 {
        let (g, f) = if self.kappa > 0.0 {
            (self.beta_s + self.alpha, gamma + self.kappa)
        } else {
            (gamma - self.kappa, self.beta_s - self.alpha)
        };
        g.atan2(f)
    }

    /// Angle of the decaying large-r solution, `F/G = -λ/(1 + E)`.
    fn decay_angle(&self) -> f64 {
        let lambda = (1.0 - self.energy * self.energy).sqrt();
        1.0f64.atan2(-lambda / (1.0 + self.energy))
    }
}

/// One RK4 step in `t = ln r` for `(θ, ln ρ)`; `h` may be negative.
#[inline]
fn rk4_step(p: &Problem, r: f64, h: f64, theta: f64, log_amp: f64, with_amp: bool) -> (f64, f64) {
    let r_mid = r * (0.5 * h).exp();
    let r_end = r * h.exp();
    let k1 = p.angle_rate(r, theta);
    let t2 = theta + 0.5 * h * k1;
    let k2 = p.angle_rate(r_mid, t2);
    let t3 = theta + 0.5 * h * k2;
    let k3 = p.angle_rate(r_mid, t3);
    let t4 = theta + h * k3;
    let k4 = p.angle_rate(r_end, t4);
    let theta_next = theta + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    let amp_next = if with_amp {
        let a1 = p.log_amp_rate(r, theta);
        let a2 = p.log_amp_rate(r_mid, t2);
        let a3 = p.log_amp_rate(r_mid, t3);
        let a4 = p.log_amp_rate(r_end, t4);
        log_amp + h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
    } else {
        log_amp
    };
    (theta_next, amp_next)
}

/// Prüfer trajectory over grid indices `lo..=hi`, stored in increasing r.
#[derive(Debug, Clone)]
struct Trajectory {
    lo: usize,
    theta: Vec<f64>,
    log_amp: Vec<f64>,
}

impl Trajectory {
    fn at(&self, i: usize) -> (f64, f64) {
        let j = i - self.lo;
        (self.theta[j], self.log_amp.get(j).copied().unwrap_or(0.0))
    }

    fn last_theta(&self) -> f64 {
        *self.theta.last().expect("non-empty trajectory")
    }

    fn first_theta(&self) -> f64 {
        self.theta[0]
    }
}

struct Shooter<'a> {
    grid: &'a RadialGrid,
    problem: Problem,
    gamma: f64,
    step: f64,
    match_index: usize,
    end_index: usize,
}

impl<'a> Shooter<'a> {
    fn new(
        grid: &'a RadialGrid,
        energy: f64,
        kappa: i32,
        c: &CouplingParams,
        opts: &SolverOptions,
    ) -> Result<Self> {
        if grid.spacing() != super::grid::Spacing::Log {
            return Err(Error::Config("the shooting solver needs a log grid".into()));
        }
        if !(energy.abs() < 1.0) {
            return Err(Error::EnergyOutsideGap(energy));
        }
        let gamma = c.gamma(kappa)?;
        let n = grid.len();
        let r_end = tail_radius(energy, c, opts.decay_lengths);
        let end_index = grid.nearest_index(r_end).max(n / 8).min(n - 1);
        let match_index = grid
            .nearest_index(match_radius(c, grid))
            .clamp(2, end_index.saturating_sub(2).max(2));
        Ok(Self {
            grid,
            problem: Problem::new(energy, kappa, c),
            gamma,
            step: grid.step(),
            match_index,
            end_index,
        })
    }

    fn outward(&self, upto: usize, with_amp: bool) -> Result<Trajectory> {
        let r = self.grid.points();
        let mut theta = self.problem.frobenius_angle(self.gamma);
        let mut amp = self.gamma * r[0].ln();
        let mut out = Trajectory {
            lo: 0,
            theta: Vec::with_capacity(upto + 1),
            log_amp: Vec::with_capacity(if with_amp { upto + 1 } else { 0 }),
        };
        out.theta.push(theta);
        if with_amp {
            out.log_amp.push(amp);
        }
        for &ri in &r[..upto] {
            (theta, amp) = rk4_step(&self.problem, ri, self.step, theta, amp, with_amp);
            if !theta.is_finite() || !amp.is_finite() {
                return Err(Error::IntegrationOverflow(ri));
            }
            out.theta.push(theta);
            if with_amp {
                out.log_amp.push(amp);
            }
        }
        Ok(out)
    }

    fn inward(&self, downto: usize, with_amp: bool) -> Result<Trajectory> {
        let r = self.grid.points();
        let mut theta = self.problem.decay_angle();
        let mut amp = 0.0;
        let len = self.end_index - downto + 1;
        let mut theta_rev = Vec::with_capacity(len);
        let mut amp_rev = Vec::with_capacity(if with_amp { len } else { 0 });
        theta_rev.push(theta);
        if with_amp {
            amp_rev.push(amp);
        }
        for i in (downto + 1..=self.end_index).rev() {
            (theta, amp) = rk4_step(&self.problem, r[i], -self.step, theta, amp, with_amp);
            if !theta.is_finite() || !amp.is_finite() {
                return Err(Error::IntegrationOverflow(r[i]));
            }
            theta_rev.push(theta);
            if with_amp {
                amp_rev.push(amp);
            }
        }
        theta_rev.reverse();
        amp_rev.reverse();
        Ok(Trajectory {
            lo: downto,
            theta: theta_rev,
            log_amp: amp_rev,
        })
    }

    fn mismatch(&self) -> Result<f64> {
        let out = self.outward(self.match_index, false)?;
        let inn = self.inward(self.match_index, false)?;
        Ok(out.last_theta() - inn.first_theta())
    }
}

/// Outer radius beyond which a bound state at `energy` is negligible:
/// classical turning point plus `decay_lengths / λ`.
fn tail_radius(energy: f64, c: &CouplingParams, decay_lengths: f64) -> f64 {
    let lambda = (1.0 - energy * energy).sqrt();
    // Outermost zero of (E - U)² - m*² for U = -alpha/r, m* = 1 + beta_s/r.
    let upper = (c.alpha - c.beta_s) / (1.0 - energy);
    let lower = -(c.alpha + c.beta_s) / (1.0 + energy);
    let turning = upper.max(lower).max(0.0);
    1.5 * turning + decay_lengths / lambda + 10.0
}

/// Where `|U| + |m* - 1| = 1/2`, kept inside the grid.
fn match_radius(c: &CouplingParams, grid: &RadialGrid) -> f64 {
    let r = 2.0 * (c.alpha + c.beta_s.abs());
    r.clamp(0.05, 0.25 * grid.r_max())
}

/// Log grid wide enough for every bound state with energy in `window`.
pub fn window_grid(
    c: &CouplingParams,
    window: (f64, f64),
    opts: &SolverOptions,
) -> Result<RadialGrid> {
    let r_max = [window.0, window.1]
        .iter()
        .map(|&e| tail_radius(e, c, opts.decay_lengths))
        .fold(20.0, f64::max);
    RadialGrid::log(opts.r_min, r_max, opts.grid_points)
}

fn check_window(window: (f64, f64)) -> Result<()> {
    let (lo, hi) = window;
    if !(lo > -1.0 && hi < 1.0 && lo < hi) {
        return Err(Error::InvalidWindow { lo, hi });
    }
    Ok(())
}

fn sign_changes<I: Iterator<Item = f64>>(values: I) -> usize {
    let mut count = 0;
    let mut prev = 0.0f64;
    for v in values {
        if v == 0.0 {
            continue;
        }
        if prev != 0.0 && v.signum() != prev.signum() {
            count += 1;
        }
        prev = v;
    }
    count
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatchResult {
    /// `(G_out F_in - G_in F_out) / (|u_out| |u_in|)` at the matching radius.
    pub defect: f64,
    /// `floor(Φ/π)`: number of eigenvalues crossed, counted from the gap.
    /// Jumps by exactly one across each eigenvalue.
    pub winding: i64,
    /// Sign changes of the outward `G` and `F` over the whole grid.
    pub nodes_g: usize,
    pub nodes_f: usize,
    pub match_radius: f64,
}

/// Integrate outward from `r_min` and inward from the tail, and compare at
/// the matching radius.
pub fn shoot_and_match(
    energy: f64,
    kappa: i32,
    c: &CouplingParams,
    grid: &RadialGrid,
) -> Result<MatchResult> {
    shoot_with(energy, kappa, c, grid, &SolverOptions::default())
}

pub(crate) fn shoot_with(
    energy: f64,
    kappa: i32,
    c: &CouplingParams,
    grid: &RadialGrid,
    opts: &SolverOptions,
) -> Result<MatchResult> {
    let s = Shooter::new(grid, energy, kappa, c, opts)?;
    let out = s.outward(s.end_index, false)?;
    let inn = s.inward(s.match_index, false)?;
    let (to, _) = out.at(s.match_index);
    let ti = inn.first_theta();
    let (go, fo) = to.sin_cos();
    let (gi, fi) = ti.sin_cos();
    let nodes_g = sign_changes(out.theta.iter().map(|t| t.sin()));
    let nodes_f = sign_changes(out.theta.iter().map(|t| t.cos()));
    Ok(MatchResult {
        defect: go * fi - gi * fo,
        winding: ((to - ti) / PI).floor() as i64,
        nodes_g,
        nodes_f,
        match_radius: grid.points()[s.match_index],
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiracRadialSolution {
    pub kappa: i32,
    pub energy: f64,
    pub grid: RadialGrid,
    /// Upper (large for `E > 0`) reduced radial function.
    pub g: Vec<f64>,
    /// Lower reduced radial function.
    pub f: Vec<f64>,
    pub nodes_g: usize,
    pub nodes_f: usize,
    /// Prüfer winding `k` of the eigenfunction.
    pub winding: i64,
    /// Radial quantum number from the winding.
    pub n_r: usize,
    pub branch: Branch,
    pub match_defect: f64,
    pub match_radius: f64,
    /// Slope of `ln sqrt(G² + F²)` against `ln r` near the origin.
    pub small_r_exponent: f64,
}

impl DiracRadialSolution {
    /// Label `(κ, branch, n_r)` of the matching closed-form line. Negative
    /// windings belong to the line with the opposite κ.
    pub fn spectrum_label(&self) -> (i32, Branch, usize) {
        match self.branch {
            Branch::Positive => (self.kappa, Branch::Positive, self.n_r),
            Branch::Negative => (-self.kappa, Branch::Negative, self.n_r),
        }
    }

    pub fn norm(&self) -> f64 {
        let rho: Vec<f64> = self.g.iter().zip(&self.f).map(|(g, f)| g.hypot(*f)).collect();
        radial_norm(&rho, self.grid.points(), NormMode::Reduced, Quadrature::Simpson)
            .unwrap_or(f64::NAN)
    }
}

struct Searcher<'a> {
    grid: &'a RadialGrid,
    kappa: i32,
    c: &'a CouplingParams,
    opts: &'a SolverOptions,
}

impl Searcher<'_> {
    fn phase(&self, energy: f64) -> Result<f64> {
        Shooter::new(self.grid, energy, self.kappa, self.c, self.opts)?.mismatch()
    }

    fn count(&self, energy: f64) -> Result<i64> {
        Ok((self.phase(energy)? / PI).floor() as i64)
    }

    /// Energy where `Φ = kπ`, knowing `count(lo) < k <= count(hi)`.
    fn locate(&self, k: i64, mut lo: f64, mut hi: f64) -> Result<f64> {
        // Bisection on the integer count until one crossing is isolated.
        let mut c_lo = self.count(lo)?;
        let mut c_hi = self.count(hi)?;
        let mut iter = 0;
        while c_lo != k - 1 || c_hi != k {
            let mid = 0.5 * (lo + hi);
            let c_mid = self.count(mid)?;
            if c_mid < k {
                lo = mid;
                c_lo = c_mid;
            } else {
                hi = mid;
                c_hi = c_mid;
            }
            iter += 1;
            if iter > self.opts.max_iterations || hi - lo < self.opts.energy_tolerance {
                break;
            }
        }
        // Illinois-safeguarded secant on the scale-free Wronskian defect.
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let defect = |e: f64| -> Result<f64> { Ok(sign * self.phase(e)?.sin()) };
        let (mut f_lo, mut f_hi) = (defect(lo)?, defect(hi)?);
        if f_lo > 0.0 || f_hi < 0.0 {
            return Err(Error::NoConvergence(0.5 * (lo + hi)));
        }
        let mut side = 0i8;
        for _ in 0..self.opts.max_iterations {
            if hi - lo <= self.opts.energy_tolerance * (1.0 + lo.abs()) {
                break;
            }
            let mut e = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
            if !(e > lo && e < hi) {
                e = 0.5 * (lo + hi);
            }
            let fe = defect(e)?;
            if fe == 0.0 {
                return Ok(e);
            }
            if fe < 0.0 {
                lo = e;
                f_lo = fe;
                if side == -1 {
                    f_hi *= 0.5;
                }
                side = -1;
            } else {
                hi = e;
                f_hi = fe;
                if side == 1 {
                    f_lo *= 0.5;
                }
                side = 1;
            }
        }
        if hi - lo > 1e-9 {
            return Err(Error::NoConvergence(0.5 * (lo + hi)));
        }
        Ok((lo * f_hi - hi * f_lo) / (f_hi - f_lo))
    }

    fn build(&self, energy: f64) -> Result<DiracRadialSolution> {
        let s = Shooter::new(self.grid, energy, self.kappa, self.c, self.opts)?;
        let m = s.match_index;
        let out = s.outward(m, true)?;
        let inn = s.inward(m, true)?;
        let (t_out, a_out) = out.at(m);
        let (t_in, a_in) = inn.at(m);
        let turns = ((t_out - t_in) / PI).round();
        let n = self.grid.len();
        let mut theta = vec![0.0; n];
        let mut log_amp = vec![f64::NEG_INFINITY; n];
        for i in 0..=m {
            (theta[i], log_amp[i]) = out.at(i);
        }
        for i in m + 1..=s.end_index {
            let (t, a) = inn.at(i);
            theta[i] = t + turns * PI;
            log_amp[i] = a - a_in + a_out;
        }
        let peak = log_amp.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let mut g = vec![0.0; n];
        let mut f = vec![0.0; n];
        for i in 0..=s.end_index {
            let rho = (log_amp[i] - peak).exp();
            let (sn, cs) = theta[i].sin_cos();
            g[i] = rho * sn;
            f[i] = rho * cs;
        }
        let rho: Vec<f64> = g.iter().zip(&f).map(|(g, f)| g.hypot(*f)).collect();
        let norm = radial_norm(&rho, self.grid.points(), NormMode::Reduced, Quadrature::Simpson)?;
        let scale = norm.sqrt().recip();
        g.iter_mut().for_each(|v| *v *= scale);
        f.iter_mut().for_each(|v| *v *= scale);
        let nodes_g = sign_changes(g.iter().copied());
        let nodes_f = sign_changes(f.iter().copied());
        let (gi, fi) = t_in.sin_cos();
        let (go, fo) = t_out.sin_cos();
        Ok(DiracRadialSolution {
            kappa: self.kappa,
            energy,
            grid: self.grid.clone(),
            nodes_g,
            nodes_f,
            winding: turns as i64,
            n_r: radial_index(turns as i64),
            branch: Branch::from_winding(turns as i64),
            match_defect: go * fi - gi * fo,
            match_radius: self.grid.points()[m],
            small_r_exponent: small_r_slope(self.grid.points(), &log_amp),
            g,
            f,
        })
    }
}

/// Least-squares slope of `ln ρ` against `ln r` over the first decade.
fn small_r_slope(r: &[f64], log_amp: &[f64]) -> f64 {
    let r_stop = r[0] * 10.0;
    let pts: Vec<(f64, f64)> = r
        .iter()
        .zip(log_amp)
        .take_while(|(ri, _)| **ri <= r_stop)
        .map(|(ri, a)| (ri.ln(), *a))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// All bound states of channel `κ` with energy in `window` and radial
/// quantum number `n_r <= n_max`, sorted by energy.
///
/// Only the windings `k ∈ [-(n_max + 1), n_max]` are searched, so the
/// accumulation points at `±1` are never scanned.
pub fn find_eigenvalues(
    kappa: i32,
    c: &CouplingParams,
    window: (f64, f64),
    n_max: usize,
    opts: &SolverOptions,
) -> Result<Vec<DiracRadialSolution>> {
    check_window(window)?;
    c.gamma(kappa)?;
    let grid = window_grid(c, window, opts)?;
    let search = Searcher {
        grid: &grid,
        kappa,
        c,
        opts,
    };
    let (lo, hi) = window;
    let k_min = (search.count(lo)? + 1).max(-(n_max as i64) - 1);
    let k_max = search.count(hi)?.min(n_max as i64);
    let mut states = Vec::new();
    for k in k_min..=k_max {
        let e = search.locate(k, lo, hi)?;
        states.push(search.build(e)?);
    }
    states.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    Ok(states)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(alpha: f64, beta: f64) -> CouplingParams {
        CouplingParams::new(alpha, beta).unwrap()
    }

    fn states(kappa: i32, cp: &CouplingParams) -> Vec<DiracRadialSolution> {
        find_eigenvalues(kappa, cp, (-0.999, 0.999), 5, &SolverOptions::default()).unwrap()
    }

    fn has(states: &[DiracRadialSolution], e: f64, tol: f64) -> bool {
        states.iter().any(|s| (s.energy - e).abs() <= tol)
    }

    #[test]
    fn rhs_matches_the_radial_system() {
        let cp = c(0.2, -0.5);
        let (r, g, f, e) = (0.7, 1.3, -0.4, 0.8);
        let (dg, df) = dirac_rhs(r, g, f, e, -1, &cp).unwrap();
        let mass = 1.0 - 0.5 / r;
        let u = -0.2 / r;
        assert_relative_eq!(dg, g / r + (e + mass - u) * f, epsilon = 1e-15);
        assert_relative_eq!(df, -f / r - (e - mass - u) * g, epsilon = 1e-15);
        assert!(matches!(dirac_rhs(0.0, g, f, e, -1, &cp), Err(Error::NonPositiveRadius(_))));
    }

    #[test]
    fn prufer_rates_are_the_same_system() {
        // θ' and (ln ρ)' in t = ln r, recomputed from (G', F').
        let cp = c(0.3, 0.15);
        for &(r, theta, e, kappa) in &[(0.4f64, 0.3f64, 0.5, -2), (3.0, 2.0, -0.7, 1), (12.0, -1.0, 0.9, 3)] {
            let p = Problem::new(e, kappa, &cp);
            let (g, f) = (theta.sin(), theta.cos());
            let (dg, df) = dirac_rhs(r, g, f, e, kappa, &cp).unwrap();
            assert_relative_eq!(p.angle_rate(r, theta), r * (dg * f - df * g), epsilon = 1e-12);
            assert_relative_eq!(p.log_amp_rate(r, theta), r * (dg * g + df * f), epsilon = 1e-12);
        }
    }

    #[test]
    fn frobenius_vector_solves_the_indicial_equation() {
        for &(alpha, beta, kappa) in &[(0.2, -0.5, -1), (0.2, -0.5, 1), (0.5, 0.4, -2), (0.1, 0.0, 2)] {
            let cp = c(alpha, beta);
            let gamma = cp.gamma(kappa).unwrap();
            let p = Problem::new(0.3, kappa, &cp);
            let (g, f) = p.frobenius_angle(gamma).sin_cos();
            // Leading order: r G' = -κ G + (beta_s + alpha) F, r F' = κ F + (beta_s - alpha) G.
            let k = kappa as f64;
            assert!((gamma * g - (-k * g + (beta + alpha) * f)).abs() < 1e-14);
            assert!((gamma * f - (k * f + (beta - alpha) * g)).abs() < 1e-14);
        }
    }

    #[test]
    fn defect_vanishes_only_at_eigenvalues() {
        let cp = c(0.2, -0.5);
        let grid = window_grid(&cp, (-0.999, 0.999), &SolverOptions::default()).unwrap();
        let at = shoot_and_match(0.8, -1, &cp, &grid).unwrap();
        assert!(at.defect.abs() <= 1e-9, "{at:?}");
        let mid = shoot_and_match(0.87, -1, &cp, &grid).unwrap();
        assert!(mid.defect.abs() > 0.05, "{mid:?}");
        let below = shoot_and_match(0.8 - 1e-6, -1, &cp, &grid).unwrap();
        let above = shoot_and_match(0.8 + 1e-6, -1, &cp, &grid).unwrap();
        assert_eq!(above.winding - below.winding, 1);
        assert!(matches!(shoot_and_match(1.0, -1, &cp, &grid), Err(Error::EnergyOutsideGap(_))));
    }

    #[test]
    fn flagship_states() {
        let cp = c(0.2, -0.5);
        let minus = states(-1, &cp);
        let plus = states(1, &cp);
        assert!(has(&minus, 0.8, 1e-8));
        assert!(has(&plus, -0.96, 1e-8));
        // -0.96 belongs to the κ = +1 system, not κ = -1.
        assert!(!has(&minus, -0.96, 1e-4));
        let ground = minus.iter().find(|s| (s.energy - 0.8).abs() < 1e-8).unwrap();
        assert_eq!((ground.winding, ground.n_r, ground.branch), (0, 0, Branch::Positive));
        let neg = plus.iter().find(|s| (s.energy + 0.96).abs() < 1e-8).unwrap();
        assert_eq!((neg.winding, neg.n_r, neg.branch), (-1, 0, Branch::Negative));
    }

    #[test]
    fn solutions_are_regular_normalized_and_decaying() {
        let cp = c(0.2, -0.5);
        for s in states(-1, &cp).iter().chain(states(1, &cp).iter()) {
            let gamma = cp.gamma(s.kappa).unwrap();
            assert!((s.small_r_exponent - gamma).abs() < 0.02 * gamma, "{} {}", s.energy, s.small_r_exponent);
            assert!((s.norm() - 1.0).abs() < 1e-8);
            let rho: Vec<f64> = s.g.iter().zip(&s.f).map(|(g, f)| g.hypot(*f)).collect();
            let trap = crate::special::trapezoid(
                &rho.iter().map(|x| x * x).collect::<Vec<_>>(),
                s.grid.points(),
            );
            assert!((trap - 1.0).abs() < 1e-5, "{trap}");
            assert!(s.match_defect.abs() < 1e-8);
        }
    }

    #[test]
    fn tail_decays_at_the_bound_state_rate() {
        // G ~ r^(q/λ) e^(-λ r) with λ = 0.6 and q = 0.66 at E = 0.8.
        let cp = c(0.2, -0.5);
        let s = states(-1, &cp).into_iter().find(|s| (s.energy - 0.8).abs() < 1e-8).unwrap();
        let r = s.grid.points();
        let (i, j) = (s.grid.nearest_index(30.0), s.grid.nearest_index(40.0));
        let slope = (s.g[j].abs().ln() - s.g[i].abs().ln()) / (r[j] - r[i]);
        let power = 0.66 / 0.6 * (r[j].ln() - r[i].ln()) / (r[j] - r[i]);
        assert!((slope - power + 0.6).abs() < 2e-3, "{slope}");
    }

    #[test]
    fn pure_vector_matches_dirac_coulomb() {
        let cp = c(0.5, 0.0);
        let s = states(-1, &cp);
        let lowest = s.iter().filter(|s| s.branch == Branch::Positive).map(|s| s.energy).fold(1.0, f64::min);
        assert!((lowest - 0.75f64.sqrt()).abs() < 1e-8, "{lowest}");
        assert!(s.iter().all(|s| s.energy > 0.0));
    }

    #[test]
    fn degeneracy_of_equal_j() {
        for &(alpha, beta) in &[(0.3, 0.0), (0.2, -0.5), (0.5, 0.1)] {
            let cp = c(alpha, beta);
            let minus = states(-1, &cp);
            let plus = states(1, &cp);
            let pick = |v: &[DiracRadialSolution], n: usize| {
                v.iter().find(|s| s.branch == Branch::Positive && s.n_r == n).unwrap().energy
            };
            assert!((pick(&minus, 1) - pick(&plus, 0)).abs() < 1e-8);
        }
    }

    #[test]
    fn no_state_where_effective_charge_repels() {
        let cp = c(0.5, 0.4);
        for kappa in [-2, -1, 1, 2] {
            for s in states(kappa, &cp) {
                assert!(0.5 * s.energy - 0.4 > 0.0, "{kappa} {}", s.energy);
            }
        }
        let none = find_eigenvalues(-1, &cp, (-0.999, 0.79), 5, &SolverOptions::default()).unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn free_particle_has_no_bound_states() {
        assert!(states(-1, &c(0.0, 0.0)).is_empty());
    }

    #[test]
    fn window_is_validated() {
        let cp = c(0.2, -0.5);
        let o = SolverOptions::default();
        for w in [(-1.0, 0.5), (0.2, 1.0), (0.5, 0.5), (0.6, 0.1)] {
            assert!(matches!(find_eigenvalues(-1, &cp, w, 3, &o), Err(Error::InvalidWindow { .. })));
        }
        assert!(find_eigenvalues(-1, &c(1.2, 0.0), (-0.5, 0.5), 3, &o).is_err());
    }

    #[test]
    fn n_max_caps_the_search() {
        let cp = c(0.2, -0.5);
        let s = find_eigenvalues(-1, &cp, (-0.999, 0.999), 0, &SolverOptions::default()).unwrap();
        let e: Vec<f64> = s.iter().map(|s| s.energy).collect();
        assert_eq!(e.len(), 2, "{e:?}");
        assert!(s.iter().all(|s| s.n_r == 0));
    }
}
