//! Acceptance criteria 1-9. Runs as a plain binary and prints one line per
//! criterion; exits nonzero if any fails.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use dirac_kepler::angular::{
    barrier_block_structure, barrier_matrix, lambda_block, lambda_quadratic_eigs, SigmaVariant,
};
use dirac_kepler::claims::{oracle_sweep, ClaimConfig, ClaimGrid};
use dirac_kepler::params::channel_from_kappa;
use dirac_kepler::radial::{
    find_eigenvalues, verify_factorization, DiracRadialSolution, RadialGrid, SolverOptions,
};
use dirac_kepler::spectrum::{analytic_radial_r, energy_branches, radial_equation_residual, Branch, SpectrumLine};
use dirac_kepler::{CouplingParams, Error};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn line(alpha: f64, beta: f64, kappa: i32, n_r: u32, branch: Branch) -> SpectrumLine {
    let c = CouplingParams::new(alpha, beta).unwrap();
    let ch = channel_from_kappa(kappa, &c).unwrap();
    let (p, m) = energy_branches(n_r, &ch, &c).unwrap();
    if branch == Branch::Positive {
        p
    } else {
        m
    }
}

const WINDOW: (f64, f64) = (-0.99999, 0.99999);

fn nearest(states: &[DiracRadialSolution], e: f64) -> f64 {
    states.iter().map(|s| (s.energy - e).abs()).fold(f64::INFINITY, f64::min)
}

/// Exact rational check that p/q solves `(N²+α²)E² - 2αβE + β² - N² = 0`
/// at α = 1/5, β = -1/2, N = 11/10. Everything is scaled by 100·q².
fn flagship_root_is_exact(p: i64, q: i64) -> bool {
    let (n2_plus_a2, two_ab, b2_minus_n2) = (125, -20, -96);
    n2_plus_a2 * p * p - two_ab * p * q + b2_minus_n2 * q * q == 0
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let plus = line(0.2, -0.5, -1, 0, Branch::Positive);
    let minus = line(0.2, -0.5, -1, 0, Branch::Negative);
    ensure(flagship_root_is_exact(4, 5) && flagship_root_is_exact(-24, 25), || {
        "4/5 and -24/25 are not roots of the flagship quadratic".into()
    })?;
    ensure((plus.energy - 0.8).abs() <= 2.0 * f64::EPSILON, || format!("E+ = {:.17}", plus.energy))?;
    ensure((minus.energy + 0.96).abs() <= 2.0 * f64::EPSILON, || format!("E- = {:.17}", minus.energy))?;

    let c = CouplingParams::new(0.2, -0.5).unwrap();
    let opts = SolverOptions::default();
    let k_minus = find_eigenvalues(-1, &c, WINDOW, 0, &opts).map_err(|e| e.to_string())?;
    let k_plus = find_eigenvalues(1, &c, WINDOW, 0, &opts).map_err(|e| e.to_string())?;
    let d_plus = nearest(&k_minus, 0.8);
    let d_minus = nearest(&k_plus, -0.96);
    ensure(d_plus <= 1e-8, || format!("kappa=-1 system misses 0.8 (closest {d_plus:.2e})"))?;
    ensure(d_minus <= 1e-8, || format!("kappa=+1 system misses -0.96 (closest {d_minus:.2e})"))?;
    ensure(nearest(&k_minus, -0.96) > 1e-3, || "-0.96 also found in the kappa=-1 system".into())?;
    let elapsed = t.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:.2?}"))?;
    Ok(format!(
        "E+ = 0.8 (|dE| = {d_plus:.1e}, radial system kappa=-1), E- = -0.96 (|dE| = {d_minus:.1e}, \
         radial system kappa=+1), {elapsed:.2?}"
    ))
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let s = oracle_sweep(&ClaimConfig::default()).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    ensure(s.states_compared > 0 && s.states_compared <= 150, || format!("{} states", s.states_compared))?;
    ensure(s.max_abs_error <= 1e-8, || format!("max error {:.3e}", s.max_abs_error))?;
    ensure(s.unmatched.is_empty(), || format!("unmatched: {:?}", s.unmatched))?;
    ensure(s.missing.is_empty(), || format!("missing: {:?}", s.missing))?;
    ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:.2?}"))?;
    Ok(format!(
        "{} states, max |dE| = {:.2e}, 0 unmatched, 0 missing, {elapsed:.2?}",
        s.states_compared, s.max_abs_error
    ))
}

fn criterion_3() -> Outcome {
    let grid = ClaimGrid::default();
    let mut worst = 0.0f64;
    let mut count = 0;
    for c in grid.points() {
        for kappa in grid.solver_kappas() {
            let g2 = (kappa * kappa) as f64 + c.beta_s * c.beta_s - c.alpha * c.alpha;
            if g2 <= 0.0 {
                continue;
            }
            let g = g2.sqrt();
            // l* for κ and for -κ: γ-1 on the negative side, γ on the positive.
            let mut want = [g * (g - 1.0), g * (g + 1.0)];
            want.sort_by(f64::total_cmp);
            let block = lambda_block(kappa, &c).map_err(|e| e.to_string())?;
            let (a, b) = lambda_quadratic_eigs(&block).map_err(|e| e.to_string())?;
            let mut got = [a, b];
            got.sort_by(f64::total_cmp);
            worst = worst.max((got[0] - want[0]).abs()).max((got[1] - want[1]).abs());
            count += 1;
        }
    }
    ensure(worst <= 1e-12, || format!("max deviation {worst:.2e}"))?;
    Ok(format!("{count} channels, max |eig - l*(l*+1)| = {worst:.2e}"))
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    for a in [0.1, 0.2, 0.3, 0.5, 0.9] {
        for sign in [1.0, -1.0] {
            let beta = sign * a;
            let c = CouplingParams::new(a, beta).unwrap();
            for kappa in [-3, -2, -1, 1, 2, 3] {
                for branch in [Branch::Positive, Branch::Negative] {
                    let l = line(a, beta, kappa, 0, branch);
                    let want = if kappa < 0 { (-kappa - 1) as f64 } else { kappa as f64 };
                    ensure(l.l_star == want, || format!("alpha={a}, beta_s={beta}, kappa={kappa}: l* = {:.17}", l.l_star))?;
                }
            }
            let s = barrier_block_structure(&c);
            // a > 0 cancels the upper-right block, a < 0 the lower-left one.
            let vanishing = if sign > 0.0 { s.upper_right } else { s.lower_left };
            ensure(vanishing <= 1e-15, || format!("alpha={a}, beta_s={beta}: off-diagonal block {vanishing:.2e}"))?;
            checked += 1;
        }
    }
    let generic = barrier_block_structure(&CouplingParams::new(0.2, -0.5).unwrap());
    ensure(generic.upper_right > 0.1 && generic.lower_left > 0.1, || format!("{generic:?}"))?;
    Ok(format!("{checked} points with alpha = |beta_s|: integer l*, off-diagonal barrier block zero"))
}

fn sommerfeld_oracle(alpha: f64, kappa: i32, n_r: u32) -> f64 {
    let g0 = ((kappa * kappa) as f64 - alpha * alpha).sqrt();
    let n_tilde = if kappa < 0 { n_r } else { n_r + 1 } as f64;
    (1.0 + alpha * alpha / (n_tilde + g0).powi(2)).powf(-0.5)
}

fn criterion_5() -> Outcome {
    let mut worst = 0.0f64;
    for alpha in [0.01, 0.1, 0.2, 0.5, 0.9] {
        for kappa in [-3, -2, -1, 1, 2, 3] {
            for n_r in 0..5 {
                let e = line(alpha, 0.0, kappa, n_r, Branch::Positive).energy;
                worst = worst.max((e - sommerfeld_oracle(alpha, kappa, n_r)).abs());
            }
        }
    }
    ensure(worst <= 1e-12, || format!("max Sommerfeld deviation {worst:.2e}"))?;
    let alpha = 0.01;
    let e = line(alpha, 0.0, -1, 0, Branch::Positive).energy;
    let bohr = ((e - 1.0) + alpha * alpha / 2.0).abs();
    ensure(bohr <= 1e-8, || format!("Bohr limit deviation {bohr:.2e}"))?;
    Ok(format!("max |E - Sommerfeld| = {worst:.2e}, Bohr deviation at alpha=0.01: {bohr:.2e}"))
}

/// Numeric states per (alpha, beta_s, κ) on the default grid, straight from
/// the solver.
fn grid_numerics() -> Result<HashMap<(u64, u64, i32), Vec<DiracRadialSolution>>, String> {
    let grid = ClaimGrid::default();
    let opts = SolverOptions::default();
    let mut out = HashMap::new();
    for c in grid.points() {
        for kappa in grid.solver_kappas() {
            let states = if c.gamma(kappa).is_ok() {
                find_eigenvalues(kappa, &c, WINDOW, grid.nr_max as usize, &opts).map_err(|e| e.to_string())?
            } else {
                Vec::new()
            };
            out.insert((c.alpha.to_bits(), c.beta_s.to_bits(), kappa), states);
        }
    }
    Ok(out)
}

fn criterion_6(numerics: &HashMap<(u64, u64, i32), Vec<DiracRadialSolution>>) -> Outcome {
    let grid = ClaimGrid::default();
    let mut confirmed = Vec::new();
    for c in grid.points() {
        let all: Vec<f64> = grid
            .solver_kappas()
            .iter()
            .flat_map(|&k| numerics[&(c.alpha.to_bits(), c.beta_s.to_bits(), k)].iter().map(|s| s.energy))
            .collect();
        for &kappa in &grid.kappas {
            let p = line(c.alpha, c.beta_s, kappa, 0, Branch::Positive);
            let m = line(c.alpha, c.beta_s, kappa, 0, Branch::Negative);
            let hit = |e: f64| all.iter().any(|x| (x - e).abs() <= 1e-8);
            if p.admissible && m.admissible && p.energy > 0.0 && m.energy < 0.0 && hit(p.energy) && hit(m.energy) {
                confirmed.push((c.alpha, c.beta_s, kappa));
            }
        }
    }
    ensure(!confirmed.is_empty(), || "no point with two confirmed opposite-sign states".into())?;
    let (a, b, k) = confirmed[0];
    Ok(format!(
        "{} (point, kappa) pairs with confirmed E+ > 0 and E- < 0, e.g. alpha={a}, beta_s={b}, kappa={k}",
        confirmed.len()
    ))
}

fn criterion_7(numerics: &HashMap<(u64, u64, i32), Vec<DiracRadialSolution>>) -> Outcome {
    let grid = ClaimGrid::default();
    let (mut arbitrated, mut contradicted_points) = (0, 0);
    for c in grid.points() {
        if c.beta_s >= c.alpha {
            continue;
        }
        let mut contradicted = false;
        for &kappa in &grid.kappas {
            for n_r in 0..=grid.nr_max {
                for branch in [Branch::Positive, Branch::Negative] {
                    let l = line(c.alpha, c.beta_s, kappa, n_r, branch);
                    if l.energy.abs() >= 1.0 || c.beta_s < c.alpha * l.energy {
                        continue;
                    }
                    for k in [kappa, -kappa] {
                        let d = nearest(&numerics[&(c.alpha.to_bits(), c.beta_s.to_bits(), k)], l.energy);
                        ensure(d > 1e-6, || {
                            format!(
                                "alpha={}, beta_s={}, kappa={kappa}, n_r={n_r}, {}: solver found E = {} in system {k}",
                                c.alpha,
                                c.beta_s,
                                branch.symbol(),
                                l.energy
                            )
                        })?;
                    }
                    arbitrated += 1;
                    contradicted = true;
                }
            }
        }
        contradicted_points += contradicted as usize;
    }
    ensure(contradicted_points >= 1, || "no point contradicts beta_s < alpha".into())?;
    Ok(format!(
        "{arbitrated} candidates with beta_s < alpha <= beta_s/E have no numeric state; \
         beta_s < alpha contradicted at {contradicted_points} points"
    ))
}

fn criterion_8() -> Outcome {
    let (lo, hi, h) = (0.5, 6.5, 0.01);
    let grid = RadialGrid::uniform(lo, hi, ((hi - lo) / h).round() as usize + 1).map_err(|e| e.to_string())?;
    let mut orders = Vec::new();
    for (alpha, beta, kappa, seed) in [(0.2, -0.5, -1, 11), (0.5, 0.4, 2, 12), (0.1, 0.3, 1, 13), (0.5, -0.1, -2, 14)] {
        let c = CouplingParams::new(alpha, beta).unwrap();
        let rep = verify_factorization(kappa, &c, &grid, seed).map_err(|e| e.to_string())?;
        ensure((rep.order - 2.0).abs() <= 0.2, || format!("alpha={alpha}, beta_s={beta}, kappa={kappa}: order {:.3}", rep.order))?;
        orders.push(rep.order);
    }
    let c = CouplingParams::new(0.2, -0.5).unwrap();
    let flagged = matches!(
        barrier_matrix(&c, 1.0, 0.5, SigmaVariant::Uncorrected2x2),
        Err(Error::DimensionMismatch { .. })
    );
    ensure(flagged, || "2x2 sigma variant was not rejected".into())?;
    let lo_o = orders.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi_o = orders.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(format!("orders {lo_o:.3}..{hi_o:.3}; 2x2 sigma variant rejected as dimension mismatch"))
}

fn sign_changes(v: &[f64]) -> usize {
    let signs: Vec<bool> = v.iter().filter(|x| x.abs() > 1e-300).map(|x| *x > 0.0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn criterion_9() -> Outcome {
    let r: Vec<f64> = (0..=60_000).map(|i| 0.1 + i as f64 * 5e-4).collect();
    let wide: Vec<f64> = (1..=200_000).map(|i| i as f64 * 1e-3).collect();
    let flagship = line(0.2, -0.5, -1, 0, Branch::Positive);
    let rr = analytic_radial_r(&flagship, &r).map_err(|e| e.to_string())?;
    let residual = radial_equation_residual(&flagship, &r, &rr).map_err(|e| e.to_string())?;
    ensure(residual <= 1e-6, || format!("relative residual {residual:.2e}"))?;

    let c = CouplingParams::new(0.2, -0.5).unwrap();
    let numeric = find_eigenvalues(-1, &c, WINDOW, 2, &SolverOptions::default()).map_err(|e| e.to_string())?;
    for n_r in 0..=2 {
        let l = line(0.2, -0.5, -1, n_r, Branch::Positive);
        let nodes = sign_changes(&analytic_radial_r(&l, &wide).map_err(|e| e.to_string())?);
        ensure(nodes == n_r as usize, || format!("analytic R for n_r={n_r} has {nodes} nodes"))?;
        let s = numeric
            .iter()
            .find(|s| (s.energy - l.energy).abs() <= 1e-8)
            .ok_or_else(|| format!("no numeric state at E = {}", l.energy))?;
        ensure(s.n_r == n_r as usize, || format!("numeric state at E = {} labelled n_r = {}", l.energy, s.n_r))?;
    }
    Ok(format!("relative residual {residual:.2e}; analytic and numeric node labels equal n_r for n_r = 0, 1, 2"))
}

fn main() {
    let mut failed = 0;
    let mut report = |n: usize, outcome: Outcome| match outcome {
        Ok(msg) => println!("criterion {n}: PASS  {msg}"),
        Err(msg) => {
            failed += 1;
            println!("criterion {n}: FAIL  {msg}");
        }
    };
    report(1, criterion_1());
    report(2, criterion_2());
    report(3, criterion_3());
    report(4, criterion_4());
    report(5, criterion_5());
    match grid_numerics() {
        Ok(n) => {
            report(6, criterion_6(&n));
            report(7, criterion_7(&n));
        }
        Err(e) => {
            report(6, Err(e.clone()));
            report(7, Err(e));
        }
    }
    report(8, criterion_8());
    report(9, criterion_9());
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
