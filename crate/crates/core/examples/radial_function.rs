//! Laguerre radial function: normalization, nodes and equation residual.

use dirac_kepler::params::channel_from_kappa;
use dirac_kepler::special::{radial_norm, NormMode, Quadrature};
use dirac_kepler::spectrum::{analytic_radial_r, energy_branches, radial_equation_residual};
use dirac_kepler::CouplingParams;

fn main() -> dirac_kepler::Result<()> {
    let c = CouplingParams::new(0.2, -0.5)?;
    let ch = channel_from_kappa(-1, &c)?;
    let r: Vec<f64> = (0..=60_000).map(|i| 0.1 + i as f64 * 5e-4).collect();
    let wide: Vec<f64> = (1..=200_000).map(|i| i as f64 * 1e-3).collect();
    for n_r in 0..3 {
        let (line, _) = energy_branches(n_r, &ch, &c)?;
        let rr = analytic_radial_r(&line, &wide)?;
        let norm = radial_norm(&rr, &wide, NormMode::Full, Quadrature::Simpson)?;
        let nodes = rr.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
        let res = radial_equation_residual(&line, &r, &analytic_radial_r(&line, &r)?)?;
        println!(
            "n_r={n_r}: E = {:.10}, l* = {:.4}, norm = {norm:.8}, nodes = {nodes}, residual = {res:.2e}",
            line.energy, line.l_star
        );
    }
    Ok(())
}
