//! Shooting solver against the closed-form lines.

use dirac_kepler::params::channel_from_kappa;
use dirac_kepler::radial::{find_eigenvalues, SolverOptions};
use dirac_kepler::spectrum::{energy_branches, Branch};
use dirac_kepler::CouplingParams;

fn main() -> dirac_kepler::Result<()> {
    let c = CouplingParams::new(0.2, -0.5)?;
    let opts = SolverOptions::default();
    for kappa in [-1, 1] {
        for s in find_eigenvalues(kappa, &c, (-0.9999, 0.9999), 2, &opts)? {
            let (k, branch, n_r) = s.spectrum_label();
            let ch = channel_from_kappa(k, &c)?;
            let (p, m) = energy_branches(n_r as u32, &ch, &c)?;
            let line = if branch == Branch::Positive { p } else { m };
            println!(
                "system kappa={kappa:>2}: E = {:+.12}  line ({k:+}, {}, n_r={n_r})  |dE| = {:.1e}  winding {}",
                s.energy,
                branch.symbol(),
                (s.energy - line.energy).abs(),
                s.winding
            );
        }
    }
    Ok(())
}
