//! Closed-form energy lines for a few channels.

use dirac_kepler::params::channel_from_kappa;
use dirac_kepler::spectrum::energy_branches;
use dirac_kepler::CouplingParams;

fn main() -> dirac_kepler::Result<()> {
    let c = CouplingParams::new(0.2, -0.5)?;
    println!("alpha = {}, beta_s = {}", c.alpha, c.beta_s);
    println!("{:>5} {:>4} {:>3} {:>14} {:>10} {:>8} {:>10}", "kappa", "n_r", "br", "E", "q_eff", "l*", "admissible");
    for kappa in [-2, -1, 1, 2] {
        let ch = channel_from_kappa(kappa, &c)?;
        for n_r in 0..3 {
            let (p, m) = energy_branches(n_r, &ch, &c)?;
            for l in [p, m] {
                println!(
                    "{:>5} {:>4} {:>3} {:>14.10} {:>10.6} {:>8.4} {:>10}",
                    l.kappa,
                    l.n_r,
                    l.branch.symbol(),
                    l.energy,
                    l.q_eff,
                    l.l_star,
                    l.admissible
                );
            }
        }
    }
    Ok(())
}
