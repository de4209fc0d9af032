//! Claims report on a small grid.

use dirac_kepler::claims::{full_report, ClaimConfig, ClaimGrid};

fn main() -> dirac_kepler::Result<()> {
    let config = ClaimConfig {
        grid: ClaimGrid {
            alphas: vec![0.2],
            betas: vec![-0.5, 0.1, 0.2],
            kappas: vec![-1, 1],
            nr_max: 1,
        },
        reproduce_flaw: true,
        ..Default::default()
    };
    let report = full_report(&config)?;
    print!("{}", report.to_text());
    Ok(())
}
