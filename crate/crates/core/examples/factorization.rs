//! Finite-difference check of the second-order factorization.

use dirac_kepler::radial::{verify_factorization, verify_factorization_with, FactorizationOptions, RadialGrid, SigmaVariant, TestFunction};
use dirac_kepler::CouplingParams;

fn main() -> dirac_kepler::Result<()> {
    let c = CouplingParams::new(0.2, -0.5)?;
    let grid = RadialGrid::uniform(0.5, 6.5, 601)?;
    for kappa in [-2, -1, 1, 2] {
        let rep = verify_factorization(kappa, &c, &grid, 7)?;
        println!(
            "kappa={kappa:+}: residual {:.3e} -> {:.3e}, order {:.3}",
            rep.residual, rep.residual_half, rep.order
        );
    }
    let test = TestFunction::random(7, grid.r_min(), grid.r_max());
    let opts = FactorizationOptions {
        variant: SigmaVariant::Uncorrected2x2,
        ..Default::default()
    };
    match verify_factorization_with(-1, &c, &grid, &test, &opts) {
        Err(e) => println!("2x2 sigma variant: {e}"),
        Ok(rep) => println!("2x2 sigma variant unexpectedly ran: {rep:?}"),
    }
    Ok(())
}
