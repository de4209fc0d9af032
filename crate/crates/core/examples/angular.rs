//! Spinor harmonics, the spin-orbit operator and the Λ block.

use dirac_kepler::angular::{
    k_operator_eigencheck, lambda_block, lambda_quadratic_eigs, spinor_spherical_harmonic,
};
use dirac_kepler::params::HalfInt;
use dirac_kepler::CouplingParams;

fn main() -> dirac_kepler::Result<()> {
    let s = spinor_spherical_harmonic(-2, HalfInt(1), 0.7, 0.3)?;
    println!("Omega(-2, 1/2) at (0.7, 0.3): upper {:.6}, lower {:.6}", s.upper, s.lower);
    for kappa in [-2, -1, 1, 2] {
        let k = k_operator_eigencheck(kappa, HalfInt(1))?;
        println!("K on kappa={kappa:+}: eigenvalue {:+.3}, residual {:.1e}", k.eigenvalue, k.residual);
    }
    let c = CouplingParams::new(0.2, -0.5)?;
    let block = lambda_block(-1, &c)?;
    println!("Lambda block on kappa=-1 pair:\n{:.4}", block.matrix);
    let (a, b) = block.eigenvalues()?;
    let (qa, qb) = lambda_quadratic_eigs(&block)?;
    let g = c.gamma(-1)?;
    println!("eigenvalues {a:+.6} {b:+.6}, gamma = {g:.6}");
    println!("Lambda(Lambda+1): {qa:.6} {qb:.6}; gamma(gamma-1) = {:.6}, gamma(gamma+1) = {:.6}", g * (g - 1.0), g * (g + 1.0));
    Ok(())
}
