//! From physical inputs to the dimensionless couplings.

use dirac_kepler::params::{HBAR_SI, C_SI};
use dirac_kepler::{derive_couplings, PhysicalInputs, UnitSystem};

fn main() -> dirac_kepler::Result<()> {
    let natural = derive_couplings(&PhysicalInputs::natural(0.2, -0.5)?)?;
    println!("natural units: alpha = {}, beta_s = {}", natural.alpha, natural.beta_s);

    // Electron with e² chosen to give the fine-structure constant and a
    // mass slope of one reduced Compton wavelength.
    let m = 9.109_383_7015e-31;
    let e2 = HBAR_SI * C_SI / 137.035_999_084;
    let a = HBAR_SI / (m * C_SI);
    let si = derive_couplings(&PhysicalInputs::new(m, e2, a, UnitSystem::SiLike)?)?;
    println!("SI electron: alpha = {:.9}, beta_s = {:.9}", si.alpha, si.beta_s);
    println!("mc² = {:.6e} J", m * C_SI * C_SI);
    Ok(())
}
