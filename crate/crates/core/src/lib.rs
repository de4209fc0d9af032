//! Relativistic Kepler problem for a Dirac particle whose mass depends on
//! position as `m* = m(1 + a/r)` in a vector Coulomb field `U = -e²/r`.
//!
//! The mass slope acts as a scalar Coulomb potential, so the problem is the
//! Dirac equation with mixed vector and scalar `1/r` couplings. The crate
//! computes the bound-state spectrum two independent ways and checks the
//! operator algebra that connects them:
//!
//! * [`params`]: physical inputs, the dimensionless couplings
//!   `alpha = e²/ħc`, `beta_s = mca/ħ`, and the κ channel bookkeeping.
//! * [`angular`]: explicit 4×4 Dirac matrices, spinor spherical harmonics,
//!   the spin-orbit operator `K` and the generalized operator `Λ`.
//! * [`special`]: `ln Γ`, generalized Laguerre polynomials of real order,
//!   radial quadrature.
//! * [`spectrum`]: closed-form energies from the Schrödinger-like radial
//!   equation with a non-integer effective angular momentum `l*`.
//! * [`radial`]: a shooting eigensolver for the first-order radial Dirac
//!   equations and a finite-difference check of the second-order
//!   factorization.
//! * [`claims`]: machine-checkable verdicts built from the pieces above.
//! * [`cli`]: configuration, tables and the `dirac-kepler` command.
//!
//! Everything inside the crate runs in natural units `ħ = c = m = 1`;
//! energies are in units of `mc²`.

pub mod angular;
pub mod claims;
pub mod cli;
pub mod error;
pub mod params;
pub mod radial;
pub mod special;
pub mod spectrum;

pub use error::{Error, Result};
pub use params::{derive_couplings, Channel, CouplingParams, PhysicalInputs, UnitSystem};
