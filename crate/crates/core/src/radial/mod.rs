//! Numeric ground truth for the radial problem.
//!
//! The four-spinor is written as `ψ = (G(r)/r Ω_κm, i F(r)/r Ω_-κm)`, which
//! turns the Dirac equation with `m* = 1 + beta_s/r` and `U = -alpha/r` into
//!
//! ```text
//! G' = -(κ/r) G + (E + m* - U) F
//! F' =  (κ/r) F - (E - m* - U) G
//! ```
//!
//! [`solver`] finds bound states of this system by two-sided shooting;
//! [`factorization`] checks the second-order operator identity obtained by
//! substituting `ψ = (α·p + m*β + E - U) ψ̄`.

mod grid;
pub mod factorization;
pub mod solver;

pub use factorization::{
    verify_factorization, verify_factorization_with, Bump, FactorizationOptions, FactorizationReport,
    SigmaVariant, TestFunction,
};
pub use grid::{RadialGrid, Spacing};
pub use solver::{
    dirac_rhs, find_eigenvalues, shoot_and_match, DiracRadialSolution, MatchResult, SolverOptions,
};
