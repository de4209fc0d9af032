//! Physical inputs, dimensionless couplings and κ channels.
//!
//! The effective mass `m* = m(1 + a/r)` and the vector potential `U = -e²/r`
//! enter the radial problem only through two pure numbers:
//!
//! ```text
//! alpha  = e² / (ħ c)      vector Coulomb strength
//! beta_s = m c a / ħ       scalar Coulomb strength (mass slope)
//! ```
//!
//! A channel is labelled by the Dirac quantum number κ:
//! `κ = -(l+1)` for `j = l + 1/2` and `κ = l` for `j = l - 1/2`.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};

/// Reduced Planck constant in J·s (CODATA 2018, exact since the SI redefinition).
pub const HBAR_SI: f64 = 1.054_571_817e-34;
/// Speed of light in m/s.
pub const C_SI: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitSystem {
    /// `ħ = c = 1`; the mass is kept as given.
    Natural,
    /// SI: mass in kg, `e²` in J·m, `a` in m.
    SiLike,
}

impl UnitSystem {
    pub fn hbar(self) -> f64 {
        match self {
            UnitSystem::Natural => 1.0,
            UnitSystem::SiLike => HBAR_SI,
        }
    }

    pub fn c(self) -> f64 {
        match self {
            UnitSystem::Natural => 1.0,
            UnitSystem::SiLike => C_SI,
        }
    }
}

/// Dimensionful description of the problem, only used at the boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalInputs {
    mass: f64,
    e2: f64,
    a: f64,
    units: UnitSystem,
}

impl PhysicalInputs {
    pub fn new(mass: f64, e2: f64, a: f64, units: UnitSystem) -> Result<Self> {
        ensure_finite("mass", mass)?;
        ensure_finite("e2", e2)?;
        ensure_finite("a", a)?;
        if mass <= 0.0 {
            return Err(Error::NonPositive {
                name: "mass",
                value: mass,
            });
        }
        if e2 < 0.0 {
            return Err(Error::NegativeCoupling(e2));
        }
        Ok(Self { mass, e2, a, units })
    }

    /// Natural units with `m = 1`: then `alpha = e²` and `beta_s = a`.
    pub fn natural(e2: f64, a: f64) -> Result<Self> {
        Self::new(1.0, e2, a, UnitSystem::Natural)
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn e2(&self) -> f64 {
        self.e2
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn units(&self) -> UnitSystem {
        self.units
    }
}

/// The two dimensionless couplings plus the scales needed to convert back.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingParams {
    pub alpha: f64,
    pub beta_s: f64,
    /// `mc²` in the unit system the couplings were derived from.
    pub rest_energy: f64,
    /// `ħ/(mc)` in the unit system the couplings were derived from.
    pub compton_length: f64,
}

impl CouplingParams {
    pub fn new(alpha: f64, beta_s: f64) -> Result<Self> {
        ensure_finite("alpha", alpha)?;
        ensure_finite("beta_s", beta_s)?;
        if alpha < 0.0 {
            return Err(Error::NegativeCoupling(alpha));
        }
        Ok(Self {
            alpha,
            beta_s,
            rest_energy: 1.0,
            compton_length: 1.0,
        })
    }

    /// Vector and scalar strengths coincide in magnitude, `e² = mc²|a|`.
    pub fn is_balanced(&self) -> bool {
        self.alpha == self.beta_s.abs()
    }

    /// `κ² + beta_s² - alpha²`, the square of the small-r exponent.
    pub fn gamma_squared(&self, kappa: i32) -> f64 {
        let k = kappa as f64;
        // Factored so that |beta_s| = alpha gives exactly κ².
        k * k + (self.beta_s - self.alpha) * (self.beta_s + self.alpha)
    }

    pub fn gamma(&self, kappa: i32) -> Result<f64> {
        if kappa == 0 {
            return Err(Error::ZeroKappa);
        }
        let g2 = self.gamma_squared(kappa);
        if g2 <= 0.0 {
            let k = kappa as f64;
            return Err(Error::Supercritical {
                kappa,
                alpha: self.alpha,
                beta_s: self.beta_s,
                discriminant: g2,
                critical_alpha: (k * k + self.beta_s * self.beta_s).sqrt(),
            });
        }
        Ok(g2.sqrt())
    }
}

pub fn derive_couplings(inputs: &PhysicalInputs) -> Result<CouplingParams> {
    // Re-validate: the fields are private but the struct is Deserialize.
    let inputs = PhysicalInputs::new(inputs.mass, inputs.e2, inputs.a, inputs.units)?;
    let hbar = inputs.units.hbar();
    let c = inputs.units.c();
    let alpha = inputs.e2 / (hbar * c);
    let beta_s = inputs.mass * c * inputs.a / hbar;
    let mut params = CouplingParams::new(alpha, beta_s)?;
    params.rest_energy = inputs.mass * c * c;
    params.compton_length = hbar / (inputs.mass * c);
    Ok(params)
}

/// A half-odd integer stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfInt(pub i32);

impl HalfInt {
    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl std::fmt::Display for HalfInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/2", self.0)
    }
}

/// Which sign of `∓1/2` applies in the effective angular momentum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignConvention {
    /// `j = l + 1/2`, κ < 0.
    Upper,
    /// `j = l - 1/2`, κ > 0.
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Channel {
    pub kappa: i32,
    pub j: HalfInt,
    pub l: u32,
    pub sign: SignConvention,
    pub gamma: f64,
    pub l_star: f64,
}

impl Channel {
    /// Orbital angular momentum of the lower spinor component, i.e. `l(-κ)`.
    pub fn l_lower(&self) -> u32 {
        orbital_l(-self.kappa)
    }
}

/// `l` belonging to κ: `-κ-1` for κ < 0, `κ` for κ > 0.
pub fn orbital_l(kappa: i32) -> u32 {
    if kappa < 0 {
        (-kappa - 1) as u32
    } else {
        kappa as u32
    }
}

/// Inverse of the κ labelling: `(l, j = l ± 1/2)` back to κ.
pub fn kappa_from_lj(l: u32, sign: SignConvention) -> Result<i32> {
    match sign {
        SignConvention::Upper => Ok(-(l as i32) - 1),
        SignConvention::Lower if l == 0 => Err(Error::ZeroKappa),
        SignConvention::Lower => Ok(l as i32),
    }
}

pub fn channel_from_kappa(kappa: i32, c: &CouplingParams) -> Result<Channel> {
    let gamma = c.gamma(kappa)?;
    let (sign, l_star) = if kappa < 0 {
        (SignConvention::Upper, gamma - 1.0)
    } else {
        (SignConvention::Lower, gamma)
    };
    Ok(Channel {
        kappa,
        j: HalfInt(2 * kappa.abs() - 1),
        l: orbital_l(kappa),
        sign,
        gamma,
        l_star,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn flagship() -> CouplingParams {
        CouplingParams::new(0.2, -0.5).unwrap()
    }

    #[test]
    fn natural_units_are_identity() {
        let c = derive_couplings(&PhysicalInputs::natural(0.2, -0.5).unwrap()).unwrap();
        assert_eq!(c.alpha, 0.2);
        assert_eq!(c.beta_s, -0.5);
        let free = derive_couplings(&PhysicalInputs::natural(0.0, 0.0).unwrap()).unwrap();
        assert_eq!((free.alpha, free.beta_s), (0.0, 0.0));
    }

    #[test]
    fn hydrogen_fine_structure_constant() {
        // e²/(4πε0) from the elementary charge and vacuum permittivity.
        let e = 1.602_176_634e-19;
        let eps0 = 8.854_187_8128e-12;
        let e2 = e * e / (4.0 * std::f64::consts::PI * eps0);
        let me = 9.109_383_7015e-31;
        let inputs = PhysicalInputs::new(me, e2, 0.0, UnitSystem::SiLike).unwrap();
        let c = derive_couplings(&inputs).unwrap();
        assert_relative_eq!(c.alpha, 1.0 / 137.035_999_084, max_relative = 1e-9);
        assert_relative_eq!(c.rest_energy, me * C_SI * C_SI, max_relative = 1e-15);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(
            PhysicalInputs::natural(-0.1, 0.0),
            Err(Error::NegativeCoupling(-0.1))
        );
        assert!(matches!(
            PhysicalInputs::natural(f64::NAN, 0.0),
            Err(Error::NonFinite { name: "e2", .. })
        ));
        assert!(matches!(
            PhysicalInputs::new(0.0, 0.1, 0.0, UnitSystem::Natural),
            Err(Error::NonPositive { .. })
        ));
        assert!(PhysicalInputs::natural(0.1, f64::INFINITY).is_err());
    }

    #[test]
    fn flagship_channels() {
        let c = flagship();
        let up = channel_from_kappa(-1, &c).unwrap();
        assert_relative_eq!(up.gamma, 1.1, epsilon = 1e-15);
        assert_relative_eq!(up.l_star, 0.1, epsilon = 1e-15);
        assert_eq!(up.sign, SignConvention::Upper);
        assert_eq!((up.l, up.j), (0, HalfInt(1)));

        let low = channel_from_kappa(1, &c).unwrap();
        assert_relative_eq!(low.gamma, 1.1, epsilon = 1e-15);
        assert_relative_eq!(low.l_star, 1.1, epsilon = 1e-15);
        assert_eq!(low.sign, SignConvention::Lower);
        assert_eq!((low.l, low.j, low.l_lower()), (1, HalfInt(1), 0));
    }

    #[test]
    fn balanced_coupling_gives_integer_l_star() {
        let c = CouplingParams::new(0.5, 0.5).unwrap();
        let ch = channel_from_kappa(-1, &c).unwrap();
        assert_eq!(ch.gamma, 1.0);
        assert_eq!(ch.l_star, 0.0);
        assert!(c.is_balanced());
    }

    #[test]
    fn supercritical_is_an_error() {
        let c = CouplingParams::new(2.0, 0.0).unwrap();
        match channel_from_kappa(-1, &c) {
            Err(Error::Supercritical { critical_alpha, .. }) => assert_eq!(critical_alpha, 1.0),
            other => panic!("expected supercritical error, got {other:?}"),
        }
        // Exactly critical also fails: γ = 0 is not a valid exponent.
        let c = CouplingParams::new(1.0, 0.0).unwrap();
        assert!(channel_from_kappa(1, &c).is_err());
        assert_eq!(channel_from_kappa(0, &flagship()), Err(Error::ZeroKappa));
    }

    #[test]
    fn kappa_lj_bijection() {
        for kappa in (-6..=6).filter(|&k| k != 0) {
            let ch = channel_from_kappa(kappa, &flagship()).unwrap();
            assert_eq!(kappa_from_lj(ch.l, ch.sign).unwrap(), kappa);
            assert_eq!(ch.j.0 + 1, 2 * kappa.abs());
            let j = ch.j.value();
            match ch.sign {
                SignConvention::Upper => assert_eq!(j, ch.l as f64 + 0.5),
                SignConvention::Lower => assert_eq!(j, ch.l as f64 - 0.5),
            }
        }
        assert_eq!(kappa_from_lj(0, SignConvention::Lower), Err(Error::ZeroKappa));
    }

    proptest! {
        #[test]
        fn l_star_pairs_differ_by_one(alpha in 0.0f64..0.9, beta in -2.0f64..2.0, k in 1i32..6) {
            let c = CouplingParams::new(alpha, beta).unwrap();
            let up = channel_from_kappa(-k, &c).unwrap();
            let low = channel_from_kappa(k, &c).unwrap();
            prop_assert!((up.l_star + 1.0 - low.l_star).abs() < 1e-14);
            prop_assert!((low.l_star - low.gamma).abs() == 0.0);
            prop_assert!((up.gamma.powi(2) - c.gamma_squared(-k)).abs() < 1e-12);
        }

        #[test]
        fn balanced_couplings_are_integer(alpha in 0.0f64..3.0, k in 1i32..6, neg in any::<bool>()) {
            let beta = if neg { -alpha } else { alpha };
            let c = CouplingParams::new(alpha, beta).unwrap();
            let up = channel_from_kappa(-k, &c).unwrap();
            prop_assert_eq!(up.gamma, k as f64);
            prop_assert_eq!(up.l_star, (k - 1) as f64);
        }

        #[test]
        fn rescaling_preserves_couplings(
            e2 in 0.0f64..1.0, a in -1.0f64..1.0, s in 0.1f64..10.0, t in 0.1f64..10.0
        ) {
            // ħ is fixed at 1 in natural units, so rescale lengths by s and
            // the mass by 1/s; e² is untouched. Then alpha and beta_s are fixed.
            let base = derive_couplings(&PhysicalInputs::new(t, e2, a, UnitSystem::Natural).unwrap()).unwrap();
            let scaled = derive_couplings(&PhysicalInputs::new(t / s, e2, a * s, UnitSystem::Natural).unwrap()).unwrap();
            prop_assert!((base.alpha - scaled.alpha).abs() <= 1e-15 * base.alpha.abs().max(1.0));
            prop_assert!((base.beta_s - scaled.beta_s).abs() <= 4.0 * f64::EPSILON * base.beta_s.abs().max(1e-300));
        }
    }
}
