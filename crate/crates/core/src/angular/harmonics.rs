//! Scalar and spinor spherical harmonics (Condon–Shortley phase) and the
//! spin-orbit operator in the `|l m_l>|m_s>` basis.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{orbital_l, HalfInt};

/// Associated Legendre function `P_l^m(x)` for `0 <= m <= l`, including the
/// `(-1)^m` phase.
pub fn assoc_legendre(l: u32, m: u32, x: f64) -> f64 {
    if m > l {
        return 0.0;
    }
    let s = ((1.0 - x) * (1.0 + x)).max(0.0).sqrt();
    let mut pmm = 1.0;
    let mut odd = 1.0;
    for _ in 0..m {
        pmm *= -odd * s;
        odd += 2.0;
    }
    if l == m {
        return pmm;
    }
    let mut pm1 = x * (2 * m + 1) as f64 * pmm;
    if l == m + 1 {
        return pm1;
    }
    let mut pm2 = pmm;
    for ll in m + 2..=l {
        let p = ((2 * ll - 1) as f64 * x * pm1 - (ll + m - 1) as f64 * pm2) / (ll - m) as f64;
        pm2 = pm1;
        pm1 = p;
    }
    pm1
}

/// `Y_l^m(θ, φ)`; zero when `|m| > l`.
pub fn spherical_harmonic(l: u32, m: i32, theta: f64, phi: f64) -> Complex64 {
    let am = m.unsigned_abs();
    if am > l {
        return Complex64::new(0.0, 0.0);
    }
    // (l - |m|)! / (l + |m|)! as a running product.
    let ratio: f64 = (l - am + 1..=l + am).map(|k| 1.0 / k as f64).product();
    let norm = ((2 * l + 1) as f64 / (4.0 * PI) * ratio).sqrt();
    let y = norm * assoc_legendre(l, am, theta.cos()) * Complex64::from_polar(1.0, am as f64 * phi);
    if m >= 0 {
        y
    } else if am % 2 == 0 {
        y.conj()
    } else {
        -y.conj()
    }
}

/// Value of a two-component spinor field at one direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoSpinorSample {
    pub theta: f64,
    pub phi: f64,
    pub upper: Complex64,
    pub lower: Complex64,
}

impl TwoSpinorSample {
    pub fn components(&self) -> [Complex64; 2] {
        [self.upper, self.lower]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.upper.norm_sqr() + self.lower.norm_sqr()
    }
}

pub(crate) fn check_mj(kappa: i32, m_j: HalfInt) -> Result<()> {
    if kappa == 0 {
        return Err(Error::ZeroKappa);
    }
    if m_j.0 % 2 == 0 {
        return Err(Error::MjNotHalfOdd(m_j.0));
    }
    let twice_j = 2 * kappa.abs() - 1;
    if m_j.0.abs() > twice_j {
        return Err(Error::MjOutOfRange {
            twice_mj: m_j.0,
            twice_j,
        });
    }
    Ok(())
}

/// Clebsch–Gordan weights of `Ω_{κ m}` on `Y_l^{m-1/2} ↑` and `Y_l^{m+1/2} ↓`.
pub(crate) fn cg_weights(kappa: i32, m_j: HalfInt) -> (u32, [f64; 2]) {
    let l = orbital_l(kappa);
    let m = m_j.value();
    let lh = l as f64 + 0.5;
    let d = (2 * l + 1) as f64;
    let plus = ((lh + m) / d).max(0.0).sqrt();
    let minus = ((lh - m) / d).max(0.0).sqrt();
    let w = if kappa < 0 { [plus, minus] } else { [-minus, plus] };
    (l, w)
}

/// Spinor spherical harmonic `Ω_{κ m_j}(θ, φ)`.
pub fn spinor_spherical_harmonic(kappa: i32, m_j: HalfInt, theta: f64, phi: f64) -> Result<TwoSpinorSample> {
    check_mj(kappa, m_j)?;
    let (l, [wu, wd]) = cg_weights(kappa, m_j);
    let m_up = (m_j.0 - 1) / 2;
    let m_dn = (m_j.0 + 1) / 2;
    Ok(TwoSpinorSample {
        theta,
        phi,
        upper: wu * spherical_harmonic(l, m_up, theta, phi),
        lower: wd * spherical_harmonic(l, m_dn, theta, phi),
    })
}

/// `σ·L` on the two-dimensional space `{|l, m-1/2>↑, |l, m+1/2>↓}`.
///
/// From `σ·L = σ_z L_z + (σ_+ L_- + σ_- L_+)`, with the ladder elements
/// `<l, m+1/2| L_+ |l, m-1/2> = sqrt((l+1/2)² - m²)`.
pub(crate) fn spin_orbit_matrix(l: u32, m_j: HalfInt) -> [[f64; 2]; 2] {
    let m = m_j.value();
    let lh = l as f64 + 0.5;
    let ladder = (lh * lh - m * m).max(0.0).sqrt();
    [[m - 0.5, ladder], [ladder, -(m + 0.5)]]
}

/// `(σ·L + 1) Ω_{κ m}` computed by ladder algebra: returns the Rayleigh
/// quotient and the norm of the component orthogonal to `Ω`.
pub fn spin_orbit_action(kappa: i32, m_j: HalfInt) -> Result<(f64, f64)> {
    check_mj(kappa, m_j)?;
    let (l, w) = cg_weights(kappa, m_j);
    let s = spin_orbit_matrix(l, m_j);
    let out = [
        s[0][0] * w[0] + s[0][1] * w[1] + w[0],
        s[1][0] * w[0] + s[1][1] * w[1] + w[1],
    ];
    let norm2 = w[0] * w[0] + w[1] * w[1];
    let eig = (out[0] * w[0] + out[1] * w[1]) / norm2;
    let residual = ((out[0] - eig * w[0]).powi(2) + (out[1] - eig * w[1]).powi(2)).sqrt();
    Ok((eig, residual))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gauss_legendre;
    use approx::assert_relative_eq;

    fn y_table(l: u32, m: i32, theta: f64, phi: f64) -> Complex64 {
        let (c, s) = (theta.cos(), theta.sin());
        let e = |k: f64| Complex64::from_polar(1.0, k * phi);
        match (l, m) {
            (0, 0) => Complex64::new((1.0 / (4.0 * PI)).sqrt(), 0.0),
            (1, 0) => Complex64::new((3.0 / (4.0 * PI)).sqrt() * c, 0.0),
            (1, 1) => -(3.0 / (8.0 * PI)).sqrt() * s * e(1.0),
            (1, -1) => (3.0 / (8.0 * PI)).sqrt() * s * e(-1.0),
            (2, 0) => Complex64::new((5.0 / (16.0 * PI)).sqrt() * (3.0 * c * c - 1.0), 0.0),
            (2, 1) => -(15.0 / (8.0 * PI)).sqrt() * s * c * e(1.0),
            (2, 2) => (15.0 / (32.0 * PI)).sqrt() * s * s * e(2.0),
            (2, -2) => (15.0 / (32.0 * PI)).sqrt() * s * s * e(-2.0),
            _ => unreachable!(),
        }
    }

    #[test]
    fn harmonics_match_table() {
        for &(theta, phi) in &[(0.3, 1.1), (1.7, -0.4), (2.9, 4.0)] {
            for (l, m) in [(0, 0), (1, 0), (1, 1), (1, -1), (2, 0), (2, 1), (2, 2), (2, -2)] {
                let a = spherical_harmonic(l, m, theta, phi);
                let b = y_table(l, m, theta, phi);
                assert!((a - b).norm() < 1e-14, "{l} {m}");
            }
        }
        assert_eq!(spherical_harmonic(1, 2, 0.3, 0.2), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn low_channels() {
        let y00 = (4.0 * PI).sqrt().recip();
        let a = spinor_spherical_harmonic(-1, HalfInt(1), 0.8, 2.0).unwrap();
        assert_relative_eq!(a.upper.re, y00, epsilon = 1e-15);
        assert_eq!(a.lower.norm(), 0.0);
        let b = spinor_spherical_harmonic(-1, HalfInt(-1), 0.8, 2.0).unwrap();
        assert_eq!(b.upper.norm(), 0.0);
        assert_relative_eq!(b.lower.re, y00, epsilon = 1e-15);
        let c = spinor_spherical_harmonic(1, HalfInt(1), 0.0, 0.0).unwrap();
        assert_relative_eq!(c.upper.re, -y00, epsilon = 1e-15);
        assert!(c.lower.norm() < 1e-16);
    }

    #[test]
    fn m_range_is_checked() {
        assert!(matches!(
            spinor_spherical_harmonic(-1, HalfInt(3), 0.1, 0.1),
            Err(Error::MjOutOfRange { twice_mj: 3, twice_j: 1 })
        ));
        assert!(matches!(spinor_spherical_harmonic(2, HalfInt(2), 0.1, 0.1), Err(Error::MjNotHalfOdd(2))));
        assert!(spinor_spherical_harmonic(2, HalfInt(-3), 0.1, 0.1).is_ok());
    }

    #[test]
    fn orthonormal_on_the_sphere() {
        let (x, w) = gauss_legendre(12);
        let n_phi = 24;
        let states: Vec<(i32, i32)> = [-3, -2, -1, 1, 2, 3]
            .iter()
            .flat_map(|&k: &i32| {
                let tj = 2 * k.abs() - 1;
                (-tj..=tj).step_by(2).map(move |m| (k, m))
            })
            .collect();
        for &(k1, m1) in &states {
            for &(k2, m2) in &states {
                let mut acc = Complex64::new(0.0, 0.0);
                for (xi, wi) in x.iter().zip(&w) {
                    let theta = xi.acos();
                    for p in 0..n_phi {
                        let phi = 2.0 * PI * p as f64 / n_phi as f64;
                        let a = spinor_spherical_harmonic(k1, HalfInt(m1), theta, phi).unwrap();
                        let b = spinor_spherical_harmonic(k2, HalfInt(m2), theta, phi).unwrap();
                        acc += (a.upper.conj() * b.upper + a.lower.conj() * b.lower) * *wi;
                    }
                }
                acc *= 2.0 * PI / n_phi as f64;
                let expect = if (k1, m1) == (k2, m2) { 1.0 } else { 0.0 };
                assert!((acc - expect).norm() < 1e-13, "{k1} {m1} {k2} {m2}: {acc}");
            }
        }
    }

    #[test]
    fn spin_orbit_eigenvalue_is_minus_kappa() {
        for kappa in [-4, -3, -2, -1, 1, 2, 3, 4] {
            let tj = 2 * i32::abs(kappa) - 1;
            for m in (-tj..=tj).step_by(2) {
                let (eig, res) = spin_orbit_action(kappa, HalfInt(m)).unwrap();
                assert!((eig + kappa as f64).abs() < 1e-14 && res < 1e-14, "{kappa} {m}");
            }
        }
    }
}
