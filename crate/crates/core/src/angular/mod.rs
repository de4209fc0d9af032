//! Dirac matrices, spinor harmonics and the angular operator
//!
//! ```text
//! Λ = -(Σ·L + 1) + i Σ·n (beta_s β'' + alpha β')
//! ```
//!
//! restricted to the invariant pair `{(Ω_κ, 0), (0, Ω_{-κ})}`.

mod harmonics;

use std::f64::consts::PI;

use nalgebra::{DMatrix, Matrix2, Matrix4, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use harmonics::{
    assoc_legendre, spherical_harmonic, spin_orbit_action, spinor_spherical_harmonic,
    TwoSpinorSample,
};

use crate::error::{Error, Result};
use crate::params::{CouplingParams, HalfInt};
use crate::special::gauss_legendre;

type C = Complex64;

const ZERO: C = C::new(0.0, 0.0);
const ONE: C = C::new(1.0, 0.0);
const I: C = C::new(0.0, 1.0);

/// Pauli matrix `σ_k`, `k ∈ {0, 1, 2}` for x, y, z.
pub fn pauli(k: usize) -> Matrix2<C> {
    match k {
        0 => Matrix2::new(ZERO, ONE, ONE, ZERO),
        1 => Matrix2::new(ZERO, -I, I, ZERO),
        2 => Matrix2::new(ONE, ZERO, ZERO, -ONE),
        _ => panic!("Pauli index {k} out of range"),
    }
}

/// Unit vector with polar angle `θ` and azimuth `φ`.
pub fn direction(theta: f64, phi: f64) -> [f64; 3] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [st * cp, st * sp, ct]
}

/// `σ·n` for `n = (θ, φ)`.
pub fn sigma_dot_n(theta: f64, phi: f64) -> Matrix2<C> {
    let n = direction(theta, phi);
    (0..3).fold(Matrix2::zeros(), |acc, k| acc + pauli(k) * C::from(n[k]))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourMatrix(pub Matrix4<C>);

impl FourMatrix {
    pub fn from_blocks(ul: Matrix2<C>, ur: Matrix2<C>, ll: Matrix2<C>, lr: Matrix2<C>) -> Self {
        let mut m = Matrix4::zeros();
        m.fixed_view_mut::<2, 2>(0, 0).copy_from(&ul);
        m.fixed_view_mut::<2, 2>(0, 2).copy_from(&ur);
        m.fixed_view_mut::<2, 2>(2, 0).copy_from(&ll);
        m.fixed_view_mut::<2, 2>(2, 2).copy_from(&lr);
        Self(m)
    }

    /// Block `(row, col)` with `0` = upper, `1` = lower.
    pub fn block(&self, row: usize, col: usize) -> Matrix2<C> {
        self.0.fixed_view::<2, 2>(2 * row, 2 * col).into_owned()
    }

    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    /// `diag(I, -I)`.
    pub fn beta() -> Self {
        let i = Matrix2::identity();
        Self::from_blocks(i, Matrix2::zeros(), Matrix2::zeros(), -i)
    }

    /// `[[0, I], [I, 0]]`.
    pub fn beta_prime() -> Self {
        let i = Matrix2::identity();
        Self::from_blocks(Matrix2::zeros(), i, i, Matrix2::zeros())
    }

    /// `[[0, -I], [I, 0]]`.
    pub fn beta_double_prime() -> Self {
        let i = Matrix2::identity();
        Self::from_blocks(Matrix2::zeros(), -i, i, Matrix2::zeros())
    }

    /// `Σ_k = diag(σ_k, σ_k)`.
    pub fn sigma(k: usize) -> Self {
        let s = pauli(k);
        Self::from_blocks(s, Matrix2::zeros(), Matrix2::zeros(), s)
    }

    /// `α_k = [[0, σ_k], [σ_k, 0]]`.
    pub fn alpha(k: usize) -> Self {
        let s = pauli(k);
        Self::from_blocks(Matrix2::zeros(), s, s, Matrix2::zeros())
    }

    /// `Σ·n`.
    pub fn sigma_dot(n: [f64; 3]) -> Self {
        Self((0..3).fold(Matrix4::zeros(), |acc, k| acc + Self::sigma(k).0 * C::from(n[k])))
    }

    pub fn is_block_diagonal(&self) -> bool {
        self.block(0, 1).iter().chain(self.block(1, 0).iter()).all(|z| *z == ZERO)
    }
}

impl std::ops::Mul for FourMatrix {
    type Output = FourMatrix;
    fn mul(self, rhs: FourMatrix) -> FourMatrix {
        FourMatrix(self.0 * rhs.0)
    }
}

/// `(Σ·L + 1)` coupled to `β`: `K = β(Σ·L + 1)` applied to `(Ω_κ, Ω_{-κ})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KEigencheck {
    pub eigenvalue: f64,
    /// Norm of `Kψ - eigenvalue·ψ` for the unit coefficient vector.
    pub residual: f64,
}

/// Eigenvalue of `K = β(Σ·L + 1)` on the four-spinor `(Ω_{κ m}, Ω_{-κ m})`,
/// worked out in the `|l m_l>|m_s>` basis with ladder operators. Equals `-κ`.
pub fn k_operator_eigencheck(kappa: i32, m_j: HalfInt) -> Result<KEigencheck> {
    harmonics::check_mj(kappa, m_j)?;
    let (l_up, w_up) = harmonics::cg_weights(kappa, m_j);
    let (l_dn, w_dn) = harmonics::cg_weights(-kappa, m_j);
    let s_up = harmonics::spin_orbit_matrix(l_up, m_j);
    let s_dn = harmonics::spin_orbit_matrix(l_dn, m_j);
    let mut k = Matrix4::<f64>::zeros();
    for a in 0..2 {
        for b in 0..2 {
            k[(a, b)] = s_up[a][b];
            k[(a + 2, b + 2)] = -s_dn[a][b];
        }
    }
    k += Matrix4::from_diagonal(&Vector4::new(1.0, 1.0, -1.0, -1.0));
    let psi = Vector4::new(w_up[0], w_up[1], w_dn[0], w_dn[1]).normalize();
    let kpsi = k * psi;
    let eigenvalue = psi.dot(&kpsi);
    Ok(KEigencheck {
        eigenvalue,
        residual: (kpsi - psi * eigenvalue).norm(),
    })
}

/// `i Σ·n (beta_s β'' + alpha β')` at one direction.
fn mixing_term(c: &CouplingParams, theta: f64, phi: f64) -> FourMatrix {
    let combo = FourMatrix(
        FourMatrix::beta_double_prime().0 * C::from(c.beta_s) + FourMatrix::beta_prime().0 * C::from(c.alpha),
    );
    FourMatrix((FourMatrix::sigma_dot(direction(theta, phi)) * combo).0 * I)
}

/// `Λ` on `span{(Ω_κ, 0), (0, Ω_{-κ})}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularBlock {
    pub kappa: i32,
    pub m_j: HalfInt,
    pub couplings: CouplingParams,
    pub matrix: Matrix2<C>,
    /// Largest pointwise distance of `Λ Φ_j` from the span, over the
    /// quadrature nodes.
    pub closure_residual: f64,
}

impl AngularBlock {
    pub fn is_hermitian(&self, tol: f64) -> bool {
        (self.matrix - self.matrix.adjoint()).norm() <= tol
    }

    /// Eigenvalues `(+γ, -γ)`; an error when they are complex.
    pub fn eigenvalues(&self) -> Result<(f64, f64)> {
        real_eigs(&self.matrix)
    }
}

/// Real eigenvalues of a 2×2 complex matrix in decreasing order.
fn real_eigs(m: &Matrix2<C>) -> Result<(f64, f64)> {
    let half_tr = (m[(0, 0)] + m[(1, 1)]) * 0.5;
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let disc = (half_tr * half_tr - det).sqrt();
    let (a, b) = (half_tr + disc, half_tr - disc);
    let scale = 1.0 + a.norm().max(b.norm());
    for z in [a, b] {
        if z.im.abs() > 1e-12 * scale {
            return Err(Error::ComplexEigenvalues { re: z.re, im: z.im });
        }
    }
    Ok((a.re.max(b.re), a.re.min(b.re)))
}

/// [`lambda_block_at`] with `m_j = 1/2`.
pub fn lambda_block(kappa: i32, c: &CouplingParams) -> Result<AngularBlock> {
    lambda_block_at(kappa, HalfInt(1), c)
}

/// Builds `Λ` on the invariant pair by projecting the 4×4 operator onto
/// sampled harmonics with an exact product quadrature over the sphere.
/// The `-(Σ·L + 1)` part enters through its ladder-algebra eigenvalues.
pub fn lambda_block_at(kappa: i32, m_j: HalfInt, c: &CouplingParams) -> Result<AngularBlock> {
    let (proj, closure_residual) =
        project_on_pair(kappa, m_j, ONE, |theta, phi| Ok(mixing_term(c, theta, phi).0))?;
    let (so_up, _) = spin_orbit_action(kappa, m_j)?;
    let (so_dn, _) = spin_orbit_action(-kappa, m_j)?;
    let mut matrix = proj;
    matrix[(0, 0)] -= so_up;
    matrix[(1, 1)] -= so_dn;
    Ok(AngularBlock {
        kappa,
        m_j,
        couplings: *c,
        matrix,
        closure_residual,
    })
}

/// Matrix of a direction-dependent 4×4 operator on the pair
/// `{(Ω_κ, 0), (0, phase·Ω_{-κ})}`, plus the largest pointwise distance of
/// the images from the pair. The quadrature is exact for the polynomial
/// degrees that occur up to `|κ| + 1`.
pub fn project_on_pair<F>(kappa: i32, m_j: HalfInt, lower_phase: C, op: F) -> Result<(Matrix2<C>, f64)>
where
    F: Fn(f64, f64) -> Result<Matrix4<C>>,
{
    harmonics::check_mj(kappa, m_j)?;
    let l_max = kappa.unsigned_abs() as usize + 1;
    let (x, w) = gauss_legendre(l_max + 2);
    let n_phi = 4 * l_max + 4;
    let d_phi = 2.0 * PI / n_phi as f64;

    let mut proj = Matrix2::<C>::zeros();
    let mut nodes = Vec::with_capacity(x.len() * n_phi);
    for (xi, wi) in x.iter().zip(&w) {
        let theta = xi.acos();
        for p in 0..n_phi {
            let phi = p as f64 * d_phi;
            let up = spinor_spherical_harmonic(kappa, m_j, theta, phi)?;
            let dn = spinor_spherical_harmonic(-kappa, m_j, theta, phi)?;
            let phis = [
                Vector4::new(up.upper, up.lower, ZERO, ZERO),
                Vector4::new(ZERO, ZERO, dn.upper * lower_phase, dn.lower * lower_phase),
            ];
            let m = op(theta, phi)?;
            let images = [m * phis[0], m * phis[1]];
            for i in 0..2 {
                for j in 0..2 {
                    proj[(i, j)] += phis[i].dotc(&images[j]) * (wi * d_phi);
                }
            }
            nodes.push((phis, images));
        }
    }
    let closure = nodes
        .iter()
        .flat_map(|(phis, images)| {
            (0..2).map(move |j| (images[j] - phis[0] * proj[(0, j)] - phis[1] * proj[(1, j)]).norm())
        })
        .fold(0.0, f64::max);
    Ok((proj, closure))
}

/// Eigenvalues of `Λ(Λ + 1)` in decreasing order: `γ(γ+1)` and `γ(γ-1)`,
/// i.e. `l*(l*+1)` for the lower and upper sign channels.
pub fn lambda_quadratic_eigs(block: &AngularBlock) -> Result<(f64, f64)> {
    let m = block.matrix;
    real_eigs(&(m * m + m))
}

/// How `σ` enters the barrier coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaVariant {
    /// 4×4 `Σ = diag(σ, σ)`.
    Corrected,
    /// Bare 2×2 Pauli matrices multiplying 4×4 `β'`, `β''`.
    Uncorrected2x2,
}

/// Direction at which the barrier coefficient is sampled.
pub const REFERENCE_DIRECTION: (f64, f64) = (1.0, 0.5);

/// Coefficient of `1/r²`: `i Σ·n (beta_s β'' + alpha β') + (beta_s² - alpha²)`.
pub fn barrier_matrix(
    c: &CouplingParams,
    theta: f64,
    phi: f64,
    variant: SigmaVariant,
) -> Result<FourMatrix> {
    let diag = C::from((c.beta_s - c.alpha) * (c.beta_s + c.alpha));
    match variant {
        SigmaVariant::Corrected => Ok(FourMatrix(
            mixing_term(c, theta, phi).0 + Matrix4::identity() * diag,
        )),
        SigmaVariant::Uncorrected2x2 => {
            let s = sigma_dot_n(theta, phi);
            let left = DMatrix::from_iterator(2, 2, s.iter().copied());
            let combo = FourMatrix::beta_double_prime().0 * C::from(c.beta_s)
                + FourMatrix::beta_prime().0 * C::from(c.alpha);
            let right = DMatrix::from_iterator(4, 4, combo.iter().copied());
            if left.ncols() != right.nrows() {
                return Err(Error::DimensionMismatch {
                    left_rows: left.nrows(),
                    left_cols: left.ncols(),
                    right_rows: right.nrows(),
                    right_cols: right.ncols(),
                });
            }
            unreachable!("a 2×2 matrix never conforms with a 4×4 one")
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BarrierStructure {
    pub theta: f64,
    pub phi: f64,
    /// Frobenius norms of the upper-left, upper-right, lower-left and
    /// lower-right 2×2 blocks.
    pub upper_left: f64,
    pub upper_right: f64,
    pub lower_left: f64,
    pub lower_right: f64,
    /// Whether the barrier couples upper and lower components.
    pub mixes_components: bool,
}

/// Block norms of the corrected barrier coefficient at [`REFERENCE_DIRECTION`].
pub fn barrier_block_structure(c: &CouplingParams) -> BarrierStructure {
    let (theta, phi) = REFERENCE_DIRECTION;
    let m = barrier_matrix(c, theta, phi, SigmaVariant::Corrected).expect("corrected variant");
    let upper_right = m.block(0, 1).norm();
    let lower_left = m.block(1, 0).norm();
    BarrierStructure {
        theta,
        phi,
        upper_left: m.block(0, 0).norm(),
        upper_right,
        lower_left,
        lower_right: m.block(1, 1).norm(),
        mixes_components: upper_right > 0.0 || lower_left > 0.0,
    }
}
