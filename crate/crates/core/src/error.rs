use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("vector coupling e² must be non-negative, got {0}")]
    NegativeCoupling(f64),

    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("kappa must be a nonzero integer")]
    ZeroKappa,

    #[error(
        "supercritical channel kappa={kappa}: kappa² + beta_s² - alpha² = {discriminant} <= 0 \
         (critical alpha = {critical_alpha})"
    )]
    Supercritical {
        kappa: i32,
        alpha: f64,
        beta_s: f64,
        discriminant: f64,
        critical_alpha: f64,
    },

    #[error("|m_j| = {twice_mj}/2 exceeds j = {twice_j}/2")]
    MjOutOfRange { twice_mj: i32, twice_j: i32 },

    #[error("m_j must be a half-odd integer, got twice_mj = {0}")]
    MjNotHalfOdd(i32),

    #[error("ln_gamma requires x > 0, got {0}")]
    GammaDomain(f64),

    #[error("Laguerre order must exceed -1, got {0}")]
    LaguerreOrder(f64),

    #[error("grid must be strictly increasing (violated at index {0})")]
    NonMonotoneGrid(usize),

    #[error("grid and samples differ in length ({grid} vs {samples})")]
    LengthMismatch { grid: usize, samples: usize },

    #[error("grid needs at least {needed} points, got {got}")]
    GridTooSmall { needed: usize, got: usize },

    #[error("no real energy roots: discriminant {0} < 0")]
    NoRealRoots(f64),

    #[error("spectrum line is not an admissible bound state (E = {energy}, q_eff = {q_eff})")]
    Inadmissible { energy: f64, q_eff: f64 },

    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),

    #[error("energy {0} lies outside the bound-state gap (-1, 1)")]
    EnergyOutsideGap(f64),

    #[error("energy window ({lo}, {hi}) must be an ordered subinterval of (-1, 1)")]
    InvalidWindow { lo: f64, hi: f64 },

    #[error("integration produced a non-finite value at r = {0}")]
    IntegrationOverflow(f64),

    #[error("eigenvalue refinement did not converge near E = {0}")]
    NoConvergence(f64),

    #[error("matrix dimension mismatch: {left_rows}x{left_cols} times {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("test function is not smooth and compactly supported: {0}")]
    NonSmoothTestFunction(String),

    #[error("operator has complex eigenvalues ({re} ± {im}i)")]
    ComplexEigenvalues { re: f64, im: f64 },

    #[error("parameter grid is empty")]
    EmptyGrid,

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn ensure_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { name, value })
    }
}
