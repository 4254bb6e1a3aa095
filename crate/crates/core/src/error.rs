use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: max |M - M^H| = {deviation:.3e}")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary: max |U^H U - I| = {deviation:.3e}")]
    NotUnitary { deviation: f64 },

    #[error("density matrix {0}")]
    InvalidDensityMatrix(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("the zero vector cannot be normalized")]
    ZeroVector,

    #[error("state is not normalized (norm = {norm})")]
    NotNormalized { norm: f64 },

    #[error("invalid party dimension {0}; every party needs dimension >= 2")]
    InvalidDimension(usize),

    #[error("invalid party selection: {0}")]
    InvalidParties(String),

    #[error("expected a {expected}-party state, got {found} parties")]
    PartyCount { expected: usize, found: usize },

    #[error("party {party} has dimension {dim}, expected a qutrit")]
    NotQutrit { party: usize, dim: usize },

    #[error("spectra do not sum to the same total: {left} vs {right}")]
    SumMismatch { left: f64, right: f64 },

    #[error("unknown catalog state `{0}`")]
    UnknownState(String),

    #[error("invalid parameters for `{name}`: {reason}")]
    InvalidParams { name: String, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("state file: {0}")]
    StateFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotSquare { .. } => "not_square",
            Error::NotHermitian { .. } => "not_hermitian",
            Error::NotUnitary { .. } => "not_unitary",
            Error::InvalidDensityMatrix(_) => "invalid_density_matrix",
            Error::ShapeMismatch(_) => "shape_mismatch",
            Error::ZeroVector => "zero_vector",
            Error::NotNormalized { .. } => "not_normalized",
            Error::InvalidDimension(_) => "invalid_dimension",
            Error::InvalidParties(_) => "invalid_parties",
            Error::PartyCount { .. } => "party_count",
            Error::NotQutrit { .. } => "not_qutrit",
            Error::SumMismatch { .. } => "sum_mismatch",
            Error::UnknownState(_) => "unknown_state",
            Error::InvalidParams { .. } => "invalid_params",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::StateFile(_) => "state_file",
        }
    }
}
