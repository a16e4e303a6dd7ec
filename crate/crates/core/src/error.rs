use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("argument must be nonnegative, got {0}")]
    NegativeArgument(String),

    #[error("unsupported extension: {0}")]
    UnsupportedExtension(String),

    #[error("level {level} is not psi(nu) for any integer nu (phi({level}) = {phi})")]
    NotInPsiImage { level: u64, phi: String },

    #[error("residue data mismatch: {0}")]
    MismatchedResidueData(String),

    #[error("window {window} too small for the finiteness certificate; try --window {suggested}")]
    WindowTooSmall { window: u32, suggested: u32 },

    #[error("NotUnramified: L/F must be unramified (e = {e})")]
    NotUnramified { e: u64 },

    #[error("EvenDegree: L/F must have odd degree (f = {f})")]
    EvenDegree { f: u64 },

    #[error("OutOfScope: {0}")]
    OutOfScope(String),

    #[error("need at least {required} samples, got {given}")]
    InsufficientSamples { required: u64, given: u64 },

    #[error("truncation has {count} circles, above the limit of {limit}")]
    TruncationTooLarge { count: u128, limit: u128 },

    #[error("zero coordinate: torus points have nonzero coordinates")]
    ZeroCoordinate,

    #[error("integer overflow computing {0}")]
    Overflow(&'static str),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
