use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("unsupported dimension {0}; only n = 1 and n = 2 are supported")]
    BadDim(usize),
    #[error("matrix is not expansive: eigenvalue modulus {0} <= 1")]
    NotExpansive(f64),
    #[error("annulus index is undefined at the origin")]
    OriginQuery,
    #[error("sample set is empty")]
    EmptySamples,
    #[error("scaling parameter must be positive, got {0}")]
    NonPositiveLambda(f64),
    #[error("exponent is not in class P: p_minus = {0} <= 1")]
    NotInClassP(f64),
    #[error("grid functions live on different grids")]
    GridMismatch,
    #[error("ball B_{0} contains no grid cell")]
    EmptyBall(i32),
    #[error("need at least 3 index pairs, got {0}")]
    InsufficientRange(usize),
    #[error("derived exponent leaves class P: p_minus = {0}")]
    ReciprocalMismatch(f64),
    #[error("sequence exponent must be >= 1, got {0}")]
    BadExponent(f64),
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("annulus C_{0} lies outside the grid box")]
    OutOfCoverage(i32),
    #[error("tail below k_min is not summable (decay exponent {0} <= 0)")]
    TailUnbounded(f64),
    #[error("function vanishes on every annulus in range")]
    ZeroFunction,
    #[error("parameter triples are inconsistent: {0}")]
    ParamMismatch(String),
    #[error("cutoff {cutoff} is below the one-cell quasi-norm scale {min}")]
    CutoffTooSmall { cutoff: f64, min: f64 },
    #[error("parameter grid is empty")]
    EmptyGrid,
    #[error("scale k = {0} is not resolvable on this grid")]
    UnresolvableScale(i32),
    #[error("moment correction is ill-conditioned: {0}")]
    IllConditioned(String),
    #[error("invalid atom: {0}")]
    InvalidAtom(String),
    #[error("function does not have vanishing mean (|mean| = {0})")]
    NonZeroMean(f64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
