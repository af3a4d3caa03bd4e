use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("variable `{name}` at position {pos} is outside the {nvars}-variable ring")]
    VariableCount { pos: usize, name: String, nvars: usize },
    #[error("unsupported number of variables: {0} (expected 2 or 3)")]
    UnsupportedDimension(usize),
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial has a nonzero constant term")]
    ConstantTerm,
    #[error("both polynomials are constant in the eliminated variable")]
    BothConstant,
    #[error("polynomial is not convenient (misses the axis of z{0})")]
    NonConvenient(usize),
    #[error("face mismatch: {0}")]
    FaceMismatch(String),
    #[error("not an edge: {0}")]
    NotAnEdge(String),
    #[error("invalid cone: {0}")]
    InvalidCone(String),
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(Vec<i64>),
    #[error("polynomial is not weighted homogeneous")]
    NotWeightedHomogeneous,
    #[error("Newton degenerate input: {0}")]
    Degenerate(String),
    #[error("invalid weight/degree pair: {0}")]
    InvalidWeights(String),
    #[error("deformation could not be verified after {attempts} attempts: {detail}")]
    DeformationFailed { attempts: u32, detail: String },
    #[error("pullback is not divisible by the exceptional monomial: {0}")]
    Divisibility(String),
    #[error("wrong chart shape: {0}")]
    ChartShape(String),
    #[error("singular point is not isolated")]
    NotIsolated,
    #[error("weight {0:?} has d = 0 and gives no exceptional divisor")]
    NotExceptional(Vec<i64>),
    #[error("arithmetic invariant violated: {0}")]
    Arithmetic(String),
}

pub type Result<T> = std::result::Result<T, Error>;
