use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix has nonzero trace {0}; not an element of sl(3,R)")]
    NonZeroTrace(String),
    #[error("basis index {0} out of range 1..=8")]
    BasisIndex(usize),
    #[error("ad_action is only defined for isotropy generators e7 and e8, got e{0}")]
    NotIsotropy(usize),
    #[error("degenerate plane: Gram determinant vanishes")]
    DegeneratePlane,
    #[error("degenerate span: the induced metric is singular, use the canonical-embedding criterion")]
    DegenerateSpan,
    #[error("vector is not in the span of the given basis")]
    NotInSpan,
    #[error("linear system is singular")]
    Singular,
    #[error("unknown surface family {0:?}")]
    UnknownFamily(String),
    #[error("no curvature sign convention reproduces the closed formula ({0})")]
    SignConvention(String),
    #[error("invalid case parameters: {0}")]
    InvalidCase(String),
    #[error("{0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
