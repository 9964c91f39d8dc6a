use thiserror::Error;

/// Errors raised by the kernel and the Rees-algebra constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable {name:?} at byte {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("unsupported operator {op:?} at byte {pos}")]
    UnsupportedOperator { pos: usize, op: String },
    #[error("denominator vanishes in the coefficient field at byte {pos}")]
    DenominatorVanishes { pos: usize },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("resource limit exceeded: {reason} ({basis_len} basis elements, {pairs_left} pairs pending, degree {degree})")]
    ResourceLimit {
        reason: String,
        basis_len: usize,
        pairs_left: usize,
        degree: u32,
    },
    #[error("generator {index} is not bihomogeneous")]
    NonHomogeneousInput { index: usize },
    #[error("{what} out of range: {value} (allowed {lo}..={hi})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        lo: usize,
        hi: usize,
    },
    #[error("colon or saturation by the zero ideal")]
    ZeroIdeal,
    #[error("entry ({row}, {col}) is not a linear form in the x-variables")]
    NonLinearEntry { row: usize, col: usize },
    #[error("presentation matrix does not have full column rank")]
    DegenerateColumnRank,
    #[error("the ideal of entries is not the maximal ideal (x1..xd)")]
    I1NotMaximal,
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("transition identity fails at position {pos}: {detail}")]
    TransitionIdentityFailure { pos: usize, detail: String },
    #[error("presentation is not in column or row normal form modulo (x1..x{s}): {kind}")]
    ShapeNotNormalForm { s: usize, kind: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
