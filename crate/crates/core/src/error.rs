use thiserror::Error;

pub type Result<T, E = MotiveError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MotiveError {
    #[error("space mismatch: `{left}` vs `{right}`")]
    SpaceMismatch { left: String, right: String },

    #[error("⊙ product undecidable: `{left}` and `{right}` both carry nontrivial monodromy")]
    OdotUndecidable { left: String, right: String },

    #[error("· product undefined: both operands carry monodromy or bundle twists")]
    DotUndefined,

    #[error("product of `{left}` and `{right}` is not registered")]
    UnregisteredProduct { left: String, right: String },

    #[error("morphism `{morphism}` has no transport for `{item}`")]
    MissingTransport { morphism: String, item: String },

    #[error("symbol `{0}` has no declared underlying class")]
    NoUnderlyingClass(String),

    #[error("forgetful map undefined on `{0}`: half powers of L ⊙ nontrivial monodromy")]
    ForgetOutsideFragment(String),

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("duplicate {kind} `{name}`")]
    Duplicate { kind: &'static str, name: String },

    #[error("space `{space}` has {count} bundle generators; at most 64 are supported")]
    TooManyGenerators { space: String, count: usize },

    #[error("cannot parse `{text}`: {message}")]
    Parse { text: String, message: String },

    #[error("invalid declaration: {0}")]
    InvalidDeclaration(String),

    #[error("unknown square-root datum ({line_bundle}, {trivialization})")]
    UnknownDatum {
        line_bundle: String,
        trivialization: String,
    },

    #[error("resolution data failed validation: {}", .0.join("; "))]
    ValidationFailed(Vec<String>),

    #[error("missing restriction of {what} to `{target}`")]
    MissingRestriction { what: String, target: String },

    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),

    #[error("zero weight at position {0}")]
    ZeroWeight(usize),

    #[error("atlas carries no orientation")]
    OrientationMissing,

    #[error("descent failure on overlap `{overlap}` ({check}):\n  left:  {left}\n  right: {right}")]
    DescentFailure {
        overlap: String,
        check: String,
        left: String,
        right: String,
    },

    #[error("missing scissor table for `{0}`")]
    MissingScissorTable(String),
}

impl MotiveError {
    pub(crate) fn unknown(kind: &'static str, name: impl Into<String>) -> Self {
        MotiveError::Unknown {
            kind,
            name: name.into(),
        }
    }
}
