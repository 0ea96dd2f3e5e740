use thiserror::Error;

/// Errors raised by the algebraic kernels and the scenario runner.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{name}`{}", fmt_pos(*.pos))]
    UnknownVariable { name: String, pos: Option<usize> },

    #[error("division by zero{}", fmt_pos(*.pos))]
    DivisionByZero { pos: Option<usize> },

    #[error("denominator vanishes at {point}")]
    Pole { point: String },

    #[error("variable sets differ: {left} vs {right}")]
    VariableMismatch { left: String, right: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("series is not invertible: order-0 coefficient is zero")]
    NotInvertible,

    #[error("series is not divisible by h: order-0 coefficient is {0}")]
    NotDivisible(String),

    #[error("expression is not a polynomial: {0}")]
    NotPolynomial(String),

    #[error("elements belong to different presentations")]
    PresentationMismatch,

    #[error("PBW normalization did not terminate: {0}")]
    NonTerminating(String),

    #[error("Lie algebra fails the Jacobi identity: {0}")]
    JacobiFailure(String),

    #[error("length mismatch: word has {word} letters but {inputs} inputs were given")]
    LengthMismatch { word: usize, inputs: usize },

    #[error("insufficient order: dividing by h^{needed} but only {available} orders are known")]
    InsufficientOrder { needed: usize, available: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("missing section `{0}`")]
    MissingSection(String),

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("in section `{section}`: {source}")]
    InSection {
        section: String,
        #[source]
        source: Box<Error>,
    },

    #[error("malformed scenario: {0}")]
    Scenario(String),

    #[error("i/o error: {0}")]
    Io(String),
}

fn fmt_pos(pos: Option<usize>) -> String {
    match pos {
        Some(p) => format!(" at {p}"),
        None => String::new(),
    }
}

impl Error {
    /// Attach the name of the scenario section an error came from.
    pub fn in_section(self, section: impl Into<String>) -> Error {
        Error::InSection {
            section: section.into(),
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
