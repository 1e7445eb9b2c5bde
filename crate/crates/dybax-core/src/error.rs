use thiserror::Error;

/// Errors raised while building or validating finite structures.
///
/// Validation errors carry element labels rather than indices so that
/// messages stay meaningful after tables have been parsed from JSON.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("row `{0}` of the multiplication table is not a permutation")]
    RowNotPermutation(String),

    #[error("unit law fails at `{0}`")]
    UnitLawViolated(String),

    #[error("not associative at (`{0}`, `{1}`, `{2}`)")]
    NotAssociative(String, String, String),

    #[error("no unit element")]
    NoUnit,

    #[error("no inverse for `{0}`")]
    NoInverse(String),

    #[error("cap exceeded: {what} is {actual}, limit {limit}")]
    CapExceeded {
        what: String,
        actual: usize,
        limit: usize,
    },

    #[error("parameter sets do not match")]
    MismatchedH,

    #[error("type mismatch: {0}")]
    TypeMismatch(String),

    /// A document, dump, or command argument that does not make sense.
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("carrier too large: {actual} elements, cap {cap}")]
    CarrierTooLarge { actual: usize, cap: usize },

    #[error("action of `{0}` on the module carrier is not a bijection")]
    ActionNotDivisible(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("axiom violated in {layer}: {equation} at {witness}")]
    AxiomViolated {
        layer: String,
        equation: String,
        witness: String,
    },

    #[error("the inverse family requires an abelian group")]
    InverseNeedsAbelian,

    #[error("map attached to `{0}` is not a group homomorphism")]
    NotAHomomorphism(String),

    #[error("not a brace: {0}")]
    NotABrace(String),
}

pub type Result<T> = std::result::Result<T, Error>;
