use thiserror::Error;

/// Errors raised by the algebraic and combinatorial constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A structure failed one of its defining axioms. `witness` names the
    /// offending elements (e.g. the associativity triple that fails).
    #[error("axiom violated: {axiom} (witness: {witness})")]
    AxiomViolation { axiom: String, witness: String },

    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },

    #[error("size budget exceeded: {needed} > {budget}")]
    SizeBudgetExceeded { needed: usize, budget: usize },

    #[error("element set is not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("homomorphism is not faithful: arrows {0} and {1} have the same image")]
    Unfaithful(usize, usize),

    #[error("homomorphism is not a weak equivalence: {0}")]
    NotWeakEquivalence(String),

    #[error("degree {0} is out of the supported range")]
    DegreeOutOfRange(usize),

    #[error("no object with index {0}")]
    NoSuchObject(usize),

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn axiom(axiom: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::AxiomViolation {
            axiom: axiom.into(),
            witness: witness.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Caps that bound the worst-case cost of the enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest group order accepted by isomorphism testing and stratification.
    pub order_cap: usize,
    /// Largest number of simplices a truncated nerve may hold.
    pub simplex_budget: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            order_cap: 64,
            simplex_budget: 10_000_000,
        }
    }
}
