use std::fmt;

/// Which defining relation of `N ⋊ Z` a set of generator images failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `a_i^p = 1`.
    Exponent(usize),
    /// `[a_i, a_j] = 1`.
    Commutator(usize, usize),
    /// A relator column of the presentation matrix.
    Relator(usize),
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Exponent(i) => write!(f, "exponent relation of generator {i}"),
            Relation::Commutator(i, j) => write!(f, "commutator of generators {i} and {j}"),
            Relation::Relator(c) => write!(f, "relator column {c}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("field mismatch: F_{0} vs F_{1}")]
    FieldMismatch(u64, u64),
    #[error("gcd(0, 0) is undefined")]
    BothZero,
    #[error("negative exponent {0} where an ordinary polynomial is expected")]
    NegativeExponent(i64),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("m must be a positive integer, got {0}")]
    InvalidM(i64),
    #[error("R_p/fR_p is undefined for f = 0")]
    ZeroDivisor,
    #[error("polynomial has f(0) = 0; strip the x-power first")]
    NotNormalized,
    #[error("free rank {free_rank} is smaller than the requested rank {n}")]
    RankDeficient { free_rank: usize, n: usize },
    #[error("wreath elements belong to different groups")]
    SpecMismatch,
    #[error("generator images violate the {0}")]
    RelationViolated(Relation),
    #[error("image of module generator {0} has a nonzero shift")]
    NotBaseValued(usize),
    #[error("conjugation by the image of t does not act as x on the image of generator {0}")]
    ConjugationMismatch(usize),
    #[error("cocycle identity fails at (k, k') = ({0}, {1})")]
    CocycleViolation(i64, i64),
    #[error("relator column {0} is not killed by the module map")]
    RelationNotKilled(usize),
    #[error("homomorphism law fails on sampled pair {0}")]
    LawViolated(usize),
    #[error("module map is not surjective onto R_p^n")]
    NotSurjective,
    #[error("order {order} exceeds the cap {cap}")]
    OrderBoundExceeded { order: u128, cap: u128 },
    #[error("subset is not a normal subgroup")]
    NotNormal,
    #[error("table does not define a group: {0}")]
    NotAGroup(String),
    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
