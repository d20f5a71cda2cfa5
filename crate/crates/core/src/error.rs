use thiserror::Error;

/// Every failure the library reports. Variants map one-to-one onto the
/// error conditions of the individual operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("polynomial rings differ: {0:?} vs {1:?}")]
    RingMismatch(Vec<String>, Vec<String>),
    #[error("at most {max} variables are supported, got {got}")]
    TooManyVariables { max: usize, got: usize },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("expected {expected} variables, got {got}")]
    WrongVariableCount { expected: usize, got: usize },
    #[error("factorization needs at most two essential variables, got {0}")]
    UnsupportedArity(usize),
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
    #[error("factorization failed: {0}")]
    FactorizationFailed(String),
    #[error("evaluation hits a pole")]
    PoleAtPoint,
    #[error("bad prime {0}: characteristic must be odd")]
    BadPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no square class")]
    ZeroElement,
    #[error("symbol sum mixes degrees {0} and {1}")]
    MixedDegree(usize, usize),
    #[error("symbol sum mixes field contexts")]
    MixedContext,
    #[error("expected degree {expected}, got {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("operation needs a different field context: {0}")]
    WrongContext(String),
    #[error("place is not a discrete valuation of this field: {0}")]
    NotAValuation(String),
    #[error("residue field not supported: {0}")]
    ResidueFieldUnsupported(String),
    #[error("quadratic form is degenerate")]
    DegenerateForm,
    #[error("no anisotropic vector found")]
    NoAnisotropicVector,
    #[error("unsupported rank {0}")]
    UnsupportedRank(usize),
    #[error("unsupported context: {0}")]
    UnsupportedContext(String),
    #[error("norm witness invalid: {0}")]
    NormWitnessInvalid(String),
    #[error("witness invalid: {0}")]
    WitnessInvalid(String),
    #[error("equation is not a homogeneous cubic")]
    NotHomogeneousDegree3,
    #[error("the plane x0=x1=x2=0 is not contained: monomial {0} is pure in y")]
    PlaneNotContained(String),
    #[error("the discriminant vanishes identically")]
    ZeroDiscriminant,
    #[error("a00 vanishes identically, no chart")]
    ChartFailure,
    #[error("discriminant cross-check failed: {0}")]
    DiscMismatch(String),
    #[error("no usable specialization found: {0}")]
    NoGoodSpecializationFound(String),
    #[error("point not admissible: {0}")]
    BadPoint(String),
    #[error("matrix must be square and nonempty")]
    NotSquare,
    #[error("line matrix must have rank 2")]
    LineRankDeficient,
    #[error("the line is not contained in the cubic")]
    LineNotInX,
    #[error("tangent construction degenerates: {0}")]
    TangencyDegenerate(String),
    #[error("the plane spanned by P and L lies in the surface")]
    PlaneInSurface,
    #[error("degenerate conic: {0}")]
    DegenerateConic(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
