use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("modulus {0} of generator {1} is smaller than 2")]
    BadModulus(u64, usize),
    #[error("structure constant c[{i}][{j}][{k}] = {value} is not reduced modulo {modulus}")]
    UnreducedConstant { i: usize, j: usize, k: usize, value: u64, modulus: u64 },
    #[error("product e_{i}*e_{j} is not killed by the additive orders of its factors (coordinate {k})")]
    InconsistentConstant { i: usize, j: usize, k: usize },
    #[error("multiplication is not associative: (e_{i}*e_{j})*e_{k} != e_{i}*(e_{j}*e_{k})")]
    NonAssociative { i: usize, j: usize, k: usize },
    #[error("elements belong to different rings")]
    RingMismatch,
    #[error("subgroup is not a two-sided ideal")]
    NotTwoSidedIdeal,
    #[error("{c} is not a positive multiple (>= 2) of the characteristic {characteristic}")]
    BadCharacteristic { c: u64, characteristic: u64 },
    #[error("search exceeded its budget of {0} nodes")]
    SearchBudgetExceeded(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("ring has no multiplicative identity")]
    NotUnital,
    #[error("ring is not simple")]
    NotSimple,
    #[error("ring is not semisimple: radical has order {radical_order}, witness {witness:?}")]
    NotSemisimple { radical_order: u128, witness: Vec<u64> },
    #[error("star product needs an even, nonzero number of factors (got {0})")]
    OddLength(usize),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("polynomial has partial degree {degree} >= {p} in x_{var}")]
    BadDegree { var: usize, degree: u32, p: u64 },
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("polynomial has a nonzero constant term")]
    ConstantTerm,
    #[error("factor class (k={k}, q={q}) appears more than once")]
    DuplicateFactorClass { k: usize, q: u64 },
    #[error("ring of order {0} is too large to enumerate")]
    TooLarge(u128),
    #[error("enumeration budget of {0} exceeded")]
    BudgetExceeded(u128),
    #[error("independent computations disagree: {0}")]
    Disagreement(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}
