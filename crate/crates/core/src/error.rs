use thiserror::Error;

/// Errors raised by the exact arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("polynomial is not squarefree (gcd with derivative has degree {0})")]
    NotSquarefree(usize),
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("constant polynomial where a nonconstant one is required")]
    ConstantPolynomial,
    #[error("invalid place: {0}")]
    InvalidPlace(String),
    #[error("element is not invertible modulo {0}")]
    NotInvertible(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero argument where a nonzero rational is required")]
    ZeroArgument,
    #[error("prime factor {0} does not fit in 64 bits")]
    PrimeTooLarge(String),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("no usable prime found for {0}")]
    NoGoodPrime(String),
}

/// Errors raised when building or evaluating quadratic forms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("form entries must be nonzero")]
    ZeroEntry,
    #[error("trivial-Clifford test needs even dimension, got {0}")]
    OddDimension(usize),
    #[error("cannot remove a hyperbolic plane from {0}")]
    NoHyperbolicPlane(String),
    #[error("search for a representing element exhausted its bound ({0})")]
    SearchExhausted(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Errors raised by the octonion and Albert layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OctonionError {
    #[error("torus parameter must be nonzero")]
    ZeroLambda,
    #[error("invalid composition signature: {0}")]
    InvalidSignature(String),
    #[error("total signature {0:?} is not the signature of a real Albert algebra")]
    UnrecognizedSignature((u32, u32)),
}

/// Errors raised by étale algebras with involution and data built on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EtaleError {
    #[error("fixed polynomial {0} is not irreducible over Q")]
    NotIrreducible(String),
    #[error("quadratic factor needs a nonzero d")]
    ZeroD,
    #[error("alpha is not invertible")]
    SingularAlpha,
    #[error("expected {expected} values, one per factor, got {got}")]
    FactorCount { expected: usize, got: usize },
    #[error("invalid datum: {0}")]
    InvalidDatum(String),
    #[error("involution has a fixed point")]
    FixedPointInvolution,
    #[error("data are not fully split: {0}")]
    NotSplitData(String),
    #[error("no presentation E = E^σ(√t) found: {0}")]
    NoPresentation(String),
    #[error("trace form expected to have trivial Clifford invariant: {0}")]
    CliffordMismatch(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Form(#[from] FormError),
}

/// Errors raised by the realizability deciders.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizabilityError {
    #[error("prime {p} is wild for factor {factor}; supply a finite_splitting override")]
    WildPrimeDataMissing { factor: usize, p: u64 },
    #[error("form of dimension {form} against an algebra of rank {algebra}")]
    DimensionMismatch { form: usize, algebra: usize },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("invalid datum: {0}")]
    InvalidDatum(String),
    #[error(transparent)]
    Etale(#[from] EtaleError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}
