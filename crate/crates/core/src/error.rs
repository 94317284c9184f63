use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("gcd of zero polynomials")]
    GcdOfZero,
    #[error("zero polynomial has no squarefree decomposition")]
    ZeroPolynomial,
    #[error("polynomial has degree zero in y")]
    ConstantInY,
    #[error("not expressible in trace coordinates (non-symmetric residue: {residue})")]
    NotTraceExpressible { residue: String },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid two-bridge parameters ({p}, {q}): {reason}")]
    InvalidParams { p: u64, q: u64, reason: &'static str },
    #[error("Fox derivative mismatch")]
    FoxMismatch,

    #[error("parabolic meridian trace excluded")]
    ParabolicTrace,
    #[error("point is not on the character variety (residual {residual:e})")]
    NotOnVariety { residual: f64 },
    #[error("representation check failed: {0}")]
    BadRepresentation(&'static str),

    #[error("collision at tolerance")]
    ExclusionCollision,
    #[error("Milnor count unstable (expected {expected}, found {found})")]
    MilnorCountUnstable { expected: usize, found: usize },
    #[error("Euler characteristic additivity check failed")]
    AdditivityMismatch,
    #[error("argument out of range: {0}")]
    OutOfRange(&'static str),

    #[error("root finder did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("loop passes within {distance:e} of a bad-set root")]
    LoopTouchesBadSet { distance: f64 },
    #[error("loop too close to branch point")]
    LoopTooCloseToBranchPoint,
    #[error("ambiguous closure matching (margin {margin:.3})")]
    AmbiguousMatching { margin: f64 },
    #[error("slice at base point is not squarefree")]
    BaseNotSquarefree,

    #[error("numerical instability: meridian drift {drift:e}")]
    MeridianDrift { drift: f64 },
    #[error("C* action depends on the logarithm branch (deviation {deviation:e})")]
    BranchDisagreement { deviation: f64 },
    #[error("representation is not irreducible")]
    Reducible,
    #[error("Z/{n} action is not free: fingerprint collision at k = {k}")]
    NotFree { n: usize, k: usize },
    #[error("Type II Euler characteristic is {0}, expected 0")]
    TypeIINonzero(i64),

    #[error("sweep is not constant: generic slices report both {first} and {other}")]
    SweepNotConstant { first: i64, other: i64 },
    #[error("bad set too dense: only {survivors} generic samples survived")]
    BadSetTooDense { survivors: usize },
    #[error("internal error: {0}")]
    Internal(&'static str),
}
