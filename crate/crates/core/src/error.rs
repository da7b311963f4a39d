use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EpolyError {
    #[error("negative exponent in term x^{p} y^{q}; Laurent terms are not supported")]
    NegativeExponent { p: i64, q: i64 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GammaError {
    #[error("exponent n must be at least 2, got {0}")]
    InvalidExponent(u32),
    #[error("genus g must be at least 1, got {0}")]
    InvalidGenus(u32),
    #[error("inconsistent group parameters: expected (n={n}, dim={dim}), got (n={got_n}, dim={got_dim})")]
    GroupMismatch {
        n: u32,
        dim: usize,
        got_n: u32,
        got_dim: usize,
    },
    #[error("enumeration of {required} elements exceeds the bound {bound}")]
    EnumerationBound { required: u128, bound: u128 },
    #[error("torsion class form is not alternating mod {n}: entry ({row}, {col})")]
    NotAlternating { n: u32, row: usize, col: usize },
    #[error("torsion class form must be square of even size, got {rows}x{cols}")]
    BadShape { rows: usize, cols: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrbifoldError {
    #[error(transparent)]
    Gamma(#[from] GammaError),
    #[error("the identity sector must have fermionic shift 0, got {0}")]
    IdentityShift(u32),
    #[error("sector for gamma {0:?} appears more than once")]
    DuplicateSector(Vec<u32>),
    #[error("identity sector must be listed first")]
    IdentityNotFirst,
    #[error("fermionic shift numerators sum to {sum}, not divisible by {n}")]
    NonIntegralShift { sum: u64, n: u32 },
    #[error("fermionic shift numerator {value} is outside [0, {n})")]
    NumeratorOutOfRange { value: u32, n: u32 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HitchinError {
    #[error("rank n must be at least 2, got {0}")]
    InvalidRank(u32),
    #[error("genus must satisfy g >= 2, or g >= 1 with m >= 1 (got g={g}, m={m})")]
    InvalidGenus { g: u32, m: u32 },
    #[error("punctured curve is not hyperbolic: 2g - 2 + m = {0} <= 0")]
    NotHyperbolic(i64),
    #[error(
        "coprime case requires m = 0 and gcd(n, c) = gcd(n, d) = 1 (n={n}, m={m}, c={c}, d={d})"
    )]
    CoprimeCase { n: u32, m: u32, c: i64, d: i64 },
    #[error("generic weights require at least one puncture")]
    GenericWithoutPuncture,
    #[error("the mirror formula requires at least one generic puncture (m >= 1)")]
    NoPuncture,
    #[error("spectral line degree {line_degree} is below 2g - 2 = {min}")]
    LineDegree { line_degree: i64, min: i64 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HkError {
    #[error("quaternionic dimension k must be positive")]
    ZeroDimension,
    #[error("expected {expected}, got {got}")]
    DimensionMismatch { expected: String, got: String },
    #[error("subspace basis is linearly dependent (rank {rank} < {len})")]
    RankDeficient { rank: usize, len: usize },
    #[error("model violates {0}")]
    InvalidModel(&'static str),
    #[error("invalid rational {0:?}")]
    ParseRational(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorusError {
    #[error("pairing must be square of even positive size, got {rows}x{cols}")]
    BadShape { rows: usize, cols: usize },
    #[error("pairing is not alternating at ({row}, {col})")]
    NotAlternating { row: usize, col: usize },
    #[error("pairing is degenerate (zero determinant)")]
    Degenerate,
}
