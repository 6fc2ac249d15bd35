use thiserror::Error;

/// Errors produced by the spectral machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate recursion denominator at nu = {nu} (w = {w})")]
    DegenerateDenominator { nu: usize, w: f64 },

    #[error("a' = 0 has no asymptotic roots")]
    InvalidAPrime,

    #[error("recursion coefficient M_{nu} vanishes")]
    CoefficientError { nu: usize },

    #[error("h(epsilon) has a pole at epsilon = {epsilon} (Landau floor)")]
    PoleAtLandauFloor { epsilon: f64 },

    #[error("bracket [{lo}, {hi}] does not change sign")]
    BracketInvalid { lo: f64, hi: f64 },

    #[error("refinement converged onto a pole of the continued fraction at epsilon = {epsilon}")]
    PoleDetected { epsilon: f64 },

    #[error("found {found} roots in [{eps_min}, {eps_max}], {requested} requested; widen the scan window")]
    InsufficientRoots {
        found: usize,
        requested: usize,
        eps_min: f64,
        eps_max: f64,
    },

    #[error("hypergeometric denominator vanishes at k = {k} (gamma = {gamma})")]
    GammaPole { k: usize, gamma: f64 },

    #[error("coefficient tail did not decay at truncation {truncation} (ratio {ratio:e})")]
    NotMinimal { truncation: usize, ratio: f64 },

    #[error("theta = {0} lies outside (0, pi)")]
    OutOfDomain(f64),

    #[error("normalization integral underflowed")]
    ZeroNorm,

    #[error("epsilon = {epsilon} is not above the potential minimum {eps0}")]
    BelowMinimum { epsilon: f64, eps0: f64 },

    #[error("found {sign_changes} turning points at epsilon = {epsilon}; only single wells are handled")]
    MultipleWells { epsilon: f64, sign_changes: usize },

    #[error("no solution bracketed below epsilon = {limit}")]
    NotBracketed { limit: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
