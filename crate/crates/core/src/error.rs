use thiserror::Error;

/// Errors raised by the series, domain, admissibility and condition layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series order must be at least 1, got {0}")]
    InvalidOrder(usize),

    #[error("series coefficient {index} is not finite")]
    NonFiniteCoefficient { index: usize },

    #[error("constant term {0} is too close to zero to invert")]
    ZeroConstantTerm(f64),

    #[error("expected p(0) = 1, found p(0) = {re} + {im}i")]
    ConstantTermNotOne { re: f64, im: f64 },

    #[error("function is not normalized: need a0 = 0 and a1 = 1")]
    NotNormalized,

    #[error("third-order operator requires beta3")]
    MissingBeta3,

    #[error("operator parameter {name} = {value} must be finite and nonnegative")]
    InvalidBeta { name: &'static str, value: f64 },

    #[error("Janowski parameters need -1 < D < C <= 1, got C = {c}, D = {d}")]
    InvalidJanowskiParams { c: f64, d: f64 },

    #[error("point lies within {distance:e} of the sampled boundary")]
    TooCloseToBoundary { distance: f64 },

    #[error("theta = {theta} is a singular point of the petal profile")]
    SingularTheta { theta: f64 },

    #[error("|s| = {0:e} is too small for the admissibility quotient")]
    DegenerateS(f64),

    #[error("third-order admissibility requires u")]
    MissingU,

    #[error("need k >= m >= 2, got m = {m}, k = {k}")]
    InvalidMK { m: u32, k: u32 },

    #[error("no third-order petal theorems")]
    NoThirdOrderPetal,

    #[error("grid: {0}")]
    InvalidGrid(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
