use thiserror::Error;

/// Errors raised by the certified computations in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("the polynomial is identically zero")]
    ZeroPolynomial,

    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: String, hi: String },

    #[error("argument outside the domain of {function}: {detail}")]
    Domain { function: &'static str, detail: String },

    #[error("piece index {index} out of range for dimension {dim}")]
    IndexOutOfRange { dim: u32, index: u32 },

    #[error("dimension {dim} is below the minimum {min}")]
    DimensionTooSmall { dim: u32, min: u32 },

    #[error("t = {t} is a root of 1 - 24t^2 + 48t^4")]
    AtSingularity { t: String },

    #[error("sign still undecided at {bits} bits")]
    PrecisionExhausted { bits: u32 },

    #[error("value needs more than two distinct square roots")]
    TooManyRadicals,

    #[error("range [{lo}, {hi}] contains a root of 1 - 24t^2 + 48t^4")]
    StraddlesGamma { lo: String, hi: String },

    #[error("t = {t} lies outside the ranges covered by the sup/inf theorems")]
    OutsideCoveredRange { t: String },

    #[error("face dimension {n} is below 4")]
    FaceTooSmall { n: u32 },

    #[error("face dimension {n} exceeds ambient dimension {d}")]
    FaceTooLarge { n: u32, d: u32 },

    #[error("quadrature tolerance {tol:e} not reached within {panels} panels")]
    ToleranceUnreachable { tol: f64, panels: usize },

    #[error("root isolation exceeded {limit} subdivisions")]
    SubdivisionLimit { limit: usize },

    #[error("cannot parse {input:?} as an exact rational")]
    Parse { input: String },
}

pub type Result<T> = std::result::Result<T, Error>;
