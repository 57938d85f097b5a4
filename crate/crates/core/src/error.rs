use thiserror::Error;

/// Errors raised by every layer of the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GyroError {
    #[error("element {element} does not belong to the {instance} carrier")]
    CarrierMismatch { element: String, instance: String },
    #[error("point {0} lies on or outside the carrier boundary")]
    OutsideCarrier(String),
    #[error("result escapes the carrier (numeric breakdown near the boundary)")]
    EscapesCarrier,
    #[error("operands live over different instances: {0} vs {1}")]
    InstanceMismatch(String, String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid neighborhood: {0}")]
    InvalidNeighborhood(String),
    #[error("cuts must be strictly increasing inside (0, 1)")]
    InvalidCuts,
    #[error("breakpoints must be strictly increasing from 0 to 1")]
    InvalidBreakpoints,
    #[error("expected {expected} values, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("evaluation point outside [0, 1)")]
    OutsideDomain,
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
    #[error("path parameter must lie in [0, 1]")]
    ParameterOutOfRange,
    #[error("function is constant; it already lies in the embedded copy of the carrier")]
    ConstantFunction,
    #[error("function is the identity; nothing to separate")]
    IdentityFunction,
    #[error("no dense point found in the translated neighborhood of {0}")]
    DensityViolated(String),
    #[error("dense set translates do not cover the carrier: {0}")]
    CoverFailed(String),
    #[error("malformed cut vector: {0}")]
    MalformedCutVector(String),
    #[error("homomorphism is not injective")]
    NotInjective,
    #[error("map is not a groupoid homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("homomorphism is not onto")]
    NotOnto,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("at least one sample is required")]
    ZeroSamples,
    #[error("cannot parse rational {0:?}")]
    RationalParse(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("constructed witness failed its own re-check: {0}")]
    VerificationFailed(String),
}

pub type Result<T, E = GyroError> = std::result::Result<T, E>;
