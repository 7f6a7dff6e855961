use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("value {0} lies outside [0, 1]")]
    Domain(String),

    #[error("no {variant} binary expansion exists for {value}")]
    NoExpansion { value: String, variant: &'static str },

    #[error("index {k} out of range for level {n} (expected 0 <= k <= 2^n)")]
    Range { k: u64, n: u32 },

    #[error("discriminant {0} is not positive")]
    DegenerateDiscriminant(String),

    #[error("vector is not in the difference cone")]
    NotInCone,

    #[error("{side} side is undefined at s = {value}")]
    Side { side: &'static str, value: String },

    #[error("requested size {requested} exceeds cap {cap}")]
    Resource { requested: u32, cap: u32 },

    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
