//! Exact-arithmetic toolkit for nonautonomous dynamical systems (NDS) on the
//! unit interval, the circle of circumference 1, and truncated Cantor space.
//!
//! A nonautonomous system is a sequence of continuous surjections
//! `f_1, f_2, ...` applied in order, together with its uniform limit `f`.
//! The crate provides:
//!
//! * exact rational points, metrics, balls, and ε-nets for the three phase
//!   spaces ([`space`]);
//! * piecewise-linear interval maps, circle rotations, binary odometers, and
//!   a lazily-indexed infinite piecewise-linear family, all with exact
//!   algebra ([`maps`]);
//! * window compositions `f_n^k`, fiber powers `(f_n)^k`, orbits, and
//!   inverse window sets ([`nds`]);
//! * checkers with certificates for the convergence/density conditions
//!   (CC), (CC*), (L), (L*), (DO), (DO*) ([`conditions`]);
//! * transitivity, sensitivity, invariant-interval, fixed-point, agreement,
//!   and conjugation analyses ([`analysis`]);
//! * a gallery of named example systems with machine-checked quantitative
//!   assertions ([`gallery`]);
//! * a declarative experiment runner emitting deterministic JSONL/CSV
//!   reports ([`experiment`]).
//!
//! Every quantity is an exact [`rational::Rational`] unless explicitly
//! tagged as an approximation (irrational rotation surrogates, decimal
//! report columns).

pub mod analysis;
pub mod conditions;
pub mod experiment;
pub mod gallery;
pub mod maps;
pub mod nds;
pub mod rational;
pub mod space;

pub use rational::Rational;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("not a rational: {0:?} (expected \"p/q\" or integer string)")]
    BadRational(String),
    #[error("point does not belong to {expected} space (got {got})")]
    SpaceMismatch { expected: &'static str, got: &'static str },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid map construction: {0}")]
    Construction(String),
    #[error("precondition not met: {0}")]
    Precondition(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("evaluation saturated word precision (carry past the last bit)")]
    PrecisionSaturated,
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
