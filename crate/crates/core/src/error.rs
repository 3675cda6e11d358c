//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("photon number {n} is outside the truncated space of dimension {dim}")]
    PhotonNumberOutOfRange { n: usize, dim: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("state amplitudes must be finite and non-empty")]
    InvalidAmplitudes,

    #[error("entanglement parameter must satisfy 0 <= q < 1, got {q}")]
    EntanglementOutOfRange { q: f64 },

    #[error("squeezing parameter must be finite and nonnegative, got {r}")]
    InvalidSqueezing { r: f64 },

    #[error("gain must be finite, got {g}")]
    NonFiniteGain { g: f64 },

    #[error("measurement outcome must have finite components")]
    NonFiniteOutcome,

    #[error("coherent amplitude magnitude must be finite and nonnegative, got {mag}")]
    InvalidAmplitudeMagnitude { mag: f64 },

    #[error("input intensity |alpha|^2 must be finite and nonnegative, got {alpha_sq}")]
    InvalidIntensity { alpha_sq: f64 },

    #[error("qubit amplitudes must be normalized: |c_H|^2 + |c_V|^2 = {norm_sqr}")]
    QubitNotNormalized { norm_sqr: f64 },

    #[error("qubit coefficients must be real for the rotation identity, got imaginary part {im}")]
    ComplexQubitCoefficient { im: f64 },

    #[error("polarization-qubit inputs are two-mode; use the polarization module")]
    TwoModeInput,

    #[error("quadrature needs at least {min} points per axis, got {points}")]
    TooFewQuadraturePoints { points: usize, min: usize },

    #[error("quadrature width must be finite and positive, got {width}")]
    InvalidQuadratureWidth { width: f64 },

    #[error("quadrature did not converge: doubling the points moved the result by {delta:.3e}")]
    QuadratureNotConverged { delta: f64 },

    #[error("curve sampling needs g_lo < g_hi and at least 2 steps")]
    InvalidCurveRange,

    #[error("the stationarity condition has a pole at |g| = 1 (got g = {g}); evaluate dF/dg directly there")]
    GainConditionPole { g: f64 },

    #[error("no sign change found while bracketing the optimum at q = {q}")]
    BracketNotFound { q: f64 },

    #[error("solver cross-check disagreement: {detail}")]
    SolverDisagreement { detail: String },
}
