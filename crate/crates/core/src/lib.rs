//! Continuous-variable quantum teleportation with tunable classical gain.
//!
//! A teleportation run measures the complex field value β jointly on the
//! input and one arm of a two-mode entangled resource (entanglement
//! parameter `q ∈ [0, 1)`), then displaces the output by `gβ` for a chosen
//! gain `g`. This crate computes the resulting teleportation fidelity for
//! coherent, vacuum, one-photon, and polarization-qubit inputs, and solves
//! for the gain that maximizes it:
//!
//! * [`fock`] — truncated photon-number-basis states and operators, the
//!   numerical substrate every closed form is checked against;
//! * [`transfer`] — the gain-parameterized transfer operator and the
//!   closed-form conditional outputs per input class;
//! * [`fidelity`] — closed-form fidelities, gain-sweep curves, and an
//!   independent quadrature oracle over the measurement plane;
//! * [`gainopt`] — optimal-gain solvers (stationarity cubic for coherent
//!   inputs, quintic for the photonic qubit, rule of thumb, improvement
//!   tables), each cross-checked by golden-section maximization;
//! * [`polarization`] — two-mode teleportation of a photon of unknown
//!   polarization and the numeric factorization/independence checks;
//! * [`verify`] — named verification suites with structured results.
//!
//! Heavy sweeps (quadratures, per-`q` tables) run on parallel workers when
//! the `rayon` feature is enabled (the default) and fall back to sequential
//! loops without it; reduction orders are fixed so both paths produce
//! bit-identical numbers.

pub mod error;
pub mod fidelity;
pub mod fock;
pub mod gainopt;
pub mod polarization;
pub mod quad;
pub mod transfer;
pub mod verify;

pub use error::{Error, Result};
pub use fidelity::{FidelityCurve, InputSpec};
pub use gainopt::{ImprovementRow, InputFamily, OptimalGainResult};
pub use polarization::PolarizationQubit;
pub use quad::{QuadScheme, QuadratureSpec};
pub use transfer::{ConditionalOutput, MeasurementOutcome, TeleportParams};
pub use verify::{CheckResult, Suite, VerifyConfig, VerifyReport};
