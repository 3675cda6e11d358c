//! The gain-parameterized transfer operator and the closed-form conditional
//! output states it produces for each input class.
//!
//! Conditioned on a joint-measurement outcome β, the (unnormalized) output of
//! the teleportation is `T̂ᵍ_q(β) |ψ⟩` with
//!
//! ```text
//! T̂ᵍ_q(β) = √((1-q²)/π) Σₙ qⁿ D̂(gβ) |n⟩⟨n| D̂(-β)
//! ```
//!
//! The squared norm of the output is the probability density of obtaining β.
//! For coherent, vacuum, and one-photon inputs the output has a compact
//! closed form; [`transfer_operator`] builds the dense truncated matrix so
//! those closed forms can be cross-checked numerically.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fidelity::InputSpec;
use crate::fock::{coherent_state, displacement_operator, validate_entanglement, FockOperator, FockVector};

/// The two dimensionless knobs of the protocol: entanglement `q ∈ [0, 1)`
/// and gain `g` (any finite real; negative gains are legal and exercise the
/// g ↔ -g symmetry of the one-photon fidelity at q = 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TeleportParams {
    q: f64,
    g: f64,
}

impl TeleportParams {
    pub fn new(q: f64, g: f64) -> Result<Self> {
        validate_entanglement(q)?;
        if !g.is_finite() {
            return Err(Error::NonFiniteGain { g });
        }
        Ok(Self { q, g })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    /// Width `W = 1 - 2qg + g²` of the Gaussian envelope `e^{-W|β|²}` shared
    /// by every conditional-output overlap. Always positive for `q < 1`
    /// since `W = (1-q²) + (g-q)²`.
    pub fn gaussian_width(&self) -> f64 {
        1.0 - 2.0 * self.q * self.g + self.g * self.g
    }

    /// Scalar `√((1-q²)/π)` in front of the transfer operator.
    pub fn prefactor(&self) -> f64 {
        ((1.0 - self.q * self.q) / PI).sqrt()
    }
}

/// A joint-measurement outcome, the complex field value β = x₋ + i y₊.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementOutcome {
    beta: Complex64,
}

impl MeasurementOutcome {
    pub fn new(beta: Complex64) -> Result<Self> {
        if !beta.re.is_finite() || !beta.im.is_finite() {
            return Err(Error::NonFiniteOutcome);
        }
        Ok(Self { beta })
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }
}

/// The unnormalized conditional output state, in whichever closed form the
/// input class admits. Its squared norm is the probability density of the
/// measurement outcome.
#[derive(Debug, Clone, PartialEq)]
pub enum ConditionalOutput {
    /// `scalar · |amplitude⟩` — a scaled coherent state (coherent and vacuum
    /// inputs).
    Coherent {
        scalar: Complex64,
        amplitude: Complex64,
    },
    /// `scalar · D̂(displacement) (c₀|0⟩ + c₁|1⟩)` — a displaced
    /// vacuum/one-photon superposition (one-photon input).
    DisplacedQubit {
        scalar: Complex64,
        displacement: Complex64,
        c0: Complex64,
        c1: Complex64,
    },
    /// An explicit truncated vector (matrix cross-validation path).
    Matrix { vector: FockVector },
}

impl ConditionalOutput {
    /// Squared norm, i.e. the probability density of the outcome.
    pub fn norm_sqr(&self) -> f64 {
        match self {
            Self::Coherent { scalar, .. } => scalar.norm_sqr(),
            Self::DisplacedQubit { scalar, c0, c1, .. } => {
                scalar.norm_sqr() * (c0.norm_sqr() + c1.norm_sqr())
            }
            Self::Matrix { vector } => vector.norm_sqr(),
        }
    }

    /// Render the closed form as a truncated vector (oracle comparisons).
    pub fn to_fock_vector(&self, dim: usize) -> FockVector {
        match self {
            Self::Coherent { scalar, amplitude } => coherent_state(*amplitude, dim).0.scaled(*scalar),
            Self::DisplacedQubit {
                scalar,
                displacement,
                c0,
                c1,
            } => {
                let d = displacement_operator(*displacement, dim);
                let amps = (0..dim)
                    .map(|row| scalar * (c0 * d.element(row, 0) + c1 * d.element(row, 1)))
                    .collect();
                FockVector::from_amplitudes(amps).expect("finite by construction")
            }
            Self::Matrix { vector } => vector.clone(),
        }
    }
}

/// Dense truncated matrix of `T̂ᵍ_q(β) = √((1-q²)/π) D̂(gβ) diag(qⁿ) D̂(-β)`.
pub fn transfer_operator(
    p: &TeleportParams,
    outcome: &MeasurementOutcome,
    dim: usize,
) -> FockOperator {
    let beta = outcome.beta();
    let left = displacement_operator(p.g() * beta, dim);
    let right = displacement_operator(-beta, dim);
    let q = p.q();
    left.scale_columns(|n| q.powi(n as i32))
        .compose(&right)
        .expect("dimensions agree")
        .scaled(Complex64::new(p.prefactor(), 0.0))
}

/// Conditional output for a coherent input `|α⟩`:
/// a coherent state `|qα + (g-q)β⟩` times the scalar
/// `√((1-q²)/π) e^{-(1-q²)|α-β|²/2} e^{(1-qg)(αβ*-α*β)/2}`.
/// The second exponential is a pure phase.
pub fn output_coherent(
    p: &TeleportParams,
    outcome: &MeasurementOutcome,
    alpha: Complex64,
) -> ConditionalOutput {
    let (q, g) = (p.q(), p.g());
    let beta = outcome.beta();
    let s = 1.0 - q * q;
    let magnitude = p.prefactor() * (-0.5 * s * (alpha - beta).norm_sqr()).exp();
    // (αβ* - α*β)/2 = i Im(αβ*)
    let phase_angle = (1.0 - q * g) * (alpha * beta.conj()).im;
    ConditionalOutput::Coherent {
        scalar: Complex64::from_polar(magnitude, phase_angle),
        amplitude: q * alpha + (g - q) * beta,
    }
}

/// Conditional output for the vacuum input: `√((1-q²)/π) e^{-(1-q²)|β|²/2}`
/// times the coherent state `|(g-q)β⟩`. Choosing `g = q` cancels the
/// displacement and recovers the vacuum exactly.
pub fn output_vacuum(p: &TeleportParams, outcome: &MeasurementOutcome) -> ConditionalOutput {
    output_coherent(p, outcome, Complex64::ZERO)
}

/// Conditional output for the one-photon input: a displaced superposition
/// `√((1-q²)/π) e^{-(1-q²)|β|²/2} D̂((g-q)β) ((1-q²)β*|0⟩ + q|1⟩)`.
pub fn output_single_photon(p: &TeleportParams, outcome: &MeasurementOutcome) -> ConditionalOutput {
    let (q, g) = (p.q(), p.g());
    let beta = outcome.beta();
    let s = 1.0 - q * q;
    let magnitude = p.prefactor() * (-0.5 * s * beta.norm_sqr()).exp();
    ConditionalOutput::DisplacedQubit {
        scalar: Complex64::new(magnitude, 0.0),
        displacement: (g - q) * beta,
        c0: s * beta.conj(),
        c1: Complex64::new(q, 0.0),
    }
}

/// Closed-form conditional output for a single-mode input class.
///
/// Polarization qubits are two-mode and handled by the polarization module.
pub fn conditional_output(
    input: &InputSpec,
    p: &TeleportParams,
    outcome: &MeasurementOutcome,
) -> Result<ConditionalOutput> {
    match input {
        InputSpec::Coherent(alpha) => Ok(output_coherent(p, outcome, *alpha)),
        InputSpec::Vacuum => Ok(output_vacuum(p, outcome)),
        InputSpec::SinglePhoton => Ok(output_single_photon(p, outcome)),
        InputSpec::PolarizationQubit { .. } => Err(Error::TwoModeInput),
    }
}

/// Probability density of the outcome β for a single-mode input class,
/// i.e. the squared norm of the conditional output:
///
/// ```text
/// Coherent(α):  (1-q²)/π · e^{-(1-q²)|α-β|²}
/// Vacuum:       (1-q²)/π · e^{-(1-q²)|β|²}
/// SinglePhoton: (1-q²)/π · e^{-(1-q²)|β|²} ((1-q²)²|β|² + q²)
/// ```
///
/// `D̂(gβ)` is unitary and sits left of the projector, so the density carries
/// no `g` at all — equal gains give bit-identical values.
pub fn probability_density(
    input: &InputSpec,
    p: &TeleportParams,
    outcome: &MeasurementOutcome,
) -> Result<f64> {
    let q = p.q();
    let s = 1.0 - q * q;
    let beta = outcome.beta();
    let pref = s / PI;
    match input {
        InputSpec::Coherent(alpha) => Ok(pref * (-s * (alpha - beta).norm_sqr()).exp()),
        InputSpec::Vacuum => Ok(pref * (-s * beta.norm_sqr()).exp()),
        InputSpec::SinglePhoton => {
            let b2 = beta.norm_sqr();
            Ok(pref * (-s * b2).exp() * (s * s * b2 + q * q))
        }
        InputSpec::PolarizationQubit { .. } => Err(Error::TwoModeInput),
    }
}
