//! Closed-form teleportation fidelities per input class, a gain-sweep curve
//! sampler, and an independent quadrature oracle over the measurement plane.
//!
//! With `W = 1 - 2qg + g²`:
//!
//! ```text
//! F_coherent = (1-q²)/W · exp(-(1-q²)(1-g)²|α|²/W)
//! F_vacuum   = (1-q²)/W
//! F_photon   = (1-q²)/W³ · ((g-q)²(1-qg)² + g²(1-q²)²)
//! F_joint    = (1-q²)²/W⁴ · ((g-q)²(1-qg)² + g²(1-q²)²)   (= F_vacuum · F_photon)
//! ```
//!
//! The oracle re-derives these numbers by integrating the squared
//! conditional-output overlap `|⟨ψ|T̂ᵍ_q(β)|ψ⟩|²` over the β plane, so the
//! β-integration itself is what gets verified.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::validate_entanglement;
use crate::quad::{PlaneRule, QuadratureSpec};
use crate::transfer::{conditional_output, ConditionalOutput, MeasurementOutcome, TeleportParams};

/// Absolute tolerance targeted by the quadrature oracle; doubling the points
/// must not move the result by more than ten times this.
pub const ORACLE_TOL: f64 = 1e-8;

/// The input state being teleported.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InputSpec {
    /// Coherent state `|α⟩`.
    Coherent(Complex64),
    /// The vacuum (a coherent state with α = 0).
    Vacuum,
    /// A single photon `|1⟩`.
    SinglePhoton,
    /// A single photon split over two polarization modes,
    /// `c_H |1,0⟩ + c_V |0,1⟩`. Use [`InputSpec::polarization_qubit`] to
    /// enforce normalization.
    PolarizationQubit { c_h: Complex64, c_v: Complex64 },
}

impl InputSpec {
    /// A normalized polarization qubit; rejects `|c_H|² + |c_V|²` further
    /// than 1e-12 from one.
    pub fn polarization_qubit(c_h: Complex64, c_v: Complex64) -> Result<Self> {
        let norm_sqr = c_h.norm_sqr() + c_v.norm_sqr();
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > 1e-12 {
            return Err(Error::QubitNotNormalized { norm_sqr });
        }
        Ok(Self::PolarizationQubit { c_h, c_v })
    }

    pub fn is_single_mode(&self) -> bool {
        !matches!(self, Self::PolarizationQubit { .. })
    }
}

fn validate_gain(g: f64) -> Result<()> {
    if !g.is_finite() {
        return Err(Error::NonFiniteGain { g });
    }
    Ok(())
}

fn width(q: f64, g: f64) -> f64 {
    1.0 - 2.0 * q * g + g * g
}

/// Fidelity of coherent-state teleportation; depends on α through `|α|` only.
pub fn fidelity_coherent(q: f64, g: f64, alpha_mag: f64) -> Result<f64> {
    validate_entanglement(q)?;
    validate_gain(g)?;
    if !alpha_mag.is_finite() || alpha_mag < 0.0 {
        return Err(Error::InvalidAmplitudeMagnitude { mag: alpha_mag });
    }
    let s = 1.0 - q * q;
    let w = width(q, g);
    Ok(s / w * (-s * (1.0 - g) * (1.0 - g) * alpha_mag * alpha_mag / w).exp())
}

/// Fidelity of vacuum teleportation; peaks at exactly one when `g = q`.
pub fn fidelity_vacuum(q: f64, g: f64) -> Result<f64> {
    validate_entanglement(q)?;
    validate_gain(g)?;
    Ok((1.0 - q * q) / width(q, g))
}

/// Fidelity of one-photon teleportation; even in `g` at `q = 0`, with peaks
/// at `g = ±1/√2` there.
pub fn fidelity_single_photon(q: f64, g: f64) -> Result<f64> {
    validate_entanglement(q)?;
    validate_gain(g)?;
    let s = 1.0 - q * q;
    let w = width(q, g);
    let bracket = (g - q) * (g - q) * (1.0 - q * g) * (1.0 - q * g) + g * g * s * s;
    Ok(s / (w * w * w) * bracket)
}

/// Joint fidelity of teleporting both modes of a photonic qubit; equals the
/// product of the vacuum and one-photon fidelities and is independent of the
/// qubit's polarization.
pub fn fidelity_joint(q: f64, g: f64) -> Result<f64> {
    validate_entanglement(q)?;
    validate_gain(g)?;
    let s = 1.0 - q * q;
    let w = width(q, g);
    let bracket = (g - q) * (g - q) * (1.0 - q * g) * (1.0 - q * g) + g * g * s * s;
    let f = s * s / (w * w * w * w) * bracket;
    debug_assert!(
        (f - fidelity_vacuum(q, g).unwrap() * fidelity_single_photon(q, g).unwrap()).abs()
            <= 1e-14,
        "expanded joint form drifted from the vacuum x photon product"
    );
    Ok(f)
}

/// Closed-form fidelity for any input class.
pub fn fidelity_for(input: &InputSpec, q: f64, g: f64) -> Result<f64> {
    match input {
        InputSpec::Coherent(alpha) => fidelity_coherent(q, g, alpha.norm()),
        InputSpec::Vacuum => fidelity_vacuum(q, g),
        InputSpec::SinglePhoton => fidelity_single_photon(q, g),
        InputSpec::PolarizationQubit { .. } => fidelity_joint(q, g),
    }
}

/// A sampled fidelity-vs-gain curve.
#[derive(Debug, Clone, PartialEq)]
pub struct FidelityCurve {
    input: InputSpec,
    q: f64,
    g_lo: f64,
    g_hi: f64,
    samples: Vec<(f64, f64)>,
}

impl FidelityCurve {
    pub fn input(&self) -> &InputSpec {
        &self.input
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn g_range(&self) -> (f64, f64) {
        (self.g_lo, self.g_hi)
    }

    /// The `(g, F)` samples, `g` strictly ascending.
    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    /// The sample with the largest fidelity (first of ties).
    pub fn peak(&self) -> (f64, f64) {
        self.samples
            .iter()
            .copied()
            .fold(self.samples[0], |best, s| if s.1 > best.1 { s } else { best })
    }
}

/// Sample the closed-form fidelity on a uniform gain grid, endpoints
/// included.
pub fn sample_curve(
    input: &InputSpec,
    q: f64,
    g_range: (f64, f64),
    steps: usize,
) -> Result<FidelityCurve> {
    let (g_lo, g_hi) = g_range;
    if !(g_lo.is_finite() && g_hi.is_finite()) || g_lo >= g_hi || steps < 2 {
        return Err(Error::InvalidCurveRange);
    }
    let dg = (g_hi - g_lo) / (steps - 1) as f64;
    let samples = (0..steps)
        .map(|i| {
            let g = if i == steps - 1 { g_hi } else { g_lo + i as f64 * dg };
            fidelity_for(input, q, g).map(|f| (g, f))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FidelityCurve {
        input: *input,
        q,
        g_lo,
        g_hi,
        samples,
    })
}

/// Reduced oracle integrand `|⟨ψ|T̂ᵍ_q(β)|ψ⟩|² e^{+w|β|²}`, assembled from the
/// closed-form conditional output. Exponents are combined in log space so the
/// far quadrature nodes underflow gracefully instead of producing `0 · ∞`.
fn reduced_overlap_sqr(input: &InputSpec, p: &TeleportParams, w: f64, beta: Complex64) -> f64 {
    let outcome = MeasurementOutcome::new(beta).expect("quadrature nodes are finite");
    let out = conditional_output(input, p, &outcome).expect("single-mode input");
    let overlap = match (input, &out) {
        (InputSpec::Coherent(alpha), ConditionalOutput::Coherent { scalar, amplitude }) => {
            // ⟨α|γ⟩ = exp(-|α|²/2 - |γ|²/2 + α*γ)
            let exponent =
                alpha.conj() * amplitude - 0.5 * (alpha.norm_sqr() + amplitude.norm_sqr());
            scalar * exponent.exp()
        }
        (InputSpec::Vacuum, ConditionalOutput::Coherent { scalar, amplitude }) => {
            scalar * (-0.5 * amplitude.norm_sqr()).exp()
        }
        (
            InputSpec::SinglePhoton,
            ConditionalOutput::DisplacedQubit {
                scalar,
                displacement,
                c0,
                c1,
            },
        ) => {
            // ⟨1|D̂(δ)|0⟩ = δ e^{-|δ|²/2},  ⟨1|D̂(δ)|1⟩ = (1-|δ|²) e^{-|δ|²/2}
            let d2 = displacement.norm_sqr();
            scalar * (-0.5 * d2).exp() * (c0 * displacement + c1 * (1.0 - d2))
        }
        _ => unreachable!("conditional_output returned a mismatched form"),
    };
    (2.0 * overlap.norm().ln() + w * beta.norm_sqr()).exp()
}

/// Numerically integrate `|⟨ψ|T̂ᵍ_q(β)|ψ⟩|²` over the β plane.
///
/// The Gaussian envelope of width `W = 1 - 2qg + g²` is absorbed into the
/// quadrature. The rule is run at the requested points and at double the
/// points; if the two results differ by more than `10 × ORACLE_TOL` the
/// quadrature is flagged as non-convergent. Only single-mode inputs are
/// accepted — the qubit case lives in the polarization module.
pub fn fidelity_oracle(
    input: &InputSpec,
    q: f64,
    g: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !input.is_single_mode() {
        return Err(Error::TwoModeInput);
    }
    let p = TeleportParams::new(q, g)?;
    let w = spec.width_override().unwrap_or(p.gaussian_width());
    let run = |s: &QuadratureSpec| -> Result<f64> {
        let rule = PlaneRule::new(s, p.gaussian_width())?;
        let reduced = |beta: Complex64| reduced_overlap_sqr(input, &p, w, beta);
        #[cfg(feature = "rayon")]
        let value = rule.par_integrate(reduced);
        #[cfg(not(feature = "rayon"))]
        let value = rule.integrate(reduced);
        Ok(value)
    };
    let coarse = run(spec)?;
    let fine = run(&spec.doubled())?;
    let delta = (fine - coarse).abs();
    if delta > 10.0 * ORACLE_TOL {
        return Err(Error::QuadratureNotConverged { delta });
    }
    Ok(fine)
}
