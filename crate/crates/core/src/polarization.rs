//! Two-mode teleportation of a single photon of unknown polarization.
//!
//! Each polarization mode is teleported in parallel by its own transfer
//! operator, so the joint conditional state is `(T̂(β_H) ⊗ T̂(β_V)) |S⟩` for
//! the qubit `|S⟩ = c_H|1,0⟩ + c_V|0,1⟩`. The overlap `⟨S|T̂⊗T̂|S⟩` only
//! touches photon numbers 0 and 1 per mode, so the four-dimensional fidelity
//! integral is assembled from closed-form 2×2 matrix elements per mode — no
//! large tensors anywhere. The numeric result factorizes as the product of
//! the vacuum and one-photon fidelities, independent of the polarization.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fidelity::ORACLE_TOL;
use crate::quad::{PlaneRule, QuadratureSpec};
use crate::transfer::{transfer_operator, MeasurementOutcome, TeleportParams};

/// A normalized single-photon polarization state `c_H |H⟩ + c_V |V⟩` with
/// `|H⟩ = |1⟩_H|0⟩_V` and `|V⟩ = |0⟩_H|1⟩_V`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationQubit {
    c_h: Complex64,
    c_v: Complex64,
}

impl PolarizationQubit {
    pub fn new(c_h: Complex64, c_v: Complex64) -> Result<Self> {
        let norm_sqr = c_h.norm_sqr() + c_v.norm_sqr();
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > 1e-12 {
            return Err(Error::QubitNotNormalized { norm_sqr });
        }
        Ok(Self { c_h, c_v })
    }

    pub fn horizontal() -> Self {
        Self {
            c_h: Complex64::ONE,
            c_v: Complex64::ZERO,
        }
    }

    pub fn c_h(&self) -> Complex64 {
        self.c_h
    }

    pub fn c_v(&self) -> Complex64 {
        self.c_v
    }

    /// Do both coefficients have (numerically) vanishing imaginary parts?
    pub fn is_real(&self) -> bool {
        self.c_h.im.abs() <= 1e-12 && self.c_v.im.abs() <= 1e-12
    }
}

/// The 2×2 block `⟨m|T̂ᵍ_q(β)|n⟩`, `m, n ∈ {0, 1}`, of one mode's transfer
/// operator at a given outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeMatrixElements {
    pub t00: Complex64,
    pub t01: Complex64,
    pub t10: Complex64,
    pub t11: Complex64,
}

/// Shared core of the 2×2 closed forms. All four elements carry the common
/// envelope `e^{-W|β|²/2}`; `envelope_exponent` lets quadrature callers swap
/// that for the residual left after absorbing a width into the rule.
fn elements_with_envelope(
    p: &TeleportParams,
    beta: Complex64,
    envelope_exponent: f64,
) -> ModeMatrixElements {
    let (q, g) = (p.q(), p.g());
    let n = p.prefactor() * envelope_exponent.exp();
    let kappa = (g - q) * (1.0 - q * g);
    ModeMatrixElements {
        t00: Complex64::new(n, 0.0),
        t01: n * (1.0 - q * g) * beta.conj(),
        t10: n * (g - q) * beta,
        t11: Complex64::new(n * (q + kappa * beta.norm_sqr()), 0.0),
    }
}

/// Closed-form qubit-block matrix elements of `T̂ᵍ_q(β)`:
///
/// ```text
/// t00 = N e^{-W|β|²/2}
/// t10 = N (g-q) β e^{-W|β|²/2}
/// t01 = N (1-qg) β* e^{-W|β|²/2}
/// t11 = N (q + (g-q)(1-qg)|β|²) e^{-W|β|²/2}
/// ```
///
/// with `N = √((1-q²)/π)` and `W = 1 - 2qg + g²`.
pub fn mode_matrix_elements(p: &TeleportParams, outcome: &MeasurementOutcome) -> ModeMatrixElements {
    let beta = outcome.beta();
    elements_with_envelope(p, beta, -0.5 * p.gaussian_width() * beta.norm_sqr())
}

fn two_mode_overlap(
    qubit: &PolarizationQubit,
    mode_h: &ModeMatrixElements,
    mode_v: &ModeMatrixElements,
) -> Complex64 {
    let chh = qubit.c_h.norm_sqr();
    let cvv = qubit.c_v.norm_sqr();
    let chv = qubit.c_h.conj() * qubit.c_v;
    chh * mode_h.t11 * mode_v.t00
        + chv * mode_h.t10 * mode_v.t01
        + chv.conj() * mode_h.t01 * mode_v.t10
        + cvv * mode_h.t00 * mode_v.t11
}

/// Four-dimensional quadrature of the joint fidelity
/// `∫ d²β_H d²β_V |⟨S| T̂(β_H) ⊗ T̂(β_V) |S⟩|²`.
///
/// The Gaussian envelope `e^{-W(|β_H|²+|β_V|²)}` is absorbed into the rule as
/// in the single-mode oracle, and the integrand is assembled from the reduced
/// 2×2 elements precomputed per node, so the cost is one cheap complex
/// combination per node pair. Doubling the points must keep the result
/// within `10 × ORACLE_TOL`, as in the single-mode oracle.
pub fn joint_fidelity_numeric(
    qubit: &PolarizationQubit,
    p: &TeleportParams,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let w = spec.width_override().unwrap_or(p.gaussian_width());
    let run = |s: &QuadratureSpec| -> Result<f64> {
        let rule = PlaneRule::new(s, p.gaussian_width())?;
        let reduced: Vec<ModeMatrixElements> = rule
            .nodes()
            .iter()
            .map(|(beta, _)| {
                elements_with_envelope(
                    p,
                    *beta,
                    0.5 * (w - p.gaussian_width()) * beta.norm_sqr(),
                )
            })
            .collect();
        let integrand =
            |a: usize, b: usize| two_mode_overlap(qubit, &reduced[a], &reduced[b]).norm_sqr();
        #[cfg(feature = "rayon")]
        let value = rule.par_integrate_pairs_indexed(integrand);
        #[cfg(not(feature = "rayon"))]
        let value = rule.integrate_pairs_indexed(integrand);
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

/// Squared norm of the two-mode conditional state
/// `(T̂(β_H) ⊗ T̂(β_V)) |S⟩`, i.e. the probability density of the outcome
/// pair. Gain-independent; its Gaussian envelope has width `1-q²` per plane.
pub fn two_mode_probability_density(
    qubit: &PolarizationQubit,
    p: &TeleportParams,
    beta_h: Complex64,
    beta_v: Complex64,
) -> f64 {
    let q = p.q();
    let s = 1.0 - q * q;
    // per-mode pieces of ‖(T⊗T)|S⟩‖²: full-space norms and the cross overlap
    // ⟨T|1⟩, T|0⟩⟩ = s(β)² (1-q²) β with s(β)² = (1-q²)/π e^{-(1-q²)|β|²}
    let env = |b: Complex64| s / std::f64::consts::PI * (-s * b.norm_sqr()).exp();
    let rho0 = |b: Complex64| env(b);
    let rho1 = |b: Complex64| env(b) * (s * s * b.norm_sqr() + q * q);
    let xi = |b: Complex64| env(b) * s * b;
    let cross = qubit.c_h.conj() * qubit.c_v * xi(beta_h) * xi(beta_v).conj();
    qubit.c_h.norm_sqr() * rho1(beta_h) * rho0(beta_v)
        + qubit.c_v.norm_sqr() * rho0(beta_h) * rho1(beta_v)
        + 2.0 * cross.re
}

const ROTATION_CHECK_DIM: usize = 40;

/// Check the basis-rotation identity behind polarization independence.
///
/// For real `c_H, c_V` the rotation into the signal/orthogonal basis maps the
/// outcome pair linearly, `β_S = c_H β_H + c_V β_V`, `β_P = c_V β_H - c_H β_V`,
/// and `|⟨S|T̂(β_H)⊗T̂(β_V)|S⟩|` must equal `|⟨H|T̂(β_S)⊗T̂(β_P)|H⟩|`. Both
/// sides are evaluated from dim-40 transfer matrices and the absolute
/// difference is returned (expected at truncation level, ≤ 1e-9).
///
/// Complex coefficients are rejected: the printed displacement transform is
/// exactly an orthogonal mixing only for real ones, and the invariance claim
/// for complex qubits is covered numerically by [`joint_fidelity_numeric`].
pub fn basis_rotation_check(
    qubit: &PolarizationQubit,
    p: &TeleportParams,
    beta_h: Complex64,
    beta_v: Complex64,
) -> Result<f64> {
    if !qubit.is_real() {
        let im = qubit.c_h.im.abs().max(qubit.c_v.im.abs());
        return Err(Error::ComplexQubitCoefficient { im });
    }
    let (ch, cv) = (qubit.c_h.re, qubit.c_v.re);
    let dim = ROTATION_CHECK_DIM;

    let t_h = transfer_operator(p, &MeasurementOutcome::new(beta_h)?, dim);
    let t_v = transfer_operator(p, &MeasurementOutcome::new(beta_v)?, dim);
    let amp_hv = ch * ch * t_h.element(1, 1) * t_v.element(0, 0)
        + ch * cv * (t_h.element(1, 0) * t_v.element(0, 1) + t_h.element(0, 1) * t_v.element(1, 0))
        + cv * cv * t_h.element(0, 0) * t_v.element(1, 1);

    let beta_s = ch * beta_h + cv * beta_v;
    let beta_p = cv * beta_h - ch * beta_v;
    let t_s = transfer_operator(p, &MeasurementOutcome::new(beta_s)?, dim);
    let t_p = transfer_operator(p, &MeasurementOutcome::new(beta_p)?, dim);
    let amp_sp = t_s.element(1, 1) * t_p.element(0, 0);

    Ok((amp_hv.norm() - amp_sp.norm()).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fidelity::{fidelity_joint, fidelity_single_photon, fidelity_vacuum};
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn params(q: f64, g: f64) -> TeleportParams {
        TeleportParams::new(q, g).unwrap()
    }

    fn random_qubit(rng: &mut ChaCha8Rng) -> PolarizationQubit {
        let c_h = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let c_v = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let norm = (c_h.norm_sqr() + c_v.norm_sqr()).sqrt();
        PolarizationQubit::new(c_h / norm, c_v / norm).unwrap()
    }

    #[test]
    fn qubit_normalization_enforced() {
        assert!(PolarizationQubit::new(Complex64::ONE, Complex64::ONE).is_err());
        let q = PolarizationQubit::new(
            Complex64::new(0.6, 0.0),
            Complex64::new(0.0, 0.8),
        )
        .unwrap();
        assert!(!q.is_real());
        assert!(PolarizationQubit::horizontal().is_real());
    }

    #[test]
    fn elements_at_zero_outcome() {
        let p = params(0.5, 0.9);
        let m = mode_matrix_elements(&p, &MeasurementOutcome::new(Complex64::ZERO).unwrap());
        let n = p.prefactor();
        assert_abs_diff_eq!(m.t00.re, n, epsilon = 1e-15);
        assert_abs_diff_eq!(m.t11.re, 0.5 * n, epsilon = 1e-15);
        assert_eq!(m.t01, Complex64::ZERO);
        assert_eq!(m.t10, Complex64::ZERO);
    }

    #[test]
    fn elements_match_matrix_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..10 {
            let q = rng.random_range(0.0..0.9);
            let g = rng.random_range(-0.5..1.5);
            let beta = Complex64::new(rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5));
            let p = params(q, g);
            let out = MeasurementOutcome::new(beta).unwrap();
            let m = mode_matrix_elements(&p, &out);
            let t = transfer_operator(&p, &out, 80);
            for (closed, row, col) in [
                (m.t00, 0, 0),
                (m.t01, 0, 1),
                (m.t10, 1, 0),
                (m.t11, 1, 1),
            ] {
                let dev = (closed - t.element(row, col)).norm();
                assert!(dev <= 1e-9, "q={q}, g={g}, beta={beta}, t{row}{col}: {dev:e}");
            }
        }
    }

    #[test]
    fn t00_matches_vacuum_output_overlap() {
        let p = params(0.4, 1.2);
        let beta = Complex64::new(0.7, -0.4);
        let out = MeasurementOutcome::new(beta).unwrap();
        let m = mode_matrix_elements(&p, &out);
        // ⟨0|T|0⟩ = scalar ⟨0|(g-q)β⟩
        match crate::transfer::output_vacuum(&p, &out) {
            crate::transfer::ConditionalOutput::Coherent { scalar, amplitude } => {
                let expected = scalar * (-0.5 * amplitude.norm_sqr()).exp();
                assert!((m.t00 - expected).norm() <= 1e-15);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn joint_numeric_factorizes_for_basis_state() {
        let p = params(0.5, 0.8);
        let spec = QuadratureSpec::gauss_hermite(24).unwrap();
        let numeric =
            joint_fidelity_numeric(&PolarizationQubit::horizontal(), &p, &spec).unwrap();
        let product = fidelity_vacuum(0.5, 0.8).unwrap() * fidelity_single_photon(0.5, 0.8).unwrap();
        assert!((numeric - product).abs() <= 1e-4);
    }

    #[test]
    fn joint_numeric_reference_value() {
        let p = params(0.5, 0.79);
        let qubit = PolarizationQubit::new(
            Complex64::new(FRAC_1_SQRT_2, 0.0),
            Complex64::new(FRAC_1_SQRT_2, 0.0),
        )
        .unwrap();
        let spec = QuadratureSpec::gauss_hermite(24).unwrap();
        let numeric = joint_fidelity_numeric(&qubit, &p, &spec).unwrap();
        assert!((numeric - fidelity_joint(0.5, 0.79).unwrap()).abs() <= 1e-9);
        assert_abs_diff_eq!(numeric, 0.443_741_729_750_056_1, epsilon = 1e-3);
    }

    #[test]
    fn joint_numeric_is_polarization_independent() {
        let p = params(0.25, 1.0);
        let spec = QuadratureSpec::gauss_hermite(24).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let values: Vec<f64> = (0..10)
            .map(|_| joint_fidelity_numeric(&random_qubit(&mut rng), &p, &spec).unwrap())
            .collect();
        let spread = values.iter().cloned().fold(f64::MIN, f64::max)
            - values.iter().cloned().fold(f64::MAX, f64::min);
        assert!(spread <= 1e-4, "spread = {spread:e}");
    }

    #[test]
    fn two_mode_density_normalizes() {
        let p = params(0.5, 0.9);
        let qubit = PolarizationQubit::new(
            Complex64::new(0.6, 0.0),
            Complex64::new(0.0, 0.8),
        )
        .unwrap();
        let s = 1.0 - 0.25;
        let rule = PlaneRule::new(&QuadratureSpec::gauss_hermite(24).unwrap(), s).unwrap();
        let total = rule.integrate_pairs(|bh, bv| {
            two_mode_probability_density(&qubit, &p, bh, bv)
                * (s * (bh.norm_sqr() + bv.norm_sqr())).exp()
        });
        assert!((total - 1.0).abs() <= 1e-4, "total = {total}");
    }

    #[test]
    fn two_mode_density_is_gain_independent() {
        let qubit = PolarizationQubit::horizontal();
        let bh = Complex64::new(0.4, -0.2);
        let bv = Complex64::new(-0.8, 0.5);
        let reference = two_mode_probability_density(&qubit, &params(0.5, 0.3), bh, bv);
        for g in [-0.4, 0.8, 1.3] {
            assert_eq!(
                two_mode_probability_density(&qubit, &params(0.5, g), bh, bv),
                reference
            );
        }
    }

    #[test]
    fn zero_outcome_transfer_ignores_polarization() {
        // T(0,0) is a function of the total photon number, so |H⟩ and |V⟩
        // pick up the same scalar and no cross terms.
        let p = params(0.6, 1.1);
        let zero = MeasurementOutcome::new(Complex64::ZERO).unwrap();
        let m = mode_matrix_elements(&p, &zero);
        let on_h = (m.t11 * m.t00, m.t01 * m.t10); // (⟨H|..|H⟩, ⟨V|..|H⟩)
        let on_v = (m.t00 * m.t11, m.t10 * m.t01);
        assert_eq!(on_h.0, on_v.0);
        assert_eq!(on_h.1, Complex64::ZERO);
        assert_eq!(on_v.1, Complex64::ZERO);
    }

    #[test]
    fn rotation_identity_for_identity_mixing() {
        let p = params(0.5, 0.8);
        let dev = basis_rotation_check(
            &PolarizationQubit::horizontal(),
            &p,
            Complex64::new(0.3, 0.4),
            Complex64::new(-0.6, 0.1),
        )
        .unwrap();
        assert!(dev <= 1e-12, "deviation = {dev:e}");
    }

    #[test]
    fn rotation_identity_for_real_mixings() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let qubits = [
            PolarizationQubit::new(
                Complex64::new(FRAC_1_SQRT_2, 0.0),
                Complex64::new(FRAC_1_SQRT_2, 0.0),
            )
            .unwrap(),
            PolarizationQubit::new(Complex64::new(0.6, 0.0), Complex64::new(0.8, 0.0)).unwrap(),
        ];
        for qubit in &qubits {
            for _ in 0..3 {
                let bh = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                let bv = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                let dev = basis_rotation_check(qubit, &params(0.5, 0.8), bh, bv).unwrap();
                assert!(dev <= 1e-9, "deviation = {dev:e}");
            }
        }
    }

    #[test]
    fn rotation_check_rejects_complex_coefficients() {
        let qubit = PolarizationQubit::new(
            Complex64::new(0.6, 0.0),
            Complex64::new(0.0, 0.8),
        )
        .unwrap();
        assert!(matches!(
            basis_rotation_check(&qubit, &params(0.5, 1.0), Complex64::ONE, Complex64::ONE),
            Err(Error::ComplexQubitCoefficient { .. })
        ));
    }
}
