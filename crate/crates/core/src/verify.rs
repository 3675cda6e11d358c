//! Named verification suites: oracle, gradient, normalization, polarization.
//!
//! Each suite produces structured [`CheckResult`]s (measured deviation vs
//! tolerance) so callers can render per-check lines and exit codes however
//! they like. Randomized checks draw from ChaCha8 seeded by the config, so
//! failures are reproducible.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::fidelity::{
    fidelity_coherent, fidelity_joint, fidelity_oracle, fidelity_single_photon, fidelity_vacuum,
    InputSpec,
};
use crate::gainopt::{
    central_difference, optimal_gain_coherent, optimal_gain_joint, stationarity_residual_coherent,
};
use crate::polarization::{
    basis_rotation_check, joint_fidelity_numeric, two_mode_probability_density, PolarizationQubit,
};
use crate::quad::{PlaneRule, QuadratureSpec};
use crate::transfer::{probability_density, MeasurementOutcome, TeleportParams};

/// Which checks to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Oracle,
    Gradient,
    Normalization,
    Polarization,
    All,
}

/// Knobs shared by the suites.
#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    /// Truncation dimension for matrix-path checks.
    pub dim: usize,
    /// Points per axis for single-plane quadratures.
    pub quad_points: usize,
    /// Points per axis for the four-dimensional two-mode quadratures.
    pub two_mode_points: usize,
    /// Seed for the randomized draws (ChaCha8).
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            dim: 80,
            quad_points: 48,
            two_mode_points: 24,
            seed: 0,
        }
    }
}

/// One verification check: a measured deviation against its tolerance.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub deviation: f64,
    pub tolerance: f64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.deviation.is_finite() && self.deviation <= self.tolerance
    }
}

/// The outcome of a suite run: checks plus informational notes.
#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
    pub infos: Vec<String>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    fn push(&mut self, name: impl Into<String>, deviation: f64, tolerance: f64) {
        self.checks.push(CheckResult {
            name: name.into(),
            deviation,
            tolerance,
        });
    }
}

const GRID_Q: [f64; 4] = [0.0, 0.25, 0.5, 0.75];
const GRID_G: [f64; 4] = [0.3, 0.7, 1.0, 1.3];

/// Run a suite and collect its checks.
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    match suite {
        Suite::Oracle => oracle_suite(cfg, &mut report)?,
        Suite::Gradient => gradient_suite(cfg, &mut report)?,
        Suite::Normalization => normalization_suite(cfg, &mut report)?,
        Suite::Polarization => polarization_suite(cfg, &mut report)?,
        Suite::All => {
            oracle_suite(cfg, &mut report)?;
            gradient_suite(cfg, &mut report)?;
            normalization_suite(cfg, &mut report)?;
            polarization_suite(cfg, &mut report)?;
        }
    }
    report.infos.push(qubit_reference_discrepancy_note()?);
    Ok(report)
}

/// The one known discrepancy worth surfacing on every run: the qubit-family
/// optimum at q = 0 evaluates to 2(1/3)/(4/3)^4 = 0.2109, not the 0.221
/// sometimes quoted for it. The closed-form value is what this crate reports.
fn qubit_reference_discrepancy_note() -> Result<String> {
    let r = optimal_gain_joint(0.0)?;
    Ok(format!(
        "info: qubit optimum at q = 0: F_opt = {:.6} from the closed form 2(1/3)/(4/3)^4; \
         the quoted reference value 0.221 differs by {:.4} and is not reproduced",
        r.f_opt,
        (0.221 - r.f_opt).abs()
    ))
}

fn oracle_suite(cfg: &VerifyConfig, report: &mut VerifyReport) -> Result<()> {
    let spec = QuadratureSpec::gauss_hermite(cfg.quad_points)?;
    let cases: [(&str, InputSpec); 3] = [
        ("vacuum", InputSpec::Vacuum),
        ("single-photon", InputSpec::SinglePhoton),
        ("coherent", InputSpec::Coherent(Complex64::ONE)),
    ];
    for (name, input) in cases {
        let mut dev = 0.0f64;
        for q in GRID_Q {
            for g in GRID_G {
                let closed = match input {
                    InputSpec::Vacuum => fidelity_vacuum(q, g)?,
                    InputSpec::SinglePhoton => fidelity_single_photon(q, g)?,
                    InputSpec::Coherent(alpha) => fidelity_coherent(q, g, alpha.norm())?,
                    InputSpec::PolarizationQubit { .. } => unreachable!(),
                };
                let numeric = fidelity_oracle(&input, q, g, &spec)?;
                dev = dev.max((closed - numeric).abs());
            }
        }
        report.push(format!("oracle/{name}"), dev, 1e-6);
    }

    // conditional outputs: truncated transfer matrix vs closed forms
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(2));
    let mut dev = 0.0f64;
    for _ in 0..20 {
        let q = rng.random_range(0.0..0.9);
        let g = rng.random_range(-0.5..1.5);
        let p = TeleportParams::new(q, g)?;
        let beta = Complex64::new(rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5));
        let outcome = MeasurementOutcome::new(beta)?;
        let t = crate::transfer::transfer_operator(&p, &outcome, cfg.dim);
        let (input, vector) = match rng.random_range(0..3u32) {
            0 => {
                let alpha =
                    Complex64::new(rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5));
                (
                    InputSpec::Coherent(alpha),
                    crate::fock::coherent_state(alpha, cfg.dim).0,
                )
            }
            1 => (
                InputSpec::Vacuum,
                crate::fock::coherent_state(Complex64::ZERO, cfg.dim).0,
            ),
            _ => (
                InputSpec::SinglePhoton,
                crate::fock::number_state(1, cfg.dim)?,
            ),
        };
        let via_matrix = t.apply(&vector)?;
        let closed = crate::transfer::conditional_output(&input, &p, &outcome)?
            .to_fock_vector(cfg.dim);
        dev = dev.max(via_matrix.max_abs_diff(&closed)?);
    }
    report.push("oracle/matrix-path", dev, 1e-8);
    Ok(())
}

fn gradient_suite(cfg: &VerifyConfig, report: &mut VerifyReport) -> Result<()> {
    // residual sign vs central-difference slope at 30 random points
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut mismatches = 0u32;
    let mut checked = 0;
    while checked < 30 {
        let q = rng.random_range(0.0..0.95);
        let g: f64 = rng.random_range(-1.5..1.5);
        let alpha_sq = rng.random_range(0.0..4.0);
        if (g.abs() - 1.0).abs() < 1e-3 {
            continue;
        }
        let residual = stationarity_residual_coherent(q, g, alpha_sq)?;
        if residual.abs() < 1e-4 {
            // too close to stationarity for the FD sign to be meaningful
            continue;
        }
        let slope = central_difference(
            |x| fidelity_coherent(q, x, alpha_sq.sqrt()).unwrap(),
            g,
            1e-6,
        );
        if (residual > 0.0) != (slope < 0.0) {
            mismatches += 1;
        }
        checked += 1;
    }
    report.push("gradient/sign-consistency", f64::from(mismatches), 0.0);

    // |dF/dg| at every solver output on a q grid
    let qs: Vec<f64> = (0..=9).map(|i| i as f64 / 10.0).collect();
    let mut dev = 0.0f64;
    for &q in &qs {
        for alpha_sq in [0.5, 1.0, 12.0] {
            let g = optimal_gain_coherent(q, alpha_sq)?.g_opt;
            let slope = central_difference(
                |x| fidelity_coherent(q, x, alpha_sq.sqrt()).unwrap(),
                g,
                1e-6,
            );
            dev = dev.max(slope.abs());
        }
    }
    report.push("gradient/coherent-stationary-slope", dev, 1e-6);

    let mut dev = 0.0f64;
    for &q in &qs {
        let g = optimal_gain_joint(q)?.g_opt;
        let slope = central_difference(|x| fidelity_joint(q, x).unwrap(), g, 1e-6);
        dev = dev.max(slope.abs());
    }
    report.push("gradient/qubit-stationary-slope", dev, 1e-6);
    Ok(())
}

fn normalization_suite(cfg: &VerifyConfig, report: &mut VerifyReport) -> Result<()> {
    let cases: [(&str, InputSpec); 3] = [
        ("vacuum", InputSpec::Vacuum),
        ("single-photon", InputSpec::SinglePhoton),
        ("coherent", InputSpec::Coherent(Complex64::ONE)),
    ];
    for (name, input) in cases {
        let mut dev = 0.0f64;
        for q in GRID_Q {
            for g in GRID_G {
                let p = TeleportParams::new(q, g)?;
                let s = 1.0 - q * q;
                let rule = PlaneRule::new(&QuadratureSpec::gauss_hermite(cfg.quad_points)?, s)?;
                let reduced = |beta: Complex64| {
                    let density =
                        probability_density(&input, &p, &MeasurementOutcome::new(beta).unwrap())
                            .unwrap();
                    (density.ln() + s * beta.norm_sqr()).exp()
                };
                #[cfg(feature = "rayon")]
                let total = rule.par_integrate(reduced);
                #[cfg(not(feature = "rayon"))]
                let total = rule.integrate(reduced);
                dev = dev.max((total - 1.0).abs());
            }
        }
        report.push(format!("normalization/{name}"), dev, 1e-8);
    }

    // two-mode version
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(1));
    let qubit = random_qubit(&mut rng);
    let mut dev = 0.0f64;
    for (q, g) in [(0.25, 1.0), (0.5, 0.79)] {
        let p = TeleportParams::new(q, g)?;
        let s = 1.0 - q * q;
        let rule = PlaneRule::new(&QuadratureSpec::gauss_hermite(cfg.two_mode_points)?, s)?;
        let reduced = |a: Complex64, b: Complex64| {
            let density = two_mode_probability_density(&qubit, &p, a, b);
            (density.ln() + s * (a.norm_sqr() + b.norm_sqr())).exp()
        };
        #[cfg(feature = "rayon")]
        let total = rule.par_integrate_pairs(reduced);
        #[cfg(not(feature = "rayon"))]
        let total = rule.integrate_pairs(reduced);
        dev = dev.max((total - 1.0).abs());
    }
    report.push("normalization/two-mode", dev, 1e-4);
    Ok(())
}

fn random_qubit(rng: &mut ChaCha8Rng) -> PolarizationQubit {
    loop {
        let c_h = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let c_v = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let norm = (c_h.norm_sqr() + c_v.norm_sqr()).sqrt();
        if norm > 1e-3 {
            return PolarizationQubit::new(c_h / norm, c_v / norm)
                .expect("normalized by construction");
        }
    }
}

fn polarization_suite(cfg: &VerifyConfig, report: &mut VerifyReport) -> Result<()> {
    let spec = QuadratureSpec::gauss_hermite(cfg.two_mode_points)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut spread_dev = 0.0f64;
    let mut product_dev = 0.0f64;
    for (q, g) in [(0.5, 0.79), (0.25, 1.0), (0.75, 0.9)] {
        let p = TeleportParams::new(q, g)?;
        let product = fidelity_vacuum(q, g)? * fidelity_single_photon(q, g)?;
        let values: Vec<f64> = (0..10)
            .map(|_| joint_fidelity_numeric(&random_qubit(&mut rng), &p, &spec))
            .collect::<Result<_>>()?;
        let max = values.iter().cloned().fold(f64::MIN, f64::max);
        let min = values.iter().cloned().fold(f64::MAX, f64::min);
        spread_dev = spread_dev.max(max - min);
        for v in values {
            product_dev = product_dev.max((v - product).abs());
        }
    }
    report.push("polarization/independence-spread", spread_dev, 1e-4);
    report.push("polarization/product-agreement", product_dev, 1e-4);

    // matrix-path rotation identity for real mixings
    let mut dev = 0.0f64;
    let real_qubits = [
        PolarizationQubit::horizontal(),
        PolarizationQubit::new(
            Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        )?,
        PolarizationQubit::new(Complex64::new(0.6, 0.0), Complex64::new(0.8, 0.0))?,
    ];
    let p = TeleportParams::new(0.5, 0.8)?;
    for qubit in &real_qubits {
        for _ in 0..3 {
            let bh = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let bv = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            dev = dev.max(basis_rotation_check(qubit, &p, bh, bv)?);
        }
    }
    report.push("polarization/basis-rotation", dev, 1e-9);
    Ok(())
}
