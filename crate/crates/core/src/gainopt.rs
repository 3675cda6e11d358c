//! Optimal-gain solvers.
//!
//! For coherent inputs of fixed intensity the stationary gain solves a cubic,
//! handled by a Cardano closed form with a residual-based branch choice plus
//! one Newton polish. For the photonic qubit the stationarity condition is a
//! quintic in the tuning variable `h = 1 - g`, solved by sign-scan bracketing
//! and bisection. Every solve is cross-checked against a derivative-free
//! golden-section maximization of the closed-form fidelity; disagreement is
//! an internal-consistency error, not a silent fallback.

use num_complex::Complex64;
#[cfg(feature = "rayon")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fidelity::{fidelity_coherent, fidelity_joint};
use crate::fock::validate_entanglement;

/// Gain that maximizes fidelity for one input family at one `q`, with the
/// evidence: fidelity at the optimum and at unit gain, the improvement, the
/// stationarity residual, and an interval certified to contain the root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalGainResult {
    pub g_opt: f64,
    pub f_opt: f64,
    pub f_unit: f64,
    pub delta_f: f64,
    pub residual: f64,
    pub bracket: (f64, f64),
}

/// The stationarity condition for coherent inputs, carrying the derived
/// scale `a² = (1+q)(1-q)²|α|²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentGainCondition {
    q: f64,
    alpha_sq: f64,
    a_sq: f64,
}

impl CoherentGainCondition {
    pub fn new(q: f64, alpha_sq: f64) -> Result<Self> {
        validate_entanglement(q)?;
        if !alpha_sq.is_finite() || alpha_sq < 0.0 {
            return Err(Error::InvalidIntensity { alpha_sq });
        }
        Ok(Self {
            q,
            alpha_sq,
            a_sq: (1.0 + q) * (1.0 - q) * (1.0 - q) * alpha_sq,
        })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn alpha_sq(&self) -> f64 {
        self.alpha_sq
    }

    pub fn a_sq(&self) -> f64 {
        self.a_sq
    }

    /// Coefficients `(c₂, c₁, c₀)` of the monic stationarity cubic
    /// `g³ + c₂g² + c₁g + c₀ = 0`, i.e. the expanded form of
    /// `(g-q)(1-2qg+g²) - a²(1-g²)`.
    pub fn cubic_coefficients(&self) -> (f64, f64, f64) {
        (
            self.a_sq - 3.0 * self.q,
            1.0 + 2.0 * self.q * self.q,
            -(self.a_sq + self.q),
        )
    }

    pub fn cubic_value(&self, g: f64) -> f64 {
        let (c2, c1, c0) = self.cubic_coefficients();
        ((g + c2) * g + c1) * g + c0
    }

    pub fn cubic_derivative(&self, g: f64) -> f64 {
        let (c2, c1, _) = self.cubic_coefficients();
        (3.0 * g + 2.0 * c2) * g + c1
    }
}

/// Residual of the coherent stationarity condition,
/// `(g-q)(1-2qg+g²) - (1+q)(1-q)²(1-g²)|α|²`.
///
/// Zero exactly at the stationary points of the coherent fidelity in `g`,
/// and `sign(residual) = -sign(dF/dg)` elsewhere. The compact intensity form
/// of the condition has poles at `g = ±1`, so those two points are rejected;
/// evaluate `dF/dg` directly there instead.
pub fn stationarity_residual_coherent(q: f64, g: f64, alpha_sq: f64) -> Result<f64> {
    let cond = CoherentGainCondition::new(q, alpha_sq)?;
    if !g.is_finite() {
        return Err(Error::NonFiniteGain { g });
    }
    if g == 1.0 || g == -1.0 {
        return Err(Error::GainConditionPole { g });
    }
    let w = 1.0 - 2.0 * q * g + g * g;
    Ok((g - q) * w - cond.a_sq() * (1.0 - g * g))
}

/// All three roots of the monic cubic `g³ + c₂g² + c₁g + c₀` via the
/// `g = (A + B/D + D)/3` closed form, evaluated with complex principal
/// roots over all three cube-root branches.
fn cardano_roots(c2: f64, c1: f64, c0: f64) -> [Complex64; 3] {
    let a = -c2;
    let b = a * a - 3.0 * c1;
    let c = a * a * a - 4.5 * a * c1 - 13.5 * c0;
    let z = Complex64::new(c, 0.0) + Complex64::new(c * c - b * b * b, 0.0).sqrt();
    if z.norm() < 1e-250 {
        // triple root
        return [Complex64::new(a / 3.0, 0.0); 3];
    }
    let mut d = z.powf(1.0 / 3.0);
    let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let mut roots = [Complex64::ZERO; 3];
    for root in &mut roots {
        *root = (a + b / d + d) / 3.0;
        d *= omega;
    }
    roots
}

/// Shrink `[lo, hi]` around a sign change of `f` by bisection. Requires
/// opposite signs at the endpoints.
fn bisect_root(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> (f64, f64) {
    let mut f_lo = f(lo);
    for _ in 0..iters {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return (mid, mid);
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Argmax of a unimodal `f` on `[a, b]` by golden-section search.
pub(crate) fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Central finite difference `(f(x+h) - f(x-h)) / 2h`.
pub(crate) fn central_difference(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

const GOLDEN_TOL: f64 = 1e-8;
const CROSS_CHECK_TOL: f64 = 1e-6;

/// Gain maximizing the coherent fidelity at fixed intensity `|α|²`.
///
/// Solves the stationarity cubic for the unique root in `[q, 1)`: Cardano
/// closed form, residual-based branch selection, one Newton polish, and a
/// bisection-certified bracket. The result is cross-checked against a
/// golden-section maximization of the closed-form fidelity.
pub fn optimal_gain_coherent(q: f64, alpha_sq: f64) -> Result<OptimalGainResult> {
    let cond = CoherentGainCondition::new(q, alpha_sq)?;
    let alpha_mag = alpha_sq.sqrt();
    let f_unit = fidelity_coherent(q, 1.0, alpha_mag)?;

    if alpha_sq == 0.0 {
        // vacuum member of the family: the root is g = q exactly
        let f_opt = fidelity_coherent(q, q, 0.0)?;
        return Ok(OptimalGainResult {
            g_opt: q,
            f_opt,
            f_unit,
            delta_f: f_opt - f_unit,
            residual: 0.0,
            bracket: (q, q),
        });
    }

    let (c2, c1, c0) = cond.cubic_coefficients();
    let mut candidate: Option<f64> = None;
    for root in cardano_roots(c2, c1, c0) {
        if root.im.abs() > 1e-6 * (1.0 + root.re.abs()) {
            continue;
        }
        let mut g = root.re;
        if !(q - 1e-9..=1.0).contains(&g) {
            continue;
        }
        for _ in 0..3 {
            let df = cond.cubic_derivative(g);
            if df == 0.0 {
                break;
            }
            g -= cond.cubic_value(g) / df;
        }
        let better = match candidate {
            Some(best) => cond.cubic_value(g).abs() < cond.cubic_value(best).abs(),
            None => true,
        };
        if better {
            candidate = Some(g);
        }
    }
    let g_opt = candidate.ok_or_else(|| Error::SolverDisagreement {
        detail: format!("no real cubic root in [q, 1] for q = {q}, |alpha|^2 = {alpha_sq}"),
    })?;

    // The cubic is strictly increasing on [q, 1] with a sign change, so
    // bisection certifies an enclosure of the same root.
    let (lo, hi) = bisect_root(|g| cond.cubic_value(g), q, 1.0, 80);
    let bracket = (lo.min(g_opt), hi.max(g_opt));

    let g_golden = golden_max(
        |g| fidelity_coherent(q, g, alpha_mag).unwrap_or(0.0),
        q,
        1.0,
        GOLDEN_TOL,
    );
    if (g_golden - g_opt).abs() > CROSS_CHECK_TOL {
        return Err(Error::SolverDisagreement {
            detail: format!(
                "cubic root {g_opt} vs golden-section argmax {g_golden} at q = {q}, |alpha|^2 = {alpha_sq}"
            ),
        });
    }

    let residual = stationarity_residual_coherent(q, g_opt, alpha_sq)
        .unwrap_or_else(|_| cond.cubic_value(g_opt))
        .abs();
    let f_opt = fidelity_coherent(q, g_opt, alpha_mag)?;
    Ok(OptimalGainResult {
        g_opt,
        f_opt,
        f_unit,
        delta_f: f_opt - f_unit,
        residual,
        bracket,
    })
}

/// Stationarity polynomial of the joint qubit fidelity in the gain-tuning
/// variable `h = 1 - g`:
///
/// ```text
/// 2q²h⁵ + 5q(1-q)²h⁴ + 2(3-10q+13q²-10q³+4q⁴)h³
///   - 2(1-q)²(9-q+8q²-2q³)h² + 4(1-q)²(4-q+3q²-2q³)h - 4(1-q)³(1+q²) = 0
/// ```
pub fn joint_gain_quintic(q: f64, h: f64) -> f64 {
    let q2 = q * q;
    let q3 = q2 * q;
    let q4 = q2 * q2;
    let omq2 = (1.0 - q) * (1.0 - q);
    let c5 = 2.0 * q2;
    let c4 = 5.0 * q * omq2;
    let c3 = 2.0 * (3.0 - 10.0 * q + 13.0 * q2 - 10.0 * q3 + 4.0 * q4);
    let c2 = -2.0 * omq2 * (9.0 - q + 8.0 * q2 - 2.0 * q3);
    let c1 = 4.0 * omq2 * (4.0 - q + 3.0 * q2 - 2.0 * q3);
    let c0 = -4.0 * omq2 * (1.0 - q) * (1.0 + q2);
    (((((c5 * h + c4) * h + c3) * h + c2) * h + c1) * h) + c0
}

fn joint_gain_quintic_derivative(q: f64, h: f64) -> f64 {
    let q2 = q * q;
    let q3 = q2 * q;
    let q4 = q2 * q2;
    let omq2 = (1.0 - q) * (1.0 - q);
    let c5 = 2.0 * q2;
    let c4 = 5.0 * q * omq2;
    let c3 = 2.0 * (3.0 - 10.0 * q + 13.0 * q2 - 10.0 * q3 + 4.0 * q4);
    let c2 = -2.0 * omq2 * (9.0 - q + 8.0 * q2 - 2.0 * q3);
    let c1 = 4.0 * omq2 * (4.0 - q + 3.0 * q2 - 2.0 * q3);
    (((5.0 * c5 * h + 4.0 * c4) * h + 3.0 * c3) * h + 2.0 * c2) * h + c1
}

const QUINTIC_SCAN: usize = 1000;
const QUINTIC_RESIDUAL_TOL: f64 = 1e-12;

/// Gain maximizing the joint qubit fidelity at entanglement `q`.
///
/// Sign-scans the quintic on a 10⁻³-spaced `h` grid over `(0, 1)`, bisects
/// each bracket, Newton-polishes, keeps the root that maximizes the joint
/// fidelity, and cross-checks against a golden-section maximization on
/// `g ∈ [0, 1]`.
pub fn optimal_gain_joint(q: f64) -> Result<OptimalGainResult> {
    validate_entanglement(q)?;

    let mut candidates: Vec<(f64, (f64, f64))> = Vec::new();
    let mut prev_h = 0.0;
    let mut prev_v = joint_gain_quintic(q, 0.0); // strictly negative for q < 1
    for i in 1..=QUINTIC_SCAN {
        let h = i as f64 / QUINTIC_SCAN as f64;
        let v = joint_gain_quintic(q, h);
        if v == 0.0 {
            candidates.push((h, (h, h)));
        } else if prev_v != 0.0 && (v < 0.0) != (prev_v < 0.0) {
            let (lo, hi) = bisect_root(|x| joint_gain_quintic(q, x), prev_h, h, 80);
            let mut root = 0.5 * (lo + hi);
            for _ in 0..3 {
                let df = joint_gain_quintic_derivative(q, root);
                if df == 0.0 {
                    break;
                }
                root -= joint_gain_quintic(q, root) / df;
            }
            candidates.push((root, (lo, hi)));
        }
        prev_h = h;
        prev_v = v;
    }
    if candidates.is_empty() {
        return Err(Error::BracketNotFound { q });
    }

    let mut best = candidates[0];
    let mut best_f = f64::NEG_INFINITY;
    for cand in &candidates {
        let f = fidelity_joint(q, 1.0 - cand.0)?;
        if f > best_f {
            best_f = f;
            best = *cand;
        }
    }
    let (h_opt, (h_lo, h_hi)) = best;
    let residual = joint_gain_quintic(q, h_opt).abs();
    if residual > QUINTIC_RESIDUAL_TOL {
        return Err(Error::SolverDisagreement {
            detail: format!("quintic residual {residual:e} above {QUINTIC_RESIDUAL_TOL:e} at q = {q}"),
        });
    }
    let g_opt = 1.0 - h_opt;

    let g_golden = golden_max(|g| fidelity_joint(q, g).unwrap_or(0.0), 0.0, 1.0, GOLDEN_TOL);
    if (g_golden - g_opt).abs() > CROSS_CHECK_TOL {
        return Err(Error::SolverDisagreement {
            detail: format!("quintic root {g_opt} vs golden-section argmax {g_golden} at q = {q}"),
        });
    }

    let bracket = ((1.0 - h_hi).min(g_opt), (1.0 - h_lo).max(g_opt));
    let f_opt = fidelity_joint(q, g_opt)?;
    let f_unit = fidelity_joint(q, 1.0)?;
    Ok(OptimalGainResult {
        g_opt,
        f_opt,
        f_unit,
        delta_f: f_opt - f_unit,
        residual,
        bracket,
    })
}

/// Linear shortcut for the optimal qubit gain, `g_opt(q) ≈ 0.6 + 0.4q`.
/// Within 0.03 of the quintic solution across `q ∈ [0, 0.9]`.
pub fn rule_of_thumb_gain(q: f64) -> Result<f64> {
    validate_entanglement(q)?;
    Ok(0.6 + 0.4 * q)
}

/// Which one-parameter family of inputs a gain-tuning sweep is for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InputFamily {
    /// Coherent states of fixed intensity and arbitrary phase.
    CoherentFixedAmp { alpha_sq: f64 },
    /// A single photon split over two polarization modes.
    PhotonicQubit,
}

/// One row of a gain-tuning improvement table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImprovementRow {
    pub q: f64,
    pub g_opt: f64,
    pub f_opt: f64,
    pub f_unit: f64,
    pub delta_f: f64,
    pub residual: f64,
}

/// Per-`q` optimal-gain rows for a family, ordered like `q_grid`. Rows are
/// independent, so they are solved on parallel workers when the `rayon`
/// feature is on and assembled back in grid order.
pub fn improvement_table(family: InputFamily, q_grid: &[f64]) -> Result<Vec<ImprovementRow>> {
    for &q in q_grid {
        validate_entanglement(q)?;
    }
    let solve = |q: f64| -> Result<ImprovementRow> {
        let r = match family {
            InputFamily::CoherentFixedAmp { alpha_sq } => optimal_gain_coherent(q, alpha_sq)?,
            InputFamily::PhotonicQubit => optimal_gain_joint(q)?,
        };
        Ok(ImprovementRow {
            q,
            g_opt: r.g_opt,
            f_opt: r.f_opt,
            f_unit: r.f_unit,
            delta_f: r.delta_f,
            residual: r.residual,
        })
    };
    #[cfg(feature = "rayon")]
    {
        q_grid.par_iter().map(|&q| solve(q)).collect()
    }
    #[cfg(not(feature = "rayon"))]
    {
        q_grid.iter().map(|&q| solve(q)).collect()
    }
}
