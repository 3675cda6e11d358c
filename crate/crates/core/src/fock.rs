//! Truncated Fock-space linear algebra: number states, coherent states,
//! displacement operators, and the two-mode entangled resource state.
//!
//! Everything works in the photon-number basis cut off at a finite dimension.
//! Constructors of normalized states return the state together with the
//! truncation tail they dropped, so callers can size the basis instead of
//! guessing. All values are immutable after construction and all operations
//! are pure functions.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default truncation dimension for the amplitude magnitudes at play.
///
/// Sized so coherent-state tails stay below 1e-12 in operator/state
/// comparisons: `max(40, ceil(8 (|alpha| + |beta| + 1)^2))`.
pub fn default_dim(alpha_mag: f64, beta_mag: f64) -> usize {
    let r = alpha_mag.abs() + beta_mag.abs() + 1.0;
    40usize.max((8.0 * r * r).ceil() as usize)
}

/// Validate an entanglement parameter: finite and in `[0, 1)`.
///
/// `q = 1` is rejected rather than approximated; callers wanting
/// "near-maximal" should use `q <= 1 - 1e-6`.
pub fn validate_entanglement(q: f64) -> Result<()> {
    if !q.is_finite() || !(0.0..1.0).contains(&q) {
        return Err(Error::EntanglementOutOfRange { q });
    }
    Ok(())
}

/// Map a squeezing parameter `r >= 0` to the entanglement parameter
/// `q = tanh(r) ∈ [0, 1)`.
///
/// `tanh` rounds to 1.0 for r ≳ 19, which would leave the valid domain, so
/// the result is capped at the largest double below one.
pub fn squeezing_to_q(r: f64) -> Result<f64> {
    if !r.is_finite() || r < 0.0 {
        return Err(Error::InvalidSqueezing { r });
    }
    Ok(r.tanh().min(1.0 - f64::EPSILON / 2.0))
}

/// A single-mode state vector in the truncated photon-number basis.
///
/// Index `n` holds the amplitude of `|n⟩`, `n = 0 .. dim-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    amps: Vec<Complex64>,
}

impl FockVector {
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() || amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::InvalidAmplitudes);
        }
        Ok(Self { amps })
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitude(&self, n: usize) -> Complex64 {
        self.amps[n]
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            amps: self.amps.iter().map(|a| a * c).collect(),
        }
    }

    /// Largest entrywise difference to another vector of the same dimension.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

/// Basis ket `|n⟩` in a `dim`-dimensional truncation.
pub fn number_state(n: usize, dim: usize) -> Result<FockVector> {
    if n >= dim {
        return Err(Error::PhotonNumberOutOfRange { n, dim });
    }
    let mut amps = vec![Complex64::ZERO; dim];
    amps[n] = Complex64::ONE;
    Ok(FockVector { amps })
}

/// Coherent state `|α⟩` with amplitudes `e^{-|α|²/2} αⁿ/√(n!)`.
///
/// Returns the truncated state and the tail mass `1 - Σ|cₙ|²` it drops.
/// A large `|α|` with a small `dim` yields a large reported tail, not an
/// error.
pub fn coherent_state(alpha: Complex64, dim: usize) -> (FockVector, f64) {
    assert!(dim >= 1, "truncation dimension must be at least 1");
    let mut amps = Vec::with_capacity(dim);
    let mut c = Complex64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    amps.push(c);
    for n in 1..dim {
        c *= alpha / (n as f64).sqrt();
        amps.push(c);
    }
    let tail = (1.0 - amps.iter().map(|a| a.norm_sqr()).sum::<f64>()).max(0.0);
    (FockVector { amps }, tail)
}

/// Hermitian inner product `⟨a|b⟩ = Σ aₙ* bₙ`.
pub fn inner_product(a: &FockVector, b: &FockVector) -> Result<Complex64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(a.amps
        .iter()
        .zip(&b.amps)
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// A dense operator on the truncated photon-number basis, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    dim: usize,
    elems: Vec<Complex64>,
}

impl FockOperator {
    pub fn identity(dim: usize) -> Self {
        assert!(dim >= 1, "operator dimension must be at least 1");
        let mut elems = vec![Complex64::ZERO; dim * dim];
        for n in 0..dim {
            elems[n * dim + n] = Complex64::ONE;
        }
        Self { dim, elems }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!(dim >= 1, "operator dimension must be at least 1");
        let mut elems = Vec::with_capacity(dim * dim);
        for row in 0..dim {
            for col in 0..dim {
                elems.push(f(row, col));
            }
        }
        let op = Self { dim, elems };
        assert!(op.is_finite(), "operator entries must be finite");
        op
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Matrix element `⟨row| Ô |col⟩`.
    pub fn element(&self, row: usize, col: usize) -> Complex64 {
        self.elems[row * self.dim + col]
    }

    pub fn is_finite(&self) -> bool {
        self.elems
            .iter()
            .all(|e| e.re.is_finite() && e.im.is_finite())
    }

    pub fn column(&self, col: usize) -> FockVector {
        FockVector {
            amps: (0..self.dim).map(|row| self.element(row, col)).collect(),
        }
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            dim: self.dim,
            elems: self.elems.iter().map(|e| e * c).collect(),
        }
    }

    /// Scale column `n` by `f(n)`, i.e. right-multiply by `diag(f(n))`.
    pub fn scale_columns(&self, f: impl Fn(usize) -> f64) -> Self {
        let mut elems = self.elems.clone();
        for row in 0..self.dim {
            for col in 0..self.dim {
                elems[row * self.dim + col] *= f(col);
            }
        }
        Self {
            dim: self.dim,
            elems,
        }
    }

    /// Apply the operator to a state vector.
    pub fn apply(&self, v: &FockVector) -> Result<FockVector> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: v.dim(),
            });
        }
        let amps = (0..self.dim)
            .map(|row| {
                self.elems[row * self.dim..(row + 1) * self.dim]
                    .iter()
                    .zip(&v.amps)
                    .map(|(m, a)| m * a)
                    .sum()
            })
            .collect();
        Ok(FockVector { amps })
    }

    /// Matrix product `self · rhs`.
    pub fn compose(&self, rhs: &FockOperator) -> Result<FockOperator> {
        if rhs.dim != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let dim = self.dim;
        let mut elems = vec![Complex64::ZERO; dim * dim];
        for row in 0..dim {
            for k in 0..dim {
                let a = self.elems[row * dim + k];
                if a == Complex64::ZERO {
                    continue;
                }
                let rhs_row = &rhs.elems[k * dim..(k + 1) * dim];
                let out_row = &mut elems[row * dim..(row + 1) * dim];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        Ok(FockOperator { dim, elems })
    }

    pub fn max_abs_diff(&self, other: &FockOperator) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(self
            .elems
            .iter()
            .zip(&other.elems)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

/// Displacement operator `D̂(β)` in the truncated basis.
///
/// For `m >= n` the element is the associated-Laguerre closed form
/// `√(n!/m!) β^{m-n} e^{-|β|²/2} L_n^{(m-n)}(|β|²)`; for `m < n` it follows
/// from `⟨m|D̂(β)|n⟩ = ⟨n|D̂(-β)|m⟩*`. The Laguerre values come from the
/// three-term recurrence in `n` along each diagonal, and the factorial ratio
/// is assembled in log space so nothing overflows before n ≈ 170.
pub fn displacement_operator(beta: Complex64, dim: usize) -> FockOperator {
    assert!(dim >= 1, "truncation dimension must be at least 1");
    let x = beta.norm_sqr();
    if x == 0.0 {
        return FockOperator::identity(dim);
    }

    let mut ln_fact = vec![0.0f64; dim];
    for n in 1..dim {
        ln_fact[n] = ln_fact[n - 1] + (n as f64).ln();
    }
    let ln_mag = beta.norm().ln();
    let phase = beta / beta.norm();

    let mut elems = vec![Complex64::ZERO; dim * dim];
    for k in 0..dim {
        let kf = k as f64;
        let phase_k = phase.powu(k as u32);
        let mirror_phase = if k % 2 == 0 {
            phase_k.conj()
        } else {
            -phase_k.conj()
        };
        // L_n^{(k)}(x) upward in n along the diagonal m = n + k
        let mut l_prev = 0.0f64;
        let mut l_cur = 1.0f64;
        for n in 0..dim - k {
            let m = n + k;
            let ln_pref = 0.5 * (ln_fact[n] - ln_fact[m]) + kf * ln_mag - 0.5 * x;
            let common = ln_pref.exp() * l_cur;
            elems[m * dim + n] = common * phase_k;
            if k > 0 {
                elems[n * dim + m] = common * mirror_phase;
            }
            let nf = n as f64;
            let l_next = ((2.0 * nf + 1.0 + kf - x) * l_cur - (nf + kf) * l_prev) / (nf + 1.0);
            l_prev = l_cur;
            l_cur = l_next;
        }
    }
    FockOperator { dim, elems }
}

/// A two-mode state vector indexed by `(n₁, n₂)`, each mode truncated at `dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeVector {
    dim: usize,
    amps: Vec<Complex64>,
}

impl TwoModeVector {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn amplitude(&self, n1: usize, n2: usize) -> Complex64 {
        self.amps[n1 * self.dim + n2]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// Two-mode entangled resource state `√(1-q²) Σ qⁿ |n⟩|n⟩`, truncated per
/// mode at `dim`. Returns the state and the dropped tail mass `q^(2 dim)`.
///
/// `q = 0` is the uncorrelated vacuum in both modes.
pub fn epr_state(q: f64, dim: usize) -> Result<(TwoModeVector, f64)> {
    validate_entanglement(q)?;
    assert!(dim >= 1, "truncation dimension must be at least 1");
    let mut amps = vec![Complex64::ZERO; dim * dim];
    let mut c = (1.0 - q * q).sqrt();
    for n in 0..dim {
        amps[n * dim + n] = Complex64::new(c, 0.0);
        c *= q;
    }
    let tail = q.powi(2 * dim as i32);
    Ok((TwoModeVector { dim, amps }, tail))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const EXP_HALF_NEG: f64 = 0.606_530_659_712_633_4; // e^(-1/2)

    #[test]
    fn number_state_basis() {
        let v = number_state(0, 4).unwrap();
        assert_eq!(v.amplitudes(), &[
            Complex64::ONE,
            Complex64::ZERO,
            Complex64::ZERO,
            Complex64::ZERO
        ]);
        let v = number_state(1, 4).unwrap();
        assert_eq!(v.amplitude(1), Complex64::ONE);
        assert_eq!(v.norm_sqr(), 1.0);
        assert!(matches!(
            number_state(5, 4),
            Err(Error::PhotonNumberOutOfRange { n: 5, dim: 4 })
        ));
    }

    #[test]
    fn coherent_vacuum_limit() {
        let (v, tail) = coherent_state(Complex64::ZERO, 6);
        assert_eq!(v.amplitude(0), Complex64::ONE);
        assert_eq!(v.amplitudes()[1..], vec![Complex64::ZERO; 5]);
        assert_eq!(tail, 0.0);
    }

    #[test]
    fn coherent_unit_amplitude() {
        let (v, tail) = coherent_state(Complex64::ONE, 20);
        assert_abs_diff_eq!(v.amplitude(0).re, EXP_HALF_NEG, epsilon = 1e-15);
        assert_abs_diff_eq!(v.amplitude(1).re, EXP_HALF_NEG, epsilon = 1e-15);
        // the dropped Poisson tail beyond n = 19 is ~1.6e-19
        assert!(tail < 1e-15, "tail = {tail:e}");
    }

    #[test]
    fn coherent_amplitudes_match_series() {
        // ⟨n|α⟩ = e^{-|α|²/2} αⁿ/√(n!) with the factorial as a literal product
        let alpha = Complex64::new(0.8, -0.3);
        let (v, _) = coherent_state(alpha, 25);
        let pref = (-0.5 * alpha.norm_sqr()).exp();
        let mut fact = 1.0;
        for n in 0..25 {
            if n > 0 {
                fact *= n as f64;
            }
            let expected = alpha.powu(n as u32) * pref / fact.sqrt();
            assert!((v.amplitude(n) - expected).norm() <= 1e-15 * (1.0 + expected.norm()));
        }
    }

    #[test]
    fn displacement_of_zero_is_identity() {
        let d = displacement_operator(Complex64::ZERO, 8);
        assert_eq!(d, FockOperator::identity(8));
    }

    #[test]
    fn displacement_column_zero_is_coherent() {
        for beta in [Complex64::new(0.5, 0.0), Complex64::new(1.0, 1.0)] {
            let d = displacement_operator(beta, 40);
            let (coh, _) = coherent_state(beta, 40);
            let dev = d.column(0).max_abs_diff(&coh).unwrap();
            assert!(dev <= 1e-12, "beta = {beta}, deviation = {dev:e}");
        }
    }

    #[test]
    fn displacement_inverse_on_leading_block() {
        // D(β)|n⟩ spreads over ~|β|√n photon numbers, so the block that
        // survives truncation shrinks with |β|√dim; these block sizes carry
        // a margin below the measured 1e-8 boundary at dim 60.
        let dim = 60;
        for (beta, block) in [
            (Complex64::new(1.5, 0.0), 24),
            (Complex64::new(0.0, 2.0), 18),
            (Complex64::new(1.0, 1.0), 25),
        ] {
            let prod = displacement_operator(beta, dim)
                .compose(&displacement_operator(-beta, dim))
                .unwrap();
            let id = FockOperator::identity(dim);
            let mut dev = 0.0f64;
            for row in 0..block {
                for col in 0..block {
                    dev = dev.max((prod.element(row, col) - id.element(row, col)).norm());
                }
            }
            assert!(dev <= 1e-8, "beta = {beta}, block deviation = {dev:e}");
        }
    }

    #[test]
    fn displacement_preserves_norm_of_low_support_states() {
        let dim = 60;
        for (beta, support) in [(Complex64::new(1.2, -0.7), 24), (Complex64::new(2.0, 0.0), 16)]
        {
            let d = displacement_operator(beta, dim);
            for n in [0, 1, support / 2, support] {
                let v = number_state(n, dim).unwrap();
                let dv = d.apply(&v).unwrap();
                assert_abs_diff_eq!(dv.norm_sqr(), 1.0, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn epr_without_entanglement_is_two_mode_vacuum() {
        let (v, tail) = epr_state(0.0, 5).unwrap();
        assert_eq!(v.amplitude(0, 0), Complex64::ONE);
        assert_eq!(v.norm_sqr(), 1.0);
        assert_eq!(tail, 0.0);
    }

    #[test]
    fn epr_amplitudes_are_geometric() {
        let (v, _) = epr_state(0.5, 30).unwrap();
        let norm = 0.75f64.sqrt();
        for n in 0..30 {
            // strictly geometric with ratio q, exact in FP by construction
            let expected = if n == 0 {
                norm
            } else {
                (0..n).fold(norm, |c, _| c * 0.5)
            };
            assert_eq!(v.amplitude(n, n).re, expected);
            if n > 0 {
                assert_eq!(v.amplitude(n, n - 1), Complex64::ZERO);
            }
        }
        assert_abs_diff_eq!(v.norm_sqr(), 1.0 - 0.5f64.powi(60), epsilon = 1e-15);
    }

    #[test]
    fn epr_tail_near_maximal_entanglement() {
        let (_, tail_700) = epr_state(0.99, 700).unwrap();
        let (_, tail_680) = epr_state(0.99, 680).unwrap();
        assert!(tail_700 < 1e-6, "tail(700) = {tail_700:e}");
        assert!(tail_680 >= 1e-6, "tail(680) = {tail_680:e}");
    }

    #[test]
    fn epr_rejects_invalid_entanglement() {
        assert!(epr_state(-0.1, 10).is_err());
        assert!(epr_state(1.0, 10).is_err());
        assert!(epr_state(f64::NAN, 10).is_err());
    }

    #[test]
    fn inner_products() {
        let n0 = number_state(0, 8).unwrap();
        let n1 = number_state(1, 8).unwrap();
        assert_eq!(inner_product(&n0, &n0).unwrap(), Complex64::ONE);
        assert_eq!(inner_product(&n0, &n1).unwrap(), Complex64::ZERO);

        let (a, _) = coherent_state(Complex64::ONE, 60);
        let (b, _) = coherent_state(Complex64::new(2.0, 0.0), 60);
        // ⟨α|β⟩ = e^{-|α|²/2 - |β|²/2 + α*β} = e^{-1/2} here
        let ov = inner_product(&a, &b).unwrap();
        assert_abs_diff_eq!(ov.re, EXP_HALF_NEG, epsilon = 1e-12);
        assert_abs_diff_eq!(ov.im, 0.0, epsilon = 1e-14);

        let short = number_state(0, 4).unwrap();
        assert!(inner_product(&n0, &short).is_err());
    }

    #[test]
    fn squeezing_mapping() {
        assert_eq!(squeezing_to_q(0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(
            squeezing_to_q(0.549_306_144_334_054_8).unwrap(),
            0.5,
            epsilon = 1e-15
        );
        assert!(squeezing_to_q(40.0).unwrap() > 1.0 - 1e-15);
        assert!(squeezing_to_q(40.0).unwrap() < 1.0);
        assert!(validate_entanglement(squeezing_to_q(1e6).unwrap()).is_ok());
        assert!(squeezing_to_q(-0.1).is_err());
    }

    #[test]
    fn default_dim_floor_and_growth() {
        assert_eq!(default_dim(0.0, 0.0), 40);
        assert_eq!(default_dim(1.0, 1.0), 72);
        assert!(default_dim(2.0, 2.0) >= 200);
    }
}
