//! Parallel vs sequential timings for the data-parallel hot paths: the
//! single-plane oracle quadrature, the four-dimensional two-mode quadrature,
//! and the per-q improvement table.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;

use cvteleport::gainopt::{improvement_table, optimal_gain_joint, InputFamily};
use cvteleport::polarization::{mode_matrix_elements, ModeMatrixElements};
use cvteleport::quad::{PlaneRule, QuadratureSpec};
use cvteleport::transfer::{MeasurementOutcome, TeleportParams};

/// Reduced coherent-overlap integrand, the same shape the fidelity oracle
/// integrates: `|⟨α|T̂ᵍ_q(β)|α⟩|² e^{+w|β|²}`.
fn coherent_reduced(q: f64, g: f64, alpha: Complex64, w: f64) -> impl Fn(Complex64) -> f64 {
    let s = 1.0 - q * q;
    let pref = s / std::f64::consts::PI;
    move |beta: Complex64| {
        let gamma = q * alpha + (g - q) * beta;
        let exponent =
            -s * (alpha - beta).norm_sqr() - (alpha - gamma).norm_sqr() + w * beta.norm_sqr();
        pref * exponent.exp()
    }
}

fn bench_plane_oracle(c: &mut Criterion) {
    let p = TeleportParams::new(0.5, 0.8).unwrap();
    let w = p.gaussian_width();
    let reduced = coherent_reduced(0.5, 0.8, Complex64::ONE, w);
    for points in [48, 96] {
        let rule = PlaneRule::new(&QuadratureSpec::gauss_hermite(points).unwrap(), w).unwrap();
        let mut group = c.benchmark_group(format!("plane-oracle-{points}"));
        group.bench_function("sequential", |b| {
            b.iter(|| rule.integrate(black_box(&reduced)))
        });
        group.bench_function("rayon", |b| {
            b.iter(|| rule.par_integrate(black_box(&reduced)))
        });
        group.finish();
    }
}

fn bench_two_mode_quadrature(c: &mut Criterion) {
    let p = TeleportParams::new(0.5, 0.79).unwrap();
    let w = p.gaussian_width();
    let rule = PlaneRule::new(&QuadratureSpec::gauss_hermite(24).unwrap(), w).unwrap();
    // reduced 2x2 elements per node, as joint_fidelity_numeric precomputes
    let elems: Vec<ModeMatrixElements> = rule
        .nodes()
        .iter()
        .map(|(beta, _)| {
            let m = mode_matrix_elements(&p, &MeasurementOutcome::new(*beta).unwrap());
            let boost = (0.5 * w * beta.norm_sqr()).exp();
            ModeMatrixElements {
                t00: m.t00 * boost,
                t01: m.t01 * boost,
                t10: m.t10 * boost,
                t11: m.t11 * boost,
            }
        })
        .collect();
    let chv = Complex64::new(0.5, 0.0); // balanced qubit, |c_H|² = |c_V|² = 1/2
    let integrand = move |a: usize, b: usize| {
        let (mh, mv) = (&elems[a], &elems[b]);
        let amp = 0.5 * mh.t11 * mv.t00
            + chv * mh.t10 * mv.t01
            + chv.conj() * mh.t01 * mv.t10
            + 0.5 * mh.t00 * mv.t11;
        amp.norm_sqr()
    };
    let mut group = c.benchmark_group("two-mode-quadrature-24");
    group.sample_size(20);
    group.bench_function("sequential", |b| {
        b.iter(|| rule.integrate_pairs_indexed(black_box(&integrand)))
    });
    group.bench_function("rayon", |b| {
        b.iter(|| rule.par_integrate_pairs_indexed(black_box(&integrand)))
    });
    group.finish();
}

fn bench_improvement_table(c: &mut Criterion) {
    let qs: Vec<f64> = (0..20).map(|i| i as f64 * 0.05).collect();
    let mut group = c.benchmark_group("improvement-table-qubit-20q");
    group.sample_size(20);
    group.bench_function("sequential", |b| {
        b.iter(|| {
            black_box(&qs)
                .iter()
                .map(|&q| optimal_gain_joint(q).unwrap())
                .collect::<Vec<_>>()
        })
    });
    group.bench_function("rayon", |b| {
        b.iter(|| improvement_table(InputFamily::PhotonicQubit, black_box(&qs)).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_plane_oracle,
    bench_two_mode_quadrature,
    bench_improvement_table
);
criterion_main!(benches);
