//! Rayon-vs-sequential comparison for the two data-parallel workloads:
//! multi-start rate maximization and thermal-grid evaluation.
//!
//! Build with default features so both paths are available:
//! `cargo bench -p qcorr`.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use qcorr::optim::{
    multi_start_maximize_par, multi_start_maximize_seq, params_to_state, NelderMead,
};
use qcorr::qstate::{bloch_decompose, from_pure, PartitionSpec, PureStateVector};
use qcorr::su_basis::{GeneratorBasis, StructureConstants};
use qcorr::thermal_xx::{qd_cc, thermal_state, XXParams};

fn qutrit_objective() -> impl Fn(&[f64]) -> f64 + Sync {
    let sc = StructureConstants::from_basis(&GeneratorBasis::new(3).unwrap());
    let part = PartitionSpec::singletons(&[3, 3]);
    let mu = [1.0f64; 8];
    move |x: &[f64]| match params_to_state(x) {
        Some(amp) => {
            let psi = PureStateVector::normalized(vec![3, 3], amp).unwrap();
            let bd = bloch_decompose(&from_pure(&psi), &part).unwrap();
            qcorr::capacity::rate_qutrit(&bd, &mu, &sc).unwrap_or(f64::NEG_INFINITY)
        }
        None => f64::NEG_INFINITY,
    }
}

fn bench_multistart(c: &mut Criterion) {
    let f = qutrit_objective();
    let nm = NelderMead {
        max_iter: 400,
        ..NelderMead::default()
    };
    let mut group = c.benchmark_group("qutrit_rate_multistart");
    group.sample_size(10);
    group.bench_function("seq", |b| {
        b.iter(|| black_box(multi_start_maximize_seq(&f, 17, 8, 3, &nm).best.value))
    });
    group.bench_function("par", |b| {
        b.iter(|| black_box(multi_start_maximize_par(&f, 17, 8, 3, &nm).best.value))
    });
    group.finish();
}

fn xx_point(b1: f64, t: f64) -> f64 {
    let p = XXParams::new(1.0, b1, -b1, t).unwrap();
    let q = qd_cc(&thermal_state(&p).unwrap().rho).unwrap();
    q.qd
}

fn bench_xx_sweep(c: &mut Criterion) {
    let pts: Vec<(f64, f64)> = (0..16)
        .map(|i| (-3.0 + 6.0 * i as f64 / 15.0, 0.9))
        .collect();
    let mut group = c.benchmark_group("xx_field_sweep");
    group.sample_size(10);
    group.bench_function("seq", |b| {
        b.iter(|| {
            let out: Vec<f64> = pts.iter().map(|&(b1, t)| xx_point(b1, t)).collect();
            black_box(out)
        })
    });
    group.bench_function("par", |b| {
        b.iter(|| {
            use rayon::prelude::*;
            let out: Vec<f64> = pts.par_iter().map(|&(b1, t)| xx_point(b1, t)).collect();
            black_box(out)
        })
    });
    group.finish();
}

fn bench_entanglement_eval(c: &mut Criterion) {
    use qcorr::measures::EntanglementEvaluator;
    let dims = vec![2usize; 6];
    let ev = EntanglementEvaluator::new(&PartitionSpec::singletons(&dims));
    let psi = {
        let total = 64usize;
        let amp = qcorr::CVec::from_iterator(
            total,
            (0..total).map(|i| qcorr::C64::new((i as f64).sin(), (i as f64 * 0.5).cos())),
        );
        PureStateVector::normalized(dims, amp).unwrap()
    };
    c.bench_function("six_mode_entanglement_eval", |b| {
        b.iter(|| black_box(ev.entanglement(&psi.amplitudes)))
    });
}

criterion_group!(
    benches,
    bench_multistart,
    bench_xx_sweep,
    bench_entanglement_eval
);
criterion_main!(benches);
