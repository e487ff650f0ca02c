use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;
use theta_bench::{elements, members};
use theta_core::kernels::lemma::{verify_residue_lemma, LemmaId};
use theta_core::{
    coset_rep_of, eta, in_kernel_by_congruence, in_kernel_by_value, nu, nu_eta,
    nu_via_decomposition, HalfPlanePoint, Level, OracleConfig, PowerClass,
};

fn exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact");
    for words in [5, 20, 80] {
        let sample = elements(256, words);
        group.bench_with_input(BenchmarkId::new("nu_eta", words), &sample, |b, s| {
            b.iter(|| {
                s.iter().for_each(|m| {
                    black_box(nu_eta(black_box(m)));
                })
            })
        });
    }
    for level in Level::ALL {
        let sample = members(level, 256, 20);
        group.bench_with_input(
            BenchmarkId::new("nu_closed_form", level),
            &sample,
            |b, s| {
                b.iter(|| {
                    s.iter().for_each(|m| {
                        black_box(nu(black_box(m), level).unwrap());
                    })
                })
            },
        );
        group.bench_with_input(
            BenchmarkId::new("nu_decomposition", level),
            &sample,
            |b, s| {
                b.iter(|| {
                    s.iter().for_each(|m| {
                        black_box(nu_via_decomposition(black_box(m), level).unwrap());
                    })
                })
            },
        );
        let pc = PowerClass::new(6, level);
        group.bench_with_input(
            BenchmarkId::new("kernel_by_value", level),
            &sample,
            |b, s| {
                b.iter(|| {
                    s.iter()
                        .filter(|m| in_kernel_by_value(black_box(m), pc).unwrap())
                        .count()
                })
            },
        );
        group.bench_with_input(
            BenchmarkId::new("kernel_by_congruence", level),
            &sample,
            |b, s| {
                b.iter(|| {
                    s.iter()
                        .filter(|m| in_kernel_by_congruence(black_box(m), pc).unwrap())
                        .count()
                })
            },
        );
    }
    let sample = elements(256, 20);
    group.bench_function("coset_rep_of/4", |b| {
        b.iter(|| {
            sample
                .iter()
                .map(|m| coset_rep_of(black_box(m), Level::Four).unwrap())
                .sum::<usize>()
        })
    });
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let cfg = OracleConfig::default();
    let mut group = c.benchmark_group("oracle");
    for im in [0.01, 0.1, 2.0] {
        let tau = HalfPlanePoint::new(Complex64::new(0.3, im)).unwrap();
        group.bench_with_input(BenchmarkId::new("eta", im), &tau, |b, &t| {
            b.iter(|| eta(black_box(t), &cfg).unwrap())
        });
    }
    group.finish();
}

fn lemma_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("lemma_scan");
    group.sample_size(10);
    for bound in [20, 40] {
        group.bench_with_input(
            BenchmarkId::new("level4-mod4", bound),
            &bound,
            |b, &bound| b.iter(|| verify_residue_lemma(LemmaId::Level4Mod4, black_box(bound))),
        );
    }
    group.finish();
}

criterion_group!(benches, exact, oracle, lemma_scan);
criterion_main!(benches);
