use criterion::{black_box, criterion_group, criterion_main, Criterion};
use digs_core::analytic::{susceptibility_resonant, ChiParams, GeneralizedPopulations};
use digs_core::doppler::broadened_susceptibility;
use digs_core::liouvillian::{build_generator, numeric_susceptibility, steady_state};
use digs_core::params::preset;

fn bench_steady_state(c: &mut Criterion) {
    let params = preset("fig3-closed").unwrap().params;
    let gen = build_generator(&params);
    c.bench_function("steady_state_25x25", |b| {
        b.iter(|| steady_state(black_box(&gen)).unwrap())
    });
}

fn bench_numeric_susceptibility(c: &mut Criterion) {
    let params = preset("fig3-closed").unwrap().params;
    c.bench_function("numeric_susceptibility_point", |b| {
        b.iter(|| numeric_susceptibility(black_box(&params), black_box(0.05)).unwrap())
    });
}

fn bench_analytic_susceptibility(c: &mut Criterion) {
    let params = preset("fig3-closed").unwrap().params;
    let (chi_params, _) = ChiParams::from_params(&params);
    let populations = GeneralizedPopulations::real(0.1, 0.8);
    c.bench_function("analytic_susceptibility_point", |b| {
        b.iter(|| {
            susceptibility_resonant(black_box(&populations), black_box(0.05), &chi_params).unwrap()
        })
    });
}

fn bench_doppler_point(c: &mut Criterion) {
    let bundle = preset("doppler-fig8").unwrap();
    let populations = bundle.populations.unwrap();
    let spec = bundle.doppler.unwrap();
    c.bench_function("doppler_broadened_point", |b| {
        b.iter(|| {
            broadened_susceptibility(
                black_box(&bundle.params),
                black_box(&populations),
                black_box(0.05),
                &spec,
            )
            .unwrap()
        })
    });
}

criterion_group!(
    benches,
    bench_steady_state,
    bench_numeric_susceptibility,
    bench_analytic_susceptibility,
    bench_doppler_point
);
criterion_main!(benches);
