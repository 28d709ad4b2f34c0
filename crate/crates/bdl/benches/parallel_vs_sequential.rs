use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use bdl::arith::{ratq, Rat};
use bdl::duality::spectral::spectral_certificate;
use bdl::par;
use bdl::unm::{main1_space, offsets_by_height, verify_main1, BlockContext};

fn main1_weight_spaces(c: &mut Criterion) {
    let ctx = BlockContext::<Rat>::numeric(2, 2, &[ratq(1, 3), ratq(-2, 7), ratq(5, 2), ratq(3, 11)]);
    let kappas = offsets_by_height(4, 2);
    let mut g = c.benchmark_group("main1 n=m=2 drop<=2");
    g.sample_size(10);
    for sequential in [false, true] {
        let label = if sequential { "sequential" } else { "rayon" };
        g.bench_function(BenchmarkId::from_parameter(label), |b| {
            par::set_sequential(sequential);
            b.iter(|| assert!(verify_main1(&ctx, &kappas, 0).pass));
        });
    }
    par::set_sequential(false);
    g.finish();
}

fn spectral_trials(c: &mut Criterion) {
    let ctx = BlockContext::<Rat>::numeric(2, 2, &[ratq(1, 3), ratq(-2, 7), ratq(5, 2), ratq(3, 11)]);
    let kappa = offsets_by_height(4, 2).into_iter().max_by_key(|k| main1_space(&ctx, k.clone()).map_or(0, |s| s.dim)).unwrap();
    let s = main1_space(&ctx, kappa).unwrap();
    let family: Vec<_> = s.grid_m.grid.values().cloned().collect();
    let mut g = c.benchmark_group("spectral certificate, 16 trials");
    g.sample_size(10);
    for sequential in [false, true] {
        let label = if sequential { "sequential" } else { "rayon" };
        g.bench_function(BenchmarkId::from_parameter(label), |b| {
            par::set_sequential(sequential);
            b.iter(|| assert!(spectral_certificate("bench", &family, &family, 16, 0).pass));
        });
    }
    par::set_sequential(false);
    g.finish();
}

criterion_group!(benches, main1_weight_spaces, spectral_trials);
criterion_main!(benches);
