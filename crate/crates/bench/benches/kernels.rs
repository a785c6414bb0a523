use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use mixcurve::cdgcat::CdgAlgebra;
use mixcurve::derham::{connection_data, hh_dims, milnor_number};
use mixcurve::hochschild::{ChainKind, HochschildComplex, SampleConfig};
use mixcurve::mixedcore::verify_mixed;
use mixcurve_bench::brieskorn;

fn invariants(c: &mut Criterion) {
    let mut g = c.benchmark_group("invariants");
    for (a, b) in [(3, 3), (3, 4), (4, 5)] {
        let w = brieskorn(a, b);
        g.bench_with_input(BenchmarkId::new("milnor", format!("{a},{b}")), &w, |bch, w| bch.iter(|| milnor_number(w)));
        g.bench_with_input(BenchmarkId::new("hh_dims", format!("{a},{b}")), &w, |bch, w| {
            bch.iter(|| hh_dims(w, 12).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("connection", format!("{a},{b}")), &w, |bch, w| {
            bch.iter(|| connection_data(w, false).unwrap())
        });
    }
    g.finish();
}

fn mixed_identities(c: &mut Criterion) {
    let w = brieskorn(3, 3);
    let h = HochschildComplex::new(CdgAlgebra::new(&w, 1), ChainKind::Second, 6)
        .with_sampling(SampleConfig { max_weight: 4, max_degree: 3 });
    c.bench_function("verify_mixed x^3+y^3, 50 samples", |b| b.iter(|| verify_mixed(&h, 50, 7).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = invariants, mixed_identities
}
criterion_main!(benches);
