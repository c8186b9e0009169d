use criterion::{criterion_group, criterion_main, Criterion};
use xladder::model::SeedType;
use xladder::verify::{verify, Options, Suite};

fn numeric(c: &mut Criterion) {
    let mut g = c.benchmark_group("numeric suite, type I");
    g.sample_size(10);
    for parallel in [false, true] {
        let opts = Options {
            parallel,
            ..Options::default()
        };
        let name = if parallel { "parallel" } else { "sequential" };
        g.bench_function(name, |b| {
            b.iter(|| verify(&[SeedType::I], &[Suite::Numeric], &opts))
        });
    }
    g.finish();
}

fn algebra(c: &mut Criterion) {
    let mut g = c.benchmark_group("algebra suite, all types");
    g.sample_size(10);
    for parallel in [false, true] {
        let opts = Options {
            parallel,
            ..Options::default()
        };
        let name = if parallel { "parallel" } else { "sequential" };
        g.bench_function(name, |b| {
            b.iter(|| verify(&SeedType::ALL, &[Suite::Algebra], &opts))
        });
    }
    g.finish();
}

criterion_group!(benches, algebra, numeric);
criterion_main!(benches);
