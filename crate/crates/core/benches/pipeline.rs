use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use rootgrr::grr::{chern_classes, ChernSeries, RootProblem};
use rootgrr::gw::gw_table;
use rootgrr::rspin::{hurwitz_oracle, potential_coefficients};

#[cfg(feature = "parallel")]
fn variants() -> Vec<(&'static str, rayon::ThreadPool)> {
    let threads = std::thread::available_parallelism().map_or(2, |n| n.get());
    [("parallel", threads), ("sequential", 1)]
        .into_iter()
        .map(|(name, t)| (name, rayon::ThreadPoolBuilder::new().num_threads(t).build().unwrap()))
        .collect()
}

fn bench(c: &mut Criterion, group: &str, work: impl Fn() + Sync) {
    let mut g = c.benchmark_group(group);
    g.sample_size(10);
    #[cfg(feature = "parallel")]
    for (name, pool) in variants() {
        g.bench_function(name, |b| b.iter(|| pool.install(&work)));
    }
    #[cfg(not(feature = "parallel"))]
    g.bench_function("sequential", |b| b.iter(&work));
    g.finish();
}

fn pipeline(c: &mut Criterion) {
    bench(c, "gw_table_r3_n6", || {
        black_box(gw_table(3, 6).unwrap());
    });
    bench(c, "chern_classes_r5_n6", || {
        let p = RootProblem::genus0(5, 0, vec![1, 2, 3, 4, 1, 4]).unwrap();
        let series = ChernSeries::compute(&p, 3).unwrap();
        black_box(chern_classes(&series, 3).unwrap());
    });
    bench(c, "potential_r3_n6", || {
        black_box(potential_coefficients(3, 6).unwrap());
    });
    bench(c, "hurwitz_oracle_d7", || {
        black_box(hurwitz_oracle(&[2, 2, 1, 1, 1]).unwrap());
    });
}

criterion_group!(benches, pipeline);
criterion_main!(benches);
