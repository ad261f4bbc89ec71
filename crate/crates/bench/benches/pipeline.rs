use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use moutard_bench::example;
use moutard_core::analysis::{certify_sign_definite, decay_exponent, BranchAndBound};
use moutard_core::construct::{double_transform, seed_antiderivative, verify_lemma};
use moutard_core::darboux1d::rational_chain;
use moutard_core::search::sweep;

fn construction(c: &mut Criterion) {
    let mut g = c.benchmark_group("construction");
    for id in [1u8, 2] {
        let (seeds, k) = example(id);
        g.bench_function(format!("antiderivative/{id}"), |b| b.iter(|| seed_antiderivative(&seeds).unwrap()));
        g.bench_function(format!("double_transform/{id}"), |b| b.iter(|| double_transform(&seeds, &k).unwrap()));
        g.bench_function(format!("verify_lemma/{id}"), |b| b.iter(|| verify_lemma(&seeds, &k).unwrap()));
    }
    g.finish();
}

fn analysis(c: &mut Criterion) {
    let mut g = c.benchmark_group("analysis");
    g.sample_size(20);
    for id in [1u8, 2] {
        let (seeds, k) = example(id);
        let r = double_transform(&seeds, &k).unwrap();
        g.bench_function(format!("positivity/{id}"), |b| {
            b.iter(|| certify_sign_definite(r.w(), BranchAndBound::default()).unwrap())
        });
        g.bench_function(format!("decay/{id}"), |b| b.iter(|| decay_exponent(r.u()).unwrap()));
    }
    g.finish();
}

fn search(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    g.bench_function("sweep/deg2x4", |b| {
        b.iter_batched(|| 11u64, |seed| sweep(2, seed, 4).unwrap(), BatchSize::SmallInput)
    });
    g.bench_function("darboux_chain/8", |b| b.iter(|| rational_chain(8).unwrap()));
    g.finish();
}

criterion_group!(benches, construction, analysis, search);
criterion_main!(benches);
