use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stylemeter::annotate::annotate_text;
use stylemeter::biber::biber_profile;
use stylemeter::features::{feature_names, Profiler};
use stylemeter::stats::{holm_bonferroni, mann_whitney_u, significant_feature_set};
use stylemeter_bench::{corpus, tagged};

fn annotation(c: &mut Criterion) {
    let corpus = corpus(50);
    let words: usize = corpus
        .iter()
        .map(|i| i.text.split_whitespace().count())
        .sum();
    let mut group = c.benchmark_group("annotate");
    group.throughput(Throughput::Elements(words as u64));
    group.bench_function("builtin_tagger", |b| {
        b.iter(|| {
            corpus
                .iter()
                .map(|i| annotate_text(&i.id, &i.text).token_count())
                .sum::<usize>()
        })
    });
    group.finish();
}

fn profiling(c: &mut Criterion) {
    let docs = tagged(&corpus(50));
    let tokens: usize = docs.iter().map(|d| d.token_count()).sum();
    let profiler = Profiler::default();
    let mut group = c.benchmark_group("profile");
    group.throughput(Throughput::Elements(tokens as u64));
    group.bench_function("register_features", |b| {
        b.iter(|| {
            docs.iter()
                .map(|d| biber_profile(d).unwrap())
                .collect::<Vec<_>>()
        })
    });
    group.bench_function("all_columns", |b| {
        b.iter(|| profiler.profile_docs(&docs).unwrap())
    });
    group.finish();
}

fn statistics(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut group = c.benchmark_group("mann_whitney_u");
    for n in [8usize, 200, 2000] {
        let x: Vec<f64> = (0..n).map(|_| rng.random()).collect();
        let y: Vec<f64> = (0..n).map(|_| rng.random()).collect();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| mann_whitney_u(&x, &y).unwrap())
        });
    }
    group.finish();

    let p: Vec<f64> = (0..94).map(|_| rng.random::<f64>() * 0.05).collect();
    c.bench_function("holm_bonferroni/94", |b| {
        b.iter(|| holm_bonferroni(&p, 0.01))
    });

    let matrix = Profiler::default()
        .profile_corpus(&corpus(200), None)
        .unwrap();
    let names: Vec<&str> = feature_names().collect();
    c.bench_function("significant_feature_set/400", |b| {
        b.iter(|| significant_feature_set(&matrix, &names, 0.01).unwrap())
    });
}

criterion_group!(benches, annotation, profiling, statistics);
criterion_main!(benches);
