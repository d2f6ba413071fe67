use std::hint::black_box;

use affa::evaluate::eval_closed;
use affa::testgen::random_closed;
use affa::{fusion, labeling, Family, Label, Morphism, Theory};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn batch(th: Theory, boxes: usize) -> Vec<Morphism> {
    (0..32)
        .map(|s| Morphism::from_diagram(random_closed(th, boxes, 4, s)))
        .collect()
}

fn evaluation(c: &mut Criterion) {
    let mut g = c.benchmark_group("eval_closed");
    for (f, n, k) in [
        (Family::ShadedAOdd, 3, 1),
        (Family::ArrowAOdd, 4, 3),
        (Family::ArrowAEven, 4, 2),
    ] {
        let th = Theory::with_root_exp(f, n, k).unwrap();
        for boxes in [2, 6] {
            let ds = batch(th, boxes);
            g.bench_with_input(BenchmarkId::new(f.name(), boxes), &ds, |b, ds| {
                b.iter(|| {
                    ds.iter()
                        .map(|m| eval_closed(black_box(m)).unwrap())
                        .count()
                })
            });
        }
    }
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let th = Theory::with_root_exp(Family::ArrowAOdd, 4, 3).unwrap();
    let ds = batch(th, 6);
    c.bench_function("labeling_invariant/arrow-a-odd/6", |b| {
        b.iter(|| {
            ds.iter()
                .map(|m| labeling::invariant(black_box(m)).unwrap())
                .count()
        })
    });
}

fn generation(c: &mut Criterion) {
    let th = Theory::with_root_exp(Family::ColorAOdd, 3, 1).unwrap();
    c.bench_function("random_closed/color-a-odd/6", |b| {
        let mut s = 0u64;
        b.iter(|| {
            s += 1;
            random_closed(th, 6, 4, black_box(s))
        })
    });
}

fn gram(c: &mut Criterion) {
    let th = Theory::with_root_exp(Family::ArrowAOdd, 2, 1).unwrap();
    let w = [
        Label::Down,
        Label::Up,
        Label::Down,
        Label::Up,
        Label::Down,
        Label::Up,
    ];
    c.bench_function("gram_matrix/arrow-a-odd/6", |b| {
        b.iter(|| {
            fusion::gram_matrix(&th, black_box(&w), fusion::box_bound(&th, w.len()))
                .unwrap()
                .rank
        })
    });
}

criterion_group!(benches, evaluation, oracle, generation, gram);
criterion_main!(benches);
