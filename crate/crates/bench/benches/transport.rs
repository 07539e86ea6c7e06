use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use polylog::bloch::{five_term_element, wedge_map};
use polylog::itint::{iterated_integral, transport_series};
use polylog::monodromy::monodromy_numeric;
use polylog::paths::word_to_path;
use polylog::polylog::{d2, d3};
use polylog::regulator::{tame_product, RationalFunction};
use polylog_bench::{precision, sample_forms, sample_points, sample_word};

fn single_valued(c: &mut Criterion) {
    let mut g = c.benchmark_group("single_valued");
    g.sample_size(10);
    for bits in [128u32, 256, 512] {
        let prec = precision(bits);
        let pts = sample_points(prec.bits());
        g.bench_with_input(BenchmarkId::new("d2", bits), &pts, |b, pts| {
            b.iter(|| pts.iter().map(|x| d2(black_box(x), &prec).unwrap()).collect::<Vec<_>>())
        });
        g.bench_with_input(BenchmarkId::new("d3", bits), &pts, |b, pts| {
            b.iter(|| pts.iter().map(|x| d3(black_box(x), &prec).unwrap()).collect::<Vec<_>>())
        });
    }
    g.finish();
}

fn monodromy(c: &mut Criterion) {
    let mut g = c.benchmark_group("monodromy");
    g.sample_size(10);
    let prec = precision(256);
    let w = sample_word();
    for n in [2usize, 4, 6] {
        g.bench_with_input(BenchmarkId::new("numeric", n), &n, |b, &n| {
            b.iter(|| monodromy_numeric(black_box(&w), n, &prec).unwrap())
        });
    }
    g.finish();
}

fn iterated(c: &mut Criterion) {
    let mut g = c.benchmark_group("iterated_integrals");
    g.sample_size(10);
    let prec = precision(256);
    let path = word_to_path(&sample_word(), prec.bits());
    let forms = sample_forms(prec.bits());
    g.bench_function("word4_loop", |b| b.iter(|| iterated_integral(black_box(&forms), &path, &prec).unwrap()));
    g.bench_function("series_m5_loop", |b| b.iter(|| transport_series(black_box(&path), 5, &prec).unwrap()));
    g.finish();
}

fn exact(c: &mut Criterion) {
    let mut g = c.benchmark_group("exact");
    let f = RationalFunction::parse("(t-1)^2*(t+2)/(t-3)").unwrap();
    let h = RationalFunction::parse("3*t*(t+1)^-2").unwrap();
    g.bench_function("tame_product", |b| b.iter(|| tame_product(black_box(&f), &h).unwrap()));
    let x = num_rational::BigRational::new(7.into(), 3.into());
    let y = num_rational::BigRational::new((-5).into(), 11.into());
    g.bench_function("five_term_wedge", |b| {
        b.iter(|| wedge_map(&five_term_element(black_box(&x), black_box(&y)).unwrap()))
    });
    g.finish();
}

criterion_group!(benches, single_valued, monodromy, iterated, exact);
criterion_main!(benches);
