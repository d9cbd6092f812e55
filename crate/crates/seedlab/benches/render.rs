//! Parallel vs sequential rendering, plus the labeling pass.
//!
//! With default features `render` goes through rayon and `render_sequential`
//! is the single-threaded baseline; with `--no-default-features` the two are
//! the same code path and should bench identically.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use seedlab::{label_components, render, render_sequential, Complex, Connectivity, Viewport};

fn classic_viewport(side: usize) -> Viewport {
    Viewport::new(Complex::new(-0.25, 0.0), 3.2, 3.2, side, side).unwrap()
}

fn bench_render(c: &mut Criterion) {
    let viewport = classic_viewport(384);
    let seed = Complex::ZERO;
    let mut group = c.benchmark_group("render_384x384_mi256");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| render(black_box(seed), &viewport, 256).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| render_sequential(black_box(seed), &viewport, 256).unwrap())
    });
    group.finish();
}

fn bench_split_frame(c: &mut Criterion) {
    // the frame where the set has just split in two: lots of boundary, a
    // busier mask for the labeler
    let viewport = classic_viewport(384);
    let seed = Complex::new(0.0, -1.05);
    let mut group = c.benchmark_group("render_split_seed_384x384");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| render(black_box(seed), &viewport, 256).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| render_sequential(black_box(seed), &viewport, 256).unwrap())
    });
    group.finish();
}

fn bench_labeling(c: &mut Criterion) {
    let viewport = classic_viewport(512);
    let field = render(Complex::ZERO, &viewport, 256).unwrap();
    let mut group = c.benchmark_group("label_512x512");
    group.bench_function("eight", |b| {
        b.iter(|| {
            label_components(
                black_box(field.mask()),
                field.cols(),
                field.rows(),
                Connectivity::Eight,
            )
        })
    });
    group.bench_function("four", |b| {
        b.iter(|| {
            label_components(
                black_box(field.mask()),
                field.cols(),
                field.rows(),
                Connectivity::Four,
            )
        })
    });
    group.finish();
}

criterion_group!(benches, bench_render, bench_split_frame, bench_labeling);
criterion_main!(benches);
