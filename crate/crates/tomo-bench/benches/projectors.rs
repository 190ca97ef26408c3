use criterion::{criterion_group, criterion_main, Criterion};

use tomo_core::{
    analytic_sinogram, fbp, forward_project, gallery, rasterize, FilterKind, FilterSpec,
    SinogramGrid,
};

fn bench_projectors(c: &mut Criterion) {
    let phantom = gallery("shepp_logan").unwrap();
    let n = 128;
    let grid = SinogramGrid::new(n, 180).unwrap();
    let image = rasterize(&phantom, n).unwrap();
    let sinogram = analytic_sinogram(&phantom, &grid);
    let spec = FilterSpec::for_detectors(FilterKind::Ramp, n);

    c.bench_function("analytic_sinogram_128x180", |b| {
        b.iter(|| analytic_sinogram(&phantom, &grid))
    });
    c.bench_function("forward_project_128x180", |b| {
        b.iter(|| forward_project(&image, &grid))
    });
    c.bench_function("fbp_128x180", |b| {
        b.iter(|| fbp(&sinogram, n, &spec, true).unwrap())
    });
    c.bench_function("rasterize_shepp_logan_128", |b| {
        b.iter(|| rasterize(&phantom, n).unwrap())
    });
}

criterion_group!(benches, bench_projectors);
criterion_main!(benches);
