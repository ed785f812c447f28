use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use motivic_core::arc::{zeta_truncated_with, MonomialFunction};
use motivic_core::dcrit::glue_with;
use motivic_core::job::Payload;
use motivic_core::zeta::{expand_series_with, zeta_function};
use motivic_core::{fixtures, Exec};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn series(c: &mut Criterion) {
    let job = fixtures::load("x2-plane-blowup").unwrap();
    let reg = job.registry().unwrap();
    let Payload::Resolution(r) = &job.payload else {
        unreachable!()
    };
    let z = zeta_function(&reg, r).unwrap();
    let mut g = c.benchmark_group("expand_series");
    for k in [64usize, 256] {
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, k), &k, |b, &k| {
                b.iter(|| expand_series_with(exec, black_box(&z), k).unwrap())
            });
        }
    }
    g.finish();
}

fn arcs(c: &mut Criterion) {
    let job = fixtures::load("x2y").unwrap();
    let reg = job.registry().unwrap();
    let f: MonomialFunction = job.params.monomial.clone().unwrap();
    let mut g = c.benchmark_group("arc_zeta");
    for (name, exec) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| zeta_truncated_with(exec, &reg, black_box(&f), 512).unwrap())
        });
    }
    g.finish();
}

fn gluing(c: &mut Criterion) {
    let job = fixtures::load("gm-two-charts").unwrap();
    let reg = job.registry().unwrap();
    let Payload::Atlas(atlas) = &job.payload else {
        unreachable!()
    };
    let mut g = c.benchmark_group("glue");
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| glue_with(exec, &reg, black_box(atlas)).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, series, arcs, gluing);
criterion_main!(benches);
