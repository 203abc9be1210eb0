use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nilcheck::corpus::{make, Construction};
use nilcheck::groups::{LawMode, SweepOptions};
use nilcheck::par::Exec;
use nilcheck::theorems::{check_heineken, check_variety_implication};
use nilcheck::words::parse;

const EXECS: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn opts(exec: Exec) -> SweepOptions {
    SweepOptions { exec, ..SweepOptions::default() }
}

fn law_sweeps(c: &mut Criterion) {
    let ut = make(&Construction::Unitriangular(4, 3)).unwrap();
    let w = parse("[x1,x2,x2,x2]").unwrap();
    let mut group = c.benchmark_group("law_check_ut4_3");
    group.sample_size(10);
    for (label, exec) in EXECS {
        group.bench_function(BenchmarkId::from_parameter(label), |b| {
            b.iter(|| ut.law_check(&w, LawMode::Exhaustive, &opts(exec)).unwrap())
        });
    }
    group.finish();
}

fn variety_sweeps(c: &mut Criterion) {
    let sym4 = make(&Construction::Symmetric(4)).unwrap();
    let mut group = c.benchmark_group("variety_implication_sym4");
    for (label, exec) in EXECS {
        group.bench_function(BenchmarkId::from_parameter(label), |b| {
            b.iter(|| check_variety_implication(&sym4, "sym4", 2, &opts(exec)))
        });
    }
    group.finish();
}

fn heineken_sweeps(c: &mut Criterion) {
    let ut = make(&Construction::Unitriangular(4, 3)).unwrap();
    let mut group = c.benchmark_group("heineken_ut4_3");
    group.sample_size(10);
    for (label, exec) in EXECS {
        group.bench_function(BenchmarkId::from_parameter(label), |b| {
            b.iter(|| check_heineken(&ut, "ut4_3", &opts(exec)))
        });
    }
    group.finish();
}

criterion_group!(benches, law_sweeps, variety_sweeps, heineken_sweeps);
criterion_main!(benches);
