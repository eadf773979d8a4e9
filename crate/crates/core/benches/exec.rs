use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rootforge::abstract_roots::Window;
use rootforge::orders::CocycleTable;
use rootforge::{CoxeterGroup, Exec, DEFAULT_ELEMENT_CAP};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn enumeration(c: &mut Criterion) {
    let g = CoxeterGroup::from_type("H4").unwrap();
    let mut grp = c.benchmark_group("enumerate_H4");
    grp.sample_size(10);
    for (name, exec) in MODES {
        grp.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| g.enumerate_all(DEFAULT_ELEMENT_CAP, exec).unwrap().len())
        });
    }
    grp.finish();
}

fn window(c: &mut Criterion) {
    let g = CoxeterGroup::from_type("~A2").unwrap();
    let mut grp = c.benchmark_group("window_~A2_L15");
    grp.sample_size(10);
    for (name, exec) in MODES {
        grp.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| Window::new(&g, 15, DEFAULT_ELEMENT_CAP, exec).unwrap().len())
        });
    }
    grp.finish();
}

fn bruhat(c: &mut Criterion) {
    let g = CoxeterGroup::from_type("H3").unwrap();
    let mut grp = c.benchmark_group("bruhat_H3");
    grp.sample_size(10);
    for (name, exec) in MODES {
        grp.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                let table = CocycleTable::standard(&g, DEFAULT_ELEMENT_CAP, exec).unwrap();
                table.bruhat(&table.full_set()).hasse().len()
            })
        });
    }
    grp.finish();
}

criterion_group!(benches, enumeration, window, bruhat);
criterion_main!(benches);
