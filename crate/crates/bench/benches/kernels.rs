use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dihedral_dunkl::dunkl::{build_core_operators, Evaluator};
use dihedral_dunkl::grp::{group_tables, CoverSign};
use dihedral_dunkl::monogenics::Monogenics;
use dihedral_dunkl::reps::{build_rep, certify};
use dihedral_dunkl::symalg::{build_symmetries, verify_full_ledger};
use dihedral_dunkl_bench::{case_one_cell, root_system};

fn dirac_matrix(c: &mut Criterion) {
    let mut g = c.benchmark_group("dirac_matrix");
    for m in [2, 3, 6] {
        let rs = root_system(m);
        let ops = build_core_operators(&rs, 1).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, _| {
            b.iter(|| Evaluator::new(rs.field()).matrix(&ops.dirac, 4))
        });
    }
    g.finish();
}

fn ledger(c: &mut Criterion) {
    let mut g = c.benchmark_group("symmetry_ledger_degree2");
    g.sample_size(10);
    for m in [2, 3] {
        let s = build_symmetries(&root_system(m), 1).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, _| b.iter(|| verify_full_ledger(&s, 2)));
    }
    g.finish();
}

fn representations(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_and_certify");
    for (m, n) in [(2, 4), (3, 4), (4, 4)] {
        let spec = case_one_cell(m, n);
        g.bench_with_input(BenchmarkId::new(format!("m{m}"), n), &spec, |b, s| {
            b.iter(|| certify(&build_rep(s).unwrap()))
        });
    }
    g.finish();
}

fn monogenic_bases(c: &mut Criterion) {
    let mut g = c.benchmark_group("monogenic_basis");
    g.sample_size(10);
    for m in [2, 3] {
        let mono = Monogenics::positive(&root_system(m), 1).unwrap();
        g.bench_with_input(BenchmarkId::new("extension", m), &m, |b, _| b.iter(|| mono.monogenic_basis(4).unwrap()));
        g.bench_with_input(BenchmarkId::new("closed_form", m), &m, |b, _| b.iter(|| mono.explicit_basis(4).unwrap()));
    }
    g.finish();
}

fn covers(c: &mut Criterion) {
    let mut g = c.benchmark_group("group_tables");
    for m in [4, 8] {
        g.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, &m| b.iter(|| group_tables(m, CoverSign::Plus).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, dirac_matrix, ledger, representations, monogenic_bases, covers);
criterion_main!(benches);
