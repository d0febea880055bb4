use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rado_core::edge_order::decompose_component;
use rado_core::game::{certify_winner, solve_exact, CertifyCaps, SolverConfig};
use rado_core::solutions::enumerate_solutions;
use rado_core::{sample_board, Board, RadoSystem};
use std::hint::black_box;

fn enumerate(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate");
    // Sidon boards carry cubically many solutions, so they get a smaller board.
    for (name, sys, n) in [("schur", RadoSystem::schur(), 200), ("3ap", RadoSystem::three_ap(), 200), ("sidon", RadoSystem::sidon(), 80)] {
        let board = Board::full(n);
        g.bench_with_input(BenchmarkId::new(name, n), &board, |b, board| b.iter(|| enumerate_solutions(&sys, black_box(board)).unwrap()));
    }
    g.finish();
}

fn detect(c: &mut Criterion) {
    let sys = RadoSystem::three_ap();
    // Sparse boards: most components are trees or single short cycles.
    let boards: Vec<_> = (0..20).map(|s| enumerate_solutions(&sys, &sample_board(2000, 0.02, s)).unwrap()).collect();
    c.bench_function("detect/3ap-sparse", |b| {
        b.iter(|| {
            for h in &boards {
                for (id, _) in h.nontrivial_components() {
                    black_box(decompose_component(h, id).unwrap());
                }
            }
        })
    });
}

fn solve(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve");
    g.sample_size(10);
    for n in [9, 12, 15] {
        let h = enumerate_solutions(&RadoSystem::schur(), &Board::full(n)).unwrap();
        g.bench_with_input(BenchmarkId::new("schur", n), &h, |b, h| b.iter(|| solve_exact(h, &SolverConfig::default()).unwrap()));
    }
    g.finish();
}

fn certify(c: &mut Criterion) {
    let sys = RadoSystem::schur();
    let boards: Vec<_> = (0..10).map(|s| enumerate_solutions(&sys, &sample_board(400, 0.05, s)).unwrap()).collect();
    let caps = CertifyCaps::default();
    let mut g = c.benchmark_group("certify");
    g.sample_size(10);
    g.bench_function("schur-400", |b| {
        b.iter(|| {
            for h in &boards {
                black_box(certify_winner(h, &caps, None));
            }
        })
    });
    g.finish();
}

criterion_group!(benches, enumerate, detect, solve, certify);
criterion_main!(benches);
