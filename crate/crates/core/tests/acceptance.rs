//! End-to-end acceptance checks, one line per criterion. Exits non-zero if any fails.

use std::collections::BTreeMap;
use std::time::Instant;

use num_rational::BigRational;
use rado_core::edge_order::{detect_bicycle, has_bad_valid_order};
use rado_core::experiments::{run_threshold_sweep, write_csv_to, ExperimentSpec, SweepResult};
use rado_core::game::{solve_exact, solve_naive, GameConfig, Player, SolverConfig};
use rado_core::generate::{connected_family, random_connected, sparse_components};
use rado_core::matrix_analysis::{compute_m, is_irredundant, is_strictly_balanced};
use rado_core::solutions::{compute_mu, enumerate_solutions, MuMode};
use rado_core::strategies::{adversarial_maker_search, breaker_power_pairing, solve_residue, Dl2Breaker};
use rado_core::{sample_board, Board, Hypergraph, RadoSystem, Vertex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = fn() -> Result<String, String>;

fn random_rows(count: usize) -> Vec<RadoSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    (0..count)
        .map(|i| {
            let k = 3 + i % 4;
            let row: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
            RadoSystem::equation(&row)
        })
        .collect()
}

fn c1_single_equation_m() -> Result<String, String> {
    let systems = random_rows(200);
    for s in &systems {
        let k = s.cols() as i64;
        let m = compute_m(s).map_err(|e| format!("{s}: {e}"))?;
        if m.value != BigRational::new((k - 1).into(), (k - 2).into()) {
            return Err(format!("{s}: m = {}", m.value));
        }
    }
    Ok(format!("{} matrices", systems.len()))
}

fn c2_strict_balance() -> Result<String, String> {
    for s in random_rows(200) {
        if !is_strictly_balanced(&s).map_err(|e| e.to_string())?.balanced {
            return Err(format!("{s} reported unbalanced"));
        }
    }
    let stacked = RadoSystem::from_rows(&[&[1, 1, -1, 0, 0], &[0, 0, 1, 1, -1]], &[0, 0]);
    let b = is_strictly_balanced(&stacked).map_err(|e| e.to_string())?;
    match (b.balanced, b.violating) {
        (false, Some(w)) => Ok(format!("stacked Schur violated by columns {w:?}")),
        other => Err(format!("stacked Schur gave {other:?}")),
    }
}

fn agree(h: &Hypergraph) -> Result<(), String> {
    let oracle = has_bad_valid_order(h, 0, 10).map_err(|e| e.to_string())?;
    if detect_bicycle(h, 0).is_some() != oracle.is_some() {
        return Err(format!("disagreement on {:?}", h.edges()));
    }
    Ok(())
}

fn c3_detector_equivalence() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut random = 0;
    while random < 1000 {
        if let Some(h) = random_connected(&mut rng, 3, 1 + random % 5, 15) {
            agree(&h)?;
            random += 1;
        }
    }
    let family = connected_family(3, 4, 9);
    for h in &family {
        agree(h)?;
    }
    Ok(format!("{random} random, {} exhaustive", family.len()))
}

fn c4_dl2_soundness() -> Result<String, String> {
    let mut cases: BTreeMap<&str, usize> = BTreeMap::new();
    let mut total = 0;
    for (system, seed) in [(RadoSystem::schur(), 100), (RadoSystem::three_ap(), 200)] {
        for (h, d) in sparse_components(&system, &[40, 80, 160], 1.2, seed, 12, 250) {
            let mut b = Dl2Breaker::with_decompositions(&h, vec![d.clone()]).map_err(|e| e.to_string())?;
            if let Some(line) = adversarial_maker_search(&h, &mut b, GameConfig::default()).map_err(|e| e.to_string())? {
                return Err(format!("Maker wins on {:?} by {line:?}", h.edges()));
            }
            *cases.entry(d.case.name()).or_insert(0) += 1;
            total += 1;
        }
    }
    Ok(format!("{total} components, cases {cases:?}"))
}

fn c5_solver_consistency() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut done = 0;
    let mut makers = 0;
    while done < 500 {
        let n = rng.gen_range(6..=24);
        let board = sample_board(n, rng.gen_range(0.3..1.0), rng.gen());
        if board.len() > 14 {
            continue;
        }
        let h = enumerate_solutions(&RadoSystem::schur(), &board).map_err(|e| e.to_string())?;
        let fast = solve_exact(&h, &SolverConfig::default()).map_err(|e| e.to_string())?;
        let slow = solve_naive(&h, GameConfig::default(), 14).map_err(|e| e.to_string())?;
        if fast != slow {
            return Err(format!("board {:?}: {fast} vs {slow}", board.members()));
        }
        makers += usize::from(fast == Player::Maker);
        done += 1;
    }
    Ok(format!("{done} boards, {makers} Maker wins"))
}

fn c6_biased_pairs() -> Result<String, String> {
    let cfg = SolverConfig::with_game(GameConfig { bias: 2, first_player: Player::Maker });
    let mut instances = 0;
    let mut skipped = Vec::new();
    for (a, b) in [(2, 3), (1, 2), (3, 5)] {
        for rhs in [0, 1] {
            let sys = RadoSystem::from_rows(&[&[a, -b]], &[rhs]);
            if !is_irredundant(&sys, 1000).found {
                skipped.push(format!("({a} -{b} | {rhs})"));
                continue;
            }
            for n in 1..=16 {
                let h = enumerate_solutions(&sys, &Board::full(n)).map_err(|e| e.to_string())?;
                if solve_exact(&h, &cfg).map_err(|e| e.to_string())? != Player::Breaker {
                    return Err(format!("({a} -{b} | {rhs}) on [{n}] is a Maker win"));
                }
                instances += 1;
            }
        }
    }
    Ok(format!("{instances} instances, skipped {skipped:?}"))
}

fn c7_pair_strategies() -> Result<String, String> {
    let mut residues = 0;
    for a in 1..=10u64 {
        for b in 1..=10u64 {
            if a == b || num_integer::gcd(a, b) != 1 {
                continue;
            }
            for rhs in -10..=10i64 {
                let r = solve_residue(a, b, rhs).map_err(|e| e.to_string())?;
                let (ai, bi) = (a as i64, b as i64);
                let scan: Vec<i64> =
                    (0..ai * bi).filter(|&x| (ai * x - rhs).rem_euclid(bi) == 0 && (bi * x + rhs).rem_euclid(ai) == 0).collect();
                if scan != [r.z as i64] || r.modulus != a * b {
                    return Err(format!("({a}, {b}, {rhs}): {r:?} vs scan {scan:?}"));
                }
                residues += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut boards = 0;
    for (a, b) in [(2u64, 3u64), (1, 2), (3, 4)] {
        for i in 0..300 {
            let board: Vec<Vertex> = if i == 0 { (1..=500).collect() } else { (1..=500).filter(|_| rng.gen_bool(0.7)).collect() };
            let table = breaker_power_pairing(&board, a, b).map_err(|e| e.to_string())?;
            if !table.is_disjoint() {
                return Err(format!("({a}, {b}): overlapping pairs"));
            }
            for x in 1..=500u64 {
                let t = [a * a * x, a * b * x, b * b * x];
                if t.iter().all(|&v| v <= 500 && board.binary_search(&(v as Vertex)).is_ok()) {
                    let p = table.partner(t[1] as Vertex).map(u64::from);
                    if p != Some(t[0]) && p != Some(t[2]) {
                        return Err(format!("({a}, {b}): triple {t:?} unblocked"));
                    }
                }
            }
            boards += 1;
        }
    }
    Ok(format!("{residues} residues, {boards} boards"))
}

fn c8_mu() -> Result<String, String> {
    let mu5 = compute_mu(&RadoSystem::schur(), 5, MuMode::Exact).map_err(|e| e.to_string())?;
    if mu5.mu != 3 {
        return Err(format!("Schur on [5] gave {}", mu5.mu));
    }
    for (name, sys) in [("schur", RadoSystem::schur()), ("3-ap", RadoSystem::three_ap())] {
        for n in 1..=16 {
            let e = compute_mu(&sys, n, MuMode::Exact).map_err(|e| e.to_string())?;
            let b = compute_mu(&sys, n, MuMode::BranchAndBound).map_err(|e| e.to_string())?;
            if e.mu != b.mu {
                return Err(format!("{name} on [{n}]: exact {} vs branch and bound {}", e.mu, b.mu));
            }
        }
    }
    Ok("mu(schur, 5) = 3; modes agree for n <= 16".into())
}

const SWEEP_SEED: u64 = 20_240_601;

fn sweep() -> Result<SweepResult, String> {
    let spec = ExperimentSpec::with_multipliers("schur", RadoSystem::schur(), vec![64, 128, 256], vec![0.1, 0.3, 1.0, 3.0, 10.0], 50, SWEEP_SEED)
        .map_err(|e| e.to_string())?;
    run_threshold_sweep(&spec).map_err(|e| e.to_string())
}

fn c9_threshold() -> Result<String, String> {
    let r = sweep()?;
    let mut trials: BTreeMap<(u32, u64), Vec<(f64, Option<Player>)>> = BTreeMap::new();
    for x in &r.records {
        trials.entry((x.n, x.seed)).or_default().push((x.p, x.winner));
    }
    for ((n, seed), rows) in &trials {
        let first = rows.iter().position(|(_, w)| *w == Some(Player::Maker));
        if let Some(i) = first {
            if rows[i..].iter().any(|(_, w)| *w != Some(Player::Maker)) {
                return Err(format!("n = {n}, seed {seed}: Maker certification not monotone: {rows:?}"));
            }
        }
    }
    let mut parts = Vec::new();
    for n in [64, 128, 256] {
        let rows: Vec<_> = r.summary.iter().filter(|s| s.n == n).collect();
        let (low, high) = (rows[0], rows[3]);
        if low.bicycle_freq() > high.bicycle_freq() {
            return Err(format!("n = {n}: bicycle frequency {} at 0.1 exceeds {} at 3", low.bicycle_freq(), high.bicycle_freq()));
        }
        let unknown: Vec<String> = rows.iter().map(|s| format!("{:.2}", s.unknown_freq())).collect();
        let maker: Vec<String> = rows.iter().map(|s| format!("{:.2}", s.maker_freq())).collect();
        parts.push(format!(
            "n={n} maker [{}] unknown [{}] bicycle@0.1 {:.2} bicycle@3 {:.2}",
            maker.join(" "),
            unknown.join(" "),
            low.bicycle_freq(),
            high.bicycle_freq()
        ));
    }
    Ok(parts.join("; "))
}

fn csv_without_millis(r: &SweepResult) -> Result<Vec<String>, String> {
    let mut buf = Vec::new();
    write_csv_to(&r.records, &mut buf).map_err(|e| e.to_string())?;
    let text = String::from_utf8(buf).map_err(|e| e.to_string())?;
    Ok(text.lines().map(|l| l.rsplit_once(',').map_or(l, |(a, _)| a).to_string()).collect())
}

fn c10_determinism() -> Result<String, String> {
    let a = csv_without_millis(&sweep()?)?;
    let b = csv_without_millis(&sweep()?)?;
    if a != b {
        let i = a.iter().zip(&b).position(|(x, y)| x != y).unwrap_or(a.len().min(b.len()));
        return Err(format!("row {i} differs"));
    }
    Ok(format!("{} identical rows", a.len() - 1))
}

fn main() {
    let checks: [(&str, Check); 10] = [
        ("single-equation m(A) = (k-1)/(k-2)", c1_single_equation_m),
        ("strict balance", c2_strict_balance),
        ("bicycle detector matches the order oracle", c3_detector_equivalence),
        ("decomposition Breaker survives exhaustive Maker play", c4_dl2_soundness),
        ("component solver matches naive minimax", c5_solver_consistency),
        ("(1:2) pair games are Breaker wins", c6_biased_pairs),
        ("residues and power pairings", c7_pair_strategies),
        ("mu oracle", c8_mu),
        ("threshold sweep properties", c9_threshold),
        ("sweep determinism", c10_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({detail}) [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
