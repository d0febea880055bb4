use std::io::Write;

use anyhow::{bail, Result};
use num_traits::{Signed, Zero};
use rado_core::edge_order::{decompose_component_bounded, DecompositionCase, Outcome, DEFAULT_DETECT_BUDGET};
use rado_core::experiments::{
    fit_transition_by_n, gnuplot_table, run_threshold_sweep, write_csv_to, write_json_to, ExperimentSpec, Report,
    ReportMetadata, DEFAULT_MULTIPLIER,
};
use rado_core::game::{certify_winner, solve_exact, CertifyCaps, GameConfig, Player, SolverConfig};
use rado_core::matrix_analysis::{analyze, associated_pair, MatrixProfile};
use rado_core::solutions::{compute_mu, MuMode};
use rado_core::{Error, Hypergraph, RadoSystem};
use serde_json::{json, Value};

use crate::args::{AnalyzeArgs, BoardCommand, Format, GameArgs, MuArgs, MuModeArg, Side, SimulateArgs, SolveArgs};
use crate::input::{load_board, load_system};
use crate::output::emit;

pub struct Ctx<'a> {
    pub seed: u64,
    pub format: Option<Format>,
    pub cap: Option<usize>,
    pub out: &'a mut dyn Write,
}

impl Ctx<'_> {
    pub fn solver(&self, game: GameConfig) -> SolverConfig {
        let mut cfg = SolverConfig::with_game(game);
        if let Some(cap) = self.cap {
            cfg.cap = cap;
        }
        cfg
    }
}

pub fn game_config(g: &GameArgs) -> GameConfig {
    let first_player = match g.first {
        Side::Maker => Player::Maker,
        Side::Breaker => Player::Breaker,
    };
    GameConfig { bias: g.bias, first_player }
}

/// The one-line verdict on which regime the system falls in.
pub fn regime(sys: &RadoSystem, p: &MatrixProfile) -> String {
    if !p.irredundant_pair.found {
        return "pair not irredundant; trivially Breaker's win".into();
    }
    if p.irredundant_matrix.found {
        if let Some(m) = &p.m {
            return format!("m = {}/{}, threshold exponent -{}/{}", m.value.numer(), m.value.denom(), m.value.denom(), m.value.numer());
        }
        if let Some(w) = &p.degenerate_partition {
            return format!("(*) holds but m(A) is undefined: column set {w:?} has no positive denominator");
        }
        if sys.rows() == 1 {
            return "(*) fails; triple regime, exponent -1/3".into();
        }
        return "(*) fails; no threshold prediction for several rows".into();
    }
    if sys.rows() == 1 {
        let row: Vec<_> = (0..sys.cols()).map(|c| sys.entry(0, c)).filter(|x| !x.is_zero()).collect();
        if row.iter().all(|x| x.is_positive()) || row.iter().all(|x| x.is_negative()) {
            return "matrix not irredundant with coefficients of one sign; Breaker's win for p = o(1)".into();
        }
        return "matrix not irredundant; triple regime, exponent -1/3".into();
    }
    "matrix not irredundant; no threshold prediction for several rows".into()
}

fn witness(w: &Option<Vec<u64>>) -> String {
    w.as_ref().map_or("none found".into(), |w| format!("({})", w.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn analyze_cmd(ctx: &mut Ctx, a: &AnalyzeArgs) -> Result<()> {
    let (id, sys) = load_system(&a.system)?;
    let p = analyze(&sys, a.bound)?;
    let verdict = regime(&sys, &p);
    let pair = associated_pair(&sys).ok();
    let balance = p.strict_balance.as_ref();
    let mut text = format!("system: {id}\n{}\nrank: {}\n", sys.to_string().trim_end(), p.rank);
    text += &format!("pair irredundant: {}, witness {}\n", yes(p.irredundant_pair.found), witness(&p.irredundant_pair.witness));
    text += &format!("matrix irredundant: {}, witness {}\n", yes(p.irredundant_matrix.found), witness(&p.irredundant_matrix.witness));
    text += &format!("(*): {}\n", if p.satisfies_star { "holds" } else { "fails" });
    if let Some(m) = &p.m {
        text += &format!("m(A): {} (columns {:?})\n", m.value, m.partition);
    }
    match balance {
        Some(b) if b.balanced => text += "strictly balanced: yes\n",
        Some(b) => text += &format!("strictly balanced: no, violated by columns {:?}\n", b.violating.clone().unwrap_or_default()),
        None => text += "strictly balanced: undefined\n",
    }
    match &pair {
        Some(ap) => {
            text += &format!(
                "associated pair: {} (columns {:?}), checks {}\n",
                if ap.is_identity() { "the system itself".to_string() } else { ap.system.id() },
                ap.column_map,
                if ap.validation.all_pass() { "pass" } else { "fail" }
            )
        }
        None => text += "associated pair: none\n",
    }
    text += &format!("{verdict}\n");
    let data = json!({
        "system": id,
        "rank": p.rank,
        "pair_irredundant": p.irredundant_pair.found,
        "pair_witness": p.irredundant_pair.witness,
        "matrix_irredundant": p.irredundant_matrix.found,
        "matrix_witness": p.irredundant_matrix.witness,
        "star": p.satisfies_star,
        "m": p.m.as_ref().map(|m| m.value.to_string()),
        "strictly_balanced": balance.map(|b| b.balanced),
        "violating_columns": balance.and_then(|b| b.violating.clone()),
        "associated_pair": pair.as_ref().map(|ap| ap.system.id()),
        "associated_columns": pair.as_ref().map(|ap| ap.column_map.clone()),
        "search_bound": p.search_bound_used,
        "regime": verdict,
    });
    emit(ctx.out, ctx.format, &data, &text)
}

pub fn enumerate_cmd(ctx: &mut Ctx, a: &BoardCommand) -> Result<()> {
    let h = &load_board(&a.system, &a.board, ctx.seed)?;
    let mut text = format!("# {} winning sets on {} board elements\n", h.num_edges(), h.num_vertices());
    for e in h.edges() {
        text += &format!("{}\n", e.iter().map(u32::to_string).collect::<Vec<_>>().join(" "));
    }
    let data = match ctx.format {
        Some(Format::Csv) => Value::Array(h.edges().iter().map(|e| json!({ "edge": join(e) })).collect()),
        _ => h.to_json(),
    };
    emit(ctx.out, ctx.format, &data, &text)
}

fn join(e: &[u32]) -> String {
    e.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

pub fn mu_cmd(ctx: &mut Ctx, a: &MuArgs) -> Result<()> {
    let (id, sys) = load_system(&a.system)?;
    let mode = match a.mode {
        MuModeArg::Exact => MuMode::Exact,
        MuModeArg::Bnb => MuMode::BranchAndBound,
    };
    let r = compute_mu(&sys, a.n, mode)?;
    let text = format!("mu = {} on [{}], witness {{{}}}\n", r.mu, a.n, r.witness.iter().map(u32::to_string).collect::<Vec<_>>().join(", "));
    let data = json!({ "system": id, "n": a.n, "mu": r.mu, "witness": join(&r.witness) });
    emit(ctx.out, ctx.format, &data, &text)
}

pub fn case_label(c: DecompositionCase) -> &'static str {
    match c {
        DecompositionCase::Simple => "case (i), simple order",
        DecompositionCase::LooseCycle => "case (ii) loose cycle",
        DecompositionCase::OverlappingPair => "case (iii) overlapping pair",
        DecompositionCase::Pasch => "case (iv) Pasch",
        DecompositionCase::Star => "case (v) star",
        DecompositionCase::Link => "case (vi) link",
    }
}

fn edges_text(es: &[Vec<u32>]) -> String {
    es.iter().map(|e| format!("{{{}}}", e.iter().map(u32::to_string).collect::<Vec<_>>().join(","))).collect::<Vec<_>>().join(" ")
}

pub fn detect_cmd(ctx: &mut Ctx, a: &BoardCommand) -> Result<()> {
    let h = load_board(&a.system, &a.board, ctx.seed)?;
    let (text, rows) = detect_report(&h);
    emit(ctx.out, ctx.format, &Value::Array(rows), &text)
}

pub fn detect_report(h: &Hypergraph) -> (String, Vec<Value>) {
    let mut text = format!("{} nontrivial components\n", h.nontrivial_components().count());
    let mut rows = Vec::new();
    for (id, comp) in h.nontrivial_components() {
        let head = format!("component {id}: {} vertices, {} edges: ", comp.vertices.len(), comp.edges.len());
        let (line, row) = match decompose_component_bounded(h, id, DEFAULT_DETECT_BUDGET) {
            Ok(Outcome::Decomposed(d)) => {
                let order: Vec<Vec<u32>> = d.order.iter().map(|&e| h.edge(e).to_vec()).collect();
                let line = format!("{}; order {}", case_label(d.case), edges_text(&order));
                (line, json!({ "component": id, "result": case_label(d.case), "a": d.a, "edges": edges_text(&order) }))
            }
            Ok(Outcome::Bicycle(w)) => {
                let line = format!("bicycle ({}) on {}", w.kind.name(), edges_text(&w.edges));
                (line, json!({ "component": id, "result": format!("bicycle {}", w.kind.name()), "a": null, "edges": edges_text(&w.edges) }))
            }
            Err(e) => (format!("unresolved: {e}"), json!({ "component": id, "result": "unresolved", "a": null, "edges": e.to_string() })),
        };
        text += &head;
        text += &line;
        text.push('\n');
        rows.push(row);
    }
    (text, rows)
}

pub fn solve_cmd(ctx: &mut Ctx, a: &SolveArgs) -> Result<()> {
    let h = load_board(&a.input.system, &a.input.board, ctx.seed)?;
    let game = game_config(&a.game);
    let (winner, certificate, bicycle) = if a.certify {
        if game != GameConfig::default() {
            bail!(Error::InvalidInput("--certify covers the unbiased game with Maker first".into()));
        }
        let mut caps = CertifyCaps::default();
        if let Some(cap) = ctx.cap {
            caps.solver.cap = cap;
        }
        let c = certify_winner(&h, &caps, None);
        (c.winner, c.certificate.name(), c.bicycle)
    } else {
        (Some(solve_exact(&h, &ctx.solver(game))?), "minimax", None)
    };
    let w = winner.map_or("unknown", Player::name);
    let mut text = format!("board: {} elements, {} winning sets\nwinner: {w} ({certificate})\n", h.num_vertices(), h.num_edges());
    if a.certify {
        text += &format!("bicycle: {}\n", bicycle.map_or("unknown".into(), |b| yes(b).to_string()));
    }
    let data = json!({
        "vertices": h.num_vertices(),
        "edges": h.num_edges(),
        "bias": game.bias,
        "first": game.first_player.name(),
        "winner": w,
        "certificate": certificate,
        "bicycle": bicycle,
    });
    emit(ctx.out, ctx.format, &data, &text)
}

pub fn simulate_cmd(ctx: &mut Ctx, a: &SimulateArgs, err: &mut dyn Write) -> Result<()> {
    let (id, sys) = load_system(&a.system)?;
    let mut spec = match &a.p {
        Some(ps) => ExperimentSpec::with_probabilities(id, sys, a.n.clone(), ps.clone(), a.trials, ctx.seed)?,
        None => {
            let ms = a.multipliers.clone().unwrap_or_else(|| vec![DEFAULT_MULTIPLIER]);
            ExperimentSpec::with_multipliers(id, sys, a.n.clone(), ms, a.trials, ctx.seed)?
        }
    };
    if let Some(cap) = ctx.cap {
        spec.caps.solver.cap = cap;
    }
    let r = run_threshold_sweep(&spec)?;
    let mut buf = Vec::new();
    match ctx.format {
        Some(Format::Json) => {
            write_json_to(&Report { metadata: ReportMetadata::for_spec(&spec), records: r.records.clone() }, &mut buf)?;
            buf.push(b'\n');
        }
        _ => write_csv_to(&r.records, &mut buf)?,
    }
    match &a.out {
        Some(path) => std::fs::write(path, &buf).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?,
        None => ctx.out.write_all(&buf)?,
    }
    if let Some(path) = &a.gnuplot {
        std::fs::write(path, gnuplot_table(&r.summary)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    writeln!(err, "n p trials maker breaker unknown bicycle")?;
    for s in &r.summary {
        writeln!(err, "{} {} {} {:.3} {:.3} {:.3} {:.3}", s.n, s.p, s.trials, s.maker_freq(), s.breaker_freq(), s.unknown_freq(), s.bicycle_freq())?;
    }
    if a.fit {
        for (n, fit) in fit_transition_by_n(&r.summary, ctx.seed) {
            match fit {
                Ok(f) => match f.ci {
                    Some((lo, hi)) => writeln!(err, "n = {n}: p_half = {:.5} (95% CI {lo:.5} to {hi:.5})", f.p_half)?,
                    None => writeln!(err, "n = {n}: p_half = {:.5}", f.p_half)?,
                },
                Err(e) => writeln!(err, "n = {n}: no fit: {e}")?,
            }
        }
    }
    Ok(())
}
