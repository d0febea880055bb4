//! Monte Carlo sweeps over random boards `[n]_p`: certify a winner per trial, count
//! structures, and write reports.
//!
//! All probabilities for one `(n, trial)` pair share a single array of uniforms, so the
//! boards are nested in `p`. Each trial also hands the sub-board Maker was certified on to
//! the next larger `p`, which makes Maker certification monotone trial by trial.

mod fit;
mod report;

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::edge_order::{detect_bicycle_bounded, recognize, StructureKind, DEFAULT_DETECT_BUDGET};
use crate::error::{Error, Result};
use crate::game::{certify_winner, CertifyCaps, Player};
use crate::hypergraph::{board_uniforms, Board, Hypergraph, Vertex};
use crate::matrix_analysis::{compute_m, satisfies_star};
use crate::solutions::enumerate_solutions;
use crate::system::RadoSystem;

pub use fit::{fit_transition, fit_transition_by_n, TransitionFit};
pub use report::{
    gnuplot_table, read_csv_rows, read_json, write_csv, write_csv_to, write_json, write_json_to, Report, ReportMetadata,
    CSV_HEADER,
};

/// Breaker-side multiplier used when none is given. The constant the probabilistic
/// argument needs, `1/(k e^2)`, gives boards too sparse to be interesting at these sizes;
/// it is kept in the report metadata.
pub const DEFAULT_MULTIPLIER: f64 = 0.2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", content = "values", rename_all = "snake_case")]
pub enum ProbabilityRule {
    Explicit(Vec<f64>),
    /// `c * n^exponent` for each multiplier `c`, capped at one.
    Multipliers(Vec<f64>),
}

#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub system_id: String,
    pub system: RadoSystem,
    pub n_values: Vec<u32>,
    pub rule: ProbabilityRule,
    /// Exponent of `n` for the multiplier rule, normally `-1/m(A)`.
    pub exponent: f64,
    pub trials: usize,
    pub seed: u64,
    pub caps: CertifyCaps,
}

impl ExperimentSpec {
    /// A multiplier sweep at the system's threshold scale `n^(-1/m(A))`.
    pub fn with_multipliers(system_id: impl Into<String>, system: RadoSystem, n_values: Vec<u32>, multipliers: Vec<f64>, trials: usize, seed: u64) -> Result<Self> {
        let exponent = threshold_exponent(&system)?;
        let spec = Self {
            system_id: system_id.into(),
            system,
            n_values,
            rule: ProbabilityRule::Multipliers(multipliers),
            exponent,
            trials,
            seed,
            caps: CertifyCaps::default(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_probabilities(system_id: impl Into<String>, system: RadoSystem, n_values: Vec<u32>, ps: Vec<f64>, trials: usize, seed: u64) -> Result<Self> {
        let spec = Self {
            system_id: system_id.into(),
            system,
            n_values,
            rule: ProbabilityRule::Explicit(ps),
            exponent: 0.0,
            trials,
            seed,
            caps: CertifyCaps::default(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidInput("trials must be at least 1".into()));
        }
        if self.n_values.is_empty() || self.n_values.contains(&0) {
            return Err(Error::InvalidInput("need at least one positive n".into()));
        }
        let values = match &self.rule {
            ProbabilityRule::Explicit(v) | ProbabilityRule::Multipliers(v) => v,
        };
        if values.is_empty() {
            return Err(Error::InvalidInput("need at least one probability or multiplier".into()));
        }
        match &self.rule {
            ProbabilityRule::Explicit(v) if v.iter().any(|p| !(0.0..=1.0).contains(p)) => {
                Err(Error::InvalidInput("probabilities must lie in [0, 1]".into()))
            }
            ProbabilityRule::Multipliers(v) if v.iter().any(|c| !c.is_finite() || *c < 0.0) => {
                Err(Error::InvalidInput("multipliers must be non-negative".into()))
            }
            _ => Ok(()),
        }
    }

    /// `(multiplier, p)` pairs for `n`, sorted by `p`; the multiplier is `None` for
    /// explicit probabilities.
    pub fn probabilities(&self, n: u32) -> Vec<(Option<f64>, f64)> {
        let mut out: Vec<(Option<f64>, f64)> = match &self.rule {
            ProbabilityRule::Explicit(ps) => ps.iter().map(|&p| (None, p)).collect(),
            ProbabilityRule::Multipliers(cs) => cs.iter().map(|&c| (Some(c), (c * (n as f64).powf(self.exponent)).min(1.0))).collect(),
        };
        out.sort_by(|a, b| a.1.total_cmp(&b.1));
        out
    }

    /// Seed of the uniforms for trial `trial` at size `n`.
    pub fn trial_seed(&self, n: u32, trial: usize) -> u64 {
        splitmix(self.seed ^ splitmix(((n as u64) << 32) | trial as u64))
    }
}

fn splitmix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// `-1/m(A)` as a float; only defined when (*) holds.
pub fn threshold_exponent(system: &RadoSystem) -> Result<f64> {
    if !satisfies_star(system) {
        return Err(Error::InvalidInput("the threshold scale n^(-1/m) needs (*) to hold; give explicit probabilities".into()));
    }
    compute_m(system)?.threshold_exponent().to_f64().ok_or_else(|| Error::Internal("exponent out of range".into()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub system_id: String,
    pub n: u32,
    pub p: f64,
    pub seed: u64,
    pub board_size: usize,
    pub edges: usize,
    pub components: usize,
    pub max_component: usize,
    /// `None` when the search ran out of budget.
    pub bicycle: Option<bool>,
    /// `None` when nothing was certified.
    pub winner: Option<Player>,
    pub certificate: String,
    pub millis: u64,
}

/// Per-`(n, p)` counts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub n: u32,
    pub p: f64,
    pub multiplier: Option<f64>,
    pub trials: usize,
    pub maker: usize,
    pub breaker: usize,
    pub unknown: usize,
    pub bicycle: usize,
    pub bicycle_unknown: usize,
}

impl SummaryRow {
    fn freq(&self, x: usize) -> f64 {
        x as f64 / self.trials.max(1) as f64
    }

    pub fn maker_freq(&self) -> f64 {
        self.freq(self.maker)
    }

    pub fn breaker_freq(&self) -> f64 {
        self.freq(self.breaker)
    }

    pub fn unknown_freq(&self) -> f64 {
        self.freq(self.unknown)
    }

    pub fn bicycle_freq(&self) -> f64 {
        self.freq(self.bicycle)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub records: Vec<TrialRecord>,
    pub summary: Vec<SummaryRow>,
}

/// Runs every trial, in parallel over `(n, trial)`, and returns records in `(n, p, trial)`
/// order. Enumeration failures become unknown records.
pub fn run_threshold_sweep(spec: &ExperimentSpec) -> Result<SweepResult> {
    spec.validate()?;
    let jobs: Vec<(usize, u32, usize)> =
        spec.n_values.iter().enumerate().flat_map(|(ni, &n)| (0..spec.trials).map(move |t| (ni, n, t))).collect();
    let mut tagged: Vec<((usize, usize, usize), TrialRecord)> = jobs
        .par_iter()
        .flat_map_iter(|&(ni, n, t)| run_trial(spec, n, t).into_iter().enumerate().map(move |(pi, r)| ((ni, pi, t), r)))
        .collect();
    tagged.sort_by_key(|(k, _)| *k);
    let records: Vec<TrialRecord> = tagged.into_iter().map(|(_, r)| r).collect();
    let summary = summarize(spec, &records);
    Ok(SweepResult { records, summary })
}

/// One coupled trial: every probability for `n`, in increasing order.
fn run_trial(spec: &ExperimentSpec, n: u32, trial: usize) -> Vec<TrialRecord> {
    let seed = spec.trial_seed(n, trial);
    let uniforms = board_uniforms(n, seed);
    let mut hint: Option<Vec<Vertex>> = None;
    let mut out = Vec::new();
    for (_, p) in spec.probabilities(n) {
        let start = Instant::now();
        let board = Board::from_uniforms(&uniforms, p);
        let mut rec = TrialRecord {
            system_id: spec.system_id.clone(),
            n,
            p,
            seed,
            board_size: board.len(),
            edges: 0,
            components: 0,
            max_component: 0,
            bicycle: None,
            winner: None,
            certificate: crate::game::Certificate::UnknownHeuristic.name().into(),
            millis: 0,
        };
        if let Ok(h) = enumerate_solutions(&spec.system, &board) {
            rec.edges = h.num_edges();
            rec.components = h.nontrivial_components().count();
            rec.max_component = h.max_component_size();
            let c = certify_winner(&h, &spec.caps, hint.as_deref());
            rec.bicycle = c.bicycle;
            rec.winner = c.winner;
            rec.certificate = c.certificate.name().into();
            if let Some(b) = c.maker_board {
                hint = Some(b);
            }
        }
        rec.millis = start.elapsed().as_millis() as u64;
        out.push(rec);
    }
    out
}

fn summarize(spec: &ExperimentSpec, records: &[TrialRecord]) -> Vec<SummaryRow> {
    let mut rows = Vec::new();
    for &n in &spec.n_values {
        for (multiplier, p) in spec.probabilities(n) {
            let mut row = SummaryRow { n, p, multiplier, trials: 0, maker: 0, breaker: 0, unknown: 0, bicycle: 0, bicycle_unknown: 0 };
            for r in records.iter().filter(|r| r.n == n && r.p == p) {
                row.trials += 1;
                match r.winner {
                    Some(Player::Maker) => row.maker += 1,
                    Some(Player::Breaker) => row.breaker += 1,
                    None => row.unknown += 1,
                }
                match r.bicycle {
                    Some(true) => row.bicycle += 1,
                    Some(false) => {}
                    None => row.bicycle_unknown += 1,
                }
            }
            // Equal probabilities from different multipliers (both capped at 1) share records.
            if !rows.iter().any(|x: &SummaryRow| x.n == n && x.p == p) {
                rows.push(row);
            }
        }
    }
    rows
}

/// What [`structure_frequency`] counts: one structure kind, or any bicycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum StructureQuery {
    Bicycle,
    Kind(StructureKind),
}

impl StructureQuery {
    pub fn name(self) -> &'static str {
        match self {
            StructureQuery::Bicycle => "bicycle",
            StructureQuery::Kind(k) => k.name(),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        if s == "bicycle" {
            return Some(StructureQuery::Bicycle);
        }
        StructureKind::ALL.into_iter().find(|k| k.name() == s).map(StructureQuery::Kind)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructureCount {
    pub n: u32,
    pub p: f64,
    pub trials: usize,
    /// Components containing each structure, summed over trials.
    pub counts: BTreeMap<&'static str, usize>,
    /// Component searches that ran out of budget, summed over trials and queries.
    pub unknown: usize,
}

/// Edges in the longest sequence the structure search tries.
pub const STRUCTURE_SEARCH_EDGES: usize = 6;

/// Counts, per `(n, p)`, the components containing each queried structure.
pub fn structure_frequency(spec: &ExperimentSpec, queries: &[StructureQuery]) -> Result<Vec<StructureCount>> {
    spec.validate()?;
    let jobs: Vec<(usize, u32, usize)> =
        spec.n_values.iter().enumerate().flat_map(|(ni, &n)| (0..spec.trials).map(move |t| (ni, n, t))).collect();
    let per_trial: Vec<(usize, Vec<(BTreeMap<&'static str, usize>, usize)>)> = jobs
        .par_iter()
        .map(|&(ni, n, t)| {
            let uniforms = board_uniforms(n, spec.trial_seed(n, t));
            let rows = spec
                .probabilities(n)
                .into_iter()
                .map(|(_, p)| match enumerate_solutions(&spec.system, &Board::from_uniforms(&uniforms, p)) {
                    Ok(h) => count_structures(&h, queries, spec.caps.detect_budget),
                    Err(_) => (BTreeMap::new(), queries.len()),
                })
                .collect();
            (ni, rows)
        })
        .collect();
    let mut out = Vec::new();
    for (ni, &n) in spec.n_values.iter().enumerate() {
        for (pi, (_, p)) in spec.probabilities(n).into_iter().enumerate() {
            let mut row = StructureCount { n, p, trials: 0, counts: queries.iter().map(|q| (q.name(), 0)).collect(), unknown: 0 };
            for (_, rows) in per_trial.iter().filter(|(i, _)| *i == ni) {
                let (counts, unknown) = &rows[pi];
                row.trials += 1;
                row.unknown += unknown;
                for (k, v) in counts {
                    *row.counts.entry(k).or_insert(0) += v;
                }
            }
            out.push(row);
        }
    }
    Ok(out)
}

/// Per-query counts of components containing the structure, and exhausted searches.
pub fn count_structures(h: &Hypergraph, queries: &[StructureQuery], budget: usize) -> (BTreeMap<&'static str, usize>, usize) {
    let mut counts: BTreeMap<&'static str, usize> = queries.iter().map(|q| (q.name(), 0)).collect();
    let mut unknown = 0;
    for (c, _) in h.nontrivial_components() {
        for &q in queries {
            let found = match q {
                StructureQuery::Bicycle => detect_bicycle_bounded(h, c, budget).map(|w| w.is_some()),
                StructureQuery::Kind(kind) => contains_structure(&h.component_hypergraph(c), kind, STRUCTURE_SEARCH_EDGES, budget),
            };
            match found {
                Ok(true) => *counts.get_mut(q.name()).expect("query key") += 1,
                Ok(false) => {}
                Err(_) => unknown += 1,
            }
        }
    }
    (counts, unknown)
}

/// Whether some sequence of at most `max_edges` distinct edges, each meeting the earlier
/// ones, is recognized as `kind`.
pub fn contains_structure(h: &Hypergraph, kind: StructureKind, max_edges: usize, budget: usize) -> Result<bool> {
    struct Dfs<'a> {
        h: &'a Hypergraph,
        kind: StructureKind,
        max: usize,
        budget: usize,
        steps: usize,
        seq: Vec<Vec<Vertex>>,
        used: Vec<bool>,
    }
    impl Dfs<'_> {
        fn go(&mut self) -> Result<bool> {
            self.steps += 1;
            if self.steps > self.budget {
                return Err(Error::CapExceeded { what: "structure search steps", actual: self.steps, cap: self.budget });
            }
            if !self.seq.is_empty() && recognize(self.h.uniformity(), &self.seq, self.kind).is_some() {
                return Ok(true);
            }
            if self.seq.len() == self.max {
                return Ok(false);
            }
            let touching: Vec<usize> = if self.seq.is_empty() {
                (0..self.h.num_edges()).collect()
            } else {
                let mut t: Vec<usize> = self.seq.iter().flatten().flat_map(|&v| self.h.incident(v).iter().copied()).collect();
                t.sort_unstable();
                t.dedup();
                t
            };
            for e in touching {
                if self.used[e] {
                    continue;
                }
                self.used[e] = true;
                self.seq.push(self.h.edge(e).to_vec());
                let hit = self.go()?;
                self.seq.pop();
                self.used[e] = false;
                if hit {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
    let mut d = Dfs { h, kind, max: max_edges, budget, steps: 0, seq: Vec::new(), used: vec![false; h.num_edges()] };
    d.go()
}

/// Default budget for per-component structure searches.
pub const DEFAULT_STRUCTURE_BUDGET: usize = DEFAULT_DETECT_BUDGET;
