//! Logistic fit of Maker frequency against `log p`, locating the 50% crossing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::SummaryRow;
use crate::error::{Error, Result};

const RIDGE: f64 = 1e-2;
const BOOTSTRAP_REPS: usize = 200;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransitionFit {
    pub p_half: f64,
    /// 95% percentile bootstrap interval for `p_half`.
    pub ci: Option<(f64, f64)>,
    /// Slope in `log p`.
    pub slope: f64,
}

/// Fits `freq = 1 / (1 + exp(-(a + b log p)))` to `(p, freq, trials)` points.
pub fn fit_transition(points: &[(f64, f64, usize)], seed: u64) -> Result<TransitionFit> {
    if points.len() < 3 {
        return Err(Error::InvalidInput(format!("need at least 3 probabilities, got {}", points.len())));
    }
    if points.iter().any(|&(p, f, t)| !(p > 0.0 && p.is_finite()) || !(0.0..=1.0).contains(&f) || t == 0) {
        return Err(Error::InvalidInput("points need p > 0, a frequency in [0, 1] and at least one trial".into()));
    }
    if points.iter().all(|&(_, f, _)| f == points[0].1) {
        return Err(Error::DegenerateData(format!("every frequency equals {}", points[0].1)));
    }
    let (p_half, slope) = newton(points)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut halves = Vec::with_capacity(BOOTSTRAP_REPS);
    for _ in 0..BOOTSTRAP_REPS {
        let sample: Vec<(f64, f64, usize)> = points
            .iter()
            .map(|&(p, f, t)| (p, (0..t).filter(|_| rng.gen::<f64>() < f).count() as f64 / t as f64, t))
            .collect();
        if sample.iter().all(|&(_, f, _)| f == sample[0].1) {
            continue;
        }
        if let Ok((h, _)) = newton(&sample) {
            halves.push(h);
        }
    }
    halves.sort_by(f64::total_cmp);
    let ci = (halves.len() >= 20).then(|| {
        let at = |q: f64| halves[((halves.len() - 1) as f64 * q).round() as usize];
        (at(0.025), at(0.975))
    });
    Ok(TransitionFit { p_half, ci, slope })
}

/// Ridge-regularized Newton iterations on centered `log p`.
fn newton(points: &[(f64, f64, usize)]) -> Result<(f64, f64)> {
    let xs: Vec<f64> = points.iter().map(|&(p, _, _)| p.ln()).collect();
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    let (mut a, mut b) = (0.0f64, 0.0f64);
    for _ in 0..200 {
        let (mut ga, mut gb, mut haa, mut hab, mut hbb) = (-RIDGE * a, -RIDGE * b, RIDGE, 0.0, RIDGE);
        for (&(_, y, t), &x) in points.iter().zip(&xs) {
            let x = x - mean;
            let s = 1.0 / (1.0 + (-(a + b * x)).exp());
            let w = t as f64;
            ga += w * (y - s);
            gb += w * (y - s) * x;
            let v = w * s * (1.0 - s);
            haa += v;
            hab += v * x;
            hbb += v * x * x;
        }
        let det = haa * hbb - hab * hab;
        let (da, db) = ((hbb * ga - hab * gb) / det, (haa * gb - hab * ga) / det);
        a += da;
        b += db;
        if da.abs().max(db.abs()) < 1e-12 {
            break;
        }
    }
    if !(b.abs() > 1e-9 && a.is_finite() && b.is_finite()) {
        return Err(Error::DegenerateData("the fitted slope vanishes".into()));
    }
    Ok(((mean - a / b).exp(), b))
}

/// One fit per `n` over the summary rows with positive `p`.
pub fn fit_transition_by_n(summary: &[SummaryRow], seed: u64) -> Vec<(u32, Result<TransitionFit>)> {
    let mut ns: Vec<u32> = summary.iter().map(|r| r.n).collect();
    ns.dedup();
    ns.into_iter()
        .map(|n| {
            let pts: Vec<(f64, f64, usize)> =
                summary.iter().filter(|r| r.n == n && r.p > 0.0).map(|r| (r.p, r.maker_freq(), r.trials)).collect();
            (n, fit_transition(&pts, seed))
        })
        .collect()
}
