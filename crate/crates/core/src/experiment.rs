//! Monte Carlo estimation of genericity proportions.
//!
//! Each experiment evaluates one predicate on `samples` exactly uniform
//! braids per length and reports the proportion with a Wilson score interval. Sample `i` at length `l` always uses the same
//! random stream, so rows are reproducible regardless of parallelism.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::census::{sample_rng, TransitionGraph};
use crate::conjugacy::{fast_rigid_conjugate, FastOutcome, WitnessPattern};
use crate::error::{invalid, BraidError, Result};
use crate::genericity::{
    blocking_braid, decompose, observation_test, prefix_of_complement, Scheme,
};
use crate::normal_form::NormalForm;
use crate::par::Exec;

/// Normal quantile for two-sided 95% intervals.
pub const Z95: f64 = 1.959_963_984_540_054;
/// Normal quantile for two-sided 99% intervals.
pub const Z99: f64 = 2.575_829_303_548_901;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    /// Sphere samples passing the rigidification test.
    RigidProportion,
    /// Sphere samples whose second piece contains the blocking braid.
    BlockingSubword,
    /// Sphere samples whose first piece is a prefix of `∂P5`.
    PrefixRare,
    /// Ball samples with a certified rigid conjugate.
    ConjugacySuccess,
    /// Running time of the fast rigid conjugate on sphere samples.
    ConjugacyBench,
    /// Ball samples with a rigid conjugate whose middle fifth contains every
    /// user-supplied witness word.
    PaProportion,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 6] = [
        ExperimentKind::RigidProportion,
        ExperimentKind::BlockingSubword,
        ExperimentKind::PrefixRare,
        ExperimentKind::ConjugacySuccess,
        ExperimentKind::ConjugacyBench,
        ExperimentKind::PaProportion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::RigidProportion => "rigid-proportion",
            ExperimentKind::BlockingSubword => "blocking-subword",
            ExperimentKind::PrefixRare => "prefix-rare",
            ExperimentKind::ConjugacySuccess => "conjugacy-success",
            ExperimentKind::ConjugacyBench => "conjugacy-bench",
            ExperimentKind::PaProportion => "pa-proportion",
        }
    }

    fn uses_ball(self) -> bool {
        matches!(
            self,
            ExperimentKind::ConjugacySuccess | ExperimentKind::PaProportion
        )
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| invalid(format!("unknown experiment kind {s:?}")))
    }
}

/// Everything an experiment run depends on.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub n: usize,
    /// Canonical lengths for sphere experiments, radii for ball experiments.
    pub lengths: Vec<usize>,
    /// `inf` of sphere samples.
    pub eps: i64,
    pub samples: u64,
    pub seed: u64,
    pub scheme: Scheme,
    pub patterns: Vec<WitnessPattern>,
    /// Words that must occur in the middle fifth, for `pa-proportion`.
    pub witnesses: Vec<NormalForm>,
    /// Record wall-clock time per row; `conjugacy-bench` is always timed.
    pub timing: bool,
    pub exec: Exec,
}

impl ExperimentConfig {
    pub fn new(
        kind: ExperimentKind,
        n: usize,
        lengths: Vec<usize>,
        samples: u64,
        seed: u64,
    ) -> Self {
        ExperimentConfig {
            kind,
            n,
            lengths,
            eps: 0,
            samples,
            seed,
            scheme: Scheme::default(),
            patterns: WitnessPattern::all(n),
            witnesses: Vec::new(),
            timing: false,
            exec: Exec::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.lengths.is_empty() {
            return Err(invalid("need at least one length"));
        }
        if self.lengths.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("lengths must be strictly ascending"));
        }
        if self.samples == 0 {
            return Err(invalid("sample count must be at least 1"));
        }
        for w in &self.witnesses {
            if w.strands() != self.n || w.inf() != 0 || w.canonical_length() == 0 {
                return Err(invalid(
                    "witness words must be nontrivial positive braids on n strands",
                ));
            }
        }
        Ok(())
    }
}

/// One line of experiment output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub n: usize,
    pub l: usize,
    pub samples: u64,
    pub successes: u64,
    pub proportion: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
    /// Wall time of the row when timed; for `conjugacy-bench`, the median
    /// time of one fast rigid conjugate call.
    pub elapsed_ms: f64,
}

impl ExperimentRow {
    pub fn new(
        n: usize,
        l: usize,
        samples: u64,
        successes: u64,
        seed: u64,
        elapsed_ms: f64,
    ) -> Self {
        let (ci_low, ci_high) = wilson_interval(successes, samples, Z95);
        ExperimentRow {
            n,
            l,
            samples,
            successes,
            proportion: successes as f64 / samples as f64,
            ci_low,
            ci_high,
            seed,
            elapsed_ms,
        }
    }
}

/// Wilson score interval for `successes` out of `samples`.
pub fn wilson_interval(successes: u64, samples: u64, z: f64) -> (f64, f64) {
    if samples == 0 {
        return (0.0, 1.0);
    }
    let m = samples as f64;
    let p = successes as f64 / m;
    let z2 = z * z;
    let centre = (p + z2 / (2.0 * m)) / (1.0 + z2 / m);
    let half = z / (1.0 + z2 / m) * (p * (1.0 - p) / m + z2 / (4.0 * m * m)).sqrt();
    ((centre - half).clamp(0.0, p), (centre + half).clamp(p, 1.0))
}

/// Whether the proportions are non-decreasing (or non-increasing) up to
/// interval slack: no later row is significantly below (above) an earlier one.
pub fn monotone_within_ci(rows: &[ExperimentRow], z: f64, increasing: bool) -> bool {
    let ci: Vec<_> = rows
        .iter()
        .map(|r| wilson_interval(r.successes, r.samples, z))
        .collect();
    (0..rows.len()).all(|i| {
        (i + 1..rows.len()).all(|j| {
            if increasing {
                ci[j].1 >= ci[i].0
            } else {
                ci[j].0 <= ci[i].1
            }
        })
    })
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Runs one experiment, one row per length.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRow>> {
    cfg.validate()?;
    let max = *cfg.lengths.last().expect("nonempty");
    let graph = TransitionGraph::new(cfg.n, max)?;
    let blocking = match cfg.kind {
        ExperimentKind::BlockingSubword => Some(blocking_braid(cfg.n)?),
        _ => None,
    };
    let mut rows = Vec::with_capacity(cfg.lengths.len());
    for &l in &cfg.lengths {
        let draw = |i: u64| -> Result<NormalForm> {
            let mut rng = sample_rng(cfg.seed, l, i);
            if cfg.kind.uses_ball() {
                graph.sample_ball(l, &mut rng)
            } else {
                graph.sample_sphere(l, cfg.eps, &mut rng)
            }
        };
        let start = Instant::now();
        let (successes, elapsed) = if cfg.kind == ExperimentKind::ConjugacyBench {
            bench_row(cfg, &draw)?
        } else {
            let hits = cfg
                .exec
                .count(cfg.samples, |i| evaluate(cfg, &draw(i)?, blocking.as_ref()))?;
            (hits, if cfg.timing { elapsed_ms(start) } else { 0.0 })
        };
        rows.push(ExperimentRow::new(
            cfg.n,
            l,
            cfg.samples,
            successes,
            cfg.seed,
            elapsed,
        ));
    }
    Ok(rows)
}

/// Sequential timing of every sample; returns successes and the median time.
fn bench_row(
    cfg: &ExperimentConfig,
    draw: &dyn Fn(u64) -> Result<NormalForm>,
) -> Result<(u64, f64)> {
    let mut times = Vec::with_capacity(cfg.samples as usize);
    let mut hits = 0;
    for i in 0..cfg.samples {
        let x = draw(i)?;
        let start = Instant::now();
        let out = fast_rigid_conjugate(&x, &cfg.patterns, cfg.scheme)?;
        times.push(elapsed_ms(start));
        hits += u64::from(out.is_certified());
    }
    times.sort_by(f64::total_cmp);
    Ok((hits, times[times.len() / 2]))
}

/// The per-sample predicate; every success is re-validated.
fn evaluate(cfg: &ExperimentConfig, x: &NormalForm, blocking: Option<&NormalForm>) -> Result<bool> {
    match cfg.kind {
        ExperimentKind::RigidProportion => match observation_test(x, cfg.scheme)? {
            Some(r) => r.validate(x, cfg.scheme).map(|_| true),
            None => Ok(false),
        },
        ExperimentKind::BlockingSubword => {
            let d = decompose(x, cfg.scheme)?;
            d.p2()
                .contains_factor_subword(blocking.expect("blocking braid built"))
        }
        ExperimentKind::PrefixRare => prefix_of_complement(x, cfg.scheme),
        ExperimentKind::ConjugacySuccess | ExperimentKind::ConjugacyBench => {
            Ok(fast_rigid_conjugate(x, &cfg.patterns, cfg.scheme)?.is_certified())
        }
        ExperimentKind::PaProportion => {
            let FastOutcome::Certificate(_) = fast_rigid_conjugate(x, &cfg.patterns, cfg.scheme)?
            else {
                return Ok(false);
            };
            let middle = decompose(x, cfg.scheme)?.p3().clone();
            for w in &cfg.witnesses {
                if !middle.contains_factor_subword(w)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

pub const CSV_HEADER: &str = "n,l,samples,successes,proportion,ci_low,ci_high,seed,elapsed_ms";

pub fn to_csv(rows: &[ExperimentRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{:.6},{:.6},{:.6},{},{:.3}",
            r.n,
            r.l,
            r.samples,
            r.successes,
            r.proportion,
            r.ci_low,
            r.ci_high,
            r.seed,
            r.elapsed_ms
        )
        .expect("writing to a String");
    }
    out
}

pub fn to_json(rows: &[ExperimentRow]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
    s.push('\n');
    s
}

/// Least-squares line through `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

pub fn linear_fit(points: &[(f64, f64)]) -> Result<LinearFit> {
    if points.len() < 2 {
        return Err(BraidError::UndefinedFit("need at least two points".into()));
    }
    let m = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(BraidError::UndefinedFit("all abscissae coincide".into()));
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 {
        1.0
    } else {
        sxy * sxy / (sxx * syy)
    };
    Ok(LinearFit {
        slope,
        intercept: my - slope * mx,
        r2,
    })
}

/// Fits `log(1 − proportion)` against `l` over the rows with proportion < 1.
pub fn fit_decay(rows: &[ExperimentRow]) -> Result<LinearFit> {
    let points: Vec<_> = rows
        .iter()
        .filter(|r| r.proportion < 1.0)
        .map(|r| (r.l as f64, (1.0 - r.proportion).ln()))
        .collect();
    linear_fit(&points)
}

/// Fits `t = a·l^b` in log-log scale from `elapsed_ms`; the slope is `b`.
pub fn fit_power_law(rows: &[ExperimentRow]) -> Result<LinearFit> {
    let points: Vec<_> = rows
        .iter()
        .filter(|r| r.elapsed_ms > 0.0 && r.l > 0)
        .map(|r| ((r.l as f64).ln(), r.elapsed_ms.ln()))
        .collect();
    linear_fit(&points)
}
