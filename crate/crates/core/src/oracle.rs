//! Ground truth and brute-force checks: random Blaschke products, Monte Carlo
//! membership trials, confluence experiments and the chain identity suite.

use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::chain::{
    check_coefficient_gap, check_determinant_identity, check_neighbor_identities, check_reflection_identity,
    evaluate_chain, ChainConfig, ChainMode,
};
use crate::divided::{hyperbolic_derivatives, InterpolationData};
use crate::error::{Error, Result};
use crate::function::{Blaschke, DiskMap, SchurFunction};
use crate::hyperbolic::Tolerances;
use crate::json;
use crate::variability::{hyperbolic_region, MultipointProblem, RegionKind, VariabilityRegion};

pub const MAX_BLASCHKE_DEGREE: usize = 32;
pub const DEFAULT_R_MAX: f64 = 0.9;
pub const MEMBERSHIP_TOL: f64 = 1e-9;
pub const MAX_RESAMPLES: usize = 100;
pub const IDENTITY_TOL: f64 = 1e-11;

/// Independent generator for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform (by area) sample of `|z| <= r`.
pub fn sample_disk(rng: &mut impl Rng, r: f64) -> Complex64 {
    Complex64::from_polar(r * rng.gen::<f64>().sqrt(), rng.gen::<f64>() * TAU)
}

pub fn sample_circle(rng: &mut impl Rng) -> Complex64 {
    Complex64::from_polar(1.0, rng.gen::<f64>() * TAU)
}

fn blaschke_from(rng: &mut impl Rng, degree: usize) -> Blaschke {
    assert!(degree <= MAX_BLASCHKE_DEGREE, "degree {degree} exceeds {MAX_BLASCHKE_DEGREE}");
    let rotation = sample_circle(rng);
    let zeros = (0..degree).map(|_| sample_disk(rng, DEFAULT_R_MAX)).collect();
    Blaschke::new(rotation, zeros)
}

/// `e^{iθ} prod (z - a_j) / (1 - conj(a_j) z)` with zeros uniform in
/// `|a| <= 0.9` and `θ` uniform.
pub fn random_blaschke(degree: usize, seed: u64) -> SchurFunction {
    SchurFunction::Blaschke(blaschke_from(&mut ChaCha8Rng::seed_from_u64(seed), degree))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroundTruth {
    Blaschke { degree: usize },
    ScaledBlaschke { scale: f64, degree: usize },
    Constant,
    /// Blaschke of degree `n+1..=n+3` or a scaled Blaschke product with a
    /// random scale in `[0.5, 1)`, chosen per trial.
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RandomProblemSpec {
    pub seed: u64,
    pub n: usize,
    pub r_max: f64,
    pub family: GroundTruth,
}

impl RandomProblemSpec {
    pub fn new(seed: u64, n: usize, family: GroundTruth) -> Self {
        Self { seed, n, r_max: DEFAULT_R_MAX, family }
    }
}

pub fn sample_ground_truth(rng: &mut impl Rng, family: GroundTruth, n: usize) -> SchurFunction {
    match family {
        GroundTruth::Blaschke { degree } => SchurFunction::Blaschke(blaschke_from(rng, degree)),
        GroundTruth::ScaledBlaschke { scale, degree } => {
            SchurFunction::ScaledBlaschke { scale, blaschke: blaschke_from(rng, degree) }
        }
        GroundTruth::Constant => SchurFunction::Constant(sample_disk(rng, DEFAULT_R_MAX)),
        GroundTruth::Mixed => {
            let degree = rng.gen_range(n + 1..=n + 3);
            if rng.gen_bool(0.5) {
                SchurFunction::Blaschke(blaschke_from(rng, degree))
            } else {
                let scale = rng.gen_range(0.5..1.0);
                SchurFunction::ScaledBlaschke { scale, blaschke: blaschke_from(rng, degree) }
            }
        }
    }
}

/// Ground truth, its interpolation data and the reduced problem.
#[derive(Debug, Clone)]
pub struct SampledProblem {
    pub truth: SchurFunction,
    pub problem: MultipointProblem,
    /// Number of draws rejected before this one.
    pub resampled: usize,
}

/// Draws problems until the table is interior, up to [`MAX_RESAMPLES`] retries.
pub fn sample_problem(rng: &mut impl Rng, spec: &RandomProblemSpec) -> Option<SampledProblem> {
    for attempt in 0..=MAX_RESAMPLES {
        let truth = sample_ground_truth(rng, spec.family, spec.n);
        let nodes: Vec<Complex64> = (0..=spec.n).map(|_| sample_disk(rng, spec.r_max)).collect();
        let values = nodes.iter().map(|&z| truth.eval(z)).collect();
        let Ok(data) = InterpolationData::new(nodes, values, Tolerances::default()) else { continue };
        let Ok(problem) = MultipointProblem::new(data) else { continue };
        if problem.chain_config().is_some() {
            return Some(SampledProblem { truth, problem, resampled: attempt });
        }
    }
    None
}

/// A single membership trial, kept for replay.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipCase {
    pub trial: u64,
    #[serde(with = "json::pairs")]
    pub nodes: Vec<Complex64>,
    #[serde(with = "json::pairs")]
    pub values: Vec<Complex64>,
    #[serde(with = "json::pair")]
    pub z: Complex64,
    #[serde(with = "json::pair")]
    pub truth_value: Complex64,
    pub overhang: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipReport {
    pub trials: u64,
    pub violations: u64,
    /// Largest signed distance of `F(z)` outside its region; negative when
    /// every value was strictly inside.
    pub max_overhang: f64,
    pub resampled: u64,
    /// Trials abandoned after the resample cap or a conditioning failure.
    pub skipped: u64,
    pub worst: Option<MembershipCase>,
}

impl MembershipReport {
    fn empty() -> Self {
        Self { trials: 0, violations: 0, max_overhang: f64::NEG_INFINITY, resampled: 0, skipped: 0, worst: None }
    }

    fn merge(mut self, other: Self) -> Self {
        self.trials += other.trials;
        self.violations += other.violations;
        self.resampled += other.resampled;
        self.skipped += other.skipped;
        let take_other = match (&self.worst, &other.worst) {
            (_, None) => false,
            (None, Some(_)) => true,
            (Some(a), Some(b)) => (b.overhang, std::cmp::Reverse(b.trial)) > (a.overhang, std::cmp::Reverse(a.trial)),
        };
        if take_other {
            self.worst = other.worst;
        }
        self.max_overhang = self.max_overhang.max(other.max_overhang);
        self
    }
}

fn membership_trial(spec: &RandomProblemSpec, trial: u64) -> MembershipReport {
    let mut rng = trial_rng(spec.seed, trial);
    let mut report = MembershipReport { trials: 1, ..MembershipReport::empty() };
    let Some(sample) = sample_problem(&mut rng, spec) else {
        report.resampled = MAX_RESAMPLES as u64;
        report.skipped = 1;
        return report;
    };
    report.resampled = sample.resampled as u64;
    let z = sample_disk(&mut rng, 0.95);
    let truth_value = sample.truth.eval(z);
    let region = match sample.problem.region(z) {
        Ok(r) => r,
        Err(_) => {
            report.skipped = 1;
            return report;
        }
    };
    let overhang = region.overhang(truth_value);
    if !(overhang <= MEMBERSHIP_TOL) {
        report.violations = 1;
    }
    report.max_overhang = overhang;
    report.worst = Some(MembershipCase {
        trial,
        nodes: sample.problem.data().nodes().to_vec(),
        values: sample.problem.data().values().to_vec(),
        z,
        truth_value,
        overhang,
    });
    report
}

/// Samples `trials` (ground truth, nodes, query) triples and checks
/// `F(z)` against the computed region.
pub fn membership_test(spec: &RandomProblemSpec, trials: u64) -> MembershipReport {
    (0..trials)
        .into_par_iter()
        .map(|t| membership_trial(spec, t))
        .reduce(MembershipReport::empty, MembershipReport::merge)
}

/// Deviation of a clustered multipoint disk from the confluent disk at one step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConfluenceStep {
    pub delta: f64,
    pub center_deviation: f64,
    pub radius_deviation: f64,
}

impl ConfluenceStep {
    pub fn deviation(&self) -> f64 {
        self.center_deviation.max(self.radius_deviation)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfluenceReport {
    pub steps: Vec<ConfluenceStep>,
    pub monotone: bool,
    /// Final deviation below the (scaled) `1e-3` threshold.
    pub converged: bool,
    pub threshold: f64,
}

/// Halves `from` until it would drop below `to`, then ends exactly at `to`.
pub fn dyadic_ladder(from: f64, to: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut d = from;
    while d > to * (1.0 + 1e-12) {
        out.push(d);
        d /= 2.0;
    }
    out.push(to);
    out
}

/// Nodes `z0 + δ ω^k`, `k = 0..=n`, with `ω` a primitive `(n+1)`-th root of
/// unity; a single node at `z0` when `n = 0`.
pub fn clustered_nodes(z0: Complex64, n: usize, delta: f64) -> Vec<Complex64> {
    if n == 0 {
        return vec![z0];
    }
    (0..=n).map(|k| z0 + Complex64::from_polar(delta, TAU * k as f64 / (n + 1) as f64)).collect()
}

fn disk_parts(r: &VariabilityRegion) -> Option<(Complex64, f64)> {
    match r.kind {
        RegionKind::Disk(d) => Some((d.center, d.radius)),
        RegionKind::Point(p) => Some((p, 0.0)),
        RegionKind::Empty => None,
    }
}

/// Compares the multipoint disk for nodes clustered around `z0` (values from
/// `f`) with the confluent disk of `gamma`, at the query `z`, over `deltas`.
pub fn confluence_experiment(
    z0: Complex64,
    gamma: &[Complex64],
    deltas: &[f64],
    f: Arc<dyn DiskMap>,
    z: Complex64,
) -> Result<ConfluenceReport> {
    let n = gamma.len() - 1;
    let scale = 1.0 / (1.0 - gamma.get(1).map_or(0.0, |g| g.norm_sqr()));
    let mut estimated = vec![f.eval(z0)];
    if n > 0 {
        estimated.extend(hyperbolic_derivatives(f.clone(), z0, n)?);
    }
    let mismatch = estimated.iter().zip(gamma).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    if mismatch > 1e-6 * scale {
        return Err(Error::Verification(format!("function parameters differ from γ by {mismatch:.3e}")));
    }
    let tol = Tolerances::default();
    let param = crate::divided::SchurParameter::new(z0, gamma.to_vec())?;
    let reference = disk_parts(&hyperbolic_region(&param, z, &tol)?).expect("interior parameters give a disk");
    let mut steps = Vec::with_capacity(deltas.len());
    for &delta in deltas {
        if !(1e-4..=1e-1).contains(&delta) {
            return Err(Error::Domain(format!("δ = {delta} is outside [1e-4, 1e-1]")));
        }
        let nodes = clustered_nodes(z0, n, delta);
        let values = nodes.iter().map(|&a| f.eval(a)).collect();
        let data = InterpolationData::new(nodes, values, tol)?;
        let region = MultipointProblem::new(data)?.region(z)?;
        let Some((center, radius)) = disk_parts(&region) else {
            return Err(Error::Verification(format!("clustered problem at δ = {delta} is infeasible")));
        };
        steps.push(ConfluenceStep {
            delta,
            center_deviation: (center - reference.0).norm(),
            radius_deviation: (radius - reference.1).abs(),
        });
    }
    let monotone = steps.windows(2).all(|w| w[1].deviation() <= 1.1 * w[0].deviation() + 1e-12);
    let threshold = 1e-3 * scale;
    let last = steps.last().map_or(0.0, ConfluenceStep::deviation);
    if last > threshold {
        return Err(Error::NonConvergence { at: z0, spread: last });
    }
    Ok(ConfluenceReport { steps, monotone, converged: true, threshold })
}

/// A random chain configuration with `n <= max_n`, diagonal and nodes in `|·| <= r`.
pub fn random_chain_config(rng: &mut impl Rng, max_n: usize, r: f64) -> ChainConfig {
    let n = rng.gen_range(0..=max_n);
    let diagonal: Vec<Complex64> = (0..=n).map(|_| sample_disk(rng, r)).collect();
    let tol = Tolerances::default();
    if rng.gen_bool(0.5) {
        ChainConfig::confluent(sample_disk(rng, r), diagonal, &tol).expect("sampled entries are interior")
    } else {
        let nodes = (0..=n).map(|_| sample_disk(rng, r)).collect();
        ChainConfig::multipoint(nodes, diagonal, &tol).expect("sampled entries are interior")
    }
}

/// A failing identity check, kept for replay.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCase {
    pub trial: u64,
    pub mode: &'static str,
    #[serde(with = "json::pairs")]
    pub nodes: Vec<Complex64>,
    #[serde(with = "json::pairs")]
    pub diagonal: Vec<Complex64>,
    #[serde(with = "json::pair")]
    pub z: Complex64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub trials: u64,
    pub max_determinant: f64,
    pub max_reflection: f64,
    pub max_neighbor: f64,
    pub min_gap_slack: f64,
    pub max_tilde_ratio: f64,
    /// Trials whose reflected point hit a pole of the chain functions.
    pub reflection_skipped: u64,
    pub failures: u64,
    /// Failing case with the smallest `n`, then the smallest trial index.
    pub minimal_failure: Option<IdentityCase>,
}

impl IdentityReport {
    fn empty() -> Self {
        Self {
            trials: 0,
            max_determinant: 0.0,
            max_reflection: 0.0,
            max_neighbor: 0.0,
            min_gap_slack: f64::INFINITY,
            max_tilde_ratio: 0.0,
            reflection_skipped: 0,
            failures: 0,
            minimal_failure: None,
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.trials += other.trials;
        self.max_determinant = self.max_determinant.max(other.max_determinant);
        self.max_reflection = self.max_reflection.max(other.max_reflection);
        self.max_neighbor = self.max_neighbor.max(other.max_neighbor);
        self.min_gap_slack = self.min_gap_slack.min(other.min_gap_slack);
        self.max_tilde_ratio = self.max_tilde_ratio.max(other.max_tilde_ratio);
        self.reflection_skipped += other.reflection_skipped;
        self.failures += other.failures;
        let key = |c: &IdentityCase| (c.diagonal.len(), c.trial);
        self.minimal_failure = match (self.minimal_failure, other.minimal_failure) {
            (Some(a), Some(b)) => Some(if key(&b) < key(&a) { b } else { a }),
            (a, b) => a.or(b),
        };
        self
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn identity_trial(seed: u64, trial: u64) -> IdentityReport {
    let mut rng = trial_rng(seed, trial);
    let cfg = random_chain_config(&mut rng, 6, 0.95);
    let z = sample_disk(&mut rng, 1.0);
    let ev = evaluate_chain(&cfg, z).expect("sampled z is in the closed disk");
    let det = check_determinant_identity(&ev);
    let nb = check_neighbor_identities(&ev);
    let gap = check_coefficient_gap(&ev);
    let (refl, skipped) = match check_reflection_identity(&cfg, z) {
        Ok(r) => (r, 0),
        Err(_) => (0.0, 1),
    };
    let worst = det.max(nb).max(refl).max(-gap.min_slack);
    let ok = worst < IDENTITY_TOL && gap.max_tilde_ratio < 1.0;
    let mode = match cfg.mode() {
        ChainMode::Multipoint(_) => "multipoint",
        ChainMode::Confluent { .. } => "confluent",
    };
    IdentityReport {
        trials: 1,
        max_determinant: det,
        max_reflection: refl,
        max_neighbor: nb,
        min_gap_slack: gap.min_slack,
        max_tilde_ratio: gap.max_tilde_ratio,
        reflection_skipped: skipped,
        failures: u64::from(!ok),
        minimal_failure: (!ok).then(|| IdentityCase {
            trial,
            mode,
            nodes: cfg.nodes(),
            diagonal: cfg.diagonal().to_vec(),
            z,
            residual: worst,
        }),
    }
}

/// Determinant, reflection, neighbour and coefficient-gap checks on random chains.
pub fn identity_suite(seed: u64, trials: u64) -> IdentityReport {
    (0..trials)
        .into_par_iter()
        .map(|t| identity_trial(seed, t))
        .reduce(IdentityReport::empty, IdentityReport::merge)
}

/// The membership suite used by the command-line tool: `trials` split
/// evenly across `n = 0..=4` with mixed Blaschke ground truth.
pub fn membership_suite(seed: u64, trials: u64) -> MembershipReport {
    (0..=4u64)
        .map(|n| {
            let share = trials / 5 + u64::from(n < trials % 5);
            let spec = RandomProblemSpec::new(seed.wrapping_add(n), n as usize, GroundTruth::Mixed);
            membership_test(&spec, share)
        })
        .fold(MembershipReport::empty(), MembershipReport::merge)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfluenceSuiteReport {
    pub trials: u64,
    pub failures: u64,
    pub max_final_deviation: f64,
    pub minimal_failure: Option<ConfluenceFailure>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfluenceFailure {
    pub trial: u64,
    #[serde(with = "json::pair")]
    pub z0: Complex64,
    #[serde(with = "json::pairs")]
    pub gamma: Vec<Complex64>,
    #[serde(with = "json::pair")]
    pub z: Complex64,
    pub reason: String,
}

/// Random confluence experiments with `n <= 2` over the ladder `1e-1 .. 1e-3`.
pub fn confluence_suite(seed: u64, trials: u64) -> ConfluenceSuiteReport {
    let results: Vec<(u64, std::result::Result<f64, ConfluenceFailure>)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            let n = rng.gen_range(0..=2usize);
            let z0 = sample_disk(&mut rng, 0.5);
            let gamma: Vec<Complex64> = (0..=n).map(|_| sample_disk(&mut rng, 0.8)).collect();
            let eps = sample_disk(&mut rng, 1.0);
            let z = sample_disk(&mut rng, 0.9);
            let cfg = ChainConfig::confluent(z0, gamma.clone(), &Tolerances::default()).expect("interior parameters");
            let f: Arc<dyn DiskMap> = Arc::new(crate::variability::extremal_function(&cfg, eps));
            let fail = |reason: String| ConfluenceFailure { trial, z0, gamma: gamma.clone(), z, reason };
            let outcome = match confluence_experiment(z0, &gamma, &dyadic_ladder(0.1, 1e-3), f, z) {
                Ok(r) if r.monotone => Ok(r.steps.last().map_or(0.0, ConfluenceStep::deviation)),
                Ok(_) => Err(fail("deviations are not monotone".into())),
                Err(e) => Err(fail(e.to_string())),
            };
            (trial, outcome)
        })
        .collect();
    let mut report = ConfluenceSuiteReport { trials, failures: 0, max_final_deviation: 0.0, minimal_failure: None };
    for (_, outcome) in results {
        match outcome {
            Ok(d) => report.max_final_deviation = report.max_final_deviation.max(d),
            Err(f) => {
                report.failures += 1;
                let smaller = report
                    .minimal_failure
                    .as_ref()
                    .map_or(true, |g| (f.gamma.len(), f.trial) < (g.gamma.len(), g.trial));
                if smaller {
                    report.minimal_failure = Some(f);
                }
            }
        }
    }
    report
}
