//! Total-variation estimates of the walker's law against the uniform law on
//! half-edges, exact annealed laws on tiny instances, the limiting profiles
//! and the bounds obtained by splitting on `{τ > t}`.

use rand::Rng;
use serde::Serialize;

use crate::dynamics::{q_matrix, MAX_KERNEL_ELL};
use crate::error::{Error, Result};
use crate::exec::{batches, task_rng, Executor};
use crate::halfedge::{ConfigSpace, Configuration, DegreeSequence};
use crate::regularity::{CompensatedSum, Regime};
use crate::walk::{JointRunner, StepOrder};

/// Conditional branches with fewer samples are flagged.
pub const LOW_CONFIDENCE_SAMPLES: u64 = 100;

/// Number of bootstrap resamples behind the reported standard error.
pub const BOOTSTRAP_RESAMPLES: usize = 40;

const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// `(1/2) Σ |p − q|`.
pub fn tv_distance(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    for dist in [p, q] {
        let mut total = CompensatedSum::default();
        for &v in dist {
            if !(v >= -NORMALIZATION_TOLERANCE) {
                return Err(Error::NotNormalized(v));
            }
            total.add(v);
        }
        let total = total.value();
        if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::NotNormalized(total));
        }
    }
    let mut acc = CompensatedSum::default();
    for (a, b) in p.iter().zip(q) {
        acc.add((a - b).abs());
    }
    Ok((0.5 * acc.value()).clamp(0.0, 1.0))
}

/// TV distance between `counts / total` and the uniform law.
pub fn tv_counts_to_uniform(counts: &[u64], total: u64) -> f64 {
    if total == 0 {
        return 0.0;
    }
    let ell = counts.len() as f64;
    let total = total as f64;
    let mut acc = CompensatedSum::default();
    for &c in counts {
        acc.add((c as f64 / total - 1.0 / ell).abs());
    }
    0.5 * acc.value()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Conditioning {
    All,
    TauGreater,
    TauAtMost,
    SelfAvoiding,
}

/// Counts of `X_t` over replicas in one conditioning class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmpiricalDistribution {
    counts: Vec<u64>,
    samples: u64,
    conditioning: Conditioning,
}

impl EmpiricalDistribution {
    pub fn new(ell: usize, conditioning: Conditioning) -> Self {
        Self {
            counts: vec![0; ell],
            samples: 0,
            conditioning,
        }
    }

    pub fn from_counts(counts: Vec<u64>, conditioning: Conditioning) -> Self {
        let samples = counts.iter().sum();
        Self {
            counts,
            samples,
            conditioning,
        }
    }

    pub fn add(&mut self, x: u32) {
        self.counts[x as usize] += 1;
        self.samples += 1;
    }

    pub fn merge(&mut self, other: &EmpiricalDistribution) {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.samples += other.samples;
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn samples(&self) -> u64 {
        self.samples
    }

    pub fn conditioning(&self) -> Conditioning {
        self.conditioning
    }

    pub fn ell(&self) -> usize {
        self.counts.len()
    }

    pub fn low_confidence(&self) -> bool {
        self.samples < LOW_CONFIDENCE_SAMPLES
    }

    /// Empirical probabilities; `None` when empty.
    pub fn probabilities(&self) -> Option<Vec<f64>> {
        (self.samples > 0).then(|| {
            let n = self.samples as f64;
            self.counts.iter().map(|&c| c as f64 / n).collect()
        })
    }

    pub fn tv_to_uniform(&self) -> f64 {
        tv_counts_to_uniform(&self.counts, self.samples)
    }
}

/// Replica summary at one time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeEstimate {
    pub t: u32,
    pub all: EmpiricalDistribution,
    pub tau_greater: EmpiricalDistribution,
    pub tau_at_most: EmpiricalDistribution,
    pub self_avoiding: EmpiricalDistribution,
}

impl TimeEstimate {
    fn new(t: u32, ell: usize) -> Self {
        Self {
            t,
            all: EmpiricalDistribution::new(ell, Conditioning::All),
            tau_greater: EmpiricalDistribution::new(ell, Conditioning::TauGreater),
            tau_at_most: EmpiricalDistribution::new(ell, Conditioning::TauAtMost),
            self_avoiding: EmpiricalDistribution::new(ell, Conditioning::SelfAvoiding),
        }
    }

    fn record(&mut self, x: u32, tau: Option<u32>, first_collision: Option<u32>) {
        self.all.add(x);
        if tau.is_none_or(|s| s > self.t) {
            self.tau_greater.add(x);
        } else {
            self.tau_at_most.add(x);
        }
        if first_collision.is_none_or(|s| s > self.t) {
            self.self_avoiding.add(x);
        }
    }

    fn merge(&mut self, other: &TimeEstimate) {
        self.all.merge(&other.all);
        self.tau_greater.merge(&other.tau_greater);
        self.tau_at_most.merge(&other.tau_at_most);
        self.self_avoiding.merge(&other.self_avoiding);
    }

    pub fn replicas(&self) -> u64 {
        self.all.samples()
    }

    /// `P̂(τ > t)`; `None` without replicas.
    pub fn p_tau_greater(&self) -> Option<f64> {
        ratio(self.tau_greater.samples(), self.replicas())
    }

    /// `P̂(SA_t)`; `None` without replicas.
    pub fn sa_rate(&self) -> Option<f64> {
        ratio(self.self_avoiding.samples(), self.replicas())
    }
}

fn ratio(a: u64, b: u64) -> Option<f64> {
    (b > 0).then(|| a as f64 / b as f64)
}

/// Binomial standard error of a proportion.
pub fn proportion_stderr(p: f64, n: u64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    (p * (1.0 - p) / n as f64).sqrt()
}

/// Where replicas start.
#[derive(Debug, Clone, Copy)]
pub enum Start<'a> {
    /// Every replica starts from the same `(η, x)`.
    Fixed { eta: &'a Configuration, x: u32 },
    /// Every replica draws its own uniform configuration and half-edge.
    Fresh,
}

/// A batch of independent runs of the joint chain, observed at `times`.
#[derive(Debug, Clone)]
pub struct ReplicaPlan<'a> {
    pub ds: &'a DegreeSequence,
    pub start: Start<'a>,
    /// Edges rewired per step; `0` for the static walk.
    pub k: usize,
    pub times: Vec<u32>,
    pub replicas: usize,
    pub seed: u64,
    /// Separates independent plans sharing a master seed.
    pub stream: u64,
    pub order: StepOrder,
}

/// Runs every replica once up to the largest requested time and records
/// `X_t`, `τ` and self-avoidance at each requested `t`. The result depends
/// only on the plan, not on the executor.
pub fn estimate_profile(plan: &ReplicaPlan<'_>, exec: &Executor) -> Result<Vec<TimeEstimate>> {
    let ds = plan.ds;
    let mut times = plan.times.clone();
    times.sort_unstable();
    times.dedup();
    if let Start::Fixed { eta, x } = plan.start {
        ds.check_half_edge(x)?;
        // validates k and the configuration once, up front
        JointRunner::new(ds, eta, plan.k, plan.order)?;
    } else if plan.k != 0 && (plan.k < 2 || plan.k > ds.m()) {
        return Err(Error::InvalidParameter(format!(
            "k = {} outside [2, m = {}]",
            plan.k,
            ds.m()
        )));
    }
    let ell = ds.ell();
    let horizon = times.last().copied().unwrap_or(0);
    let jobs: Vec<(usize, usize)> = batches(plan.replicas).collect();
    let init = || -> Vec<TimeEstimate> { times.iter().map(|&t| TimeEstimate::new(t, ell)).collect() };
    let merged = exec.fold(
        jobs.len(),
        init,
        |acc, job| {
            let (batch, size) = jobs[job];
            let mut rng = task_rng(plan.seed, plan.stream, batch as u64);
            run_batch(plan, &times, horizon, size, &mut rng, acc);
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(&b) {
                x.merge(y);
            }
            a
        },
    );
    Ok(merged)
}

fn run_batch<R: Rng>(
    plan: &ReplicaPlan<'_>,
    times: &[u32],
    horizon: u32,
    size: usize,
    rng: &mut R,
    acc: &mut [TimeEstimate],
) {
    let ds = plan.ds;
    let mut at = vec![0u32; times.len()];
    let observe = |s: u32, x: u32, at: &mut Vec<u32>| {
        if let Ok(j) = times.binary_search(&s) {
            at[j] = x;
        }
    };
    match plan.start {
        Start::Fixed { eta, x } => {
            let mut runner =
                JointRunner::new(ds, eta, plan.k, plan.order).expect("validated plan");
            for _ in 0..size {
                let out = runner.run(x, horizon, rng, |s, y| observe(s, y, &mut at));
                for (est, &y) in acc.iter_mut().zip(&at) {
                    est.record(y, out.tau, out.first_collision);
                }
            }
        }
        Start::Fresh => {
            for _ in 0..size {
                let eta = Configuration::sample_uniform(ds, rng);
                let x = rng.random_range(0..ds.ell() as u32);
                let mut runner =
                    JointRunner::new(ds, &eta, plan.k, plan.order).expect("validated plan");
                let out = runner.run(x, horizon, rng, |s, y| observe(s, y, &mut at));
                for (est, &y) in acc.iter_mut().zip(&at) {
                    est.record(y, out.tau, out.first_collision);
                }
            }
        }
    }
}

/// `n` replicas of the joint chain from `(η, x)` observed at time `t`,
/// drawn sequentially from `rng`.
pub fn estimate_distribution<R: Rng + ?Sized>(
    ds: &DegreeSequence,
    eta: &Configuration,
    x: u32,
    t: u32,
    k: usize,
    n: usize,
    rng: &mut R,
) -> Result<TimeEstimate> {
    ds.check_half_edge(x)?;
    let mut runner = JointRunner::new(ds, eta, k, StepOrder::RewireThenWalk)?;
    let mut est = TimeEstimate::new(t, ds.ell());
    for _ in 0..n {
        let mut last = x;
        let out = runner.run(x, t, rng, |_, y| last = y);
        est.record(last, out.tau, out.first_collision);
    }
    Ok(est)
}

/// Raw TV distances to the uniform law of `draws` independent samples of
/// size `samples` from the exact uniform law on `ell` points.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformBaseline {
    ell: usize,
    samples: u64,
    values: Vec<f64>,
}

impl UniformBaseline {
    pub fn new<R: Rng + ?Sized>(ell: usize, samples: u64, draws: usize, rng: &mut R) -> Result<Self> {
        if draws < 20 {
            return Err(Error::InvalidParameter(format!(
                "baseline needs at least 20 draws, got {draws}"
            )));
        }
        if samples == 0 {
            return Err(Error::Empty("baseline sample"));
        }
        if ell == 0 {
            return Err(Error::Empty("support"));
        }
        let mut counts = vec![0u64; ell];
        let values = (0..draws)
            .map(|_| {
                counts.fill(0);
                for _ in 0..samples {
                    counts[rng.random_range(0..ell)] += 1;
                }
                tv_counts_to_uniform(&counts, samples)
            })
            .collect();
        Ok(Self {
            ell,
            samples,
            values,
        })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn samples(&self) -> u64 {
        self.samples
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Standard error of [`mean`](Self::mean).
    pub fn stderr(&self) -> f64 {
        let b = self.values.len() as f64;
        let mean = self.mean();
        let var = self.values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (b - 1.0);
        (var / b).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TvEstimate {
    pub raw: f64,
    /// `raw − baseline`, clamped to `[0, 1]`.
    pub debiased: f64,
    /// `raw − baseline` before clamping.
    pub unclamped: f64,
    pub stderr: f64,
}

impl TvEstimate {
    /// Debiased value fell below zero before clamping.
    pub fn clamped_below(&self) -> bool {
        self.unclamped < 0.0
    }
}

/// Bootstrap standard error of the raw TV of `emp` over its replicas.
pub fn bootstrap_stderr<R: Rng + ?Sized>(emp: &EmpiricalDistribution, resamples: usize, rng: &mut R) -> f64 {
    let n = emp.samples();
    if n < 2 || resamples < 2 {
        return 0.0;
    }
    let mut expanded = Vec::with_capacity(n as usize);
    for (x, &c) in emp.counts().iter().enumerate() {
        expanded.extend(std::iter::repeat_n(x as u32, c as usize));
    }
    let mut counts = vec![0u64; emp.ell()];
    let values: Vec<f64> = (0..resamples)
        .map(|_| {
            counts.fill(0);
            for _ in 0..n {
                counts[expanded[rng.random_range(0..n as usize)] as usize] += 1;
            }
            tv_counts_to_uniform(&counts, n)
        })
        .collect();
    let mean = values.iter().sum::<f64>() / resamples as f64;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (resamples as f64 - 1.0);
    var.sqrt()
}

/// Debiased TV of `emp` against a precomputed baseline of the same sample
/// size.
pub fn debiased_tv_with<R: Rng + ?Sized>(
    emp: &EmpiricalDistribution,
    baseline: &UniformBaseline,
    rng: &mut R,
) -> Result<TvEstimate> {
    if emp.samples() == 0 {
        return Err(Error::Empty("empirical distribution"));
    }
    if baseline.samples() != emp.samples() || baseline.ell() != emp.ell() {
        return Err(Error::InvalidParameter(format!(
            "baseline built for (ell = {}, N = {}) used with (ell = {}, N = {})",
            baseline.ell(),
            baseline.samples(),
            emp.ell(),
            emp.samples()
        )));
    }
    let raw = emp.tv_to_uniform();
    let unclamped = raw - baseline.mean();
    let boot = bootstrap_stderr(emp, BOOTSTRAP_RESAMPLES, rng);
    Ok(TvEstimate {
        raw,
        debiased: unclamped.clamp(0.0, 1.0),
        unclamped,
        stderr: boot.hypot(baseline.stderr()),
    })
}

/// Debiased TV of `emp` against the uniform law, with a fresh baseline of
/// `draws` uniform samples of the same size.
pub fn debiased_tv<R: Rng + ?Sized>(
    emp: &EmpiricalDistribution,
    draws: usize,
    rng: &mut R,
) -> Result<TvEstimate> {
    if emp.samples() == 0 {
        return Err(Error::Empty("empirical distribution"));
    }
    let baseline = UniformBaseline::new(emp.ell(), emp.samples(), draws, rng)?;
    debiased_tv_with(emp, &baseline, rng)
}

/// The joint rewiring and walking kernel on `Conf_H × H`, for tiny `ℓ`.
/// Joint laws are stored row-major: index `config * ℓ + half_edge`.
#[derive(Debug, Clone)]
pub struct AnnealedKernel {
    space: ConfigSpace,
    ell: usize,
    q: Vec<f64>,
    /// Per configuration: for every `x`, the targets of a walk step.
    steps: Vec<Vec<(u32, f64)>>,
}

impl AnnealedKernel {
    pub fn new(ds: &DegreeSequence, k: usize) -> Result<Self> {
        let space = ConfigSpace::new(ds, MAX_KERNEL_ELL)?;
        let q = q_matrix(&space, k)?;
        let ell = ds.ell();
        let steps = space
            .configs()
            .iter()
            .map(|c| {
                let mut out = Vec::new();
                for x in 0..ell as u32 {
                    let p = c.partner(x);
                    let w = 1.0 / ds.forward_degree(p) as f64;
                    for y in ds.half_edges_of(ds.vertex_of(p)) {
                        if y != p {
                            out.push((x * ell as u32 + y, w));
                        }
                    }
                }
                out
            })
            .collect();
        Ok(Self {
            space,
            ell,
            q,
            steps,
        })
    }

    pub fn space(&self) -> &ConfigSpace {
        &self.space
    }

    pub fn point_mass(&self, eta: &Configuration, x: u32) -> Result<Vec<f64>> {
        let c = self
            .space
            .index_of(eta)
            .ok_or_else(|| Error::InvalidConfiguration("configuration not on this instance".into()))?;
        if x as usize >= self.ell {
            return Err(Error::HalfEdgeOutOfRange(x));
        }
        let mut joint = vec![0.0; self.space.len() * self.ell];
        joint[c * self.ell + x as usize] = 1.0;
        Ok(joint)
    }

    /// `Conf_H × U_H`.
    pub fn stationary(&self) -> Vec<f64> {
        let s = self.space.len();
        vec![1.0 / (s * self.ell) as f64; s * self.ell]
    }

    /// One time unit: rewire, then step in the new configuration.
    pub fn step(&self, joint: &[f64]) -> Vec<f64> {
        let s = self.space.len();
        let ell = self.ell;
        let mut rewired = vec![0.0; s * ell];
        for from in 0..s {
            let row = &joint[from * ell..(from + 1) * ell];
            if row.iter().all(|&v| v == 0.0) {
                continue;
            }
            for to in 0..s {
                let q = self.q[from * s + to];
                if q == 0.0 {
                    continue;
                }
                for (acc, &v) in rewired[to * ell..(to + 1) * ell].iter_mut().zip(row) {
                    *acc += q * v;
                }
            }
        }
        let mut out = vec![0.0; s * ell];
        for c in 0..s {
            let base = c * ell;
            for &(xy, w) in &self.steps[c] {
                let (x, y) = (xy as usize / ell, xy as usize % ell);
                out[base + y] += rewired[base + x] * w;
            }
        }
        out
    }

    /// Law of the half-edge coordinate.
    pub fn marginal(&self, joint: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.ell];
        for row in joint.chunks(self.ell) {
            for (o, v) in out.iter_mut().zip(row) {
                *o += v;
            }
        }
        out
    }
}

/// Exact law of `X_t` for the joint chain from `(η, x)`; `ℓ ≤ 8`.
pub fn exact_annealed_distribution(
    ds: &DegreeSequence,
    k: usize,
    eta: &Configuration,
    x: u32,
    t: u32,
) -> Result<Vec<f64>> {
    let kernel = AnnealedKernel::new(ds, k)?;
    let mut joint = kernel.point_mass(eta, x)?;
    for _ in 0..t {
        joint = kernel.step(&joint);
    }
    Ok(kernel.marginal(&joint))
}

/// A value of a limiting profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Theory {
    Value(f64),
    /// At the cutoff point itself the limit is not specified.
    Undefined,
}

impl Theory {
    pub fn value(self) -> Option<f64> {
        match self {
            Theory::Value(v) => Some(v),
            Theory::Undefined => None,
        }
    }
}

/// The limit of `D(t)` at scaled time `c` in each regime. `beta` and
/// `c_stat` are ignored where they play no role.
pub fn theory_profile(regime: Regime, beta: f64, c_stat: f64, c: f64) -> Result<Theory> {
    if !(c >= 0.0) || !c.is_finite() {
        return Err(Error::InvalidParameter(format!("c = {c} must be finite and >= 0")));
    }
    if !(beta >= 0.0) {
        return Err(Error::InvalidParameter(format!("beta = {beta} must be >= 0")));
    }
    if regime != Regime::Supercritical && !(c_stat > 0.0 && c_stat.is_finite()) {
        return Err(Error::InvalidParameter(format!("c_stat = {c_stat} must be positive")));
    }
    Ok(match regime {
        Regime::Supercritical => Theory::Value((-c * c / 2.0).exp()),
        Regime::Critical if c < c_stat => Theory::Value((-beta * c * c / 2.0).exp()),
        Regime::Subcritical if c < c_stat => Theory::Value(1.0),
        _ if c == c_stat => Theory::Undefined,
        _ => Theory::Value(0.0),
    })
}

/// Bounds on `D(t)` from `p = P(τ > t)` and the TV distances `a`, `b` of the
/// laws conditioned on `{τ > t}` and `{τ ≤ t}`.
pub fn decomposition_bounds(p: f64, a: f64, b: f64) -> Result<(f64, f64)> {
    for (name, v) in [("p", p), ("tv_given_gt", a), ("tv_given_le", b)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::InvalidParameter(format!("{name} = {v} outside [0, 1]")));
        }
    }
    let upper = p * a + (1.0 - p) * b;
    let lower = (p * a - (1.0 - p) * b).max(0.0);
    Ok((lower, upper))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixingPoint {
    pub c: f64,
    pub t: u32,
    pub tv_raw: f64,
    pub tv_debiased: f64,
    pub tv_debiased_unclamped: f64,
    pub stderr: f64,
    pub p_tau_gt: f64,
    pub sa_rate: f64,
    pub theory: Theory,
    pub lower_bound: f64,
    pub upper_bound: f64,
    /// Fewer than [`LOW_CONFIDENCE_SAMPLES`] replicas with `τ > t`.
    pub low_confidence_gt: bool,
    /// Fewer than [`LOW_CONFIDENCE_SAMPLES`] replicas with `τ ≤ t`.
    pub low_confidence_le: bool,
}

impl MixingPoint {
    /// Builds the point from replica counts; `baseline` must match the
    /// replica count.
    pub fn from_estimate<R: Rng + ?Sized>(
        c: f64,
        est: &TimeEstimate,
        baseline: &UniformBaseline,
        theory: Theory,
        rng: &mut R,
    ) -> Result<Self> {
        let tv = debiased_tv_with(&est.all, baseline, rng)?;
        let p = est.p_tau_greater().unwrap_or(0.0);
        let (lower_bound, upper_bound) = decomposition_bounds(
            p,
            est.tau_greater.tv_to_uniform().min(1.0),
            est.tau_at_most.tv_to_uniform().min(1.0),
        )?;
        Ok(Self {
            c,
            t: est.t,
            tv_raw: tv.raw,
            tv_debiased: tv.debiased,
            tv_debiased_unclamped: tv.unclamped,
            stderr: tv.stderr,
            p_tau_gt: p,
            sa_rate: est.sa_rate().unwrap_or(0.0),
            theory,
            lower_bound,
            upper_bound,
            low_confidence_gt: est.tau_greater.low_confidence(),
            low_confidence_le: est.tau_at_most.low_confidence(),
        })
    }
}

/// Smallest grid time with debiased TV at most `epsilon`; `None` when the
/// profile never gets there.
pub fn mixing_time(profile: &[MixingPoint], epsilon: f64) -> Result<Option<u32>> {
    if profile.is_empty() {
        return Err(Error::Empty("profile"));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!("epsilon = {epsilon} outside (0, 1)")));
    }
    if profile.windows(2).any(|w| w[0].t > w[1].t) {
        return Err(Error::InvalidParameter("profile not sorted by t".into()));
    }
    Ok(profile.iter().find(|p| p.tv_debiased <= epsilon).map(|p| p.t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::halfedge::DegreeMode;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn tv_basics() {
        let p = [0.25; 4];
        assert_eq!(tv_distance(&p, &p).unwrap(), 0.0);
        let mut point = vec![0.0; 12];
        point[3] = 1.0;
        let u = vec![1.0 / 12.0; 12];
        assert!((tv_distance(&point, &u).unwrap() - 11.0 / 12.0).abs() < 1e-15);
        assert!(tv_distance(&p, &u).is_err());
        assert!(tv_distance(&[0.5, 0.6], &[0.5, 0.5]).is_err());
    }

    #[test]
    fn theory_values() {
        let sup = theory_profile(Regime::Supercritical, 0.0, 0.0, 1.0).unwrap();
        assert!((sup.value().unwrap() - (-0.5f64).exp()).abs() < 1e-15);
        let cs = 1.0813;
        let below = theory_profile(Regime::Critical, 2.0, cs, cs - 1e-12).unwrap();
        assert!((below.value().unwrap() - (-cs * cs).exp()).abs() < 1e-9);
        assert_eq!(theory_profile(Regime::Critical, 2.0, cs, cs).unwrap(), Theory::Undefined);
        assert_eq!(
            theory_profile(Regime::Subcritical, 0.0, cs, 0.5 * cs).unwrap(),
            Theory::Value(1.0)
        );
        assert_eq!(
            theory_profile(Regime::Subcritical, 0.0, cs, 1.5 * cs).unwrap(),
            Theory::Value(0.0)
        );
        assert!(theory_profile(Regime::Critical, -1.0, cs, 0.5).is_err());
        assert!(theory_profile(Regime::Critical, 1.0, cs, -0.5).is_err());
    }

    #[test]
    fn bounds_edge_cases() {
        assert_eq!(decomposition_bounds(1.0, 0.3, 0.9).unwrap(), (0.3, 0.3));
        let (lo, hi) = decomposition_bounds(0.4, 0.5, 0.0).unwrap();
        assert!((lo - 0.2).abs() < 1e-15 && (hi - 0.2).abs() < 1e-15);
        assert!(decomposition_bounds(1.1, 0.0, 0.0).is_err());
    }

    #[test]
    fn t_zero_is_point_mass() {
        let ds = DegreeSequence::new(vec![3, 3, 2], DegreeMode::R).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let eta = Configuration::sample_uniform(&ds, &mut rng);
        let est = estimate_distribution(&ds, &eta, 5, 0, 2, 50, &mut rng).unwrap();
        assert_eq!(est.all.counts()[5], 50);
        assert_eq!(est.p_tau_greater(), Some(1.0));
        let exact = exact_annealed_distribution(&ds, 2, &eta, 5, 0).unwrap();
        assert_eq!(exact[5], 1.0);
    }

    #[test]
    fn mixing_time_edges() {
        let point = |t, v| MixingPoint {
            c: 0.0,
            t,
            tv_raw: v,
            tv_debiased: v,
            tv_debiased_unclamped: v,
            stderr: 0.0,
            p_tau_gt: 0.0,
            sa_rate: 1.0,
            theory: Theory::Undefined,
            lower_bound: 0.0,
            upper_bound: 1.0,
            low_confidence_gt: false,
            low_confidence_le: false,
        };
        let zeros = vec![point(2, 0.0), point(4, 0.0)];
        assert_eq!(mixing_time(&zeros, 0.25).unwrap(), Some(2));
        let ones = vec![point(2, 1.0), point(4, 1.0)];
        assert_eq!(mixing_time(&ones, 0.25).unwrap(), None);
        assert!(mixing_time(&[], 0.25).is_err());
    }
}
