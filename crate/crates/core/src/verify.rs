//! Exhaustive checks on tiny instances, gathered into one report. Defects
//! can be injected to confirm that the checks notice them.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::dynamics::{enumerate_step_outcomes, q_matrix};
use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::halfedge::{enumerate_configurations, pairing_count, ConfigSpace, Configuration, DegreeMode, DegreeSequence};
use crate::mixing::{estimate_profile, AnnealedKernel, ReplicaPlan, Start};
use crate::walk::{
    enumerate_segmented_paths, exact_modified_law, path_history_law, transition_matrix, ResetSet, StepOrder,
};

/// Defects the suite can be run against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Mutations {
    /// Use the rewiring kernel without the `1/(2k-1)!!` pairing factor.
    pub drop_pairing_factor: bool,
    /// Simulate with the walk step before the rewiring step.
    pub walk_then_rewire: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{} {:<28} {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            );
        }
        let failed = self.failures().count();
        let _ = writeln!(out, "{} checks, {} failed", self.checks.len(), failed);
        out
    }
}

pub const CHECK_NAMES: [&str; 10] = [
    "configuration-counts",
    "kernel-vs-enumeration",
    "kernel-symmetry-rows",
    "kernel-irreducibility",
    "walk-doubly-stochastic",
    "annealed-stationarity",
    "annealed-monte-carlo",
    "reset-law-invariance",
    "modified-walk-identity",
    "uniform-pairing-chi2",
];

/// Runs every check; `seed` drives the randomized ones.
pub fn run_verification_suite(mutations: Mutations, seed: u64) -> VerificationReport {
    let checks: [fn(Mutations, u64) -> Result<(bool, String)>; 10] = [
        configuration_counts,
        kernel_vs_enumeration,
        kernel_symmetry_rows,
        kernel_irreducibility,
        walk_doubly_stochastic,
        annealed_stationarity,
        annealed_monte_carlo,
        reset_law_invariance,
        modified_walk_identity,
        uniform_pairing_chi2,
    ];
    let checks = CHECK_NAMES
        .iter()
        .zip(checks)
        .map(|(&name, check)| {
            let (passed, detail) = check(mutations, seed).unwrap_or_else(|e| (false, format!("error: {e}")));
            CheckResult { name, passed, detail }
        })
        .collect();
    VerificationReport { checks }
}

fn two_regular(m: usize) -> Result<DegreeSequence> {
    DegreeSequence::new(vec![2; m], DegreeMode::R)
}

/// The kernel as the suite sees it, possibly with the injected defect.
fn kernel(space: &ConfigSpace, k: usize, mutations: Mutations) -> Result<Vec<f64>> {
    let mut q = q_matrix(space, k)?;
    if mutations.drop_pairing_factor {
        let factor = pairing_count(k) as f64;
        q.iter_mut().for_each(|v| *v *= factor);
    }
    Ok(q)
}

const KERNEL_CASES: [(usize, usize); 4] = [(2, 2), (3, 2), (3, 3), (4, 2)];

fn configuration_counts(_: Mutations, _: u64) -> Result<(bool, String)> {
    let mut ok = true;
    let mut detail = Vec::new();
    for m in 1..=5 {
        let ds = two_regular(m)?;
        let mut all: Vec<Configuration> = enumerate_configurations(&ds)?.collect();
        let count = all.len();
        all.sort_by(|a, b| a.as_slice().cmp(b.as_slice()));
        all.dedup();
        ok &= count as u128 == pairing_count(m) && all.len() == count;
        detail.push(format!("ell={}:{count}", 2 * m));
    }
    Ok((ok, detail.join(" ")))
}

fn kernel_vs_enumeration(mutations: Mutations, _: u64) -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for (m, k) in KERNEL_CASES {
        let space = ConfigSpace::new(&two_regular(m)?, 8)?;
        let q = kernel(&space, k, mutations)?;
        let s = space.len();
        for i in 0..s {
            let outcomes = enumerate_step_outcomes(space.get(i), k);
            let mut freq = vec![0.0; s];
            for o in &outcomes {
                let j = space.index_of(&o.config).expect("outcome in space");
                freq[j] += 1.0;
            }
            for j in 0..s {
                worst = worst.max((q[i * s + j] - freq[j] / outcomes.len() as f64).abs());
            }
        }
    }
    Ok((worst <= 1e-12, format!("max |Q - enumeration| = {worst:.3e}")))
}

fn kernel_symmetry_rows(mutations: Mutations, _: u64) -> Result<(bool, String)> {
    let mut symmetric = true;
    let mut worst: f64 = 0.0;
    for (m, k) in KERNEL_CASES {
        let space = ConfigSpace::new(&two_regular(m)?, 8)?;
        let q = kernel(&space, k, mutations)?;
        let s = space.len();
        for i in 0..s {
            worst = worst.max((q[i * s..(i + 1) * s].iter().sum::<f64>() - 1.0).abs());
            for j in 0..s {
                symmetric &= q[i * s + j] == q[j * s + i];
            }
        }
    }
    Ok((
        symmetric && worst <= 1e-12,
        format!("symmetric = {symmetric}, max |row sum - 1| = {worst:.3e}"),
    ))
}

fn kernel_irreducibility(mutations: Mutations, _: u64) -> Result<(bool, String)> {
    let space = ConfigSpace::new(&two_regular(3)?, 8)?;
    let q = kernel(&space, 2, mutations)?;
    let s = space.len();
    let mul = |a: &[f64], b: &[f64]| {
        let mut c = vec![0.0; s * s];
        for i in 0..s {
            for l in 0..s {
                for j in 0..s {
                    c[i * s + j] += a[i * s + l] * b[l * s + j];
                }
            }
        }
        c
    };
    let q3 = mul(&mul(&q, &q), &q);
    let min = q3.iter().copied().fold(f64::INFINITY, f64::min);
    Ok((min > 0.0, format!("min entry of Q^3 = {min:.3e}")))
}

fn walk_doubly_stochastic(_: Mutations, seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut degrees: Vec<u32> = (0..50).map(|_| rng.random_range(3..=5)).collect();
    if degrees.iter().sum::<u32>() % 2 == 1 {
        degrees[0] += 1;
    }
    let ds = DegreeSequence::new(degrees, DegreeMode::RStar)?;
    let ell = ds.ell();
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let eta = Configuration::sample_uniform(&ds, &mut rng);
        let p = transition_matrix(&ds, &eta)?;
        for v in p.row_sums().into_iter().chain(p.column_sums()) {
            worst = worst.max((v - 1.0).abs());
        }
        for x in 0..ell as u32 {
            for y in 0..ell as u32 {
                worst = worst.max((p.get(x, y) - p.get(eta.partner(y), eta.partner(x))).abs());
            }
        }
    }
    Ok((worst <= 1e-12, format!("ell = {ell}, max deviation = {worst:.3e}")))
}

fn small_instance() -> Result<DegreeSequence> {
    DegreeSequence::new(vec![3, 3, 2], DegreeMode::R)
}

fn annealed_stationarity(_: Mutations, _: u64) -> Result<(bool, String)> {
    let ds = small_instance()?;
    let kernel = AnnealedKernel::new(&ds, 2)?;
    let mut joint = kernel.stationary();
    let u = 1.0 / ds.ell() as f64;
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        joint = kernel.step(&joint);
        worst = worst.max((joint.iter().sum::<f64>() - 1.0).abs());
        for v in kernel.marginal(&joint) {
            worst = worst.max((v - u).abs());
        }
    }
    Ok((worst <= 1e-12, format!("max deviation from uniform over t <= 5: {worst:.3e}")))
}

fn annealed_monte_carlo(mutations: Mutations, seed: u64) -> Result<(bool, String)> {
    const REPLICAS: usize = 200_000;
    const T: u32 = 3;
    let ds = small_instance()?;
    let kernel = AnnealedKernel::new(&ds, 2)?;
    let eta = kernel.space().get(0).clone();
    let mut joint = kernel.point_mass(&eta, 0)?;
    for _ in 0..T {
        joint = kernel.step(&joint);
    }
    let exact = kernel.marginal(&joint);
    let plan = ReplicaPlan {
        ds: &ds,
        start: Start::Fixed { eta: &eta, x: 0 },
        k: 2,
        times: vec![T],
        replicas: REPLICAS,
        seed,
        stream: 0,
        order: if mutations.walk_then_rewire {
            StepOrder::WalkThenRewire
        } else {
            StepOrder::RewireThenWalk
        },
    };
    let est = estimate_profile(&plan, &Executor::sequential())?;
    let probs = est[0].all.probabilities().ok_or(Error::Empty("replicas"))?;
    let mut worst_z: f64 = 0.0;
    for (&p, &q) in exact.iter().zip(&probs) {
        let sigma = (p * (1.0 - p) / REPLICAS as f64).sqrt();
        let z = if sigma > 0.0 {
            (q - p).abs() / sigma
        } else if q == p {
            0.0
        } else {
            f64::INFINITY
        };
        worst_z = worst_z.max(z);
    }
    Ok((worst_z <= 4.0, format!("max |z| over half-edges at t = {T}: {worst_z:.2}")))
}

/// Every self-avoiding `η`-path of `t` steps.
fn all_self_avoiding_paths(ds: &DegreeSequence, eta: &Configuration, t: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<u32>> = (0..ds.ell() as u32).map(|x| vec![x]).collect();
    while let Some(path) = stack.pop() {
        if path.len() == t + 1 {
            out.push(path);
            continue;
        }
        let p = eta.partner(*path.last().unwrap());
        for y in ds.half_edges_of(ds.vertex_of(p)) {
            if y != p && path.iter().all(|&z| ds.vertex_of(z) != ds.vertex_of(y)) {
                let mut next = path.clone();
                next.push(y);
                stack.push(next);
            }
        }
    }
    out.sort();
    out
}

fn reset_law_invariance(_: Mutations, _: u64) -> Result<(bool, String)> {
    let ds = two_regular(4)?;
    let space = ConfigSpace::new(&ds, 8)?;
    let mut cases = Vec::new();
    for eta in space.configs() {
        let paths = all_self_avoiding_paths(&ds, eta, 2);
        if paths.len() >= 2 {
            cases.push((eta.clone(), paths[0].clone()));
            cases.push((eta.clone(), paths[paths.len() - 1].clone()));
        }
        if cases.len() >= 4 {
            break;
        }
    }
    if cases.len() < 4 {
        return Ok((false, "fewer than two configurations with two paths".into()));
    }
    let reference = path_history_law(&ds, 2, &cases[0].0, &cases[0].1, false)?;
    let mut worst: f64 = (reference.total() - 1.0).abs();
    for (eta, path) in &cases[1..] {
        let law = path_history_law(&ds, 2, eta, path, false)?;
        worst = worst.max(law.max_abs_diff(&reference));
    }
    Ok((worst <= 1e-12, format!("4 (configuration, path) pairs, max deviation = {worst:.3e}")))
}

fn modified_walk_identity(_: Mutations, _: u64) -> Result<(bool, String)> {
    let ds = DegreeSequence::new(vec![3, 3, 2, 2], DegreeMode::R)?;
    let eta = Configuration::from_pairs(10, &[(0, 3), (1, 6), (2, 8), (4, 7), (5, 9)])?;
    let t = 3;
    let mut worst: f64 = 0.0;
    let mut nonzero = 0;
    for mask in 0..1u32 << t {
        let resets = ResetSet::from_mask(mask, t);
        let law = exact_modified_law(&ds, &eta, 0, &resets)?;
        for y in 0..ds.ell() as u32 {
            let paths = enumerate_segmented_paths(&ds, &eta, 0, y, &resets)?;
            let total = paths.total_weight(&ds);
            if total > 0.0 {
                nonzero += 1;
            }
            worst = worst.max((law[y as usize] - total).abs());
        }
    }
    Ok((
        worst <= 1e-12,
        format!("{nonzero} nonzero (y, T) cells, max deviation = {worst:.3e}"),
    ))
}

fn uniform_pairing_chi2(_: Mutations, seed: u64) -> Result<(bool, String)> {
    const SAMPLES: usize = 150_000;
    let ds = two_regular(3)?;
    let space = ConfigSpace::new(&ds, 6)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut counts = vec![0u64; space.len()];
    for _ in 0..SAMPLES {
        let c = Configuration::sample_uniform(&ds, &mut rng);
        counts[space.index_of(&c).expect("sample in space")] += 1;
    }
    let (stat, p) = chi_square_uniform(&counts)?;
    Ok((p > 0.001, format!("chi2 = {stat:.2} on {} cells, p = {p:.4}", counts.len())))
}

/// Pearson statistic and p-value of `counts` against equal cell
/// probabilities.
pub fn chi_square_uniform(counts: &[u64]) -> Result<(f64, f64)> {
    if counts.len() < 2 {
        return Err(Error::InvalidParameter("need at least two cells".into()));
    }
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return Err(Error::Empty("counts"));
    }
    let expected = total as f64 / counts.len() as f64;
    let stat: f64 = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    let dist = ChiSquared::new((counts.len() - 1) as f64)
        .map_err(|e| Error::InvalidParameter(format!("chi-square: {e}")))?;
    Ok((stat, 1.0 - dist.cdf(stat)))
}
