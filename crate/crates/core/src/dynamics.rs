//! The `k`-edge rewiring chain on configurations.
//!
//! Each step picks `k` of the `m` current edges uniformly without replacement,
//! cuts them into `2k` half-edges and pairs those uniformly at random. The
//! degree sequence never changes and the uniform law on configurations is
//! stationary.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::halfedge::{for_each_pairing, hamming_distance, pairing_count, ConfigSpace, Configuration};

/// Sentinel in [`RewiringTrace::first_rewire`] for half-edges never rewired.
pub const NEVER: u32 = u32::MAX;

/// Largest `ell` for which the kernel is applied by enumeration.
pub const MAX_KERNEL_ELL: usize = 8;

/// Records when each half-edge first entered a rewired set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewiringTrace {
    first_rewire: Vec<u32>,
    per_step: Option<Vec<Vec<u32>>>,
}

impl RewiringTrace {
    fn new(ell: usize, record: bool) -> Self {
        Self {
            first_rewire: vec![NEVER; ell],
            per_step: record.then(Vec::new),
        }
    }

    /// Step of first rewiring, or [`NEVER`].
    pub fn first_rewire(&self) -> &[u32] {
        &self.first_rewire
    }

    /// Whether `x` lies in `R_1 ∪ … ∪ R_s`.
    #[inline]
    pub fn rewired_by(&self, x: u32, s: u32) -> bool {
        self.first_rewire[x as usize] <= s
    }

    /// Sorted rewired sets, one per step, if recording was requested.
    pub fn per_step(&self) -> Option<&[Vec<u32>]> {
        self.per_step.as_deref()
    }

    /// Rebuilds first-rewire times from the recorded sets.
    pub fn first_rewire_from_steps(&self) -> Option<Vec<u32>> {
        let steps = self.per_step.as_ref()?;
        let mut out = vec![NEVER; self.first_rewire.len()];
        for (i, set) in steps.iter().enumerate() {
            for &x in set {
                let slot = &mut out[x as usize];
                if *slot == NEVER {
                    *slot = i as u32 + 1;
                }
            }
        }
        Some(out)
    }

    /// `t <step> R <indices>` lines, one per recorded step.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(steps) = &self.per_step {
            for (i, set) in steps.iter().enumerate() {
                out.push_str(&format!("t {} R", i + 1));
                for x in set {
                    out.push_str(&format!(" {x}"));
                }
                out.push('\n');
            }
        }
        out
    }
}

/// Simulates the rewiring chain from a fixed initial configuration.
///
/// The engine keeps a journal of what it touched so that [`restart`] returns
/// to the initial state in time proportional to the work done since the last
/// restart (or a plain copy when that is cheaper).
///
/// [`restart`]: RewiringEngine::restart
#[derive(Debug, Clone)]
pub struct RewiringEngine {
    config: Configuration,
    edges: Vec<[u32; 2]>,
    k: usize,
    time: u32,
    trace: RewiringTrace,
    initial_pair: Vec<u32>,
    initial_edges: Vec<[u32; 2]>,
    scratch: Vec<u32>,
    touched_half_edges: Vec<u32>,
    touched_slots: Vec<u32>,
    journal_overflow: bool,
}

impl RewiringEngine {
    pub fn new(config: Configuration, k: usize) -> Result<Self> {
        let m = config.ell() / 2;
        if k < 2 || k > m {
            return Err(Error::InvalidParameter(format!(
                "rewiring size k = {k} must satisfy 2 <= k <= m = {m}"
            )));
        }
        let edges: Vec<[u32; 2]> = config
            .canonical_edges()
            .into_iter()
            .map(|(a, b)| [a, b])
            .collect();
        let ell = config.ell();
        Ok(Self {
            initial_pair: config.as_slice().to_vec(),
            initial_edges: edges.clone(),
            trace: RewiringTrace::new(ell, false),
            config,
            edges,
            k,
            time: 0,
            scratch: Vec::with_capacity(2 * k),
            touched_half_edges: Vec::new(),
            touched_slots: Vec::new(),
            journal_overflow: false,
        })
    }

    /// Keeps every rewired set in the trace.
    pub fn with_recording(mut self) -> Self {
        self.trace.per_step = Some(Vec::new());
        self
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn time(&self) -> u32 {
        self.time
    }

    pub fn trace(&self) -> &RewiringTrace {
        &self.trace
    }

    #[inline]
    pub fn partner(&self, x: u32) -> u32 {
        self.config.partner(x)
    }

    /// Current edges, in internal order.
    pub fn edges(&self) -> &[[u32; 2]] {
        &self.edges
    }

    /// One rewiring step. Returns `R_t`, the `2k` rewired half-edges, in the
    /// order they were re-paired (consecutive entries form the new edges).
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> &[u32] {
        let k = self.k;
        let m = self.edges.len();
        self.time += 1;
        let t = self.time;
        let journal = !self.journal_overflow;
        for i in 0..k {
            let j = rng.random_range(i..m);
            self.edges.swap(i, j);
            if journal {
                self.touched_slots.push(i as u32);
                self.touched_slots.push(j as u32);
            }
        }
        self.scratch.clear();
        for e in &self.edges[..k] {
            self.scratch.extend_from_slice(e);
        }
        self.scratch.shuffle(rng);
        let pair = self.config.as_mut_slice();
        for (i, chunk) in self.scratch.chunks_exact(2).enumerate() {
            let (a, b) = (chunk[0], chunk[1]);
            pair[a as usize] = b;
            pair[b as usize] = a;
            self.edges[i] = [a, b];
        }
        let first = &mut self.trace.first_rewire;
        for &x in &self.scratch {
            if first[x as usize] == NEVER {
                first[x as usize] = t;
            }
        }
        if journal {
            self.touched_half_edges.extend_from_slice(&self.scratch);
            if self.touched_half_edges.len() + self.touched_slots.len() > self.initial_pair.len() {
                self.journal_overflow = true;
                self.touched_half_edges.clear();
                self.touched_slots.clear();
            }
        }
        if let Some(steps) = &mut self.trace.per_step {
            let mut set = self.scratch.clone();
            set.sort_unstable();
            steps.push(set);
        }
        &self.scratch
    }

    /// Returns to the initial configuration at time 0 with an empty trace.
    pub fn restart(&mut self) {
        if self.journal_overflow {
            self.config
                .as_mut_slice()
                .copy_from_slice(&self.initial_pair);
            self.edges.copy_from_slice(&self.initial_edges);
            self.trace.first_rewire.fill(NEVER);
            self.journal_overflow = false;
        } else {
            let pair = self.config.as_mut_slice();
            for &x in &self.touched_half_edges {
                pair[x as usize] = self.initial_pair[x as usize];
                self.trace.first_rewire[x as usize] = NEVER;
            }
            for &slot in &self.touched_slots {
                self.edges[slot as usize] = self.initial_edges[slot as usize];
            }
        }
        self.touched_half_edges.clear();
        self.touched_slots.clear();
        if let Some(steps) = &mut self.trace.per_step {
            steps.clear();
        }
        self.time = 0;
    }
}

/// `C(m - d, k - d) / C(m, k) = Π_{i<d} (k - i) / (m - i)`.
fn subset_ratio(m: usize, k: usize, d: usize) -> f64 {
    (0..d).map(|i| (k - i) as f64 / (m - i) as f64).product()
}

fn binomial_u128(n: usize, r: usize) -> u128 {
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// One-step transition probability `Q(η, ζ)` of the rewiring chain with `k`
/// of `m` edges rewired per step.
///
/// For `m <= 8` the value is a ratio of exact integers; otherwise the
/// binomial ratio is a telescoped product and `(2k - 1)!!` is taken in log
/// space.
pub fn exact_q(eta: &Configuration, zeta: &Configuration, k: usize, m: usize) -> Result<f64> {
    if eta.ell() != 2 * m {
        return Err(Error::LengthMismatch {
            left: eta.ell(),
            right: 2 * m,
        });
    }
    if k < 2 || k > m {
        return Err(Error::InvalidParameter(format!(
            "k = {k} outside [2, m = {m}]"
        )));
    }
    let d = hamming_distance(eta, zeta)?;
    Ok(q_from_distance(d, k, m))
}

pub(crate) fn q_from_distance(d: usize, k: usize, m: usize) -> f64 {
    if d > k {
        return 0.0;
    }
    if m <= 8 {
        let num = binomial_u128(m - d, k - d);
        let den = binomial_u128(m, k) * pairing_count(k);
        return num as f64 / den as f64;
    }
    let log_pairings: f64 = (1..=k).map(|i| ((2 * i - 1) as f64).ln()).sum();
    subset_ratio(m, k, d) * (-log_pairings).exp()
}

/// Row-major `|Conf_H| × |Conf_H|` matrix of `Q` over an enumerated space.
pub fn q_matrix(space: &ConfigSpace, k: usize) -> Result<Vec<f64>> {
    let n = space.len();
    let Some(first) = space.configs().first() else {
        return Ok(Vec::new());
    };
    let m = first.ell() / 2;
    if k < 2 || k > m {
        return Err(Error::InvalidParameter(format!(
            "k = {k} outside [2, m = {m}]"
        )));
    }
    let mut q = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let d = hamming_distance(space.get(i), space.get(j))?;
            let v = q_from_distance(d, k, m);
            q[i * n + j] = v;
            q[j * n + i] = v;
        }
    }
    Ok(q)
}

/// One exact kernel step applied to a distribution over `space`.
pub fn apply_q(space: &ConfigSpace, k: usize, dist: &[f64]) -> Result<Vec<f64>> {
    let n = space.len();
    if dist.len() != n {
        return Err(Error::LengthMismatch {
            left: dist.len(),
            right: n,
        });
    }
    if let Some(c) = space.configs().first() {
        if c.ell() > MAX_KERNEL_ELL {
            return Err(Error::TooLarge {
                what: "ell",
                value: c.ell(),
                limit: MAX_KERNEL_ELL,
            });
        }
    }
    let q = q_matrix(space, k)?;
    let mut out = vec![0.0; n];
    for (i, &p) in dist.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        for (o, &qij) in out.iter_mut().zip(&q[i * n..(i + 1) * n]) {
            *o += p * qij;
        }
    }
    Ok(out)
}

/// One possible result of a rewiring step from a fixed configuration.
#[derive(Debug, Clone)]
pub struct StepOutcome {
    pub config: Configuration,
    /// Sorted rewired half-edges.
    pub rewired: Vec<u32>,
}

/// Every equally likely outcome of one step: each `k`-subset of edges times
/// each re-pairing of its `2k` half-edges. There are `C(m, k) (2k - 1)!!` of
/// them, so this is only usable on tiny instances.
pub fn enumerate_step_outcomes(eta: &Configuration, k: usize) -> Vec<StepOutcome> {
    let edges = eta.canonical_edges();
    let m = edges.len();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(k);
    fn subsets(
        start: usize,
        m: usize,
        k: usize,
        chosen: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if chosen.len() == k {
            f(chosen);
            return;
        }
        for i in start..m {
            if m - i < k - chosen.len() {
                break;
            }
            chosen.push(i);
            subsets(i + 1, m, k, chosen, f);
            chosen.pop();
        }
    }
    subsets(0, m, k, &mut chosen, &mut |subset| {
        let mut half: Vec<u32> = subset
            .iter()
            .flat_map(|&i| [edges[i].0, edges[i].1])
            .collect();
        half.sort_unstable();
        for_each_pairing(&half, |pairs| {
            let mut pair = eta.as_slice().to_vec();
            for &(a, b) in pairs {
                pair[a as usize] = b;
                pair[b as usize] = a;
            }
            out.push(StepOutcome {
                config: Configuration::from_partner_array(pair)
                    .expect("re-pairing preserves the involution"),
                rewired: half.clone(),
            });
        });
    });
    out
}
