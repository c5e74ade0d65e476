//! Exhaustive computations on tiny instances: laws of rewiring histories
//! along a fixed path, self-avoiding segmented paths, and the exact law of
//! the modified (resetting) walk.

use std::collections::HashMap;

use crate::dynamics::enumerate_step_outcomes;
use crate::error::{Error, Result};
use crate::halfedge::{ConfigSpace, Configuration, DegreeSequence};

use super::ResetSet;

/// Largest `ell` for rewiring-history enumeration.
pub const MAX_HISTORY_ELL: usize = 10;
const MAX_HISTORY_T: usize = 3;
const MAX_HISTORY_K: usize = 3;

/// Largest `ell` for segmented-path and modified-walk enumeration.
pub const MAX_SEGMENTED_ELL: usize = 12;
const MAX_SEGMENTED_T: u32 = 5;

/// A probability for every `T ⊆ {1, …, t}`, indexed by [`ResetSet::mask`].
#[derive(Debug, Clone, PartialEq)]
pub struct ResetLaw {
    horizon: u32,
    probs: Vec<f64>,
}

impl ResetLaw {
    pub fn horizon(&self) -> u32 {
        self.horizon
    }

    pub fn get(&self, set: &ResetSet) -> f64 {
        self.probs[set.mask() as usize]
    }

    pub fn by_mask(&self) -> &[f64] {
        &self.probs
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (ResetSet, f64)> + '_ {
        self.probs
            .iter()
            .enumerate()
            .map(|(mask, &p)| (ResetSet::from_mask(mask as u32, self.horizon), p))
    }

    /// Largest absolute difference between two laws on the same horizon.
    pub fn max_abs_diff(&self, other: &ResetLaw) -> f64 {
        self.probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

fn walk_prob(ds: &DegreeSequence, config: &Configuration, from: u32, to: u32) -> f64 {
    let p = config.partner(from);
    if ds.are_siblings(p, to) {
        1.0 / ds.forward_degree(p) as f64
    } else {
        0.0
    }
}

/// For a fixed sequence `x_0, …, x_t` and start configuration `η`, computes
/// for every `T` the probability of the rewiring history
/// `{x_{i-1} ∈ R_{≤i} ∀ i ∈ T, x_{j-1} ∉ R_{≤j} ∀ j ∉ T}`, by enumerating
/// every outcome of every rewiring step.
///
/// With `follow_walk` the probabilities are instead those of the history
/// jointly with the walk taking exactly the steps `x_1, …, x_t`.
pub fn path_history_law(
    ds: &DegreeSequence,
    k: usize,
    eta: &Configuration,
    path: &[u32],
    follow_walk: bool,
) -> Result<ResetLaw> {
    if ds.ell() > MAX_HISTORY_ELL {
        return Err(Error::TooLarge {
            what: "ell",
            value: ds.ell(),
            limit: MAX_HISTORY_ELL,
        });
    }
    let Some(t) = path.len().checked_sub(1) else {
        return Err(Error::InvalidParameter("path must be nonempty".into()));
    };
    if t > MAX_HISTORY_T {
        return Err(Error::TooLarge {
            what: "t",
            value: t,
            limit: MAX_HISTORY_T,
        });
    }
    if k > MAX_HISTORY_K {
        return Err(Error::TooLarge {
            what: "k",
            value: k,
            limit: MAX_HISTORY_K,
        });
    }
    if k < 2 || k > ds.m() {
        return Err(Error::InvalidParameter(format!(
            "k = {k} outside [2, m = {}]",
            ds.m()
        )));
    }
    for &x in path {
        ds.check_half_edge(x)?;
    }
    let space = ConfigSpace::new(ds, MAX_HISTORY_ELL)?;
    let start = space
        .index_of(eta)
        .ok_or_else(|| Error::InvalidConfiguration("configuration not on this instance".into()))?;

    let mut outcomes: HashMap<usize, Vec<(usize, u32)>> = HashMap::new();
    // (config index, path positions rewired so far, T bits) -> probability
    let mut states: HashMap<(usize, u32, u32), f64> = HashMap::from([((start, 0, 0), 1.0)]);
    for s in 1..=t {
        let mut next: HashMap<(usize, u32, u32), f64> = HashMap::new();
        for (&(ci, cum, tbits), &w) in &states {
            let outs = outcomes.entry(ci).or_insert_with(|| {
                enumerate_step_outcomes(space.get(ci), k)
                    .into_iter()
                    .map(|o| {
                        let idx = space.index_of(&o.config).expect("outcome in space");
                        let mask = o.rewired.iter().fold(0u32, |m, &x| m | 1 << x);
                        (idx, mask)
                    })
                    .collect()
            });
            let share = w / outs.len() as f64;
            for &(ni, rmask) in outs.iter() {
                let mut cum2 = cum;
                for (i, &x) in path[..t].iter().enumerate() {
                    if rmask >> x & 1 == 1 {
                        cum2 |= 1 << i;
                    }
                }
                let hit = cum2 >> (s - 1) & 1;
                let tbits2 = tbits | hit << (s - 1);
                let mut p = share;
                if follow_walk {
                    p *= walk_prob(ds, space.get(ni), path[s - 1], path[s]);
                    if p == 0.0 {
                        continue;
                    }
                }
                *next.entry((ni, cum2, tbits2)).or_insert(0.0) += p;
            }
        }
        states = next;
    }
    let mut probs = vec![0.0; 1 << t];
    for ((_, _, tbits), p) in states {
        probs[tbits as usize] += p;
    }
    Ok(ResetLaw {
        horizon: t as u32,
        probs,
    })
}

/// First self-avoiding `η`-path of `t` steps in lexicographic order.
pub fn find_self_avoiding_path(
    ds: &DegreeSequence,
    eta: &Configuration,
    t: u32,
) -> Option<Vec<u32>> {
    fn extend(
        ds: &DegreeSequence,
        eta: &Configuration,
        t: u32,
        path: &mut Vec<u32>,
    ) -> bool {
        if path.len() as u32 == t + 1 {
            return true;
        }
        let p = eta.partner(*path.last().unwrap());
        for y in ds.half_edges_of(ds.vertex_of(p)) {
            if y == p || path.iter().any(|&z| ds.vertex_of(z) == ds.vertex_of(y)) {
                continue;
            }
            path.push(y);
            if extend(ds, eta, t, path) {
                return true;
            }
            path.pop();
        }
        false
    }
    (0..ds.ell() as u32).find_map(|x| {
        let mut path = vec![x];
        extend(ds, eta, t, &mut path).then_some(path)
    })
}

/// The law of `T` for the lexicographically first (configuration,
/// self-avoiding path) pair of the instance.
pub fn exact_reset_law(ds: &DegreeSequence, k: usize, t: u32) -> Result<ResetLaw> {
    let space = ConfigSpace::new(ds, MAX_HISTORY_ELL)?;
    for eta in space.configs() {
        if let Some(path) = find_self_avoiding_path(ds, eta, t) {
            return path_history_law(ds, k, eta, &path, false);
        }
    }
    Err(Error::InvalidParameter(format!(
        "no self-avoiding path of {t} steps exists on this instance"
    )))
}

/// Whether `path` is self-avoiding and each `T`-delimited segment is a
/// non-backtracking path in `η`.
pub fn is_segmented_path(
    ds: &DegreeSequence,
    eta: &Configuration,
    path: &[u32],
    resets: &ResetSet,
) -> bool {
    for (i, &a) in path.iter().enumerate() {
        if path[..i].iter().any(|&b| ds.vertex_of(b) == ds.vertex_of(a)) {
            return false;
        }
    }
    (1..path.len()).all(|i| {
        resets.contains(i as u32) || ds.are_siblings(eta.partner(path[i - 1]), path[i])
    })
}

/// `Π_{i ∈ [t] \ T} 1/deg(x_i) · ℓ^{-|T|}`.
pub fn segmented_path_weight(ds: &DegreeSequence, path: &[u32], resets: &ResetSet) -> f64 {
    let mut w = (ds.ell() as f64).powi(-(resets.len() as i32));
    for (i, &x) in path.iter().enumerate().skip(1) {
        if !resets.contains(i as u32) {
            w /= ds.forward_degree(x) as f64;
        }
    }
    w
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentedPathSet {
    pub resets: ResetSet,
    pub paths: Vec<Vec<u32>>,
}

impl SegmentedPathSet {
    pub fn total_weight(&self, ds: &DegreeSequence) -> f64 {
        self.paths
            .iter()
            .map(|p| segmented_path_weight(ds, p, &self.resets))
            .sum()
    }
}

fn check_segmented_size(ds: &DegreeSequence, t: u32) -> Result<()> {
    if ds.ell() > MAX_SEGMENTED_ELL {
        return Err(Error::TooLarge {
            what: "ell",
            value: ds.ell(),
            limit: MAX_SEGMENTED_ELL,
        });
    }
    if t > MAX_SEGMENTED_T {
        return Err(Error::TooLarge {
            what: "t",
            value: t as usize,
            limit: MAX_SEGMENTED_T as usize,
        });
    }
    Ok(())
}

/// All self-avoiding segmented paths from `x` to `y` with respect to
/// `resets`, found by testing every half-edge sequence.
pub fn enumerate_segmented_paths(
    ds: &DegreeSequence,
    eta: &Configuration,
    x: u32,
    y: u32,
    resets: &ResetSet,
) -> Result<SegmentedPathSet> {
    let t = resets.horizon();
    check_segmented_size(ds, t)?;
    ds.check_half_edge(x)?;
    ds.check_half_edge(y)?;
    let ell = ds.ell() as u32;
    let mut paths = Vec::new();
    if t == 0 {
        if x == y {
            paths.push(vec![x]);
        }
        return Ok(SegmentedPathSet {
            resets: resets.clone(),
            paths,
        });
    }
    let inner = (t - 1) as usize;
    let total = (ell as usize).pow(inner as u32);
    let mut path = vec![0u32; t as usize + 1];
    path[0] = x;
    path[t as usize] = y;
    for code in 0..total {
        let mut c = code;
        for slot in path[1..=inner].iter_mut() {
            *slot = (c % ell as usize) as u32;
            c /= ell as usize;
        }
        if is_segmented_path(ds, eta, &path, resets) {
            paths.push(path.clone());
        }
    }
    paths.sort();
    Ok(SegmentedPathSet {
        resets: resets.clone(),
        paths,
    })
}

/// `P(X_t = y, SA_t | 𝒯 = T)` for the modified walk from `(η, x)`, for every
/// `y`, by expanding every branch of the walk.
pub fn exact_modified_law(
    ds: &DegreeSequence,
    eta: &Configuration,
    x: u32,
    resets: &ResetSet,
) -> Result<Vec<f64>> {
    let t = resets.horizon();
    check_segmented_size(ds, t)?;
    ds.check_half_edge(x)?;
    let ell = ds.ell();
    let mut out = vec![0.0; ell];
    let mut visited = vec![false; ds.n()];

    #[allow(clippy::too_many_arguments)]
    fn branch(
        ds: &DegreeSequence,
        eta: &Configuration,
        resets: &ResetSet,
        s: u32,
        pos: u32,
        prob: f64,
        visited: &mut [bool],
        out: &mut [f64],
    ) {
        if s > resets.horizon() {
            out[pos as usize] += prob;
            return;
        }
        let mut go = |next: u32, p: f64, visited: &mut [bool]| {
            let v = ds.vertex_of(next) as usize;
            if visited[v] {
                return;
            }
            visited[v] = true;
            branch(ds, eta, resets, s + 1, next, p, visited, out);
            visited[v] = false;
        };
        if resets.contains(s) {
            let p = prob / ds.ell() as f64;
            for next in 0..ds.ell() as u32 {
                go(next, p, visited);
            }
        } else {
            let partner = eta.partner(pos);
            let p = prob / ds.forward_degree(partner) as f64;
            for next in ds.half_edges_of(ds.vertex_of(partner)) {
                if next != partner {
                    go(next, p, visited);
                }
            }
        }
    }

    visited[ds.vertex_of(x) as usize] = true;
    branch(ds, eta, resets, 1, x, 1.0, &mut visited, &mut out);
    Ok(out)
}
