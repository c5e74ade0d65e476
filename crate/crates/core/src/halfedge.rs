//! Half-edge representation of multigraphs with a prescribed degree sequence.
//!
//! Half-edges are numbered `0..ell` in vertex-major order: the half-edges of
//! vertex `v` occupy the contiguous block `offsets[v]..offsets[v + 1]`. A
//! [`Configuration`] pairs them into edges. Self-loops and multi-edges are
//! legal.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::ops::Range;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `ell` accepted by [`enumerate_configurations`].
pub const MAX_ENUMERATION_ELL: usize = 12;

/// Minimum-degree regime a sequence is validated against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DegreeMode {
    /// Every degree at least 2.
    R,
    /// Every degree at least 3.
    RStar,
}

impl DegreeMode {
    pub fn floor(self) -> u32 {
        match self {
            DegreeMode::R => 2,
            DegreeMode::RStar => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSequence {
    degrees: Vec<u32>,
    offsets: Vec<u32>,
    vertex_of: Vec<u32>,
    mode: DegreeMode,
}

impl DegreeSequence {
    pub fn new(degrees: Vec<u32>, mode: DegreeMode) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::EmptyDegreeSequence);
        }
        let floor = mode.floor();
        if let Some((vertex, &degree)) = degrees.iter().enumerate().find(|(_, &d)| d < floor) {
            return Err(Error::DegreeBelowFloor {
                vertex,
                degree,
                floor,
            });
        }
        let ell: usize = degrees.iter().map(|&d| d as usize).sum();
        if ell % 2 != 0 {
            return Err(Error::OddHalfEdgeCount(ell));
        }
        if ell > u32::MAX as usize / 2 {
            return Err(Error::TooLarge {
                what: "ell",
                value: ell,
                limit: u32::MAX as usize / 2,
            });
        }
        let mut offsets = Vec::with_capacity(degrees.len() + 1);
        let mut vertex_of = Vec::with_capacity(ell);
        let mut acc = 0u32;
        for (v, &d) in degrees.iter().enumerate() {
            offsets.push(acc);
            vertex_of.extend(std::iter::repeat_n(v as u32, d as usize));
            acc += d;
        }
        offsets.push(acc);
        Ok(Self {
            degrees,
            offsets,
            vertex_of,
            mode,
        })
    }

    /// Parses one degree per line. Blank lines and `#` comments are skipped.
    pub fn from_text(text: &str, mode: DegreeMode) -> Result<Self> {
        let mut degrees = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let d = line.parse::<u32>().map_err(|e| Error::Parse {
                line: i + 1,
                msg: format!("{line:?}: {e}"),
            })?;
            degrees.push(d);
        }
        Self::new(degrees, mode)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.degrees.len() * 3);
        for d in &self.degrees {
            let _ = writeln!(out, "{d}");
        }
        out
    }

    /// Same degrees validated against another floor.
    pub fn with_mode(&self, mode: DegreeMode) -> Result<Self> {
        Self::new(self.degrees.clone(), mode)
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    pub fn ell(&self) -> usize {
        self.vertex_of.len()
    }

    pub fn m(&self) -> usize {
        self.ell() / 2
    }

    pub fn mode(&self) -> DegreeMode {
        self.mode
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.degrees[v]
    }

    pub fn d_max(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    #[inline]
    pub fn vertex_of(&self, x: u32) -> u32 {
        self.vertex_of[x as usize]
    }

    #[inline]
    pub fn half_edges_of(&self, v: u32) -> Range<u32> {
        self.offsets[v as usize]..self.offsets[v as usize + 1]
    }

    /// `d(v(x)) - 1`.
    #[inline]
    pub fn forward_degree(&self, x: u32) -> u32 {
        self.degrees[self.vertex_of[x as usize] as usize] - 1
    }

    pub fn check_half_edge(&self, x: u32) -> Result<()> {
        if (x as usize) < self.ell() {
            Ok(())
        } else {
            Err(Error::HalfEdgeOutOfRange(x))
        }
    }

    pub fn siblings(&self, x: u32) -> Vec<u32> {
        self.half_edges_of(self.vertex_of(x))
            .filter(|&y| y != x)
            .collect()
    }

    #[inline]
    pub fn are_siblings(&self, x: u32, y: u32) -> bool {
        x != y && self.vertex_of(x) == self.vertex_of(y)
    }

    /// The `r`-th sibling of `x` (`r < forward_degree(x)`), in index order.
    #[inline]
    pub(crate) fn nth_sibling(&self, x: u32, r: u32) -> u32 {
        let y = self.offsets[self.vertex_of[x as usize] as usize] + r;
        if y >= x {
            y + 1
        } else {
            y
        }
    }
}

/// A pairing of half-edges: a fixed-point-free involution on `0..ell`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    pair: Vec<u32>,
}

impl Configuration {
    /// Validates and wraps a partner array.
    pub fn from_partner_array(pair: Vec<u32>) -> Result<Self> {
        let ell = pair.len();
        for (x, &y) in pair.iter().enumerate() {
            if y as usize >= ell {
                return Err(Error::InvalidConfiguration(format!(
                    "partner {y} of {x} out of range"
                )));
            }
            if y as usize == x {
                return Err(Error::InvalidConfiguration(format!("{x} is a fixed point")));
            }
            if pair[y as usize] as usize != x {
                return Err(Error::InvalidConfiguration(format!(
                    "pair[pair[{x}]] != {x}"
                )));
            }
        }
        Ok(Self { pair })
    }

    pub fn from_pairs(ell: usize, pairs: &[(u32, u32)]) -> Result<Self> {
        const UNSET: u32 = u32::MAX;
        let mut pair = vec![UNSET; ell];
        for &(a, b) in pairs {
            for h in [a, b] {
                if h as usize >= ell {
                    return Err(Error::HalfEdgeOutOfRange(h));
                }
                if pair[h as usize] != UNSET {
                    return Err(Error::InvalidConfiguration(format!(
                        "half-edge {h} paired twice"
                    )));
                }
            }
            pair[a as usize] = b;
            pair[b as usize] = a;
        }
        if let Some(x) = pair.iter().position(|&p| p == UNSET) {
            return Err(Error::InvalidConfiguration(format!("half-edge {x} unpaired")));
        }
        Self::from_partner_array(pair)
    }

    /// Uniform over all `(ell - 1)!!` pairings: shuffle, then pair neighbours.
    pub fn sample_uniform<R: Rng + ?Sized>(ds: &DegreeSequence, rng: &mut R) -> Self {
        let ell = ds.ell();
        let mut order: Vec<u32> = (0..ell as u32).collect();
        order.shuffle(rng);
        let mut pair = vec![0u32; ell];
        for chunk in order.chunks_exact(2) {
            pair[chunk[0] as usize] = chunk[1];
            pair[chunk[1] as usize] = chunk[0];
        }
        Self { pair }
    }

    #[inline]
    pub fn partner(&self, x: u32) -> u32 {
        self.pair[x as usize]
    }

    pub fn ell(&self) -> usize {
        self.pair.len()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.pair
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [u32] {
        &mut self.pair
    }

    /// Edges as `(min, max)`, sorted ascending.
    pub fn canonical_edges(&self) -> Vec<(u32, u32)> {
        self.pair
            .iter()
            .enumerate()
            .filter(|&(x, &y)| (x as u32) < y)
            .map(|(x, &y)| (x as u32, y))
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("ell={}\n", self.ell());
        for (a, b) in self.canonical_edges() {
            let _ = writeln!(out, "{a} {b}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing ell= header".into(),
        })?;
        let ell = header
            .strip_prefix("ell=")
            .and_then(|v| v.trim().parse::<usize>().ok())
            .ok_or(Error::Parse {
                line: 1,
                msg: format!("bad header {header:?}"),
            })?;
        let mut pairs = Vec::with_capacity(ell / 2);
        for (line, l) in lines {
            let mut it = l.split_whitespace().map(str::parse::<u32>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(a)), Some(Ok(b)), None) => pairs.push((a, b)),
                _ => {
                    return Err(Error::Parse {
                        line,
                        msg: format!("expected `<x> <y>`, got {l:?}"),
                    })
                }
            }
        }
        Self::from_pairs(ell, &pairs)
    }
}

/// Number of edges of `a` absent from `b`.
pub fn hamming_distance(a: &Configuration, b: &Configuration) -> Result<usize> {
    if a.ell() != b.ell() {
        return Err(Error::LengthMismatch {
            left: a.ell(),
            right: b.ell(),
        });
    }
    Ok(a.pair
        .iter()
        .zip(&b.pair)
        .enumerate()
        .filter(|&(x, (&pa, &pb))| (x as u32) < pa && pa != pb)
        .count())
}

/// `(2j - 1)!!` for `j` pairs, i.e. the number of perfect matchings of `2j`
/// items.
pub fn pairing_count(pairs: usize) -> u128 {
    (1..=pairs as u128).map(|i| 2 * i - 1).product()
}

/// Calls `f` once per perfect matching of `items` (which must have even
/// length). Matchings are produced by always pairing the first unmatched item.
pub(crate) fn for_each_pairing<F: FnMut(&[(u32, u32)])>(items: &[u32], mut f: F) {
    fn rec<F: FnMut(&[(u32, u32)])>(rest: &mut Vec<u32>, acc: &mut Vec<(u32, u32)>, f: &mut F) {
        if rest.is_empty() {
            f(acc);
            return;
        }
        let first = rest.remove(0);
        for i in 0..rest.len() {
            let other = rest.remove(i);
            acc.push((first, other));
            rec(rest, acc, f);
            acc.pop();
            rest.insert(i, other);
        }
        rest.insert(0, first);
    }
    debug_assert!(items.len() % 2 == 0);
    let mut rest = items.to_vec();
    let mut acc = Vec::with_capacity(items.len() / 2);
    rec(&mut rest, &mut acc, &mut f);
}

/// Every configuration on `ds`'s half-edges, each exactly once.
pub fn enumerate_configurations(
    ds: &DegreeSequence,
) -> Result<impl Iterator<Item = Configuration>> {
    let ell = ds.ell();
    if ell > MAX_ENUMERATION_ELL {
        return Err(Error::TooLarge {
            what: "ell",
            value: ell,
            limit: MAX_ENUMERATION_ELL,
        });
    }
    let items: Vec<u32> = (0..ell as u32).collect();
    let mut out = Vec::with_capacity(pairing_count(ell / 2) as usize);
    for_each_pairing(&items, |pairs| {
        let mut pair = vec![0u32; ell];
        for &(a, b) in pairs {
            pair[a as usize] = b;
            pair[b as usize] = a;
        }
        out.push(Configuration { pair });
    });
    Ok(out.into_iter())
}

/// Indexed list of all configurations of a tiny instance.
#[derive(Debug, Clone)]
pub struct ConfigSpace {
    configs: Vec<Configuration>,
    index: HashMap<Vec<u32>, usize>,
}

impl ConfigSpace {
    /// Enumerates the space, refusing instances with more than `max_ell`
    /// half-edges.
    pub fn new(ds: &DegreeSequence, max_ell: usize) -> Result<Self> {
        if ds.ell() > max_ell {
            return Err(Error::TooLarge {
                what: "ell",
                value: ds.ell(),
                limit: max_ell,
            });
        }
        let configs: Vec<Configuration> = enumerate_configurations(ds)?.collect();
        let index = configs
            .iter()
            .enumerate()
            .map(|(i, c)| (c.pair.clone(), i))
            .collect();
        Ok(Self { configs, index })
    }

    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    pub fn configs(&self) -> &[Configuration] {
        &self.configs
    }

    pub fn get(&self, i: usize) -> &Configuration {
        &self.configs[i]
    }

    pub fn index_of(&self, c: &Configuration) -> Option<usize> {
        self.index.get(&c.pair).copied()
    }
}
