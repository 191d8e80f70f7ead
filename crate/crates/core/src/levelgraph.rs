//! The bipartite graph `G(k,l)` between levels `k` and `l` of `[n]`.
//!
//! A `k`-set and an `l`-set are adjacent iff the `l`-set is contained in the
//! `k`-set. The graph is implicit: adjacency is a mask test. [`materialize`]
//! builds explicit adjacency lists for the solvers, guarded by a vertex cap.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::setcore::{self, choose, enumerate_k_subsets, rank_unchecked, Subset, MAX_N};

/// Default cap on `C(n,k) + C(n,l)` for [`materialize`].
pub const DEFAULT_MATERIALIZE_CAP: u64 = 50_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LevelGraphSpec {
    n: u32,
    k: u32,
    l: u32,
}

impl LevelGraphSpec {
    /// Requires `64 >= n > k > l >= 1`.
    pub fn new(n: u32, k: u32, l: u32) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::InvalidParameters(format!("n = {n} exceeds {MAX_N}")));
        }
        if !(n > k && k > l && l >= 1) {
            return Err(Error::InvalidParameters(format!(
                "need n > k > l >= 1, got n={n} k={k} l={l}"
            )));
        }
        Ok(LevelGraphSpec { n, k, l })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn level_size(&self, level: Level) -> u32 {
        match level {
            Level::Upper => self.k,
            Level::Lower => self.l,
        }
    }

    pub fn upper_count(&self) -> u64 {
        choose(self.n, self.k)
    }

    pub fn lower_count(&self) -> u64 {
        choose(self.n, self.l)
    }

    /// `C(n,k) + C(n,l)`; `None` only if the sum overflows.
    pub fn vertex_count(&self) -> Option<u64> {
        self.upper_count().checked_add(self.lower_count())
    }

    pub fn validate(&self, v: &VertexRef) -> Result<()> {
        let want = self.level_size(v.level);
        if v.set.n() != self.n || v.set.len() != want {
            return Err(Error::InvalidVertex(format!(
                "{:?} vertex {} needs {want} elements of [{}]",
                v.level, v.set, self.n
            )));
        }
        Ok(())
    }

    pub fn vertex(&self, level: Level, elements: &[u32]) -> Result<VertexRef> {
        let v = VertexRef { level, set: Subset::from_elements(self.n, elements)? };
        self.validate(&v)?;
        Ok(v)
    }

    pub fn upper(&self, elements: &[u32]) -> Result<VertexRef> {
        self.vertex(Level::Upper, elements)
    }

    pub fn lower(&self, elements: &[u32]) -> Result<VertexRef> {
        self.vertex(Level::Lower, elements)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Upper,
    Lower,
}

/// A vertex of `G(k,l)`: a subset tagged with its level.
///
/// Orders Upper before Lower, then colex within a level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VertexRef {
    pub level: Level,
    #[serde(rename = "elements")]
    pub set: Subset,
}

impl VertexRef {
    pub fn upper(set: Subset) -> Self {
        VertexRef { level: Level::Upper, set }
    }

    pub fn lower(set: Subset) -> Self {
        VertexRef { level: Level::Lower, set }
    }
}

#[inline]
pub(crate) fn adjacent_unchecked(u: &VertexRef, v: &VertexRef) -> bool {
    match (u.level, v.level) {
        (Level::Upper, Level::Lower) => v.set.is_subset_of(&u.set),
        (Level::Lower, Level::Upper) => u.set.is_subset_of(&v.set),
        _ => false,
    }
}

pub fn adjacent(spec: &LevelGraphSpec, u: &VertexRef, v: &VertexRef) -> Result<bool> {
    spec.validate(u)?;
    spec.validate(v)?;
    Ok(adjacent_unchecked(u, v))
}

/// Scatters the low bits of `bits` onto the set bits of `positions`.
#[inline]
fn deposit(mut bits: u64, mut positions: u64) -> u64 {
    let mut out = 0;
    while bits != 0 && positions != 0 {
        let low = positions & positions.wrapping_neg();
        if bits & 1 == 1 {
            out |= low;
        }
        bits >>= 1;
        positions ^= low;
    }
    out
}

/// The `C(k,l)` lower vertices contained in `u`, in colex order.
pub fn neighbors_down(spec: &LevelGraphSpec, u: &VertexRef) -> Result<Vec<VertexRef>> {
    spec.validate(u)?;
    if u.level != Level::Upper {
        return Err(Error::InvalidVertex(format!("{} is not an upper vertex", u.set)));
    }
    Ok(enumerate_k_subsets(spec.k, spec.l)?
        .map(|pattern| {
            let mask = deposit(pattern.mask(), u.set.mask());
            VertexRef::lower(Subset::from_mask_unchecked(spec.n, mask))
        })
        .collect())
}

/// The `C(n-l, k-l)` upper vertices containing `v`, in colex order.
pub fn neighbors_up(spec: &LevelGraphSpec, v: &VertexRef) -> Result<Vec<VertexRef>> {
    spec.validate(v)?;
    if v.level != Level::Lower {
        return Err(Error::InvalidVertex(format!("{} is not a lower vertex", v.set)));
    }
    let outside = v.set.complement().mask();
    Ok(enumerate_k_subsets(spec.n - spec.l, spec.k - spec.l)?
        .map(|pattern| {
            let mask = v.set.mask() | deposit(pattern.mask(), outside);
            VertexRef::upper(Subset::from_mask_unchecked(spec.n, mask))
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub vertex_count: u64,
    pub edge_count: u64,
    pub upper_degree: u64,
    pub lower_degree: u64,
}

pub fn graph_stats(spec: &LevelGraphSpec) -> Result<GraphStats> {
    let (n, k, l) = (spec.n, spec.k, spec.l);
    let upper = setcore::binomial(n, k)?;
    let lower = setcore::binomial(n, l)?;
    let upper_degree = setcore::binomial(k, l)?;
    let lower_degree = setcore::binomial(n - l, k - l)?;
    let overflow = || Error::Overflow { n, k };
    let edge_count = upper.checked_mul(upper_degree).ok_or_else(overflow)?;
    debug_assert_eq!(Some(edge_count), lower.checked_mul(lower_degree));
    Ok(GraphStats {
        vertex_count: upper.checked_add(lower).ok_or_else(overflow)?,
        edge_count,
        upper_degree,
        lower_degree,
    })
}

/// Explicit adjacency for `G(k,l)`.
///
/// Vertex index `i < upper_count` is the upper vertex of colex rank `i`; the
/// remaining indices are lower vertices, offset by `upper_count`.
#[derive(Clone, Debug)]
pub struct MaterializedGraph {
    spec: LevelGraphSpec,
    upper: Vec<Subset>,
    lower: Vec<Subset>,
    adj: Vec<Vec<usize>>,
}

impl MaterializedGraph {
    pub fn spec(&self) -> &LevelGraphSpec {
        &self.spec
    }

    pub fn vertex_count(&self) -> usize {
        self.upper.len() + self.lower.len()
    }

    pub fn upper_count(&self) -> usize {
        self.upper.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertex(&self, index: usize) -> VertexRef {
        if index < self.upper.len() {
            VertexRef::upper(self.upper[index])
        } else {
            VertexRef::lower(self.lower[index - self.upper.len()])
        }
    }

    pub fn index_of(&self, v: &VertexRef) -> Option<usize> {
        self.spec.validate(v).ok()?;
        let r = rank_unchecked(v.set.mask()) as usize;
        Some(match v.level {
            Level::Upper => r,
            Level::Lower => self.upper.len() + r,
        })
    }

    /// Sorted neighbour indices.
    pub fn neighbors(&self, index: usize) -> &[usize] {
        &self.adj[index]
    }

    pub fn degree(&self, index: usize) -> usize {
        self.adj[index].len()
    }
}

pub fn materialize(spec: &LevelGraphSpec) -> Result<MaterializedGraph> {
    materialize_with_cap(spec, DEFAULT_MATERIALIZE_CAP)
}

pub fn materialize_with_cap(spec: &LevelGraphSpec, cap: u64) -> Result<MaterializedGraph> {
    let total = spec.vertex_count().unwrap_or(u64::MAX);
    if total > cap {
        return Err(Error::TooLarge { what: "vertex count", size: total, cap });
    }
    let upper: Vec<Subset> = enumerate_k_subsets(spec.n, spec.k)?.collect();
    let lower: Vec<Subset> = enumerate_k_subsets(spec.n, spec.l)?.collect();
    let offset = upper.len();
    let mut adj = vec![Vec::new(); upper.len() + lower.len()];
    let patterns: Vec<u64> = enumerate_k_subsets(spec.k, spec.l)?.map(|p| p.mask()).collect();
    for (ui, u) in upper.iter().enumerate() {
        for &p in &patterns {
            let li = offset + rank_unchecked(deposit(p, u.mask())) as usize;
            adj[ui].push(li);
            adj[li].push(ui);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    Ok(MaterializedGraph { spec: *spec, upper, lower, adj })
}
