//! Minimum dominating sets of materialised `G(k,l)`.
//!
//! Domination is treated as set cover over closed neighbourhoods: vertex `c`
//! covers `N[c]`, and since the relation is symmetric, the candidates able to
//! cover `e` are exactly `N[e]`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};

use crate::bitset::VertexSet;
use crate::constructions::{verify_certificate, DominationCertificate, Provenance};
use crate::error::{Error, Result};
use crate::levelgraph::{materialize, LevelGraphSpec, MaterializedGraph};
use crate::setcore::binomial;

/// Default search budgets.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;
pub const DEFAULT_BRUTE_FORCE_BUDGET: u64 = 200_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    BruteForce,
    Greedy,
    BranchAndBound,
}

/// Outcome of a solve.
///
/// Equality ignores `elapsed`, so two runs of a deterministic solve compare
/// equal.
#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub spec: LevelGraphSpec,
    pub method: Method,
    pub value: u64,
    pub witness: DominationCertificate,
    pub proven_optimal: bool,
    pub lower_bound: u64,
    pub nodes_explored: u64,
    #[serde(rename = "elapsed_seconds", serialize_with = "seconds")]
    pub elapsed: Duration,
}

impl PartialEq for SolveReport {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
            && self.method == other.method
            && self.value == other.value
            && self.witness == other.witness
            && self.proven_optimal == other.proven_optimal
            && self.lower_bound == other.lower_bound
            && self.nodes_explored == other.nodes_explored
    }
}

fn seconds<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

struct Instance {
    graph: MaterializedGraph,
    closed: Vec<VertexSet>,
}

impl Instance {
    fn new(spec: &LevelGraphSpec) -> Result<Self> {
        let graph = materialize(spec)?;
        let v = graph.vertex_count();
        let closed = (0..v)
            .map(|i| {
                let mut s = VertexSet::new(v);
                s.insert(i);
                for &j in graph.neighbors(i) {
                    s.insert(j);
                }
                s
            })
            .collect();
        Ok(Instance { graph, closed })
    }

    fn len(&self) -> usize {
        self.graph.vertex_count()
    }

    /// `max(counting bound, ceil(|V| / (max degree + 1)))`
    fn root_lower_bound(&self) -> Result<u64> {
        let max_closed = self.closed.iter().map(VertexSet::count).max().unwrap_or(1) as u64;
        let packing = (self.len() as u64).div_ceil(max_closed);
        Ok(counting_lower_bound(self.graph.spec())?.max(packing))
    }

    /// Builds the certificate for `chosen` and checks it by enumeration.
    fn certify(&self, chosen: &[usize], provenance: Provenance) -> Result<DominationCertificate> {
        let members = chosen.iter().map(|&i| self.graph.vertex(i));
        let cert = DominationCertificate::new(*self.graph.spec(), members, provenance, None)?;
        let check = verify_certificate(&cert)?;
        if !check.verified {
            return Err(Error::Internal(format!(
                "solver witness leaves {:?} undominated",
                check.witness
            )));
        }
        Ok(cert)
    }
}

/// Greedy set cover: repeatedly take the vertex whose closed neighbourhood
/// covers the most undominated vertices, lowest index on ties.
fn greedy_cover(inst: &Instance) -> Vec<usize> {
    let v = inst.len();
    let mut covered = VertexSet::new(v);
    let mut chosen = Vec::new();
    // gains only shrink, so stale heap entries are upper bounds
    let mut heap: BinaryHeap<(usize, Reverse<usize>)> =
        inst.closed.iter().enumerate().map(|(i, s)| (s.count(), Reverse(i))).collect();
    let mut remaining = v;
    while remaining > 0 {
        let (stale, Reverse(i)) = heap.pop().expect("an uncovered vertex covers itself");
        let gain = inst.closed[i].count_difference(&covered);
        if gain == stale {
            chosen.push(i);
            covered.union_with(&inst.closed[i]);
            remaining -= gain;
        } else if gain > 0 {
            heap.push((gain, Reverse(i)));
        }
    }
    chosen
}

pub fn greedy_dominate(spec: &LevelGraphSpec) -> Result<SolveReport> {
    let start = Instant::now();
    let inst = Instance::new(spec)?;
    let chosen = greedy_cover(&inst);
    let witness = inst.certify(&chosen, Provenance::Greedy)?;
    let value = chosen.len() as u64;
    let lower_bound = inst.root_lower_bound()?.min(value);
    Ok(SolveReport {
        spec: *spec,
        method: Method::Greedy,
        value,
        witness,
        proven_optimal: value == lower_bound,
        lower_bound,
        nodes_explored: value,
        elapsed: start.elapsed(),
    })
}

/// Smallest `a + b` with `a*C(k,l) + b >= C(n,l)` and `b*C(n-l,k-l) + a >= C(n,k)`.
///
/// `a` upper and `b` lower members must cover the lower level (each upper
/// member covers `C(k,l)` of it) and the upper level (each lower member
/// covers `C(n-l,k-l)`).
pub fn counting_lower_bound(spec: &LevelGraphSpec) -> Result<u64> {
    let (n, k, l) = (spec.n(), spec.k(), spec.l());
    let lower_total = binomial(n, l)? as i128;
    let per_upper = binomial(k, l)? as i128;
    let upper_total = binomial(n, k)? as i128;
    let per_lower = binomial(n - l, k - l)? as i128;

    // a + b(a) = max(falling(a), rising(a)) with falling nonincreasing and
    // rising nondecreasing, so the minimum sits where they cross.
    let falling = |a: i128| a + lower_total - a * per_upper;
    let rising = |a: i128| a + ((upper_total - a).max(0) + per_lower - 1) / per_lower;
    let cost = |a: i128| falling(a).max(rising(a));

    let (mut lo, mut hi) = (0i128, (lower_total + per_upper - 1) / per_upper);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if falling(mid) <= rising(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let best = if lo > 0 { cost(lo).min(cost(lo - 1)) } else { cost(lo) };
    Ok(best as u64)
}

pub fn brute_force_gamma(spec: &LevelGraphSpec, max_size: u64) -> Result<SolveReport> {
    brute_force_gamma_with_budget(spec, max_size, DEFAULT_BRUTE_FORCE_BUDGET)
}

/// Iterative deepening over vertex subsets in lexicographic index order.
///
/// Before size `s` is tried, `sum_{t<=s} C(|V|, t)` must stay within `budget`.
pub fn brute_force_gamma_with_budget(
    spec: &LevelGraphSpec,
    max_size: u64,
    budget: u64,
) -> Result<SolveReport> {
    let start = Instant::now();
    let inst = Instance::new(spec)?;
    let v = inst.len();
    let mut planned: u64 = 0;
    let mut tested: u64 = 0;
    for size in 1..=max_size.min(v as u64) {
        let level = binomial_big(v as u64, size);
        planned = planned.saturating_add(level);
        if planned > budget {
            return Err(Error::BudgetExceeded(format!(
                "brute force at size {size} needs {planned} subsets, budget {budget}"
            )));
        }
        let mut cover = vec![VertexSet::new(v); size as usize + 1];
        let mut chosen = Vec::with_capacity(size as usize);
        if first_cover(&inst.closed, &mut cover, &mut chosen, 0, &mut tested) {
            let witness = inst.certify(&chosen, Provenance::Exact)?;
            return Ok(SolveReport {
                spec: *spec,
                method: Method::BruteForce,
                value: size,
                witness,
                proven_optimal: true,
                lower_bound: size,
                nodes_explored: tested,
                elapsed: start.elapsed(),
            });
        }
    }
    Err(Error::BudgetExceeded(format!("no dominating set with at most {max_size} vertices")))
}

/// `C(n, k)` saturating at `u64::MAX`.
fn binomial_big(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

fn first_cover(
    closed: &[VertexSet],
    cover: &mut [VertexSet],
    chosen: &mut Vec<usize>,
    from: usize,
    tested: &mut u64,
) -> bool {
    let depth = chosen.len();
    let want = cover.len() - 1;
    let v = closed.len();
    if depth == want {
        *tested += 1;
        return cover[depth].count() == v;
    }
    for i in from..=v - (want - depth) {
        let (head, tail) = cover.split_at_mut(depth + 1);
        tail[0].copy_from(&head[depth]);
        tail[0].union_with(&closed[i]);
        chosen.push(i);
        if first_cover(closed, cover, chosen, i + 1, tested) {
            return true;
        }
        chosen.pop();
    }
    false
}

pub fn branch_and_bound_gamma(spec: &LevelGraphSpec, node_budget: u64) -> Result<SolveReport> {
    branch_and_bound_gamma_with_workers(spec, node_budget, 1)
}

/// Exact search seeded by the greedy cover.
///
/// Each node picks the undominated vertex with the fewest remaining
/// candidates and branches on which candidate dominates it; a tried
/// candidate is excluded from its later siblings. Nodes are cut when
/// `chosen + ceil(undominated / best gain) >= best`. With `workers > 1` the
/// root's branches are shared among threads; value and optimality match the
/// single-worker run whenever the search completes.
pub fn branch_and_bound_gamma_with_workers(
    spec: &LevelGraphSpec,
    node_budget: u64,
    workers: usize,
) -> Result<SolveReport> {
    let start = Instant::now();
    let inst = Instance::new(spec)?;
    let v = inst.len();
    let greedy = greedy_cover(&inst);
    let root_bound = inst.root_lower_bound()?;

    let shared = Shared {
        best: AtomicUsize::new(greedy.len()),
        nodes: AtomicU64::new(0),
        budget: node_budget,
        aborted: AtomicBool::new(false),
        floor: root_bound as usize,
    };

    let mut best_set = greedy.clone();
    if (greedy.len() as u64) > root_bound {
        let mut root = Worker::new(&inst.closed, &shared);
        let covered = VertexSet::new(v);
        if let Some(branches) = root.expand(&covered) {
            let found = run_branches(&inst.closed, &shared, &covered, &branches, workers.max(1));
            if let Some(set) = found {
                best_set = set;
            }
        }
    }

    let value = best_set.len() as u64;
    let complete = !shared.aborted.load(Ordering::SeqCst);
    let witness = inst.certify(&best_set, Provenance::Exact)?;
    Ok(SolveReport {
        spec: *spec,
        method: Method::BranchAndBound,
        value,
        witness,
        proven_optimal: complete,
        lower_bound: if complete { value } else { root_bound.min(value) },
        nodes_explored: shared.nodes.load(Ordering::SeqCst).min(node_budget),
        elapsed: start.elapsed(),
    })
}

struct Shared {
    best: AtomicUsize,
    nodes: AtomicU64,
    budget: u64,
    aborted: AtomicBool,
    /// Proven lower bound; reaching it ends the search.
    floor: usize,
}

impl Shared {
    fn finished(&self) -> bool {
        self.aborted.load(Ordering::Relaxed) || self.best.load(Ordering::Relaxed) <= self.floor
    }
}

/// Root branches: `(candidate, candidates excluded before it)`.
type Branches = Vec<(usize, Vec<usize>)>;

fn run_branches(
    closed: &[VertexSet],
    shared: &Shared,
    covered: &VertexSet,
    branches: &Branches,
    workers: usize,
) -> Option<Vec<usize>> {
    let next = AtomicUsize::new(0);
    // (branch index, set) for every improvement, merged afterwards
    let results: Mutex<Vec<(usize, Vec<usize>)>> = Mutex::new(Vec::new());
    let work = || {
        let mut w = Worker::new(closed, shared);
        loop {
            let idx = next.fetch_add(1, Ordering::SeqCst);
            if idx >= branches.len() || shared.finished() {
                break;
            }
            let (cand, ref excluded) = branches[idx];
            for &x in excluded {
                w.excluded.insert(x);
            }
            let mut cov = covered.clone();
            cov.union_with(&closed[cand]);
            w.chosen.push(cand);
            w.found = None;
            w.dfs(&cov);
            w.chosen.pop();
            for &x in excluded {
                w.excluded.remove(x);
            }
            if let Some(set) = w.found.take() {
                results.lock().expect("results lock").push((idx, set));
            }
        }
    };
    if workers == 1 {
        work();
    } else {
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(work);
            }
        });
    }
    results
        .into_inner()
        .expect("results lock")
        .into_iter()
        .min_by_key(|(idx, set)| (set.len(), *idx))
        .map(|(_, set)| set)
}

struct Worker<'a> {
    closed: &'a [VertexSet],
    shared: &'a Shared,
    chosen: Vec<usize>,
    excluded: VertexSet,
    found: Option<Vec<usize>>,
}

impl<'a> Worker<'a> {
    fn new(closed: &'a [VertexSet], shared: &'a Shared) -> Self {
        Worker {
            closed,
            shared,
            chosen: Vec::new(),
            excluded: VertexSet::new(closed.len()),
            found: None,
        }
    }

    /// Counts a node, bounds it, and returns its ordered branches; `None`
    /// when the node is a leaf or is pruned.
    fn expand(&mut self, covered: &VertexSet) -> Option<Branches> {
        if self.shared.finished() {
            return None;
        }
        if self.shared.nodes.fetch_add(1, Ordering::Relaxed) >= self.shared.budget {
            self.shared.aborted.store(true, Ordering::SeqCst);
            return None;
        }
        let v = self.closed.len();
        let undominated = v - covered.count();
        let best = self.shared.best.load(Ordering::SeqCst);
        if undominated == 0 {
            if self.chosen.len() < best {
                self.shared.best.fetch_min(self.chosen.len(), Ordering::SeqCst);
                self.found = Some(self.chosen.clone());
            }
            return None;
        }
        if self.chosen.len() + 1 >= best {
            return None;
        }

        let mut max_gain = 0;
        let mut gains = vec![0usize; v];
        for (c, gain) in gains.iter_mut().enumerate() {
            if !self.excluded.contains(c) {
                *gain = self.closed[c].count_difference(covered);
                max_gain = max_gain.max(*gain);
            }
        }
        if max_gain == 0 || self.chosen.len() + undominated.div_ceil(max_gain) >= best {
            return None;
        }

        // most constrained undominated vertex
        let mut target = usize::MAX;
        let mut fewest = usize::MAX;
        for e in (0..v).filter(|&e| !covered.contains(e)) {
            let options = self.closed[e].count_difference(&self.excluded);
            if options < fewest {
                fewest = options;
                target = e;
                if options <= 1 {
                    break;
                }
            }
        }
        if fewest == 0 {
            return None;
        }
        let mut cands: Vec<usize> = self.closed[target].iter_difference(&self.excluded).collect();
        cands.sort_by_key(|&c| (Reverse(gains[c]), c));
        Some(
            cands
                .iter()
                .enumerate()
                .map(|(i, &c)| (c, cands[..i].to_vec()))
                .collect(),
        )
    }

    fn dfs(&mut self, covered: &VertexSet) {
        let Some(branches) = self.expand(covered) else {
            return;
        };
        let mut cov = VertexSet::new(covered.capacity());
        let mut tried = Vec::with_capacity(branches.len());
        for (cand, _) in branches {
            cov.copy_from(covered);
            cov.union_with(&self.closed[cand]);
            self.chosen.push(cand);
            self.dfs(&cov);
            self.chosen.pop();
            if self.shared.finished() {
                break;
            }
            self.excluded.insert(cand);
            tried.push(cand);
        }
        for c in tried {
            self.excluded.remove(c);
        }
    }
}
