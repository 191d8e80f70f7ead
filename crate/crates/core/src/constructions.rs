//! Explicit dominating families for `G(k,2)` and the checks that certify them.
//!
//! Two families are built here:
//!
//! * [`theorem1_construct`]: for `ceil(n/2) < k < n`, six `k`-sets that jointly
//!   contain every pair of `[n]`, plus `ceil(n/2)` pairs covering `[n]`. Any
//!   `k`-set avoiding all of those pairs would pick at most one element per
//!   pair, so it would have at most `ceil(n/2)` elements.
//! * [`theorem2_construct`]: for `k = n - 1`, the sets `[1..n-1]`, `[2..n]` and
//!   the pair `{1, n}`.
//!
//! [`verify_certificate`] checks any certificate by enumerating both levels.
//! [`verify_theorem1_structural`] and [`verify_structural`] check the same
//! property in polynomial time through the pair-covering argument, so they
//! work for every `n <= 64`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::levelgraph::{Level, LevelGraphSpec, VertexRef};
use crate::setcore::{ceil_half, enumerate_k_subsets, spanning_pairs, PairFamily, Subset};

/// Default cap on vertex checks for [`verify_certificate`].
pub const DEFAULT_VERIFY_CAP: u64 = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Theorem1,
    Theorem2,
    Greedy,
    Exact,
    External,
}

/// A family of vertices claimed to dominate `G(k,l)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominationCertificate {
    spec: LevelGraphSpec,
    members: BTreeSet<VertexRef>,
    provenance: Provenance,
    claimed_size_bound: Option<u64>,
}

impl DominationCertificate {
    pub fn new(
        spec: LevelGraphSpec,
        members: impl IntoIterator<Item = VertexRef>,
        provenance: Provenance,
        claimed_size_bound: Option<u64>,
    ) -> Result<Self> {
        let members: BTreeSet<VertexRef> = members.into_iter().collect();
        for m in &members {
            spec.validate(m)?;
        }
        let size = members.len() as u64;
        match provenance {
            Provenance::Theorem1 if size > theorem1_bound(spec.n()) => {
                return Err(Error::InvalidInput(format!(
                    "theorem1 certificate has {size} members, bound is {}",
                    theorem1_bound(spec.n())
                )));
            }
            Provenance::Theorem2 if size != 3 => {
                return Err(Error::InvalidInput(format!(
                    "theorem2 certificate must have 3 members, has {size}"
                )));
            }
            _ => {}
        }
        Ok(DominationCertificate { spec, members, provenance, claimed_size_bound })
    }

    pub fn spec(&self) -> &LevelGraphSpec {
        &self.spec
    }

    pub fn members(&self) -> &BTreeSet<VertexRef> {
        &self.members
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn claimed_size_bound(&self) -> Option<u64> {
        self.claimed_size_bound
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    fn masks(&self, level: Level) -> Vec<u64> {
        // BTreeSet order keeps these sorted by mask
        self.members.iter().filter(|m| m.level == level).map(|m| m.set.mask()).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.wire()).expect("certificate serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.wire()).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: CertificateWire =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
        let spec = LevelGraphSpec::new(wire.n, wire.k, wire.l)?;
        let mut members = Vec::with_capacity(wire.members.len());
        for m in wire.members {
            members.push(spec.vertex(m.level, &m.elements)?);
        }
        DominationCertificate::new(spec, members, wire.provenance, wire.claimed_size_bound)
    }

    fn wire(&self) -> CertificateWire {
        CertificateWire {
            n: self.spec.n(),
            k: self.spec.k(),
            l: self.spec.l(),
            provenance: self.provenance,
            members: self
                .members
                .iter()
                .map(|m| MemberWire { level: m.level, elements: m.set.to_vec() })
                .collect(),
            claimed_size_bound: self.claimed_size_bound,
        }
    }
}

impl Serialize for DominationCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.wire().serialize(s)
    }
}

#[derive(Serialize, Deserialize)]
struct CertificateWire {
    n: u32,
    k: u32,
    l: u32,
    provenance: Provenance,
    members: Vec<MemberWire>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    claimed_size_bound: Option<u64>,
}

#[derive(Serialize, Deserialize)]
struct MemberWire {
    level: Level,
    elements: Vec<u32>,
}

/// `ceil(n/2) + 6`
pub fn theorem1_bound(n: u32) -> u64 {
    ceil_half(n) as u64 + 6
}

/// The named pieces of the six-set family and the covering pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem1Parts {
    pub s: Subset,
    pub t: Subset,
    pub s1: Subset,
    pub s2: Subset,
    pub t1: Subset,
    pub t2: Subset,
    /// Shared element of `t1` and `t2`; odd `k` only.
    pub pivot: Option<u32>,
    /// `s1|t1`, `s1|t2`, `s2|t1`, `s2|t2`, each padded to `k` elements.
    pub p: [Subset; 4],
    pub b: PairFamily,
}

impl Theorem1Parts {
    /// `{S, T, P1..P4}` with repeats removed.
    pub fn six_sets(&self) -> BTreeSet<Subset> {
        [self.s, self.t].into_iter().chain(self.p).collect()
    }

    /// Checks every structural invariant except the properties of `b`.
    pub fn validate(&self, n: u32, k: u32) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidParts(msg));
        let all = [self.s, self.t, self.s1, self.s2, self.t1, self.t2];
        if all.iter().chain(&self.p).any(|x| x.n() != n) || self.b.n() != n {
            return fail(format!("parts are not over [{n}]"));
        }
        if self.s.len() != k || self.t.len() != k {
            return fail(format!("|S| = {}, |T| = {}, expected {k}", self.s.len(), self.t.len()));
        }
        if self.s.union(&self.t) != Subset::full(n)? {
            return fail("S and T do not cover [n]".into());
        }
        match self.pivot {
            None => {
                if !k.is_multiple_of(2) {
                    return fail("odd k needs a pivot".into());
                }
                let half = k / 2;
                if [self.s1, self.s2, self.t1, self.t2].iter().any(|x| x.len() != half) {
                    return fail(format!("halves must have {half} elements"));
                }
                if self.s1.union(&self.s2) != self.s || self.t1.union(&self.t2) != self.t {
                    return fail("halves do not cover S and T".into());
                }
            }
            Some(pivot) => {
                if k % 2 != 1 {
                    return fail("even k takes no pivot".into());
                }
                if !self.s.contains(pivot) || !self.t.contains(pivot) {
                    return fail(format!("pivot {pivot} is not in S and T"));
                }
                let (small, large) = ((k - 1) / 2, k.div_ceil(2));
                if self.s1.len() != small || self.s2.len() != small {
                    return fail(format!("S halves must have {small} elements"));
                }
                if self.t1.len() != large || self.t2.len() != large {
                    return fail(format!("T halves must have {large} elements"));
                }
                if self.s1.union(&self.s2) != self.s.without(pivot) {
                    return fail("S halves do not cover S minus the pivot".into());
                }
                if self.t1.union(&self.t2) != self.t {
                    return fail("T halves do not cover T".into());
                }
                if self.t1.intersection(&self.t2) != Subset::from_elements(n, &[pivot])? {
                    return fail("T halves must meet exactly in the pivot".into());
                }
            }
        }
        let cores = [
            self.s1.union(&self.t1),
            self.s1.union(&self.t2),
            self.s2.union(&self.t1),
            self.s2.union(&self.t2),
        ];
        for (i, (p, core)) in self.p.iter().zip(cores).enumerate() {
            if p.len() != k || !core.is_subset_of(p) {
                return fail(format!("P{} = {p} is not a {k}-superset of {core}", i + 1));
            }
        }
        Ok(())
    }
}

/// Adds the smallest missing elements of `[n]` until `set` has `k` elements.
fn pad_to(set: Subset, k: u32) -> Subset {
    let missing = k.saturating_sub(set.len());
    set.union(&set.complement().lowest(missing))
}

/// Builds the `ceil(n/2) + 6` family for `G(k,2)`, `ceil(n/2) < k < n`.
pub fn theorem1_construct(n: u32, k: u32) -> Result<(Theorem1Parts, DominationCertificate)> {
    if !(2..=crate::setcore::MAX_N).contains(&n) {
        return Err(Error::OutOfRange(format!("n = {n} must lie in 2..=64")));
    }
    if k <= ceil_half(n) || k >= n {
        return Err(Error::OutOfRange(format!(
            "need ceil(n/2) < k < n, got n={n} k={k}"
        )));
    }
    let spec = LevelGraphSpec::new(n, k, 2)?;
    let s = Subset::interval(n, 1, k)?;
    let t = Subset::interval(n, n - k + 1, n)?;
    let (s1, s2, t1, t2, pivot) = if k.is_multiple_of(2) {
        let s1 = s.lowest(k / 2);
        let t1 = t.lowest(k / 2);
        (s1, s.difference(&s1), t1, t.difference(&t1), None)
    } else {
        // |S & T| = 2k - n >= 1
        let pivot = s.intersection(&t).min_element().expect("S and T overlap");
        let s_rest = s.without(pivot);
        let s1 = s_rest.lowest((k - 1) / 2);
        let t_rest = t.without(pivot);
        let t_low = t_rest.lowest((k - 1) / 2);
        (
            s1,
            s_rest.difference(&s1),
            t_low.with(pivot),
            t_rest.difference(&t_low).with(pivot),
            Some(pivot),
        )
    };
    let p = [
        pad_to(s1.union(&t1), k),
        pad_to(s1.union(&t2), k),
        pad_to(s2.union(&t1), k),
        pad_to(s2.union(&t2), k),
    ];
    let parts = Theorem1Parts { s, t, s1, s2, t1, t2, pivot, p, b: spanning_pairs(n)? };
    let members = parts
        .six_sets()
        .into_iter()
        .map(VertexRef::upper)
        .chain(parts.b.pairs().iter().copied().map(VertexRef::lower));
    let cert = DominationCertificate::new(spec, members, Provenance::Theorem1, Some(theorem1_bound(n)))?;
    Ok((parts, cert))
}

/// `{[1..n-1], [2..n], {1,n}}` in `G(n-1,2)`.
pub fn theorem2_construct(n: u32) -> Result<DominationCertificate> {
    if !(4..=crate::setcore::MAX_N).contains(&n) {
        return Err(Error::OutOfRange(format!("n = {n} must lie in 4..=64")));
    }
    let spec = LevelGraphSpec::new(n, n - 1, 2)?;
    let members = [
        VertexRef::upper(Subset::interval(n, 1, n - 1)?),
        VertexRef::upper(Subset::interval(n, 2, n)?),
        VertexRef::lower(Subset::from_elements(n, &[1, n])?),
    ];
    DominationCertificate::new(spec, members, Provenance::Theorem2, Some(3))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub verified: bool,
    /// The colex-least undominated vertex, when there is one.
    pub witness: Option<VertexRef>,
}

pub fn verify_certificate(cert: &DominationCertificate) -> Result<Verification> {
    verify_certificate_with_cap(cert, DEFAULT_VERIFY_CAP)
}

/// Enumerates both levels and looks for an undominated vertex.
pub fn verify_certificate_with_cap(cert: &DominationCertificate, cap: u64) -> Result<Verification> {
    let spec = cert.spec;
    let work = spec.vertex_count().unwrap_or(u64::MAX);
    if work > cap {
        return Err(Error::TooLarge { what: "vertex checks", size: work, cap });
    }
    let upper = cert.masks(Level::Upper);
    let lower = cert.masks(Level::Lower);

    let first_upper = enumerate_k_subsets(spec.n(), spec.k())?.find(|x| {
        let m = x.mask();
        upper.binary_search(&m).is_err() && !lower.iter().any(|&y| y & !m == 0)
    });
    let first_lower = enumerate_k_subsets(spec.n(), spec.l())?.find(|y| {
        let m = y.mask();
        lower.binary_search(&m).is_err() && !upper.iter().any(|&x| m & !x == 0)
    });

    let witness = match (first_upper, first_lower) {
        (None, None) => None,
        (Some(u), None) => Some(VertexRef::upper(u)),
        (None, Some(v)) => Some(VertexRef::lower(v)),
        (Some(u), Some(v)) if u.mask() < v.mask() => Some(VertexRef::upper(u)),
        (_, Some(v)) => Some(VertexRef::lower(v)),
    };
    Ok(Verification { verified: witness.is_none(), witness })
}

/// Polynomial-time check of the six-set family and the covering pairs.
///
/// Returns `Ok(false)` when some pair escapes the six sets, or when `b` does
/// not consist of exactly `ceil(n/2)` pairs covering `[n]` with `k > ceil(n/2)`.
pub fn verify_theorem1_structural(parts: &Theorem1Parts, n: u32, k: u32) -> Result<bool> {
    parts.validate(n, k)?;
    let six: Vec<u64> = parts.six_sets().iter().map(Subset::mask).collect();
    for a in 0..n {
        for b in a + 1..n {
            let pair = 1u64 << a | 1u64 << b;
            if !six.iter().any(|&x| pair & !x == 0) {
                return Ok(false);
            }
        }
    }
    let half = ceil_half(n);
    Ok(parts.b.spans() && parts.b.len() == half as usize && k > half)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum StructuralVerdict {
    /// Every vertex is dominated.
    Verified,
    /// This lower vertex is not dominated.
    Refuted { witness: VertexRef },
    /// All pairs are dominated, but the pair members do not prove that every
    /// `k`-set is.
    Inconclusive,
}

/// Structural verification of an arbitrary `G(k,2)` certificate.
///
/// Every pair is checked directly. For the `k`-sets, pair members are scanned
/// in order, keeping those that add a new element. If the kept pairs cover
/// `[n]` and there are fewer than `k` of them, a `k`-set would have to contain
/// two elements of one kept pair, so it is dominated.
pub fn verify_structural(cert: &DominationCertificate) -> Result<StructuralVerdict> {
    let spec = cert.spec;
    if spec.l() != 2 {
        return Err(Error::InvalidInput(format!(
            "structural verification needs l = 2, got l = {}",
            spec.l()
        )));
    }
    let upper = cert.masks(Level::Upper);
    let lower = cert.masks(Level::Lower);
    for pair in enumerate_k_subsets(spec.n(), 2)? {
        let m = pair.mask();
        if lower.binary_search(&m).is_err() && !upper.iter().any(|&x| m & !x == 0) {
            return Ok(StructuralVerdict::Refuted { witness: VertexRef::lower(pair) });
        }
    }
    let mut covered = 0u64;
    let mut kept = 0u32;
    for &m in &lower {
        if m & !covered != 0 {
            covered |= m;
            kept += 1;
        }
    }
    let full = Subset::full(spec.n())?.mask();
    if covered == full && kept < spec.k() {
        Ok(StructuralVerdict::Verified)
    } else {
        Ok(StructuralVerdict::Inconclusive)
    }
}

/// For `G(n-1,2)` and a candidate dominating pair `(a, b)` with
/// `a = [n] \ {i}`, returns the pair `{i, x}` (smallest `x`) that neither
/// dominates.
pub fn theorem2_lower_bound_witness(n: u32, a: &VertexRef, b: &VertexRef) -> Result<VertexRef> {
    if !(4..=crate::setcore::MAX_N).contains(&n) {
        return Err(Error::OutOfRange(format!("n = {n} must lie in 4..=64")));
    }
    let spec = LevelGraphSpec::new(n, n - 1, 2)?;
    if a.level != Level::Upper || spec.validate(a).is_err() {
        return Err(Error::InvalidInput(format!("{} is not of the form [n] minus one element", a.set)));
    }
    if b.level != Level::Lower || spec.validate(b).is_err() {
        return Err(Error::InvalidInput(format!("{} is not a pair of [{n}]", b.set)));
    }
    let i = a.set.complement().min_element().expect("a misses one element");
    let witness = (1..=n)
        .filter(|&x| x != i)
        .map(|x| Subset::from_elements(n, &[i, x]).expect("distinct elements"))
        .find(|p| *p != b.set)
        .expect("n >= 4 leaves at least two candidate pairs");
    Ok(VertexRef::lower(witness))
}
