//! Hereditarily finite sets.
//!
//! An [`HfSet`] is stored canonically: its members are deduplicated and kept in strictly
//! ascending Ackermann order, so structural equality coincides with extensional equality.
//! The Ackermann code `A(x) = Σ_{z∈x} 2^{A(z)}` induces a well-order on HF in which
//! sets of lower rank always come first; [`ack_compare`] decides it without materializing codes.

mod gen;
mod literal;

pub use gen::{random_hf, random_hf_with, HfGenConfig};
pub use literal::parse_hf_prefix;
pub(crate) use literal::parse_term as literal_term;

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, MutexGuard, OnceLock, Weak};

use thiserror::Error;

/// Errors raised by native set operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HfError {
    #[error("resource limit exceeded: {what} needs {needed}, limit is {limit}")]
    ResourceExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    #[error("intersection of the empty family is not a set")]
    EmptyIntersection,
    #[error("malformed value: {0}")]
    MalformedValue(String),
    #[error("operation needs a nonempty sequence")]
    EmptySequence,
}

/// Default bound on the number of members a power set may have (`|V_5| = 2^16`).
pub const DEFAULT_POWERSET_LIMIT: u128 = 1 << 16;

struct Node {
    elems: Box<[HfSet]>,
    hash: u64,
    rank: u32,
}

/// A canonical hereditarily finite set. Cloning is cheap (reference counted).
///
/// Sets are hash-consed: every live set has exactly one node, so equality is pointer equality
/// and comparisons never revisit shared structure.
#[derive(Clone)]
pub struct HfSet(Arc<Node>);

const EMPTY_HASH: u64 = 0x243f_6a88_85a3_08d3;
const SHARDS: usize = 64;

type Bucket = HashMap<u64, Vec<Weak<Node>>>;

fn intern_table() -> &'static [Mutex<Bucket>] {
    static TABLE: OnceLock<Vec<Mutex<Bucket>>> = OnceLock::new();
    TABLE.get_or_init(|| (0..SHARDS).map(|_| Mutex::new(HashMap::new())).collect())
}

fn shard(hash: u64) -> MutexGuard<'static, Bucket> {
    let m = &intern_table()[(hash >> 58) as usize % SHARDS];
    m.lock().unwrap_or_else(|e| e.into_inner())
}

impl Drop for Node {
    fn drop(&mut self) {
        let mut table = shard(self.hash);
        if let Some(v) = table.get_mut(&self.hash) {
            v.retain(|w| w.strong_count() > 0);
            if v.is_empty() {
                table.remove(&self.hash);
            }
        }
    }
}

impl HfSet {
    /// Builds a set from members that are already strictly ascending.
    fn from_sorted(elems: Vec<HfSet>) -> HfSet {
        debug_assert!(elems.windows(2).all(|w| ack_compare(&w[0], &w[1]) == Ordering::Less));
        let mut hash = EMPTY_HASH ^ (elems.len() as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
        let mut rank = 0;
        for e in &elems {
            hash = (hash.rotate_left(23) ^ e.0.hash).wrapping_mul(0x1000_0000_01b3);
            rank = rank.max(e.0.rank + 1);
        }
        // Anything that may release the last reference to a node waits until the lock is
        // released, since dropping a node takes the lock of its own shard.
        let mut others = Vec::new();
        let mut table = shard(hash);
        let bucket = table.entry(hash).or_default();
        for w in bucket.iter() {
            if let Some(existing) = w.upgrade() {
                let same = existing.elems.len() == elems.len()
                    && existing.elems.iter().zip(&elems).all(|(a, b)| Arc::ptr_eq(&a.0, &b.0));
                if same {
                    drop(table);
                    return HfSet(existing);
                }
                others.push(existing);
            }
        }
        let node = Arc::new(Node {
            elems: elems.into_boxed_slice(),
            hash,
            rank,
        });
        bucket.push(Arc::downgrade(&node));
        drop(table);
        drop(others);
        HfSet(node)
    }

    pub fn empty() -> HfSet {
        HfSet::from_sorted(Vec::new())
    }

    /// The canonical set whose members are exactly the distinct inputs.
    pub fn make_set(elems: impl IntoIterator<Item = HfSet>) -> HfSet {
        let mut v: Vec<HfSet> = elems.into_iter().collect();
        v.sort_by(ack_compare);
        v.dedup();
        HfSet::from_sorted(v)
    }

    pub fn singleton(x: HfSet) -> HfSet {
        HfSet::from_sorted(vec![x])
    }

    /// `{x, y}`.
    pub fn pair(x: HfSet, y: HfSet) -> HfSet {
        HfSet::make_set([x, y])
    }

    /// Members in ascending Ackermann order.
    pub fn elements(&self) -> &[HfSet] {
        &self.0.elems
    }

    pub fn iter(&self) -> std::slice::Iter<'_, HfSet> {
        self.0.elems.iter()
    }

    pub fn len(&self) -> usize {
        self.0.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.elems.is_empty()
    }

    /// `rank(∅) = 0`, `rank(x) = 1 + max rank of members`.
    pub fn rank(&self) -> u32 {
        self.0.rank
    }

    pub fn contains(&self, x: &HfSet) -> bool {
        self.position(x).is_ok()
    }

    fn position(&self, x: &HfSet) -> Result<usize, usize> {
        self.0.elems.binary_search_by(|e| ack_compare(e, x))
    }

    /// The Ackermann-least member, if any.
    pub fn take_least(&self) -> Option<HfSet> {
        self.0.elems.first().cloned()
    }

    /// `b ∪ {a}`, written `add_element(a, b)` to match the ADD instruction's argument order.
    pub fn add_element(a: &HfSet, b: &HfSet) -> HfSet {
        match b.position(a) {
            Ok(_) => b.clone(),
            Err(i) => {
                let mut v = b.0.elems.to_vec();
                v.insert(i, a.clone());
                HfSet::from_sorted(v)
            }
        }
    }

    /// `b ∖ {a}`.
    pub fn diff_singleton(a: &HfSet, b: &HfSet) -> HfSet {
        match b.position(a) {
            Err(_) => b.clone(),
            Ok(i) => {
                let mut v = b.0.elems.to_vec();
                v.remove(i);
                HfSet::from_sorted(v)
            }
        }
    }

    pub fn union2(a: &HfSet, b: &HfSet) -> HfSet {
        let (x, y) = (a.elements(), b.elements());
        let mut out = Vec::with_capacity(x.len() + y.len());
        let (mut i, mut j) = (0, 0);
        while i < x.len() && j < y.len() {
            match ack_compare(&x[i], &y[j]) {
                Ordering::Less => {
                    out.push(x[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(y[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push(x[i].clone());
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&x[i..]);
        out.extend_from_slice(&y[j..]);
        HfSet::from_sorted(out)
    }

    pub fn intersect2(a: &HfSet, b: &HfSet) -> HfSet {
        let (x, y) = (a.elements(), b.elements());
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < x.len() && j < y.len() {
            match ack_compare(&x[i], &y[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    out.push(x[i].clone());
                    i += 1;
                    j += 1;
                }
            }
        }
        HfSet::from_sorted(out)
    }

    /// `a ∖ b`.
    pub fn difference(a: &HfSet, b: &HfSet) -> HfSet {
        HfSet::from_sorted(a.iter().filter(|e| !b.contains(e)).cloned().collect())
    }

    pub fn is_subset(&self, other: &HfSet) -> bool {
        self.iter().all(|e| other.contains(e))
    }

    /// `⋃a`.
    pub fn big_union(&self) -> HfSet {
        HfSet::make_set(self.iter().flat_map(|e| e.iter().cloned()))
    }

    /// `⋂a`; the empty family has no intersection.
    pub fn big_intersect(&self) -> Result<HfSet, HfError> {
        let (first, rest) = self.0.elems.split_first().ok_or(HfError::EmptyIntersection)?;
        Ok(rest.iter().fold(first.clone(), |acc, e| HfSet::intersect2(&acc, e)))
    }

    /// The power set, refused when it would have more than `size_limit` members.
    pub fn powerset(&self, size_limit: u128) -> Result<HfSet, HfError> {
        let n = self.len();
        let needed = if n >= 127 { u128::MAX } else { 1u128 << n };
        if needed > size_limit {
            return Err(HfError::ResourceExceeded {
                what: "power set",
                needed,
                limit: size_limit,
            });
        }
        // Bit i of the mask selects the i-th member; with members ascending, ascending masks
        // are ascending Ackermann codes of the subsets, so the family comes out sorted.
        let elems = self.elements();
        let subsets = (0..needed as u64)
            .map(|mask| {
                HfSet::from_sorted(
                    (0..n)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| elems[i].clone())
                        .collect(),
                )
            })
            .collect();
        Ok(HfSet::from_sorted(subsets))
    }

    /// Von Neumann numeral `n = {0, …, n−1}`.
    pub fn numeral(n: usize) -> HfSet {
        let mut elems = Vec::with_capacity(n);
        let mut current = HfSet::empty();
        for _ in 0..n {
            elems.push(current);
            current = HfSet::from_sorted(elems.clone());
        }
        current
    }

    /// Inverse of [`HfSet::numeral`].
    pub fn to_natural(&self) -> Option<usize> {
        let elems = self.elements();
        for (i, e) in elems.iter().enumerate() {
            if e.elements() != &elems[..i] {
                return None;
            }
        }
        Some(elems.len())
    }

    pub fn is_transitive(&self) -> bool {
        self.iter().all(|y| y.iter().all(|z| self.contains(z)))
    }

    /// Transitive set of transitive sets (the von Neumann ordinals, i.e. numerals, in HF).
    pub fn is_ordinal(&self) -> bool {
        self.is_transitive() && self.iter().all(HfSet::is_transitive)
    }

    /// Kuratowski pair `⟨x,y⟩ = {{x},{x,y}}`.
    pub fn ordered_pair(x: &HfSet, y: &HfSet) -> HfSet {
        HfSet::pair(HfSet::singleton(x.clone()), HfSet::pair(x.clone(), y.clone()))
    }

    /// Decomposes a Kuratowski pair.
    pub fn as_ordered_pair(&self) -> Option<(HfSet, HfSet)> {
        match self.elements() {
            [u] if u.len() == 1 => {
                let x = u.elements()[0].clone();
                Some((x.clone(), x))
            }
            [u, v] => {
                let (single, double) = if u.len() == 1 { (u, v) } else { (v, u) };
                if single.len() != 1 || double.len() != 2 {
                    return None;
                }
                let x = &single.elements()[0];
                let y = match double.elements() {
                    [a, b] if a == x => b,
                    [a, b] if b == x => a,
                    _ => return None,
                };
                Some((x.clone(), y.clone()))
            }
            _ => None,
        }
    }

    pub fn is_ordered_pair(&self) -> bool {
        self.as_ordered_pair().is_some()
    }

    pub fn proj1(&self) -> Result<HfSet, HfError> {
        self.as_ordered_pair()
            .map(|(x, _)| x)
            .ok_or_else(|| HfError::MalformedValue(format!("{self} is not an ordered pair")))
    }

    pub fn proj2(&self) -> Result<HfSet, HfError> {
        self.as_ordered_pair()
            .map(|(_, y)| y)
            .ok_or_else(|| HfError::MalformedValue(format!("{self} is not an ordered pair")))
    }

    fn graph(&self) -> Option<Vec<(HfSet, HfSet)>> {
        let pairs: Option<Vec<_>> = self.iter().map(HfSet::as_ordered_pair).collect();
        let pairs = pairs?;
        let mut firsts: Vec<&HfSet> = pairs.iter().map(|(x, _)| x).collect();
        firsts.sort_by(|a, b| ack_compare(a, b));
        if firsts.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(pairs)
    }

    /// A set of ordered pairs whose first coordinates are pairwise distinct.
    pub fn is_function(&self) -> bool {
        self.graph().is_some()
    }

    pub fn domain(&self) -> Result<HfSet, HfError> {
        self.graph()
            .map(|g| HfSet::make_set(g.into_iter().map(|(x, _)| x)))
            .ok_or_else(|| HfError::MalformedValue(format!("{self} is not a function")))
    }

    /// `f(x)` for a function `f` with `x ∈ dom(f)`.
    pub fn apply(&self, x: &HfSet) -> Result<HfSet, HfError> {
        let graph = self
            .graph()
            .ok_or_else(|| HfError::MalformedValue(format!("{self} is not a function")))?;
        graph
            .into_iter()
            .find(|(a, _)| a == x)
            .map(|(_, y)| y)
            .ok_or_else(|| HfError::MalformedValue(format!("{x} is not in the domain of {self}")))
    }

    /// A function whose domain is an ordinal.
    pub fn is_ord_sequence(&self) -> bool {
        self.domain().is_ok_and(|d| d.is_ordinal())
    }

    /// `{⟨0,x_0⟩, …, ⟨n−1,x_{n−1}⟩}`.
    pub fn sequence(items: &[HfSet]) -> HfSet {
        HfSet::make_set(
            items
                .iter()
                .enumerate()
                .map(|(i, x)| HfSet::ordered_pair(&HfSet::numeral(i), x)),
        )
    }

    /// Reads back a function whose domain is a numeral.
    pub fn as_sequence(&self) -> Option<Vec<HfSet>> {
        let graph = self.graph()?;
        let mut items: Vec<Option<HfSet>> = vec![None; graph.len()];
        for (i, x) in graph {
            let i = i.to_natural()?;
            *items.get_mut(i)? = Some(x);
        }
        items.into_iter().collect()
    }
}

/// The Ackermann order: `a < b` iff the greatest member of the symmetric difference lies in `b`.
pub fn ack_compare(a: &HfSet, b: &HfSet) -> Ordering {
    if Arc::ptr_eq(&a.0, &b.0) {
        return Ordering::Equal;
    }
    // Rank-monotone, so differing ranks settle it immediately.
    match a.rank().cmp(&b.rank()) {
        Ordering::Equal => {}
        other => return other,
    }
    let (x, y) = (a.elements(), b.elements());
    let (mut i, mut j) = (x.len(), y.len());
    while i > 0 && j > 0 {
        match ack_compare(&x[i - 1], &y[j - 1]) {
            Ordering::Equal => {
                i -= 1;
                j -= 1;
            }
            other => return other,
        }
    }
    (i > 0).cmp(&(j > 0))
}

impl PartialEq for HfSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Eq for HfSet {}

impl Hash for HfSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl PartialOrd for HfSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HfSet {
    fn cmp(&self, other: &Self) -> Ordering {
        ack_compare(self, other)
    }
}

impl Default for HfSet {
    fn default() -> Self {
        HfSet::empty()
    }
}

impl FromIterator<HfSet> for HfSet {
    fn from_iter<I: IntoIterator<Item = HfSet>>(iter: I) -> Self {
        HfSet::make_set(iter)
    }
}

/// `V_n`, built by iterated power sets under the given size budget.
pub fn v_stage(n: usize, size_limit: u128) -> Result<HfSet, HfError> {
    (0..n).try_fold(HfSet::empty(), |v, _| v.powerset(size_limit))
}

/// The `n`-th set in Ackermann order: the set whose code is `n`.
pub fn f_tau(n: u64) -> HfSet {
    HfSet::from_sorted(
        (0..64)
            .filter(|i| n >> i & 1 == 1)
            .map(|i| f_tau(i as u64))
            .collect(),
    )
}

/// The position of `a` in Ackermann order, i.e. its Ackermann code.
pub fn f_tau_inv(a: &HfSet) -> Result<u64, HfError> {
    a.iter().try_fold(0u64, |acc, z| {
        let k = f_tau_inv(z)?;
        if k >= 64 {
            return Err(HfError::ResourceExceeded {
                what: "Ackermann code",
                needed: k as u128 + 1,
                limit: 64,
            });
        }
        Ok(acc | 1u64 << k)
    })
}

/// Literal evaluation of `⋃_{β<α} ⋂_{γ∈[β+1,α)} x_γ` for `α = xs.len()`.
///
/// `β` ranges over `0..=α−2` so that every intersected family is nonempty; a one-element
/// sequence evaluates to its element.
pub fn liminf_formula(xs: &[HfSet]) -> Result<HfSet, HfError> {
    match xs {
        [] => Err(HfError::EmptySequence),
        [x] => Ok(x.clone()),
        _ => Ok(liminf_union_of_tails(xs, xs.len() - 1)),
    }
}

/// The same union of tail intersections, with the outer union restricted to the first
/// `betas` indices. `liminf_stabilized(unrolled, period)` keeps only the tails that
/// still span a whole period of an eventually periodic stream.
pub fn liminf_stabilized(xs: &[HfSet], period: usize) -> Result<HfSet, HfError> {
    if period == 0 || xs.len() <= period {
        return Err(HfError::EmptySequence);
    }
    Ok(liminf_union_of_tails(xs, xs.len() - period))
}

fn liminf_union_of_tails(xs: &[HfSet], betas: usize) -> HfSet {
    let mut acc = HfSet::empty();
    // Walk β downwards, growing the tail intersection ⋂_{γ∈[β+1,α)} incrementally.
    let mut tail = xs[xs.len() - 1].clone();
    for beta in (0..xs.len() - 1).rev() {
        if beta < xs.len() - 2 {
            tail = HfSet::intersect2(&tail, &xs[beta + 1]);
        }
        if beta < betas {
            acc = HfSet::union2(&acc, &tail);
        }
    }
    acc
}

/// Liminf of an eventually periodic stream whose cycle is `cycle`: the members common
/// to every value of the cycle.
pub fn liminf_cycle(cycle: &[HfSet]) -> Result<HfSet, HfError> {
    let (first, rest) = cycle.split_first().ok_or(HfError::EmptySequence)?;
    Ok(rest.iter().fold(first.clone(), |acc, x| HfSet::intersect2(&acc, x)))
}
