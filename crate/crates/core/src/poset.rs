//! Finite posets and monotone maps.
//!
//! A finite spectral space is determined by its underlying order (opens are
//! the down-sets), so [`FinitePoset`] is the carrier of every spatial object
//! in this crate. Elements carry stable string labels; internally they are
//! dense indices `0..len` and every order relation is a row of bits.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Default largest `n` accepted by [`enumerate_posets`].
pub const DEFAULT_ENUMERATION_BOUND: usize = 5;

pub(crate) fn empty_set(n: usize) -> FixedBitSet {
    FixedBitSet::with_capacity(n)
}

pub(crate) fn full_set(n: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert_range(..);
    s
}

pub(crate) fn set_of(n: usize, items: impl IntoIterator<Item = usize>) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    for i in items {
        s.insert(i);
    }
    s
}

/// Label used for the `i`-th element of generated posets: `a`, `b`, ..., `z`, `x26`, ...
pub fn default_label(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("x{i}")
    }
}

#[derive(PartialEq, Eq)]
struct PosetData {
    labels: Vec<String>,
    /// `up[i]` = `{ j : i <= j }`.
    up: Vec<FixedBitSet>,
    /// `down[j]` = `{ i : i <= j }`.
    down: Vec<FixedBitSet>,
}

/// A finite partially ordered set with labelled elements.
///
/// Cloning is cheap: the order data is shared and never mutated.
#[derive(Clone)]
pub struct FinitePoset {
    data: Arc<PosetData>,
    index: Arc<HashMap<String, usize>>,
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data == other.data
    }
}

impl Eq for FinitePoset {}

impl std::hash::Hash for FinitePoset {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.labels().hash(state);
        for i in 0..self.len() {
            self.up_set(i).hash(state);
        }
    }
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<_> = self
            .hasse()
            .into_iter()
            .map(|(x, y)| format!("{}<{}", self.label(x), self.label(y)))
            .collect();
        f.debug_struct("FinitePoset")
            .field("elements", &self.data.labels)
            .field("covers", &covers)
            .finish()
    }
}

impl FinitePoset {
    /// Builds the reflexive-transitive closure of `pairs` over `elements`.
    ///
    /// Each pair `(a, b)` asserts `a <= b`. A cycle through distinct elements
    /// is reported with one witnessing cycle taken from the generating pairs.
    pub fn new<S: AsRef<str>>(elements: &[S], pairs: &[(S, S)]) -> Result<Self> {
        let labels: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let index = index_labels(&labels)?;
        let n = labels.len();
        let mut edges = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            let a = lookup(&index, a.as_ref())?;
            let b = lookup(&index, b.as_ref())?;
            edges.push((a, b));
        }
        let mut up: Vec<FixedBitSet> = (0..n).map(|i| set_of(n, [i])).collect();
        for &(a, b) in &edges {
            up[a].insert(b);
        }
        // Warshall saturation on rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        for i in 0..n {
            for j in up[i].ones() {
                if j != i && up[j].contains(i) {
                    let cycle = witness_cycle(n, &edges, i, j)
                        .into_iter()
                        .map(|k| labels[k].clone())
                        .collect();
                    return Err(Error::AntisymmetryViolation { cycle });
                }
            }
        }
        Ok(Self::assemble(labels, index, up))
    }

    /// Builds a poset from a complete order matrix given as up-set rows,
    /// checking all three order axioms.
    pub fn from_up_rows(labels: Vec<String>, up: Vec<FixedBitSet>) -> Result<Self> {
        index_labels(&labels)?;
        let n = labels.len();
        if up.len() != n || up.iter().any(|r| r.len() != n) {
            return Err(Error::ObjectMismatch(format!(
                "order matrix is not {n}x{n}"
            )));
        }
        for i in 0..n {
            if !up[i].contains(i) {
                return Err(Error::InternalVerificationFailure(format!(
                    "order is not reflexive at {}",
                    labels[i]
                )));
            }
            for j in up[i].ones() {
                if j != i && up[j].contains(i) {
                    return Err(Error::AntisymmetryViolation {
                        cycle: vec![labels[i].clone(), labels[j].clone()],
                    });
                }
                if !up[j].is_subset(&up[i]) {
                    return Err(Error::InternalVerificationFailure(format!(
                        "order is not transitive through {} <= {}",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        Ok(Self::from_up_rows_unchecked(labels, up))
    }

    pub(crate) fn from_up_rows_unchecked(labels: Vec<String>, up: Vec<FixedBitSet>) -> Self {
        let index = index_labels(&labels).expect("labels are distinct");
        Self::assemble(labels, index, up)
    }

    fn assemble(labels: Vec<String>, index: HashMap<String, usize>, up: Vec<FixedBitSet>) -> Self {
        let n = labels.len();
        let mut down: Vec<FixedBitSet> = (0..n).map(|_| empty_set(n)).collect();
        for (i, row) in up.iter().enumerate() {
            for j in row.ones() {
                down[j].insert(i);
            }
        }
        FinitePoset {
            data: Arc::new(PosetData { labels, up, down }),
            index: Arc::new(index),
        }
    }

    /// The discrete order on the given labels.
    pub fn discrete<S: AsRef<str>>(elements: &[S]) -> Result<Self> {
        Self::new(elements, &[])
    }

    /// The chain `elements[0] < elements[1] < ...`.
    pub fn chain<S: AsRef<str>>(elements: &[S]) -> Result<Self> {
        let labels: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let pairs: Vec<(String, String)> = labels
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect();
        Self::new(&labels, &pairs)
    }

    /// Antichain on `n` default labels.
    pub fn antichain(n: usize) -> Self {
        let labels: Vec<String> = (0..n).map(default_label).collect();
        Self::discrete(&labels).expect("default labels are distinct")
    }

    /// Chain on `n` default labels, `a < b < ...`.
    pub fn chain_of(n: usize) -> Self {
        let labels: Vec<String> = (0..n).map(default_label).collect();
        Self::chain(&labels).expect("default labels are distinct")
    }

    /// Cartesian product with the componentwise order; labels are `(x,y)`.
    pub fn product(&self, other: &FinitePoset) -> FinitePoset {
        let (n, m) = (self.len(), other.len());
        let mut labels = Vec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                labels.push(format!("({},{})", self.label(i), other.label(j)));
            }
        }
        let up = (0..n * m)
            .map(|a| {
                let (i, j) = (a / m, a % m);
                set_of(
                    n * m,
                    (0..n * m).filter(|&b| self.leq(i, b / m) && other.leq(j, b % m)),
                )
            })
            .collect();
        FinitePoset::from_up_rows_unchecked(labels, up)
    }

    pub fn len(&self) -> usize {
        self.data.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.data.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.data.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Like [`index_of`](Self::index_of) but fails with `UnknownLabel`.
    pub fn require(&self, label: &str) -> Result<usize> {
        lookup(&self.index, label)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.data.up[i].contains(j)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    /// `{ j : i <= j }`.
    pub fn up_set(&self, i: usize) -> &FixedBitSet {
        &self.data.up[i]
    }

    /// `{ j : j <= i }`.
    pub fn down_set(&self, i: usize) -> &FixedBitSet {
        &self.data.down[i]
    }

    pub fn is_discrete(&self) -> bool {
        self.data.up.iter().all(|r| r.count_ones(..) == 1)
    }

    /// Same elements with the order reversed.
    pub fn order_dual(&self) -> FinitePoset {
        FinitePoset {
            data: Arc::new(PosetData {
                labels: self.data.labels.clone(),
                up: self.data.down.clone(),
                down: self.data.up.clone(),
            }),
            index: Arc::clone(&self.index),
        }
    }

    /// Same order on the discrete carrier, i.e. the order forgotten.
    pub fn discretized(&self) -> FinitePoset {
        let n = self.len();
        let up = (0..n).map(|i| set_of(n, [i])).collect();
        FinitePoset::from_up_rows_unchecked(self.data.labels.clone(), up)
    }

    pub fn empty_subset(&self) -> FixedBitSet {
        empty_set(self.len())
    }

    pub fn full_subset(&self) -> FixedBitSet {
        full_set(self.len())
    }

    pub fn subset(&self, items: impl IntoIterator<Item = usize>) -> FixedBitSet {
        set_of(self.len(), items)
    }

    /// Subset given by labels.
    pub fn subset_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<FixedBitSet> {
        let mut s = self.empty_subset();
        for l in labels {
            s.insert(self.require(l.as_ref())?);
        }
        Ok(s)
    }

    pub fn labels_of(&self, set: &FixedBitSet) -> Vec<String> {
        set.ones().map(|i| self.label(i).to_string()).collect()
    }

    /// `{a,b}`-style label of a subset, listing elements in index order.
    pub fn set_label(&self, set: &FixedBitSet) -> String {
        format!("{{{}}}", self.labels_of(set).join(","))
    }

    /// Smallest down-set containing `set`.
    pub fn down_closure(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut out = self.empty_subset();
        for i in set.ones() {
            out.union_with(&self.data.down[i]);
        }
        out
    }

    /// Smallest up-set containing `set`.
    pub fn up_closure(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut out = self.empty_subset();
        for i in set.ones() {
            out.union_with(&self.data.up[i]);
        }
        out
    }

    pub fn down_closure_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<String>> {
        Ok(self.labels_of(&self.down_closure(&self.subset_of_labels(labels)?)))
    }

    pub fn up_closure_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<String>> {
        Ok(self.labels_of(&self.up_closure(&self.subset_of_labels(labels)?)))
    }

    pub fn is_down_set(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|i| self.data.down[i].is_subset(set))
    }

    pub fn is_up_set(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|i| self.data.up[i].is_subset(set))
    }

    /// Cover pairs `(x, y)`: `x < y` with nothing strictly between.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut covers = Vec::new();
        for x in 0..n {
            for y in self.data.up[x].ones() {
                if y == x {
                    continue;
                }
                let between = self.data.up[x]
                    .ones()
                    .any(|z| z != x && z != y && self.leq(z, y));
                if !between {
                    covers.push((x, y));
                }
            }
        }
        covers
    }

    pub fn hasse_labels(&self) -> Vec<(String, String)> {
        self.hasse()
            .into_iter()
            .map(|(x, y)| (self.label(x).to_string(), self.label(y).to_string()))
            .collect()
    }

    /// An ordering of the indices in which every element follows all elements below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.data.down[i].count_ones(..), i));
        order
    }

    /// All down-sets, or `None` once more than `limit` have been found.
    ///
    /// Sets are sorted by size, then by their index lists, so the empty set comes first
    /// and the full set last.
    pub fn downsets_bounded(&self, limit: usize) -> Option<Vec<FixedBitSet>> {
        let order = self.linear_extension();
        let mut out = Vec::new();
        let mut current = self.empty_subset();
        if !self.collect_downsets(&order, 0, &mut current, &mut out, limit) {
            return None;
        }
        out.sort_by_cached_key(|s| (s.count_ones(..), s.ones().collect::<Vec<_>>()));
        Some(out)
    }

    fn collect_downsets(
        &self,
        order: &[usize],
        pos: usize,
        current: &mut FixedBitSet,
        out: &mut Vec<FixedBitSet>,
        limit: usize,
    ) -> bool {
        if pos == order.len() {
            if out.len() >= limit {
                return false;
            }
            out.push(current.clone());
            return true;
        }
        let x = order[pos];
        if !self.collect_downsets(order, pos + 1, current, out, limit) {
            return false;
        }
        // x may join only if everything strictly below it already has.
        let below_in = self.data.down[x].ones().all(|z| z == x || current.contains(z));
        if below_in {
            current.insert(x);
            let ok = self.collect_downsets(order, pos + 1, current, out, limit);
            current.set(x, false);
            if !ok {
                return false;
            }
        }
        true
    }

    /// All up-sets, bounded like [`downsets_bounded`](Self::downsets_bounded).
    pub fn upsets_bounded(&self, limit: usize) -> Option<Vec<FixedBitSet>> {
        self.order_dual().downsets_bounded(limit)
    }

    pub fn downsets(&self) -> Vec<FixedBitSet> {
        self.downsets_bounded(usize::MAX).expect("unbounded")
    }

    pub fn upsets(&self) -> Vec<FixedBitSet> {
        self.upsets_bounded(usize::MAX).expect("unbounded")
    }

    /// Same order with new labels (index-for-index).
    pub fn relabeled(&self, labels: Vec<String>) -> Result<FinitePoset> {
        if labels.len() != self.len() {
            return Err(Error::AssignmentLength { expected: self.len(), found: labels.len() });
        }
        let index = index_labels(&labels)?;
        Ok(FinitePoset {
            data: Arc::new(PosetData {
                labels,
                up: self.data.up.clone(),
                down: self.data.down.clone(),
            }),
            index: Arc::new(index),
        })
    }

    /// Induced subposet on `members`, in the given order.
    pub fn subposet(&self, members: &[usize]) -> FinitePoset {
        let k = members.len();
        let labels = members.iter().map(|&i| self.label(i).to_string()).collect();
        let up = members
            .iter()
            .map(|&i| set_of(k, (0..k).filter(|&b| self.leq(i, members[b]))))
            .collect();
        FinitePoset::from_up_rows_unchecked(labels, up)
    }

    /// Re-indexed copy whose elements are sorted by label, with the permutation
    /// `old index -> new index`.
    pub fn canonical(&self) -> (FinitePoset, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| self.label(a).cmp(self.label(b)));
        let mut perm = vec![0; self.len()];
        for (new, &old) in order.iter().enumerate() {
            perm[old] = new;
        }
        (self.subposet(&order), perm)
    }

    pub fn is_isomorphic(&self, other: &FinitePoset) -> bool {
        find_isomorphism(self, other).is_some()
    }
}

fn index_labels(labels: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

fn lookup(index: &HashMap<String, usize>, label: &str) -> Result<usize> {
    index
        .get(label)
        .copied()
        .ok_or_else(|| Error::UnknownLabel(label.to_string()))
}

/// Cycle `i -> ... -> j -> ... -> i` along generating edges, listed without repeating `i`.
fn witness_cycle(n: usize, edges: &[(usize, usize)], i: usize, j: usize) -> Vec<usize> {
    let path = |from: usize, to: usize| -> Vec<usize> {
        let mut prev = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(u) = queue.pop_front() {
            if u == to {
                break;
            }
            for &(a, b) in edges {
                if a == u && !seen[b] {
                    seen[b] = true;
                    prev[b] = u;
                    queue.push_back(b);
                }
            }
        }
        let mut out = vec![to];
        let mut cur = to;
        while cur != from {
            cur = prev[cur];
            out.push(cur);
        }
        out.reverse();
        out
    };
    let mut cycle = path(i, j);
    let back = path(j, i);
    cycle.extend_from_slice(&back[1..back.len() - 1]);
    cycle
}

/// An order-preserving map between finite posets.
#[derive(Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    source: FinitePoset,
    target: FinitePoset,
    assignment: Vec<usize>,
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<_> = self
            .assignment
            .iter()
            .enumerate()
            .map(|(x, &y)| format!("{}->{}", self.source.label(x), self.target.label(y)))
            .collect();
        f.debug_tuple("MonotoneMap").field(&pairs).finish()
    }
}

impl MonotoneMap {
    pub fn new(source: FinitePoset, target: FinitePoset, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != source.len() {
            return Err(Error::AssignmentLength { expected: source.len(), found: assignment.len() });
        }
        if let Some(x) = assignment.iter().position(|&y| y >= target.len()) {
            return Err(Error::AssignmentRange { element: source.label(x).to_string() });
        }
        for x in 0..source.len() {
            for x2 in source.up_set(x).ones() {
                if !target.leq(assignment[x], assignment[x2]) {
                    return Err(Error::NotMonotone {
                        x: source.label(x).to_string(),
                        x2: source.label(x2).to_string(),
                    });
                }
            }
        }
        Ok(MonotoneMap { source, target, assignment })
    }

    pub(crate) fn new_unchecked(source: FinitePoset, target: FinitePoset, assignment: Vec<usize>) -> Self {
        debug_assert_eq!(assignment.len(), source.len());
        MonotoneMap { source, target, assignment }
    }

    /// Map given by `(source label, target label)` pairs; must be total.
    pub fn from_labels<S: AsRef<str>>(
        source: FinitePoset,
        target: FinitePoset,
        pairs: &[(S, S)],
    ) -> Result<Self> {
        let mut assignment = vec![usize::MAX; source.len()];
        for (a, b) in pairs {
            let x = source.require(a.as_ref())?;
            assignment[x] = target.require(b.as_ref())?;
        }
        if let Some(x) = assignment.iter().position(|&y| y == usize::MAX) {
            return Err(Error::Parse {
                location: "assignment".into(),
                message: format!("no image given for {}", source.label(x)),
            });
        }
        Self::new(source, target, assignment)
    }

    pub fn identity(p: &FinitePoset) -> Self {
        MonotoneMap::new_unchecked(p.clone(), p.clone(), (0..p.len()).collect())
    }

    pub fn constant(source: &FinitePoset, target: &FinitePoset, value: usize) -> Self {
        assert!(value < target.len());
        MonotoneMap::new_unchecked(source.clone(), target.clone(), vec![value; source.len()])
    }

    pub fn source(&self) -> &FinitePoset {
        &self.source
    }

    pub fn target(&self) -> &FinitePoset {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    /// Diagrammatic composite: `self` first, then `next`.
    pub fn then(&self, next: &MonotoneMap) -> Result<MonotoneMap> {
        if self.target != next.source {
            return Err(Error::ObjectMismatch(
                "target of the first map is not the source of the second".into(),
            ));
        }
        let assignment = self.assignment.iter().map(|&y| next.assignment[y]).collect();
        Ok(MonotoneMap::new_unchecked(self.source.clone(), next.target.clone(), assignment))
    }

    /// Image of a subset of the source.
    pub fn image(&self, set: &FixedBitSet) -> FixedBitSet {
        set_of(self.target.len(), set.ones().map(|x| self.assignment[x]))
    }

    /// Preimage of a subset of the target.
    pub fn preimage(&self, set: &FixedBitSet) -> FixedBitSet {
        set_of(
            self.source.len(),
            (0..self.source.len()).filter(|&x| set.contains(self.assignment[x])),
        )
    }

    /// Every monotone map `source -> target`, by backtracking along a linear extension.
    pub fn all(source: &FinitePoset, target: &FinitePoset) -> Vec<MonotoneMap> {
        let order = source.linear_extension();
        let mut out = Vec::new();
        let mut current = vec![usize::MAX; source.len()];
        fn go(
            pos: usize,
            order: &[usize],
            source: &FinitePoset,
            target: &FinitePoset,
            current: &mut Vec<usize>,
            out: &mut Vec<MonotoneMap>,
        ) {
            if pos == order.len() {
                out.push(MonotoneMap::new_unchecked(source.clone(), target.clone(), current.clone()));
                return;
            }
            let x = order[pos];
            for y in 0..target.len() {
                let ok = source
                    .down_set(x)
                    .ones()
                    .all(|p| p == x || target.leq(current[p], y));
                if ok {
                    current[x] = y;
                    go(pos + 1, order, source, target, current, out);
                }
            }
            current[x] = usize::MAX;
        }
        go(0, &order, source, target, &mut current, &mut out);
        out
    }
}

/// The order on `{0..k}` given by up-set masks; used while enumerating.
type MaskRows = Vec<u64>;

/// Lazily yields every poset on `n` labelled elements exactly once.
///
/// Each poset on `k + 1` elements restricts to a unique poset on the first `k`,
/// and the new element is placed by choosing its strict down-set `D` (a down-set)
/// and strict up-set `U` (an up-set) with `D` entirely below `U`.
pub struct PosetEnumeration {
    n: usize,
    stack: Vec<MaskRows>,
}

/// Every labelled poset on `n` elements, `n <= DEFAULT_ENUMERATION_BOUND`.
pub fn enumerate_posets(n: usize) -> Result<PosetEnumeration> {
    enumerate_posets_bounded(n, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_posets_bounded(n: usize, bound: usize) -> Result<PosetEnumeration> {
    if n > bound || n > 63 {
        return Err(Error::BoundExceeded { requested: n, bound: bound.min(63) });
    }
    Ok(PosetEnumeration { n, stack: vec![Vec::new()] })
}

fn mask_subsets_closed(rows: &MaskRows, upward: bool) -> Vec<u64> {
    let k = rows.len();
    let mut out = Vec::new();
    for m in 0..(1u64 << k) {
        let closed = (0..k).filter(|&i| m >> i & 1 == 1).all(|i| {
            if upward {
                rows[i] & !m == 0
            } else {
                (0..k).all(|j| rows[j] >> i & 1 == 0 || m >> j & 1 == 1)
            }
        });
        if closed {
            out.push(m);
        }
    }
    out
}

impl Iterator for PosetEnumeration {
    type Item = FinitePoset;

    fn next(&mut self) -> Option<FinitePoset> {
        while let Some(rows) = self.stack.pop() {
            let k = rows.len();
            if k == self.n {
                let labels = (0..k).map(default_label).collect();
                let up = rows
                    .iter()
                    .map(|&r| set_of(k, (0..k).filter(|&j| r >> j & 1 == 1)))
                    .collect();
                return Some(FinitePoset::from_up_rows_unchecked(labels, up));
            }
            let downs = mask_subsets_closed(&rows, false);
            let ups = mask_subsets_closed(&rows, true);
            let mut children = Vec::new();
            for &d in &downs {
                for &u in &ups {
                    if d & u != 0 {
                        continue;
                    }
                    let below_all = (0..k).filter(|&i| d >> i & 1 == 1).all(|i| rows[i] & u == u);
                    if !below_all {
                        continue;
                    }
                    let mut child = rows.clone();
                    for (i, row) in child.iter_mut().enumerate() {
                        if d >> i & 1 == 1 {
                            *row |= 1 << k;
                        }
                    }
                    child.push(u | 1 << k);
                    children.push(child);
                }
            }
            self.stack.extend(children.into_iter().rev());
        }
        None
    }
}

/// One representative per isomorphism class among the labelled posets on `n` elements.
pub fn poset_iso_classes(n: usize) -> Result<Vec<FinitePoset>> {
    let mut reps: Vec<FinitePoset> = Vec::new();
    for p in enumerate_posets_bounded(n, n.max(DEFAULT_ENUMERATION_BOUND))? {
        if !reps.iter().any(|r| r.is_isomorphic(&p)) {
            reps.push(p);
        }
    }
    Ok(reps)
}

/// An order isomorphism `p -> q` as an index map, found by exhaustive bijection search.
pub fn find_isomorphism(p: &FinitePoset, q: &FinitePoset) -> Option<Vec<usize>> {
    let n = p.len();
    if n != q.len() {
        return None;
    }
    let signature = |s: &FinitePoset, i: usize| (s.up_set(i).count_ones(..), s.down_set(i).count_ones(..));
    let mut sp: Vec<_> = (0..n).map(|i| signature(p, i)).collect();
    let mut sq: Vec<_> = (0..n).map(|i| signature(q, i)).collect();
    let (pp, qq) = (sp.clone(), sq.clone());
    sp.sort_unstable();
    sq.sort_unstable();
    if sp != sq {
        return None;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = HashSet::new();
    fn go(
        i: usize,
        p: &FinitePoset,
        q: &FinitePoset,
        sig_p: &[(usize, usize)],
        sig_q: &[(usize, usize)],
        map: &mut Vec<usize>,
        used: &mut HashSet<usize>,
    ) -> bool {
        if i == p.len() {
            return true;
        }
        for j in 0..q.len() {
            if used.contains(&j) || sig_p[i] != sig_q[j] {
                continue;
            }
            let consistent = (0..i).all(|k| {
                p.leq(k, i) == q.leq(map[k], j) && p.leq(i, k) == q.leq(j, map[k])
            });
            if consistent {
                map[i] = j;
                used.insert(j);
                if go(i + 1, p, q, sig_p, sig_q, map, used) {
                    return true;
                }
                used.remove(&j);
            }
        }
        false
    }
    go(0, p, q, &pp, &qq, &mut map, &mut used).then_some(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force over every strict relation on `n` points, keeping the orders.
    fn brute_force_orders(n: usize) -> Vec<Vec<Vec<bool>>> {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
        let mut out = Vec::new();
        for m in 0u64..(1 << pairs.len()) {
            let mut leq = vec![vec![false; n]; n];
            for (i, row) in leq.iter_mut().enumerate() {
                row[i] = true;
            }
            for (b, &(i, j)) in pairs.iter().enumerate() {
                if m >> b & 1 == 1 {
                    leq[i][j] = true;
                }
            }
            let antisym = (0..n).all(|i| (0..n).all(|j| i == j || !(leq[i][j] && leq[j][i])));
            let trans = (0..n)
                .all(|i| (0..n).all(|j| (0..n).all(|k| !(leq[i][j] && leq[j][k]) || leq[i][k])));
            if antisym && trans {
                out.push(leq);
            }
        }
        out
    }

    fn matrix(p: &FinitePoset) -> Vec<Vec<bool>> {
        (0..p.len()).map(|i| (0..p.len()).map(|j| p.leq(i, j)).collect()).collect()
    }

    #[test]
    fn singleton_poset() {
        let p = FinitePoset::new(&["a"], &[]).unwrap();
        assert_eq!(matrix(&p), vec![vec![true]]);
    }

    #[test]
    fn two_cycle_is_rejected_with_witness() {
        let err = FinitePoset::new(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        match err {
            Error::AntisymmetryViolation { cycle } => assert_eq!(cycle, vec!["a", "b"]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn longer_cycle_witness_follows_generating_pairs() {
        let err = FinitePoset::new(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "a"), ("c", "d")])
            .unwrap_err();
        match err {
            Error::AntisymmetryViolation { cycle } => assert_eq!(cycle, vec!["a", "b", "c"]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicate_and_unknown_labels() {
        assert!(matches!(FinitePoset::new(&["a", "a"], &[]), Err(Error::DuplicateLabel(l)) if l == "a"));
        assert!(matches!(FinitePoset::new(&["a"], &[("a", "z")]), Err(Error::UnknownLabel(l)) if l == "z"));
    }

    #[test]
    fn chain_transitive_closure() {
        let p = FinitePoset::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let expected = vec![
            vec![true, true, true],
            vec![false, true, true],
            vec![false, false, true],
        ];
        assert_eq!(matrix(&p), expected);
    }

    #[test]
    fn order_dual_examples() {
        let a2 = FinitePoset::antichain(2);
        assert_eq!(a2.order_dual(), a2);
        let c = FinitePoset::chain_of(3);
        let d = c.order_dual();
        assert!(d.leq(2, 1) && d.leq(1, 0) && d.leq(2, 0) && !d.leq(0, 1));
        let p = FinitePoset::new(&["a", "b", "c", "d"], &[("a", "c"), ("b", "c"), ("b", "d")]).unwrap();
        let q = FinitePoset::new(&["a", "b", "c", "d"], &[("c", "a"), ("c", "b"), ("d", "b")]).unwrap();
        assert_eq!(p.order_dual(), q);
        let transposed: Vec<Vec<bool>> =
            (0..4).map(|i| (0..4).map(|j| matrix(&p)[j][i]).collect()).collect();
        assert_eq!(matrix(&q), transposed);
    }

    #[test]
    fn closures_on_chain() {
        let c = FinitePoset::chain(&["a", "b", "c"]).unwrap();
        assert!(c.down_closure_labels::<&str>(&[]).unwrap().is_empty());
        assert_eq!(c.down_closure_labels(&["b"]).unwrap(), vec!["a", "b"]);
        assert_eq!(c.up_closure_labels(&["b"]).unwrap(), vec!["b", "c"]);
        assert!(matches!(c.down_closure_labels(&["q"]), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn hasse_examples() {
        assert!(FinitePoset::antichain(3).hasse().is_empty());
        assert_eq!(FinitePoset::chain_of(3).hasse(), vec![(0, 1), (1, 2)]);
        let grid = FinitePoset::chain_of(2).product(&FinitePoset::chain_of(2));
        assert_eq!(grid.hasse().len(), 4);
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| enumerate_posets(n).unwrap().count()).collect();
        assert_eq!(counts, vec![1, 1, 3, 19, 219, 4231]);
        assert!(matches!(enumerate_posets(6), Err(Error::BoundExceeded { requested: 6, bound: 5 })));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for n in 0..=4 {
            let mut ours: Vec<_> = enumerate_posets(n).unwrap().map(|p| matrix(&p)).collect();
            let mut theirs = brute_force_orders(n);
            ours.sort();
            theirs.sort();
            assert_eq!(ours, theirs, "n = {n}");
        }
    }

    #[test]
    fn iso_class_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| poset_iso_classes(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16]);
    }

    #[test]
    fn downsets_of_small_posets() {
        let c = FinitePoset::chain_of(2);
        let d: Vec<_> = c.downsets().iter().map(|s| c.set_label(s)).collect();
        assert_eq!(d, vec!["{}", "{a}", "{a,b}"]);
        assert_eq!(FinitePoset::antichain(2).downsets().len(), 4);
        assert_eq!(FinitePoset::antichain(3).downsets_bounded(7), None);
    }

    #[test]
    fn down_closure_is_closure_operator() {
        for n in 0..=4 {
            for p in enumerate_posets(n).unwrap() {
                let subsets: Vec<FixedBitSet> =
                    (0u32..1 << n).map(|m| p.subset((0..n).filter(|&i| m >> i & 1 == 1))).collect();
                for s in &subsets {
                    let c = p.down_closure(s);
                    assert!(s.is_subset(&c));
                    assert_eq!(p.down_closure(&c), c);
                    assert!(p.is_down_set(&c));
                    for t in &subsets {
                        if s.is_subset(t) {
                            assert!(c.is_subset(&p.down_closure(t)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn hasse_regenerates_order() {
        for n in 0..=4 {
            for p in enumerate_posets(n).unwrap() {
                let covers = p.hasse_labels();
                let q = FinitePoset::new(p.labels(), &covers).unwrap();
                assert_eq!(p, q);
            }
        }
    }

    #[test]
    fn dual_is_involution() {
        for n in 0..=5 {
            for p in enumerate_posets(n).unwrap() {
                assert_eq!(p.order_dual().order_dual(), p);
            }
        }
    }

    #[test]
    fn monotone_map_enumeration_matches_brute_force() {
        let posets: Vec<_> = (0..=3).flat_map(|n| enumerate_posets(n).unwrap()).collect();
        for x in posets.iter().step_by(3) {
            for y in posets.iter().step_by(2) {
                let ours = MonotoneMap::all(x, y).len();
                let total = y.len().pow(x.len() as u32);
                let mut brute = 0;
                for code in 0..total {
                    let assignment: Vec<usize> =
                        (0..x.len()).map(|i| code / y.len().pow(i as u32) % y.len()).collect();
                    if MonotoneMap::new(x.clone(), y.clone(), assignment).is_ok() {
                        brute += 1;
                    }
                }
                assert_eq!(ours, brute);
            }
        }
    }

    #[test]
    fn non_monotone_map_is_rejected() {
        let c = FinitePoset::chain_of(2);
        let err = MonotoneMap::new(c.clone(), c.clone(), vec![1, 0]).unwrap_err();
        assert!(matches!(err, Error::NotMonotone { .. }));
    }

    #[test]
    fn canonical_sorts_labels() {
        let p = FinitePoset::new(&["z", "a"], &[("z", "a")]).unwrap();
        let (c, perm) = p.canonical();
        assert_eq!(c.labels(), &["a".to_string(), "z".to_string()]);
        assert_eq!(perm, vec![1, 0]);
        assert!(c.leq(1, 0));
    }
}
