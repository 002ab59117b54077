//! Finite bounded distributive lattices and maps preserving finite joins.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, ForbiddenSublattice, MissingBound, Result, SupFailure};
use crate::poset::FinitePoset;

#[derive(PartialEq, Eq)]
struct LatticeData {
    order: FinitePoset,
    join: Vec<u32>,
    meet: Vec<u32>,
    bottom: usize,
    top: usize,
}

/// A finite bounded distributive lattice stored with its full order and
/// join/meet tables.
#[derive(Clone)]
pub struct FinDistLattice {
    data: Arc<LatticeData>,
}

impl PartialEq for FinDistLattice {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data == other.data
    }
}

impl Eq for FinDistLattice {}

impl fmt::Debug for FinDistLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("FinDistLattice").field(&self.data.order).finish()
    }
}

/// Validates `order` as a bounded distributive lattice and tabulates its operations.
pub fn lattice_from_poset(order: &FinitePoset) -> Result<FinDistLattice> {
    let n = order.len();
    let bottom = (0..n)
        .find(|&i| order.up_set(i).count_ones(..) == n)
        .ok_or(Error::NotALattice(MissingBound::NoBottom))?;
    let top = (0..n)
        .find(|&i| order.down_set(i).count_ones(..) == n)
        .ok_or(Error::NotALattice(MissingBound::NoTop))?;
    let mut join = vec![0u32; n * n];
    let mut meet = vec![0u32; n * n];
    for i in 0..n {
        for j in i..n {
            let mut ub = order.up_set(i).clone();
            ub.intersect_with(order.up_set(j));
            let lub = ub
                .ones()
                .max_by_key(|&u| order.up_set(u).count_ones(..))
                .filter(|&u| *order.up_set(u) == ub)
                .ok_or_else(|| {
                    Error::NotALattice(MissingBound::NoJoin(order.label(i).into(), order.label(j).into()))
                })?;
            let mut lb = order.down_set(i).clone();
            lb.intersect_with(order.down_set(j));
            let glb = lb
                .ones()
                .max_by_key(|&u| order.down_set(u).count_ones(..))
                .filter(|&u| *order.down_set(u) == lb)
                .ok_or_else(|| {
                    Error::NotALattice(MissingBound::NoMeet(order.label(i).into(), order.label(j).into()))
                })?;
            join[i * n + j] = lub as u32;
            join[j * n + i] = lub as u32;
            meet[i * n + j] = glb as u32;
            meet[j * n + i] = glb as u32;
        }
    }
    let lattice = FinDistLattice::from_tables(order.clone(), join, meet, bottom, top);
    // Every finite lattice embeds into the down-sets of its join-irreducibles;
    // the embedding is onto exactly when the lattice is distributive.
    let irreducibles = lattice.join_irreducibles();
    let distributive = irreducibles
        .downsets_bounded(n + 1)
        .is_some_and(|d| d.len() == n);
    if !distributive {
        let (kind, elements) = lattice.forbidden_sublattice().ok_or_else(|| {
            Error::InternalVerificationFailure("non-distributive lattice without M3/N5 witness".into())
        })?;
        return Err(Error::NotDistributive {
            kind,
            elements: elements.iter().map(|&i| lattice.label(i).to_string()).collect(),
        });
    }
    Ok(lattice)
}

impl FinDistLattice {
    pub(crate) fn from_tables(
        order: FinitePoset,
        join: Vec<u32>,
        meet: Vec<u32>,
        bottom: usize,
        top: usize,
    ) -> Self {
        FinDistLattice { data: Arc::new(LatticeData { order, join, meet, bottom, top }) }
    }

    pub fn order(&self) -> &FinitePoset {
        &self.data.order
    }

    pub fn len(&self) -> usize {
        self.data.order.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bottom(&self) -> usize {
        self.data.bottom
    }

    pub fn top(&self) -> usize {
        self.data.top
    }

    pub fn label(&self, i: usize) -> &str {
        self.data.order.label(i)
    }

    pub fn require(&self, label: &str) -> Result<usize> {
        self.data.order.require(label)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.data.order.leq(a, b)
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.data.join[a * self.len() + b] as usize
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.data.meet[a * self.len() + b] as usize
    }

    /// Join of a family; the bottom for the empty family.
    pub fn join_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }

    /// The same lattice upside down: joins and meets swap, so do the bounds.
    pub fn order_dual(&self) -> FinDistLattice {
        FinDistLattice::from_tables(
            self.data.order.order_dual(),
            self.data.meet.clone(),
            self.data.join.clone(),
            self.data.top,
            self.data.bottom,
        )
    }

    pub fn is_join_irreducible(&self, j: usize) -> bool {
        j != self.bottom() && self.join_all(self.order().down_set(j).ones().filter(|&x| x != j)) != j
    }

    /// Indices of the join-irreducible elements, in index order.
    pub fn irreducible_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.is_join_irreducible(j)).collect()
    }

    /// The join-irreducibles with the inherited order: the points of the lattice.
    pub fn join_irreducibles(&self) -> FinitePoset {
        self.order().subposet(&self.irreducible_indices())
    }

    pub fn complement(&self, x: usize) -> Option<usize> {
        (0..self.len()).find(|&c| self.meet(x, c) == self.bottom() && self.join(x, c) == self.top())
    }

    pub fn is_boolean(&self) -> bool {
        (0..self.len()).all(|x| self.complement(x).is_some())
    }

    /// `min { z : y <= x ∨ z }`, found by scanning every candidate.
    ///
    /// The candidate set is closed under meets in a distributive lattice, so
    /// its meet is its least element.
    pub fn coheyting_subtract_bruteforce(&self, x: usize, y: usize) -> usize {
        let candidates: Vec<usize> = (0..self.len()).filter(|&z| self.leq(y, self.join(x, z))).collect();
        let least = self.meet_all(candidates.iter().copied());
        debug_assert!(self.leq(y, self.join(x, least)));
        least
    }

    /// Heyting implication `x → y`, obtained as subtraction in the order dual.
    pub fn heyting_implication(&self, x: usize, y: usize) -> usize {
        self.order_dual().coheyting_subtract_bruteforce(x, y)
    }

    /// First M3 or N5 sublattice found, as `[bottom, three middle elements, top]`.
    ///
    /// For N5 the middle elements are listed as the short side then the
    /// two-element chain from bottom to top.
    pub(crate) fn forbidden_sublattice(&self) -> Option<(ForbiddenSublattice, [usize; 5])> {
        let n = self.len();
        // Modularity: a <= c implies a ∨ (b ∧ c) = (a ∨ b) ∧ c.
        for a in 0..n {
            for c in self.order().up_set(a).ones() {
                for b in 0..n {
                    let u = self.join(a, self.meet(b, c));
                    let v = self.meet(self.join(a, b), c);
                    if u != v {
                        return Some((ForbiddenSublattice::N5, [self.meet(b, c), b, u, v, self.join(a, b)]));
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = self.meet(x, self.join(y, z));
                    let rhs = self.join(self.meet(x, y), self.meet(x, z));
                    if lhs != rhs {
                        let p = self.join_all([self.meet(x, y), self.meet(y, z), self.meet(z, x)]);
                        let q = self.meet_all([self.join(x, y), self.join(y, z), self.join(z, x)]);
                        let lift = |e: usize| self.join(self.meet(e, q), p);
                        return Some((ForbiddenSublattice::M3, [p, lift(x), lift(y), lift(z), q]));
                    }
                }
            }
        }
        None
    }
}

/// A map between lattices preserving the bottom and binary joins.
#[derive(Clone, PartialEq, Eq)]
pub struct Hemimorphism {
    source: FinDistLattice,
    target: FinDistLattice,
    assignment: Vec<usize>,
    preserves_meets: bool,
    preserves_top: bool,
}

impl fmt::Debug for Hemimorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<_> = self
            .assignment
            .iter()
            .enumerate()
            .map(|(x, &y)| format!("{}->{}", self.source.label(x), self.target.label(y)))
            .collect();
        f.debug_struct("Hemimorphism")
            .field("assignment", &pairs)
            .field("preserves_meets", &self.preserves_meets)
            .field("preserves_top", &self.preserves_top)
            .finish()
    }
}

/// Validates that `assignment` preserves ⊥ and binary joins, and computes
/// whether it also preserves meets and ⊤.
pub fn check_hemimorphism(
    source: &FinDistLattice,
    target: &FinDistLattice,
    assignment: Vec<usize>,
) -> Result<Hemimorphism> {
    if assignment.len() != source.len() {
        return Err(Error::AssignmentLength { expected: source.len(), found: assignment.len() });
    }
    if let Some(x) = assignment.iter().position(|&y| y >= target.len()) {
        return Err(Error::AssignmentRange { element: source.label(x).to_string() });
    }
    let f = |x: usize| assignment[x];
    if f(source.bottom()) != target.bottom() {
        return Err(Error::NotSupPreserving(SupFailure::Bottom {
            image: target.label(f(source.bottom())).to_string(),
        }));
    }
    let n = source.len();
    let mut preserves_meets = true;
    for x in 0..n {
        for y in x..n {
            if f(source.join(x, y)) != target.join(f(x), f(y)) {
                return Err(Error::NotSupPreserving(SupFailure::Join {
                    x: source.label(x).to_string(),
                    y: source.label(y).to_string(),
                }));
            }
            preserves_meets &= f(source.meet(x, y)) == target.meet(f(x), f(y));
        }
    }
    let preserves_top = f(source.top()) == target.top();
    Ok(Hemimorphism {
        source: source.clone(),
        target: target.clone(),
        assignment,
        preserves_meets,
        preserves_top,
    })
}

impl Hemimorphism {
    pub fn identity(lattice: &FinDistLattice) -> Hemimorphism {
        Hemimorphism {
            source: lattice.clone(),
            target: lattice.clone(),
            assignment: (0..lattice.len()).collect(),
            preserves_meets: true,
            preserves_top: true,
        }
    }

    /// Map given by element labels; must be total.
    pub fn from_labels<S: AsRef<str>>(
        source: &FinDistLattice,
        target: &FinDistLattice,
        pairs: &[(S, S)],
    ) -> Result<Hemimorphism> {
        let mut assignment = vec![usize::MAX; source.len()];
        for (a, b) in pairs {
            assignment[source.require(a.as_ref())?] = target.require(b.as_ref())?;
        }
        if let Some(x) = assignment.iter().position(|&y| y == usize::MAX) {
            return Err(Error::Parse {
                location: "assignment".into(),
                message: format!("no image given for {}", source.label(x)),
            });
        }
        check_hemimorphism(source, target, assignment)
    }

    pub fn source(&self) -> &FinDistLattice {
        &self.source
    }

    pub fn target(&self) -> &FinDistLattice {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    pub fn preserves_meets(&self) -> bool {
        self.preserves_meets
    }

    pub fn preserves_top(&self) -> bool {
        self.preserves_top
    }

    /// Both flags set: a bounded lattice homomorphism.
    pub fn is_homomorphism(&self) -> bool {
        self.preserves_meets && self.preserves_top
    }

    /// Diagrammatic composite: `self` first, then `next`.
    pub fn then(&self, next: &Hemimorphism) -> Result<Hemimorphism> {
        if self.target != next.source {
            return Err(Error::ObjectMismatch(
                "target of the first hemimorphism is not the source of the second".into(),
            ));
        }
        let assignment = self.assignment.iter().map(|&y| next.assignment[y]).collect();
        check_hemimorphism(&self.source, &next.target, assignment)
    }
}
