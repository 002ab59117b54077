//! Distributors between finite posets, their composition, the graphs of
//! monotone maps and the dual equivalence with hemimorphisms.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;

use crate::birkhoff::{downset_lattice, DownsetLattice};
use crate::error::{DistributorViolation, Error, Result};
use crate::lattice::{check_hemimorphism, Hemimorphism};
use crate::poset::{empty_set, full_set, FinitePoset, MonotoneMap};

/// How a literal pair set is turned into a distributor.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Mode {
    /// The pairs must already satisfy both closure rules.
    #[default]
    Strict,
    /// The pairs are saturated to the least distributor containing them.
    Closure,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(Mode::Strict),
            "closure" => Ok(Mode::Closure),
            other => Err(Error::Parse {
                location: "mode".into(),
                message: format!("expected \"strict\" or \"closure\", found {other:?}"),
            }),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Strict => "strict",
            Mode::Closure => "closure",
        })
    }
}

/// A relation `X ⇸ Y` whose rows are up-sets and shrink as `x` grows.
///
/// Composition is diagrammatic: `compose(r, s)` is `r` followed by `s`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Distributor {
    source: FinitePoset,
    target: FinitePoset,
    rows: Vec<FixedBitSet>,
}

impl fmt::Debug for Distributor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self.label_pairs().into_iter().map(|(x, y)| format!("{x}~{y}")).collect();
        f.debug_tuple("Distributor").field(&pairs).finish()
    }
}

/// Why a candidate pair fails `id_X ⊆ φ;ψ` or `ψ;φ ⊆ id_Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdjunctionFailure {
    /// `x ≤ x2` but `(x, x2)` is missing from `φ;ψ`.
    Unit { x: String, x2: String },
    /// `(y, y2)` is in `ψ;φ` but `y ≰ y2`.
    Counit { y: String, y2: String },
}

impl fmt::Display for AdjunctionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdjunctionFailure::Unit { x, x2 } => write!(f, "unit fails: {x} <= {x2} but ({x},{x2}) is not in the round trip"),
            AdjunctionFailure::Counit { y, y2 } => {
                write!(f, "counit fails: ({y},{y2}) is in the round trip but {y} is not below {y2}")
            }
        }
    }
}

impl Distributor {
    /// Builds a distributor from index pairs.
    pub fn new(source: &FinitePoset, target: &FinitePoset, pairs: &[(usize, usize)], mode: Mode) -> Result<Self> {
        let mut rows = vec![empty_set(target.len()); source.len()];
        for &(x, y) in pairs {
            if x >= source.len() || y >= target.len() {
                return Err(Error::ObjectMismatch(format!("pair ({x},{y}) out of range")));
            }
            rows[x].insert(y);
        }
        let raw = Distributor { source: source.clone(), target: target.clone(), rows };
        match mode {
            Mode::Strict => {
                raw.check()?;
                Ok(raw)
            }
            Mode::Closure => Ok(raw.saturated()),
        }
    }

    pub fn from_label_pairs<S: AsRef<str>>(
        source: &FinitePoset,
        target: &FinitePoset,
        pairs: &[(S, S)],
        mode: Mode,
    ) -> Result<Self> {
        let idx = pairs
            .iter()
            .map(|(a, b)| Ok((source.require(a.as_ref())?, target.require(b.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, &idx, mode)
    }

    /// Rows given directly; checked strictly.
    pub fn from_rows(source: &FinitePoset, target: &FinitePoset, rows: Vec<FixedBitSet>) -> Result<Self> {
        let d = Self::from_rows_unchecked(source, target, rows);
        if d.rows.len() != source.len() || d.rows.iter().any(|r| r.len() != target.len()) {
            return Err(Error::ObjectMismatch("row dimensions do not match the posets".into()));
        }
        d.check()?;
        Ok(d)
    }

    pub(crate) fn from_rows_unchecked(source: &FinitePoset, target: &FinitePoset, rows: Vec<FixedBitSet>) -> Self {
        Distributor { source: source.clone(), target: target.clone(), rows }
    }

    /// The first violated closure rule, if any.
    pub fn violation(&self) -> Option<DistributorViolation> {
        let (s, t) = (&self.source, &self.target);
        for x in 0..s.len() {
            for y in self.rows[x].ones() {
                if let Some(y2) = t.up_set(y).ones().find(|&y2| !self.rows[x].contains(y2)) {
                    return Some(DistributorViolation::TargetUpClosure {
                        x: s.label(x).into(),
                        y: t.label(y).into(),
                        y2: t.label(y2).into(),
                    });
                }
            }
        }
        for x2 in 0..s.len() {
            for x in s.down_set(x2).ones() {
                if let Some(y) = self.rows[x2].difference(&self.rows[x]).next() {
                    return Some(DistributorViolation::SourceDownClosure {
                        x: s.label(x).into(),
                        x2: s.label(x2).into(),
                        y: t.label(y).into(),
                    });
                }
            }
        }
        None
    }

    pub fn check(&self) -> Result<()> {
        match self.violation() {
            None => Ok(()),
            Some(v) => Err(Error::NotADistributor(v)),
        }
    }

    /// Least distributor containing these pairs.
    pub fn saturated(&self) -> Distributor {
        let mut rows = vec![empty_set(self.target.len()); self.source.len()];
        for x2 in 0..self.source.len() {
            let closed = self.target.up_closure(&self.rows[x2]);
            for x in self.source.down_set(x2).ones() {
                rows[x].union_with(&closed);
            }
        }
        Distributor { source: self.source.clone(), target: self.target.clone(), rows }
    }

    /// The order relation of `x`.
    pub fn identity(x: &FinitePoset) -> Distributor {
        Distributor { source: x.clone(), target: x.clone(), rows: (0..x.len()).map(|i| x.up_set(i).clone()).collect() }
    }

    pub fn empty(x: &FinitePoset, y: &FinitePoset) -> Distributor {
        Distributor { source: x.clone(), target: y.clone(), rows: vec![empty_set(y.len()); x.len()] }
    }

    pub fn total(x: &FinitePoset, y: &FinitePoset) -> Distributor {
        Distributor { source: x.clone(), target: y.clone(), rows: vec![full_set(y.len()); x.len()] }
    }

    pub fn source(&self) -> &FinitePoset {
        &self.source
    }

    pub fn target(&self) -> &FinitePoset {
        &self.target
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    /// `{y : x r y}`, an up-set of the target.
    pub fn row(&self, x: usize) -> &FixedBitSet {
        &self.rows[x]
    }

    pub fn rows(&self) -> &[FixedBitSet] {
        &self.rows
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.source.len()).flat_map(|x| self.rows[x].ones().map(move |y| (x, y))).collect()
    }

    pub fn label_pairs(&self) -> Vec<(String, String)> {
        self.pairs()
            .into_iter()
            .map(|(x, y)| (self.source.label(x).to_string(), self.target.label(y).to_string()))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|r| r.is_clear())
    }

    /// Inclusion of relations with the same source and target.
    pub fn is_subrelation_of(&self, other: &Distributor) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    /// First pair of `self` missing from `other`.
    fn first_excess(&self, other: &Distributor) -> Option<(usize, usize)> {
        (0..self.source.len()).find_map(|x| self.rows[x].difference(&other.rows[x]).next().map(|y| (x, y)))
    }

    /// The same relation read between relabelled copies of the posets.
    pub fn with_objects(&self, source: &FinitePoset, target: &FinitePoset) -> Result<Distributor> {
        if source.len() != self.source.len() || target.len() != self.target.len() {
            return Err(Error::ObjectMismatch("sizes differ".into()));
        }
        Distributor::from_rows(source, target, self.rows.clone())
    }
}

/// `r` then `s`: `x (r;s) z` iff some `y` has `x r y` and `y s z`.
pub fn compose(r: &Distributor, s: &Distributor) -> Result<Distributor> {
    if r.target != s.source {
        return Err(Error::ObjectMismatch("target of the first distributor is not the source of the second".into()));
    }
    let rows = r
        .rows
        .iter()
        .map(|row| {
            let mut out = empty_set(s.target.len());
            for y in row.ones() {
                out.union_with(&s.rows[y]);
            }
            out
        })
        .collect();
    Ok(Distributor { source: r.source.clone(), target: s.target.clone(), rows })
}

pub fn identity(x: &FinitePoset) -> Distributor {
    Distributor::identity(x)
}

/// `f_*: X ⇸ Y`, `x f_* y` iff `f(x) ≤ y`.
pub fn graph_lower(f: &MonotoneMap) -> Distributor {
    let rows = (0..f.source().len()).map(|x| f.target().up_set(f.apply(x)).clone()).collect();
    Distributor::from_rows_unchecked(f.source(), f.target(), rows)
}

/// `f^*: Y ⇸ X`, `y f^* x` iff `y ≤ f(x)`.
pub fn graph_upper(f: &MonotoneMap) -> Distributor {
    let (x, y) = (f.source(), f.target());
    let rows = (0..y.len())
        .map(|b| crate::poset::set_of(x.len(), (0..x.len()).filter(|&a| y.leq(b, f.apply(a)))))
        .collect();
    Distributor::from_rows_unchecked(y, x, rows)
}

/// `None` when `φ ⊣ ψ`, that is `id_X ⊆ φ;ψ` and `ψ;φ ⊆ id_Y`; otherwise a failing pair.
pub fn check_adjoint(phi: &Distributor, psi: &Distributor) -> Result<Option<AdjunctionFailure>> {
    if phi.target != psi.source || psi.target != phi.source {
        return Err(Error::ObjectMismatch("adjoint pair must go X ⇸ Y and Y ⇸ X".into()));
    }
    let (x, y) = (&phi.source, &phi.target);
    let unit = compose(phi, psi)?;
    if let Some((a, b)) = Distributor::identity(x).first_excess(&unit) {
        return Ok(Some(AdjunctionFailure::Unit { x: x.label(a).into(), x2: x.label(b).into() }));
    }
    let counit = compose(psi, phi)?;
    if let Some((a, b)) = counit.first_excess(&Distributor::identity(y)) {
        return Ok(Some(AdjunctionFailure::Counit { y: y.label(a).into(), y2: y.label(b).into() }));
    }
    Ok(None)
}

/// The monotone map whose graphs are `φ ⊣ ψ`: `f(x)` is the least `y` with `x φ y`.
pub fn adjoint_to_map(phi: &Distributor, psi: &Distributor) -> Result<MonotoneMap> {
    if let Some(w) = check_adjoint(phi, psi)? {
        return Err(Error::NotAnAdjunction(w.to_string()));
    }
    let (x, y) = (&phi.source, &phi.target);
    let assignment = (0..x.len())
        .map(|a| {
            let row = phi.row(a);
            row.ones().find(|&b| y.up_set(b) == row).ok_or_else(|| {
                Error::NotAnAdjunction(format!("{} has no least related element", x.label(a)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let f = MonotoneMap::new(x.clone(), y.clone(), assignment)?;
    if graph_lower(&f) != *phi || graph_upper(&f) != *psi {
        return Err(Error::InternalVerificationFailure("recovered map does not reproduce the adjunction".into()));
    }
    Ok(f)
}

/// `B ↦ {x : r̂(x) ∩ B ≠ ∅}` from the down-sets of `Y` to those of `X`.
pub fn halmos_dual(r: &Distributor) -> Result<Hemimorphism> {
    let dx = downset_lattice(&r.source)?;
    let dy = downset_lattice(&r.target)?;
    halmos_dual_between(r, &dy, &dx)
}

pub fn halmos_dual_between(r: &Distributor, dy: &DownsetLattice, dx: &DownsetLattice) -> Result<Hemimorphism> {
    check_objects(dy, dx, &r.target, &r.source)?;
    let n = r.source.len();
    let assignment = dy
        .sets()
        .iter()
        .map(|b| {
            let hit = crate::poset::set_of(n, (0..n).filter(|&x| !r.rows[x].is_disjoint(b)));
            dx.find(&hit).ok_or_else(|| Error::InternalVerificationFailure("dual image is not a down-set".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    check_hemimorphism(dy.lattice(), dx.lattice(), assignment)
}

/// The distributor `X ⇸ Y` of a hemimorphism `D(Y) → D(X)`: `x r y` iff `x ∈ h(↓y)`.
pub fn halmos_inv(h: &Hemimorphism, dy: &DownsetLattice, dx: &DownsetLattice) -> Result<Distributor> {
    if h.source() != dy.lattice() || h.target() != dx.lattice() {
        return Err(Error::ObjectMismatch("hemimorphism does not go between these down-set lattices".into()));
    }
    let (x, y) = (dx.base(), dy.base());
    let images: Vec<&FixedBitSet> = (0..y.len()).map(|b| dx.set(h.apply(dy.principal(b)))).collect();
    let rows = (0..x.len())
        .map(|a| crate::poset::set_of(y.len(), (0..y.len()).filter(|&b| images[b].contains(a))))
        .collect();
    let d = Distributor::from_rows_unchecked(x, y, rows);
    d.check()?;
    Ok(d)
}

/// `halmos_inv` for a raw assignment, validating it as a hemimorphism first.
pub fn halmos_inv_assignment(assignment: Vec<usize>, dy: &DownsetLattice, dx: &DownsetLattice) -> Result<Distributor> {
    let h = check_hemimorphism(dy.lattice(), dx.lattice(), assignment)?;
    halmos_inv(&h, dy, dx)
}

fn check_objects(dy: &DownsetLattice, dx: &DownsetLattice, y: &FinitePoset, x: &FinitePoset) -> Result<()> {
    if dy.base() != y || dx.base() != x {
        return Err(Error::ObjectMismatch("down-set lattices do not match the distributor".into()));
    }
    Ok(())
}

/// The three finite-scale readings of "f is downwards open", which all hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DownwardsOpenReport {
    /// `↓f[A]` is a down-set for every down-set `A`.
    pub image_closure_is_down_set: bool,
    /// `f_* ⊣ f^*`.
    pub lower_graph_has_right_adjoint: bool,
    /// `f^*` satisfies both distributor rules.
    pub upper_graph_is_distributor: bool,
}

impl DownwardsOpenReport {
    pub fn all_hold(&self) -> bool {
        self.image_closure_is_down_set && self.lower_graph_has_right_adjoint && self.upper_graph_is_distributor
    }

    pub fn agree(&self) -> bool {
        self.image_closure_is_down_set == self.lower_graph_has_right_adjoint
            && self.lower_graph_has_right_adjoint == self.upper_graph_is_distributor
    }
}

pub fn downwards_open_report(f: &MonotoneMap) -> Result<DownwardsOpenReport> {
    let (x, y) = (f.source(), f.target());
    let image_closure_is_down_set = x.downsets().iter().all(|a| y.is_down_set(&y.down_closure(&f.image(a))));
    let lower = graph_lower(f);
    let upper = graph_upper(f);
    Ok(DownwardsOpenReport {
        image_closure_is_down_set,
        lower_graph_has_right_adjoint: check_adjoint(&lower, &upper)?.is_none(),
        upper_graph_is_distributor: upper.violation().is_none() && lower.violation().is_none(),
    })
}

/// Every distributor `X ⇸ Y`: antitone choices of an up-set of `Y` per element of `X`.
pub fn all_distributors(x: &FinitePoset, y: &FinitePoset) -> Vec<Distributor> {
    let upsets = y.upsets();
    let order = x.linear_extension();
    let mut rows = vec![empty_set(y.len()); x.len()];
    let mut out = Vec::new();
    fn go(
        pos: usize,
        order: &[usize],
        x: &FinitePoset,
        y: &FinitePoset,
        upsets: &[FixedBitSet],
        rows: &mut Vec<FixedBitSet>,
        out: &mut Vec<Distributor>,
    ) {
        if pos == order.len() {
            out.push(Distributor::from_rows_unchecked(x, y, rows.clone()));
            return;
        }
        let a = order[pos];
        for u in upsets {
            // everything below `a` was placed earlier and must relate to more
            if x.down_set(a).ones().all(|b| b == a || u.is_subset(&rows[b])) {
                rows[a] = u.clone();
                go(pos + 1, order, x, y, upsets, rows, out);
            }
        }
    }
    go(0, &order, x, y, &upsets, &mut rows, &mut out);
    out
}
