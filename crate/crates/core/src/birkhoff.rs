//! Finite posets against finite distributive lattices: down-set lattices,
//! join-irreducible points, the two round-trip isomorphisms, the patch and
//! the Booleanization.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::lattice::{check_hemimorphism, FinDistLattice, Hemimorphism};
use crate::poset::{FinitePoset, MonotoneMap};

/// Default cap on the number of elements of a constructed lattice or Vietoris poset.
pub const DEFAULT_MAX_ELEMENTS: usize = 1024;

/// The lattice of down-sets of a poset, remembering which set each element is.
#[derive(Clone)]
pub struct DownsetLattice {
    base: FinitePoset,
    lattice: FinDistLattice,
    sets: Vec<FixedBitSet>,
    index: HashMap<FixedBitSet, usize>,
}

impl fmt::Debug for DownsetLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DownsetLattice").field("base", &self.base).field("len", &self.sets.len()).finish()
    }
}

impl PartialEq for DownsetLattice {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base
    }
}

pub fn downset_lattice(p: &FinitePoset) -> Result<DownsetLattice> {
    downset_lattice_bounded(p, DEFAULT_MAX_ELEMENTS)
}

/// Down-sets ordered by inclusion, `∅` at index 0 and the whole poset last.
pub fn downset_lattice_bounded(p: &FinitePoset, max_elements: usize) -> Result<DownsetLattice> {
    let sets = p.downsets_bounded(max_elements).ok_or_else(|| Error::SizeOverflow {
        what: "down-set lattice".into(),
        bound: max_elements,
    })?;
    Ok(DownsetLattice::from_sets(p.clone(), sets))
}

/// Lattice on a family of subsets closed under union and intersection,
/// ordered by inclusion.
pub(crate) fn set_lattice(base: &FinitePoset, sets: &[FixedBitSet]) -> (FinDistLattice, HashMap<FixedBitSet, usize>) {
    let n = sets.len();
    let index: HashMap<FixedBitSet, usize> = sets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let labels = sets.iter().map(|s| base.set_label(s)).collect();
    let up = (0..n)
        .map(|i| crate::poset::set_of(n, (0..n).filter(|&j| sets[i].is_subset(&sets[j]))))
        .collect();
    let order = FinitePoset::from_up_rows_unchecked(labels, up);
    let mut join = vec![0u32; n * n];
    let mut meet = vec![0u32; n * n];
    for i in 0..n {
        for j in i..n {
            let mut u = sets[i].clone();
            u.union_with(&sets[j]);
            let mut m = sets[i].clone();
            m.intersect_with(&sets[j]);
            let (u, m) = (index[&u] as u32, index[&m] as u32);
            join[i * n + j] = u;
            join[j * n + i] = u;
            meet[i * n + j] = m;
            meet[j * n + i] = m;
        }
    }
    let bottom = (0..n).min_by_key(|&i| sets[i].count_ones(..)).unwrap_or(0);
    let top = (0..n).max_by_key(|&i| sets[i].count_ones(..)).unwrap_or(0);
    (FinDistLattice::from_tables(order, join, meet, bottom, top), index)
}

impl DownsetLattice {
    fn from_sets(base: FinitePoset, sets: Vec<FixedBitSet>) -> Self {
        let (lattice, index) = set_lattice(&base, &sets);
        DownsetLattice { base, lattice, sets, index }
    }

    pub fn base(&self) -> &FinitePoset {
        &self.base
    }

    pub fn lattice(&self) -> &FinDistLattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The down-set that element `i` stands for.
    pub fn set(&self, i: usize) -> &FixedBitSet {
        &self.sets[i]
    }

    pub fn sets(&self) -> &[FixedBitSet] {
        &self.sets
    }

    pub fn find(&self, set: &FixedBitSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    /// Element for a set known to be a down-set.
    pub(crate) fn element(&self, set: &FixedBitSet) -> usize {
        self.index[set]
    }

    /// The principal down-set `↓x`.
    pub fn principal(&self, x: usize) -> usize {
        self.element(self.base.down_set(x))
    }
}

/// An order isomorphism with its inverse, both as index maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetIso {
    pub source: FinitePoset,
    pub target: FinitePoset,
    pub forward: Vec<usize>,
    pub backward: Vec<usize>,
}

impl PosetIso {
    /// Checks that the maps are mutually inverse and that `forward` preserves
    /// and reflects the order.
    pub fn verify(&self) -> Result<()> {
        let n = self.source.len();
        let ok = self.target.len() == n
            && self.forward.len() == n
            && self.backward.len() == n
            && (0..n).all(|x| self.forward[x] < n && self.backward[self.forward[x]] == x)
            && (0..n).all(|y| self.backward[y] < n && self.forward[self.backward[y]] == y)
            && (0..n).all(|a| (0..n).all(|b| self.source.leq(a, b) == self.target.leq(self.forward[a], self.forward[b])));
        if ok {
            Ok(())
        } else {
            Err(Error::InternalVerificationFailure("order isomorphism check failed".into()))
        }
    }
}

/// A lattice isomorphism with its inverse. An order isomorphism between
/// lattices is automatically a lattice isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeIso {
    pub source: FinDistLattice,
    pub target: FinDistLattice,
    pub forward: Vec<usize>,
    pub backward: Vec<usize>,
}

impl LatticeIso {
    pub fn verify(&self) -> Result<()> {
        PosetIso {
            source: self.source.order().clone(),
            target: self.target.order().clone(),
            forward: self.forward.clone(),
            backward: self.backward.clone(),
        }
        .verify()?;
        let (s, t, f) = (&self.source, &self.target, &self.forward);
        let n = s.len();
        let ok = f[s.bottom()] == t.bottom()
            && f[s.top()] == t.top()
            && (0..n).all(|a| {
                (0..n).all(|b| f[s.join(a, b)] == t.join(f[a], f[b]) && f[s.meet(a, b)] == t.meet(f[a], f[b]))
            });
        if ok {
            Ok(())
        } else {
            Err(Error::InternalVerificationFailure("lattice isomorphism check failed".into()))
        }
    }

    pub fn forward_hemimorphism(&self) -> Result<Hemimorphism> {
        check_hemimorphism(&self.source, &self.target, self.forward.clone())
    }
}

/// `a ↦ {j join-irreducible : j ≤ a}` into the down-sets of the points of `L`.
#[derive(Clone, Debug)]
pub struct SpecUnit {
    /// Indices in `L` of the join-irreducibles, in the order used by `dual.base()`.
    pub irreducibles: Vec<usize>,
    pub dual: DownsetLattice,
    pub iso: LatticeIso,
}

pub fn spec_unit(l: &FinDistLattice) -> Result<SpecUnit> {
    let irreducibles = l.irreducible_indices();
    let points = l.order().subposet(&irreducibles);
    let dual = downset_lattice_bounded(&points, l.len().max(1))?;
    let k = irreducibles.len();
    let forward: Vec<usize> = (0..l.len())
        .map(|a| {
            let below = crate::poset::set_of(k, (0..k).filter(|&t| l.leq(irreducibles[t], a)));
            dual.find(&below)
                .ok_or_else(|| Error::InternalVerificationFailure("irreducibles below an element are not a down-set".into()))
        })
        .collect::<Result<_>>()?;
    let backward = dual
        .sets()
        .iter()
        .map(|s| l.join_all(s.ones().map(|t| irreducibles[t])))
        .collect();
    let iso = LatticeIso { source: l.clone(), target: dual.lattice().clone(), forward, backward };
    iso.verify()?;
    Ok(SpecUnit { irreducibles, dual, iso })
}

/// `x ↦ ↓x` onto the join-irreducible down-sets.
#[derive(Clone, Debug)]
pub struct SpecCounit {
    pub dual: DownsetLattice,
    pub iso: PosetIso,
}

pub fn spec_counit(p: &FinitePoset) -> Result<SpecCounit> {
    spec_counit_bounded(p, DEFAULT_MAX_ELEMENTS)
}

pub fn spec_counit_bounded(p: &FinitePoset, max_elements: usize) -> Result<SpecCounit> {
    let dual = downset_lattice_bounded(p, max_elements)?;
    let irreducibles = dual.lattice().irreducible_indices();
    let points = dual.lattice().join_irreducibles();
    let position: HashMap<usize, usize> = irreducibles.iter().enumerate().map(|(t, &e)| (e, t)).collect();
    let forward: Vec<usize> = (0..p.len())
        .map(|x| {
            position.get(&dual.principal(x)).copied().ok_or_else(|| {
                Error::InternalVerificationFailure(format!("principal down-set of {} is not irreducible", p.label(x)))
            })
        })
        .collect::<Result<_>>()?;
    let mut backward = vec![usize::MAX; points.len()];
    for (x, &t) in forward.iter().enumerate() {
        backward[t] = x;
    }
    let iso = PosetIso { source: p.clone(), target: points, forward, backward };
    iso.verify()?;
    Ok(SpecCounit { dual, iso })
}

/// The discrete poset on the same points, with the identity-carrier map into `p`.
pub fn patch(p: &FinitePoset) -> (FinitePoset, MonotoneMap) {
    let discrete = p.discretized();
    let i = MonotoneMap::new_unchecked(discrete.clone(), p.clone(), (0..p.len()).collect());
    (discrete, i)
}

/// `L` embedded in the powerset of its points, with the join retraction.
#[derive(Clone, Debug)]
pub struct Booleanization {
    pub base: FinDistLattice,
    /// Indices in `base` of the join-irreducibles, indexing the points of `boole`.
    pub irreducibles: Vec<usize>,
    pub boole: DownsetLattice,
    pub embed_j: Hemimorphism,
    pub retract_jplus: Hemimorphism,
}

impl Booleanization {
    pub fn boole(&self) -> &FinDistLattice {
        self.boole.lattice()
    }
}

pub fn booleanize(l: &FinDistLattice) -> Result<Booleanization> {
    booleanize_bounded(l, DEFAULT_MAX_ELEMENTS)
}

pub fn booleanize_bounded(l: &FinDistLattice, max_elements: usize) -> Result<Booleanization> {
    let irreducibles = l.irreducible_indices();
    let points = l.order().subposet(&irreducibles);
    let (discrete, _) = patch(&points);
    let boole = downset_lattice_bounded(&discrete, max_elements)?;
    let b = boole.lattice();
    let k = irreducibles.len();
    let j: Vec<usize> = (0..l.len())
        .map(|a| boole.element(&crate::poset::set_of(k, (0..k).filter(|&t| l.leq(irreducibles[t], a)))))
        .collect();
    let jplus: Vec<usize> = boole.sets().iter().map(|s| l.join_all(s.ones().map(|t| irreducibles[t]))).collect();
    let embed_j = check_hemimorphism(l, b, j)?;
    let retract_jplus = check_hemimorphism(b, l, jplus)?;

    let fail = |what: &str| Err(Error::InternalVerificationFailure(format!("booleanization: {what}")));
    if !embed_j.is_homomorphism() {
        return fail("embedding is not a homomorphism");
    }
    if !(0..l.len()).all(|a| retract_jplus.apply(embed_j.apply(a)) == a) {
        return fail("retraction after embedding is not the identity");
    }
    let adjoint = (0..b.len())
        .all(|s| (0..l.len()).all(|a| l.leq(retract_jplus.apply(s), a) == b.leq(s, embed_j.apply(a))));
    if !adjoint {
        return fail("retraction is not left adjoint to the embedding");
    }
    if !b.is_boolean() {
        return fail("powerset lattice is not Boolean");
    }
    Ok(Booleanization { base: l.clone(), irreducibles, boole, embed_j, retract_jplus })
}

/// The spectral map of a homomorphism `f: L_s → L_t`: `J(L_t) → J(L_s)`,
/// sending `j` to the least `a` with `j ≤ f(a)`.
pub fn dual_map(f: &Hemimorphism) -> Result<MonotoneMap> {
    if !f.is_homomorphism() {
        let what = if f.preserves_top() { "finite meets" } else { "the top" };
        return Err(Error::NotAHomomorphism(format!("map does not preserve {what}")));
    }
    let (s, t) = (f.source(), f.target());
    let js = s.irreducible_indices();
    let jt = t.irreducible_indices();
    let position: HashMap<usize, usize> = js.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let assignment = jt
        .iter()
        .map(|&j| {
            let least = s.meet_all((0..s.len()).filter(|&a| t.leq(j, f.apply(a))));
            position.get(&least).copied().ok_or_else(|| {
                Error::InternalVerificationFailure(format!("dual of {} is not irreducible", t.label(j)))
            })
        })
        .collect::<Result<_>>()?;
    MonotoneMap::new(t.order().subposet(&jt), s.order().subposet(&js), assignment)
}

/// `B ↦ g⁻¹(B)` from the down-sets of the target to those of the source.
pub fn preimage_homomorphism(g: &MonotoneMap) -> Result<Hemimorphism> {
    let dx = downset_lattice(g.source())?;
    let dy = downset_lattice(g.target())?;
    preimage_homomorphism_between(g, &dy, &dx)
}

pub fn preimage_homomorphism_between(g: &MonotoneMap, dy: &DownsetLattice, dx: &DownsetLattice) -> Result<Hemimorphism> {
    if dy.base() != g.target() || dx.base() != g.source() {
        return Err(Error::ObjectMismatch("down-set lattices do not match the map".into()));
    }
    let assignment = dy.sets().iter().map(|b| dx.element(&g.preimage(b))).collect();
    check_hemimorphism(dy.lattice(), dx.lattice(), assignment)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::enumerate_posets;

    fn labels(l: &FinDistLattice) -> Vec<&str> {
        (0..l.len()).map(|i| l.label(i)).collect()
    }

    #[test]
    fn downset_lattice_examples() {
        let d = downset_lattice(&FinitePoset::antichain(0)).unwrap();
        assert_eq!(d.len(), 1);
        let d = downset_lattice(&FinitePoset::chain(&["a", "b"]).unwrap()).unwrap();
        assert_eq!(labels(d.lattice()), vec!["{}", "{a}", "{a,b}"]);
        assert!(d.lattice().order().leq(1, 2));
        let d = downset_lattice(&FinitePoset::discrete(&["a", "b"]).unwrap()).unwrap();
        assert_eq!(d.len(), 4);
        assert!(d.lattice().is_boolean());
    }

    #[test]
    fn downset_lattice_respects_bound() {
        let err = downset_lattice_bounded(&FinitePoset::antichain(4), 15).unwrap_err();
        assert!(matches!(err, Error::SizeOverflow { bound: 15, .. }));
        assert!(downset_lattice_bounded(&FinitePoset::antichain(4), 16).is_ok());
    }

    /// Subsets scanned one by one, kept when down-closed.
    #[test]
    fn downsets_match_subset_filter() {
        for n in 0..=4 {
            for p in enumerate_posets(n).unwrap() {
                let d = downset_lattice(&p).unwrap();
                let count = (0u32..1 << n)
                    .filter(|&m| (0..n).all(|y| m >> y & 1 == 0 || (0..n).all(|x| !p.leq(x, y) || m >> x & 1 == 1)))
                    .count();
                assert_eq!(d.len(), count);
            }
        }
    }

    #[test]
    fn spec_unit_examples() {
        let chain = crate::lattice::lattice_from_poset(&FinitePoset::chain(&["0", "1", "2"]).unwrap()).unwrap();
        let u = spec_unit(&chain).unwrap();
        let images: Vec<&str> = u.iso.forward.iter().map(|&i| u.dual.lattice().label(i)).collect();
        assert_eq!(images, vec!["{}", "{1}", "{1,2}"]);

        let grid = FinitePoset::chain_of(2).product(&FinitePoset::chain_of(2));
        let b2 = crate::lattice::lattice_from_poset(&grid).unwrap();
        let u = spec_unit(&b2).unwrap();
        for a in 0..4 {
            let atoms: Vec<usize> = u.irreducibles.iter().copied().filter(|&j| b2.leq(j, a)).collect();
            assert_eq!(u.dual.set(u.iso.forward[a]).count_ones(..), atoms.len());
        }

        let trivial = crate::lattice::lattice_from_poset(&FinitePoset::antichain(1)).unwrap();
        assert_eq!(spec_unit(&trivial).unwrap().iso.forward, vec![0]);
    }

    #[test]
    fn spec_counit_examples() {
        let c = spec_counit(&FinitePoset::chain(&["a", "b"]).unwrap()).unwrap();
        assert_eq!(c.iso.target.labels(), &["{a}".to_string(), "{a,b}".to_string()]);
        assert!(c.iso.target.leq(0, 1));
        let c = spec_counit(&FinitePoset::antichain(2)).unwrap();
        assert!(c.iso.target.is_discrete());
    }

    #[test]
    fn round_trips_small() {
        for n in 0..=4 {
            for p in enumerate_posets(n).unwrap() {
                let c = spec_counit(&p).unwrap();
                spec_unit(c.dual.lattice()).unwrap();
            }
        }
    }

    #[test]
    fn patch_is_discrete_and_idempotent() {
        let chain = FinitePoset::chain(&["a", "b", "c"]).unwrap();
        let (d, i) = patch(&chain);
        assert!(d.is_discrete());
        assert_eq!(i.assignment(), &[0, 1, 2]);
        assert_eq!(patch(&d).0, d);
    }

    #[test]
    fn booleanize_chain() {
        let chain = crate::lattice::lattice_from_poset(&FinitePoset::chain(&["0", "1", "2"]).unwrap()).unwrap();
        let b = booleanize(&chain).unwrap();
        let bl = b.boole();
        assert_eq!(labels(bl), vec!["{}", "{1}", "{2}", "{1,2}"]);
        let j: Vec<&str> = (0..3).map(|a| bl.label(b.embed_j.apply(a))).collect();
        assert_eq!(j, vec!["{}", "{1}", "{1,2}"]);
        let jplus: Vec<&str> = (0..4).map(|s| chain.label(b.retract_jplus.apply(s))).collect();
        assert_eq!(jplus, vec!["0", "1", "2", "2"]);
        // the retraction is only a hemimorphism
        assert!(!b.retract_jplus.preserves_meets());
        let (one, two) = (bl.require("{1}").unwrap(), bl.require("{2}").unwrap());
        assert_eq!(chain.label(b.retract_jplus.apply(bl.meet(one, two))), "0");
        let m = chain.meet(b.retract_jplus.apply(one), b.retract_jplus.apply(two));
        assert_eq!(chain.label(m), "1");
    }

    /// `j⁺(S)` as the least `a` with `S ⊆ j(a)`, compared against the join.
    #[test]
    fn retraction_matches_least_cover() {
        for n in 0..=4 {
            for p in enumerate_posets(n).unwrap() {
                let d = downset_lattice(&p).unwrap();
                let l = d.lattice();
                let b = booleanize(l).unwrap();
                for s in 0..b.boole().len() {
                    let set = b.boole.set(s);
                    let covers: Vec<usize> = (0..l.len())
                        .filter(|&a| set.is_subset(b.boole.set(b.embed_j.apply(a))))
                        .collect();
                    let least = covers.iter().copied().find(|&a| covers.iter().all(|&c| l.leq(a, c))).unwrap();
                    assert_eq!(b.retract_jplus.apply(s), least);
                }
            }
        }
    }

    #[test]
    fn booleanize_boolean_and_trivial() {
        let b2 = downset_lattice(&FinitePoset::antichain(2)).unwrap();
        let b = booleanize(b2.lattice()).unwrap();
        assert_eq!(b.boole().len(), 4);
        assert!((0..4).all(|a| b.retract_jplus.apply(b.embed_j.apply(a)) == a));
        assert!((0..4).all(|s| b.embed_j.apply(b.retract_jplus.apply(s)) == s));
        let t = downset_lattice(&FinitePoset::antichain(0)).unwrap();
        assert_eq!(booleanize(t.lattice()).unwrap().boole().len(), 1);
    }

    #[test]
    fn dual_of_preimage_is_the_map() {
        for n in 0..=3 {
            for p in enumerate_posets(n).unwrap() {
                for m in 0..=2 {
                    for q in enumerate_posets(m).unwrap() {
                        let (dp, dq) = (spec_counit(&p).unwrap(), spec_counit(&q).unwrap());
                        for g in MonotoneMap::all(&p, &q) {
                            let h = preimage_homomorphism_between(&g, &dq.dual, &dp.dual).unwrap();
                            assert!(h.is_homomorphism());
                            let back = dual_map(&h).unwrap();
                            for x in 0..n {
                                let via = back.apply(dp.iso.forward[x]);
                                assert_eq!(dq.iso.backward[via], g.apply(x));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dual_map_rejects_hemimorphisms() {
        let d = downset_lattice(&FinitePoset::antichain(1)).unwrap();
        let zero = check_hemimorphism(d.lattice(), d.lattice(), vec![0, 0]).unwrap();
        assert!(matches!(dual_map(&zero), Err(Error::NotAHomomorphism(_))));
    }
}
