//! The up-set monad: up-sets under reverse inclusion, with `x ↦ ↑x` and union.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::birkhoff::DEFAULT_MAX_ELEMENTS;
use crate::dist::{compose, Distributor};
use crate::error::{Error, Result};
use crate::poset::{set_of, FinitePoset, MonotoneMap};

/// `V(X)`: the up-sets of `X`, `A ≤ B` iff `A ⊇ B`. The empty set is the top.
#[derive(Clone)]
pub struct Vietoris {
    base: FinitePoset,
    poset: FinitePoset,
    sets: Vec<FixedBitSet>,
    index: HashMap<FixedBitSet, usize>,
}

impl fmt::Debug for Vietoris {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Vietoris").field("base", &self.base).field("len", &self.sets.len()).finish()
    }
}

pub fn vietoris(x: &FinitePoset) -> Result<Vietoris> {
    vietoris_bounded(x, DEFAULT_MAX_ELEMENTS)
}

pub fn vietoris_bounded(x: &FinitePoset, max_elements: usize) -> Result<Vietoris> {
    let sets = x.upsets_bounded(max_elements).ok_or_else(|| Error::SizeOverflow {
        what: "up-set poset".into(),
        bound: max_elements,
    })?;
    let n = sets.len();
    let labels = sets.iter().map(|s| x.set_label(s)).collect();
    let up = (0..n).map(|i| set_of(n, (0..n).filter(|&j| sets[j].is_subset(&sets[i])))).collect();
    let poset = FinitePoset::from_up_rows_unchecked(labels, up);
    let index = sets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    Ok(Vietoris { base: x.clone(), poset, sets, index })
}

impl Vietoris {
    pub fn base(&self) -> &FinitePoset {
        &self.base
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn set(&self, i: usize) -> &FixedBitSet {
        &self.sets[i]
    }

    pub fn find(&self, set: &FixedBitSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    fn element(&self, set: &FixedBitSet) -> usize {
        self.index[set]
    }

    /// The empty up-set.
    pub fn top(&self) -> usize {
        self.element(&self.base.empty_subset())
    }
}

fn require_base(v: &Vietoris, p: &FinitePoset, what: &str) -> Result<()> {
    if v.base() != p {
        return Err(Error::ObjectMismatch(format!("{what} is not built over the expected poset")));
    }
    Ok(())
}

/// `Vf(A) = ↑f[A]`.
pub fn vietoris_map(f: &MonotoneMap, vx: &Vietoris, vy: &Vietoris) -> Result<MonotoneMap> {
    require_base(vx, f.source(), "source up-set poset")?;
    require_base(vy, f.target(), "target up-set poset")?;
    let assignment = vx.sets.iter().map(|a| vy.element(&f.target().up_closure(&f.image(a)))).collect();
    MonotoneMap::new(vx.poset.clone(), vy.poset.clone(), assignment)
}

/// `e_X(x) = ↑x`.
pub fn unit(vx: &Vietoris) -> MonotoneMap {
    let x = vx.base();
    let assignment = (0..x.len()).map(|i| vx.element(x.up_set(i))).collect();
    MonotoneMap::new_unchecked(x.clone(), vx.poset.clone(), assignment)
}

/// `m_X(𝒜) = ⋃𝒜`, from `V(V(X))` to `V(X)`.
pub fn mult(vx: &Vietoris, vvx: &Vietoris) -> Result<MonotoneMap> {
    require_base(vvx, vx.poset(), "double up-set poset")?;
    let assignment = vvx
        .sets
        .iter()
        .map(|family| {
            let mut u = vx.base.empty_subset();
            for a in family.ones() {
                u.union_with(&vx.sets[a]);
            }
            vx.element(&u)
        })
        .collect();
    MonotoneMap::new(vvx.poset.clone(), vx.poset.clone(), assignment)
}

#[derive(Clone, Debug)]
pub struct MonadStructure {
    pub unit: MonotoneMap,
    pub mult: MonotoneMap,
}

pub fn monad_structure(vx: &Vietoris, vvx: &Vietoris) -> Result<MonadStructure> {
    let e = unit(vx);
    MonotoneMap::new(e.source().clone(), e.target().clone(), e.assignment().to_vec())?;
    Ok(MonadStructure { unit: e, mult: mult(vx, vvx)? })
}

/// Outcome of the three monad laws on one poset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonadLaws {
    /// `m ∘ V(e) = id`.
    pub left_unit: bool,
    /// `m ∘ e_V = id`.
    pub right_unit: bool,
    /// `m ∘ V(m) = m ∘ m_V`.
    pub associative: bool,
}

impl MonadLaws {
    pub fn all_hold(&self) -> bool {
        self.left_unit && self.right_unit && self.associative
    }
}

pub fn monad_law_check(x: &FinitePoset) -> Result<MonadLaws> {
    let vx = vietoris(x)?;
    let vvx = vietoris(vx.poset())?;
    let vvvx = vietoris(vvx.poset())?;
    let m = mult(&vx, &vvx)?;
    let m_v = mult(&vvx, &vvvx)?;
    let id = MonotoneMap::identity(vx.poset());
    let left_unit = vietoris_map(&unit(&vx), &vx, &vvx)?.then(&m)? == id;
    let right_unit = unit(&vvx).then(&m)? == id;
    let associative = vietoris_map(&m, &vvvx, &vvx)?.then(&m)? == m_v.then(&m)?;
    Ok(MonadLaws { left_unit, right_unit, associative })
}

/// `e_{VX}(A) ≤ V(e_X)(A)` in `V(V(X))` for every `A`.
pub fn kz_check(x: &FinitePoset) -> Result<bool> {
    let vx = vietoris(x)?;
    let vvx = vietoris(vx.poset())?;
    kz_check_with(&vx, &vvx)
}

pub fn kz_check_with(vx: &Vietoris, vvx: &Vietoris) -> Result<bool> {
    let e_v = unit(vvx);
    let ve = vietoris_map(&unit(vx), vx, vvx)?;
    Ok((0..vx.len()).all(|a| vvx.poset().leq(e_v.apply(a), ve.apply(a))))
}

/// `r̂: X → V(Y)`, `x ↦ {y : x r y}`.
pub fn to_kleisli(r: &Distributor, vy: &Vietoris) -> Result<MonotoneMap> {
    require_base(vy, r.target(), "up-set poset")?;
    let assignment = r.rows().iter().map(|row| vy.element(row)).collect();
    MonotoneMap::new(r.source().clone(), vy.poset.clone(), assignment)
}

pub fn from_kleisli(k: &MonotoneMap, vy: &Vietoris) -> Result<Distributor> {
    if k.target() != vy.poset() {
        return Err(Error::ObjectMismatch("map does not land in this up-set poset".into()));
    }
    let rows = k.assignment().iter().map(|&i| vy.sets[i].clone()).collect();
    Distributor::from_rows(k.source(), vy.base(), rows)
}

/// Kleisli composite `m ∘ V(ŝ) ∘ r̂: X → V(Z)`.
pub fn kleisli_compose(r_hat: &MonotoneMap, s_hat: &MonotoneMap, vy: &Vietoris, vz: &Vietoris, vvz: &Vietoris) -> Result<MonotoneMap> {
    let lifted = vietoris_map(s_hat, vy, vvz)?;
    r_hat.then(&lifted)?.then(&mult(vz, vvz)?)
}

/// Whether the Kleisli composite agrees with relational composition for this pair.
pub fn kleisli_agrees(r: &Distributor, s: &Distributor) -> Result<bool> {
    let (vy, vz) = (vietoris(r.target())?, vietoris(s.target())?);
    let vvz = vietoris(vz.poset())?;
    let k = kleisli_compose(&to_kleisli(r, &vy)?, &to_kleisli(s, &vz)?, &vy, &vz, &vvz)?;
    Ok(from_kleisli(&k, &vz)? == compose(r, s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{all_distributors, identity};
    use crate::poset::enumerate_posets;

    fn names(v: &Vietoris) -> Vec<&str> {
        (0..v.len()).map(|i| v.poset().label(i)).collect()
    }

    #[test]
    fn small_vietoris_posets() {
        let v = vietoris(&FinitePoset::antichain(0)).unwrap();
        assert_eq!(v.len(), 1);
        let v = vietoris(&FinitePoset::discrete(&["x"]).unwrap()).unwrap();
        let (full, empty) = (v.find(&v.base().full_subset()).unwrap(), v.top());
        assert!(v.poset().lt(full, empty));
        let c = FinitePoset::chain(&["a", "b"]).unwrap();
        let v = vietoris(&c).unwrap();
        assert_eq!(names(&v), vec!["{}", "{b}", "{a,b}"]);
        assert!(v.poset().lt(2, 1) && v.poset().lt(1, 0));
    }

    #[test]
    fn map_examples() {
        let c = FinitePoset::chain(&["a", "b"]).unwrap();
        let v = vietoris(&c).unwrap();
        let id = vietoris_map(&MonotoneMap::identity(&c), &v, &v).unwrap();
        assert_eq!(id, MonotoneMap::identity(v.poset()));
        let top = vietoris_map(&MonotoneMap::constant(&c, &c, 1), &v, &v).unwrap();
        assert_eq!(v.poset().label(top.apply(v.find(&c.full_subset()).unwrap())), "{b}");
    }

    #[test]
    fn unit_and_mult_examples() {
        let s = FinitePoset::discrete(&["x"]).unwrap();
        let vs = vietoris(&s).unwrap();
        assert_eq!(vs.poset().label(unit(&vs).apply(0)), "{x}");
        let c = FinitePoset::chain(&["a", "b"]).unwrap();
        let vc = vietoris(&c).unwrap();
        let e = unit(&vc);
        assert_eq!((vc.poset().label(e.apply(0)), vc.poset().label(e.apply(1))), ("{a,b}", "{b}"));

        let vvs = vietoris(vs.poset()).unwrap();
        let m = mult(&vs, &vvs).unwrap();
        let table: Vec<(&str, &str)> =
            (0..vvs.len()).map(|i| (vvs.poset().label(i), vs.poset().label(m.apply(i)))).collect();
        // V(singleton) is {x} < {}; its up-sets are {}, {{}}, {{x},{}}
        assert_eq!(table, vec![("{}", "{}"), ("{{}}", "{}"), ("{{},{x}}", "{x}")]);
    }

    #[test]
    fn laws_hold_on_small_posets() {
        for n in 0..=2 {
            for p in enumerate_posets(n).unwrap() {
                assert!(monad_law_check(&p).unwrap().all_hold());
                assert!(kz_check(&p).unwrap());
            }
        }
    }

    #[test]
    fn functorial_on_small_posets() {
        let ps: Vec<FinitePoset> = (0..=3).flat_map(|n| crate::poset::poset_iso_classes(n).unwrap()).collect();
        let vs: Vec<Vietoris> = ps.iter().map(|p| vietoris(p).unwrap()).collect();
        for (x, vx) in ps.iter().zip(&vs) {
            for (y, vy) in ps.iter().zip(&vs) {
                for f in MonotoneMap::all(x, y) {
                    let vf = vietoris_map(&f, vx, vy).unwrap();
                    for (z, vz) in ps.iter().zip(&vs) {
                        for g in MonotoneMap::all(y, z) {
                            let vg = vietoris_map(&g, vy, vz).unwrap();
                            assert_eq!(vietoris_map(&f.then(&g).unwrap(), vx, vz).unwrap(), vf.then(&vg).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn kleisli_examples() {
        let c = FinitePoset::chain(&["a", "b"]).unwrap();
        let vc = vietoris(&c).unwrap();
        assert_eq!(to_kleisli(&identity(&c), &vc).unwrap(), unit(&vc));
        let k = to_kleisli(&Distributor::empty(&c, &c), &vc).unwrap();
        assert!(k.assignment().iter().all(|&i| i == vc.top()));
    }

    #[test]
    fn kleisli_round_trip_small() {
        let ps: Vec<FinitePoset> = (0..=2).flat_map(|n| enumerate_posets(n).unwrap()).collect();
        for x in &ps {
            for y in &ps {
                let vy = vietoris(y).unwrap();
                for r in all_distributors(x, y) {
                    assert_eq!(from_kleisli(&to_kleisli(&r, &vy).unwrap(), &vy).unwrap(), r);
                    for z in ps.iter().filter(|z| z.len() <= 1) {
                        for s in all_distributors(y, z) {
                            assert!(kleisli_agrees(&r, &s).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn size_guard() {
        let err = vietoris_bounded(&FinitePoset::antichain(3), 7).unwrap_err();
        assert!(matches!(err, Error::SizeOverflow { .. }));
    }
}
