//! Splitting idempotent distributors, the patch presentation of a poset,
//! co-Heyting subtraction through the Booleanization, and p-morphisms.

use std::collections::HashMap;

use crate::birkhoff::{booleanize, downset_lattice, patch, Booleanization};
use crate::dist::{compose, halmos_dual_between, Distributor};
use crate::error::{Error, Result};
use crate::lattice::{lattice_from_poset, FinDistLattice, Hemimorphism};
use crate::poset::{set_of, FinitePoset, MonotoneMap};

/// An idempotent `e` on `X` factored as `forward: X ⇸ P` then `backward: P ⇸ X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitTriple {
    pub idem: Distributor,
    pub mid: FinitePoset,
    pub forward: Distributor,
    pub backward: Distributor,
}

impl SplitTriple {
    /// Checks `e;e = e`, `forward;backward = e` and `backward;forward = id_P`.
    pub fn verify(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::InternalVerificationFailure(format!("split: {what}")));
        if compose(&self.idem, &self.idem)? != self.idem {
            return fail("relation is not idempotent");
        }
        if compose(&self.forward, &self.backward)? != self.idem {
            return fail("forward then backward is not the idempotent");
        }
        if compose(&self.backward, &self.forward)? != Distributor::identity(&self.mid) {
            return fail("backward then forward is not the identity");
        }
        Ok(())
    }
}

fn require_endo(e: &Distributor) -> Result<()> {
    if e.source() != e.target() {
        return Err(Error::ObjectMismatch("expected a distributor from a poset to itself".into()));
    }
    Ok(())
}

pub fn is_idempotent(e: &Distributor) -> Result<bool> {
    require_endo(e)?;
    Ok(compose(e, e)? == *e)
}

fn require_idempotent(e: &Distributor) -> Result<()> {
    require_endo(e)?;
    let ee = compose(e, e)?;
    let x = e.source();
    for a in 0..x.len() {
        if let Some(b) = ee.row(a).symmetric_difference(e.row(a)).next() {
            return Err(Error::NotIdempotent { x: x.label(a).into(), y: x.label(b).into() });
        }
    }
    Ok(())
}

/// The idempotent in the cyclic monoid generated by `r`.
pub fn idempotent_power(r: &Distributor) -> Result<Distributor> {
    require_endo(r)?;
    // powers[k] = r^(k+1)
    let mut powers = vec![r.clone()];
    let mut seen: HashMap<Distributor, usize> = HashMap::from([(r.clone(), 0)]);
    let (start, period) = loop {
        let next = compose(powers.last().expect("nonempty"), r)?;
        if let Some(&k) = seen.get(&next) {
            break (k, powers.len() - k);
        }
        seen.insert(next.clone(), powers.len());
        powers.push(next);
    };
    // exponents start+1 .. start+period lie on the cycle; the idempotent is the multiple of the period
    let exponent = (start + 1..=start + period).find(|k| k % period == 0).expect("a full period contains a multiple");
    let e = powers[exponent - 1].clone();
    debug_assert_eq!(compose(&e, &e)?, e);
    Ok(e)
}

/// Splits `e` through the points of the fixpoint lattice of its dual.
pub fn split_idempotent(e: &Distributor) -> Result<SplitTriple> {
    require_idempotent(e)?;
    let x = e.source();
    let dx = downset_lattice(x)?;
    let h = halmos_dual_between(e, &dx, &dx)?;
    let fixed: Vec<usize> = (0..dx.len()).filter(|&b| h.apply(b) == b).collect();
    let m = lattice_from_poset(&dx.lattice().order().subposet(&fixed))?;
    let points: Vec<&fixedbitset::FixedBitSet> = m.irreducible_indices().into_iter().map(|i| dx.set(fixed[i])).collect();

    // each point is h(↓x) for some x in it; the first such x names it
    let generated: Vec<&fixedbitset::FixedBitSet> = (0..x.len()).map(|a| dx.set(h.apply(dx.principal(a)))).collect();
    let labels = points
        .iter()
        .map(|p| {
            (0..x.len())
                .find(|&a| generated[a] == *p)
                .map(|a| x.label(a).to_string())
                .ok_or_else(|| Error::InternalVerificationFailure("point not generated by an element".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let k = points.len();
    let up = (0..k).map(|i| set_of(k, (0..k).filter(|&j| points[i].is_subset(points[j])))).collect();
    let mid = FinitePoset::from_up_rows(labels, up)?;

    let forward_rows = (0..x.len()).map(|a| set_of(k, (0..k).filter(|&p| points[p].contains(a)))).collect();
    let backward_rows = (0..k)
        .map(|p| set_of(x.len(), (0..x.len()).filter(|&a| points[p].is_subset(generated[a]))))
        .collect();
    let triple = SplitTriple {
        idem: e.clone(),
        forward: Distributor::from_rows(x, &mid, forward_rows)?,
        backward: Distributor::from_rows(&mid, x, backward_rows)?,
        mid,
    };
    triple.verify()?;
    Ok(triple)
}

/// The order of `X` as an idempotent on its discrete patch, split through `X`
/// by the two graphs of the identity-carrier map `patch(X) → X`.
pub fn esakia_split_presentation(x: &FinitePoset) -> Result<SplitTriple> {
    let (discrete, i) = patch(x);
    let idem = Distributor::from_rows(&discrete, &discrete, (0..x.len()).map(|a| x.up_set(a).clone()).collect())?;
    let triple = SplitTriple {
        idem,
        mid: x.clone(),
        forward: crate::dist::graph_lower(&i),
        backward: crate::dist::graph_upper(&i),
    };
    triple.verify()?;
    Ok(triple)
}

/// `x ↣ y` computed as `j⁺(j(y) ∧ ¬j(x))`.
pub fn coheyting_via_split(l: &FinDistLattice, x: usize, y: usize) -> Result<usize> {
    Ok(coheyting_via_booleanization(&booleanize(l)?, x, y))
}

pub fn coheyting_via_booleanization(b: &Booleanization, x: usize, y: usize) -> usize {
    let boole = b.boole();
    let not_x = boole.complement(b.embed_j.apply(x)).expect("powerset lattice is complemented");
    b.retract_jplus.apply(boole.meet(b.embed_j.apply(y), not_x))
}

/// `None` if `g` lifts every `g(x) ≤ y` to some `x′ ≥ x` with `g(x′) = y`;
/// otherwise the first failing `(x, y)`.
pub fn p_morphism_check(g: &MonotoneMap) -> Option<(usize, usize)> {
    let (s, t) = (g.source(), g.target());
    (0..s.len()).find_map(|x| {
        let reached = g.image(s.up_set(x));
        t.up_set(g.apply(x)).difference(&reached).next().map(|y| (x, y))
    })
}

/// `None` if the homomorphism `f` commutes with subtraction; otherwise the first
/// failing `(x, y)`.
pub fn coheyting_preservation_check(f: &Hemimorphism) -> Result<Option<(usize, usize)>> {
    if !f.is_homomorphism() {
        return Err(Error::NotAHomomorphism("co-Heyting preservation needs a lattice homomorphism".into()));
    }
    let (s, t) = (f.source(), f.target());
    for x in 0..s.len() {
        for y in 0..s.len() {
            let lhs = f.apply(s.coheyting_subtract_bruteforce(x, y));
            let rhs = t.coheyting_subtract_bruteforce(f.apply(x), f.apply(y));
            if lhs != rhs {
                return Ok(Some((x, y)));
            }
        }
    }
    Ok(None)
}
