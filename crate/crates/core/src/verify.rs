//! The batch verification suite behind `esakia verify`.

use std::fmt;

use rand::Rng;

use crate::birkhoff::{booleanize, downset_lattice, dual_map, spec_counit, spec_unit, DownsetLattice};
use crate::dist::{
    adjoint_to_map, all_distributors, check_adjoint, compose, downwards_open_report, graph_lower, graph_upper,
    halmos_dual_between, halmos_inv, identity, Distributor,
};
use crate::error::{Error, Result};
use crate::karoubi::{
    coheyting_preservation_check, coheyting_via_booleanization, esakia_split_presentation, idempotent_power,
    is_idempotent, p_morphism_check, split_idempotent,
};
use crate::lattice::{check_hemimorphism, FinDistLattice, Hemimorphism};
use crate::poset::{enumerate_posets, poset_iso_classes, FinitePoset, MonotoneMap};
use crate::sample;
use crate::vietoris::{
    from_kleisli, kleisli_agrees, kz_check_with, monad_law_check, to_kleisli, vietoris, vietoris_map,
};

/// Largest accepted `max_size`.
pub const MAX_VERIFY_SIZE: usize = 5;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub max_size: usize,
    pub seed: u64,
    /// Random instances per randomized property.
    pub samples: usize,
    /// Flip one bit of the built-in splitting fixture.
    pub inject_mutant: bool,
}

impl VerifyOptions {
    pub fn new(max_size: usize, seed: u64) -> Self {
        VerifyOptions { max_size, seed, samples: 100, inject_mutant: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyResult {
    pub name: &'static str,
    pub cases: usize,
    pub counterexample: Option<String>,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub max_size: usize,
    pub seed: u64,
    pub results: Vec<PropertyResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.results.iter().all(PropertyResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyResult> {
        self.results.iter().filter(|r| !r.passed())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verify max-size={} seed={}", self.max_size, self.seed)?;
        for r in &self.results {
            match &r.counterexample {
                None => writeln!(f, "PASS {} ({} cases)", r.name, r.cases)?,
                Some(w) => writeln!(f, "FAIL {} after {} cases: {}", r.name, r.cases, w)?,
            }
        }
        let failed = self.failures().count();
        writeln!(f, "{} properties, {} failed", self.results.len(), failed)
    }
}

/// Counts cases and keeps the first counterexample.
#[derive(Default)]
struct Check {
    cases: usize,
    witness: Option<String>,
}

impl Check {
    fn case(&mut self, ok: bool, witness: impl FnOnce() -> String) -> bool {
        self.cases += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
        self.witness.is_none()
    }
}

fn labelled(max: usize) -> Result<Vec<FinitePoset>> {
    let mut out = Vec::new();
    for n in 0..=max {
        out.extend(enumerate_posets(n)?);
    }
    Ok(out)
}

fn reps(max: usize) -> Result<Vec<FinitePoset>> {
    let mut out = Vec::new();
    for n in 0..=max {
        out.extend(poset_iso_classes(n)?);
    }
    Ok(out)
}

fn show(p: &FinitePoset) -> String {
    let covers: Vec<String> = p.hasse_labels().into_iter().map(|(a, b)| format!("{a}<{b}")).collect();
    format!("poset {{{}}} with covers [{}]", p.labels().join(","), covers.join(","))
}

fn show_rel(r: &Distributor) -> String {
    let pairs: Vec<String> = r.label_pairs().into_iter().map(|(a, b)| format!("({a},{b})")).collect();
    format!("relation [{}] on {}", pairs.join(","), show(r.source()))
}

/// Every hemimorphism `s → t`, from all choices of values on the join-irreducibles of `s`.
pub fn all_hemimorphisms(s: &FinDistLattice, t: &FinDistLattice) -> Vec<Hemimorphism> {
    let js = s.irreducible_indices();
    let mut out = Vec::new();
    let mut choice = vec![0usize; js.len()];
    loop {
        let assignment: Vec<usize> = (0..s.len())
            .map(|a| t.join_all(js.iter().zip(&choice).filter(|(&j, _)| s.leq(j, a)).map(|(_, &v)| v)))
            .collect();
        // distinct choices can extend to the same map; keep the one it restricts to
        let restricts = js.iter().zip(&choice).all(|(&j, &v)| assignment[j] == v);
        if restricts {
            if let Ok(h) = check_hemimorphism(s, t, assignment) {
                out.push(h);
            }
        }
        // odometer over t^|J|
        let mut k = 0;
        while k < choice.len() && choice[k] + 1 == t.len() {
            choice[k] = 0;
            k += 1;
        }
        if k == choice.len() {
            break;
        }
        choice[k] += 1;
    }
    out
}

/// The smallest poset through which `e` splits, by exhaustive search over
/// isomorphism classes and distributor pairs.
pub fn minimal_splitting(e: &Distributor) -> Result<Option<FinitePoset>> {
    let x = e.source();
    for n in 0..=x.len() {
        for p in poset_iso_classes(n)? {
            let fs: Vec<Distributor> =
                all_distributors(x, &p).into_iter().filter(|f| compose(e, f).is_ok_and(|c| c == *f)).collect();
            let bs: Vec<Distributor> =
                all_distributors(&p, x).into_iter().filter(|b| compose(b, e).is_ok_and(|c| c == *b)).collect();
            let id = identity(&p);
            for f in &fs {
                for b in &bs {
                    if compose(f, b)? == *e && compose(b, f)? == id {
                        return Ok(Some(p));
                    }
                }
            }
        }
    }
    Ok(None)
}

struct Ctx {
    s: usize,
    seed: u64,
    samples: usize,
    mutant: bool,
}

type Property = (&'static str, fn(&Ctx, &mut Check) -> Result<()>);

const PROPERTIES: &[Property] = &[
    ("poset.order_dual_involution", order_dual_involution),
    ("poset.hasse_regenerates_order", hasse_regenerates_order),
    ("poset.down_closure_is_closure_operator", down_closure_operator),
    ("lattice.subtraction_adjunction", subtraction_adjunction),
    ("lattice.boolean_irreducibles", boolean_irreducibles),
    ("lattice.hemimorphism_flags", hemimorphism_flags),
    ("birkhoff.round_trip", birkhoff_round_trip),
    ("birkhoff.booleanization", booleanization),
    ("dist.category_laws", category_laws),
    ("dist.graph_functoriality", graph_functoriality),
    ("dist.adjunction_soundness", adjunction_soundness),
    ("dist.adjunction_completeness", adjunction_completeness),
    ("dist.downwards_open_degenerates", downwards_open),
    ("dist.halmos_dual_equivalence", halmos_equivalence),
    ("vietoris.monad_laws", monad_laws),
    ("vietoris.kz_inequality", kz_inequality),
    ("vietoris.functoriality", vietoris_functoriality),
    ("vietoris.kleisli_correspondence", kleisli_correspondence),
    ("karoubi.split_soundness", split_soundness),
    ("karoubi.split_uniqueness", split_uniqueness),
    ("karoubi.coheyting_via_split", coheyting_split),
    ("karoubi.pmorphism_equivalence", pmorphism_equivalence),
    ("karoubi.esakia_presentation", esakia_presentation),
    ("fixture.split_chain", fixture_split_chain),
];

pub fn property_names() -> impl Iterator<Item = &'static str> {
    PROPERTIES.iter().map(|(n, _)| *n)
}

pub fn verify_suite(max_size: usize, seed: u64) -> Result<Report> {
    verify_suite_with(&VerifyOptions::new(max_size, seed))
}

pub fn verify_suite_with(options: &VerifyOptions) -> Result<Report> {
    if options.max_size > MAX_VERIFY_SIZE {
        return Err(Error::BoundExceeded { requested: options.max_size, bound: MAX_VERIFY_SIZE });
    }
    let ctx = Ctx { s: options.max_size, seed: options.seed, samples: options.samples, mutant: options.inject_mutant };
    let results = PROPERTIES
        .iter()
        .map(|(name, run)| {
            let mut check = Check::default();
            if let Err(e) = run(&ctx, &mut check) {
                check.witness.get_or_insert_with(|| format!("error: {e}"));
            }
            PropertyResult { name, cases: check.cases, counterexample: check.witness }
        })
        .collect();
    Ok(Report { max_size: options.max_size, seed: options.seed, results })
}

fn order_dual_involution(c: &Ctx, k: &mut Check) -> Result<()> {
    for p in labelled(c.s)? {
        if !k.case(p.order_dual().order_dual() == p, || show(&p)) {
            break;
        }
    }
    Ok(())
}

fn hasse_regenerates_order(c: &Ctx, k: &mut Check) -> Result<()> {
    for p in labelled(c.s.min(4))? {
        let q = FinitePoset::new(p.labels(), &p.hasse_labels())?;
        if !k.case(q == p, || show(&p)) {
            break;
        }
    }
    Ok(())
}

fn down_closure_operator(c: &Ctx, k: &mut Check) -> Result<()> {
    for p in labelled(c.s.min(4))? {
        let n = p.len();
        let subsets: Vec<_> = (0u32..1 << n).map(|m| p.subset((0..n).filter(|i| m >> i & 1 == 1))).collect();
        for a in &subsets {
            let ca = p.down_closure(a);
            let ok = a.is_subset(&ca)
                && p.down_closure(&ca) == ca
                && subsets.iter().filter(|b| a.is_subset(b)).all(|b| ca.is_subset(&p.down_closure(b)));
            if !k.case(ok, || format!("{} at {}", show(&p), p.set_label(a))) {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn subtraction_adjunction(c: &Ctx, k: &mut Check) -> Result<()> {
    for p in labelled(c.s.min(4))? {
        let d = downset_lattice(&p)?;
        let l = d.lattice();
        for x in 0..l.len() {
            for y in 0..l.len() {
                let s = l.coheyting_subtract_bruteforce(x, y);
                let ok = (0..l.len()).all(|z| l.leq(y, l.join(x, z)) == l.leq(s, z));
                if !k.case(ok, || format!("D({}) at x={} y={}", show(&p), l.label(x), l.label(y))) {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

fn boolean_irreducibles(c: &Ctx, k: &mut Check) -> Result<()> {
    for n in 0..=c.s {
        let d = downset_lattice(&FinitePoset::antichain(n))?;
        let j = d.lattice().join_irreducibles();
        let ok = j.is_discrete() && 1usize << j.len() == d.len();
        if !k.case(ok, || format!("powerset of {n} points")) {
            break;
        }
    }
    Ok(())
}

fn hemimorphism_flags(c: &Ctx, k: &mut Check) -> Result<()> {
    let lats: Vec<DownsetLattice> = reps(c.s.min(2))?.iter().map(downset_lattice).collect::<Result<_>>()?;
    for s in &lats {
        for t in &lats {
            let (s, t) = (s.lattice(), t.lattice());
            let total = t.len().pow(s.len() as u32);
            for code in 0..total {
                let a: Vec<usize> = (0..s.len()).map(|i| code / t.len().pow(i as u32) % t.len()).collect();
                let f = |x: usize| a[x];
                let joins = f(s.bottom()) == t.bottom()
                    && (0..s.len()).all(|x| (0..s.len()).all(|y| f(s.join(x, y)) == t.join(f(x), f(y))));
                let meets = (0..s.len()).all(|x| (0..s.len()).all(|y| f(s.meet(x, y)) == t.meet(f(x), f(y))));
                let ok = match check_hemimorphism(s, t, a.clone()) {
                    Ok(h) => joins && h.preserves_meets() == meets && h.preserves_top() == (f(s.top()) == t.top()),
                    Err(_) => !joins,
                };
                if !k.case(ok, || format!("assignment {a:?}")) {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

fn birkhoff_round_trip(c: &Ctx, k: &mut Check) -> Result<()> {
    let mut posets = labelled(c.s.min(4))?;
    if c.s >= 5 {
        let mut rng = sample::rng(c.seed);
        for _ in 0..c.samples {
            let density = rng.gen_range(0.1..0.7);
            posets.push(sample::random_poset(&mut rng, 5, density));
        }
    }
    for p in posets {
        let ok = spec_counit(&p).and_then(|cu| spec_unit(cu.dual.lattice())).is_ok();
        if !k.case(ok, || show(&p)) {
            break;
        }
    }
    Ok(())
}

fn booleanization(c: &Ctx, k: &mut Check) -> Result<()> {
    for p in labelled(c.s.min(4))? {
        let d = downset_lattice(&p)?;
        let l = d.lattice();
        let b = booleanize(l)?;
        let bl = b.boole();
        let ok = b.embed_j.is_homomorphism()
            && bl.is_boolean()
            && (0..l.len()).all(|a| b.retract_jplus.apply(b.embed_j.apply(a)) == a)
            && (0..bl.len())
                .all(|s| (0..l.len()).all(|a| l.leq(b.retract_jplus.apply(s), a) == bl.leq(s, b.embed_j.apply(a))));
        if !k.case(ok, || format!("D({})", show(&p))) {
            return Ok(());
        }
    }
    // the retraction drops meets on the three-element chain
    let chain = downset_lattice(&FinitePoset::chain_of(2))?;
    let b = booleanize(chain.lattice())?;
    k.case(!b.retract_jplus.preserves_meets(), || "retraction preserves meets on the 3-chain".into());
    Ok(())
}

fn category_laws(c: &Ctx, k: &mut Check) -> Result<()> {
    let ps = reps(c.s.min(3))?;
    let mut rng = sample::rng(c.seed ^ 0x5eed);
    for x in &ps {
        for y in &ps {
            let rs = all_distributors(x, y);
            for r in &rs {
                let ok = compose(&identity(x), r)? == *r && compose(r, &identity(y))? == *r;
                if !k.case(ok, || show_rel(r)) {
                    return Ok(());
                }
            }
            for z in &ps {
                let ss = all_distributors(y, z);
                for w in &ps {
                    let ts = all_distributors(z, w);
                    let exhaustive = x.len() + y.len() + z.len() + w.len() <= 5;
                    let rounds = if exhaustive { rs.len() * ss.len() * ts.len() } else { 4 };
                    for i in 0..rounds {
                        let (r, s, t) = if exhaustive {
                            (&rs[i % rs.len()], &ss[i / rs.len() % ss.len()], &ts[i / (rs.len() * ss.len())])
                        } else {
                            (
                                &rs[rng.gen_range(0..rs.len())],
                                &ss[rng.gen_range(0..ss.len())],
                                &ts[rng.gen_range(0..ts.len())],
                            )
                        };
                        let ok = compose(&compose(r, s)?, t)? == compose(r, &compose(s, t)?)?;
                        if !k.case(ok, || format!("{} ; {} ; {}", show_rel(r), show_rel(s), show_rel(t))) {
                            return Ok(());
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn graph_functoriality(c: &Ctx, k: &mut Check) -> Result<()> {
    let ps = reps(c.s.min(3))?;
    for x in &ps {
        for y in &ps {
            let fs = MonotoneMap::all(x, y);
            for z in &ps {
                let gs = MonotoneMap::all(y, z);
                for f in &fs {
                    for g in &gs {
                        let gf = f.then(g)?;
                        let ok = compose(&graph_lower(f), &graph_lower(g))? == graph_lower(&gf)
                            && compose(&graph_upper(g), &graph_upper(f))? == graph_upper(&gf);
                        if !k.case(ok, || format!("{f:?} then {g:?}")) {
                            return Ok(());
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn adjunction_soundness(c: &Ctx, k: &mut Check) -> Result<()> {
    let ps = reps(c.s.min(4))?;
    for x in &ps {
        for y in &ps {
            for f in MonotoneMap::all(x, y) {
                let (lo, up) = (graph_lower(&f), graph_upper(&f));
                let w = check_adjoint(&lo, &up)?;
                let ok = w.is_none() && (x.len() > 3 || y.len() > 3 || adjoint_to_map(&lo, &up)? == f);
                if !k.case(ok, || format!("{f:?}: {}", w.map(|w| w.to_string()).unwrap_or_else(|| "not recovered".into()))) {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

fn adjunction_completeness(c: &Ctx, k: &mut Check) -> Result<()> {
    let ps = reps(c.s.min(2))?;
    for x in &ps {
        for y in &ps {
            let maps = MonotoneMap::all(x, y);
            let mut found = 0;
            let backs = all_distributors(y, x);
            for phi in all_distributors(x, y) {
                for psi in &backs {
                    if check_adjoint(&phi, psi)?.is_none() {
                        found += 1;
                        let ok = adjoint_to_map(&phi, psi).is_ok_and(|f| maps.contains(&f));
                        if !k.case(ok, || format!("{} with {}", show_rel(&phi), show_rel(psi))) {
                            return Ok(());
                        }
                    }
                }
            }
            if !k.case(found == maps.len(), || format!("{found} adjunctions but {} maps from {}", maps.len(), show(x))) {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn downwards_open(c: &Ctx, k: &mut Check) -> Result<()> {
    let ps = reps(c.s.min(3))?;
    for x in &ps {
        for y in &ps {
            for f in MonotoneMap::all(x, y) {
                let r = downwards_open_report(&f)?;
                if !k.case(r.all_hold() && r.agree(), || format!("{f:?}: {r:?}")) {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

fn halmos_equivalence(c: &Ctx, k: &mut Check) -> Result<()> {
    let ps = reps(c.s.min(3))?;
    let ds: Vec<DownsetLattice> = ps.iter().map(downset_lattice).collect::<Result<_>>()?;
    let mut rng = sample::rng(c.seed ^ 0x4a1);
    for (x, dx) in ps.iter().zip(&ds) {
        let id = halmos_dual_between(&identity(x), dx, dx)?;
        if !k.case(id == Hemimorphism::identity(dx.lattice()), || format!("identity on {}", show(x))) {
            return Ok(());
        }
        for (y, dy) in ps.iter().zip(&ds) {
            let rs = all_distributors(x, y);
            let hs = all_hemimorphisms(dy.lattice(), dx.lattice());
            if !k.case(rs.len() == hs.len(), || format!("{} distributors, {} hemimorphisms", rs.len(), hs.len())) {
                return Ok(());
            }
            for r in &rs {
                let ok = halmos_inv(&halmos_dual_between(r, dy, dx)?, dy, dx)? == *r;
                if !k.case(ok, || show_rel(r)) {
                    return Ok(());
                }
            }
            for h in &hs {
                let ok = halmos_dual_between(&halmos_inv(h, dy, dx)?, dy, dx)? == *h;
                if !k.case(ok, || format!("{h:?}")) {
                    return Ok(());
                }
            }
            for (z, dz) in ps.iter().zip(&ds) {
                let ss = all_distributors(y, z);
                let exhaustive = x.len() + y.len() + z.len() <= 6;
                let rounds = if exhaustive { rs.len() * ss.len() } else { 16 };
                for i in 0..rounds {
                    let (r, s) = if exhaustive {
                        (&rs[i % rs.len()], &ss[i / rs.len()])
                    } else {
                        (&rs[rng.gen_range(0..rs.len())], &ss[rng.gen_range(0..ss.len())])
                    };
                    let lhs = halmos_dual_between(&compose(r, s)?, dz, dx)?;
                    let rhs = halmos_dual_between(s, dz, dy)?.then(&halmos_dual_between(r, dy, dx)?)?;
                    if !k.case(lhs == rhs, || format!("{} then {}", show_rel(r), show_rel(s))) {
                        return Ok(());
                    }
                }
            }
        }
    }
    Ok(())
}

fn monad_laws(c: &Ctx, k: &mut Check) -> Result<()> {
    for p in labelled(c.s.min(3))? {
        let laws = monad_law_check(&p)?;
        if !k.case(laws.all_hold(), || format!("{}: {laws:?}", show(&p))) {
            break;
        }
    }
    Ok(())
}

fn kz_inequality(c: &Ctx, k: &mut Check) -> Result<()> {
    for p in labelled(c.s.min(3))? {
        let vx = vietoris(&p)?;
        let vvx = vietoris(vx.poset())?;
        if !k.case(kz_check_with(&vx, &vvx)?, || show(&p)) {
            break;
        }
    }
    Ok(())
}

fn vietoris_functoriality(c: &Ctx, k: &mut Check) -> Result<()> {
    let ps = reps(c.s.min(3))?;
    let vs = ps.iter().map(vietoris).collect::<Result<Vec<_>>>()?;
    for (x, vx) in ps.iter().zip(&vs) {
        if !k.case(vietoris_map(&MonotoneMap::identity(x), vx, vx)? == MonotoneMap::identity(vx.poset()), || show(x)) {
            return Ok(());
        }
        for (y, vy) in ps.iter().zip(&vs) {
            for f in MonotoneMap::all(x, y) {
                let vf = vietoris_map(&f, vx, vy)?;
                for (z, vz) in ps.iter().zip(&vs) {
                    for g in MonotoneMap::all(y, z) {
                        let ok = vietoris_map(&f.then(&g)?, vx, vz)? == vf.then(&vietoris_map(&g, vy, vz)?)?;
                        if !k.case(ok, || format!("{f:?} then {g:?}")) {
                            return Ok(());
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn kleisli_correspondence(c: &Ctx, k: &mut Check) -> Result<()> {
    let ps = labelled(c.s.min(2))?;
    for x in &ps {
        for y in &ps {
            let vy = vietoris(y)?;
            for r in all_distributors(x, y) {
                let ok = from_kleisli(&to_kleisli(&r, &vy)?, &vy)? == r;
                if !k.case(ok, || show_rel(&r)) {
                    return Ok(());
                }
                for z in &ps {
                    for s in all_distributors(y, z) {
                        if !k.case(kleisli_agrees(&r, &s)?, || format!("{} then {}", show_rel(&r), show_rel(&s))) {
                            return Ok(());
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Every idempotent relation on a discrete set of each size up to `max`.
pub fn discrete_idempotents(max: usize) -> Vec<Distributor> {
    let mut out = Vec::new();
    for n in 0..=max {
        let x = FinitePoset::antichain(n);
        for r in all_distributors(&x, &x) {
            if is_idempotent(&r).unwrap_or(false) {
                out.push(r);
            }
        }
    }
    out
}

fn split_soundness(c: &Ctx, k: &mut Check) -> Result<()> {
    for e in discrete_idempotents(c.s.min(3)) {
        if !k.case(split_idempotent(&e).is_ok(), || show_rel(&e)) {
            return Ok(());
        }
    }
    let mut rng = sample::rng(c.seed ^ 0x1de);
    for size in 4..=c.s {
        let x = FinitePoset::antichain(size);
        for _ in 0..c.samples {
            let density = rng.gen_range(0.05..0.5);
            let e = idempotent_power(&sample::random_distributor(&mut rng, &x, &x, density))?;
            if !k.case(split_idempotent(&e).is_ok(), || show_rel(&e)) {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn split_uniqueness(c: &Ctx, k: &mut Check) -> Result<()> {
    for e in discrete_idempotents(c.s.min(2)) {
        let mid = split_idempotent(&e)?.mid;
        let ok = minimal_splitting(&e)?.is_some_and(|p| p.is_isomorphic(&mid));
        if !k.case(ok, || show_rel(&e)) {
            break;
        }
    }
    Ok(())
}

fn coheyting_split(c: &Ctx, k: &mut Check) -> Result<()> {
    for p in labelled(c.s.min(4))? {
        let d = downset_lattice(&p)?;
        let l = d.lattice();
        let b = booleanize(l)?;
        for x in 0..l.len() {
            for y in 0..l.len() {
                let ok = coheyting_via_booleanization(&b, x, y) == l.coheyting_subtract_bruteforce(x, y);
                if !k.case(ok, || format!("D({}) at x={} y={}", show(&p), l.label(x), l.label(y))) {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

fn pmorphism_equivalence(c: &Ctx, k: &mut Check) -> Result<()> {
    let ps = reps(c.s.min(3))?;
    let ds: Vec<DownsetLattice> = ps.iter().map(downset_lattice).collect::<Result<_>>()?;
    for d2 in &ds {
        for d1 in &ds {
            for f in all_hemimorphisms(d2.lattice(), d1.lattice()) {
                if !f.is_homomorphism() {
                    continue;
                }
                let g = dual_map(&f)?;
                let ok = p_morphism_check(&g).is_none() == coheyting_preservation_check(&f)?.is_none();
                if !k.case(ok, || format!("{f:?}")) {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

fn esakia_presentation(c: &Ctx, k: &mut Check) -> Result<()> {
    for p in labelled(c.s.min(4))? {
        let ok = esakia_split_presentation(&p)
            .and_then(|t| split_idempotent(&t.idem))
            .is_ok_and(|t| t.mid.is_isomorphic(&p));
        if !k.case(ok, || show(&p)) {
            break;
        }
    }
    Ok(())
}

/// The relation `x ≤ y` on the discrete set `{x, y}` splits through the chain `x < y`.
fn fixture_split_chain(c: &Ctx, k: &mut Check) -> Result<()> {
    let d = FinitePoset::discrete(&["x", "y"])?;
    let mut rows = vec![d.subset([0, 1]), d.subset([1])];
    if c.mutant {
        rows[0].toggle(1);
    }
    let e = Distributor::from_rows_unchecked(&d, &d, rows);
    let chain = FinitePoset::chain(&["x", "y"])?;
    let carrier = MonotoneMap::new(d.clone(), chain, vec![0, 1])?;
    let through = compose(&graph_lower(&carrier), &graph_upper(&carrier))?;
    let diff = (0..2).flat_map(|a| (0..2).map(move |b| (a, b))).find(|&(a, b)| e.related(a, b) != through.related(a, b));
    k.case(diff.is_none(), || {
        let (a, b) = diff.expect("difference");
        format!("fixture pair ({},{}) disagrees with the chain splitting", d.label(a), d.label(b))
    });
    Ok(())
}
