mod common;

use proptest::prelude::*;

use common::{all_distributors, compose, rel_of, subtract, Order};
use esakia::birkhoff::spec_counit;
use esakia::dist::all_distributors as library_distributors;
use esakia::karoubi::coheyting_via_split;
use esakia::sample::{random_distributor, random_poset, rng};
use esakia::vietoris::vietoris;
use esakia::{downset_lattice, FinitePoset};

fn mask(items: impl Iterator<Item = usize>) -> u32 {
    items.fold(0, |m, i| m | 1 << i)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn composition_is_associative_and_matches_the_scan(seed in any::<u64>(), sizes in (0usize..5, 0usize..5, 0usize..5, 0usize..5)) {
        let mut g = rng(seed);
        let (a, b, c, d) = sizes;
        let ps: Vec<FinitePoset> = [a, b, c, d].iter().map(|&n| random_poset(&mut g, n, 0.4)).collect();
        let r = random_distributor(&mut g, &ps[0], &ps[1], 0.3);
        let s = random_distributor(&mut g, &ps[1], &ps[2], 0.3);
        let t = random_distributor(&mut g, &ps[2], &ps[3], 0.3);
        let rs = esakia::compose(&r, &s).unwrap();
        prop_assert_eq!(rel_of(&rs), compose(&rel_of(&r), &rel_of(&s), c));
        let left = esakia::compose(&rs, &t).unwrap();
        let right = esakia::compose(&r, &esakia::compose(&s, &t).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn birkhoff_round_trip_and_subtraction(seed in any::<u64>(), n in 0usize..6, density in 0.0f64..0.8) {
        let p = random_poset(&mut rng(seed), n, density);
        let o = Order::of(&p);
        let counit = spec_counit(&p).unwrap();
        counit.iso.verify().unwrap();
        let dl = downset_lattice(&p).unwrap();
        let downs = o.down_sets();
        prop_assert_eq!(dl.len(), downs.len());
        let l = dl.lattice();
        for x in 0..l.len() {
            for y in 0..l.len() {
                let z = coheyting_via_split(l, x, y).unwrap();
                let want = subtract(&downs, mask(dl.set(x).ones()), mask(dl.set(y).ones()));
                prop_assert_eq!(mask(dl.set(z).ones()), want);
            }
        }
    }
}

#[test]
fn small_hom_set_sizes() {
    let chain2 = FinitePoset::chain(&["a", "b"]).unwrap();
    let anti2 = FinitePoset::antichain(2);
    for (x, y, want) in [(&chain2, &chain2, 6), (&anti2, &anti2, 16), (&chain2, &anti2, 9), (&anti2, &chain2, 9)] {
        assert_eq!(all_distributors(&Order::of(x), &Order::of(y)).len(), want);
        assert_eq!(library_distributors(x, y).len(), want);
    }
}

#[test]
fn small_construction_sizes() {
    let chain3 = FinitePoset::chain(&["a", "b", "c"]).unwrap();
    let vee = FinitePoset::new(&["p", "q", "r"], &[("p", "r"), ("q", "r")]).unwrap();
    assert_eq!(downset_lattice(&FinitePoset::antichain(3)).unwrap().len(), 8);
    assert_eq!(downset_lattice(&chain3).unwrap().len(), 4);
    assert_eq!(vietoris(&chain3).unwrap().len(), 4);
    assert_eq!(vietoris(&vee).unwrap().len(), 5);
    assert_eq!(vietoris(&FinitePoset::antichain(2)).unwrap().len(), 4);
}
