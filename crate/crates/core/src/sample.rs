//! Seeded random posets and relations.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dist::{Distributor, Mode};
use crate::poset::{default_label, set_of, FinitePoset};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A poset on `n` points: each pair `i < j` of a shuffled order is an edge
/// with probability `density`, then closed transitively.
pub fn random_poset(rng: &mut SampleRng, n: usize, density: f64) -> FinitePoset {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut below = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            below[perm[i]][perm[j]] = rng.gen_bool(density);
        }
    }
    // closure along the shuffled order, which is a linear extension
    for &k in &perm {
        let through = below[k].clone();
        for row in below.iter_mut().filter(|row| row[k]) {
            row.iter_mut().zip(&through).for_each(|(r, &t)| *r |= t);
        }
    }
    let labels = (0..n).map(default_label).collect();
    let up = (0..n).map(|i| set_of(n, (0..n).filter(|&j| i == j || below[i][j]))).collect();
    FinitePoset::from_up_rows_unchecked(labels, up)
}

/// A relation on `x` with each pair present with probability `density`, saturated.
pub fn random_distributor(rng: &mut SampleRng, x: &FinitePoset, y: &FinitePoset, density: f64) -> Distributor {
    let pairs: Vec<(usize, usize)> = (0..x.len())
        .flat_map(|a| (0..y.len()).map(move |b| (a, b)))
        .filter(|_| rng.gen_bool(density))
        .collect();
    Distributor::new(x, y, &pairs, Mode::Closure).expect("pairs are in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_and_valid() {
        let (mut a, mut b) = (rng(7), rng(7));
        for n in 0..7 {
            let p = random_poset(&mut a, n, 0.4);
            assert_eq!(p, random_poset(&mut b, n, 0.4));
            // from_up_rows re-checks the axioms
            FinitePoset::from_up_rows(p.labels().to_vec(), (0..n).map(|i| p.up_set(i).clone()).collect()).unwrap();
            let d = random_distributor(&mut a, &p, &p, 0.3);
            d.check().unwrap();
            let _ = random_distributor(&mut b, &p, &p, 0.3);
        }
    }
}
