//! Independent brute-force models used to check the library.
//!
//! Everything here works on plain boolean matrices and bitmasks and never
//! calls into the library except to convert values at the boundary.
#![allow(dead_code)]

use esakia::{Distributor, FinitePoset, Mode};

/// A partial order as a full `leq` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Order {
    pub leq: Vec<Vec<bool>>,
}

pub type Rel = Vec<Vec<bool>>;

impl Order {
    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn discrete(n: usize) -> Order {
        Order { leq: (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect() }
    }

    pub fn of(p: &FinitePoset) -> Order {
        let n = p.len();
        Order { leq: (0..n).map(|i| (0..n).map(|j| p.leq(i, j)).collect()).collect() }
    }

    pub fn poset(&self) -> FinitePoset {
        let n = self.len();
        let labels: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
        let pairs: Vec<(String, String)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.leq[i][j])
            .map(|(i, j)| (labels[i].clone(), labels[j].clone()))
            .collect();
        FinitePoset::new(&labels, &pairs).expect("oracle orders are posets")
    }

    pub fn is_down_set(&self, m: u32) -> bool {
        let n = self.len();
        (0..n).all(|j| m >> j & 1 == 0 || (0..n).all(|i| !self.leq[i][j] || m >> i & 1 == 1))
    }

    pub fn is_up_set(&self, m: u32) -> bool {
        let n = self.len();
        (0..n).all(|i| m >> i & 1 == 0 || (0..n).all(|j| !self.leq[i][j] || m >> j & 1 == 1))
    }

    pub fn down_sets(&self) -> Vec<u32> {
        (0..1u32 << self.len()).filter(|&m| self.is_down_set(m)).collect()
    }

    pub fn up_sets(&self) -> Vec<u32> {
        (0..1u32 << self.len()).filter(|&m| self.is_up_set(m)).collect()
    }

    pub fn principal_down(&self, x: usize) -> u32 {
        (0..self.len()).filter(|&i| self.leq[i][x]).fold(0, |m, i| m | 1 << i)
    }

    pub fn principal_up(&self, x: usize) -> u32 {
        (0..self.len()).filter(|&j| self.leq[x][j]).fold(0, |m, j| m | 1 << j)
    }
}

/// Every partial order on `n` points, by filtering all relations.
pub fn all_orders(n: usize) -> Vec<Order> {
    let off: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
    let mut out = Vec::new();
    for bits in 0u64..1 << off.len() {
        let mut leq = Order::discrete(n).leq;
        for (k, &(i, j)) in off.iter().enumerate() {
            leq[i][j] = bits >> k & 1 == 1;
        }
        let antisym = (0..n).all(|i| (0..n).all(|j| i == j || !(leq[i][j] && leq[j][i])));
        let trans = (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(leq[i][j] && leq[j][k]) || leq[i][k])));
        if antisym && trans {
            out.push(Order { leq });
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn isomorphic(a: &Order, b: &Order) -> bool {
    let n = a.len();
    n == b.len()
        && permutations(n)
            .iter()
            .any(|p| (0..n).all(|i| (0..n).all(|j| a.leq[i][j] == b.leq[p[i]][p[j]])))
}

/// One order per isomorphism class on `n` points.
pub fn iso_reps(n: usize) -> Vec<Order> {
    let mut reps: Vec<Order> = Vec::new();
    for o in all_orders(n) {
        if !reps.iter().any(|r| isomorphic(r, &o)) {
            reps.push(o);
        }
    }
    reps
}

pub fn is_distributor(x: &Order, y: &Order, r: &Rel) -> bool {
    let (m, n) = (x.len(), y.len());
    for a in 0..m {
        for b in 0..n {
            if !r[a][b] {
                continue;
            }
            for a2 in 0..m {
                for b2 in 0..n {
                    if x.leq[a2][a] && y.leq[b][b2] && !r[a2][b2] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn all_relations(m: usize, n: usize) -> Vec<Rel> {
    (0u64..1 << (m * n))
        .map(|bits| (0..m).map(|a| (0..n).map(|b| bits >> (a * n + b) & 1 == 1).collect()).collect())
        .collect()
}

pub fn all_distributors(x: &Order, y: &Order) -> Vec<Rel> {
    all_relations(x.len(), y.len()).into_iter().filter(|r| is_distributor(x, y, r)).collect()
}

/// `r` followed by `s`, where `s` has `k` columns.
pub fn compose(r: &Rel, s: &Rel, k: usize) -> Rel {
    r.iter()
        .map(|row| (0..k).map(|c| row.iter().enumerate().any(|(b, &hit)| hit && s[b][c])).collect())
        .collect()
}

pub fn contains(big: &Rel, small: &Rel) -> bool {
    big.iter().zip(small).all(|(rb, rs)| rb.iter().zip(rs).all(|(&b, &s)| b || !s))
}

pub fn rel_of(d: &Distributor) -> Rel {
    (0..d.source().len()).map(|a| (0..d.target().len()).map(|b| d.related(a, b)).collect()).collect()
}

pub fn distributor(x: &FinitePoset, y: &FinitePoset, r: &Rel) -> Distributor {
    let pairs: Vec<(usize, usize)> = (0..x.len())
        .flat_map(|a| (0..y.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| r[a][b])
        .collect();
    Distributor::new(x, y, &pairs, Mode::Strict).expect("oracle relation is a distributor")
}

pub fn monotone_maps(x: &Order, y: &Order) -> Vec<Vec<usize>> {
    let (m, n) = (x.len(), y.len());
    let total = (n as u64).pow(m as u32);
    (0..total)
        .map(|mut code| {
            (0..m)
                .map(|_| {
                    let v = (code % n as u64) as usize;
                    code /= n as u64;
                    v
                })
                .collect::<Vec<usize>>()
        })
        .filter(|f| (0..m).all(|a| (0..m).all(|b| !x.leq[a][b] || y.leq[f[a]][f[b]])))
        .collect()
}

/// Least down-set `z` with `y ⊆ x ∪ z`, found by scanning.
pub fn subtract(downs: &[u32], x: u32, y: u32) -> u32 {
    let ok: Vec<u32> = downs.iter().copied().filter(|&z| y & !(x | z) == 0).collect();
    *ok.iter().find(|&&z| ok.iter().all(|&w| z & !w == 0)).expect("a least witness exists")
}

/// A splitting `X ⇸ M ⇸ X` of `e` with `M` as small as possible.
pub fn find_splitting(x: &Order, e: &Rel) -> Option<Order> {
    let id = |o: &Order| o.leq.clone();
    for k in 0..=x.len() {
        for m in iso_reps(k) {
            let fs = all_distributors(x, &m);
            let gs = all_distributors(&m, x);
            for f in &fs {
                for g in &gs {
                    if compose(g, f, m.len()) == id(&m) && compose(f, g, x.len()) == *e {
                        return Some(m);
                    }
                }
            }
        }
    }
    None
}

/// Set-level join preservation of `h` between families of masks.
pub fn preserves_unions(src: &[u32], tgt: &[u32], h: &dyn Fn(u32) -> u32) -> bool {
    h(0) == 0 && src.iter().all(|&a| src.iter().all(|&b| h(a | b) == h(a) | h(b))) && src.iter().all(|&a| tgt.contains(&h(a)))
}
