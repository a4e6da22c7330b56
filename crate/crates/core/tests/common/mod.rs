//! Brute-force oracles shared by the integration tests. They use only
//! permutation arithmetic and plain element lists, never the search tables.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use sact_core::datasets::normalize_multiset;
use sact_core::orbifold::Cone;
use sact_core::{ClassKey, CyclicDataSet, GroupDataSet, GroupSpec, Perm};

pub fn perm(s: &str, n: usize) -> Perm {
    Perm::parse(s, n).unwrap()
}

/// Closure of a generating set by breadth-first multiplication.
pub fn closure_size(gens: &[Perm], degree: usize) -> usize {
    let mut seen: HashSet<Perm> = HashSet::new();
    let id = Perm::identity(degree);
    seen.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q = p.compose(g);
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    seen.len()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

struct SignatureSearch {
    periods: Vec<u32>,
    order: i64,
    /// Common denominator of the period terms.
    l: i64,
    /// `(2g - 2) l`.
    target: i64,
    out: Vec<(u32, Vec<u32>)>,
}

impl SignatureSearch {
    fn rec(&mut self, g0: u32, start: usize, acc: i64, cur: &mut Vec<u32>) {
        let total = self.order * ((2 * g0 as i64 - 2) * self.l + acc);
        if total == self.target {
            self.out.push((g0, cur.clone()));
        }
        if total >= self.target {
            return;
        }
        for i in start..self.periods.len() {
            let m = self.periods[i] as i64;
            cur.push(self.periods[i]);
            self.rec(g0, i, acc + self.l - self.l / m, cur);
            cur.pop();
        }
    }
}

/// Signatures `(g0; m_1..m_r)` with Riemann–Hurwitz genus `g` for a group of
/// the given order and element orders, by direct search.
pub fn signatures(order: u64, orders: &[u32], g: u64) -> Vec<(u32, Vec<u32>)> {
    let periods: Vec<u32> = orders.iter().copied().filter(|&m| m > 1).collect();
    // 2g - 2 = order * (2 g0 - 2 + sum (1 - 1/m)); work with the common denominator
    let l: i64 = periods.iter().fold(1i64, |a, &m| a / gcd(a, m as i64) * m as i64);
    let mut search = SignatureSearch {
        periods,
        order: order as i64,
        l,
        target: (2 * g as i64 - 2) * l,
        out: Vec::new(),
    };
    for g0 in 0..=g as u32 {
        search.rec(g0, 0, 0, &mut Vec::new());
    }
    search.out.sort();
    search.out
}

/// Normalized class multisets of all generating vectors of a genus-0
/// signature, found by trying every tuple of elements of the right orders.
pub fn brute_weak_classes(group: &GroupSpec, periods: &[u32]) -> BTreeSet<Vec<ClassKey>> {
    let elems: Vec<Perm> = group.elements().collect();
    let by_order: Vec<Vec<&Perm>> = periods
        .iter()
        .map(|&m| elems.iter().filter(|p| p.order() == m).collect())
        .collect();
    let full = elems.len();
    let deg = group.degree();
    let mut out = BTreeSet::new();
    let r = periods.len();
    let mut idx = vec![0usize; r - 1];
    'outer: loop {
        let prefix: Vec<Perm> = (0..r - 1).map(|i| by_order[i][idx[i]].clone()).collect();
        let prod = prefix.iter().fold(Perm::identity(deg), |a, p| a.compose(p));
        let last = prod.inverse();
        if last.order() == periods[r - 1] {
            let mut v = prefix.clone();
            v.push(last);
            let keys: Vec<ClassKey> = v.iter().map(|p| group.class_key(p).unwrap()).collect();
            let norm = normalize_multiset(keys);
            if !out.contains(&norm) && closure_size(&v, deg) == full {
                out.insert(norm);
            }
        }
        for i in (0..r - 1).rev() {
            idx[i] += 1;
            if idx[i] < by_order[i].len() {
                continue 'outer;
            }
            idx[i] = 0;
        }
        break;
    }
    out
}

fn inverse_mod(u: u32, t: u32) -> u32 {
    (1..t).find(|&v| (u as u64 * v as u64) % t as u64 == 1).unwrap_or(0)
}

/// Cyclic data set of `<x>` acting on the surface, counted point by point:
/// the points over the `i`-th cone point are the cosets `h<σ_i>`, and a point
/// with stabilizer of order `t` in `<x>` contributes the cone `(u⁻¹, t)` where
/// `x^{d/t} = h σ_i^{(m_i/t)u} h⁻¹`.
pub fn factor_oracle(ds: &GroupDataSet, x: &Perm) -> CyclicDataSet {
    let group = ds.group().unwrap();
    let elems: Vec<Perm> = group.elements().collect();
    let g = ds.genus().unwrap() as i64;
    let d = x.order();
    let powers: Vec<Perm> = (0..d as i64).map(|k| x.pow(k)).collect();
    let mut cones: HashMap<(u32, u32), u32> = HashMap::new();
    let mut cone_list: Vec<u32> = Vec::new();
    for sigma in ds.expanded() {
        let m = sigma.order();
        let sub: Vec<Perm> = (0..m as i64).map(|k| sigma.pow(k)).collect();
        let coset = |h: &Perm| -> Vec<Perm> {
            let mut c: Vec<Perm> = sub.iter().map(|s| h.compose(s)).collect();
            c.sort();
            c
        };
        let mut seen: HashSet<Vec<Perm>> = HashSet::new();
        for h in &elems {
            let c = coset(h);
            if seen.contains(&c) {
                continue;
            }
            // orbit of this point under <x>
            let mut orbit = Vec::new();
            for p in &powers {
                let q = coset(&p.compose(h));
                if !orbit.contains(&q) {
                    orbit.push(q);
                }
            }
            for q in &orbit {
                seen.insert(q.clone());
            }
            let t = d / orbit.len() as u32;
            if t == 1 {
                continue;
            }
            let y = x.pow((d / t) as i64);
            let conj = h.inverse().compose(&y).compose(h);
            let j = (0..m)
                .find(|&j| sub[j as usize] == conj)
                .expect("stabilizer lies in <σ_i>");
            let u = j / (m / t);
            *cones.entry((inverse_mod(u % t, t), t)).or_default() += 1;
            cone_list.push(t);
        }
    }
    // 2 - 2g = d (2 - 2 g0 - sum (1 - 1/t))
    let lcm = cone_list.iter().fold(1i64, |a, &t| a / gcd(a, t as i64) * t as i64);
    let s: i64 = cone_list.iter().map(|&t| lcm - lcm / t as i64).sum();
    let lhs = (2 - 2 * g) * lcm;
    // lhs = d * ((2 - 2 g0) lcm - s)
    assert_eq!(lhs % d as i64, 0);
    let two_minus = lhs / d as i64 + s;
    assert_eq!(two_minus % lcm, 0, "quotient genus is not integral");
    let a = two_minus / lcm;
    assert_eq!(a % 2, 0, "quotient genus is not integral");
    let g0 = (2 - a) / 2;
    CyclicDataSet::new(
        d,
        g0 as u32,
        cones.into_iter().map(|((c, m), mult)| Cone { c, m, mult }),
    )
}
