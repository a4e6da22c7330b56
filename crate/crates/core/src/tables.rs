//! Materialized multiplication tables for the small groups the searches run on.
//!
//! Elements are indexed in lexicographic order, so index order agrees with
//! the ordering of [`Perm`]. The identity is always index 0.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::group::{ClassKey, GroupSpec};
use crate::perm::Perm;

/// Largest group order that gets a table.
pub const TABLE_LIMIT: usize = 5040;
/// Largest group order for which all commutator pairs are precomputed.
const COMMUTATOR_LIMIT: usize = 2520;

pub type Elt = u16;

#[derive(Debug)]
pub struct ClassInfo {
    pub key: ClassKey,
    /// Ascending element indices.
    pub members: Vec<Elt>,
}

impl ClassInfo {
    pub fn min(&self) -> Elt {
        self.members[0]
    }
}

pub struct GroupTable {
    pub spec: GroupSpec,
    pub elements: Vec<Perm>,
    rank_to_index: Vec<u32>,
    mul: Vec<Elt>,
    inv: Vec<Elt>,
    order: Vec<u32>,
    class_of: Vec<u16>,
    pub classes: Vec<ClassInfo>,
    flip: Vec<u16>,
    coset: Vec<u8>,
    coset_mul: Vec<Vec<u8>>,
    commutators: OnceLock<Vec<Vec<(Elt, Elt)>>>,
}

fn lehmer_rank(p: &[u8]) -> usize {
    let n = p.len();
    let mut rank = 0usize;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

impl GroupTable {
    pub fn build(spec: GroupSpec) -> Result<Self> {
        let order = spec.order();
        if order > TABLE_LIMIT as u128 {
            return Err(Error::GroupTooLarge {
                order: order.min(usize::MAX as u128) as usize,
                limit: TABLE_LIMIT,
            });
        }
        let n = order as usize;
        let degree = spec.degree();
        let elements: Vec<Perm> = spec.elements().collect();
        let ambient: usize = (1..=degree).product();
        let mut rank_to_index = vec![u32::MAX; ambient];
        for (i, e) in elements.iter().enumerate() {
            rank_to_index[lehmer_rank(e.raw())] = i as u32;
        }
        let lookup = |p: &Perm| rank_to_index[lehmer_rank(p.raw())] as Elt;

        let mut mul = vec![0 as Elt; n * n];
        let mut scratch = vec![0u8; degree];
        for (a, pa) in elements.iter().enumerate() {
            let ra = pa.raw();
            for (b, pb) in elements.iter().enumerate() {
                for (s, &x) in scratch.iter_mut().zip(pb.raw()) {
                    *s = ra[x as usize];
                }
                mul[a * n + b] = rank_to_index[lehmer_rank(&scratch)] as Elt;
            }
        }
        let inv: Vec<Elt> = elements.iter().map(|e| lookup(&e.inverse())).collect();
        let orders: Vec<u32> = elements.iter().map(|e| e.order()).collect();

        let mut by_key: HashMap<ClassKey, Vec<Elt>> = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            by_key.entry(spec.class_key(e)?).or_default().push(i as Elt);
        }
        let mut classes: Vec<ClassInfo> = by_key
            .into_iter()
            .map(|(key, members)| ClassInfo { key, members })
            .collect();
        classes.sort_by(|a, b| a.key.cmp(&b.key));
        let mut class_of = vec![0u16; n];
        let mut key_index = HashMap::new();
        for (c, info) in classes.iter().enumerate() {
            key_index.insert(info.key.clone(), c as u16);
            for &m in &info.members {
                class_of[m as usize] = c as u16;
            }
        }
        let flip = classes.iter().map(|c| key_index[&c.key.flip()]).collect();

        let derived: Vec<Elt> = (0..n)
            .filter(|&i| spec.in_derived(&elements[i]))
            .map(|i| i as Elt)
            .collect();
        let mut coset = vec![u8::MAX; n];
        let mut coset_reps = Vec::new();
        for x in 0..n {
            if coset[x] != u8::MAX {
                continue;
            }
            let id = coset_reps.len() as u8;
            coset_reps.push(x);
            for &d in &derived {
                coset[mul[x * n + d as usize] as usize] = id;
            }
        }
        let coset_mul = coset_reps
            .iter()
            .map(|&a| coset_reps.iter().map(|&b| coset[mul[a * n + b] as usize]).collect())
            .collect();

        Ok(GroupTable {
            spec,
            elements,
            rank_to_index,
            mul,
            inv,
            order: orders,
            class_of,
            classes,
            flip,
            coset,
            coset_mul,
            commutators: OnceLock::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index(&self, p: &Perm) -> Option<Elt> {
        if p.degree() != self.spec.degree() {
            return None;
        }
        let i = self.rank_to_index[lehmer_rank(p.raw())];
        (i != u32::MAX).then_some(i as Elt)
    }

    pub fn perm(&self, i: Elt) -> &Perm {
        &self.elements[i as usize]
    }

    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        self.mul[a as usize * self.len() + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elt) -> Elt {
        self.inv[a as usize]
    }

    pub fn order_of(&self, a: Elt) -> u32 {
        self.order[a as usize]
    }

    #[inline]
    pub fn class_of(&self, a: Elt) -> u16 {
        self.class_of[a as usize]
    }

    pub fn flip_class(&self, c: u16) -> u16 {
        self.flip[c as usize]
    }

    pub fn class_id(&self, key: &ClassKey) -> Option<u16> {
        self.classes.binary_search_by(|c| c.key.cmp(key)).ok().map(|i| i as u16)
    }

    pub fn commutator(&self, a: Elt, b: Elt) -> Elt {
        let ab = self.mul(a, b);
        let ai_bi = self.mul(self.inv(a), self.inv(b));
        self.mul(ab, ai_bi)
    }

    /// Image in the abelianization.
    pub fn coset(&self, a: Elt) -> u8 {
        self.coset[a as usize]
    }

    pub fn coset_mul(&self, a: u8, b: u8) -> u8 {
        self.coset_mul[a as usize][b as usize]
    }

    /// Coset of the derived subgroup itself.
    pub fn trivial_coset(&self) -> u8 {
        self.coset[0]
    }

    /// Whether `gens` generate the whole group. Breadth-first closure; any
    /// subgroup with more than half the elements is the whole group.
    pub fn generates(&self, gens: &[Elt]) -> bool {
        let n = self.len();
        if n == 1 {
            return true;
        }
        let mut seen = vec![0u64; n.div_ceil(64)];
        let mut queue: Vec<Elt> = Vec::with_capacity(n);
        seen[0] |= 1;
        queue.push(0);
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g) as usize;
                if seen[y / 64] & (1 << (y % 64)) == 0 {
                    seen[y / 64] |= 1 << (y % 64);
                    queue.push(y as Elt);
                    if 2 * queue.len() > n {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// All pairs `(a, b)` with `[a, b] = t`, ordered by `a` then `b`.
    /// Precomputed for groups up to order 2520, computed on demand above.
    pub fn commutator_pairs(&self, t: Elt) -> Vec<(Elt, Elt)> {
        if self.len() <= COMMUTATOR_LIMIT {
            return self.commutator_buckets()[t as usize].clone();
        }
        let n = self.len() as Elt;
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.commutator(a, b) == t {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Visits pairs with `[a, b] = t` in order until `f` returns true.
    pub fn find_commutator_pair(&self, t: Elt, mut f: impl FnMut(Elt, Elt) -> bool) -> Option<(Elt, Elt)> {
        if self.len() <= COMMUTATOR_LIMIT {
            return self.commutator_buckets()[t as usize]
                .iter()
                .copied()
                .find(|&(a, b)| f(a, b));
        }
        let n = self.len() as Elt;
        for a in 0..n {
            for b in 0..n {
                if self.commutator(a, b) == t && f(a, b) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    fn commutator_buckets(&self) -> &Vec<Vec<(Elt, Elt)>> {
        self.commutators.get_or_init(|| {
            let n = self.len();
            let mut buckets = vec![Vec::new(); n];
            for a in 0..n as Elt {
                for b in 0..n as Elt {
                    buckets[self.commutator(a, b) as usize].push((a, b));
                }
            }
            buckets
        })
    }
}

/// Shared table for a group, built on first use.
pub fn table(spec: GroupSpec) -> Result<Arc<GroupTable>> {
    static CACHE: OnceLock<Mutex<HashMap<GroupSpec, Arc<GroupTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(t) = guard.get(&spec) {
        return Ok(Arc::clone(t));
    }
    let t = Arc::new(GroupTable::build(spec)?);
    guard.insert(spec, Arc::clone(&t));
    Ok(t)
}
