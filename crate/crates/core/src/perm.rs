//! Permutations of `{1..n}` in disjoint-cycle notation.
//!
//! Products follow function composition: `a * b` applies `b` first, then `a`.

use std::fmt;
use std::ops::Mul;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A permutation of `{1..n}`. The degree is part of the value, so the
/// identity on five points differs from the identity on six.
///
/// Internally images are stored 0-based; everything public is 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        assert!(n <= u8::MAX as usize, "degree too large");
        Perm {
            images: (0..n as u8).collect(),
        }
    }

    /// Builds a permutation from 0-based images. Caller guarantees bijectivity.
    pub(crate) fn from_raw(images: Vec<u8>) -> Self {
        debug_assert!(is_bijection(&images));
        Perm { images }
    }

    /// Builds a permutation from 1-based images: `images[i-1]` is the image of `i`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > u8::MAX as usize {
            return Err(Error::Parse(format!("degree {n} too large")));
        }
        let mut raw = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n {
                return Err(Error::Parse(format!("symbol {x} out of range 1..{n}")));
            }
            raw.push((x - 1) as u8);
        }
        if !is_bijection(&raw) {
            return Err(Error::Parse("images do not form a bijection".into()));
        }
        Ok(Perm { images: raw })
    }

    /// Builds a permutation of degree `n` from 1-based disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut raw: Vec<u8> = (0..n as u8).collect();
        let mut seen = vec![false; n];
        for cycle in cycles {
            for &x in cycle {
                if x == 0 || x > n {
                    return Err(Error::Parse(format!("symbol {x} out of range 1..{n}")));
                }
                if seen[x - 1] {
                    return Err(Error::Parse(format!("symbol {x} repeated")));
                }
                seen[x - 1] = true;
            }
            for (i, &x) in cycle.iter().enumerate() {
                let y = cycle[(i + 1) % cycle.len()];
                raw[x - 1] = (y - 1) as u8;
            }
        }
        Ok(Perm { images: raw })
    }

    /// Parses canonical cycle notation such as `(1 2)(3 4 5)` or `()`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let s = s.trim();
        let mut cycles = Vec::new();
        let mut rest = s;
        if rest.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        while !rest.is_empty() {
            rest = rest.trim_start();
            if rest.is_empty() {
                break;
            }
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parenthesis in {s:?}")))?;
            let body = &open[..close];
            let cycle = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad symbol {t:?} in {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = &open[close + 1..];
        }
        Self::from_cycles(n, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.images
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm { images: inv }
    }

    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq);
            }
            sq = sq.compose(&sq);
            e >>= 1;
        }
        acc
    }

    /// `h ∘ self ∘ h⁻¹`.
    pub fn conjugate_by(&self, h: &Perm) -> Perm {
        // (h σ h⁻¹)(h(i)) = h(σ(i))
        let mut out = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            out[h.images[i] as usize] = h.images[x as usize];
        }
        Perm { images: out }
    }

    /// `[self, other] = self ∘ other ∘ self⁻¹ ∘ other⁻¹`.
    pub fn commutator(&self, other: &Perm) -> Perm {
        self.compose(other).compose(&self.inverse()).compose(&other.inverse())
    }

    /// Disjoint cycles of length at least two, 1-based, each starting at its
    /// least point, ordered by least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut parts: Vec<u32> = self.cycles().iter().map(|c| c.len() as u32).collect();
        parts.sort_unstable();
        CycleType {
            parts,
            n: self.degree(),
        }
    }

    pub fn order(&self) -> u32 {
        self.cycle_type().order()
    }

    pub fn is_even(&self) -> bool {
        self.cycle_type().is_even()
    }

    /// Restricts to the first `n` points. The permutation must fix the rest.
    pub fn truncate(&self, n: usize) -> Option<Perm> {
        if self.images[n..].iter().enumerate().any(|(i, &x)| x as usize != n + i) {
            return None;
        }
        Some(Perm {
            images: self.images[..n].to_vec(),
        })
    }

    /// Extends to degree `m >= n` by fixing the new points.
    pub fn extend(&self, m: usize) -> Perm {
        let mut images = self.images.clone();
        images.extend(self.degree() as u8..m as u8);
        Perm { images }
    }
}

fn is_bijection(images: &[u8]) -> bool {
    let mut seen = vec![false; images.len()];
    for &x in images {
        let x = x as usize;
        if x >= images.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

impl Mul for &Perm {
    type Output = Perm;

    fn mul(self, rhs: &Perm) -> Perm {
        self.compose(rhs)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}[{}]", self.degree())
    }
}

#[derive(Serialize, Deserialize)]
struct PermRepr {
    degree: usize,
    cycles: String,
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PermRepr {
            degree: self.degree(),
            cycles: self.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = PermRepr::deserialize(d)?;
        Perm::parse(&r.cycles, r.degree).map_err(serde::de::Error::custom)
    }
}

/// Cycle lengths `k_1 <= ... <= k_l`, each at least 2, in ambient degree `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleType {
    pub parts: Vec<u32>,
    pub n: usize,
}

impl CycleType {
    pub fn new(mut parts: Vec<u32>, n: usize) -> Result<Self> {
        parts.sort_unstable();
        if parts.iter().any(|&k| k < 2) {
            return Err(Error::Parse("cycle lengths must be at least 2".into()));
        }
        if parts.iter().map(|&k| k as usize).sum::<usize>() > n {
            return Err(Error::Parse(format!("cycle type {parts:?} exceeds degree {n}")));
        }
        Ok(CycleType { parts, n })
    }

    pub fn moved(&self) -> usize {
        self.parts.iter().map(|&k| k as usize).sum()
    }

    pub fn fixed(&self) -> usize {
        self.n - self.moved()
    }

    pub fn is_even(&self) -> bool {
        self.parts.iter().map(|&k| k - 1).sum::<u32>() % 2 == 0
    }

    pub fn order(&self) -> u32 {
        self.parts.iter().fold(1u32, |acc, &k| acc.lcm(&k))
    }

    /// Lexicographically least permutation (by image list) with this type:
    /// fixed points first, then cycles `(a a+1 ... a+k-1)` on consecutive
    /// points, shortest first.
    pub fn least_element(&self) -> Perm {
        let mut images: Vec<u8> = (0..self.n as u8).collect();
        let mut start = self.fixed();
        for &k in &self.parts {
            let k = k as usize;
            for j in 0..k {
                images[start + j] = (start + (j + 1) % k) as u8;
            }
            start += k;
        }
        Perm::from_raw(images)
    }

    /// Order of the centralizer in the symmetric group: `prod k^a_k * a_k!`.
    pub fn sym_centralizer_order(&self) -> u128 {
        let mut counts = std::collections::BTreeMap::<u32, u32>::new();
        for &k in &self.parts {
            *counts.entry(k).or_default() += 1;
        }
        let fixed = self.fixed() as u32;
        if fixed > 0 {
            counts.insert(1, fixed);
        }
        counts
            .iter()
            .map(|(&k, &a)| (k as u128).pow(a) * factorial(a as u128))
            .product()
    }

    /// Whether the symmetric-group centralizer of an element of this type
    /// contains an odd permutation.
    pub fn centralizer_has_odd(&self) -> bool {
        // an even-length cycle is odd; swapping two equal cycles of odd
        // length k is a product of k transpositions; two fixed points can be
        // swapped by a transposition
        if self.parts.iter().any(|&k| k % 2 == 0) {
            return true;
        }
        if self.fixed() >= 2 {
            return true;
        }
        self.parts.windows(2).any(|w| w[0] == w[1])
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|k| k.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

pub fn factorial(n: u128) -> u128 {
    (1..=n).product()
}

/// Whether the symmetric class of this type splits into two alternating
/// classes: all parts distinct odd and at most one fixed point.
pub fn class_splits(t: &CycleType) -> bool {
    if !t.is_even() {
        return false;
    }
    let distinct_odd = t.parts.iter().all(|k| k % 2 == 1) && t.parts.windows(2).all(|w| w[0] != w[1]);
    distinct_odd && t.moved() + 1 >= t.n
}
