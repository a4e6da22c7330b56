//! The three group families: `Sym(n)`, `Alt(n)` and `A_n × Z_2`, the last
//! realized inside `Sym(n+2)` as `A_n × <(n+1 n+2)>`.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{class_splits, factorial, CycleType, Perm};
use crate::stabchain::StabChain;

static DEGREE_CAP: AtomicUsize = AtomicUsize::new(10);

/// Largest ambient degree accepted by the exhaustive algorithms.
pub fn degree_cap() -> usize {
    DEGREE_CAP.load(Ordering::Relaxed)
}

pub fn set_degree_cap(cap: usize) {
    DEGREE_CAP.store(cap, Ordering::Relaxed);
}

fn check_cap(degree: usize) -> Result<()> {
    let cap = degree_cap();
    if degree > cap {
        return Err(Error::DegreeCapExceeded { degree, cap });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Sym,
    Alt,
    AltTimesC2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: Family,
    pub n: usize,
}

impl GroupSpec {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        let min = match family {
            Family::Sym => 3,
            Family::Alt | Family::AltTimesC2 => 4,
        };
        if n < min {
            return Err(Error::Invalid(format!("{family:?}({n}) needs n >= {min}")));
        }
        if n > 253 {
            return Err(Error::Invalid(format!("rank {n} too large")));
        }
        Ok(GroupSpec { family, n })
    }

    pub fn sym(n: usize) -> Self {
        Self::new(Family::Sym, n).expect("valid symmetric group")
    }

    pub fn alt(n: usize) -> Self {
        Self::new(Family::Alt, n).expect("valid alternating group")
    }

    pub fn alt_c2(n: usize) -> Self {
        Self::new(Family::AltTimesC2, n).expect("valid A_n x Z_2")
    }

    /// Number of points the group acts on.
    pub fn degree(&self) -> usize {
        match self.family {
            Family::AltTimesC2 => self.n + 2,
            _ => self.n,
        }
    }

    pub fn order(&self) -> u128 {
        let f = factorial(self.n as u128);
        match self.family {
            Family::Alt => f / 2,
            _ => f,
        }
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree())
    }

    /// The central involution `(n+1 n+2)` of `A_n × Z_2`.
    pub fn central_involution(&self) -> Option<Perm> {
        match self.family {
            Family::AltTimesC2 => {
                let n = self.n;
                Some(Perm::from_cycles(n + 2, &[vec![n + 1, n + 2]]).unwrap())
            }
            _ => None,
        }
    }

    pub fn contains(&self, p: &Perm) -> bool {
        if p.degree() != self.degree() {
            return false;
        }
        match self.family {
            Family::Sym => true,
            Family::Alt => p.is_even(),
            Family::AltTimesC2 => split_c2(p, self.n).is_some_and(|(a, _)| a.is_even()),
        }
    }

    pub fn check(&self, p: &Perm) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::Membership(p.to_string(), self.to_string()))
        }
    }

    /// Splits an element of `A_n × Z_2` into its `A_n` part and its `Z_2` bit.
    /// For the other families the bit is always false.
    pub fn split(&self, p: &Perm) -> (Perm, bool) {
        match self.family {
            Family::AltTimesC2 => split_c2(p, self.n).expect("element of A_n x Z_2"),
            _ => (p.clone(), false),
        }
    }

    /// Inverse of [`GroupSpec::split`].
    pub fn join(&self, a: &Perm, z: bool) -> Perm {
        match self.family {
            Family::AltTimesC2 => {
                let mut images = a.raw().to_vec();
                let n = self.n as u8;
                if z {
                    images.extend([n + 1, n]);
                } else {
                    images.extend([n, n + 1]);
                }
                Perm::from_raw(images)
            }
            _ => a.clone(),
        }
    }

    /// The alternating group underlying this one (`A_n` itself for `Alt`).
    pub fn alt_part(&self) -> GroupSpec {
        GroupSpec {
            family: Family::Alt,
            n: self.n,
        }
    }

    /// Standard generating pair: `(1 2), (1 2 ... n)` for `Sym(n)`;
    /// `(1 2 3)` and `(1 2 ... n)` (n odd) or `(2 3 ... n)` (n even) for `Alt(n)`;
    /// for `A_n × Z_2` the second generator carries the central involution.
    pub fn standard_generators(&self) -> (Perm, Perm) {
        let n = self.n;
        match self.family {
            Family::Sym => (
                Perm::from_cycles(n, &[vec![1, 2]]).unwrap(),
                Perm::from_cycles(n, &[(1..=n).collect()]).unwrap(),
            ),
            Family::Alt => (
                Perm::from_cycles(n, &[vec![1, 2, 3]]).unwrap(),
                Perm::from_cycles(n, &[alt_long_cycle(n)]).unwrap(),
            ),
            Family::AltTimesC2 => {
                let (s, t) = self.alt_part().standard_generators();
                (self.join(&s, false), self.join(&t, true))
            }
        }
    }

    /// Exact test of conjugacy inside this group.
    pub fn are_conjugate(&self, a: &Perm, b: &Perm) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.conjugator(a, b).is_some())
    }

    /// Some `h` in the group with `h a h⁻¹ = b`, if one exists.
    pub fn conjugator(&self, a: &Perm, b: &Perm) -> Option<Perm> {
        match self.family {
            Family::Sym => sym_conjugator(a, b),
            Family::Alt => alt_conjugator(a, b),
            Family::AltTimesC2 => {
                let (a0, za) = self.split(a);
                let (b0, zb) = self.split(b);
                if za != zb {
                    return None;
                }
                alt_conjugator(&a0, &b0).map(|h| self.join(&h, false))
            }
        }
    }

    pub fn centralizer_order(&self, p: &Perm) -> Result<u128> {
        self.check(p)?;
        let (a, _) = self.split(p);
        let t = a.cycle_type();
        let sym = t.sym_centralizer_order();
        Ok(match self.family {
            Family::Sym => sym,
            Family::Alt => alt_centralizer(&t, sym),
            Family::AltTimesC2 => 2 * alt_centralizer(&t, sym),
        })
    }

    /// Whether `elems` generate the whole group.
    pub fn generates(&self, elems: &[Perm]) -> Result<bool> {
        check_cap(self.degree())?;
        for e in elems {
            self.check(e)?;
        }
        Ok(StabChain::new(self.degree(), elems).order() == self.order())
    }

    /// A pair `(a, b)` in the group with `a b a⁻¹ b⁻¹ = target`, found by an
    /// exhaustive scan over `a`; for each `a` the equation `b a⁻¹ b⁻¹ = a⁻¹ target`
    /// is a conjugacy problem solved directly.
    pub fn commutator_witness(&self, target: &Perm) -> Result<Option<(Perm, Perm)>> {
        check_cap(self.degree())?;
        self.check(target)?;
        let (t0, z) = self.split(target);
        if z {
            return Ok(None);
        }
        let base = match self.family {
            Family::Sym => GroupSpec::sym(self.n),
            _ => self.alt_part(),
        };
        for a in base.elements() {
            let ai = a.inverse();
            let rhs = ai.compose(&t0);
            if let Some(b) = base.conjugator(&ai, &rhs) {
                debug_assert_eq!(a.commutator(&b), t0);
                return Ok(Some((self.join(&a, false), self.join(&b, false))));
            }
        }
        Ok(None)
    }

    /// Whether `p` lies in the derived subgroup.
    pub fn in_derived(&self, p: &Perm) -> bool {
        let (a, z) = self.split(p);
        match self.family {
            Family::Sym => a.is_even(),
            Family::Alt | Family::AltTimesC2 => {
                !z && a.is_even() && (self.n != 4 || a.is_identity() || a.cycle_type().parts == [2, 2])
            }
        }
    }

    /// All elements in lexicographic order of their image lists.
    pub fn elements(&self) -> Elements {
        Elements {
            spec: *self,
            next: Some(Perm::identity(self.n).raw().to_vec()),
            pending: None,
        }
    }

    /// Conjugacy classes, sorted by [`ClassKey`] order.
    pub fn class_keys(&self) -> Vec<ClassKey> {
        let mut out = Vec::new();
        let even_only = self.family != Family::Sym;
        for parts in partitions(self.n) {
            let t = CycleType::new(parts, self.n).unwrap();
            if even_only && !t.is_even() {
                continue;
            }
            let labels: &[AltClassLabel] = if even_only && class_splits(&t) {
                &[AltClassLabel::Plus, AltClassLabel::Minus]
            } else {
                &[AltClassLabel::Whole]
            };
            let zs: &[bool] = if self.family == Family::AltTimesC2 {
                &[false, true]
            } else {
                &[false]
            };
            for &label in labels {
                for &z in zs {
                    out.push(ClassKey::new(t.clone(), label, z));
                }
            }
        }
        out.sort();
        out
    }

    /// Class key of an element.
    pub fn class_key(&self, p: &Perm) -> Result<ClassKey> {
        self.check(p)?;
        let (a, z) = self.split(p);
        let t = a.cycle_type();
        let label = match self.family {
            Family::Sym => AltClassLabel::Whole,
            _ => alt_label(&a),
        };
        Ok(ClassKey::new(t, label, z))
    }

    /// Lexicographically least element of a class.
    pub fn class_min(&self, key: &ClassKey) -> Perm {
        let least = key.cycle_type.least_element();
        let a = match key.label {
            AltClassLabel::Minus => {
                let mut images = least.raw().to_vec();
                loop {
                    assert!(next_permutation(&mut images), "minus class is non-empty");
                    let p = Perm::from_raw(images.clone());
                    if p.cycle_type() == key.cycle_type && alt_label(&p) == AltClassLabel::Minus {
                        break p;
                    }
                }
            }
            _ => least,
        };
        self.join(&a, key.z)
    }

    pub fn class_size(&self, key: &ClassKey) -> u128 {
        self.order() / self.centralizer_order(&self.class_min(key)).unwrap()
    }

    /// Largest element order.
    pub fn max_element_order(&self) -> u32 {
        self.class_keys().iter().map(|k| k.order).max().unwrap_or(1)
    }

    /// Distinct element orders, ascending, including 1.
    pub fn element_orders(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.class_keys().iter().map(|k| k.order).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

fn alt_long_cycle(n: usize) -> Vec<usize> {
    if n % 2 == 1 {
        (1..=n).collect()
    } else {
        (2..=n).collect()
    }
}

fn alt_centralizer(t: &CycleType, sym: u128) -> u128 {
    if t.centralizer_has_odd() {
        sym / 2
    } else {
        sym
    }
}

fn split_c2(p: &Perm, n: usize) -> Option<(Perm, bool)> {
    if p.degree() != n + 2 {
        return None;
    }
    let raw = p.raw();
    let z = match (raw[n] as usize, raw[n + 1] as usize) {
        (a, b) if a == n && b == n + 1 => false,
        (a, b) if a == n + 1 && b == n => true,
        _ => return None,
    };
    Some((Perm::from_raw(raw[..n].to_vec()), z))
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Sym => write!(f, "S{}", self.n),
            Family::Alt => write!(f, "A{}", self.n),
            Family::AltTimesC2 => write!(f, "AxC2{}", self.n),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Accepts `S5`, `A5`, `AxC25`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (family, rest) = if let Some(r) = s.strip_prefix("AxC2") {
            (Family::AltTimesC2, r)
        } else if let Some(r) = s.strip_prefix('A') {
            (Family::Alt, r)
        } else if let Some(r) = s.strip_prefix('S') {
            (Family::Sym, r)
        } else {
            return Err(Error::Parse(format!("unknown group {s:?}")));
        };
        let n = rest
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad rank in {s:?}")))?;
        GroupSpec::new(family, n).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Tag of an alternating class inside its symmetric class. `Plus` is the
/// alternating class holding the lexicographically least permutation of the
/// cycle type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AltClassLabel {
    Whole,
    Plus,
    Minus,
}

impl AltClassLabel {
    pub fn flip(self) -> Self {
        match self {
            AltClassLabel::Plus => AltClassLabel::Minus,
            AltClassLabel::Minus => AltClassLabel::Plus,
            AltClassLabel::Whole => AltClassLabel::Whole,
        }
    }

    pub fn suffix(self) -> &'static str {
        match self {
            AltClassLabel::Whole => "",
            AltClassLabel::Plus => "+",
            AltClassLabel::Minus => "-",
        }
    }
}

/// Identifies a conjugacy class in one of the three families.
///
/// For `A_n × Z_2` the cycle type and label describe the `A_n` component and
/// `z` the central component. Ordered by element order first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassKey {
    pub order: u32,
    pub cycle_type: CycleType,
    pub label: AltClassLabel,
    pub z: bool,
}

impl ClassKey {
    pub fn new(cycle_type: CycleType, label: AltClassLabel, z: bool) -> Self {
        let o = cycle_type.order();
        let order = if z { num_integer::lcm(o, 2) } else { o };
        ClassKey {
            order,
            cycle_type,
            label,
            z,
        }
    }

    /// The image under conjugation by an odd permutation of the first `n` points.
    pub fn flip(&self) -> Self {
        ClassKey {
            label: self.label.flip(),
            ..self.clone()
        }
    }
}

impl fmt::Display for ClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]{}", self.cycle_type, self.label.suffix())?;
        if self.z {
            f.write_str("z")?;
        }
        Ok(())
    }
}

/// Label of an even permutation's class in `A_n`.
pub fn alt_label(p: &Perm) -> AltClassLabel {
    let t = p.cycle_type();
    if !class_splits(&t) {
        return AltClassLabel::Whole;
    }
    if alt_conjugator(p, &t.least_element()).is_some() {
        AltClassLabel::Plus
    } else {
        AltClassLabel::Minus
    }
}

/// Some `h` in `Sym(n)` with `h a h⁻¹ = b`: line up cycles of equal length.
pub fn sym_conjugator(a: &Perm, b: &Perm) -> Option<Perm> {
    let n = a.degree();
    if b.degree() != n {
        return None;
    }
    let ca = all_cycles(a);
    let cb = all_cycles(b);
    if ca.len() != cb.len() {
        return None;
    }
    let mut h = vec![0u8; n];
    let mut used = vec![false; cb.len()];
    for c in &ca {
        let j = (0..cb.len()).find(|&j| !used[j] && cb[j].len() == c.len())?;
        used[j] = true;
        for (x, y) in c.iter().zip(&cb[j]) {
            h[*x] = *y as u8;
        }
    }
    Some(Perm::from_raw(h))
}

/// Some even `h` with `h a h⁻¹ = b`. If the first conjugator found is odd it
/// is corrected by an odd element of the centralizer of `a`, when one exists.
pub fn alt_conjugator(a: &Perm, b: &Perm) -> Option<Perm> {
    let h = sym_conjugator(a, b)?;
    if h.is_even() {
        return Some(h);
    }
    let c = odd_centralizer_element(a)?;
    Some(h.compose(&c))
}

/// An odd permutation commuting with `p`, if one exists.
pub fn odd_centralizer_element(p: &Perm) -> Option<Perm> {
    let n = p.degree();
    let cycles = all_cycles(p);
    if let Some(c) = cycles.iter().find(|c| c.len() % 2 == 0) {
        let one: Vec<usize> = c.iter().map(|x| x + 1).collect();
        return Some(Perm::from_cycles(n, &[one]).unwrap());
    }
    // two cycles of the same odd length (fixed points included): swap them pointwise
    for i in 0..cycles.len() {
        for j in i + 1..cycles.len() {
            if cycles[i].len() == cycles[j].len() {
                let swaps: Vec<Vec<usize>> = cycles[i]
                    .iter()
                    .zip(&cycles[j])
                    .map(|(x, y)| vec![x + 1, y + 1])
                    .collect();
                return Some(Perm::from_cycles(n, &swaps).unwrap());
            }
        }
    }
    None
}

/// Every cycle, fixed points included, 0-based, each starting at its least point.
fn all_cycles(p: &Perm) -> Vec<Vec<usize>> {
    let n = p.degree();
    let raw = p.raw();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut c = Vec::new();
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            c.push(x);
            x = raw[x] as usize;
        }
        out.push(c);
    }
    out
}

/// Partitions of `n` into parts >= 2 with total at most `n`, parts ascending.
pub fn partitions(n: usize) -> Vec<Vec<u32>> {
    fn rec(remaining: usize, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        for k in min..=remaining as u32 {
            cur.push(k);
            rec(remaining - k as usize, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 2, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Lexicographic iterator over the elements of a group.
pub struct Elements {
    spec: GroupSpec,
    next: Option<Vec<u8>>,
    pending: Option<Perm>,
}

impl Iterator for Elements {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        if let Some(p) = self.pending.take() {
            return Some(p);
        }
        loop {
            let cur = self.next.take()?;
            let mut succ = cur.clone();
            if next_permutation(&mut succ) {
                self.next = Some(succ);
            }
            let p = Perm::from_raw(cur);
            match self.spec.family {
                Family::Sym => return Some(p),
                Family::Alt => {
                    if p.is_even() {
                        return Some(p);
                    }
                }
                Family::AltTimesC2 => {
                    if p.is_even() {
                        self.pending = Some(self.spec.join(&p, true));
                        return Some(self.spec.join(&p, false));
                    }
                }
            }
        }
    }
}
