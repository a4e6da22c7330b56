//! Alternating and symmetric data sets: validation, equivalence and
//! canonical forms.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::enumerate::{self, SearchBudget};
use crate::error::{Clause, Error, Result};
use crate::group::{AltClassLabel, ClassKey, Family, GroupSpec};
use crate::orbifold::{rh_genus, Signature};
use crate::perm::{CycleType, Perm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DataSetKind {
    Alternating,
    Symmetric,
}

impl DataSetKind {
    pub fn group(self, n: usize) -> Result<GroupSpec> {
        match self {
            DataSetKind::Alternating => GroupSpec::new(Family::Alt, n),
            DataSetKind::Symmetric => GroupSpec::new(Family::Sym, n),
        }
    }

    pub fn of(group: &GroupSpec) -> Option<Self> {
        match group.family {
            Family::Alt => Some(DataSetKind::Alternating),
            Family::Sym => Some(DataSetKind::Symmetric),
            Family::AltTimesC2 => None,
        }
    }
}

/// `[σ, m; k_1, ..., k_l]^[mult]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Entry {
    pub rep: Perm,
    pub order: u32,
    pub cycle_type: CycleType,
    pub mult: u32,
}

impl Entry {
    pub fn of(rep: Perm, mult: u32) -> Self {
        Entry {
            order: rep.order(),
            cycle_type: rep.cycle_type(),
            rep,
            mult,
        }
    }
}

/// A weak conjugacy class of `A_n` or `Σ_n` actions, given by the images of
/// the elliptic generators. Handle images, when present, are witnesses only
/// and take no part in comparisons.
#[derive(Clone, Debug)]
pub struct GroupDataSet {
    pub kind: DataSetKind,
    pub n: usize,
    pub g0: u32,
    pub entries: Vec<Entry>,
    pub handles: Vec<(Perm, Perm)>,
}

impl PartialEq for GroupDataSet {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.n == other.n && self.g0 == other.g0 && self.entries == other.entries
    }
}

impl Eq for GroupDataSet {}

impl GroupDataSet {
    /// Groups consecutive equal representatives into entries.
    pub fn from_reps(kind: DataSetKind, n: usize, g0: u32, reps: &[Perm]) -> Self {
        let mut entries: Vec<Entry> = Vec::new();
        for r in reps {
            match entries.last_mut() {
                Some(e) if &e.rep == r => e.mult += 1,
                _ => entries.push(Entry::of(r.clone(), 1)),
            }
        }
        GroupDataSet {
            kind,
            n,
            g0,
            entries,
            handles: Vec::new(),
        }
    }

    pub fn group(&self) -> Result<GroupSpec> {
        self.kind.group(self.n)
    }

    /// Representatives repeated according to multiplicity.
    pub fn expanded(&self) -> Vec<Perm> {
        self.entries
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.rep.clone(), e.mult as usize))
            .collect()
    }

    pub fn signature(&self) -> Signature {
        let periods = self
            .entries
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.order, e.mult as usize))
            .collect();
        Signature::new(self.g0, periods).unwrap_or(Signature {
            g0: self.g0,
            periods: Vec::new(),
        })
    }

    /// Genus of the surface, from the Riemann–Hurwitz formula.
    pub fn genus(&self) -> Result<u64> {
        let group = self.group()?;
        match rh_genus(group.order(), &self.signature()) {
            Some(g) if g >= 2 => Ok(g),
            Some(g) => Err(Error::validation(
                Clause::GenusIntegrality,
                format!("genus {g} below 2"),
            )),
            None => Err(Error::validation(
                Clause::GenusIntegrality,
                "Riemann-Hurwitz genus is not an integer".to_string(),
            )),
        }
    }

    /// Class of each representative, with multiplicity.
    pub fn class_keys(&self) -> Result<Vec<ClassKey>> {
        let group = self.group()?;
        self.expanded().iter().map(|p| group.class_key(p)).collect()
    }

    /// Per-entry class labels.
    pub fn labels(&self) -> Result<Vec<AltClassLabel>> {
        let group = self.group()?;
        self.entries
            .iter()
            .map(|e| group.class_key(&e.rep).map(|k| k.label))
            .collect()
    }

    /// Checks every defining condition and returns the genus. For quotient
    /// genus 1 without stored handles, a witness pair is searched for.
    pub fn validate(&self) -> Result<u64> {
        let group = self.group()?;
        if group.degree() > crate::group::degree_cap() {
            return Err(Error::validation(
                Clause::Degree,
                format!("degree {} exceeds cap {}", self.n, crate::group::degree_cap()),
            ));
        }
        for e in &self.entries {
            if e.rep.degree() != self.n {
                return Err(Error::validation(
                    Clause::Degree,
                    format!("{} has degree {}, expected {}", e.rep, e.rep.degree(), self.n),
                ));
            }
            if e.mult == 0 {
                return Err(Error::validation(
                    Clause::OrderMismatch,
                    "zero multiplicity".to_string(),
                ));
            }
            if e.rep.is_identity() || e.rep.order() != e.order {
                return Err(Error::validation(
                    Clause::OrderMismatch,
                    format!("{} does not have order {}", e.rep, e.order),
                ));
            }
            if e.rep.cycle_type() != e.cycle_type {
                return Err(Error::validation(
                    Clause::OrderMismatch,
                    format!("{} does not have cycle type {}", e.rep, e.cycle_type),
                ));
            }
            if self.kind == DataSetKind::Alternating && !e.rep.is_even() {
                return Err(Error::validation(Clause::Parity, format!("{} is odd", e.rep)));
            }
        }
        let g = self.genus()?;
        let reps = self.expanded();
        let product = reps.iter().fold(group.identity(), |acc, p| acc.compose(p));
        match self.g0 {
            0 => {
                if !product.is_identity() {
                    return Err(Error::validation(
                        Clause::Product,
                        format!("product is {product}, not the identity"),
                    ));
                }
                if !group.generates(&reps)? {
                    return Err(Error::validation(
                        Clause::Generation,
                        format!("representatives do not generate {group}"),
                    ));
                }
            }
            1 => {
                if let Some((a, b)) = self.handles.first() {
                    if product != b.commutator(a) {
                        return Err(Error::validation(
                            Clause::Witness,
                            "stored handle pair violates the long relation".to_string(),
                        ));
                    }
                    let mut all = reps.clone();
                    all.extend([a.clone(), b.clone()]);
                    if !group.generates(&all)? {
                        return Err(Error::validation(
                            Clause::Generation,
                            "elements with handle pair do not generate".to_string(),
                        ));
                    }
                } else if enumerate::genus_one_handles(&group, &reps)?.is_none() {
                    return Err(Error::validation(
                        Clause::Witness,
                        "no handle pair closes the long relation and generates".to_string(),
                    ));
                }
            }
            g0 => {
                if self.kind == DataSetKind::Symmetric && !product.is_even() {
                    return Err(Error::validation(
                        Clause::Parity,
                        "product of entries is odd".to_string(),
                    ));
                }
                if enumerate::higher_genus_handles(&group, &product, g0)?.is_none() {
                    return Err(Error::validation(
                        Clause::Witness,
                        "no handle pairs close the long relation".to_string(),
                    ));
                }
            }
        }
        Ok(g)
    }

    /// Sorted class multiset, normalized under the global flip of split
    /// classes for the alternating kind.
    pub fn class_multiset(&self) -> Result<Vec<ClassKey>> {
        Ok(normalize_multiset(self.class_keys()?))
    }

    pub fn canonical_form(&self) -> Result<GroupDataSet> {
        self.canonical_form_with(&SearchBudget::default())
    }

    /// The least valid representative tuple of the class multiset (after
    /// choosing the smaller of the two flip-related labelings), with entries
    /// in class order.
    pub fn canonical_form_with(&self, budget: &SearchBudget) -> Result<GroupDataSet> {
        self.validate()?;
        let group = self.group()?;
        let keys = self.class_multiset()?;
        let v = enumerate::find_vector(&group, self.g0, &keys, budget)?
            .ok_or_else(|| Error::Invalid(format!("no generating vector realizes the classes of {self}")))?;
        Ok(GroupDataSet::from_vector(self.kind, &v))
    }

    pub fn from_vector(kind: DataSetKind, v: &enumerate::GeneratingVector) -> Self {
        let mut ds = GroupDataSet::from_reps(kind, v.group.n, v.signature.g0, &v.elliptic);
        ds.handles = v.handles.clone();
        ds
    }

    /// Parses the text form, e.g. `(5,0;[(1 2)(3 4),2;2,2]^[2],[(1 2 3 4 5),5;5])`.
    pub fn parse(kind: DataSetKind, s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("{why} in data set {s:?}"));
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| bad("missing outer parentheses"))?;
        let (head, body) = inner.split_once(';').ok_or_else(|| bad("missing ';'"))?;
        let (n, g0) = head.split_once(',').ok_or_else(|| bad("missing ','"))?;
        let n: usize = n.trim().parse().map_err(|_| bad("bad degree"))?;
        let g0: u32 = g0.trim().parse().map_err(|_| bad("bad genus"))?;
        if n > u8::MAX as usize {
            return Err(bad("degree too large"));
        }
        let mut entries = Vec::new();
        let body = body.trim();
        if !matches!(body, "-" | "−") {
            let mut rest = body;
            while !rest.is_empty() {
                let r = rest.strip_prefix('[').ok_or_else(|| bad("expected '['"))?;
                let close = r.find(']').ok_or_else(|| bad("unbalanced bracket"))?;
                let item = &r[..close];
                rest = &r[close + 1..];
                let (left, ct) = item.rsplit_once(';').ok_or_else(|| bad("entry needs ';'"))?;
                let (rep, m) = left.rsplit_once(',').ok_or_else(|| bad("entry needs ','"))?;
                let rep = Perm::parse(rep, n)?;
                let order: u32 = m.trim().parse().map_err(|_| bad("bad order"))?;
                let parts = ct
                    .split(',')
                    .map(|t| t.trim())
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<u32>().map_err(|_| bad("bad cycle type")))
                    .collect::<Result<Vec<_>>>()?;
                let cycle_type = CycleType::new(parts, n)?;
                let mut mult = 1;
                if let Some(r) = rest.strip_prefix("^[") {
                    let close = r.find(']').ok_or_else(|| bad("unbalanced bracket"))?;
                    mult = r[..close].trim().parse().map_err(|_| bad("bad multiplicity"))?;
                    rest = &r[close + 1..];
                }
                if mult == 0 {
                    return Err(bad("zero multiplicity"));
                }
                entries.push(Entry {
                    rep,
                    order,
                    cycle_type,
                    mult,
                });
                rest = rest.trim_start();
                if let Some(r) = rest.strip_prefix(',') {
                    rest = r.trim_start();
                    if rest.is_empty() {
                        return Err(bad("trailing ','"));
                    }
                } else if !rest.is_empty() {
                    return Err(bad("expected ','"));
                }
            }
        }
        Ok(GroupDataSet {
            kind,
            n,
            g0,
            entries,
            handles: Vec::new(),
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let labels = self.labels().ok();
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let label = labels.as_ref().map(|l| l[i]);
                serde_json::json!({
                    "rep": e.rep.to_string(),
                    "order": e.order,
                    "cycle_type": e.cycle_type.parts,
                    "mult": e.mult,
                    "label": label,
                })
            })
            .collect();
        let handles: Vec<[String; 2]> = self
            .handles
            .iter()
            .map(|(a, b)| [a.to_string(), b.to_string()])
            .collect();
        serde_json::json!({
            "kind": self.kind,
            "n": self.n,
            "g0": self.g0,
            "entries": entries,
            "handles": handles,
            "text": self.to_string(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("data set JSON: {why}"));
        let kind: DataSetKind = serde_json::from_value(v["kind"].clone()).map_err(|_| bad("missing or bad kind"))?;
        let n = v["n"].as_u64().ok_or_else(|| bad("missing n"))? as usize;
        let g0 = v["g0"].as_u64().ok_or_else(|| bad("missing g0"))? as u32;
        if n > u8::MAX as usize {
            return Err(bad("degree too large"));
        }
        let mut entries = Vec::new();
        for e in v["entries"].as_array().ok_or_else(|| bad("missing entries"))? {
            let rep = Perm::parse(e["rep"].as_str().ok_or_else(|| bad("missing rep"))?, n)?;
            let order = e["order"].as_u64().ok_or_else(|| bad("missing order"))? as u32;
            let parts: Vec<u32> = serde_json::from_value(e["cycle_type"].clone()).map_err(|_| bad("bad cycle_type"))?;
            let mult = e["mult"].as_u64().ok_or_else(|| bad("missing mult"))? as u32;
            entries.push(Entry {
                rep,
                order,
                cycle_type: CycleType::new(parts, n)?,
                mult,
            });
        }
        let mut handles = Vec::new();
        if let Some(hs) = v["handles"].as_array() {
            for h in hs {
                let a = h[0].as_str().ok_or_else(|| bad("bad handle"))?;
                let b = h[1].as_str().ok_or_else(|| bad("bad handle"))?;
                handles.push((Perm::parse(a, n)?, Perm::parse(b, n)?));
            }
        }
        Ok(GroupDataSet {
            kind,
            n,
            g0,
            entries,
            handles,
        })
    }
}

/// Sorts a class multiset; when split classes occur, picks the smaller of it
/// and its global flip.
pub fn normalize_multiset(mut keys: Vec<ClassKey>) -> Vec<ClassKey> {
    keys.sort();
    let mut flipped: Vec<ClassKey> = keys.iter().map(ClassKey::flip).collect();
    flipped.sort();
    keys.min(flipped)
}

/// Equivalence of data sets: same kind, degree and quotient genus, and the
/// same class multiset up to a global flip of split classes.
pub fn equivalent(a: &GroupDataSet, b: &GroupDataSet) -> Result<bool> {
    if a.kind != b.kind {
        return Err(Error::KindMismatch);
    }
    if a.n != b.n || a.g0 != b.g0 {
        return Ok(false);
    }
    Ok(a.class_multiset()? == b.class_multiset()?)
}

impl fmt::Display for GroupDataSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};", self.n, self.g0)?;
        if self.entries.is_empty() {
            f.write_str("-")?;
        }
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "[{},{};{}]", e.rep, e.order, e.cycle_type)?;
            if e.mult != 1 {
                write!(f, "^[{}]", e.mult)?;
            }
        }
        f.write_str(")")
    }
}
