//! Index-two restriction of actions and the lifting decisions built on it.
//!
//! An extension of an `A_n`-action by an involution is either a `Σ_n`-action
//! or an `A_n × Z_2`-action (for `n ≠ 6`). Restricting the extension to
//! `A_n` recovers the original action together with the involution's data
//! on the quotient surface: a degree-2 cyclic data set `D` and the
//! permutation `Π` it induces on the cone points. Every decision here goes
//! through that restriction.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::datasets::{normalize_multiset, DataSetKind, GroupDataSet};
use crate::enumerate::{self, find_vector_tracked, GeneratingVector, SearchBudget, Tracker};
use crate::error::{Error, Result};
use crate::group::{ClassKey, Family, GroupSpec};
use crate::orbifold::{rh_genus, validate_cyclic, Cone, CyclicDataSet, Signature};
use crate::perm::{factorial, Perm};

/// The involution's data on the quotient surface of the `A_n`-action.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvolutionDescent {
    /// Degree-2 cyclic data set.
    pub d: CyclicDataSet,
    /// Involution of the cone-point indices `1..r`.
    pub pi: Perm,
}

impl InvolutionDescent {
    pub fn new(d: CyclicDataSet, pi: Perm) -> Self {
        InvolutionDescent { d, pi }
    }

    /// Number of branch points of the involution on the quotient surface.
    pub fn branch_points(&self) -> u32 {
        self.d.cones.iter().map(|c| c.mult).sum()
    }
}

impl fmt::Display for InvolutionDescent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, Π = {}", self.d, self.pi)
    }
}

fn descent_data_set(g0: u32, ell: u32) -> CyclicDataSet {
    CyclicDataSet::new(2, g0, [Cone { c: 1, m: 2, mult: ell }])
}

/// Result of restricting a vector to its index-two subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    /// Elliptic images in `A_n`, pair-first in parent-entry order.
    pub entries: Vec<Perm>,
    pub descent: InvolutionDescent,
    /// Genus of the quotient of the surface by the subgroup.
    pub genus0: u32,
}

/// Restricts a `Σ_n` vector to `A_n`, or an `A_n × Z_2` vector to `A_n × 1`.
///
/// An entry inside the subgroup yields the two cone points `σ` and `ωσω⁻¹`,
/// swapped by `Π`; an entry outside yields one cone point `σ²` fixed by `Π`
/// when its order exceeds 2, and nothing otherwise. The coset element `ω` is
/// `(1 2)` for `Σ_n` and the central involution for `A_n × Z_2`.
pub fn index2_restrict(v: &GeneratingVector) -> Result<Restriction> {
    let group = v.group;
    let n = group.n;
    let omega = match group.family {
        Family::Sym => Perm::from_cycles(n, &[vec![1, 2]])?,
        Family::AltTimesC2 => group.central_involution().unwrap(),
        Family::Alt => {
            return Err(Error::NotIndexTwo(format!(
                "{group} has no chosen index-two subgroup here"
            )))
        }
    };
    let in_sub = |p: &Perm| match group.family {
        Family::Sym => p.is_even(),
        _ => !group.split(p).1,
    };
    let project = |p: &Perm| group.split(p).0;
    let mut entries = Vec::new();
    let mut pairs = Vec::new();
    let mut ell = 0u32;
    for s in &v.elliptic {
        if in_sub(s) {
            pairs.push((entries.len(), entries.len() + 1));
            entries.push(project(s));
            entries.push(project(&s.conjugate_by(&omega)));
        } else {
            ell += 1;
            if s.order() > 2 {
                entries.push(project(&s.pow(2)));
            }
        }
    }
    let g0 = v.signature.g0;
    // (2 - 2g')/2 = 2 - 2 g0 - ell/2
    let twice = 4 * g0 as i64 + ell as i64 - 2;
    if twice < 0 || twice % 2 != 0 {
        return Err(Error::Internal(format!(
            "restriction of {v} has no consistent quotient genus"
        )));
    }
    let cycles: Vec<Vec<usize>> = pairs.iter().map(|&(a, b)| vec![a + 1, b + 1]).collect();
    let pi = Perm::from_cycles(entries.len(), &cycles)?;
    Ok(Restriction {
        entries,
        descent: InvolutionDescent::new(descent_data_set(g0, ell), pi),
        genus0: (twice / 2) as u32,
    })
}

/// Invariant of `(𝒟_a, D, Π)` under re-indexing of cone points and the
/// global flip of split classes: the multiset of `Π`-orbits, each recorded
/// by the classes it contains.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LiftKey {
    pub n: usize,
    pub g0: u32,
    pub d: CyclicDataSet,
    pub orbits: Vec<Vec<ClassKey>>,
}

fn lift_key_of(n: usize, g0: u32, keys: &[ClassKey], inv: &InvolutionDescent) -> Result<LiftKey> {
    let r = keys.len();
    if inv.pi.degree() != r {
        return Err(Error::Invalid(format!(
            "Π acts on {} points but there are {r} cone points",
            inv.pi.degree()
        )));
    }
    let orbits_of = |flip: bool| {
        let mut orbits: Vec<Vec<ClassKey>> = Vec::new();
        for i in 1..=r {
            let j = inv.pi.apply(i);
            if j < i {
                continue;
            }
            let k = |x: usize| {
                if flip {
                    keys[x - 1].flip()
                } else {
                    keys[x - 1].clone()
                }
            };
            let mut o = if j == i { vec![k(i)] } else { vec![k(i), k(j)] };
            o.sort();
            orbits.push(o);
        }
        orbits.sort();
        orbits
    };
    Ok(LiftKey {
        n,
        g0,
        d: inv.d.clone(),
        orbits: orbits_of(false).min(orbits_of(true)),
    })
}

pub fn lift_key(ds: &GroupDataSet, inv: &InvolutionDescent) -> Result<LiftKey> {
    lift_key_of(ds.n, ds.g0, &ds.class_keys()?, inv)
}

fn restriction_key(r: &Restriction, n: usize) -> Result<LiftKey> {
    let alt = GroupSpec::alt(n);
    let keys: Vec<ClassKey> = r.entries.iter().map(|p| alt.class_key(p)).collect::<Result<_>>()?;
    lift_key_of(n, r.genus0, &keys, &r.descent)
}

/// The data set's own representatives, completed by handle images, as a
/// generating vector.
pub fn vector_of(ds: &GroupDataSet) -> Result<GeneratingVector> {
    let group = ds.group()?;
    let elliptic = ds.expanded();
    let handles = match ds.g0 {
        0 => Vec::new(),
        1 => match ds.handles.first() {
            Some(h) => vec![h.clone()],
            None => {
                let h = enumerate::genus_one_handles(&group, &elliptic)?
                    .ok_or_else(|| Error::Invalid(format!("{ds} has no handle pair")))?;
                vec![h]
            }
        },
        g0 => {
            if ds.handles.len() == g0 as usize {
                ds.handles.clone()
            } else {
                let product = elliptic.iter().fold(group.identity(), |a, p| a.compose(p));
                enumerate::higher_genus_handles(&group, &product, g0)?
                    .ok_or_else(|| Error::Invalid(format!("{ds} has no handle pairs")))?
            }
        }
    };
    let v = GeneratingVector {
        group,
        signature: ds.signature(),
        elliptic,
        handles,
    };
    v.validate()?;
    Ok(v)
}

/// Restriction of a symmetric data set's action to `A_n`, packaged as a
/// canonical alternating data set with `Π` transported to its indices.
pub fn psi_map(ds: &GroupDataSet) -> Result<(GroupDataSet, InvolutionDescent)> {
    if ds.kind != DataSetKind::Symmetric {
        return Err(Error::Invalid("Ψ is defined on symmetric data sets".into()));
    }
    ds.validate()?;
    psi_of_vector(&vector_of(ds)?)
}

/// Ψ computed from one particular generating vector of a `Σ_n`-action.
pub fn psi_of_vector(v: &GeneratingVector) -> Result<(GroupDataSet, InvolutionDescent)> {
    if v.group.family != Family::Sym || v.group.n < 4 {
        return Err(Error::NotApplicable(format!("Ψ on {}", v.group)));
    }
    let r = index2_restrict(v)?;
    package_restriction(&r, v.group.n)
}

fn package_restriction(r: &Restriction, n: usize) -> Result<(GroupDataSet, InvolutionDescent)> {
    let alt = GroupSpec::alt(n);
    let mut keys: Vec<ClassKey> = r.entries.iter().map(|p| alt.class_key(p)).collect::<Result<_>>()?;
    let mut sorted = keys.clone();
    sorted.sort();
    let canonical = normalize_multiset(keys.clone());
    if canonical != sorted {
        keys = keys.iter().map(ClassKey::flip).collect();
    }
    let v = enumerate::find_vector(&alt, r.genus0, &canonical, &SearchBudget::default())?
        .ok_or_else(|| Error::Internal("restricted classes are not realizable".into()))?;
    let ds = GroupDataSet::from_vector(DataSetKind::Alternating, &v);
    // assign each restricted cone point the first free canonical slot of its class
    let mut used = vec![false; canonical.len()];
    let mut slot = vec![0usize; keys.len()];
    for (i, k) in keys.iter().enumerate() {
        let j = (0..canonical.len())
            .find(|&j| !used[j] && &canonical[j] == k)
            .expect("same multiset");
        used[j] = true;
        slot[i] = j;
    }
    let mut cycles = Vec::new();
    for i in 0..keys.len() {
        let j = r.descent.pi.apply(i + 1) - 1;
        if i < j {
            cycles.push(vec![slot[i] + 1, slot[j] + 1]);
        }
    }
    let pi = Perm::from_cycles(keys.len(), &cycles)?;
    Ok((ds, InvolutionDescent::new(r.descent.d.clone(), pi)))
}

/// Involutions of the cone-point indices that only swap entries of equal
/// cycle type.
pub fn admissible_permutations(ds: &GroupDataSet) -> Result<Vec<Perm>> {
    let reps = ds.expanded();
    let types: Vec<_> = reps.iter().map(|p| p.cycle_type()).collect();
    let r = reps.len();
    let mut out = Vec::new();
    let mut image: Vec<Option<usize>> = vec![None; r];
    fn rec(i: usize, types: &[crate::perm::CycleType], image: &mut Vec<Option<usize>>, out: &mut Vec<Perm>) {
        let r = types.len();
        let Some(i) = (i..r).find(|&k| image[k].is_none()) else {
            let imgs: Vec<usize> = image.iter().map(|x| x.unwrap() + 1).collect();
            out.push(Perm::from_images(&imgs).unwrap());
            return;
        };
        image[i] = Some(i);
        rec(i + 1, types, image, out);
        for j in i + 1..r {
            if image[j].is_none() && types[j] == types[i] {
                image[i] = Some(j);
                image[j] = Some(i);
                rec(i + 1, types, image, out);
                image[j] = None;
            }
        }
        image[i] = None;
    }
    rec(0, &types, &mut image, &mut out);
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftVerdict {
    /// A `Σ_n`-action restricting to the pair.
    Wls {
        witness: GroupDataSet,
    },
    /// No `Σ_n`-action, but an `A_n × Z_2`-action restricting to the pair.
    WeakLiftableOnly {
        witness: GeneratingVector,
    },
    NotLiftable,
    Undetermined {
        reason: String,
    },
}

impl LiftVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            LiftVerdict::Wls { .. } => "WLS",
            LiftVerdict::WeakLiftableOnly { .. } => "WeakLiftableOnly",
            LiftVerdict::NotLiftable => "NotLiftable",
            LiftVerdict::Undetermined { .. } => "Undetermined",
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            LiftVerdict::Wls { witness } => serde_json::json!({"verdict": self.name(), "witness": witness.to_json()}),
            LiftVerdict::WeakLiftableOnly { witness } => {
                serde_json::json!({"verdict": self.name(), "witness": witness.to_json()})
            }
            LiftVerdict::NotLiftable => serde_json::json!({"verdict": self.name()}),
            LiftVerdict::Undetermined { reason } => serde_json::json!({"verdict": self.name(), "reason": reason}),
        }
    }
}

impl fmt::Display for LiftVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LiftVerdict::Wls { witness } => write!(f, "WLS via {witness}"),
            LiftVerdict::WeakLiftableOnly { witness } => write!(f, "WeakLiftableOnly via {witness}"),
            LiftVerdict::NotLiftable => f.write_str("NotLiftable"),
            LiftVerdict::Undetermined { reason } => write!(f, "Undetermined ({reason})"),
        }
    }
}

/// Checks that `inv` is a sensible descent for `ds` and returns the genus.
fn check_descent(ds: &GroupDataSet, inv: &InvolutionDescent) -> Result<u64> {
    if ds.kind != DataSetKind::Alternating {
        return Err(Error::Invalid("lifting starts from an alternating data set".into()));
    }
    let g = ds.validate()?;
    let dg = validate_cyclic(&inv.d)?;
    if inv.d.n != 2 {
        return Err(Error::Invalid(format!("{} does not have degree 2", inv.d)));
    }
    if dg != ds.g0 as u64 {
        return Err(Error::Invalid(format!(
            "{} lives on genus {dg}, but the quotient surface has genus {}",
            inv.d, ds.g0
        )));
    }
    let reps = ds.expanded();
    if inv.pi.degree() != reps.len() || !inv.pi.pow(2).is_identity() {
        return Err(Error::Invalid(format!(
            "Π = {} is not an involution of 1..{}",
            inv.pi,
            reps.len()
        )));
    }
    for i in 1..=reps.len() {
        if reps[i - 1].cycle_type() != reps[inv.pi.apply(i) - 1].cycle_type() {
            return Err(Error::Invalid(format!("Π = {} is not admissible", inv.pi)));
        }
    }
    Ok(g)
}

/// Class tuples of an index-two extension whose restriction has the orbit
/// structure of `key`.
fn extension_candidates(ext: &GroupSpec, key: &LiftKey, ell: u32) -> Vec<Vec<ClassKey>> {
    let alt = GroupSpec::alt(key.n);
    let ext_keys = ext.class_keys();
    let outside = |k: &ClassKey| match ext.family {
        Family::Sym => !k.cycle_type.is_even(),
        _ => k.z,
    };
    let square_class = |k: &ClassKey| alt.class_key(&ext.split(&ext.class_min(k).pow(2)).0).unwrap();
    let mut options: Vec<Vec<Vec<ClassKey>>> = Vec::new();
    let mut fixed = 0;
    for orbit in &key.orbits {
        let choices: Vec<ClassKey> = if orbit.len() == 2 {
            ext_keys
                .iter()
                .filter(|k| !outside(k) && k.order > 1)
                .filter(|k| {
                    let a = ext.split(&ext.class_min(k)).0;
                    let omega_a = match ext.family {
                        Family::Sym => a.conjugate_by(&Perm::from_cycles(key.n, &[vec![1, 2]]).unwrap()),
                        _ => a.clone(),
                    };
                    let mut pair = vec![alt.class_key(&a).unwrap(), alt.class_key(&omega_a).unwrap()];
                    pair.sort();
                    &pair == orbit
                })
                .cloned()
                .collect()
        } else {
            fixed += 1;
            ext_keys
                .iter()
                .filter(|k| outside(k) && k.order > 2 && square_class(k) == orbit[0])
                .cloned()
                .collect()
        };
        options.push(choices.into_iter().map(|k| vec![k]).collect());
    }
    if fixed > ell {
        return Vec::new();
    }
    let involutions: Vec<ClassKey> = ext_keys
        .iter()
        .filter(|k| outside(k) && k.order == 2)
        .cloned()
        .collect();
    let mut extra = Vec::new();
    multichoose(&involutions, (ell - fixed) as usize, 0, &mut Vec::new(), &mut extra);
    options.push(extra);
    let mut out = BTreeSet::new();
    cartesian(&options, 0, &mut Vec::new(), &mut |t| {
        let mut t = t.to_vec();
        t.sort();
        out.insert(t);
    });
    out.into_iter().collect()
}

fn multichoose(items: &[ClassKey], k: usize, start: usize, cur: &mut Vec<ClassKey>, out: &mut Vec<Vec<ClassKey>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in start..items.len() {
        cur.push(items[i].clone());
        multichoose(items, k, i, cur, out);
        cur.pop();
    }
}

fn cartesian(options: &[Vec<Vec<ClassKey>>], i: usize, cur: &mut Vec<ClassKey>, emit: &mut impl FnMut(&[ClassKey])) {
    if i == options.len() {
        emit(cur);
        return;
    }
    for choice in &options[i] {
        let len = cur.len();
        cur.extend(choice.iter().cloned());
        cartesian(options, i + 1, cur, emit);
        cur.truncate(len);
    }
}

enum Search {
    Found(GeneratingVector),
    None,
    Exhausted,
}

/// First extension vector (over the candidate class tuples, in order)
/// whose restriction matches `key`.
fn search_extension(ext: &GroupSpec, key: &LiftKey, g: u64, tracker: &Tracker) -> Result<Search> {
    let ell = key.d.cones.iter().map(|c| c.mult).sum();
    let mut exhausted = false;
    for tuple in extension_candidates(ext, key, ell) {
        let sig = Signature::new(key.d.g0, tuple.iter().map(|k| k.order).collect())?;
        if rh_genus(ext.order(), &sig) != Some(g) {
            continue;
        }
        match find_vector_tracked(ext, key.d.g0, &tuple, tracker) {
            Ok(Some(v)) => {
                let r = index2_restrict(&v)?;
                if &restriction_key(&r, key.n)? == key {
                    return Ok(Search::Found(v));
                }
            }
            Ok(None) => {}
            Err(Error::BudgetExhausted { .. }) => exhausted = true,
            Err(e) => return Err(e),
        }
    }
    Ok(if exhausted { Search::Exhausted } else { Search::None })
}

/// Decides whether `(ds, inv)` lifts: first to a `Σ_n`-action, then to an
/// `A_n × Z_2`-action.
pub fn decide_lift(ds: &GroupDataSet, inv: &InvolutionDescent, budget: &SearchBudget) -> Result<LiftVerdict> {
    let g = check_descent(ds, inv)?;
    let key = lift_key(ds, inv)?;
    let fixed = (1..=inv.pi.degree()).filter(|&i| inv.pi.apply(i) == i).count() as u32;
    if fixed > inv.branch_points() {
        return Ok(LiftVerdict::NotLiftable);
    }
    let tracker = Tracker::new(budget);
    let mut exhausted = false;
    match search_extension(&GroupSpec::sym(ds.n), &key, g, &tracker)? {
        Search::Found(v) => {
            return Ok(LiftVerdict::Wls {
                witness: GroupDataSet::from_vector(DataSetKind::Symmetric, &v),
            })
        }
        Search::Exhausted => exhausted = true,
        Search::None => {}
    }
    match search_extension(&GroupSpec::alt_c2(ds.n), &key, g, &tracker)? {
        Search::Found(v) => return Ok(LiftVerdict::WeakLiftableOnly { witness: v }),
        Search::Exhausted => exhausted = true,
        Search::None => {}
    }
    Ok(if exhausted {
        LiftVerdict::Undetermined {
            reason: "search budget exhausted".into(),
        }
    } else if ds.n == 6 {
        LiftVerdict::Undetermined {
            reason: "extensions of A_6 outside Σ_6 and A_6 × Z_2 are not examined".into(),
        }
    } else {
        LiftVerdict::NotLiftable
    })
}

/// All degree-2 data sets that can describe an involution on a surface of
/// genus `genus` with at least `min_branch` branch points.
pub fn possible_descents(genus: u32, min_branch: u32) -> Vec<CyclicDataSet> {
    let mut out = Vec::new();
    let mut h0 = 0u32;
    // genus = 2 h0 - 1 + ell/2
    while 4 * h0 <= 2 + 2 * genus {
        let ell = 2 + 2 * genus - 4 * h0;
        let d = descent_data_set(h0, ell);
        if ell >= min_branch && validate_cyclic(&d).ok() == Some(genus as u64) {
            out.push(d);
        }
        h0 += 1;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfNormalReport {
    /// Sphere quotient with pairwise non-conjugate entries.
    pub sufficient_condition: bool,
    /// `Some(true)` when no admissible descent lifts, `Some(false)` when one
    /// does, `None` when some verdict was undetermined.
    pub exhaustive: Option<bool>,
    /// Descents that lift, rendered as text.
    pub lifts: Vec<String>,
    pub undetermined: Vec<String>,
}

impl SelfNormalReport {
    pub fn self_normalizing(&self) -> bool {
        self.sufficient_condition || self.exhaustive == Some(true)
    }
}

pub fn self_normalizing(ds: &GroupDataSet, budget: &SearchBudget) -> Result<SelfNormalReport> {
    ds.validate()?;
    let reps = ds.expanded();
    let types: Vec<_> = reps.iter().map(|p| p.cycle_type()).collect();
    let distinct = (0..types.len()).all(|i| (i + 1..types.len()).all(|j| types[i] != types[j]));
    let sufficient = ds.g0 == 0 && distinct;
    let mut lifts = Vec::new();
    let mut undetermined = Vec::new();
    for pi in admissible_permutations(ds)? {
        let fixed = (1..=pi.degree()).filter(|&i| pi.apply(i) == i).count() as u32;
        for d in possible_descents(ds.g0, fixed) {
            let inv = InvolutionDescent::new(d, pi.clone());
            match decide_lift(ds, &inv, budget)? {
                LiftVerdict::NotLiftable => {}
                LiftVerdict::Undetermined { reason } => undetermined.push(format!("{inv}: {reason}")),
                v => lifts.push(format!("{inv}: {}", v.name())),
            }
        }
    }
    let exhaustive = if !lifts.is_empty() {
        Some(false)
    } else if undetermined.is_empty() {
        Some(true)
    } else {
        None
    };
    Ok(SelfNormalReport {
        sufficient_condition: sufficient,
        exhaustive,
        lifts,
        undetermined,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreeVerdict {
    NoFreeAction,
    /// `k` even: the `Σ_n`-extension acts freely.
    FreeExtension {
        sym: GroupDataSet,
        d: CyclicDataSet,
    },
    /// `k` odd and at least 3.
    NonFreeExtension {
        sym: GroupDataSet,
        d: CyclicDataSet,
    },
    /// `k = 1` without a search.
    Unknown,
    /// `k = 1` with a search that found a `(1; 2, 2)` extension.
    SearchedWitness {
        sym: GroupDataSet,
        d: CyclicDataSet,
    },
    /// `k = 1` with a search that found nothing.
    SearchedNone,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeReport {
    pub n: usize,
    pub g: u64,
    pub k: Option<u64>,
    /// The free alternating class `(n, k+1; -)`.
    pub free_alt: Option<GroupDataSet>,
    pub verdict: FreeVerdict,
}

impl FreeReport {
    pub fn to_json(&self) -> serde_json::Value {
        let (name, sym, d) = match &self.verdict {
            FreeVerdict::NoFreeAction => ("NoFreeAction", None, None),
            FreeVerdict::FreeExtension { sym, d } => ("FreeExtension", Some(sym), Some(d)),
            FreeVerdict::NonFreeExtension { sym, d } => ("NonFreeExtension", Some(sym), Some(d)),
            FreeVerdict::Unknown => ("Unknown", None, None),
            FreeVerdict::SearchedWitness { sym, d } => ("SearchedWitness", Some(sym), Some(d)),
            FreeVerdict::SearchedNone => ("SearchedNone", None, None),
        };
        serde_json::json!({
            "n": self.n,
            "genus": self.g,
            "k": self.k,
            "free_alternating": self.free_alt.as_ref().map(|d| d.to_string()),
            "verdict": name,
            "symmetric_witness": sym.map(|s| s.to_json()),
            "descent": d.map(|d| d.to_string()),
        })
    }
}

/// Free `A_n`-actions on `S_g` and their extensions to `Σ_n`.
///
/// A free class exists exactly when `g = 1 + k·n!/2`. For even `k` the
/// extension acts freely; for odd `k >= 3` it has two cone points of order 2
/// from odd involutions; `k = 1` is left open unless `search` is set.
pub fn free_action_analysis(n: usize, g: u64, search: bool, budget: &SearchBudget) -> Result<FreeReport> {
    GroupSpec::new(Family::Alt, n)?;
    let half = factorial(n as u128) / 2;
    let k = if g >= 2 && (g as u128 - 1).is_multiple_of(half) {
        Some(((g as u128 - 1) / half) as u64)
    } else {
        None
    };
    let Some(k) = k else {
        return Ok(FreeReport {
            n,
            g,
            k: None,
            free_alt: None,
            verdict: FreeVerdict::NoFreeAction,
        });
    };
    let free_alt = GroupDataSet::from_reps(DataSetKind::Alternating, n, (k + 1) as u32, &[]);
    if free_alt.validate()? != g {
        return Err(Error::Internal("free alternating class has the wrong genus".into()));
    }
    let sym_group = GroupSpec::sym(n);
    let transposition = Perm::from_cycles(n, &[vec![1, 2]])?;
    let verdict = if k % 2 == 0 {
        let g0 = (1 + k / 2) as u32;
        let sym = GroupDataSet::from_reps(DataSetKind::Symmetric, n, g0, &[]);
        checked(&sym, g)?;
        FreeVerdict::FreeExtension {
            sym,
            d: descent_data_set(g0, 0),
        }
    } else if k >= 3 {
        let g0 = k.div_ceil(2) as u32;
        let sym = GroupDataSet::from_reps(
            DataSetKind::Symmetric,
            n,
            g0,
            &[transposition.clone(), transposition.clone()],
        );
        checked(&sym, g)?;
        FreeVerdict::NonFreeExtension {
            sym,
            d: descent_data_set(g0, 2),
        }
    } else if !search {
        FreeVerdict::Unknown
    } else {
        let odd_involutions: Vec<ClassKey> = sym_group
            .class_keys()
            .into_iter()
            .filter(|c| c.order == 2 && !c.cycle_type.is_even())
            .collect();
        let tracker = Tracker::new(budget);
        let mut found = None;
        'outer: for i in 0..odd_involutions.len() {
            for j in i..odd_involutions.len() {
                let tuple = [odd_involutions[i].clone(), odd_involutions[j].clone()];
                if let Some(v) = find_vector_tracked(&sym_group, 1, &tuple, &tracker)? {
                    found = Some(v);
                    break 'outer;
                }
            }
        }
        match found {
            Some(v) => {
                let sym = GroupDataSet::from_vector(DataSetKind::Symmetric, &v);
                checked(&sym, g)?;
                FreeVerdict::SearchedWitness {
                    sym,
                    d: descent_data_set(1, 2),
                }
            }
            None => FreeVerdict::SearchedNone,
        }
    };
    Ok(FreeReport {
        n,
        g,
        k: Some(k),
        free_alt: Some(free_alt),
        verdict,
    })
}

fn checked(ds: &GroupDataSet, g: u64) -> Result<()> {
    let got = ds.validate()?;
    if got != g {
        return Err(Error::GenusMismatch(got, g));
    }
    Ok(())
}
