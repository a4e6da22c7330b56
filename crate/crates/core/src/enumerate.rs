//! Generating vectors and their reduction to weak conjugacy classes.
//!
//! The search is keyed by conjugacy-class tuples. For a fixed tuple the
//! order of the entries is irrelevant (braid moves permute classes while
//! keeping the product and the generated group), and the first entry may be
//! conjugated to the least element of its class.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::datasets::{normalize_multiset, DataSetKind, GroupDataSet};
use crate::error::{Error, Result};
use crate::group::{ClassKey, GroupSpec};
use crate::orbifold::{enumerate_signatures, Signature};
use crate::perm::Perm;
use crate::tables::{table, Elt, GroupTable};

/// Node ceiling plus wall-clock ceiling shared by a whole search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_seconds: Option<u64>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 2_000_000_000,
            max_seconds: Some(600),
        }
    }
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget {
            max_nodes: u64::MAX,
            max_seconds: None,
        }
    }

    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes,
            max_seconds: None,
        }
    }

    /// Stable text used in cache keys.
    pub fn fingerprint(&self) -> String {
        match self.max_seconds {
            Some(s) => format!("nodes={};seconds={}", self.max_nodes, s),
            None => format!("nodes={};seconds=none", self.max_nodes),
        }
    }
}

pub(crate) struct Tracker {
    budget: SearchBudget,
    start: Instant,
    nodes: AtomicU64,
    exhausted: AtomicBool,
}

impl Tracker {
    pub(crate) fn new(budget: &SearchBudget) -> Self {
        Tracker {
            budget: budget.clone(),
            start: Instant::now(),
            nodes: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
        }
    }

    #[inline]
    pub(crate) fn tick(&self) -> Result<()> {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.budget.max_nodes || self.exhausted.load(Ordering::Relaxed) {
            return self.fail(n);
        }
        if n.is_multiple_of(4096) {
            if let Some(s) = self.budget.max_seconds {
                if self.start.elapsed() > Duration::from_secs(s) {
                    return self.fail(n);
                }
            }
        }
        Ok(())
    }

    fn fail(&self, nodes: u64) -> Result<()> {
        self.exhausted.store(true, Ordering::Relaxed);
        Err(Error::BudgetExhausted { nodes })
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }
}

/// Images of the elliptic and hyperbolic generators of a Fuchsian group:
/// `σ_1 ⋯ σ_r · [a_1, b_1] ⋯ [a_g0, b_g0] = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratingVector {
    pub group: GroupSpec,
    pub signature: Signature,
    pub elliptic: Vec<Perm>,
    pub handles: Vec<(Perm, Perm)>,
}

impl GeneratingVector {
    /// Checks orders, the long relation and generation.
    pub fn validate(&self) -> Result<()> {
        let g = &self.group;
        if self.elliptic.len() != self.signature.periods.len() || self.handles.len() != self.signature.g0 as usize {
            return Err(Error::Invalid("vector does not fit its signature".into()));
        }
        for (p, &m) in self.elliptic.iter().zip(&self.signature.periods) {
            g.check(p)?;
            if p.order() != m {
                return Err(Error::Invalid(format!("{p} does not have order {m}")));
            }
        }
        let mut prod = g.identity();
        for p in &self.elliptic {
            prod = prod.compose(p);
        }
        for (a, b) in &self.handles {
            g.check(a)?;
            g.check(b)?;
            prod = prod.compose(&a.commutator(b));
        }
        if !prod.is_identity() {
            return Err(Error::Invalid(format!("long relation fails: product {prod}")));
        }
        let mut all = self.elliptic.clone();
        for (a, b) in &self.handles {
            all.push(a.clone());
            all.push(b.clone());
        }
        if !g.generates(&all)? {
            return Err(Error::Invalid(format!("vector does not generate {g}")));
        }
        Ok(())
    }

    pub fn class_keys(&self) -> Result<Vec<ClassKey>> {
        self.elliptic.iter().map(|p| self.group.class_key(p)).collect()
    }

    /// Conjugates every image by `h`.
    pub fn conjugate_by(&self, h: &Perm) -> GeneratingVector {
        GeneratingVector {
            group: self.group,
            signature: self.signature.clone(),
            elliptic: self.elliptic.iter().map(|p| p.conjugate_by(h)).collect(),
            handles: self
                .handles
                .iter()
                .map(|(a, b)| (a.conjugate_by(h), b.conjugate_by(h)))
                .collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "group": self.group.to_string(),
            "signature": self.signature.to_string(),
            "elliptic": self.elliptic.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "handles": self.handles.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect::<Vec<_>>(),
        })
    }
}

impl std::fmt::Display for GeneratingVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {}: [", self.group, self.signature)?;
        for (i, p) in self.elliptic.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")?;
        for (a, b) in &self.handles {
            write!(f, " ({a}, {b})")?;
        }
        Ok(())
    }
}

/// Handle pairs for quotient genus at least 2: the first pair is the
/// standard generating pair, the second closes the relation through a
/// commutator witness, the rest are trivial. `None` when the product of the
/// elliptic images lies outside the derived subgroup.
pub(crate) fn higher_genus_handles(group: &GroupSpec, product: &Perm, g0: u32) -> Result<Option<Vec<(Perm, Perm)>>> {
    debug_assert!(g0 >= 2);
    if !group.in_derived(product) {
        return Ok(None);
    }
    let (a1, b1) = group.standard_generators();
    let target = product.compose(&a1.commutator(&b1)).inverse();
    let Some((a2, b2)) = group.commutator_witness(&target)? else {
        return Err(Error::Invalid(format!(
            "{target} lies in the derived subgroup of {group} but is not a commutator"
        )));
    };
    let mut handles = vec![(a1, b1), (a2, b2)];
    while handles.len() < g0 as usize {
        handles.push((group.identity(), group.identity()));
    }
    Ok(Some(handles))
}

/// A generating handle pair `(a, b)` with `σ_1 ⋯ σ_r [a, b] = 1`.
pub(crate) fn genus_one_handles(group: &GroupSpec, elliptic: &[Perm]) -> Result<Option<(Perm, Perm)>> {
    let t = table(*group)?;
    let idx: Vec<Elt> = elliptic
        .iter()
        .map(|p| {
            t.index(p)
                .ok_or_else(|| Error::Membership(p.to_string(), group.to_string()))
        })
        .collect::<Result<_>>()?;
    let prod = idx.iter().fold(0, |acc, &x| t.mul(acc, x));
    Ok(genus_one_pair(&t, &idx, prod).map(|(a, b)| (t.perm(a).clone(), t.perm(b).clone())))
}

fn genus_one_pair(t: &GroupTable, elliptic: &[Elt], prod: Elt) -> Option<(Elt, Elt)> {
    let mut gens = elliptic.to_vec();
    gens.extend([0, 0]);
    let k = gens.len();
    t.find_commutator_pair(t.inv(prod), |a, b| {
        gens[k - 2] = a;
        gens[k - 1] = b;
        t.generates(&gens)
    })
}

/// Lexicographically least generating vector whose elliptic images lie in
/// the given classes, in the given order (sorted order is the convention).
pub fn find_vector(
    group: &GroupSpec,
    g0: u32,
    classes: &[ClassKey],
    budget: &SearchBudget,
) -> Result<Option<GeneratingVector>> {
    find_vector_tracked(group, g0, classes, &Tracker::new(budget))
}

pub(crate) fn find_vector_tracked(
    group: &GroupSpec,
    g0: u32,
    classes: &[ClassKey],
    tracker: &Tracker,
) -> Result<Option<GeneratingVector>> {
    let signature = Signature::new(g0, classes.iter().map(|k| k.order).collect())?;
    if g0 >= 2 {
        tracker.tick()?;
        let reps: Vec<Perm> = classes.iter().map(|k| group.class_min(k)).collect();
        let product = reps.iter().fold(group.identity(), |acc, p| acc.compose(p));
        return Ok(
            higher_genus_handles(group, &product, g0)?.map(|handles| GeneratingVector {
                group: *group,
                signature,
                elliptic: reps,
                handles,
            }),
        );
    }
    let t = table(*group)?;
    let ids: Vec<u16> = classes
        .iter()
        .map(|k| {
            t.class_id(k)
                .ok_or_else(|| Error::Invalid(format!("{k} is not a class of {group}")))
        })
        .collect::<Result<_>>()?;
    let coset = ids.iter().fold(t.trivial_coset(), |acc, &c| {
        t.coset_mul(acc, t.coset(t.classes[c as usize].min()))
    });
    if coset != t.trivial_coset() {
        return Ok(None);
    }
    let r = ids.len();
    let mut chosen = vec![0 as Elt; r];
    let found = match g0 {
        0 => {
            if r < 2 {
                return Ok(None);
            }
            let first = t.classes[ids[0] as usize].min();
            chosen[0] = first;
            search_genus_zero(&t, &ids, &mut chosen, 1, first, tracker)?
        }
        _ => {
            let mut pair = None;
            let ok = if r == 0 {
                pair = genus_one_pair(&t, &[], 0);
                pair.is_some()
            } else {
                let first = t.classes[ids[0] as usize].min();
                chosen[0] = first;
                search_genus_one(&t, &ids, &mut chosen, 1, first, &mut pair, tracker)?
            };
            if ok {
                let (a, b) = pair.unwrap();
                return Ok(Some(GeneratingVector {
                    group: *group,
                    signature,
                    elliptic: chosen.iter().map(|&x| t.perm(x).clone()).collect(),
                    handles: vec![(t.perm(a).clone(), t.perm(b).clone())],
                }));
            }
            false
        }
    };
    Ok(found.then(|| GeneratingVector {
        group: *group,
        signature,
        elliptic: chosen.iter().map(|&x| t.perm(x).clone()).collect(),
        handles: Vec::new(),
    }))
}

fn search_genus_zero(
    t: &GroupTable,
    ids: &[u16],
    chosen: &mut [Elt],
    pos: usize,
    prefix: Elt,
    tracker: &Tracker,
) -> Result<bool> {
    let r = ids.len();
    if pos == r - 1 {
        let last = t.inv(prefix);
        if t.class_of(last) == ids[pos] {
            chosen[pos] = last;
            tracker.tick()?;
            return Ok(t.generates(chosen));
        }
        return Ok(false);
    }
    for &x in &t.classes[ids[pos] as usize].members {
        tracker.tick()?;
        chosen[pos] = x;
        if search_genus_zero(t, ids, chosen, pos + 1, t.mul(prefix, x), tracker)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn search_genus_one(
    t: &GroupTable,
    ids: &[u16],
    chosen: &mut [Elt],
    pos: usize,
    prefix: Elt,
    pair: &mut Option<(Elt, Elt)>,
    tracker: &Tracker,
) -> Result<bool> {
    if pos == ids.len() {
        tracker.tick()?;
        *pair = genus_one_pair(t, chosen, prefix);
        return Ok(pair.is_some());
    }
    for &x in &t.classes[ids[pos] as usize].members {
        tracker.tick()?;
        chosen[pos] = x;
        if search_genus_one(t, ids, chosen, pos + 1, t.mul(prefix, x), pair, tracker)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Visits every generating vector of the signature, in lexicographic order
/// of the images, until `visit` returns false. Returns the number of
/// vectors visited.
pub fn enumerate_vectors(
    group: &GroupSpec,
    sig: &Signature,
    budget: &SearchBudget,
    mut visit: impl FnMut(&GeneratingVector) -> bool,
) -> Result<u64> {
    let orders = group.element_orders();
    for &m in &sig.periods {
        if !orders.contains(&m) {
            return Err(Error::PeriodNotRealizable(m));
        }
    }
    let t = table(*group)?;
    let tracker = Tracker::new(budget);
    let n = t.len() as Elt;
    let by_order: Vec<Vec<Elt>> = sig
        .periods
        .iter()
        .map(|&m| (0..n).filter(|&x| t.order_of(x) == m).collect())
        .collect();
    let r = sig.periods.len();
    let h = sig.g0 as usize;
    let mut state = VectorWalk {
        t: &t,
        sig,
        by_order,
        elliptic: vec![0; r],
        handles: vec![(0, 0); h],
        tracker: &tracker,
        count: 0,
        stop: false,
    };
    state.elliptic_step(0, 0, &mut visit)?;
    Ok(state.count)
}

struct VectorWalk<'a> {
    t: &'a GroupTable,
    sig: &'a Signature,
    by_order: Vec<Vec<Elt>>,
    elliptic: Vec<Elt>,
    handles: Vec<(Elt, Elt)>,
    tracker: &'a Tracker,
    count: u64,
    stop: bool,
}

impl VectorWalk<'_> {
    fn elliptic_step(
        &mut self,
        pos: usize,
        prefix: Elt,
        visit: &mut impl FnMut(&GeneratingVector) -> bool,
    ) -> Result<()> {
        let r = self.elliptic.len();
        if self.stop {
            return Ok(());
        }
        if self.handles.is_empty() && pos + 1 == r {
            let last = self.t.inv(prefix);
            if self.t.order_of(last) == self.sig.periods[pos] {
                self.elliptic[pos] = last;
                self.tracker.tick()?;
                self.emit(visit)?;
            }
            return Ok(());
        }
        if pos == r {
            return self.handle_step(0, prefix, visit);
        }
        for i in 0..self.by_order[pos].len() {
            let x = self.by_order[pos][i];
            self.tracker.tick()?;
            self.elliptic[pos] = x;
            self.elliptic_step(pos + 1, self.t.mul(prefix, x), visit)?;
            if self.stop {
                break;
            }
        }
        Ok(())
    }

    fn handle_step(&mut self, j: usize, prefix: Elt, visit: &mut impl FnMut(&GeneratingVector) -> bool) -> Result<()> {
        let h = self.handles.len();
        if h == 0 {
            // no handles and no elliptic elements cannot occur for g >= 2
            return Ok(());
        }
        if j + 1 == h {
            for (a, b) in self.t.commutator_pairs(self.t.inv(prefix)) {
                self.tracker.tick()?;
                self.handles[j] = (a, b);
                self.emit(visit)?;
                if self.stop {
                    break;
                }
            }
            return Ok(());
        }
        let n = self.t.len() as Elt;
        for a in 0..n {
            for b in 0..n {
                self.tracker.tick()?;
                self.handles[j] = (a, b);
                self.handle_step(j + 1, self.t.mul(prefix, self.t.commutator(a, b)), visit)?;
                if self.stop {
                    return Ok(());
                }
            }
        }
        Ok(())
    }

    fn emit(&mut self, visit: &mut impl FnMut(&GeneratingVector) -> bool) -> Result<()> {
        let mut gens = self.elliptic.clone();
        for &(a, b) in &self.handles {
            gens.push(a);
            gens.push(b);
        }
        if !self.t.generates(&gens) {
            return Ok(());
        }
        self.count += 1;
        let v = GeneratingVector {
            group: self.t.spec,
            signature: self.sig.clone(),
            elliptic: self.elliptic.iter().map(|&x| self.t.perm(x).clone()).collect(),
            handles: self
                .handles
                .iter()
                .map(|&(a, b)| (self.t.perm(a).clone(), self.t.perm(b).clone()))
                .collect(),
        };
        if !visit(&v) {
            self.stop = true;
        }
        Ok(())
    }
}

/// One weak conjugacy class: its class multiset and a witness vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakClass {
    pub group: GroupSpec,
    pub signature: Signature,
    pub classes: Vec<ClassKey>,
    pub vector: GeneratingVector,
    /// Present for the alternating and symmetric families.
    pub data_set: Option<GroupDataSet>,
}

impl WeakClass {
    fn from_vector(classes: Vec<ClassKey>, vector: GeneratingVector) -> Self {
        let data_set = DataSetKind::of(&vector.group).map(|k| GroupDataSet::from_vector(k, &vector));
        WeakClass {
            group: vector.group,
            signature: vector.signature.clone(),
            classes,
            vector,
            data_set,
        }
    }

    /// Display text: the data set, or the raw vector for `A_n × Z_2`.
    pub fn text(&self) -> String {
        match &self.data_set {
            Some(ds) => ds.to_string(),
            None => self.vector.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureStatus {
    pub signature: Signature,
    pub complete: bool,
}

#[derive(Clone, Debug)]
pub struct WeakClassList {
    pub group: GroupSpec,
    pub genus: u64,
    pub classes: Vec<WeakClass>,
    pub signatures: Vec<SignatureStatus>,
    pub nodes: u64,
}

impl WeakClassList {
    pub fn complete(&self) -> bool {
        self.signatures.iter().all(|s| s.complete)
    }

    /// The list itself, or `BudgetExhausted` when any signature was cut short.
    pub fn require_complete(self) -> Result<Self> {
        if self.complete() {
            Ok(self)
        } else {
            Err(Error::BudgetExhausted { nodes: self.nodes })
        }
    }
}

/// Class multisets for a signature, one per flip orbit, in sorted order.
pub fn class_multisets(group: &GroupSpec, sig: &Signature) -> Vec<Vec<ClassKey>> {
    let keys = group.class_keys();
    let runs = sig.period_runs();
    let mut options: Vec<Vec<Vec<ClassKey>>> = Vec::new();
    for (m, k) in runs {
        let of_order: Vec<ClassKey> = keys.iter().filter(|c| c.order == m).cloned().collect();
        let mut combos = Vec::new();
        multichoose(&of_order, k, 0, &mut Vec::new(), &mut combos);
        options.push(combos);
    }
    let mut out = Vec::new();
    cartesian(&options, 0, &mut Vec::new(), &mut |tuple| {
        let t = tuple.to_vec();
        if normalize_multiset(t.clone()) == t {
            out.push(t);
        }
    });
    out
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

/// All weak conjugacy classes of actions of `group` on a surface of genus `g`.
pub fn enumerate_weak_classes(group: &GroupSpec, g: u64, budget: &SearchBudget) -> Result<WeakClassList> {
    let tracker = Tracker::new(budget);
    let mut classes = Vec::new();
    let mut signatures = Vec::new();
    for sig in enumerate_signatures(group, g) {
        let (found, complete) = weak_classes_for_signature(group, &sig, &tracker)?;
        classes.extend(found);
        signatures.push(SignatureStatus {
            signature: sig,
            complete,
        });
    }
    classes.sort_by(|a, b| (&a.signature, &a.classes).cmp(&(&b.signature, &b.classes)));
    Ok(WeakClassList {
        group: *group,
        genus: g,
        classes,
        signatures,
        nodes: tracker.nodes(),
    })
}

/// Weak classes with one signature; the flag reports completeness.
pub(crate) fn weak_classes_for_signature(
    group: &GroupSpec,
    sig: &Signature,
    tracker: &Tracker,
) -> Result<(Vec<WeakClass>, bool)> {
    let tuples = class_multisets(group, sig);
    let results: Vec<Result<Option<WeakClass>>> = tuples
        .into_par_iter()
        .map(|tuple| {
            find_vector_tracked(group, sig.g0, &tuple, tracker).map(|v| v.map(|v| WeakClass::from_vector(tuple, v)))
        })
        .collect();
    let mut out = Vec::new();
    let mut complete = true;
    for r in results {
        match r {
            Ok(Some(w)) => out.push(w),
            Ok(None) => {}
            Err(Error::BudgetExhausted { .. }) => complete = false,
            Err(e) => return Err(e),
        }
    }
    Ok((out, complete))
}

/// Data sets for quotient genus at least 2, decided from classes alone.
pub fn shortcut_class_multiset(group: &GroupSpec, sig: &Signature) -> Result<Vec<GroupDataSet>> {
    let kind = DataSetKind::of(group);
    let applicable = sig.g0 >= 2
        && match kind {
            Some(DataSetKind::Alternating) => group.n >= 5,
            Some(DataSetKind::Symmetric) => true,
            None => false,
        };
    if !applicable {
        return Err(Error::NotApplicable(format!("{group} with signature {sig}")));
    }
    let kind = kind.unwrap();
    let mut out = Vec::new();
    for tuple in class_multisets(group, sig) {
        let reps: Vec<Perm> = tuple.iter().map(|k| group.class_min(k)).collect();
        let product = reps.iter().fold(group.identity(), |acc, p| acc.compose(p));
        if group.in_derived(&product) {
            out.push(GroupDataSet::from_reps(kind, group.n, sig.g0, &reps));
        }
    }
    Ok(out)
}
