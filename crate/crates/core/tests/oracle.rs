mod common;

use std::collections::{BTreeSet, HashMap, HashSet};

use common::{brute_weak_classes, closure_size, factor_oracle, perm, signatures};
use sact_core::datasets::normalize_multiset;
use sact_core::factors::class_factors;
use sact_core::{
    cyclic_factor, enumerate_signatures, enumerate_weak_classes, shortcut_class_multiset, validate_cyclic, ClassKey,
    DataSetKind, GroupDataSet, GroupSpec, Perm, SearchBudget, Signature,
};

fn groups() -> Vec<GroupSpec> {
    vec![
        GroupSpec::alt(4),
        GroupSpec::alt(5),
        GroupSpec::alt(6),
        GroupSpec::sym(3),
        GroupSpec::sym(4),
        GroupSpec::sym(5),
    ]
}

#[test]
fn signatures_match_direct_search() {
    for group in groups() {
        let elems: Vec<Perm> = group.elements().collect();
        let mut orders: Vec<u32> = elems.iter().map(Perm::order).collect();
        orders.sort();
        orders.dedup();
        for g in 2..=25 {
            let expected: Vec<Signature> = signatures(elems.len() as u64, &orders, g)
                .into_iter()
                .map(|(g0, p)| Signature::new(g0, p).unwrap())
                .collect();
            let mut got = enumerate_signatures(&group, g);
            got.sort();
            assert_eq!(got, expected, "{group} genus {g}");
        }
    }
}

/// Normalized class multisets realized with quotient genus 0 or 1, by trying
/// every tuple (and every handle pair).
fn brute_low_genus(group: &GroupSpec, g0: u32, periods: &[u32]) -> BTreeSet<Vec<ClassKey>> {
    if g0 == 0 {
        return brute_weak_classes(group, periods);
    }
    assert_eq!(g0, 1);
    let elems: Vec<Perm> = group.elements().collect();
    let deg = group.degree();
    let mut commutators: HashMap<Perm, Vec<(Perm, Perm)>> = HashMap::new();
    for a in &elems {
        for b in &elems {
            commutators
                .entry(a.commutator(b))
                .or_default()
                .push((a.clone(), b.clone()));
        }
    }
    let by_order: Vec<Vec<&Perm>> = periods
        .iter()
        .map(|&m| elems.iter().filter(|p| p.order() == m).collect())
        .collect();
    let mut out = BTreeSet::new();
    let mut tuples: Vec<Vec<Perm>> = vec![Vec::new()];
    for options in &by_order {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                options.iter().map(move |p| {
                    let mut t = t.clone();
                    t.push((*p).clone());
                    t
                })
            })
            .collect();
    }
    for t in tuples {
        let keys: Vec<ClassKey> = t.iter().map(|p| group.class_key(p).unwrap()).collect();
        let norm = normalize_multiset(keys);
        if out.contains(&norm) {
            continue;
        }
        let prod = t.iter().fold(Perm::identity(deg), |a, p| a.compose(p));
        let Some(pairs) = commutators.get(&prod.inverse()) else {
            continue;
        };
        for (a, b) in pairs {
            let mut gens = t.clone();
            gens.push(a.clone());
            gens.push(b.clone());
            if closure_size(&gens, deg) == elems.len() {
                out.insert(norm);
                break;
            }
        }
    }
    out
}

#[test]
fn weak_classes_match_brute_force() {
    let cases: &[(GroupSpec, &[u64])] = &[
        (GroupSpec::alt(4), &[3, 4, 5, 7, 9]),
        (GroupSpec::alt(5), &[10, 11]),
        (GroupSpec::sym(3), &[2, 3, 4]),
        (GroupSpec::sym(4), &[3, 5, 7, 10, 11]),
    ];
    for (group, genera) in cases {
        for &g in *genera {
            let list = enumerate_weak_classes(group, g, &SearchBudget::default()).unwrap();
            assert!(list.complete());
            for sig in enumerate_signatures(group, g) {
                if sig.g0 > 1 || (sig.g0 == 1 && group.order() > 24) {
                    continue;
                }
                let expected = brute_low_genus(group, sig.g0, &sig.periods);
                let got: BTreeSet<Vec<ClassKey>> = list
                    .classes
                    .iter()
                    .filter(|w| w.signature == sig)
                    .map(|w| w.classes.clone())
                    .collect();
                assert_eq!(got, expected, "{group} genus {g} signature {sig}");
            }
        }
    }
}

#[test]
fn factors_match_point_count() {
    for (group, genera) in [
        (GroupSpec::alt(4), vec![3, 5, 7, 10, 11, 19]),
        (GroupSpec::alt(5), vec![5, 10, 11, 19]),
        (GroupSpec::alt(6), vec![10, 19]),
        (GroupSpec::sym(4), vec![3, 5, 7, 10, 11, 19]),
        (GroupSpec::sym(5), vec![11, 19]),
    ] {
        for g in genera {
            let list = enumerate_weak_classes(&group, g, &SearchBudget::default()).unwrap();
            for w in &list.classes {
                let ds = w.data_set.as_ref().unwrap();
                for (key, rep, f) in class_factors(ds).unwrap() {
                    assert_eq!(f, factor_oracle(ds, &rep), "{ds} at {key}");
                }
            }
        }
    }
}

#[test]
fn factors_of_a_large_symmetric_group() {
    // (0;2,7,8) in Σ_8: the order-8 factor exercises every level of the recursion
    let s1 = perm("(1 2)", 8);
    let s2 = perm("(1 2 3 4 5 6 7 8)", 8);
    let s3 = s1.compose(&s2).inverse();
    let ds = GroupDataSet::from_reps(DataSetKind::Symmetric, 8, 0, &[s1.clone(), s2.clone(), s3.clone()]);
    assert_eq!(ds.validate().unwrap(), 4681);
    for x in [s1, s2.clone(), s3, s2.pow(2), s2.pow(4), s2.pow(3)] {
        let f = cyclic_factor(&ds, &x).unwrap();
        assert_eq!(validate_cyclic(&f).unwrap(), 4681, "{x}: {f}");
        assert_eq!(f, factor_oracle(&ds, &x), "{x}");
    }
}

/// Whether some handle images complete the elliptic images to a vector,
/// with two handle pairs, by brute force.
fn realizable_two_handles(group: &GroupSpec, reps: &[Perm]) -> bool {
    let elems: Vec<Perm> = group.elements().collect();
    let deg = group.degree();
    let prod = reps.iter().fold(Perm::identity(deg), |a, p| a.compose(p));
    let mut commutators: HashMap<Perm, Vec<(Perm, Perm)>> = HashMap::new();
    for a in &elems {
        for b in &elems {
            commutators
                .entry(a.commutator(b))
                .or_default()
                .push((a.clone(), b.clone()));
        }
    }
    let mut tried = HashSet::new();
    for a1 in &elems {
        for b1 in &elems {
            let c1 = a1.commutator(b1);
            // P [a1,b1] [a2,b2] = 1
            let need = prod.compose(&c1).inverse();
            let Some(pairs) = commutators.get(&need) else { continue };
            let mut gens = reps.to_vec();
            gens.push(a1.clone());
            gens.push(b1.clone());
            if !tried.insert(gens.clone()) {
                continue;
            }
            for (a2, b2) in pairs {
                let mut all = gens.clone();
                all.push(a2.clone());
                all.push(b2.clone());
                if closure_size(&all, deg) == elems.len() {
                    return true;
                }
            }
        }
    }
    false
}

#[test]
fn shortcut_matches_direct_search() {
    for group in [GroupSpec::sym(3), GroupSpec::sym(4)] {
        let order = group.order() as u64;
        for sig in ["(2;)", "(2;2)", "(2;2,2)", "(2;3)", "(2;2,3)", "(2;4)", "(3;2)"] {
            let sig: Signature = sig.parse().unwrap();
            if sig.periods.iter().any(|m| !group.element_orders().contains(m)) {
                continue;
            }
            let got = shortcut_class_multiset(&group, &sig).unwrap();
            let got: BTreeSet<Vec<ClassKey>> = got.iter().map(|d| d.class_multiset().unwrap()).collect();
            let keys = group.class_keys();
            let mut expected = BTreeSet::new();
            let r = sig.periods.len();
            let mut choices: Vec<Vec<ClassKey>> = vec![Vec::new()];
            for i in 0..r {
                choices = choices
                    .into_iter()
                    .flat_map(|c| {
                        keys.iter().filter(|k| k.order == sig.periods[i]).map(move |k| {
                            let mut c = c.clone();
                            c.push(k.clone());
                            c
                        })
                    })
                    .collect();
            }
            for c in choices {
                let norm = normalize_multiset(c.clone());
                if expected.contains(&norm) {
                    continue;
                }
                let reps: Vec<Perm> = c.iter().map(|k| group.class_min(k)).collect();
                let ok = if sig.g0 == 2 {
                    realizable_two_handles(&group, &reps)
                } else {
                    let prod = reps.iter().fold(group.identity(), |a, p| a.compose(p));
                    prod.is_even()
                };
                if ok {
                    expected.insert(norm);
                }
            }
            assert_eq!(got, expected, "{group} {sig} (order {order})");
        }
    }
    assert!(shortcut_class_multiset(&GroupSpec::alt(4), &"(2;)".parse().unwrap()).is_err());
}
