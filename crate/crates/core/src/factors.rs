//! Fixed-point counts, cyclic factors and the obstruction sweeps.

use std::collections::HashMap;

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::datasets::{DataSetKind, GroupDataSet};
use crate::enumerate::{enumerate_weak_classes, SearchBudget};
use crate::error::{Error, Result};
use crate::group::{ClassKey, GroupSpec};
use crate::orbifold::{validate_cyclic, Cone, CyclicDataSet};
use crate::perm::Perm;
use crate::tables::table;

type Q = Ratio<i128>;

fn inverse_mod(u: u32, m: u32) -> u32 {
    (1..m).find(|&v| (u as u64 * v as u64) % m as u64 == 1).unwrap_or(1)
}

fn units(m: u32) -> Vec<u32> {
    (1..m).filter(|u| u.gcd(&m) == 1).collect()
}

fn divisors(d: u32) -> Vec<u32> {
    (1..=d).filter(|t| d.is_multiple_of(*t)).collect()
}

/// `|C_H(x)| · Σ 1/m_i` over the elliptic images `σ_i` with `m | m_i` and
/// `x` conjugate to `σ_i^{m_i u / m}`.
pub(crate) fn fixed_points(group: &GroupSpec, elliptic: &[Perm], x: &Perm, u: u32, m: u32) -> Result<u64> {
    group.check(x)?;
    if x.order() != m || u.gcd(&m) != 1 {
        return Err(Error::Invalid(format!("{x} with rotation {u} mod {m}")));
    }
    let mut sum = Q::from_integer(0);
    for s in elliptic {
        let mi = s.order();
        if mi % m != 0 {
            continue;
        }
        let power = s.pow((mi / m * u) as i64);
        if group.conjugator(x, &power).is_some() {
            sum += Q::new(1, mi as i128);
        }
    }
    let total = sum * Q::from_integer(group.centralizer_order(x)? as i128);
    if !total.is_integer() {
        return Err(Error::NonIntegral(format!("fixed-point count {total} for {x}")));
    }
    Ok(total.to_integer() as u64)
}

/// Number of points fixed by `x` on which it rotates by `2πu/m`.
pub fn fixed_point_count(ds: &GroupDataSet, x: &Perm, u: u32, m: u32) -> Result<u64> {
    fixed_points(&ds.group()?, &ds.expanded(), x, u, m)
}

/// Cyclic data set of the subgroup `<σ>` acting on the same surface.
pub fn cyclic_factor(ds: &GroupDataSet, sigma: &Perm) -> Result<CyclicDataSet> {
    let g = ds.genus()?;
    factor_of(&ds.group()?, &ds.expanded(), g, sigma)
}

/// Cone multiplicities `℧_{t,u}` come from a top-down recursion over the
/// divisors `t` of `d = |σ|`: a point whose stabilizer has order `t'` with
/// rotation class `v` lies in an orbit of `d/t'` points, each counted as a
/// fixed point of `σ^{d/t}` with rotation `v mod t` whenever `t | t'`.
pub(crate) fn factor_of(group: &GroupSpec, elliptic: &[Perm], g: u64, sigma: &Perm) -> Result<CyclicDataSet> {
    group.check(sigma)?;
    let d = sigma.order();
    if d < 2 {
        return Err(Error::Invalid("the identity has no cyclic factor".into()));
    }
    let divs: Vec<u32> = divisors(d).into_iter().filter(|&t| t >= 2).collect();
    let mut mho: HashMap<(u32, u32), i64> = HashMap::new();
    for &t in divs.iter().rev() {
        let x = sigma.pow((d / t) as i64);
        for u in units(t) {
            let f = fixed_points(group, elliptic, &x, u, t)? as i64;
            let mut rest = f;
            for &t2 in divs.iter().filter(|&&t2| t2 != t && t2 % t == 0) {
                for v in units(t2).into_iter().filter(|v| v % t == u % t) {
                    rest -= (d / t2) as i64 * mho[&(t2, v)];
                }
            }
            let w = (d / t) as i64;
            if rest < 0 {
                return Err(Error::NegativeMultiplicity { u, t });
            }
            if rest % w != 0 {
                return Err(Error::NonIntegral(format!("multiplicity of ({u},{t}) is {rest}/{w}")));
            }
            mho.insert((t, u), rest / w);
        }
    }
    let cones: Vec<Cone> = mho
        .iter()
        .filter(|(_, &k)| k > 0)
        .map(|(&(t, u), &k)| Cone {
            c: inverse_mod(u, t),
            m: t,
            mult: k as u32,
        })
        .collect();
    // 2 g0 = 2 - Σ(1 - 1/t) - (2 - 2g)/d
    let mut two_g0 = Q::from_integer(2) - Q::new(2 - 2 * g as i128, d as i128);
    for c in &cones {
        two_g0 -= Q::new(c.m as i128 - 1, c.m as i128) * Q::from_integer(c.mult as i128);
    }
    if !two_g0.is_integer() || two_g0.to_integer() < 0 || two_g0.to_integer() % 2 != 0 {
        return Err(Error::NonIntegral(format!(
            "quotient genus {}",
            two_g0 / Q::from_integer(2)
        )));
    }
    Ok(CyclicDataSet::new(d, (two_g0.to_integer() / 2) as u32, cones))
}

/// Cyclic factors of the standard generating pair.
pub fn standard_factors(ds: &GroupDataSet) -> Result<(CyclicDataSet, CyclicDataSet)> {
    let (s, t) = ds.group()?.standard_generators();
    Ok((cyclic_factor(ds, &s)?, cyclic_factor(ds, &t)?))
}

/// Factor of every non-trivial class of the data set's group, keyed by class.
pub fn class_factors(ds: &GroupDataSet) -> Result<Vec<(ClassKey, Perm, CyclicDataSet)>> {
    let group = ds.group()?;
    let g = ds.genus()?;
    let elliptic = ds.expanded();
    group
        .class_keys()
        .into_iter()
        .filter(|k| k.order > 1)
        .map(|k| {
            let rep = group.class_min(&k);
            factor_of(&group, &elliptic, g, &rep).map(|f| (k, rep, f))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakGenWitness {
    pub data_set: GroupDataSet,
    pub sigma: Perm,
    pub tau: Perm,
}

/// Searches the weak classes at the common genus for a generating pair
/// whose cyclic factors are `d_f` and `d_g`.
pub fn weakly_generates(
    d_f: &CyclicDataSet,
    d_g: &CyclicDataSet,
    group: &GroupSpec,
    budget: &SearchBudget,
) -> Result<Option<WeakGenWitness>> {
    let gf = validate_cyclic(d_f)?;
    let gg = validate_cyclic(d_g)?;
    if gf != gg {
        return Err(Error::GenusMismatch(gf, gg));
    }
    let kind = DataSetKind::of(group).ok_or_else(|| Error::NotApplicable(format!("weak generation in {group}")))?;
    let orders = group.element_orders();
    if !orders.contains(&d_f.n) || !orders.contains(&d_g.n) || gf < 2 {
        return Ok(None);
    }
    let list = enumerate_weak_classes(group, gf, budget)?;
    let t = table(*group)?;
    for w in &list.classes {
        let ds = w.data_set.clone().expect("alternating or symmetric family");
        debug_assert_eq!(ds.kind, kind);
        let factors = class_factors(&ds)?;
        let sigma_classes: Vec<&ClassKey> = factors
            .iter()
            .filter(|(k, _, f)| k.order == d_f.n && f == d_f)
            .map(|(k, _, _)| k)
            .collect();
        let tau_classes: Vec<&ClassKey> = factors
            .iter()
            .filter(|(k, _, f)| k.order == d_g.n && f == d_g)
            .map(|(k, _, _)| k)
            .collect();
        for sk in &sigma_classes {
            let s = t.classes[t.class_id(sk).unwrap() as usize].min();
            for tk in &tau_classes {
                for &x in &t.classes[t.class_id(tk).unwrap() as usize].members {
                    if t.generates(&[s, x]) {
                        return Ok(Some(WeakGenWitness {
                            data_set: ds,
                            sigma: t.perm(s).clone(),
                            tau: t.perm(x).clone(),
                        }));
                    }
                }
            }
        }
    }
    if !list.complete() {
        return Err(Error::BudgetExhausted { nodes: list.nodes });
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderBound {
    pub group: String,
    pub genus: u64,
    /// Largest element order in the group.
    pub landau: u32,
    pub group_order: u128,
    pub hurwitz_bound: u64,
    pub within_hurwitz: bool,
    /// `|H| / landau`, as a reduced fraction.
    pub order_over_landau: String,
    /// Largest `k` with `landau · k < g`.
    pub k_max: u64,
    pub weak_classes: usize,
    pub complete: bool,
    /// Every weak class at this genus has all element orders below `g`.
    pub certified: bool,
}

pub fn max_order_bound(group: &GroupSpec, g: u64, budget: &SearchBudget) -> Result<OrderBound> {
    let landau = group.max_element_order();
    let hurwitz = 84 * (g.saturating_sub(1));
    let within = group.order() <= hurwitz as u128;
    let (weak, complete) = if within {
        let list = enumerate_weak_classes(group, g, budget)?;
        (list.classes.len(), list.complete())
    } else {
        (0, true)
    };
    let ratio = Ratio::new(group.order(), landau as u128);
    Ok(OrderBound {
        group: group.to_string(),
        genus: g,
        landau,
        group_order: group.order(),
        hurwitz_bound: hurwitz,
        within_hurwitz: within,
        order_over_landau: ratio.to_string(),
        k_max: g.saturating_sub(1) / landau as u64,
        weak_classes: weak,
        complete,
        certified: complete && (weak == 0 || (landau as u64) < g),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorRow {
    pub data_set: String,
    pub class: String,
    pub rep: String,
    pub class_size: u128,
    pub factor: String,
    pub irreducible: bool,
    pub hyperelliptic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub group: String,
    pub genus: u64,
    pub complete: bool,
    pub rows: Vec<FactorRow>,
}

impl ObstructionReport {
    pub fn irreducible(&self) -> impl Iterator<Item = &FactorRow> {
        self.rows.iter().filter(|r| r.irreducible)
    }

    pub fn hyperelliptic(&self) -> impl Iterator<Item = &FactorRow> {
        self.rows.iter().filter(|r| r.hyperelliptic)
    }
}

/// Whether a cyclic factor has a sphere quotient with exactly three cone points.
pub fn is_irreducible(f: &CyclicDataSet) -> bool {
    f.g0 == 0 && f.cones.iter().map(|c| c.mult).sum::<u32>() == 3
}

/// Factors of every element (one row per conjugacy class) of every weak
/// class at genus `g`, flagging irreducible and hyperelliptic ones.
pub fn obstruction_report(group: &GroupSpec, g: u64, budget: &SearchBudget) -> Result<ObstructionReport> {
    DataSetKind::of(group).ok_or_else(|| Error::NotApplicable(format!("obstruction sweep in {group}")))?;
    let list = enumerate_weak_classes(group, g, budget)?;
    let hyper = CyclicDataSet::hyperelliptic(g);
    let mut rows = Vec::new();
    for w in &list.classes {
        let ds = w.data_set.as_ref().expect("alternating or symmetric family");
        for (k, rep, f) in class_factors(ds)? {
            rows.push(FactorRow {
                data_set: ds.to_string(),
                class: k.to_string(),
                rep: rep.to_string(),
                class_size: group.class_size(&k),
                irreducible: is_irreducible(&f),
                hyperelliptic: f == hyper,
                factor: f.to_string(),
            });
        }
    }
    Ok(ObstructionReport {
        group: group.to_string(),
        genus: g,
        complete: list.complete(),
        rows,
    })
}
