//! Fuchsian signatures, Riemann–Hurwitz bookkeeping and cyclic data sets.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Clause, Error, Result};
use crate::group::GroupSpec;

type Q = Ratio<i128>;

/// `(g0; m_1, ..., m_r)` with periods sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    pub g0: u32,
    pub periods: Vec<u32>,
}

impl Signature {
    pub fn new(g0: u32, mut periods: Vec<u32>) -> Result<Self> {
        if periods.iter().any(|&m| m < 2) {
            return Err(Error::Invalid("periods must be at least 2".into()));
        }
        periods.sort_unstable();
        Ok(Signature { g0, periods })
    }

    /// `2 - 2 g0 - Σ (1 - 1/m_i)`; negative for hyperbolic signatures.
    pub fn euler_term(&self) -> Q {
        let mut x = Q::from_integer(2 - 2 * self.g0 as i128);
        for &m in &self.periods {
            x -= Q::new(m as i128 - 1, m as i128);
        }
        x
    }

    /// Runs of equal periods: `(m, count)` ascending.
    pub fn period_runs(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &m in &self.periods {
            match out.last_mut() {
                Some((pm, c)) if *pm == m => *c += 1,
                _ => out.push((m, 1)),
            }
        }
        out
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.periods.iter().map(|m| m.to_string()).collect();
        write!(f, "({};{})", self.g0, ps.join(","))
    }
}

impl FromStr for Signature {
    type Err = Error;

    /// Accepts `(0;2,2,5,5)`, `(2;)` and `(2;-)`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("signature must be parenthesized: {s:?}")))?;
        let (g0, rest) = inner
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("missing ';' in {s:?}")))?;
        let g0 = g0
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad genus in {s:?}")))?;
        let rest = rest.trim();
        let periods = if rest.is_empty() || is_dash(rest) {
            Vec::new()
        } else {
            rest.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad period {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Signature::new(g0, periods).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn is_dash(s: &str) -> bool {
    matches!(s, "-" | "−")
}

/// Genus `g` with `(2 - 2g)/|H| = 2 - 2 g0 - Σ(1 - 1/m_i)`, if it is a
/// non-negative integer.
pub fn rh_genus(group_order: u128, sig: &Signature) -> Option<u64> {
    let chi = sig.euler_term() * Q::from_integer(group_order as i128);
    if !chi.is_integer() {
        return None;
    }
    let two_minus_2g = chi.to_integer();
    if two_minus_2g > 2 || two_minus_2g % 2 != 0 {
        return None;
    }
    Some(((2 - two_minus_2g) / 2) as u64)
}

/// All signatures with periods among the group's element orders whose
/// Riemann–Hurwitz genus is `g`.
///
/// With `A = (2g - 2)/|G|` we need `2 g0 - 2 + Σ(1 - 1/m_i) = A`; every
/// period contributes at least 1/2, which bounds both `g0` and `r`.
pub fn enumerate_signatures(group: &GroupSpec, g: u64) -> Vec<Signature> {
    if g < 2 {
        return Vec::new();
    }
    let orders: Vec<u32> = group.element_orders().into_iter().filter(|&m| m >= 2).collect();
    let area = Q::new(2 * g as i128 - 2, group.order() as i128);
    let mut out = Vec::new();
    let mut g0 = 0u32;
    loop {
        let target = area + Q::from_integer(2 - 2 * g0 as i128);
        if target < Q::from_integer(0) {
            break;
        }
        let mut cur = Vec::new();
        fill_periods(&orders, 0, target, &mut cur, &mut |ps| {
            out.push(Signature {
                g0,
                periods: ps.to_vec(),
            })
        });
        g0 += 1;
    }
    out.sort();
    out
}

fn fill_periods(orders: &[u32], start: usize, remaining: Q, cur: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
    let zero = Q::from_integer(0);
    if remaining == zero {
        emit(cur);
        return;
    }
    for (i, &m) in orders.iter().enumerate().skip(start) {
        let term = Q::new(m as i128 - 1, m as i128);
        if term > remaining {
            // terms grow with m
            break;
        }
        cur.push(m);
        fill_periods(orders, i, remaining - term, cur, emit);
        cur.pop();
    }
}

/// One cone type `(c, m)` occurring `mult` times.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cone {
    pub c: u32,
    pub m: u32,
    pub mult: u32,
}

/// `(n, g0; (c_1, m_1)^[l_1], ...)`: the conjugacy invariant of a periodic
/// map of order `n`. Cones are kept merged and sorted by `(m, c)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclicDataSet {
    #[serde(rename = "degree")]
    pub n: u32,
    #[serde(rename = "genus0")]
    pub g0: u32,
    pub cones: Vec<Cone>,
}

impl CyclicDataSet {
    pub fn new(n: u32, g0: u32, cones: impl IntoIterator<Item = Cone>) -> Self {
        let mut merged: Vec<Cone> = Vec::new();
        let mut all: Vec<Cone> = cones.into_iter().filter(|c| c.mult > 0).collect();
        all.sort_by_key(|c| (c.m, c.c));
        for c in all {
            match merged.last_mut() {
                Some(last) if last.m == c.m && last.c == c.c => last.mult += c.mult,
                _ => merged.push(c),
            }
        }
        CyclicDataSet { n, g0, cones: merged }
    }

    pub fn signature(&self) -> Signature {
        let mut periods = Vec::new();
        for c in &self.cones {
            periods.extend(std::iter::repeat_n(c.m, c.mult as usize));
        }
        Signature::new(self.g0, periods).unwrap_or(Signature {
            g0: self.g0,
            periods: Vec::new(),
        })
    }

    /// The hyperelliptic data set `(2, 0; (1,2)^[2g+2])`.
    pub fn hyperelliptic(g: u64) -> Self {
        CyclicDataSet::new(
            2,
            0,
            [Cone {
                c: 1,
                m: 2,
                mult: 2 * g as u32 + 2,
            }],
        )
    }
}

impl fmt::Display for CyclicDataSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};", self.n, self.g0)?;
        if self.cones.is_empty() {
            f.write_str("-")?;
        }
        for (i, c) in self.cones.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({},{})", c.c, c.m)?;
            if c.mult != 1 {
                write!(f, "^[{}]", c.mult)?;
            }
        }
        f.write_str(")")
    }
}

impl FromStr for CyclicDataSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("{why} in cyclic data set {s:?}"));
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| bad("missing outer parentheses"))?;
        let (head, body) = inner.split_once(';').ok_or_else(|| bad("missing ';'"))?;
        let (n, g0) = head.split_once(',').ok_or_else(|| bad("missing ','"))?;
        let n: u32 = n.trim().parse().map_err(|_| bad("bad degree"))?;
        let g0: u32 = g0.trim().parse().map_err(|_| bad("bad genus"))?;
        let body = body.trim();
        let mut cones = Vec::new();
        if !is_dash(body) {
            let mut rest = body;
            while !rest.is_empty() {
                let r = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
                let close = r.find(')').ok_or_else(|| bad("unbalanced parenthesis"))?;
                let (c, m) = r[..close].split_once(',').ok_or_else(|| bad("cone needs (c,m)"))?;
                let c: u32 = c.trim().parse().map_err(|_| bad("bad rotation"))?;
                let m: u32 = m.trim().parse().map_err(|_| bad("bad order"))?;
                rest = &r[close + 1..];
                let mut mult = 1;
                if let Some(r) = rest.strip_prefix("^[") {
                    let close = r.find(']').ok_or_else(|| bad("unbalanced bracket"))?;
                    mult = r[..close].trim().parse().map_err(|_| bad("bad multiplicity"))?;
                    rest = &r[close + 1..];
                }
                if m < 2 {
                    return Err(bad("cone order below 2"));
                }
                if mult == 0 {
                    return Err(bad("zero multiplicity"));
                }
                cones.push(Cone { c, m, mult });
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
        Ok(CyclicDataSet::new(n, g0, cones))
    }
}

/// Checks the defining conditions and returns the genus.
pub fn validate_cyclic(d: &CyclicDataSet) -> Result<u64> {
    let n = d.n;
    if n < 2 {
        return Err(Error::validation(Clause::Divisibility, format!("degree {n} below 2")));
    }
    for c in &d.cones {
        if c.m < 2 || !n.is_multiple_of(c.m) {
            return Err(Error::validation(
                Clause::Divisibility,
                format!("cone order {} does not divide {n}", c.m),
            ));
        }
        if c.c.gcd(&c.m) != 1 {
            return Err(Error::validation(
                Clause::Divisibility,
                format!("rotation {} is not a unit modulo {}", c.c, c.m),
            ));
        }
    }
    let periods = d.signature().periods;
    let full = periods.iter().fold(1u32, |a, &m| a.lcm(&m));
    for i in 0..periods.len() {
        let without = periods
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(1u32, |a, (_, &m)| a.lcm(&m));
        if without != full {
            return Err(Error::validation(
                Clause::Lcm,
                format!("removing a cone of order {} lowers the lcm", periods[i]),
            ));
        }
    }
    if d.g0 == 0 && full != n {
        return Err(Error::validation(
            Clause::Lcm,
            format!("quotient genus 0 needs lcm {full} to equal {n}"),
        ));
    }
    let sum: u64 = d
        .cones
        .iter()
        .map(|c| (n / c.m) as u64 * c.c as u64 * c.mult as u64)
        .sum();
    if !sum.is_multiple_of(n as u64) {
        return Err(Error::validation(
            Clause::Congruence,
            format!("rotation sum {sum} is not divisible by {n}"),
        ));
    }
    rh_genus(n as u128, &d.signature())
        .ok_or_else(|| Error::validation(Clause::Integrality, "genus is not a non-negative integer".to_string()))
}
