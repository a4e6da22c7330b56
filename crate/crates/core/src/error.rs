use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Which clause of a data-set definition a value violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Clause {
    // cyclic data sets
    Divisibility,
    Lcm,
    Congruence,
    Integrality,
    // group data sets
    GenusIntegrality,
    OrderMismatch,
    Product,
    Generation,
    Parity,
    Witness,
    Degree,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Clause::Divisibility => "divisibility",
            Clause::Lcm => "lcm",
            Clause::Congruence => "congruence",
            Clause::Integrality => "integrality",
            Clause::GenusIntegrality => "genus-integrality",
            Clause::OrderMismatch => "order-mismatch",
            Clause::Product => "product",
            Clause::Generation => "generation",
            Clause::Parity => "parity",
            Clause::Witness => "witness",
            Clause::Degree => "degree",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0} is not an element of {1}")]
    Membership(String, String),

    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },

    #[error("group of order {order} is too large to tabulate (limit {limit})")]
    GroupTooLarge { order: usize, limit: usize },

    #[error("validation failed ({clause}): {detail}")]
    Validation { clause: Clause, detail: String },

    #[error("data sets have different kinds")]
    KindMismatch,

    #[error("period {0} is not the order of any element of the group")]
    PeriodNotRealizable(u32),

    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("non-integral value: {0}")]
    NonIntegral(String),

    #[error("negative multiplicity for cone ({u},{t})")]
    NegativeMultiplicity { u: u32, t: u32 },

    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(u64, u64),

    #[error("not an index-two subgroup: {0}")]
    NotIndexTwo(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn validation(clause: Clause, detail: impl Into<String>) -> Self {
        Error::Validation {
            clause,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
