//! S- and SE-partition certificates: verification, per-coatom
//! contributions to the cd-index, search, and conversions.
//!
//! A certificate names, for every coatom `s`, its class `P_s`. The classes
//! partition every element but `top`. Each class that needs one carries a
//! sub-certificate for a derived poset:
//!
//! * the initial class of `s` certifies the boundary of `s`, i.e. the
//!   lower interval of `s` with `s` renamed `top`;
//! * an ordinary class certifies the semisuspension of
//!   `Gamma_s = cap(closure(P_s - s), rank(s))`, whose new coatom is named
//!   `tau@s` (or `tau@s/j` for the `j`-th subclass of an SE class) and must
//!   be the initial coatom of the sub-certificate.

mod contrib;
mod format;
mod reverse;
mod search;
mod verify;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::flags::FlagError;
use crate::poset::{ElemSet, GradedPoset, PosetError};

pub use contrib::{cd_word_multiset, contributions_s, contributions_se, ContributionMap};
pub use format::ParseCertError;
pub use reverse::{check_reverse_partition, ReverseReport};
pub use search::{
    order_to_s_certificate, product_se_partition, search_s_certificate, search_se_certificate,
    simplicial_partition_to_s_certificate, Searcher, DEFAULT_ASSIGNMENT_LIMIT, DEFAULT_BUDGET,
};
pub use verify::{verify_s_partition, verify_se_partition};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SKind {
    Initial,
    Ordinary,
    Terminal,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SeKind {
    Initial,
    Ordinary,
    Singleton,
}

impl fmt::Display for SKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SKind::Initial => "initial",
            SKind::Ordinary => "ordinary",
            SKind::Terminal => "terminal",
        })
    }
}

impl fmt::Display for SeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeKind::Initial => "initial",
            SeKind::Ordinary => "ordinary",
            SeKind::Singleton => "singleton",
        })
    }
}

/// One class of an S-partition.
#[derive(Clone, Debug)]
pub struct SClass {
    pub coatom: String,
    pub kind: SKind,
    /// `P_s`, including the coatom itself.
    pub members: BTreeSet<String>,
    /// Certificate of the derived poset; `None` for terminal classes and
    /// for certificates whose sub-certificates have not been filled in.
    pub sub: Option<Box<SCert>>,
}

/// An S-partition certificate for `poset`.
#[derive(Clone, Debug)]
pub struct SCert {
    pub poset: GradedPoset,
    /// Classes in coatom name order.
    pub classes: Vec<SClass>,
}

/// A block `P_s^j` of an ordinary SE class.
#[derive(Clone, Debug)]
pub struct SeSubclass {
    pub members: BTreeSet<String>,
    pub sub: Option<Box<SCert>>,
}

/// One class of an SE-partition.
#[derive(Clone, Debug)]
pub struct SeClass {
    pub coatom: String,
    pub kind: SeKind,
    /// `P_s`, including the coatom itself.
    pub members: BTreeSet<String>,
    /// Certificate of the boundary of the initial coatom.
    pub sub: Option<Box<SCert>>,
    /// Blocks of `P_s - s` for ordinary classes, numbered from 1.
    pub subclasses: Vec<SeSubclass>,
}

/// An SE-partition certificate for `poset`.
#[derive(Clone, Debug)]
pub struct SeCert {
    pub poset: GradedPoset,
    pub classes: Vec<SeClass>,
}

impl SCert {
    pub fn class(&self, coatom: &str) -> Option<&SClass> {
        self.classes.iter().find(|c| c.coatom == coatom)
    }

    pub fn initial(&self) -> Option<&SClass> {
        self.classes.iter().find(|c| c.kind == SKind::Initial)
    }

    pub fn terminal(&self) -> Option<&SClass> {
        self.classes.iter().find(|c| c.kind == SKind::Terminal)
    }

    pub(crate) fn sort(&mut self) {
        self.classes.sort_by(|a, b| a.coatom.cmp(&b.coatom));
    }

    /// Every certificate in the tree, this one first, with its path.
    pub fn walk(&self) -> Vec<(String, &SCert)> {
        let mut out = Vec::new();
        walk_s(self, "root".to_string(), &mut out);
        out
    }

    /// True when every non-terminal class carries a sub-certificate, at
    /// every depth.
    pub fn is_complete(&self) -> bool {
        self.classes.iter().all(|c| match (&c.sub, c.kind) {
            (_, SKind::Terminal) => true,
            (Some(s), _) => s.is_complete(),
            (None, _) => false,
        })
    }
}

fn walk_s<'a>(c: &'a SCert, path: String, out: &mut Vec<(String, &'a SCert)>) {
    out.push((path.clone(), c));
    for cl in &c.classes {
        if let Some(s) = &cl.sub {
            walk_s(s, format!("{path}/{}", cl.coatom), out);
        }
    }
}

impl SeCert {
    pub fn class(&self, coatom: &str) -> Option<&SeClass> {
        self.classes.iter().find(|c| c.coatom == coatom)
    }

    pub fn initial(&self) -> Option<&SeClass> {
        self.classes.iter().find(|c| c.kind == SeKind::Initial)
    }

    pub(crate) fn sort(&mut self) {
        self.classes.sort_by(|a, b| a.coatom.cmp(&b.coatom));
    }

    /// Every S-certificate nested in this one, with its path.
    pub fn walk_subs(&self) -> Vec<(String, &SCert)> {
        let mut out = Vec::new();
        for cl in &self.classes {
            if let Some(s) = &cl.sub {
                walk_s(s, format!("root/{}", cl.coatom), &mut out);
            }
            for (j, sc) in cl.subclasses.iter().enumerate() {
                if let Some(s) = &sc.sub {
                    walk_s(s, format!("root/{}#{}", cl.coatom, j + 1), &mut out);
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.classes.iter().all(|c| match c.kind {
            SeKind::Singleton => true,
            SeKind::Initial => c.sub.as_ref().is_some_and(|s| s.is_complete()),
            SeKind::Ordinary => c
                .subclasses
                .iter()
                .all(|sc| sc.sub.as_ref().is_some_and(|s| s.is_complete())),
        })
    }
}

/// One failed condition somewhere in a certificate tree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub code: String,
    /// `root`, then `/<coatom>` per sub-certificate step (`#<j>` for SE
    /// subclasses).
    pub path: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VIOLATION {} {} {}", self.code, self.path, self.detail)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("certificate does not verify ({} violations)", .0.len())]
    Violations(Vec<Violation>),
    #[error("recursive and direct values differ at {path}: {recursive} vs {direct}")]
    CrossCheck {
        path: String,
        direct: String,
        recursive: String,
    },
    #[error(transparent)]
    Flag(#[from] FlagError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("negative coefficient {coeff} of {word} for {coatom}")]
    NegativeCoefficient {
        coatom: String,
        word: String,
        coeff: String,
    },
    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),
    #[error("no certificate exists in the searched family")]
    NotFound,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("both factors must have rank 3, got {0} and {1}")]
    RankNotThree(usize, usize),
    #[error("not a simplicial complex: {0}")]
    NotSimplicial(String),
    #[error("not a partition into intervals: {0}")]
    NotAPartition(String),
    #[error("class of {facet} fails: {reason}")]
    OrderFailure { facet: String, reason: String },
}

/// The boundary of coatom `s` as a poset: `[bot, s)` capped at `rank(s)`.
pub fn initial_sub_poset(p: &GradedPoset, s: usize) -> GradedPoset {
    p.lower_interval_capped(s)
        .with_name(format!("bd({})", p.elem_name(s)))
}

/// `cap(closure(rest), rank(s))` where `rest` is `P_s - s` or a block of it.
pub fn gamma_poset(p: &GradedPoset, s: usize, rest: &ElemSet) -> Result<GradedPoset, PosetError> {
    Ok(p.cap(&p.closure(rest), p.rank(s))?
        .with_name(format!("gamma({})", p.elem_name(s))))
}

/// Name of the coatom added by the semisuspension of an ordinary class.
pub fn tau_name(coatom: &str, block: Option<usize>) -> String {
    match block {
        None => format!("tau@{coatom}"),
        Some(j) => format!("tau@{coatom}/{j}"),
    }
}

/// The boundary of a near-Eulerian `gamma` as a capped poset.
pub fn boundary_poset(gamma: &GradedPoset) -> Result<GradedPoset, PosetError> {
    Ok(gamma
        .cap(&gamma.boundary_set(), gamma.rank_top() - 1)?
        .with_name(format!("bd({})", gamma.name())))
}

pub(crate) fn names_set(p: &GradedPoset, s: &ElemSet) -> BTreeSet<String> {
    p.names_of(s).into_iter().collect()
}

/// Per-coatom class membership, as a map from element name to coatom name.
pub fn membership(classes: &[(String, BTreeSet<String>)]) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    for (c, ms) in classes {
        for m in ms {
            out.insert(m.clone(), c.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests;
