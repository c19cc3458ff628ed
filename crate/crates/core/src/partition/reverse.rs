use std::collections::{BTreeMap, BTreeSet};

use super::{names_set, verify_s_partition, PartitionError, SCert, SClass, SKind, Searcher};

/// Outcome of reversing the facet order of an S-certificate.
#[derive(Clone, Debug)]
pub struct ReverseReport {
    /// True when the reversed classes partition every element but `top`.
    pub is_partition: bool,
    /// True when the reversed classes, with searched sub-certificates,
    /// form a valid S-certificate.
    pub certifies: bool,
    /// The reversed class of each coatom.
    pub classes: BTreeMap<String, BTreeSet<String>>,
    /// Element name to the coatom whose reversed class holds it.
    pub owner: BTreeMap<String, String>,
    pub problems: Vec<String>,
}

/// Builds the reversed classes of a verified S-certificate: the initial
/// class becomes `{s}`, the terminal class the whole closure of its
/// coatom, and an ordinary class `P_s` becomes `s` together with the part
/// of `closure(s) - s` outside `closure(P_s - s)`.
pub fn check_reverse_partition(cert: &SCert, budget: u64) -> Result<ReverseReport, PartitionError> {
    let v = verify_s_partition(cert);
    if !v.is_empty() {
        return Err(PartitionError::Violations(v));
    }
    let p = &cert.poset;
    let mut classes = BTreeMap::new();
    let mut new_kinds = BTreeMap::new();
    for cl in &cert.classes {
        let s = p.index_of(&cl.coatom).expect("verified");
        let set = match cl.kind {
            SKind::Initial => {
                let mut e = p.empty_set();
                e.insert(s);
                e
            }
            SKind::Terminal => p.below(s).clone(),
            SKind::Ordinary => {
                let mut rest = p.set_of(&cl.members)?;
                rest.set(s, false);
                let mut out = p.below(s).clone();
                out.difference_with(&p.closure(&rest));
                out.insert(s);
                out
            }
        };
        let kind = match cl.kind {
            SKind::Initial => SKind::Terminal,
            SKind::Terminal => SKind::Initial,
            SKind::Ordinary => SKind::Ordinary,
        };
        new_kinds.insert(cl.coatom.clone(), kind);
        classes.insert(cl.coatom.clone(), names_set(p, &set));
    }
    let mut owner: BTreeMap<String, String> = BTreeMap::new();
    let mut problems = Vec::new();
    for (c, ms) in &classes {
        for m in ms {
            if let Some(prev) = owner.insert(m.clone(), c.clone()) {
                problems.push(format!(
                    "{m} lies in the reversed classes of {prev} and {c}"
                ));
            }
        }
    }
    let top = p.elem_name(p.top());
    for n in p.names() {
        if n != top && !owner.contains_key(n) {
            problems.push(format!("{n} lies in no reversed class"));
        }
    }
    let is_partition = problems.is_empty();
    let mut certifies = false;
    if is_partition {
        let mut rev = SCert {
            poset: p.clone(),
            classes: classes
                .iter()
                .map(|(c, ms)| SClass {
                    coatom: c.clone(),
                    kind: new_kinds[c],
                    members: ms.clone(),
                    sub: None,
                })
                .collect(),
        };
        let structural = verify_s_partition(&rev)
            .into_iter()
            .filter(|v| v.code != "missing-sub")
            .collect::<Vec<_>>();
        if !structural.is_empty() {
            problems.extend(structural.iter().map(|v| v.to_string()));
        } else {
            match Searcher::new(budget).complete_s(&mut rev) {
                Ok(true) => {
                    let v = verify_s_partition(&rev);
                    certifies = v.is_empty();
                    problems.extend(v.iter().map(|v| v.to_string()));
                }
                Ok(false) => problems.push("some reversed class has no sub-certificate".into()),
                Err(e) => problems.push(e.to_string()),
            }
        }
    }
    Ok(ReverseReport {
        is_partition,
        certifies,
        classes,
        owner,
        problems,
    })
}
