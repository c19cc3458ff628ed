use std::collections::{BTreeMap, BTreeSet};

use super::{gamma_poset, initial_sub_poset, tau_name, SCert, SKind, SeCert, SeKind, Violation};
use crate::poset::{ElemSet, GradedPoset};

struct Out<'a> {
    list: &'a mut Vec<Violation>,
}

impl Out<'_> {
    fn push(&mut self, code: &str, path: &str, detail: impl Into<String>) {
        self.list.push(Violation {
            code: code.to_string(),
            path: path.to_string(),
            detail: detail.into(),
        });
    }
}

/// Checks every condition of an S-partition certificate, recursively.
/// An empty result means the certificate is valid.
pub fn verify_s_partition(cert: &SCert) -> Vec<Violation> {
    let mut list = Vec::new();
    verify_s_at(cert, "root", &mut Out { list: &mut list });
    list
}

/// Checks every condition of an SE-partition certificate, recursively.
pub fn verify_se_partition(cert: &SeCert) -> Vec<Violation> {
    let mut list = Vec::new();
    verify_se_at(cert, "root", &mut Out { list: &mut list });
    list
}

fn poset_ok(p: &GradedPoset, path: &str, out: &mut Out) -> bool {
    if let Some(v) = p.validate().first() {
        out.push("invalid-poset", path, v.to_string());
        return false;
    }
    true
}

/// Class coatoms and member sets checked against the poset; returns the
/// coatom index and member set of each class when names resolve.
fn check_partition<'c>(
    p: &GradedPoset,
    classes: impl Iterator<Item = (&'c str, &'c BTreeSet<String>)>,
    path: &str,
    out: &mut Out,
) -> Option<Vec<(usize, ElemSet)>> {
    let top = p.top();
    let coatoms: BTreeSet<usize> = p.coatoms().into_iter().collect();
    let mut seen = BTreeSet::new();
    let mut sets = Vec::new();
    let mut fatal = false;
    let mut owner: BTreeMap<usize, Vec<&str>> = BTreeMap::new();
    for (c, members) in classes {
        let Some(ci) = p.index_of(c).filter(|i| coatoms.contains(i)) else {
            out.push("not-a-coatom", path, c);
            fatal = true;
            continue;
        };
        if !seen.insert(ci) {
            out.push("duplicate-class", path, c);
        }
        let mut set = p.empty_set();
        for m in members {
            match p.index_of(m) {
                None => {
                    out.push("unknown-member", path, format!("{m} in class {c}"));
                    fatal = true;
                }
                Some(i) if i == top => out.push("top-in-class", path, c),
                Some(i) => {
                    set.insert(i);
                    owner.entry(i).or_default().push(c);
                }
            }
        }
        if !set.contains(ci) {
            out.push("coatom-not-in-class", path, c);
        }
        let mut outside = set.clone();
        outside.difference_with(p.below(ci));
        if outside.count_ones(..) > 0 {
            out.push(
                "class-not-in-closure",
                path,
                format!("{c}: {}", p.names_of(&outside).join(" ")),
            );
        }
        sets.push((ci, set));
    }
    for &ci in &coatoms {
        if !seen.contains(&ci) {
            out.push("missing-class", path, p.elem_name(ci));
        }
    }
    for (i, cs) in &owner {
        if cs.len() > 1 {
            out.push(
                "overlap",
                path,
                format!("{} in classes {}", p.elem_name(*i), cs.join(" ")),
            );
        }
    }
    let uncovered: Vec<&str> = (0..p.len())
        .filter(|&i| i != top && !owner.contains_key(&i))
        .map(|i| p.elem_name(i))
        .collect();
    if !uncovered.is_empty() {
        out.push("uncovered", path, uncovered.join(" "));
    }
    (!fatal).then_some(sets)
}

fn check_sub_poset(
    sub: Option<&SCert>,
    expected: &GradedPoset,
    path: &str,
    sub_path: &str,
    out: &mut Out,
) -> Option<()> {
    let Some(s) = sub else {
        out.push(
            "missing-sub",
            path,
            sub_path.rsplit('/').next().unwrap_or(""),
        );
        return None;
    };
    if s.poset.fingerprint() != expected.fingerprint() {
        out.push(
            "sub-poset-mismatch",
            sub_path,
            "sub-certificate is for a different poset",
        );
        return None;
    }
    verify_s_at(s, sub_path, out);
    Some(())
}

/// Conditions on an ordinary class (or SE block) with coatom `s` and
/// remaining members `rest`; `tau` names the semisuspension coatom.
#[allow(clippy::too_many_arguments)]
fn check_ordinary(
    p: &GradedPoset,
    s: usize,
    rest: &ElemSet,
    tau: &str,
    sub: Option<&SCert>,
    path: &str,
    sub_path: &str,
    out: &mut Out,
) {
    let name = p.elem_name(s);
    if rest.count_ones(..) == 0 {
        out.push("empty-ordinary-class", path, name);
        return;
    }
    let closure = p.closure(rest);
    let gamma = match gamma_poset(p, s, rest) {
        Ok(g) => g,
        Err(e) => {
            out.push("class-not-in-closure", path, format!("{name}: {e}"));
            return;
        }
    };
    if !gamma.is_near_eulerian() {
        out.push("gamma-not-near-eulerian", path, sub_path_label(sub_path));
        return;
    }
    let bd_names = gamma.names_of(&gamma.boundary_set());
    let bd = p
        .set_of(&bd_names)
        .expect("boundary of gamma lies in the ambient poset");
    let mut both = bd.clone();
    both.intersect_with(rest);
    if both.count_ones(..) > 0 {
        out.push(
            "boundary-not-disjoint",
            path,
            format!(
                "{}: {}",
                sub_path_label(sub_path),
                p.names_of(&both).join(" ")
            ),
        );
    }
    let mut union = bd;
    union.union_with(rest);
    if union != closure {
        let mut missing = closure.clone();
        missing.difference_with(&union);
        out.push(
            "boundary-mismatch",
            path,
            format!(
                "{}: closure has extra {}",
                sub_path_label(sub_path),
                p.names_of(&missing).join(" ")
            ),
        );
    }
    let (ss, _) = gamma.semisuspension_named(tau);
    if let Some(c) = sub {
        match c.initial() {
            Some(i) if i.coatom == tau => {}
            _ => out.push("sub-initial-not-tau", sub_path, format!("expected {tau}")),
        }
    }
    check_sub_poset(sub, &ss, path, sub_path, out);
}

fn sub_path_label(sub_path: &str) -> &str {
    sub_path.rsplit('/').next().unwrap_or(sub_path)
}

fn verify_s_at(cert: &SCert, path: &str, out: &mut Out) {
    let p = &cert.poset;
    if !poset_ok(p, path, out) {
        return;
    }
    if !p.is_eulerian() {
        out.push("not-eulerian", path, p.name());
        return;
    }
    if p.rank_top() == 1 {
        if !cert.classes.is_empty() {
            out.push("rank1-has-classes", path, "a rank-1 poset has no classes");
        }
        return;
    }
    let n_init = cert
        .classes
        .iter()
        .filter(|c| c.kind == SKind::Initial)
        .count();
    let n_term = cert
        .classes
        .iter()
        .filter(|c| c.kind == SKind::Terminal)
        .count();
    if n_init != 1 {
        out.push("initial-count", path, format!("{n_init} initial classes"));
    }
    if n_term != 1 {
        out.push("terminal-count", path, format!("{n_term} terminal classes"));
    }
    let Some(sets) = check_partition(
        p,
        cert.classes.iter().map(|c| (c.coatom.as_str(), &c.members)),
        path,
        out,
    ) else {
        return;
    };
    for (cl, (ci, set)) in cert.classes.iter().zip(&sets) {
        let sub_path = format!("{path}/{}", cl.coatom);
        match cl.kind {
            SKind::Initial => {
                if set != p.below(*ci) {
                    out.push("initial-not-closed", path, &cl.coatom);
                }
                let expected = initial_sub_poset(p, *ci);
                check_sub_poset(cl.sub.as_deref(), &expected, path, &sub_path, out);
            }
            SKind::Terminal => {
                if set.count_ones(..) != 1 {
                    out.push("terminal-not-singleton", path, &cl.coatom);
                }
            }
            SKind::Ordinary => {
                let mut rest = set.clone();
                rest.set(*ci, false);
                check_ordinary(
                    p,
                    *ci,
                    &rest,
                    &tau_name(&cl.coatom, None),
                    cl.sub.as_deref(),
                    path,
                    &sub_path,
                    out,
                );
            }
        }
    }
}

fn verify_se_at(cert: &SeCert, path: &str, out: &mut Out) {
    let p = &cert.poset;
    if !poset_ok(p, path, out) {
        return;
    }
    if !p.is_semi_eulerian() {
        out.push("not-semi-eulerian", path, p.name());
        return;
    }
    if p.rank_top() == 1 {
        if !cert.classes.is_empty() {
            out.push("rank1-has-classes", path, "a rank-1 poset has no classes");
        }
        return;
    }
    let n_init = cert
        .classes
        .iter()
        .filter(|c| c.kind == SeKind::Initial)
        .count();
    if n_init != 1 {
        out.push("initial-count", path, format!("{n_init} initial classes"));
    }
    let Some(sets) = check_partition(
        p,
        cert.classes.iter().map(|c| (c.coatom.as_str(), &c.members)),
        path,
        out,
    ) else {
        return;
    };
    for (cl, (ci, set)) in cert.classes.iter().zip(&sets) {
        match cl.kind {
            SeKind::Initial => {
                if set != p.below(*ci) {
                    out.push("initial-not-closed", path, &cl.coatom);
                }
                let expected = initial_sub_poset(p, *ci);
                let sub_path = format!("{path}/{}", cl.coatom);
                check_sub_poset(cl.sub.as_deref(), &expected, path, &sub_path, out);
            }
            SeKind::Singleton => {
                if set.count_ones(..) != 1 {
                    out.push("singleton-not-singleton", path, &cl.coatom);
                }
            }
            SeKind::Ordinary => {
                let mut rest = set.clone();
                rest.set(*ci, false);
                if cl.subclasses.is_empty() {
                    out.push("no-subclasses", path, &cl.coatom);
                    continue;
                }
                let mut seen = p.empty_set();
                let mut blocks = Vec::new();
                for (j, sc) in cl.subclasses.iter().enumerate() {
                    let Ok(b) = p.set_of(&sc.members) else {
                        out.push(
                            "unknown-member",
                            path,
                            format!("subclass {} of {}", j + 1, cl.coatom),
                        );
                        return;
                    };
                    let mut clash = b.clone();
                    clash.intersect_with(&seen);
                    if clash.count_ones(..) > 0 {
                        out.push(
                            "subclass-overlap",
                            path,
                            format!("{}: {}", cl.coatom, p.names_of(&clash).join(" ")),
                        );
                    }
                    seen.union_with(&b);
                    blocks.push(b);
                }
                if seen != rest {
                    out.push(
                        "subclass-cover",
                        path,
                        format!("subclasses of {} do not partition the class", cl.coatom),
                    );
                }
                for (j, (sc, b)) in cl.subclasses.iter().zip(&blocks).enumerate() {
                    let sub_path = format!("{path}/{}#{}", cl.coatom, j + 1);
                    check_ordinary(
                        p,
                        *ci,
                        b,
                        &tau_name(&cl.coatom, Some(j + 1)),
                        sc.sub.as_deref(),
                        path,
                        &sub_path,
                        out,
                    );
                }
            }
        }
    }
}
