//! Partition certificates transcribed from drawings. Only the top-level
//! classes are transcribed; sub-certificates are filled in by search.

use std::collections::BTreeSet;

use super::figures::{q_polytope, torus_fig12, torus_fig6, Q_SHELLING};
use super::ZooError;
use crate::flags::{cd_index, semi_cd_index};
use crate::partition::{
    contributions_s, contributions_se, order_to_s_certificate, verify_se_partition, SCert, SeCert,
    SeClass, SeKind, SeSubclass, Searcher, DEFAULT_BUDGET,
};
use crate::poset::GradedPoset;

#[derive(Clone, Debug)]
pub enum FixtureCert {
    S(SCert),
    Se(SeCert),
}

/// Top-level classes of the torus of [`torus_fig6`]: coatom, kind, and
/// the blocks of each ordinary class (coatom excluded).
const TORUS6_CLASSES: &[(&str, SeKind, &[&[&str]])] = &[
    ("S02", SeKind::Initial, &[]),
    ("U12", SeKind::Ordinary, &[&["h10", "g12", "v20"]]),
    ("L12", SeKind::Ordinary, &[&["h12", "u22", "v22"]]),
    ("S22", SeKind::Ordinary, &[&["h22"], &["h20"]]),
    ("U01", SeKind::Ordinary, &[&["u01", "g01", "v01"]]),
    ("L01", SeKind::Ordinary, &[&["h01", "u11", "v11"]]),
    ("S11", SeKind::Ordinary, &[&["h11", "u21", "v21"]]),
    ("S20", SeKind::Singleton, &[]),
    ("S00", SeKind::Ordinary, &[&["u00"], &["u10"]]),
    ("U10", SeKind::Ordinary, &[&["g10"]]),
    ("L10", SeKind::Ordinary, &[&["u20"]]),
    ("U21", SeKind::Ordinary, &[&["g21"]]),
    ("L21", SeKind::Ordinary, &[&["h21"]]),
];

/// Top-level classes of the torus of [`torus_fig12`].
const TORUS12_CLASSES: &[(&str, SeKind, &[&[&str]])] = &[
    ("oct", SeKind::Initial, &[]),
    (
        "P1",
        SeKind::Ordinary,
        &[&["Xp", "pI", "7r", "Xr", "X", "p", "r"]],
    ),
    ("Sl", SeKind::Singleton, &[]),
    ("P2", SeKind::Ordinary, &[&["qH"]]),
    ("Sb", SeKind::Ordinary, &[&["Nr"]]),
    ("P3", SeKind::Ordinary, &[&["Qs"], &["Xq"]]),
    ("Sr", SeKind::Ordinary, &[&["Wq", "pq", "q"]]),
    ("P4", SeKind::Ordinary, &[&["Zp"], &["Xs"]]),
    ("St", SeKind::Ordinary, &[&["8s", "rs", "s"]]),
];

fn load_error(family: &str, reason: impl ToString) -> ZooError {
    ZooError::LoadCheck {
        family: family.to_string(),
        reason: reason.to_string(),
    }
}

fn se_from_table(
    family: &str,
    p: GradedPoset,
    table: &[(&str, SeKind, &[&[&str]])],
) -> Result<SeCert, ZooError> {
    let mut classes = Vec::new();
    for &(coatom, kind, blocks) in table {
        let s = p
            .index_of(coatom)
            .ok_or_else(|| load_error(family, format!("unknown coatom {coatom}")))?;
        let mut members: BTreeSet<String> = match kind {
            SeKind::Initial => p.names_of(p.below(s)).into_iter().collect(),
            _ => [coatom.to_string()].into(),
        };
        let subclasses = blocks
            .iter()
            .map(|b| {
                let ms: BTreeSet<String> = b.iter().map(|m| m.to_string()).collect();
                members.extend(ms.iter().cloned());
                SeSubclass {
                    members: ms,
                    sub: None,
                }
            })
            .collect();
        classes.push(SeClass {
            coatom: coatom.to_string(),
            kind,
            members,
            sub: None,
            subclasses,
        });
    }
    classes.sort_by(|a, b| a.coatom.cmp(&b.coatom));
    let mut cert = SeCert { poset: p, classes };
    let mut searcher = Searcher::new(DEFAULT_BUDGET);
    if !searcher
        .complete_se(&mut cert)
        .map_err(|e| load_error(family, e))?
    {
        return Err(load_error(family, "a sub-certificate could not be found"));
    }
    if let Some(v) = verify_se_partition(&cert).first() {
        return Err(load_error(family, v));
    }
    let cm = contributions_se(&cert).map_err(|e| load_error(family, e))?;
    let direct = semi_cd_index(&cert.poset).map_err(|e| load_error(family, e))?;
    if cm.total != direct {
        return Err(load_error(
            family,
            format!(
                "contributions sum to {} but the semi cd-index is {direct}",
                cm.total
            ),
        ));
    }
    Ok(cert)
}

/// The transcribed certificate of a fixture that has one.
pub fn fixture_certificate(family: &str, params: &[usize]) -> Result<FixtureCert, ZooError> {
    if !params.is_empty() {
        return Err(ZooError::BadParams {
            family: family.to_string(),
            reason: "takes no parameters".into(),
        });
    }
    match family {
        "q-polytope" => {
            let q = q_polytope();
            let cert = order_to_s_certificate(&q, &Q_SHELLING, DEFAULT_BUDGET)
                .map_err(|e| load_error(family, e))?;
            let cm = contributions_s(&cert).map_err(|e| load_error(family, e))?;
            if Ok(&cm.total) != cd_index(&q).as_ref() {
                return Err(load_error(family, "contributions disagree with cd-index"));
            }
            Ok(FixtureCert::S(cert))
        }
        "torus-fig6" => se_from_table(family, torus_fig6(), TORUS6_CLASSES).map(FixtureCert::Se),
        "torus-fig12" => se_from_table(family, torus_fig12(), TORUS12_CLASSES).map(FixtureCert::Se),
        _ => Err(ZooError::NoPublishedCertificate(family.to_string())),
    }
}
