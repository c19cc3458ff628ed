use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;

use super::{
    boundary_poset, gamma_poset, verify_s_partition, verify_se_partition, PartitionError, SCert,
    SKind, SeCert, SeKind,
};
use crate::flags::cd_index;
use crate::ncpoly::{Alphabet, Letter, NcPolynomial, Word};
use crate::poset::GradedPoset;

/// What each coatom adds to the cd-index, and the sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContributionMap {
    pub per_coatom: BTreeMap<String, NcPolynomial>,
    pub total: NcPolynomial,
}

impl ContributionMap {
    pub fn is_nonnegative(&self) -> bool {
        self.per_coatom.values().all(NcPolynomial::is_nonnegative)
    }

    pub fn get(&self, coatom: &str) -> Option<&NcPolynomial> {
        self.per_coatom.get(coatom)
    }
}

fn times(p: &NcPolynomial, l: Letter) -> NcPolynomial {
    p.multiply_right_letter(l).expect("cd polynomial")
}

fn sum<'a>(ps: impl IntoIterator<Item = &'a NcPolynomial>) -> NcPolynomial {
    ps.into_iter()
        .fold(NcPolynomial::zero(Alphabet::Cd), |a, b| &a + b)
}

/// Per-coatom contributions of a verified S-certificate:
/// the initial coatom gives `Phi(boundary)·c`, the terminal one 0, and an
/// ordinary one `Phi(boundary of Gamma)·d` plus `C(w)·c` for every
/// ordinary `w` of the sub-certificate.
///
/// Every boundary cd-index is computed directly from flag counts and
/// compared with the value the sub-certificates give recursively.
pub fn contributions_s(cert: &SCert) -> Result<ContributionMap, PartitionError> {
    let v = verify_s_partition(cert);
    if !v.is_empty() {
        return Err(PartitionError::Violations(v));
    }
    contrib_s(cert, "root")
}

/// Per-coatom contributions of a verified SE-certificate; an ordinary
/// class sums the S-style ordinary contribution over its blocks.
pub fn contributions_se(cert: &SeCert) -> Result<ContributionMap, PartitionError> {
    let v = verify_se_partition(cert);
    if !v.is_empty() {
        return Err(PartitionError::Violations(v));
    }
    contrib_se(cert)
}

fn one_cd() -> NcPolynomial {
    NcPolynomial::one(Alphabet::Cd)
}

fn initial_contribution(sub: &SCert, path: &str) -> Result<NcPolynomial, PartitionError> {
    let direct = cd_index(&sub.poset)?;
    let rec = contrib_s(sub, path)?.total;
    if direct != rec {
        return Err(PartitionError::CrossCheck {
            path: path.to_string(),
            direct: direct.to_string(),
            recursive: rec.to_string(),
        });
    }
    Ok(times(&direct, Letter::C))
}

/// Contribution of one ordinary class or SE block.
fn ordinary_contribution(
    p: &GradedPoset,
    s: usize,
    members: &std::collections::BTreeSet<String>,
    sub: &SCert,
    tau: &str,
    path: &str,
) -> Result<NcPolynomial, PartitionError> {
    let rest = p.set_of(members.iter().filter(|m| *m != p.elem_name(s)))?;
    let gamma = gamma_poset(p, s, &rest)?;
    let direct = cd_index(&boundary_poset(&gamma)?)?;
    let sub_map = contrib_s(sub, path)?;
    let tau_c = sub_map
        .per_coatom
        .get(tau)
        .cloned()
        .unwrap_or_else(|| NcPolynomial::zero(Alphabet::Cd));
    if times(&direct, Letter::C) != tau_c {
        return Err(PartitionError::CrossCheck {
            path: path.to_string(),
            direct: times(&direct, Letter::C).to_string(),
            recursive: tau_c.to_string(),
        });
    }
    let mut c = times(&direct, Letter::D);
    for cl in &sub.classes {
        if cl.kind == SKind::Ordinary {
            c = &c + &times(&sub_map.per_coatom[&cl.coatom], Letter::C);
        }
    }
    Ok(c)
}

fn contrib_s(cert: &SCert, path: &str) -> Result<ContributionMap, PartitionError> {
    let p = &cert.poset;
    if p.rank_top() == 1 {
        return Ok(ContributionMap {
            per_coatom: BTreeMap::new(),
            total: one_cd(),
        });
    }
    let mut per = BTreeMap::new();
    for cl in &cert.classes {
        let sub_path = format!("{path}/{}", cl.coatom);
        let c = match cl.kind {
            SKind::Terminal => NcPolynomial::zero(Alphabet::Cd),
            SKind::Initial => {
                initial_contribution(cl.sub.as_deref().expect("verified"), &sub_path)?
            }
            SKind::Ordinary => {
                let s = p.index_of(&cl.coatom).expect("verified");
                ordinary_contribution(
                    p,
                    s,
                    &without(&cl.members, &cl.coatom),
                    cl.sub.as_deref().expect("verified"),
                    &super::tau_name(&cl.coatom, None),
                    &sub_path,
                )?
            }
        };
        per.insert(cl.coatom.clone(), c);
    }
    let total = sum(per.values());
    Ok(ContributionMap {
        per_coatom: per,
        total,
    })
}

fn without(
    set: &std::collections::BTreeSet<String>,
    x: &str,
) -> std::collections::BTreeSet<String> {
    set.iter().filter(|m| *m != x).cloned().collect()
}

fn contrib_se(cert: &SeCert) -> Result<ContributionMap, PartitionError> {
    let p = &cert.poset;
    if p.rank_top() == 1 {
        return Ok(ContributionMap {
            per_coatom: BTreeMap::new(),
            total: one_cd(),
        });
    }
    let mut per = BTreeMap::new();
    for cl in &cert.classes {
        let c = match cl.kind {
            SeKind::Singleton => NcPolynomial::zero(Alphabet::Cd),
            SeKind::Initial => initial_contribution(
                cl.sub.as_deref().expect("verified"),
                &format!("root/{}", cl.coatom),
            )?,
            SeKind::Ordinary => {
                let s = p.index_of(&cl.coatom).expect("verified");
                let mut acc = NcPolynomial::zero(Alphabet::Cd);
                for (j, sc) in cl.subclasses.iter().enumerate() {
                    let c = ordinary_contribution(
                        p,
                        s,
                        &sc.members,
                        sc.sub.as_deref().expect("verified"),
                        &super::tau_name(&cl.coatom, Some(j + 1)),
                        &format!("root/{}#{}", cl.coatom, j + 1),
                    )?;
                    acc = &acc + &c;
                }
                acc
            }
        };
        per.insert(cl.coatom.clone(), c);
    }
    let total = sum(per.values());
    Ok(ContributionMap {
        per_coatom: per,
        total,
    })
}

/// Each coatom's contribution as a multiset of cd-words with multiplicity.
pub fn cd_word_multiset(
    cm: &ContributionMap,
) -> Result<BTreeMap<String, BTreeMap<Word, BigInt>>, PartitionError> {
    let mut out = BTreeMap::new();
    for (c, poly) in &cm.per_coatom {
        let mut words = BTreeMap::new();
        for (w, k) in poly.terms() {
            if k.is_negative() {
                return Err(PartitionError::NegativeCoefficient {
                    coatom: c.clone(),
                    word: w.to_string(),
                    coeff: k.to_string(),
                });
            }
            words.insert(w.clone(), k.clone());
        }
        out.insert(c.clone(), words);
    }
    Ok(out)
}
