mod common;

use std::collections::BTreeMap;

use cdx_core::flags::{cd_index, semi_cd_index};
use cdx_core::partition::{
    boundary_poset, cd_word_multiset, check_reverse_partition, contributions_s, contributions_se,
    gamma_poset, order_to_s_certificate, search_s_certificate, search_se_certificate,
    verify_s_partition, PartitionError, SCert, SKind, DEFAULT_BUDGET,
};
use cdx_core::poset::GradedPoset;
use cdx_core::zoo;
use proptest::prelude::*;

/// Checks every invariant of a verified S-certificate at every depth.
fn check_s_invariants(cert: &SCert) -> Result<(), TestCaseError> {
    prop_assert!(verify_s_partition(cert).is_empty());
    for (path, c) in cert.walk() {
        let p = &c.poset;
        let cm = contributions_s(c).unwrap();
        prop_assert_eq!(&cm.total, &cd_index(p).unwrap(), "{}", path);
        prop_assert!(cm.is_nonnegative(), "{}", path);
        let words = cd_word_multiset(&cm).unwrap();
        let mut summed: BTreeMap<_, num_bigint::BigInt> = BTreeMap::new();
        for ws in words.values() {
            for (w, k) in ws {
                *summed.entry(w.clone()).or_default() += k;
            }
        }
        let direct: BTreeMap<_, _> = cm
            .total
            .terms()
            .map(|(w, k)| (w.clone(), k.clone()))
            .collect();
        summed.retain(|_, k| *k != 0.into());
        if p.rank_top() > 1 {
            prop_assert_eq!(summed, direct);
        }
        for cl in c.classes.iter().filter(|c| c.kind == SKind::Ordinary) {
            let s = p.index_of(&cl.coatom).unwrap();
            let mut rest = p.set_of(&cl.members).unwrap();
            rest.set(s, false);
            let gamma = gamma_poset(p, s, &rest).unwrap();
            let bd = boundary_poset(&gamma).unwrap();
            // The sub-certificate's initial class certifies the boundary.
            let sub = cl.sub.as_ref().unwrap();
            let init = sub.initial().unwrap();
            let inner = init.sub.as_ref().unwrap();
            prop_assert_eq!(inner.poset.fingerprint(), bd.fingerprint());
            prop_assert!(verify_s_partition(inner).is_empty());
            // Chains through s with the rest in the boundary match the
            // chains of the boundary.
            prop_assert_eq!(chains_through(p, s, &bd), chain_count(&bd));
        }
    }
    Ok(())
}

fn chain_count(p: &GradedPoset) -> u64 {
    common::brute_flag_counts(p).values().sum()
}

/// Chains of the proper part of `p` that contain `s` and otherwise lie in
/// the proper part of `bd`.
fn chains_through(p: &GradedPoset, s: usize, bd: &GradedPoset) -> u64 {
    let bd_top = bd.top();
    let allowed: Vec<usize> = (0..bd.len())
        .filter(|&i| i != bd.bot() && i != bd_top)
        .map(|i| p.index_of(bd.elem_name(i)).unwrap())
        .collect();
    let mut n = 0;
    for (chain, k) in chains(p) {
        if chain.contains(&s) && chain.iter().all(|x| *x == s || allowed.contains(x)) {
            n += k;
        }
    }
    n
}

fn chains(p: &GradedPoset) -> Vec<(Vec<usize>, u64)> {
    let top = p.top();
    let mut out = Vec::new();
    let mut stack = vec![(p.bot(), Vec::new())];
    while let Some((x, ch)) = stack.pop() {
        out.push((ch.clone(), 1));
        for y in 0..p.len() {
            if y != x && y != top && p.le(x, y) {
                let mut c = ch.clone();
                c.push(y);
                stack.push((y, c));
            }
        }
    }
    out
}

#[test]
fn fixture_certificates_satisfy_invariants() {
    let fixtures = [
        zoo::q_polytope(),
        zoo::cube(3),
        zoo::simplex_boundary(4),
        zoo::cross_polytope(3),
        zoo::sphere2cells(5),
        zoo::pyramid(&zoo::cube(3)),
    ];
    for p in &fixtures {
        let cert = search_s_certificate(p, DEFAULT_BUDGET).unwrap();
        check_s_invariants(&cert).unwrap();
    }
}

#[test]
fn se_certificates_satisfy_invariants() {
    for p in [
        zoo::torus_fig6(),
        zoo::torus_fig12(),
        zoo::torus7(),
        zoo::icosahedron(),
    ] {
        let cert = search_se_certificate(&p, DEFAULT_BUDGET).unwrap();
        let cm = contributions_se(&cert).unwrap();
        assert_eq!(cm.total, semi_cd_index(&p).unwrap(), "{}", p.name());
        assert!(cm.is_nonnegative());
        for (path, sub) in cert.walk_subs() {
            let cm = contributions_s(sub).unwrap();
            assert!(cm.is_nonnegative(), "{path}");
            assert_eq!(cm.total, cd_index(&sub.poset).unwrap(), "{path}");
        }
    }
}

#[test]
fn fig13_has_no_se_certificate() {
    assert!(matches!(
        search_se_certificate(&zoo::fig13_nonsemi(), DEFAULT_BUDGET),
        Err(PartitionError::Precondition(_))
    ));
}

#[test]
fn connected_sum_order_concatenates_shellings() {
    // Q shelled ending at CAD, glued to Q shelled starting at CAD.
    let q = zoo::q_polytope();
    let iso: BTreeMap<String, String> = ["C", "A", "D", "CA", "CD", "AD", "bot"]
        .iter()
        .map(|n| (n.to_string(), n.to_string()))
        .collect();
    let sum = q.connected_sum(&q, "CAD", "CAD", &iso).unwrap();
    assert!(sum.is_eulerian());
    let shelling = zoo::Q_SHELLING;
    let mut order: Vec<String> = shelling[..6].iter().map(|f| format!("a.{f}")).collect();
    order.extend(shelling[..6].iter().rev().map(|f| format!("b.{f}")));
    let cert = order_to_s_certificate(&sum, &order, DEFAULT_BUDGET).unwrap();
    check_s_invariants(&cert).unwrap();
}

#[test]
fn reverse_of_q_certificate() {
    let q = zoo::q_polytope();
    let cert = order_to_s_certificate(&q, &zoo::Q_SHELLING, DEFAULT_BUDGET).unwrap();
    let r = check_reverse_partition(&cert, DEFAULT_BUDGET).unwrap();
    assert!(r.is_partition, "{:?}", r.problems);
    assert!(r.certifies, "{:?}", r.problems);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn searched_certificates_hold_invariants(seed in 0u64..10_000, r in 3usize..=4) {
        let p = zoo::random_eulerian_small(seed, r);
        match search_s_certificate(&p, 200_000) {
            Ok(cert) => check_s_invariants(&cert)?,
            Err(PartitionError::NotFound | PartitionError::BudgetExhausted(_)) => {
                prop_assume!(false);
            }
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn tampering_is_detected(seed in 0u64..1000, victim in 0usize..64) {
        let p = zoo::random_eulerian_small(seed, 4);
        let Ok(mut cert) = search_s_certificate(&p, 200_000) else {
            prop_assume!(false);
            unreachable!()
        };
        // Move one non-coatom element into a different class.
        let movable: Vec<(usize, String)> = cert
            .classes
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.members.iter().filter(|m| **m != c.coatom).map(move |m| (i, m.clone())))
            .collect();
        prop_assume!(!movable.is_empty());
        let (from, elem) = movable[victim % movable.len()].clone();
        let to = (from + 1) % cert.classes.len();
        cert.classes[from].members.remove(&elem);
        cert.classes[to].members.insert(elem);
        prop_assert!(!verify_s_partition(&cert).is_empty());
    }
}
