use super::*;
use crate::flags::cd_index;
use crate::ncpoly::{Alphabet, NcPolynomial};
use crate::zoo;

fn cd(s: &str) -> NcPolynomial {
    NcPolynomial::parse(s, Alphabet::Cd).unwrap()
}

#[test]
fn q_shelling_order_gives_certificate() {
    let q = zoo::q_polytope();
    let cert = order_to_s_certificate(&q, &zoo::Q_SHELLING, DEFAULT_BUDGET).unwrap();
    assert!(verify_s_partition(&cert).is_empty());
    assert!(cert.is_complete());
    let cm = contributions_s(&cert).unwrap();
    assert_eq!(cm.total, cd_index(&q).unwrap());
    assert_eq!(cm.total, cd("c^3 + 5cd + 5dc"));
    assert!(cm.is_nonnegative());
    assert_eq!(cm.get("ABHG"), Some(&cd("c^3 + 2dc")));
    assert!(cm.get("CAD").unwrap().is_zero());
}

#[test]
fn searched_certificates_sum_to_cd_index() {
    for p in [
        zoo::polygon(5),
        zoo::simplex_boundary(3),
        zoo::cube(3),
        zoo::cross_polytope(3),
        zoo::pyramid(&zoo::polygon(4)),
    ] {
        let cert = search_s_certificate(&p, DEFAULT_BUDGET).unwrap();
        assert!(verify_s_partition(&cert).is_empty(), "{}", p.name());
        let cm = contributions_s(&cert).unwrap();
        assert_eq!(cm.total, cd_index(&p).unwrap(), "{}", p.name());
        assert!(cm.is_nonnegative());
    }
}

#[test]
fn se_search_on_torus() {
    let t = zoo::torus_fig6();
    assert!(search_s_certificate(&t, DEFAULT_BUDGET).is_err());
    let cert = search_se_certificate(&t, DEFAULT_BUDGET).unwrap();
    assert!(verify_se_partition(&cert).is_empty());
    let cm = contributions_se(&cert).unwrap();
    assert_eq!(cm.total, crate::flags::semi_cd_index(&t).unwrap());
    assert!(cm.is_nonnegative());
}

#[test]
fn broken_certificates_report_violations() {
    let q = zoo::q_polytope();
    let good = order_to_s_certificate(&q, &zoo::Q_SHELLING, DEFAULT_BUDGET).unwrap();

    let mut overlap = good.clone();
    overlap.classes[0].members.insert("A".into());
    let codes: Vec<String> = verify_s_partition(&overlap)
        .into_iter()
        .map(|v| v.code)
        .collect();
    assert!(
        codes
            .iter()
            .any(|c| c == "overlap" || c == "class-not-in-closure"),
        "{codes:?}"
    );

    let mut missing = good.clone();
    let i = missing
        .classes
        .iter()
        .position(|c| c.kind == SKind::Ordinary)
        .unwrap();
    missing.classes[i].sub = None;
    let v = verify_s_partition(&missing);
    assert!(v.iter().any(|v| v.code == "missing-sub"));

    let mut dropped = good;
    dropped.classes.pop();
    let v = verify_s_partition(&dropped);
    assert!(v.iter().any(|v| v.code == "missing-class"));
}

#[test]
fn bad_orders_are_explained() {
    let q = zoo::q_polytope();
    let mut order: Vec<&str> = zoo::Q_SHELLING.to_vec();
    order.swap(0, 6);
    match order_to_s_certificate(&q, &order, DEFAULT_BUDGET) {
        Err(PartitionError::OrderFailure { .. }) | Ok(_) => {}
        Err(e) => panic!("unexpected {e}"),
    }
    let short = &zoo::Q_SHELLING[..3];
    assert!(matches!(
        order_to_s_certificate(&q, short, DEFAULT_BUDGET),
        Err(PartitionError::Precondition(_))
    ));
}

#[test]
fn text_round_trip() {
    let q = zoo::q_polytope();
    let cert = order_to_s_certificate(&q, &zoo::Q_SHELLING, DEFAULT_BUDGET).unwrap();
    let text = cert.to_text();
    let back = SCert::parse(&text, &q).unwrap();
    assert_eq!(back.to_text(), text);
    assert!(verify_s_partition(&back).is_empty());

    let t = zoo::torus_fig6();
    let se = search_se_certificate(&t, DEFAULT_BUDGET).unwrap();
    let text = se.to_text();
    let back = SeCert::parse(&text, &t).unwrap();
    assert_eq!(back.to_text(), text);
    assert!(verify_se_partition(&back).is_empty());
}

#[test]
fn parse_errors_carry_lines() {
    let q = zoo::q_polytope();
    let e = SCert::parse("spart Q\nclass NOPE kind=initial\n  members A\n", &q).unwrap_err();
    assert_eq!(e.line, 2);
    let e = SCert::parse("spart Q\nclass ABD kind=weird\n", &q).unwrap_err();
    assert_eq!(e.line, 2);
    let e = SCert::parse("separt Q\n", &q).unwrap_err();
    assert_eq!(e.line, 1);
}

#[test]
fn simplicial_partition_conversion() {
    let s = zoo::simplex_boundary(3);
    // Facets 012, 013, 023, 123 shelled in order; restriction faces
    // bot, 3, 2, 1 give the unique new minimal face of each step.
    let pairs = [("bot", "012"), ("3", "013"), ("23", "023"), ("123", "123")];
    let cert = simplicial_partition_to_s_certificate(&s, &pairs, DEFAULT_BUDGET).unwrap();
    assert!(verify_s_partition(&cert).is_empty());
    let bad = [
        ("bot", "012"),
        ("bot", "013"),
        ("23", "023"),
        ("123", "123"),
    ];
    assert!(matches!(
        simplicial_partition_to_s_certificate(&s, &bad, DEFAULT_BUDGET),
        Err(PartitionError::NotAPartition(_))
    ));
    assert!(matches!(
        simplicial_partition_to_s_certificate(&zoo::cube(3), &pairs, DEFAULT_BUDGET),
        Err(PartitionError::NotSimplicial(_))
    ));
}

#[test]
fn product_partition_of_triangles() {
    let a = search_s_certificate(&zoo::polygon(3), DEFAULT_BUDGET).unwrap();
    let se = product_se_partition(&a, &a, DEFAULT_BUDGET).unwrap();
    assert!(verify_se_partition(&se).is_empty());
    let cm = contributions_se(&se).unwrap();
    assert_eq!(cm.total, cd("c^3 + 9cd + 7dc"));
    assert_eq!(cm.total, crate::flags::semi_cd_index(&se.poset).unwrap());
    assert!(matches!(
        product_se_partition(
            &a,
            &search_s_certificate(&zoo::cube(3), DEFAULT_BUDGET).unwrap(),
            1000
        ),
        Err(PartitionError::RankNotThree(3, 4))
    ));
}

#[test]
fn budget_is_enforced() {
    assert!(matches!(
        search_s_certificate(&zoo::cube(3), 3),
        Err(PartitionError::BudgetExhausted(3))
    ));
}

#[test]
fn reverse_of_q_shelling() {
    let q = zoo::q_polytope();
    let cert = order_to_s_certificate(&q, &zoo::Q_SHELLING, DEFAULT_BUDGET).unwrap();
    let r = check_reverse_partition(&cert, DEFAULT_BUDGET).unwrap();
    assert!(r.is_partition, "{:?}", r.problems);
    assert_eq!(r.classes["ABHG"].len(), 1);
    assert_eq!(r.classes["CAD"].len(), 8);
}

#[test]
fn transcribed_certificates_load() {
    for (f, total) in [
        ("q-polytope", "c^3 + 5cd + 5dc"),
        ("torus-fig6", "c^3 + 13cd + 7dc"),
        ("torus-fig12", "c^3 + 9cd + 11dc"),
    ] {
        let cm = match zoo::fixture_certificate(f, &[]).unwrap() {
            zoo::FixtureCert::S(c) => contributions_s(&c).unwrap(),
            zoo::FixtureCert::Se(c) => contributions_se(&c).unwrap(),
        };
        assert_eq!(cm.total, cd(total), "{f}");
        assert!(cm.is_nonnegative());
    }
    assert!(matches!(
        zoo::fixture_certificate("cube", &[]),
        Err(zoo::ZooError::NoPublishedCertificate(_))
    ));
}
