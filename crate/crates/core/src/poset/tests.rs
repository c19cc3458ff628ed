use super::*;
use crate::zoo::{
    cross_polytope, cube, discrete_points, fig13_nonsemi, point, polygon, q_polytope,
    simplex_boundary, torus_fig6,
};

fn diamond() -> GradedPoset {
    GradedPoset::new(
        "diamond",
        2,
        [("bot", 0), ("s1", 1), ("s2", 1), ("top", 2)],
        [("bot", "s1"), ("bot", "s2"), ("s1", "top"), ("s2", "top")],
    )
    .unwrap()
}

fn idx(p: &GradedPoset, n: &str) -> usize {
    p.index_of(n).unwrap()
}

#[test]
fn validate_examples() {
    assert!(diamond().validate().is_empty());
    let no_up = GradedPoset::new(
        "d",
        2,
        [("bot", 0), ("s1", 1), ("s2", 1), ("top", 2)],
        [("bot", "s1"), ("bot", "s2"), ("s1", "top")],
    )
    .unwrap();
    let v = no_up.validate();
    assert_eq!(v.len(), 1);
    assert_eq!(v[0].code, "not-bounded-above");
    assert_eq!(v[0].detail, "s2");
    let skip = GradedPoset::new(
        "d",
        2,
        [("bot", 0), ("s1", 1), ("top", 2)],
        [("bot", "s1"), ("bot", "top"), ("s1", "top")],
    )
    .unwrap();
    assert!(skip.validate().iter().any(|v| v.code == "not-graded"));
}

#[test]
fn mobius_examples() {
    let d = diamond();
    assert_eq!(d.mobius(d.bot(), d.top()), Ok(1));
    let t = simplex_boundary(2);
    assert_eq!(t.mobius(t.bot(), t.top()), Ok(-1));
    assert_eq!(t.mobius(3, 3), Ok(1));
    let (a, b) = (idx(&t, "0"), idx(&t, "1"));
    assert!(t.mobius(a, b).is_err());
}

#[test]
fn euler_status() {
    assert!(diamond().is_eulerian());
    assert!(q_polytope().is_eulerian());
    let t = torus_fig6();
    assert!(!t.is_eulerian());
    assert!(t.is_semi_eulerian());
    assert!(!fig13_nonsemi().is_semi_eulerian());
    assert!(cube(3).is_semi_eulerian());
}

#[test]
fn closure_examples() {
    let q = q_polytope();
    let all = q.closure(&q.set_of(["top"]).unwrap());
    assert_eq!(all.count_ones(..), q.len());
    assert_eq!(q.closure(&q.empty_set()).count_ones(..), 0);
    let c = q.closure_of(idx(&q, "ABHG"));
    let mut names = q.names_of(&c);
    names.sort();
    assert_eq!(
        names,
        ["A", "AB", "ABHG", "AG", "B", "BH", "G", "GH", "H", "bot"]
    );
}

#[test]
fn cap_examples() {
    let q = q_polytope();
    let sq = q.lower_interval_capped(idx(&q, "ABHG"));
    assert!(sq.is_valid());
    assert_eq!(sq.rank_counts(), polygon(4).rank_counts());
    assert!(sq.is_eulerian());
    let b = q.set_of(["bot"]).unwrap();
    let chain = q.cap(&b, 1).unwrap();
    assert_eq!(chain.len(), 2);
    assert!(chain.is_valid());
    let high = q.closure_of(idx(&q, "ABHG"));
    assert!(matches!(
        q.cap(&high, 2),
        Err(PosetError::RankTooLow { .. })
    ));
}

/// Three edges of the square ABHG (all but GH) with their vertices.
fn path_gamma(q: &GradedPoset) -> GradedPoset {
    let s = q.closure(&q.set_of(["AB", "BH", "AG"]).unwrap());
    q.cap(&s, 3).unwrap()
}

#[test]
fn boundary_examples() {
    let q = q_polytope();
    let g = path_gamma(&q);
    let mut b = g.names_of(&g.boundary_set());
    b.sort();
    assert_eq!(b, ["G", "H", "bot"]);
    assert_eq!(q.boundary_set().count_ones(..), 0);
    let closed = q.cap(&q.closure_of(idx(&q, "ABHG")), 4).unwrap();
    let bd = closed.boundary_set();
    assert_eq!(bd.count_ones(..), 9);
    assert_eq!(closed.closure(&bd), bd);
}

#[test]
fn semisuspension_examples() {
    let q = q_polytope();
    let g = path_gamma(&q);
    let (ss, tau) = g.semisuspension();
    assert_eq!(ss.elem_name(tau), "tau");
    assert!(ss.is_valid() && ss.is_eulerian());
    assert_eq!(ss.rank_counts(), polygon(4).rank_counts());
    let two = q
        .cap(&q.closure(&q.set_of(["AD", "BD"]).unwrap()), 3)
        .unwrap();
    let (ss2, _) = two.semisuspension();
    assert_eq!(ss2.rank_counts(), polygon(3).rank_counts());
    assert!(ss2.is_eulerian());
}

#[test]
fn near_eulerian_examples() {
    let q = q_polytope();
    assert!(path_gamma(&q).is_near_eulerian());
    assert!(!q.is_near_eulerian());
    assert!(!polygon(5).is_near_eulerian());
    // two opposite edges of a square: disconnected, not a ball
    let s = q.closure(&q.set_of(["AB", "GH"]).unwrap());
    assert!(!q.cap(&s, 3).unwrap().is_near_eulerian());
}

#[test]
fn product_examples() {
    let t = polygon(3).product(&polygon(3));
    assert!(t.is_valid());
    assert_eq!(t.rank_counts(), [1, 9, 18, 9, 1]);
    assert!(t.is_semi_eulerian());
    assert!(!t.is_eulerian());
    let p = q_polytope();
    let same = p.product(&point());
    assert_eq!(same.rank_counts(), p.rank_counts());
    assert!(same.is_eulerian());
}

#[test]
fn connected_sum_examples() {
    let s = simplex_boundary(3);
    let f = "012";
    let sum = crate::zoo::self_connected_sum(&s, f);
    assert!(sum.is_valid());
    assert!(sum.is_eulerian());
    assert_eq!(sum.coatoms().len(), 2 * 4 - 2);
    let c = cube(3);
    let mut iso = std::collections::BTreeMap::new();
    iso.insert("0".to_string(), "00*".to_string());
    assert!(matches!(
        s.connected_sum(&c, f, "00*", &iso),
        Err(PosetError::NotAnIsomorphism(_))
    ));
}

#[test]
fn mobius_matches_parity_test() {
    for p in [
        q_polytope(),
        cross_polytope(3),
        torus_fig6(),
        discrete_points(3),
    ] {
        let (b, t) = (p.bot(), p.top());
        let mut ok = true;
        let mut semi = true;
        for x in 0..p.len() {
            let mu = p.mobius_from(x);
            for y in 0..p.len() {
                if let Some(m) = mu[y] {
                    let sign = if (p.rank(y) - p.rank(x)) % 2 == 0 {
                        1
                    } else {
                        -1
                    };
                    if m != sign {
                        ok = false;
                        if (x, y) != (b, t) {
                            semi = false;
                        }
                    }
                }
            }
        }
        assert_eq!(ok, p.is_eulerian(), "{}", p.name());
        assert_eq!(semi, p.is_semi_eulerian(), "{}", p.name());
    }
}

#[test]
fn text_round_trip() {
    let q = q_polytope();
    let text = q.to_text_with_header(&["provenance: test"]);
    let back = GradedPoset::parse(&text).unwrap();
    assert_eq!(back.fingerprint(), q.fingerprint());
    assert_eq!(back.name(), "Q");
}

#[test]
fn parse_errors_carry_lines() {
    let e = GradedPoset::parse("poset x\nrank 1\nelem bot 0\ncover bot nope\n").unwrap_err();
    assert_eq!(e.line, 4);
    let e = GradedPoset::parse("poset x\nrank 1\nbogus\n").unwrap_err();
    assert_eq!(e.line, 3);
    let e = GradedPoset::parse("poset x\nrank 2\nelem a 1\nelem a 1\n").unwrap_err();
    assert_eq!(e.line, 4);
}
