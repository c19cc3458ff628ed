//! End-to-end acceptance run. Prints one PASS / FAIL / SKIP line per
//! criterion and fails if any criterion fails.

mod common;

use std::cell::RefCell;
use std::time::{Duration, Instant};

use cdx_core::flags::{
    ab_polynomial, cd_index, check_dehn_sommerville, euler_characteristic, flag_f, flag_h,
    modified_flag_f, semi_cd_index,
};
use cdx_core::ncpoly::{cd_words, Alphabet, NcPolynomial};
use cdx_core::partition::{
    contributions_s, contributions_se, product_se_partition, search_s_certificate,
    search_se_certificate, verify_s_partition, verify_se_partition, ContributionMap, SCert, SeCert,
    DEFAULT_BUDGET,
};
use cdx_core::poset::GradedPoset;
use cdx_core::zoo::{self, FixtureCert};

use common::brute_flag_counts;

type Outcome = Result<String, String>;

enum Status {
    Pass(String),
    Fail(String),
    Skip(String),
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(format!($($fmt)*));
        }
    };
}

fn cd(s: &str) -> NcPolynomial {
    NcPolynomial::parse(s, Alphabet::Cd).expect("literal cd polynomial")
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

thread_local! {
    /// Every contribution map computed during the run, with a label.
    static SEEN: RefCell<Vec<(String, ContributionMap)>> = const { RefCell::new(Vec::new()) };
}

fn record(label: &str, cm: &ContributionMap) {
    SEEN.with(|s| s.borrow_mut().push((label.to_string(), cm.clone())));
}

/// Contributions of a certificate and of every certificate nested in it.
fn record_s_tree(label: &str, c: &SCert) -> Result<ContributionMap, String> {
    let top = contributions_s(c).map_err(err)?;
    record(label, &top);
    for (path, sub) in c.walk().into_iter().skip(1) {
        record(
            &format!("{label} {path}"),
            &contributions_s(sub).map_err(err)?,
        );
    }
    Ok(top)
}

fn record_se_tree(label: &str, c: &SeCert) -> Result<ContributionMap, String> {
    let top = contributions_se(c).map_err(err)?;
    record(label, &top);
    for (path, sub) in c.walk_subs() {
        record(
            &format!("{label} {path}"),
            &contributions_s(sub).map_err(err)?,
        );
    }
    Ok(top)
}

fn check_rows(cm: &ContributionMap, rows: &[(&str, &str)]) -> Result<(), String> {
    ensure!(
        cm.per_coatom.len() == rows.len(),
        "{} rows, expected {}",
        cm.per_coatom.len(),
        rows.len()
    );
    for (coatom, want) in rows {
        let got = cm
            .get(coatom)
            .ok_or_else(|| format!("no row for {coatom}"))?;
        ensure!(*got == cd(want), "{coatom}: {got} != {want}");
    }
    Ok(())
}

fn c1_q_polytope() -> Outcome {
    let q = zoo::gen("q-polytope", &[]).map_err(err)?;
    let direct = cd_index(&q).map_err(err)?;
    ensure!(direct == cd("c^3 + 5cd + 5dc"), "direct cd-index {direct}");
    let FixtureCert::S(cert) = zoo::fixture_certificate("q-polytope", &[]).map_err(err)? else {
        return Err("expected an S-certificate".into());
    };
    let cm = record_s_tree("Q", &cert)?;
    ensure!(cm.total == direct, "contributions total {}", cm.total);
    check_rows(
        &cm,
        &[
            ("ABHG", "c^3 + 2dc"),
            ("BCFH", "cd + 2dc"),
            ("FGH", "cd"),
            ("CAGF", "cd"),
            ("ABD", "cd + dc"),
            ("BCD", "cd"),
            ("CAD", "0"),
        ],
    )?;
    Ok(format!("Phi(Q) = {direct}, 7 rows match"))
}

fn c2_torus6() -> Outcome {
    let t = zoo::gen("torus-fig6", &[]).map_err(err)?;
    let chi = euler_characteristic(&t);
    ensure!(chi == 0.into(), "chi = {chi}");
    ensure!(!t.is_eulerian(), "torus is Eulerian");
    ensure!(t.is_semi_eulerian(), "torus is not semi-Eulerian");
    let direct = semi_cd_index(&t).map_err(err)?;
    ensure!(direct == cd("c^3 + 13cd + 7dc"), "semi cd-index {direct}");
    let FixtureCert::Se(cert) = zoo::fixture_certificate("torus-fig6", &[]).map_err(err)? else {
        return Err("expected an SE-certificate".into());
    };
    let cm = record_se_tree("torus6", &cert)?;
    ensure!(cm.total == direct, "contributions total {}", cm.total);
    check_rows(
        &cm,
        &[
            ("S02", "c^3 + 2dc"),
            ("U12", "cd + dc"),
            ("L12", "cd + dc"),
            ("S22", "2cd"),
            ("U01", "cd + dc"),
            ("L01", "cd + dc"),
            ("S11", "cd + dc"),
            ("S20", "0"),
            ("S00", "2cd"),
            ("U10", "cd"),
            ("L10", "cd"),
            ("U21", "cd"),
            ("L21", "cd"),
        ],
    )?;
    Ok(format!(
        "chi = 0, semi cd-index {direct}, 13 class totals match"
    ))
}

fn c3_torus12() -> Outcome {
    let FixtureCert::Se(cert) = zoo::fixture_certificate("torus-fig12", &[]).map_err(err)? else {
        return Err("expected an SE-certificate".into());
    };
    let cm = record_se_tree("torus12", &cert)?;
    ensure!(cm.total == cd("c^3 + 9cd + 11dc"), "total {}", cm.total);
    let direct = semi_cd_index(&cert.poset).map_err(err)?;
    ensure!(cm.total == direct, "direct {direct}");
    let init = cert.initial().ok_or("no initial class")?;
    let want = cd("c^2 + 6d").try_mul(&cd("c")).map_err(err)?;
    ensure!(
        cm.get(&init.coatom) == Some(&want),
        "initial class gives {:?}",
        cm.get(&init.coatom)
    );
    Ok(format!("total {}, initial {want}", cm.total))
}

fn c4_sphere2cells() -> Outcome {
    for d in 0..=8 {
        let p = zoo::gen("sphere2cells", &[d]).map_err(err)?;
        let want = cd(&format!("c^{}", d + 1));
        let direct = cd_index(&p).map_err(err)?;
        ensure!(direct == want, "d={d}: {direct}");
        let cert = search_s_certificate(&p, DEFAULT_BUDGET).map_err(err)?;
        let cm = record_s_tree(&format!("sphere2cells {d}"), &cert)?;
        ensure!(cm.total == want, "d={d}: recursive {}", cm.total);
    }
    Ok("c^(d+1) for d = 0..8, directly and recursively".into())
}

fn c5_polygons() -> Outcome {
    for n in 3..=12 {
        let p = zoo::gen("polygon", &[n]).map_err(err)?;
        let brute = brute_flag_counts(&p);
        let f = flag_f(&p);
        for (ranks, count) in &brute {
            ensure!(
                *f.at(ranks) == (*count).into(),
                "n={n} ranks {ranks:?}: {} vs oracle {count}",
                f.at(ranks)
            );
        }
        let got = cd_index(&p).map_err(err)?;
        let want = cd(&format!("c^2 + {}d", n - 2));
        ensure!(got == want, "n={n}: {got}");
    }
    let sq = cd_index(&zoo::polygon(4)).map_err(err)?;
    ensure!(sq == cd("c^2 + 2d"), "square {sq}");
    Ok("c^2 + (n-2)d for n = 3..12, flags match the chain oracle".into())
}

fn eulerian_fixtures() -> Result<Vec<GradedPoset>, String> {
    let mut out = Vec::new();
    for n in 1..=5 {
        out.push(zoo::gen("simplex-boundary", &[n]).map_err(err)?);
    }
    out.push(zoo::gen("cube", &[3]).map_err(err)?);
    for n in 3..=12 {
        out.push(zoo::gen("polygon", &[n]).map_err(err)?);
    }
    out.push(zoo::gen("q-polytope", &[]).map_err(err)?);
    for d in 0..=8 {
        out.push(zoo::gen("sphere2cells", &[d]).map_err(err)?);
    }
    for seed in 0..100 {
        out.push(zoo::random_eulerian_small(seed, 5));
    }
    Ok(out)
}

fn c6_eulerian_suite() -> Outcome {
    let all = eulerian_fixtures()?;
    for p in &all {
        ensure!(p.is_eulerian(), "{} is not Eulerian", p.name());
        let f = flag_f(p);
        let ds = check_dehn_sommerville(&f);
        ensure!(ds.is_empty(), "{}: {}", p.name(), ds[0]);
        let phi = cd_index(p).map_err(|e| format!("{}: {e}", p.name()))?;
        let ab = ab_polynomial(&flag_h(&f));
        ensure!(
            phi.expand_cd_to_ab().map_err(err)? == ab,
            "{}: expansion of {phi} differs from the ab-index",
            p.name()
        );
        for x in 0..p.len() {
            let mu = p.mobius_from(x);
            for y in 0..p.len() {
                if p.le(x, y) {
                    let sign = if (p.rank(y) - p.rank(x)) % 2 == 0 {
                        1
                    } else {
                        -1
                    };
                    ensure!(
                        mu[y] == Some(sign),
                        "{}: mu({}, {}) = {:?}",
                        p.name(),
                        p.elem_name(x),
                        p.elem_name(y),
                        mu[y]
                    );
                }
            }
        }
    }
    Ok(format!("{} Eulerian posets", all.len()))
}

fn c7_semi_eulerian_suite() -> Outcome {
    let t = zoo::gen("torus-fig6", &[]).map_err(err)?;
    ensure!(
        !check_dehn_sommerville(&flag_f(&t)).is_empty(),
        "raw torus flag vector satisfies Dehn-Sommerville"
    );
    let m = modified_flag_f(&t);
    let ds = check_dehn_sommerville(&m.vector());
    ensure!(ds.is_empty(), "modified vector fails {}", ds[0]);
    let all = eulerian_fixtures()?;
    for p in &all {
        let m = modified_flag_f(p);
        ensure!(
            m.correction == 0.into(),
            "{}: correction {}",
            p.name(),
            m.correction
        );
        ensure!(
            semi_cd_index(p).map_err(err)? == cd_index(p).map_err(err)?,
            "{}: semi cd-index differs",
            p.name()
        );
    }
    Ok(format!(
        "torus DS fails raw and holds modified; {} fixtures agree",
        all.len()
    ))
}

fn c8_product() -> Outcome {
    let tri = zoo::polygon(3);
    let prod = tri.product(&tri);
    let f = flag_f(&prod);
    let want: &[(&[usize], u32)] = &[
        (&[1], 9),
        (&[2], 18),
        (&[3], 9),
        (&[1, 2], 36),
        (&[1, 3], 36),
        (&[2, 3], 36),
        (&[1, 2, 3], 72),
    ];
    for (ranks, n) in want {
        ensure!(*f.at(ranks) == (*n).into(), "f{ranks:?} = {}", f.at(ranks));
    }
    let m = modified_flag_f(&prod);
    ensure!(m.correction == 2.into(), "correction {}", m.correction);
    let direct = semi_cd_index(&prod).map_err(err)?;
    ensure!(direct == cd("c^3 + 9cd + 7dc"), "semi cd-index {direct}");
    let ct = search_s_certificate(&tri, DEFAULT_BUDGET).map_err(err)?;
    let se = product_se_partition(&ct, &ct, DEFAULT_BUDGET).map_err(err)?;
    let v = verify_se_partition(&se);
    ensure!(v.is_empty(), "{}", v[0]);
    let cm = record_se_tree("triangle x triangle", &se)?;
    ensure!(cm.total == direct, "recursive total {}", cm.total);
    Ok(format!("SE certificate verifies, total {direct}"))
}

fn c9_pseudomanifolds() -> Outcome {
    let mut notes = Vec::new();
    for fam in ["octahedron", "icosahedron", "torus7"] {
        let p = zoo::gen(fam, &[]).map_err(err)?;
        let facets = p.coatoms().len();
        ensure!(facets <= 30, "{fam} has {facets} facets");
        let start = Instant::now();
        let cert = search_se_certificate(&p, DEFAULT_BUDGET).map_err(|e| format!("{fam}: {e}"))?;
        let took = start.elapsed();
        ensure!(took < Duration::from_secs(60), "{fam} took {took:?}");
        let v = verify_se_partition(&cert);
        ensure!(v.is_empty(), "{fam}: {}", v[0]);
        let cm = record_se_tree(fam, &cert)?;
        ensure!(cm.is_nonnegative(), "{fam}: negative contribution");
        ensure!(
            cm.total == semi_cd_index(&p).map_err(err)?,
            "{fam}: total {}",
            cm.total
        );
        notes.push(format!("{fam} {:.2}s", took.as_secs_f64()));
    }
    Ok(notes.join(", "))
}

fn c10_nonnegativity() -> Outcome {
    let seen = SEEN.with(|s| s.borrow().clone());
    ensure!(!seen.is_empty(), "no certificates were produced");
    for (label, cm) in &seen {
        for (coatom, poly) in &cm.per_coatom {
            ensure!(poly.is_nonnegative(), "{label} {coatom}: {poly}");
        }
    }
    // Searched certificates for the remaining fixtures also count.
    let extra = [
        zoo::cube(3),
        zoo::cross_polytope(3),
        zoo::simplex_boundary(4),
        zoo::pyramid(&zoo::polygon(5)),
    ];
    for p in &extra {
        let c = search_s_certificate(p, DEFAULT_BUDGET).map_err(err)?;
        ensure!(
            verify_s_partition(&c).is_empty(),
            "{} certificate fails",
            p.name()
        );
        let cm = record_s_tree(p.name(), &c)?;
        ensure!(cm.is_nonnegative(), "{}: negative contribution", p.name());
    }
    let n = SEEN.with(|s| s.borrow().len());
    Ok(format!("{n} contribution tables, all coefficients >= 0"))
}

fn c11_fibonacci() -> Outcome {
    let want = [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89];
    for (n, &w) in want.iter().enumerate() {
        let got = cd_words(n).len();
        ensure!(got == w, "degree {n}: {got} words");
    }
    Ok("1 1 2 3 5 8 13 21 34 55 89".into())
}

fn c12_s1_x_s2() -> Status {
    match zoo::gen("s1xs2", &[]) {
        Err(_) => Status::Skip("S1 x S2 triangulation is not shipped".into()),
        Ok(p) => match semi_cd_index(&p) {
            Ok(phi) if phi == cd("c^4 + 16c^2d + 23cdc + 10dc^2 + 34d^2") => {
                Status::Pass(phi.to_string())
            }
            Ok(phi) => Status::Fail(phi.to_string()),
            Err(e) => Status::Fail(e.to_string()),
        },
    }
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("Q cd-index and contribution rows", c1_q_polytope),
        ("torus (6) SE-certificate", c2_torus6),
        ("torus (12) SE-certificate", c3_torus12),
        ("sphere with two cells per rank", c4_sphere2cells),
        ("polygons", c5_polygons),
        ("Eulerian suite", c6_eulerian_suite),
        ("semi-Eulerian suite", c7_semi_eulerian_suite),
        ("product of triangles", c8_product),
        ("simplicial pseudomanifold search", c9_pseudomanifolds),
        ("nonnegative contributions", c10_nonnegativity),
        ("cd-word counts", c11_fibonacci),
    ];
    let mut results: Vec<(usize, &str, Status)> = criteria
        .into_iter()
        .enumerate()
        .map(|(i, (name, f))| {
            let status = match f() {
                Ok(s) => Status::Pass(s),
                Err(s) => Status::Fail(s),
            };
            (i + 1, name, status)
        })
        .collect();
    results.push((12, "S1 x S2 semi cd-index", c12_s1_x_s2()));
    let mut failed = 0;
    for (i, name, status) in &results {
        match status {
            Status::Pass(s) => println!("PASS {i:>2} {name}: {s}"),
            Status::Fail(s) => {
                failed += 1;
                println!("FAIL {i:>2} {name}: {s}");
            }
            Status::Skip(s) => println!("SKIP {i:>2} {name}: {s}"),
        }
    }
    println!("acceptance: {} criteria, {failed} failed", results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
