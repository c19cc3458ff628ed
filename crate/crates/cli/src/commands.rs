use std::fs;
use std::path::Path;

use cdx_core::flags::{
    cd_index, euler_characteristic, flag_f, mask_ranks, modified_flag_f, semi_cd_index,
    sphere_euler, FlagError,
};
use cdx_core::ncpoly::NcPolynomial;
use cdx_core::partition::{
    check_reverse_partition, contributions_s, contributions_se, order_to_s_certificate,
    search_s_certificate, search_se_certificate, simplicial_partition_to_s_certificate,
    verify_s_partition, verify_se_partition, ContributionMap, PartitionError, SCert, SeCert,
};
use cdx_core::poset::GradedPoset;
use cdx_core::zoo::{self, FixtureCert};
use serde_json::{json, Map, Value};

use crate::report::{int, Report};

/// Bad input: unreadable or unparsable files, unknown families. Exit 2.
#[derive(Debug)]
pub struct InputError(pub String);

pub type Outcome = Result<Report, InputError>;

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), InputError> {
    fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

pub fn load_poset(path: &Path) -> Result<GradedPoset, InputError> {
    GradedPoset::parse(&read(path)?)
        .map_err(|e| InputError(format!("{}:{}: {}", path.display(), e.line, e.message)))
}

pub enum AnyCert {
    S(SCert),
    Se(SeCert),
}

pub fn load_cert(path: &Path, p: &GradedPoset) -> Result<AnyCert, InputError> {
    let text = read(path)?;
    let head = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .and_then(|l| l.split_whitespace().next());
    let err = |e: cdx_core::partition::ParseCertError| {
        InputError(format!("{}:{}: {}", path.display(), e.line, e.message))
    };
    match head {
        Some("spart") => SCert::parse(&text, p).map(AnyCert::S).map_err(err),
        Some("separt") => SeCert::parse(&text, p).map(AnyCert::Se).map_err(err),
        _ => Err(InputError(format!(
            "{}:1: expected a 'spart' or 'separt' header",
            path.display()
        ))),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn rank_set(mask: usize) -> String {
    let rs: Vec<String> = mask_ranks(mask).iter().map(|r| r.to_string()).collect();
    format!("{{{}}}", rs.join(","))
}

pub fn validate(path: &Path) -> Outcome {
    let mut r = Report::new("validate", &[&path.to_string_lossy()]);
    let p = load_poset(path)?;
    let vs = p.validate();
    if vs.is_empty() {
        r.good("OK");
        let counts: Vec<String> = p.rank_counts().iter().map(|c| c.to_string()).collect();
        r.line(format!("rank: {}", p.rank_top()));
        r.line(format!("rank-counts: {}", counts.join(" ")));
    }
    for v in &vs {
        r.violation(format!("INVALID {v}"));
    }
    r.result = json!({
        "valid": vs.is_empty(),
        "rank": p.rank_top(),
        "rank_counts": if vs.is_empty() { json!(p.rank_counts()) } else { Value::Null },
    });
    Ok(r)
}

pub fn flags(path: &Path, with_h: bool) -> Outcome {
    let mut r = Report::new("flags", &[&path.to_string_lossy()]);
    let p = load_poset(path)?;
    let f = flag_f(&p);
    let mut fm = Map::new();
    for m in f.masks() {
        r.line(format!("f{}: {}", rank_set(m), f.get(m)));
        fm.insert(rank_set(m), int(f.get(m)));
    }
    let mut res = json!({ "d": f.d(), "f": fm });
    if with_h {
        let h = f.to_h();
        let mut hm = Map::new();
        for m in h.masks() {
            r.line(format!("h{}: {}", rank_set(m), h.get(m)));
            hm.insert(rank_set(m), int(h.get(m)));
        }
        res["h"] = Value::Object(hm);
    }
    r.result = res;
    Ok(r)
}

pub fn euler(path: &Path) -> Outcome {
    let mut r = Report::new("euler", &[&path.to_string_lossy()]);
    let p = load_poset(path)?;
    let chi = euler_characteristic(&p);
    let sphere = sphere_euler(p.dim());
    let (eu, se) = (p.is_eulerian(), p.is_semi_eulerian());
    r.line(format!("chi: {chi}"));
    r.line(format!("sphere-chi: {sphere}"));
    r.line(format!("eulerian: {}", yes(eu)));
    r.line(format!("semi-eulerian: {}", yes(se)));
    r.result = json!({
        "chi": int(&chi),
        "sphere_chi": int(&sphere),
        "eulerian": eu,
        "semi_eulerian": se,
    });
    Ok(r)
}

fn index_report(r: &mut Report, key: &str, res: Result<NcPolynomial, FlagError>) {
    match res {
        Ok(phi) => {
            r.line(phi.to_string());
            r.result = json!({ key: phi.to_string() });
            r.poly(key, &phi);
        }
        Err(e) => {
            r.violation(format!("NOT-IN-IMAGE {e}"));
            r.result = json!({ key: Value::Null });
        }
    }
}

pub fn cd(path: &Path) -> Outcome {
    let mut r = Report::new("cd", &[&path.to_string_lossy()]);
    let p = load_poset(path)?;
    index_report(&mut r, "cd", cd_index(&p));
    Ok(r)
}

pub fn semicd(path: &Path) -> Outcome {
    let mut r = Report::new("semicd", &[&path.to_string_lossy()]);
    let p = load_poset(path)?;
    if let Some(w) = modified_flag_f(&p).warning {
        eprintln!("warning: {w}");
    }
    index_report(&mut r, "semicd", semi_cd_index(&p));
    Ok(r)
}

pub fn check_eulerian(path: &Path) -> Outcome {
    let mut r = Report::new("check-eulerian", &[&path.to_string_lossy()]);
    let p = load_poset(path)?;
    if let Some(v) = p.validate().first() {
        r.violation(format!("INVALID {v}"));
        return Ok(r);
    }
    let bad = p.non_eulerian_intervals();
    if bad.is_empty() {
        r.good("EULERIAN");
    } else {
        r.fail("NOT EULERIAN");
        for (x, y) in &bad {
            r.violations.push(format!("[{x},{y}]"));
            r.line(format!("interval [{x},{y}]"));
        }
        r.line(format!("semi-eulerian: {}", yes(p.is_semi_eulerian())));
    }
    r.result = json!({ "eulerian": bad.is_empty(), "semi_eulerian": p.is_semi_eulerian() });
    Ok(r)
}

pub fn check_cert(poset: &Path, cert: &Path, want_se: bool) -> Outcome {
    let verb = if want_se {
        "check-separt"
    } else {
        "check-spart"
    };
    let mut r = Report::new(verb, &[&poset.to_string_lossy(), &cert.to_string_lossy()]);
    let p = load_poset(poset)?;
    let vs = match (load_cert(cert, &p)?, want_se) {
        (AnyCert::S(c), false) => verify_s_partition(&c),
        (AnyCert::Se(c), true) => verify_se_partition(&c),
        _ => {
            return Err(InputError(format!(
                "{}: expected a {} certificate",
                cert.display(),
                if want_se { "separt" } else { "spart" }
            )))
        }
    };
    if vs.is_empty() {
        r.good("OK");
    }
    for v in &vs {
        r.violation(v);
    }
    r.result = json!({ "ok": vs.is_empty() });
    Ok(r)
}

/// Contributions of either kind of certificate, plus the direct index.
fn contributions_of(
    c: &AnyCert,
) -> Result<(ContributionMap, Result<NcPolynomial, FlagError>), PartitionError> {
    match c {
        AnyCert::S(c) => Ok((contributions_s(c)?, cd_index(&c.poset))),
        AnyCert::Se(c) => Ok((contributions_se(c)?, semi_cd_index(&c.poset))),
    }
}

fn partition_failure(r: &mut Report, e: PartitionError) {
    match e {
        PartitionError::Violations(vs) => {
            for v in vs {
                r.violation(v);
            }
        }
        e => r.violation(e),
    }
}

pub fn cd_recursive(poset: &Path, cert: &Path) -> Outcome {
    let mut r = Report::new(
        "cd-recursive",
        &[&poset.to_string_lossy(), &cert.to_string_lossy()],
    );
    let p = load_poset(poset)?;
    let c = load_cert(cert, &p)?;
    match contributions_of(&c) {
        Ok((cm, _)) => {
            r.line(cm.total.to_string());
            r.result = json!({ "total": cm.total.to_string() });
            r.poly("total", &cm.total);
        }
        Err(e) => partition_failure(&mut r, e),
    }
    Ok(r)
}

pub fn contributions(poset: &Path, cert: &Path) -> Outcome {
    let mut r = Report::new(
        "contributions",
        &[&poset.to_string_lossy(), &cert.to_string_lossy()],
    );
    let p = load_poset(poset)?;
    let c = load_cert(cert, &p)?;
    let (cm, direct) = match contributions_of(&c) {
        Ok(x) => x,
        Err(e) => {
            partition_failure(&mut r, e);
            return Ok(r);
        }
    };
    let width = cm
        .per_coatom
        .keys()
        .map(String::len)
        .chain(["total".len()])
        .max()
        .unwrap_or(5);
    let mut rows = Vec::new();
    for (coatom, poly) in &cm.per_coatom {
        r.line(format!("{coatom:<width$}  {poly}"));
        r.poly(coatom, poly);
        rows.push(json!({ "coatom": coatom, "contribution": poly.to_string() }));
    }
    r.line(format!("{:<width$}  {}", "total", cm.total));
    r.poly("total", &cm.total);
    let agrees = direct.as_ref().is_ok_and(|d| *d == cm.total);
    if agrees {
        r.good("agrees-with-direct: yes");
    } else {
        r.fail("agrees-with-direct: no");
    }
    if !cm.is_nonnegative() {
        r.fail("nonnegative: no");
    }
    r.result = json!({
        "rows": rows,
        "total": cm.total.to_string(),
        "agrees_with_direct": agrees,
        "nonnegative": cm.is_nonnegative(),
    });
    Ok(r)
}

fn emit(r: &mut Report, text: &str, path: Option<&Path>) -> Result<(), InputError> {
    if let Some(path) = path {
        write(path, text)?;
        r.line(format!("certificate written to {}", path.display()));
    }
    Ok(())
}

fn class_summary(r: &mut Report, classes: Vec<(String, String, usize)>) -> Value {
    let mut list = Vec::new();
    for (c, kind, n) in classes {
        r.line(format!("class {c} {kind} {n}"));
        list.push(json!({ "coatom": c, "kind": kind, "size": n }));
    }
    Value::Array(list)
}

fn s_found(r: &mut Report, c: &SCert, emit_to: Option<&Path>) -> Result<(), InputError> {
    r.good("FOUND");
    let classes = c
        .classes
        .iter()
        .map(|cl| (cl.coatom.clone(), cl.kind.to_string(), cl.members.len()))
        .collect();
    let list = class_summary(r, classes);
    r.result = json!({ "found": true, "classes": list });
    emit(r, &c.to_text(), emit_to)
}

fn se_found(r: &mut Report, c: &SeCert, emit_to: Option<&Path>) -> Result<(), InputError> {
    r.good("FOUND");
    let classes = c
        .classes
        .iter()
        .map(|cl| (cl.coatom.clone(), cl.kind.to_string(), cl.members.len()))
        .collect();
    let list = class_summary(r, classes);
    r.result = json!({ "found": true, "classes": list });
    emit(r, &c.to_text(), emit_to)
}

fn not_found(r: &mut Report, e: PartitionError) {
    let label = match &e {
        PartitionError::NotFound => "NOT FOUND".to_string(),
        PartitionError::BudgetExhausted(n) => format!("BUDGET EXHAUSTED after {n} nodes"),
        _ => String::new(),
    };
    r.result = json!({ "found": false });
    if label.is_empty() {
        partition_failure(r, e);
    } else {
        r.fail(label);
    }
}

pub fn search(poset: &Path, se: bool, budget: u64, emit_to: Option<&Path>) -> Outcome {
    let verb = if se { "search-separt" } else { "search-spart" };
    let mut r = Report::new(verb, &[&poset.to_string_lossy()]);
    let p = load_poset(poset)?;
    if se {
        match search_se_certificate(&p, budget) {
            Ok(c) => se_found(&mut r, &c, emit_to)?,
            Err(e) => not_found(&mut r, e),
        }
    } else {
        match search_s_certificate(&p, budget) {
            Ok(c) => s_found(&mut r, &c, emit_to)?,
            Err(e) => not_found(&mut r, e),
        }
    }
    Ok(r)
}

pub fn gen(family: &str, params: &[usize], output: Option<&Path>, cert: Option<&Path>) -> Outcome {
    let mut input = vec![family.to_string()];
    input.extend(params.iter().map(|p| p.to_string()));
    let refs: Vec<&str> = input.iter().map(String::as_str).collect();
    let mut r = Report::new("gen", &refs);
    let p = zoo::gen(family, params).map_err(|e| InputError(e.to_string()))?;
    let spec = zoo::fixture_spec(family, params);
    let text = p.to_text_with_header(&[
        &format!("family: {spec}"),
        &format!("provenance: {}", spec.provenance),
    ]);
    let mut res = json!({
        "name": p.name(),
        "rank": p.rank_top(),
        "rank_counts": p.rank_counts(),
    });
    match output {
        Some(path) => {
            write(path, &text)?;
            r.line(format!("poset written to {}", path.display()));
            res["written"] = json!(path.display().to_string());
        }
        None => {
            r.line(text.trim_end());
            res["poset"] = json!(text);
        }
    }
    if let Some(path) = cert {
        let c = zoo::fixture_certificate(family, params).map_err(|e| InputError(e.to_string()))?;
        let body = match &c {
            FixtureCert::S(c) => c.to_text(),
            FixtureCert::Se(c) => c.to_text(),
        };
        let ctext = format!(
            "# family: {spec}\n# provenance: {}\n{body}",
            spec.provenance
        );
        write(path, &ctext)?;
        r.line(format!("certificate written to {}", path.display()));
        res["certificate"] = json!(path.display().to_string());
    }
    r.result = res;
    Ok(r)
}

pub fn convert_shelling(
    poset: &Path,
    facets: &[String],
    budget: u64,
    emit_to: Option<&Path>,
) -> Outcome {
    let mut input = vec![poset.to_string_lossy().to_string()];
    input.extend(facets.iter().cloned());
    let refs: Vec<&str> = input.iter().map(String::as_str).collect();
    let mut r = Report::new("convert-shelling", &refs);
    let p = load_poset(poset)?;
    match order_to_s_certificate(&p, facets, budget) {
        Ok(c) => s_found(&mut r, &c, emit_to)?,
        Err(e) => not_found(&mut r, e),
    }
    Ok(r)
}

/// Reads `face facet` pairs, one per line; `bot` is the empty face.
fn read_pairs(path: &Path) -> Result<Vec<(String, String)>, InputError> {
    let mut out = Vec::new();
    for (i, line) in read(path)?.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match line.split_whitespace().collect::<Vec<_>>().as_slice() {
            [a, b] => out.push((a.to_string(), b.to_string())),
            _ => {
                return Err(InputError(format!(
                    "{}:{}: expected '<face> <facet>'",
                    path.display(),
                    i + 1
                )))
            }
        }
    }
    Ok(out)
}

pub fn convert_simplicial(
    poset: &Path,
    pairs: &Path,
    budget: u64,
    emit_to: Option<&Path>,
) -> Outcome {
    let mut r = Report::new(
        "convert-simplicial-partition",
        &[&poset.to_string_lossy(), &pairs.to_string_lossy()],
    );
    let p = load_poset(poset)?;
    let pairs = read_pairs(pairs)?;
    match simplicial_partition_to_s_certificate(&p, &pairs, budget) {
        Ok(c) => s_found(&mut r, &c, emit_to)?,
        Err(e) => not_found(&mut r, e),
    }
    Ok(r)
}

pub fn reverse_check(poset: &Path, cert: &Path, budget: u64) -> Outcome {
    let mut r = Report::new(
        "reverse-check",
        &[&poset.to_string_lossy(), &cert.to_string_lossy()],
    );
    let p = load_poset(poset)?;
    let AnyCert::S(c) = load_cert(cert, &p)? else {
        return Err(InputError(format!(
            "{}: expected an spart certificate",
            cert.display()
        )));
    };
    let rep = match check_reverse_partition(&c, budget) {
        Ok(rep) => rep,
        Err(e) => {
            partition_failure(&mut r, e);
            return Ok(r);
        }
    };
    let mut classes = Map::new();
    for (coatom, ms) in &rep.classes {
        let ms: Vec<&str> = ms.iter().map(String::as_str).collect();
        r.line(format!("class {coatom}: {}", ms.join(" ")));
        classes.insert(coatom.clone(), json!(ms));
    }
    r.line(format!("reverse-partition: {}", yes(rep.is_partition)));
    if rep.certifies {
        r.good("certifies: yes");
    } else {
        r.fail("certifies: no");
    }
    for p in &rep.problems {
        r.violations.push(p.clone());
        r.line(format!("problem: {p}"));
    }
    r.result = json!({
        "is_partition": rep.is_partition,
        "certifies": rep.certifies,
        "classes": classes,
    });
    Ok(r)
}
