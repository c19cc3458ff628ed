use std::collections::{BTreeMap, BTreeSet};

use crate::poset::GradedPoset;

fn build(
    name: String,
    rank_top: usize,
    elems: Vec<(String, usize)>,
    covers: Vec<(String, String)>,
) -> GradedPoset {
    GradedPoset::new(name, rank_top, elems, covers).expect("generator produced clashing names")
}

/// The n-gon, rank 3. Vertices `v0..`, edge `e<i>` joins `v<i>` and `v<i+1>`.
pub fn polygon(n: usize) -> GradedPoset {
    assert!(n >= 2, "polygon needs at least 2 vertices");
    let mut elems = vec![("bot".to_string(), 0), ("top".to_string(), 3)];
    let mut covers = Vec::new();
    for i in 0..n {
        elems.push((format!("v{i}"), 1));
        elems.push((format!("e{i}"), 2));
        covers.push(("bot".to_string(), format!("v{i}")));
        covers.push((format!("v{i}"), format!("e{i}")));
        covers.push((format!("v{}", (i + 1) % n), format!("e{i}")));
        covers.push((format!("e{i}"), "top".to_string()));
    }
    build(format!("polygon{n}"), 3, elems, covers)
}

/// Face name of a simplex on the given (sorted) vertex names.
fn face_name(vs: &[&str]) -> String {
    if vs.iter().all(|v| v.chars().count() == 1) {
        vs.concat()
    } else {
        vs.join("-")
    }
}

/// Face poset of the simplicial complex generated by `facets`.
///
/// A face is named by its sorted vertex names, concatenated when every
/// vertex name is one character and joined by `-` otherwise. The rank of
/// `top` is one more than the largest facet size.
pub fn simplicial_complex<S: AsRef<str>>(name: &str, facets: &[Vec<S>]) -> GradedPoset {
    let mut faces: BTreeSet<Vec<String>> = BTreeSet::new();
    let mut maxsize = 0;
    for f in facets {
        let mut vs: Vec<String> = f.iter().map(|s| s.as_ref().to_string()).collect();
        vs.sort();
        vs.dedup();
        maxsize = maxsize.max(vs.len());
        let k = vs.len();
        for mask in 1u64..(1u64 << k) {
            faces.insert(
                (0..k)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| vs[i].clone())
                    .collect(),
            );
        }
    }
    let single = faces
        .iter()
        .filter(|f| f.len() == 1)
        .all(|f| f[0].chars().count() == 1);
    let nm = |f: &[String]| -> String {
        if single {
            f.concat()
        } else {
            f.join("-")
        }
    };
    let rank_top = maxsize + 1;
    let mut elems = vec![("bot".to_string(), 0), ("top".to_string(), rank_top)];
    let mut covers = Vec::new();
    let maximal: BTreeSet<&Vec<String>> = faces
        .iter()
        .filter(|f| {
            !faces
                .iter()
                .any(|g| g.len() == f.len() + 1 && f.iter().all(|v| g.contains(v)))
        })
        .collect();
    for f in &faces {
        elems.push((nm(f), f.len()));
        if f.len() == 1 {
            covers.push(("bot".to_string(), nm(f)));
        } else {
            for skip in 0..f.len() {
                let sub: Vec<String> = f
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, v)| v.clone())
                    .collect();
                covers.push((nm(&sub), nm(f)));
            }
        }
        if maximal.contains(f) {
            covers.push((nm(f), "top".to_string()));
        }
    }
    build(name.to_string(), rank_top, elems, covers)
}

/// Name a face of a simplicial complex gets from [`simplicial_complex`].
pub fn simplex_face_name(vs: &[&str]) -> String {
    let mut v: Vec<&str> = vs.to_vec();
    v.sort();
    face_name(&v)
}

/// Boundary of the n-simplex (n+1 vertices `0..=n`), rank n+1.
pub fn simplex_boundary(n: usize) -> GradedPoset {
    assert!(n >= 1, "simplex_boundary needs n >= 1");
    let verts: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    let facets: Vec<Vec<String>> = (0..=n)
        .map(|skip| {
            verts
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, v)| v.clone())
                .collect()
        })
        .collect();
    simplicial_complex(&format!("simplex{n}"), &facets).with_name(format!("simplex{n}"))
}

/// Boundary of the n-cube, rank n+1. Faces are words over `0`, `1`, `*`.
pub fn cube(n: usize) -> GradedPoset {
    assert!(n >= 1, "cube needs n >= 1");
    let mut elems = vec![("bot".to_string(), 0), ("top".to_string(), n + 1)];
    let mut covers = Vec::new();
    let total = 3usize.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let word: Vec<u8> = (0..n)
            .map(|_| {
                let t = (c % 3) as u8;
                c /= 3;
                t
            })
            .collect();
        let stars = word.iter().filter(|&&t| t == 2).count();
        if stars == n {
            continue;
        }
        let show = |w: &[u8]| -> String {
            w.iter()
                .map(|&t| match t {
                    0 => '0',
                    1 => '1',
                    _ => '*',
                })
                .collect()
        };
        let name = show(&word);
        elems.push((name.clone(), stars + 1));
        if stars == 0 {
            covers.push(("bot".to_string(), name.clone()));
        }
        if stars == n - 1 {
            covers.push((name.clone(), "top".to_string()));
        }
        for i in 0..n {
            if word[i] == 2 {
                for b in 0..2 {
                    let mut lower = word.clone();
                    lower[i] = b;
                    covers.push((show(&lower), name.clone()));
                }
            }
        }
    }
    build(format!("cube{n}"), n + 1, elems, covers)
}

/// Boundary of the n-dimensional cross-polytope, rank n+1.
pub fn cross_polytope(n: usize) -> GradedPoset {
    assert!(n >= 1, "cross_polytope needs n >= 1");
    let facets: Vec<Vec<String>> = (0..1usize << n)
        .map(|signs| {
            (0..n)
                .map(|i| {
                    if signs >> i & 1 == 1 {
                        format!("m{i}")
                    } else {
                        format!("p{i}")
                    }
                })
                .collect()
        })
        .collect();
    simplicial_complex(&format!("cross{n}"), &facets)
}

/// The d-sphere with two cells in each dimension `0..=d`, rank d+2.
/// Cells are `a<k>` and `b<k>`, each bounded by both cells of dimension k-1.
pub fn sphere2cells(d: usize) -> GradedPoset {
    let mut elems = vec![("bot".to_string(), 0), ("top".to_string(), d + 2)];
    let mut covers = Vec::new();
    for k in 0..=d {
        for x in ["a", "b"] {
            let name = format!("{x}{k}");
            elems.push((name.clone(), k + 1));
            if k == 0 {
                covers.push(("bot".to_string(), name.clone()));
            } else {
                for y in ["a", "b"] {
                    covers.push((format!("{y}{}", k - 1), name.clone()));
                }
            }
            if k == d {
                covers.push((name, "top".to_string()));
            }
        }
    }
    build(format!("sphere2cells{d}"), d + 2, elems, covers)
}

/// N isolated points `p1..pN`, rank 2.
pub fn discrete_points(n: usize) -> GradedPoset {
    assert!(n >= 1, "discrete_points needs at least one point");
    let mut elems = vec![("bot".to_string(), 0), ("top".to_string(), 2)];
    let mut covers = Vec::new();
    for i in 1..=n {
        elems.push((format!("p{i}"), 1));
        covers.push(("bot".to_string(), format!("p{i}")));
        covers.push((format!("p{i}"), "top".to_string()));
    }
    build(format!("points{n}"), 2, elems, covers)
}

/// The chain `bot < pt < top`, rank 2: a single point.
pub fn point() -> GradedPoset {
    build(
        "point".into(),
        2,
        vec![("bot".into(), 0), ("pt".into(), 1), ("top".into(), 2)],
        vec![("bot".into(), "pt".into()), ("pt".into(), "top".into())],
    )
}

/// Face poset of a 2-dimensional regular cell complex, rank 4.
///
/// `edges` are `(name, end, end)`; `faces` are `(name, boundary edges)`.
pub fn cell_complex_2d(
    name: &str,
    vertices: &[&str],
    edges: &[(&str, &str, &str)],
    faces: &[(&str, Vec<&str>)],
) -> GradedPoset {
    let mut elems = vec![("bot".to_string(), 0), ("top".to_string(), 4)];
    let mut covers = Vec::new();
    for v in vertices {
        elems.push((v.to_string(), 1));
        covers.push(("bot".to_string(), v.to_string()));
    }
    for (e, a, b) in edges {
        elems.push((e.to_string(), 2));
        covers.push((a.to_string(), e.to_string()));
        covers.push((b.to_string(), e.to_string()));
    }
    for (f, es) in faces {
        elems.push((f.to_string(), 3));
        for e in es {
            covers.push((e.to_string(), f.to_string()));
        }
        covers.push((f.to_string(), "top".to_string()));
    }
    build(name.to_string(), 4, elems, covers)
}

/// Face lattice of the pyramid over the polytope with face lattice `p`.
///
/// Faces are `x` (base faces; the base itself is `base`), `x^` (the cone
/// over `x`) and `apex`. Extra `^` or `'` marks keep names distinct when
/// `p` is itself a pyramid.
pub fn pyramid(p: &GradedPoset) -> GradedPoset {
    let r = p.rank_top() + 1;
    let old: BTreeSet<&str> = p.names().iter().map(String::as_str).collect();
    let mut hat = "^".to_string();
    while p
        .names()
        .iter()
        .any(|n| old.contains(format!("{n}{hat}").as_str()))
    {
        hat.push('^');
    }
    let fresh = |base: &str| {
        let mut n = base.to_string();
        while old.contains(n.as_str()) || n.ends_with(hat.as_str()) {
            n.push('\'');
        }
        n
    };
    let (apex, base) = (fresh("apex"), fresh("base"));
    let lower = |n: &str| -> String {
        match n {
            "top" => base.clone(),
            _ => n.to_string(),
        }
    };
    let upper = |n: &str| -> String {
        match n {
            "bot" => apex.clone(),
            "top" => "top".into(),
            _ => format!("{n}{hat}"),
        }
    };
    let mut elems = Vec::new();
    let mut covers = Vec::new();
    for i in 0..p.len() {
        let n = p.elem_name(i);
        elems.push((lower(n), p.rank(i)));
        elems.push((upper(n), p.rank(i) + 1));
        covers.push((lower(n), upper(n)));
        for &u in p.upper_covers(i) {
            let m = p.elem_name(u);
            covers.push((lower(n), lower(m)));
            covers.push((upper(n), upper(m)));
        }
    }
    build(format!("pyr({})", p.name()), r, elems, covers)
}

/// Face lattice of the product of two polytopes given by face lattices:
/// faces are pairs of nonempty faces, `(top, top)` is the new `top`.
pub fn polytope_product(p: &GradedPoset, q: &GradedPoset) -> GradedPoset {
    let r = p.rank_top() + q.rank_top() - 1;
    let nm = |x: usize, y: usize| -> String {
        if p.elem_name(x) == "top" && q.elem_name(y) == "top" {
            "top".into()
        } else {
            format!("({},{})", p.elem_name(x), q.elem_name(y))
        }
    };
    let mut elems = vec![("bot".to_string(), 0)];
    let mut covers = Vec::new();
    let (pb, qb) = (p.bot(), q.bot());
    for x in (0..p.len()).filter(|&x| x != pb) {
        for y in (0..q.len()).filter(|&y| y != qb) {
            let rk = p.rank(x) + q.rank(y) - 1;
            elems.push((nm(x, y), rk));
            if rk == 1 {
                covers.push(("bot".to_string(), nm(x, y)));
            }
            for &x2 in p.upper_covers(x) {
                covers.push((nm(x, y), nm(x2, y)));
            }
            for &y2 in q.upper_covers(y) {
                covers.push((nm(x, y), nm(x, y2)));
            }
        }
    }
    build(format!("{}*{}", p.name(), q.name()), r, elems, covers)
}

/// Prism over a polytope: its product with a segment.
pub fn prism(p: &GradedPoset) -> GradedPoset {
    polytope_product(p, &polygon_segment())
}

fn polygon_segment() -> GradedPoset {
    build(
        "seg".into(),
        2,
        vec![
            ("bot".into(), 0),
            ("0".into(), 1),
            ("1".into(), 1),
            ("top".into(), 2),
        ],
        vec![
            ("bot".into(), "0".into()),
            ("bot".into(), "1".into()),
            ("0".into(), "top".into()),
            ("1".into(), "top".into()),
        ],
    )
}

/// `p # p`, glued along coatom `f` by the identity.
pub fn self_connected_sum(p: &GradedPoset, f: &str) -> GradedPoset {
    let fi = p.index_of(f).expect("coatom exists");
    let mut below = p.closure_of(fi);
    below.set(fi, false);
    let iso: BTreeMap<String, String> = below
        .ones()
        .map(|i| (p.elem_name(i).to_string(), p.elem_name(i).to_string()))
        .collect();
    p.connected_sum(p, f, f, &iso)
        .expect("identity is an isomorphism")
}
