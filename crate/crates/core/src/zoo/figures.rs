//! Complexes transcribed by hand from drawings, plus a few standard
//! triangulated surfaces.

use super::generators::{cell_complex_2d, cross_polytope, simplicial_complex};
use crate::poset::GradedPoset;

/// Bipyramid over the triangle `ABC` (apexes `D` below and `E` above) with
/// the top apex cut off, leaving the triangle `FGH`.
pub fn q_polytope() -> GradedPoset {
    let vertices = ["A", "B", "C", "D", "F", "G", "H"];
    let edges = [
        ("AB", "A", "B"),
        ("BC", "B", "C"),
        ("CA", "C", "A"),
        ("AD", "A", "D"),
        ("BD", "B", "D"),
        ("CD", "C", "D"),
        ("FG", "F", "G"),
        ("GH", "G", "H"),
        ("HF", "H", "F"),
        ("AG", "A", "G"),
        ("BH", "B", "H"),
        ("CF", "C", "F"),
    ];
    let faces = [
        ("ABHG", vec!["AB", "BH", "GH", "AG"]),
        ("BCFH", vec!["BC", "CF", "HF", "BH"]),
        ("FGH", vec!["FG", "GH", "HF"]),
        ("CAGF", vec!["CA", "AG", "FG", "CF"]),
        ("ABD", vec!["AB", "BD", "AD"]),
        ("BCD", vec!["BC", "CD", "BD"]),
        ("CAD", vec!["CA", "CD", "AD"]),
    ];
    cell_complex_2d("Q", &vertices, &edges, &faces)
}

/// The facet order of the shelling of [`q_polytope`].
pub const Q_SHELLING: [&str; 7] = ["ABHG", "BCFH", "FGH", "CAGF", "ABD", "BCD", "CAD"];

/// Vertex `v<i><j>` of the 3x3 torus grid.
fn tv(i: usize, j: usize) -> String {
    format!("v{}{}", i % 3, j % 3)
}

/// Torus glued from a 3x3 grid of squares `S<i><j>` (lower-left corner
/// `v<i><j>`), four of which are cut by the diagonal `g<i><j>` into an
/// upper-left triangle `U<i><j>` and a lower-right triangle `L<i><j>`.
///
/// Horizontal edge `h<i><j>` joins `v<i><j>` to `v<i+1><j>`; vertical edge
/// `u<i><j>` joins `v<i><j>` to `v<i><j+1>`, indices mod 3.
pub fn torus_fig6() -> GradedPoset {
    const SPLIT: [(usize, usize); 4] = [(0, 1), (1, 2), (1, 0), (2, 1)];
    let mut vertices = Vec::new();
    let mut edges: Vec<(String, String, String)> = Vec::new();
    let mut faces: Vec<(String, Vec<String>)> = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            vertices.push(tv(i, j));
            edges.push((format!("h{i}{j}"), tv(i, j), tv(i + 1, j)));
            edges.push((format!("u{i}{j}"), tv(i, j), tv(i, j + 1)));
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            let bottom = format!("h{i}{j}");
            let top = format!("h{i}{}", (j + 1) % 3);
            let left = format!("u{i}{j}");
            let right = format!("u{}{j}", (i + 1) % 3);
            if SPLIT.contains(&(i, j)) {
                let g = format!("g{i}{j}");
                edges.push((g.clone(), tv(i, j), tv(i + 1, j + 1)));
                faces.push((format!("U{i}{j}"), vec![left, top, g.clone()]));
                faces.push((format!("L{i}{j}"), vec![bottom, right, g]));
            } else {
                faces.push((format!("S{i}{j}"), vec![bottom, top, left, right]));
            }
        }
    }
    let vs: Vec<&str> = vertices.iter().map(String::as_str).collect();
    let es: Vec<(&str, &str, &str)> = edges
        .iter()
        .map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str()))
        .collect();
    let fs: Vec<(&str, Vec<&str>)> = faces
        .iter()
        .map(|(f, e)| (f.as_str(), e.iter().map(String::as_str).collect()))
        .collect();
    cell_complex_2d("torus6", &vs, &es, &fs)
}

/// Torus made of a central octagon, four pentagons and four squares.
///
/// The octagon `oct` has vertices `I H N Q W Z 8 7` in cyclic order. The
/// outer corners are `X` (the identified square corners) and `p q r s`.
/// Pentagons are `P1`..`P4`, squares `Sl Sb Sr St` (left, bottom, right,
/// top). Edges are named by their end points.
pub fn torus_fig12() -> GradedPoset {
    let vertices = [
        "X", "p", "q", "r", "s", "I", "H", "N", "Q", "W", "Z", "8", "7",
    ];
    let pairs = [
        // octagon
        ("I", "H"),
        ("H", "N"),
        ("N", "Q"),
        ("Q", "W"),
        ("W", "Z"),
        ("Z", "8"),
        ("8", "7"),
        ("7", "I"),
        // spokes
        ("X", "p"),
        ("p", "I"),
        ("7", "r"),
        ("X", "r"),
        ("q", "H"),
        ("N", "r"),
        ("Q", "s"),
        ("X", "q"),
        ("W", "q"),
        ("p", "q"),
        ("Z", "p"),
        ("X", "s"),
        ("8", "s"),
        ("r", "s"),
    ];
    let names: Vec<String> = pairs.iter().map(|(a, b)| format!("{a}{b}")).collect();
    let edges: Vec<(&str, &str, &str)> = pairs
        .iter()
        .zip(&names)
        .map(|(&(a, b), n)| (n.as_str(), a, b))
        .collect();
    let faces = [
        ("oct", vec!["IH", "HN", "NQ", "QW", "WZ", "Z8", "87", "7I"]),
        ("P1", vec!["Xp", "pI", "7I", "7r", "Xr"]),
        ("P2", vec!["Xq", "Xr", "Nr", "HN", "qH"]),
        ("P3", vec!["Qs", "Xs", "Xq", "Wq", "QW"]),
        ("P4", vec!["Zp", "Xp", "Xs", "8s", "Z8"]),
        ("Sl", vec!["pI", "IH", "qH", "pq"]),
        ("Sb", vec!["Nr", "NQ", "Qs", "rs"]),
        ("Sr", vec!["WZ", "Zp", "pq", "Wq"]),
        ("St", vec!["87", "7r", "rs", "8s"]),
    ];
    cell_complex_2d("torus12", &vertices, &edges, &faces)
}

/// Two-dimensional simplicial complex that is not semi-Eulerian: the link
/// of vertex `G` is two disjoint edges.
pub fn fig13_nonsemi() -> GradedPoset {
    let tris = [
        "ABC", "BCD", "CDE", "DEF", "DFG", "GHI", "HIJ", "HJK", "ABK", "BHK",
    ];
    let facets: Vec<Vec<String>> = tris
        .iter()
        .map(|t| t.chars().map(|c| c.to_string()).collect())
        .collect();
    simplicial_complex("fig13", &facets)
}

pub fn octahedron() -> GradedPoset {
    cross_polytope(3).with_name("octahedron")
}

/// Icosahedron: apexes `T`, `B`, upper ring `u0..u4`, lower ring `l0..l4`
/// with `l<i>` between `u<i>` and `u<i+1>`.
pub fn icosahedron() -> GradedPoset {
    let u = |i: usize| format!("u{}", i % 5);
    let l = |i: usize| format!("l{}", i % 5);
    let mut facets = Vec::new();
    for i in 0..5 {
        facets.push(vec!["T".to_string(), u(i), u(i + 1)]);
        facets.push(vec![u(i), u(i + 1), l(i)]);
        facets.push(vec![l(i), l(i + 1), u(i + 1)]);
        facets.push(vec!["B".to_string(), l(i), l(i + 1)]);
    }
    simplicial_complex("icosahedron", &facets)
}

/// The 7-vertex triangulated torus: triangles `{i, i+1, i+3}` and
/// `{i, i+2, i+3}` mod 7.
pub fn torus7() -> GradedPoset {
    let mut facets = Vec::new();
    for i in 0..7 {
        for (a, b) in [(1, 3), (2, 3)] {
            facets.push(vec![
                i.to_string(),
                ((i + a) % 7).to_string(),
                ((i + b) % 7).to_string(),
            ]);
        }
    }
    simplicial_complex("torus7", &facets)
}
