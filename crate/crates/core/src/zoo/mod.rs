//! Generators for the posets used throughout: polytopes, spheres, tori,
//! hand-transcribed complexes and random Eulerian posets.

mod certs;
mod figures;
mod generators;
mod random;

use std::fmt;

use thiserror::Error;

use crate::poset::GradedPoset;

pub use certs::{fixture_certificate, FixtureCert};
pub use figures::{
    fig13_nonsemi, icosahedron, octahedron, q_polytope, torus7, torus_fig12, torus_fig6, Q_SHELLING,
};
pub use generators::{
    cell_complex_2d, cross_polytope, cube, discrete_points, point, polygon, polytope_product,
    prism, pyramid, self_connected_sum, simplex_boundary, simplex_face_name, simplicial_complex,
    sphere2cells,
};
pub use random::random_eulerian_small;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZooError {
    #[error("unknown family {0}")]
    UnknownFamily(String),
    #[error("bad parameters for {family}: {reason}")]
    BadParams { family: String, reason: String },
    #[error("no published certificate for {0}")]
    NoPublishedCertificate(String),
    #[error("fixture {family} failed its load check: {reason}")]
    LoadCheck { family: String, reason: String },
}

/// A named family with parameters, e.g. `polygon 5`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureSpec {
    pub family: String,
    pub params: Vec<usize>,
    pub provenance: String,
}

impl fmt::Display for FixtureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.family)?;
        for p in &self.params {
            write!(f, " {p}")?;
        }
        Ok(())
    }
}

/// Family names accepted by [`gen`].
pub const FAMILIES: &[&str] = &[
    "polygon",
    "simplex-boundary",
    "cube",
    "cross-polytope",
    "sphere2cells",
    "discrete-points",
    "q-polytope",
    "torus-fig6",
    "torus-fig12",
    "fig13-nonsemi",
    "octahedron",
    "icosahedron",
    "torus7",
    "product",
    "connected-sum",
    "random-eulerian",
];

fn bad(family: &str, reason: impl Into<String>) -> ZooError {
    ZooError::BadParams {
        family: family.into(),
        reason: reason.into(),
    }
}

fn one(family: &str, params: &[usize], min: usize, max: usize) -> Result<usize, ZooError> {
    match params {
        [n] if (min..=max).contains(n) => Ok(*n),
        [n] => Err(bad(family, format!("{n} not in {min}..={max}"))),
        _ => Err(bad(family, "expected one parameter")),
    }
}

fn none(family: &str, params: &[usize]) -> Result<(), ZooError> {
    if params.is_empty() {
        Ok(())
    } else {
        Err(bad(family, "takes no parameters"))
    }
}

/// Builds a fixture by family name and checks its known invariants.
///
/// `product` takes two polygon sizes; `connected-sum` takes a simplex
/// dimension and glues two copies along a facet; `random-eulerian` takes a
/// seed and a maximal rank.
pub fn gen(family: &str, params: &[usize]) -> Result<GradedPoset, ZooError> {
    let p = match family {
        "polygon" => polygon(one(family, params, 2, 4096)?),
        "simplex-boundary" => simplex_boundary(one(family, params, 1, 9)?),
        "cube" => cube(one(family, params, 1, 6)?),
        "cross-polytope" => cross_polytope(one(family, params, 1, 6)?),
        "sphere2cells" => sphere2cells(one(family, params, 0, 30)?),
        "discrete-points" => discrete_points(one(family, params, 1, 4096)?),
        "q-polytope" => none(family, params).map(|_| q_polytope())?,
        "torus-fig6" => none(family, params).map(|_| torus_fig6())?,
        "torus-fig12" => none(family, params).map(|_| torus_fig12())?,
        "fig13-nonsemi" => none(family, params).map(|_| fig13_nonsemi())?,
        "octahedron" => none(family, params).map(|_| octahedron())?,
        "icosahedron" => none(family, params).map(|_| icosahedron())?,
        "torus7" => none(family, params).map(|_| torus7())?,
        "product" => match params {
            [a, b] if *a >= 2 && *b >= 2 => polygon(*a).product(&polygon(*b)),
            _ => return Err(bad(family, "expected two polygon sizes >= 2")),
        },
        "connected-sum" => {
            let n = one(family, params, 2, 9)?;
            let s = simplex_boundary(n);
            let f = s.elem_name(s.coatoms()[0]).to_string();
            self_connected_sum(&s, &f)
        }
        "random-eulerian" => match params {
            [seed, r] if (3..=5).contains(r) => random_eulerian_small(*seed as u64, *r),
            _ => return Err(bad(family, "expected seed and max rank in 3..=5")),
        },
        _ => return Err(ZooError::UnknownFamily(family.to_string())),
    };
    check_fixture(family, &p)?;
    Ok(p)
}

/// Known invariants of the transcribed fixtures, checked at load.
fn check_fixture(family: &str, p: &GradedPoset) -> Result<(), ZooError> {
    let fail = |reason: String| ZooError::LoadCheck {
        family: family.into(),
        reason,
    };
    let violations = p.validate();
    if let Some(v) = violations.first() {
        return Err(fail(v.to_string()));
    }
    let expect = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(fail(what.to_string()))
        }
    };
    match family {
        "q-polytope" => {
            expect(p.rank_counts() == [1, 7, 12, 7, 1], "cell counts")?;
            expect(p.is_eulerian(), "not Eulerian")?;
        }
        "torus-fig6" => {
            expect(p.rank_counts() == [1, 9, 22, 13, 1], "cell counts")?;
            expect(!p.is_eulerian() && p.is_semi_eulerian(), "Euler status")?;
        }
        "torus-fig12" => {
            expect(p.rank_counts() == [1, 13, 22, 9, 1], "cell counts")?;
            expect(!p.is_eulerian() && p.is_semi_eulerian(), "Euler status")?;
        }
        "fig13-nonsemi" => expect(!p.is_semi_eulerian(), "unexpectedly semi-Eulerian")?,
        "octahedron" | "icosahedron" | "polygon" | "simplex-boundary" | "cube"
        | "cross-polytope" | "sphere2cells" | "connected-sum" | "random-eulerian" => {
            expect(p.is_eulerian(), "not Eulerian")?
        }
        "torus7" | "product" => expect(p.is_semi_eulerian(), "not semi-Eulerian")?,
        _ => {}
    }
    Ok(())
}

/// The spec every `gen` family reports, with a provenance note.
pub fn fixture_spec(family: &str, params: &[usize]) -> FixtureSpec {
    let provenance = match family {
        "q-polytope" => "truncated triangular bipyramid, transcribed",
        "torus-fig6" => "torus of squares and triangles, transcribed",
        "torus-fig12" => "torus of an octagon, pentagons and squares, transcribed",
        "fig13-nonsemi" => "non-semi-Eulerian 2-complex, transcribed",
        _ => "generator",
    };
    FixtureSpec {
        family: family.into(),
        params: params.to_vec(),
        provenance: provenance.into(),
    }
}
