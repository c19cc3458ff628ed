use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::generators::{
    cross_polytope, cube, polygon, prism, pyramid, self_connected_sum, simplex_boundary,
};
use crate::poset::GradedPoset;

/// A small Eulerian poset built from Eulerian-preserving constructions:
/// polygons, simplices, cubes, cross-polytopes, pyramids, prisms and
/// connected sums. Deterministic per seed. `max_rank` is clamped to `3..=5`.
pub fn random_eulerian_small(seed: u64, max_rank: usize) -> GradedPoset {
    let max_rank = max_rank.clamp(3, 5);
    if max_rank == 3 {
        return polygon(3 + (seed % 6) as usize).with_name(format!("rand{seed}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rank = rng.gen_range(3..=max_rank);
    build(&mut rng, rank).with_name(format!("rand{seed}"))
}

fn build(rng: &mut ChaCha8Rng, rank: usize) -> GradedPoset {
    if rank == 3 {
        return polygon(rng.gen_range(3..=8));
    }
    let d = rank - 1;
    let base = match rng.gen_range(0..6) {
        0 => simplex_boundary(d),
        1 => cube(d),
        2 => cross_polytope(d),
        3 => pyramid(&build(rng, rank - 1)),
        _ => prism(&build(rng, rank - 1)),
    };
    if rng.gen_bool(0.3) {
        let coatoms = base.coatoms();
        let f = *coatoms.choose(rng).expect("a sphere has coatoms");
        let name = base.elem_name(f).to_string();
        self_connected_sum(&base, &name)
    } else {
        base
    }
}
