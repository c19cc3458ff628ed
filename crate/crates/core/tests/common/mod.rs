//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeMap;

use cdx_core::poset::GradedPoset;

/// Chain counts by rank set, found by walking every chain from `bot`
/// through the order relation (not the cover relation).
pub fn brute_flag_counts(p: &GradedPoset) -> BTreeMap<Vec<usize>, u64> {
    let top = p.top();
    let mut out = BTreeMap::new();
    let mut stack = vec![(p.bot(), Vec::new())];
    while let Some((x, ranks)) = stack.pop() {
        *out.entry(ranks.clone()).or_insert(0) += 1;
        for y in 0..p.len() {
            if y != x && y != top && p.le(x, y) {
                let mut r = ranks.clone();
                r.push(p.rank(y));
                stack.push((y, r));
            }
        }
    }
    out
}

/// Mobius function of `[x, y]` from its defining recursion.
pub fn brute_mobius(p: &GradedPoset, x: usize, y: usize) -> i64 {
    if x == y {
        return 1;
    }
    -(0..p.len())
        .filter(|&z| z != y && p.le(x, z) && p.le(z, y))
        .map(|z| brute_mobius(p, x, z))
        .sum::<i64>()
}
