//! Bounded graded posets given by ranked elements and cover pairs.

mod format;
mod ops;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

pub use format::ParsePosetError;

/// A set of elements of one poset, by index.
pub type ElemSet = FixedBitSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("duplicate element {0}")]
    DuplicateElement(String),
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("{0} and {1} are not comparable")]
    NotComparable(String, String),
    #[error("element {name} has rank {rank}, not below the cap rank {cap}")]
    RankTooLow {
        name: String,
        rank: usize,
        cap: usize,
    },
    #[error("set already contains an element named {0}")]
    NameClash(String),
    #[error("not an isomorphism: {0}")]
    NotAnIsomorphism(String),
}

/// One failed structural check, as reported by [`GradedPoset::validate`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PosetViolation {
    pub code: &'static str,
    pub detail: String,
}

impl fmt::Display for PosetViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.detail)
    }
}

/// A finite poset with a rank on every element and explicit cover pairs.
///
/// Elements are stored in name order, so index order is name order. The
/// order relation is the reflexive-transitive closure of the covers and is
/// precomputed as one bitset per element in each direction.
#[derive(Clone)]
pub struct GradedPoset {
    name: String,
    rank_top: usize,
    names: Vec<String>,
    index: HashMap<String, usize>,
    ranks: Vec<usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    below: Vec<ElemSet>,
    above: Vec<ElemSet>,
}

impl fmt::Debug for GradedPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedPoset")
            .field("name", &self.name)
            .field("rank_top", &self.rank_top)
            .field("elements", &self.names.len())
            .finish()
    }
}

impl GradedPoset {
    /// Builds a poset from `(name, rank)` pairs and `(lower, upper)` covers.
    ///
    /// Only name-level problems are errors; structural defects such as a
    /// missing `bot` or a rank-skipping cover are left for [`Self::validate`].
    pub fn new<S1, S2, S3>(
        name: impl Into<String>,
        rank_top: usize,
        elems: impl IntoIterator<Item = (S1, usize)>,
        covers: impl IntoIterator<Item = (S2, S3)>,
    ) -> Result<Self, PosetError>
    where
        S1: Into<String>,
        S2: AsRef<str>,
        S3: AsRef<str>,
    {
        let mut by_name: BTreeMap<String, usize> = BTreeMap::new();
        for (n, r) in elems {
            let n = n.into();
            if by_name.insert(n.clone(), r).is_some() {
                return Err(PosetError::DuplicateElement(n));
            }
        }
        let names: Vec<String> = by_name.keys().cloned().collect();
        let ranks: Vec<usize> = by_name.values().copied().collect();
        let index: HashMap<String, usize> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        let n = names.len();
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for (lo, hi) in covers {
            let lo = lo.as_ref();
            let hi = hi.as_ref();
            let l = *index
                .get(lo)
                .ok_or_else(|| PosetError::UnknownElement(lo.to_string()))?;
            let h = *index
                .get(hi)
                .ok_or_else(|| PosetError::UnknownElement(hi.to_string()))?;
            if !up[l].contains(&h) {
                up[l].push(h);
                down[h].push(l);
            }
        }
        for v in up.iter_mut().chain(down.iter_mut()) {
            v.sort_unstable();
        }
        Ok(Self::from_parts(
            name.into(),
            rank_top,
            names,
            ranks,
            up,
            down,
        ))
    }

    fn from_parts(
        name: String,
        rank_top: usize,
        names: Vec<String>,
        ranks: Vec<usize>,
        up: Vec<Vec<usize>>,
        down: Vec<Vec<usize>>,
    ) -> Self {
        let index = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        let below = reach(&down);
        let above = reach(&up);
        GradedPoset {
            name,
            rank_top,
            names,
            index,
            ranks,
            up,
            down,
            below,
            above,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Rank of `top`, i.e. `d + 1`.
    pub fn rank_top(&self) -> usize {
        self.rank_top
    }

    /// `d = rank_top - 1`, the number of proper ranks.
    pub fn dim(&self) -> usize {
        self.rank_top.saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elem_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks[i]
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.up[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.down[i]
    }

    /// Elements `x` with `x <= i`.
    pub fn below(&self, i: usize) -> &ElemSet {
        &self.below[i]
    }

    /// Elements `y` with `i <= y`.
    pub fn above(&self, i: usize) -> &ElemSet {
        &self.above[i]
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.below[y].contains(x)
    }

    pub fn try_bot(&self) -> Option<usize> {
        self.index_of("bot")
    }

    pub fn try_top(&self) -> Option<usize> {
        self.index_of("top")
    }

    /// Index of `bot`; panics if the poset has none.
    pub fn bot(&self) -> usize {
        self.try_bot().expect("poset has no bot element")
    }

    /// Index of `top`; panics if the poset has none.
    pub fn top(&self) -> usize {
        self.try_top().expect("poset has no top element")
    }

    /// Elements covered by `top`, in name order.
    pub fn coatoms(&self) -> Vec<usize> {
        self.try_top()
            .map(|t| self.down[t].clone())
            .unwrap_or_default()
    }

    pub fn elements_of_rank(&self, r: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.ranks[i] == r).collect()
    }

    /// Number of elements at each rank `0..=rank_top`.
    pub fn rank_counts(&self) -> Vec<usize> {
        let mut out = vec![0; self.rank_top + 1];
        for &r in &self.ranks {
            if r < out.len() {
                out[r] += 1;
            }
        }
        out
    }

    /// All cover pairs as `(lower, upper)` indices, sorted.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .up
            .iter()
            .enumerate()
            .flat_map(|(l, us)| us.iter().map(move |&u| (l, u)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn empty_set(&self) -> ElemSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn full_set(&self) -> ElemSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    /// Set built from element names; unknown names are an error.
    pub fn set_of<S: AsRef<str>>(
        &self,
        names: impl IntoIterator<Item = S>,
    ) -> Result<ElemSet, PosetError> {
        let mut s = self.empty_set();
        for n in names {
            let n = n.as_ref();
            s.insert(
                self.index_of(n)
                    .ok_or_else(|| PosetError::UnknownElement(n.to_string()))?,
            );
        }
        Ok(s)
    }

    /// Names of the members of `s`, in name order.
    pub fn names_of(&self, s: &ElemSet) -> Vec<String> {
        s.ones().map(|i| self.names[i].clone()).collect()
    }

    /// A string that identifies this poset up to its name.
    pub fn fingerprint(&self) -> String {
        let mut out = format!("{}|", self.rank_top);
        for (n, r) in self.names.iter().zip(&self.ranks) {
            out.push_str(n);
            out.push(':');
            out.push_str(&r.to_string());
            out.push(',');
        }
        out.push('|');
        for (l, u) in self.cover_pairs() {
            out.push_str(&self.names[l]);
            out.push('<');
            out.push_str(&self.names[u]);
            out.push(',');
        }
        out
    }

    /// Structural checks; the result is empty exactly when the poset is a
    /// bounded graded poset with `bot` at rank 0 and `top` at `rank_top`.
    pub fn validate(&self) -> Vec<PosetViolation> {
        let mut out = Vec::new();
        let v = |code: &'static str, detail: String| PosetViolation { code, detail };
        match self.try_bot() {
            None => out.push(v("missing-bot", "no element named bot".into())),
            Some(b) if self.ranks[b] != 0 => {
                out.push(v("bad-rank", format!("bot has rank {}", self.ranks[b])))
            }
            _ => {}
        }
        match self.try_top() {
            None => out.push(v("missing-top", "no element named top".into())),
            Some(t) if self.ranks[t] != self.rank_top => out.push(v(
                "bad-rank",
                format!("top has rank {}, expected {}", self.ranks[t], self.rank_top),
            )),
            _ => {}
        }
        for i in 0..self.len() {
            let n = &self.names[i];
            let r = self.ranks[i];
            if r == 0 && n != "bot" {
                out.push(v("extra-minimum", n.clone()));
            }
            if r > self.rank_top || (r == self.rank_top && n != "top") {
                out.push(v("rank-out-of-range", format!("{n} has rank {r}")));
            }
            if n != "bot" && self.down[i].is_empty() {
                out.push(v("not-bounded-below", n.clone()));
            }
            if n != "top" && self.up[i].is_empty() {
                out.push(v("not-bounded-above", n.clone()));
            }
            for &u in &self.up[i] {
                if self.ranks[u] != r + 1 {
                    out.push(v(
                        "not-graded",
                        format!("{} < {} ({} -> {})", n, self.names[u], r, self.ranks[u]),
                    ));
                }
                if self.le(u, i) {
                    out.push(v(
                        "not-antisymmetric",
                        format!("{} and {} lie on a cycle", n, self.names[u]),
                    ));
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Möbius function `mu(x, y)`, by the recursion over `[x, y)`.
    pub fn mobius(&self, x: usize, y: usize) -> Result<i64, PosetError> {
        if !self.le(x, y) {
            return Err(PosetError::NotComparable(
                self.names[x].clone(),
                self.names[y].clone(),
            ));
        }
        Ok(self.mobius_from(x)[y].expect("y lies above x"))
    }

    /// `mu(x, y)` for every `y >= x`; `None` elsewhere.
    pub fn mobius_from(&self, x: usize) -> Vec<Option<i64>> {
        let mut order: Vec<usize> = self.above[x].ones().collect();
        order.sort_by_key(|&y| (self.ranks[y], y));
        let mut mu: Vec<Option<i64>> = vec![None; self.len()];
        for y in order {
            if y == x {
                mu[y] = Some(1);
                continue;
            }
            let s: i64 = self.below[y]
                .ones()
                .filter(|&z| z != y)
                .filter_map(|z| mu[z])
                .sum();
            mu[y] = Some(-s);
        }
        mu
    }

    /// True when `[x, y]` has as many even-rank as odd-rank elements.
    fn interval_balanced(&self, x: usize, y: usize, even: &ElemSet) -> bool {
        let mut iv = self.above[x].clone();
        iv.intersect_with(&self.below[y]);
        let total = iv.count_ones(..);
        let ev = iv.intersection_count(even);
        2 * ev == total
    }

    fn even_ranked(&self) -> ElemSet {
        let mut s = self.empty_set();
        for (i, &r) in self.ranks.iter().enumerate() {
            if r % 2 == 0 {
                s.insert(i);
            }
        }
        s
    }

    /// Intervals `[x, y]` with `x < y` whose even and odd rank counts differ.
    fn unbalanced_intervals(&self, stop_at_first_proper: bool) -> Vec<(usize, usize)> {
        let even = self.even_ranked();
        let mut out = Vec::new();
        for x in 0..self.len() {
            for y in self.above[x].ones() {
                if y != x && !self.interval_balanced(x, y, &even) {
                    out.push((x, y));
                    let whole = Some(x) == self.try_bot() && Some(y) == self.try_top();
                    if stop_at_first_proper && !whole {
                        return out;
                    }
                }
            }
        }
        out
    }

    /// Every interval `[x, y]`, `x < y`, has equally many even- and odd-rank
    /// elements; equivalently `mu(x, y) = (-1)^(r(y) - r(x))`.
    pub fn is_eulerian(&self) -> bool {
        self.unbalanced_intervals(true).is_empty()
    }

    /// Every interval other than `[bot, top]` is Eulerian.
    pub fn is_semi_eulerian(&self) -> bool {
        let (b, t) = (self.try_bot(), self.try_top());
        self.unbalanced_intervals(true)
            .iter()
            .all(|&(x, y)| Some(x) == b && Some(y) == t)
    }

    /// The failing intervals by name, for diagnostics.
    pub fn non_eulerian_intervals(&self) -> Vec<(String, String)> {
        self.unbalanced_intervals(false)
            .into_iter()
            .map(|(x, y)| (self.names[x].clone(), self.names[y].clone()))
            .collect()
    }
}

/// Reflexive reachability along the given adjacency.
fn reach(adj: &[Vec<usize>]) -> Vec<ElemSet> {
    let n = adj.len();
    let mut out = Vec::with_capacity(n);
    let mut stack = Vec::new();
    for s in 0..n {
        let mut seen = FixedBitSet::with_capacity(n);
        seen.insert(s);
        stack.push(s);
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen.put(w) {
                    stack.push(w);
                }
            }
        }
        out.push(seen);
    }
    out
}

#[cfg(test)]
mod tests;
