use std::collections::{BTreeMap, BTreeSet};

use super::{ElemSet, GradedPoset, PosetError};

impl GradedPoset {
    /// Union of the lower intervals `[bot, x]` for `x` in `s`.
    pub fn closure(&self, s: &ElemSet) -> ElemSet {
        let mut out = self.empty_set();
        for x in s.ones() {
            out.union_with(&self.below[x]);
        }
        out
    }

    pub fn closure_of(&self, x: usize) -> ElemSet {
        self.below[x].clone()
    }

    /// Maximal members of `s` under the poset order.
    pub fn maximal_in(&self, s: &ElemSet) -> Vec<usize> {
        s.ones()
            .filter(|&x| self.up[x].iter().all(|&u| !s.contains(u)))
            .collect()
    }

    /// The induced poset on `s` with a fresh `top` of rank `r` covering the
    /// maximal members of `s`.
    pub fn cap(&self, s: &ElemSet, r: usize) -> Result<GradedPoset, PosetError> {
        for x in s.ones() {
            if self.ranks[x] >= r {
                return Err(PosetError::RankTooLow {
                    name: self.names[x].clone(),
                    rank: self.ranks[x],
                    cap: r,
                });
            }
            if self.names[x] == "top" {
                return Err(PosetError::NameClash("top".into()));
            }
        }
        let members: Vec<usize> = s.ones().collect();
        let mut elems: Vec<(String, usize)> = members
            .iter()
            .map(|&x| (self.names[x].clone(), self.ranks[x]))
            .collect();
        elems.push(("top".into(), r));
        let mut covers: Vec<(String, String)> = Vec::new();
        for &x in &members {
            for &u in &self.up[x] {
                if s.contains(u) {
                    covers.push((self.names[x].clone(), self.names[u].clone()));
                }
            }
        }
        for m in self.maximal_in(s) {
            covers.push((self.names[m].clone(), "top".into()));
        }
        GradedPoset::new(format!("{}~cap", self.name), r, elems, covers)
    }

    /// `cap(closure({x}) minus {x}, rank(x))`: the boundary of a cell with
    /// `x` itself playing `top`.
    pub fn lower_interval_capped(&self, x: usize) -> GradedPoset {
        let mut s = self.below[x].clone();
        s.set(x, false);
        self.cap(&s, self.ranks[x])
            .expect("strictly lower elements sit below the cap rank")
    }

    /// Elements `y` whose upper interval `[y, top]` is a three-element chain.
    pub fn three_chain_elements(&self) -> Vec<usize> {
        let Some(t) = self.try_top() else {
            return Vec::new();
        };
        if self.rank_top < 2 {
            return Vec::new();
        }
        let want = self.rank_top - 2;
        (0..self.len())
            .filter(|&y| {
                self.ranks[y] == want && self.up[y].len() == 1 && self.up[self.up[y][0]] == [t]
            })
            .collect()
    }

    /// Down-closure of the elements with three-element upper intervals.
    pub fn boundary_set(&self) -> ElemSet {
        let mut s = self.empty_set();
        for y in self.three_chain_elements() {
            s.union_with(&self.below[y]);
        }
        s
    }

    pub fn semisuspension(&self) -> (GradedPoset, usize) {
        self.semisuspension_named("tau")
    }

    /// Adds a coatom `tau` covering every element with a three-element
    /// upper interval. Returns the new poset and the index of `tau`.
    pub fn semisuspension_named(&self, tau: &str) -> (GradedPoset, usize) {
        let ys = self.three_chain_elements();
        let mut elems: Vec<(String, usize)> = self
            .names
            .iter()
            .cloned()
            .zip(self.ranks.iter().copied())
            .collect();
        elems.push((tau.to_string(), self.rank_top.saturating_sub(1)));
        let mut covers: Vec<(String, String)> = self
            .cover_pairs()
            .into_iter()
            .map(|(l, u)| (self.names[l].clone(), self.names[u].clone()))
            .collect();
        for y in ys {
            covers.push((self.names[y].clone(), tau.to_string()));
        }
        if self.try_top().is_some() {
            covers.push((tau.to_string(), "top".into()));
        }
        let out = GradedPoset::new(format!("{}~ss", self.name), self.rank_top, elems, covers)
            .expect("fresh coatom name must not clash");
        let t = out.index_of(tau).expect("just inserted");
        (out, t)
    }

    /// The poset arises from an Eulerian poset by deleting one coatom,
    /// tested as: its semisuspension is valid and Eulerian.
    pub fn is_near_eulerian(&self) -> bool {
        if self.rank_top < 2 || !self.is_valid() {
            return false;
        }
        let (ss, _) = self.semisuspension_named(&fresh_name(self, "tau"));
        ss.is_valid() && ss.is_eulerian()
    }

    /// Face poset of the product of the two cell complexes: cells are pairs
    /// of proper elements, ranked so that vertex pairs are vertices.
    pub fn product(&self, other: &GradedPoset) -> GradedPoset {
        let cells = |p: &GradedPoset| -> Vec<usize> {
            (0..p.len())
                .filter(|&i| Some(i) != p.try_bot() && Some(i) != p.try_top())
                .collect()
        };
        let (ca, cb) = (cells(self), cells(other));
        let pair = |x: usize, y: usize| format!("({},{})", self.names[x], other.names[y]);
        let rank_top = self.rank_top + other.rank_top - 2;
        let mut elems = vec![("bot".to_string(), 0), ("top".to_string(), rank_top)];
        let mut covers = Vec::new();
        for &x in &ca {
            for &y in &cb {
                let r = self.ranks[x] + other.ranks[y] - 1;
                elems.push((pair(x, y), r));
                if r == 1 {
                    covers.push(("bot".to_string(), pair(x, y)));
                }
                let mut maximal = true;
                for &x2 in &self.up[x] {
                    if Some(x2) != self.try_top() {
                        covers.push((pair(x, y), pair(x2, y)));
                        maximal = false;
                    }
                }
                for &y2 in &other.up[y] {
                    if Some(y2) != other.try_top() {
                        covers.push((pair(x, y), pair(x, y2)));
                        maximal = false;
                    }
                }
                if maximal {
                    covers.push((pair(x, y), "top".to_string()));
                }
            }
        }
        GradedPoset::new(
            format!("{}x{}", self.name, other.name),
            rank_top,
            elems,
            covers,
        )
        .expect("product names are unique")
    }

    /// Glues the boundaries of coatoms `fp` of `self` and `fq` of `q` along
    /// `iso` (names in `[bot, fp)` to names in `[bot, fq)`) and deletes both
    /// coatoms. Elements are renamed `a.<name>` and `b.<name>`; glued
    /// elements keep their `a.` name.
    pub fn connected_sum(
        &self,
        q: &GradedPoset,
        fp: &str,
        fq: &str,
        iso: &BTreeMap<String, String>,
    ) -> Result<GradedPoset, PosetError> {
        let bad = |m: String| PosetError::NotAnIsomorphism(m);
        let p_f = self
            .index_of(fp)
            .ok_or_else(|| PosetError::UnknownElement(fp.into()))?;
        let q_f = q
            .index_of(fq)
            .ok_or_else(|| PosetError::UnknownElement(fq.into()))?;
        if self.ranks[p_f] != self.rank_top - 1 || q.ranks[q_f] != q.rank_top - 1 {
            return Err(bad("glued elements must be coatoms".into()));
        }
        if self.rank_top != q.rank_top {
            return Err(bad("posets have different ranks".into()));
        }
        let mut dom = self.below[p_f].clone();
        dom.set(p_f, false);
        let mut cod = q.below[q_f].clone();
        cod.set(q_f, false);
        // index-level map dom -> cod
        let mut map: BTreeMap<usize, usize> = BTreeMap::new();
        for (a, b) in iso {
            let ia = self
                .index_of(a)
                .filter(|&i| dom.contains(i))
                .ok_or_else(|| bad(format!("{a} is not below {fp}")))?;
            let ib = q
                .index_of(b)
                .filter(|&i| cod.contains(i))
                .ok_or_else(|| bad(format!("{b} is not below {fq}")))?;
            if self.ranks[ia] != q.ranks[ib] {
                return Err(bad(format!("{a} and {b} have different ranks")));
            }
            map.insert(ia, ib);
        }
        let image: BTreeSet<usize> = map.values().copied().collect();
        if map.len() != dom.count_ones(..) || image.len() != cod.count_ones(..) {
            return Err(bad(
                "map is not a bijection between the facet boundaries".into()
            ));
        }
        for x in dom.ones() {
            let mapped: BTreeSet<usize> = self.up[x]
                .iter()
                .filter(|u| dom.contains(**u))
                .map(|u| map[u])
                .collect();
            let actual: BTreeSet<usize> = q.up[map[&x]]
                .iter()
                .copied()
                .filter(|u| cod.contains(*u))
                .collect();
            if mapped != actual {
                return Err(bad(format!(
                    "covers of {} are not preserved",
                    self.names[x]
                )));
            }
        }
        let a_name = |i: usize| match self.names[i].as_str() {
            "bot" | "top" => self.names[i].clone(),
            n => format!("a.{n}"),
        };
        let inverse: BTreeMap<usize, usize> = map.iter().map(|(&a, &b)| (b, a)).collect();
        let b_name = |i: usize| match (q.names[i].as_str(), inverse.get(&i)) {
            ("bot", _) | ("top", _) => q.names[i].clone(),
            (_, Some(&a)) => a_name(a),
            (n, None) => format!("b.{n}"),
        };
        let mut elems: BTreeMap<String, usize> = BTreeMap::new();
        let mut covers: BTreeSet<(String, String)> = BTreeSet::new();
        for i in (0..self.len()).filter(|&i| i != p_f) {
            elems.insert(a_name(i), self.ranks[i]);
            for &u in self.up[i].iter().filter(|&&u| u != p_f) {
                covers.insert((a_name(i), a_name(u)));
            }
        }
        for i in (0..q.len()).filter(|&i| i != q_f) {
            elems.insert(b_name(i), q.ranks[i]);
            for &u in q.up[i].iter().filter(|&&u| u != q_f) {
                covers.insert((b_name(i), b_name(u)));
            }
        }
        GradedPoset::new(
            format!("{}#{}", self.name, q.name),
            self.rank_top,
            elems,
            covers,
        )
    }

    /// Copy of `self` with every element renamed by `f`.
    pub fn renamed(&self, f: impl Fn(&str) -> String) -> Result<GradedPoset, PosetError> {
        let elems: Vec<(String, usize)> = self
            .names
            .iter()
            .zip(&self.ranks)
            .map(|(n, &r)| (f(n), r))
            .collect();
        let covers: Vec<(String, String)> = self
            .cover_pairs()
            .into_iter()
            .map(|(l, u)| (f(&self.names[l]), f(&self.names[u])))
            .collect();
        GradedPoset::new(self.name.clone(), self.rank_top, elems, covers)
    }
}

/// `base` if unused in `p`, else `base'`, `base''`, ...
pub(crate) fn fresh_name(p: &GradedPoset, base: &str) -> String {
    let mut n = base.to_string();
    while p.index_of(&n).is_some() {
        n.push('\'');
    }
    n
}
