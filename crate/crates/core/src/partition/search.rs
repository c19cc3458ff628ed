use std::collections::{BTreeSet, HashMap, HashSet};

use fixedbitset::FixedBitSet;

use super::{
    gamma_poset, initial_sub_poset, names_set, tau_name, verify_s_partition, verify_se_partition,
    PartitionError, SCert, SClass, SKind, SeCert, SeClass, SeKind, SeSubclass,
};
use crate::poset::{ElemSet, GradedPoset};

/// Default node limit for searches.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Posets with at most this many elements also get the per-element
/// assignment search when the facet-order search fails.
pub const DEFAULT_ASSIGNMENT_LIMIT: usize = 40;

/// Largest block size for which all set partitions of a class are tried.
const MAX_PARTITION_SIZE: usize = 10;

#[derive(Debug)]
struct Exhausted;

type Found<T> = Result<Option<T>, Exhausted>;

/// Budgeted, deterministic certificate search. One searcher can serve many
/// queries; results for identical posets are cached.
pub struct Searcher {
    budget: u64,
    used: u64,
    assignment_limit: usize,
    cache: HashMap<(String, Option<String>), Option<SCert>>,
}

impl Searcher {
    pub fn new(budget: u64) -> Self {
        Searcher {
            budget,
            used: 0,
            assignment_limit: DEFAULT_ASSIGNMENT_LIMIT,
            cache: HashMap::new(),
        }
    }

    pub fn with_assignment_limit(mut self, n: usize) -> Self {
        self.assignment_limit = n;
        self
    }

    pub fn nodes_used(&self) -> u64 {
        self.used
    }

    fn tick(&mut self) -> Result<(), Exhausted> {
        self.used += 1;
        if self.used > self.budget {
            Err(Exhausted)
        } else {
            Ok(())
        }
    }

    fn lift<T>(&self, r: Found<T>) -> Result<Option<T>, PartitionError> {
        r.map_err(|_| PartitionError::BudgetExhausted(self.budget))
    }

    /// An S-certificate for `p`, with `initial` as its initial coatom if given.
    pub fn find_s(
        &mut self,
        p: &GradedPoset,
        initial: Option<&str>,
    ) -> Result<Option<SCert>, PartitionError> {
        let r = self.s(p, initial);
        self.lift(r)
    }

    /// An SE-certificate for `p`.
    pub fn find_se(&mut self, p: &GradedPoset) -> Result<Option<SeCert>, PartitionError> {
        let r = self.se(p);
        self.lift(r)
    }

    /// Fills in every missing sub-certificate of `cert` by search. Returns
    /// `false` if some derived poset has no certificate within the search.
    pub fn complete_s(&mut self, cert: &mut SCert) -> Result<bool, PartitionError> {
        let r = self.complete_s_inner(cert);
        Ok(self.lift(r.map(|ok| ok.then_some(())))?.is_some())
    }

    pub fn complete_se(&mut self, cert: &mut SeCert) -> Result<bool, PartitionError> {
        let r = self.complete_se_inner(cert);
        Ok(self.lift(r.map(|ok| ok.then_some(())))?.is_some())
    }

    fn complete_s_inner(&mut self, cert: &mut SCert) -> Result<bool, Exhausted> {
        let p = cert.poset.clone();
        for cl in &mut cert.classes {
            let Some(s) = p.index_of(&cl.coatom) else {
                return Ok(false);
            };
            match (cl.kind, &mut cl.sub) {
                (SKind::Terminal, _) => {}
                (_, Some(sub)) => {
                    if !self.complete_s_inner(sub)? {
                        return Ok(false);
                    }
                }
                (SKind::Initial, None) => match self.s(&initial_sub_poset(&p, s), None)? {
                    Some(c) => cl.sub = Some(Box::new(c)),
                    None => return Ok(false),
                },
                (SKind::Ordinary, None) => {
                    let Ok(mut rest) = p.set_of(&cl.members) else {
                        return Ok(false);
                    };
                    rest.set(s, false);
                    match self.ordinary_block(&p, s, &rest, &tau_name(&cl.coatom, None))? {
                        Some(c) => cl.sub = Some(Box::new(c)),
                        None => return Ok(false),
                    }
                }
            }
        }
        Ok(true)
    }

    fn complete_se_inner(&mut self, cert: &mut SeCert) -> Result<bool, Exhausted> {
        let p = cert.poset.clone();
        for cl in &mut cert.classes {
            let Some(s) = p.index_of(&cl.coatom) else {
                return Ok(false);
            };
            match cl.kind {
                SeKind::Singleton => {}
                SeKind::Initial => match &mut cl.sub {
                    Some(sub) => {
                        if !self.complete_s_inner(sub)? {
                            return Ok(false);
                        }
                    }
                    None => match self.s(&initial_sub_poset(&p, s), None)? {
                        Some(c) => cl.sub = Some(Box::new(c)),
                        None => return Ok(false),
                    },
                },
                SeKind::Ordinary => {
                    for (j, sc) in cl.subclasses.iter_mut().enumerate() {
                        match &mut sc.sub {
                            Some(sub) => {
                                if !self.complete_s_inner(sub)? {
                                    return Ok(false);
                                }
                            }
                            None => {
                                let Ok(rest) = p.set_of(&sc.members) else {
                                    return Ok(false);
                                };
                                let tau = tau_name(&cl.coatom, Some(j + 1));
                                match self.ordinary_block(&p, s, &rest, &tau)? {
                                    Some(c) => sc.sub = Some(Box::new(c)),
                                    None => return Ok(false),
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    fn s(&mut self, p: &GradedPoset, initial: Option<&str>) -> Found<SCert> {
        let key = (p.fingerprint(), initial.map(str::to_string));
        if let Some(hit) = self.cache.get(&key) {
            return Ok(hit.clone().map(|mut c| {
                c.poset = p.clone();
                c
            }));
        }
        let found = self.s_uncached(p, initial)?;
        self.cache.insert(key, found.clone());
        Ok(found)
    }

    fn s_uncached(&mut self, p: &GradedPoset, initial: Option<&str>) -> Found<SCert> {
        if !p.is_valid() || !p.is_eulerian() {
            return Ok(None);
        }
        if p.rank_top() == 1 {
            return Ok(Some(SCert {
                poset: p.clone(),
                classes: Vec::new(),
            }));
        }
        let coatoms = p.coatoms();
        let initials: Vec<usize> = match initial {
            Some(n) => p
                .index_of(n)
                .filter(|i| coatoms.contains(i))
                .into_iter()
                .collect(),
            None => coatoms.clone(),
        };
        let mut starts = Vec::new();
        for &s1 in &initials {
            self.tick()?;
            let Some(sub) = self.s(&initial_sub_poset(p, s1), None)? else {
                continue;
            };
            let first = SClass {
                coatom: p.elem_name(s1).to_string(),
                kind: SKind::Initial,
                members: names_set(p, p.below(s1)),
                sub: Some(Box::new(sub)),
            };
            let mut classes = vec![first.clone()];
            let mut used = FixedBitSet::with_capacity(coatoms.len());
            used.insert(coatoms.iter().position(|&c| c == s1).expect("coatom"));
            let mut failed = HashSet::new();
            if self.order_dfs(
                p,
                &coatoms,
                &mut used,
                p.below(s1),
                &mut classes,
                &mut failed,
            )? {
                return Ok(Some(finish_s(p, classes)));
            }
            starts.push((s1, first));
        }
        if p.len() <= self.assignment_limit {
            for (s1, first) in starts {
                if let Some(classes) = self.assign_search(p, s1, &coatoms, first)? {
                    return Ok(Some(finish_s(p, classes)));
                }
            }
        }
        Ok(None)
    }

    /// Extends a facet order one coatom at a time; each new class is the
    /// closure of the coatom minus everything already covered.
    fn order_dfs(
        &mut self,
        p: &GradedPoset,
        coatoms: &[usize],
        used: &mut FixedBitSet,
        covered: &ElemSet,
        classes: &mut Vec<SClass>,
        failed: &mut HashSet<FixedBitSet>,
    ) -> Result<bool, Exhausted> {
        let remaining: Vec<usize> = (0..coatoms.len()).filter(|&k| !used.contains(k)).collect();
        if remaining.is_empty() {
            return Ok(true);
        }
        if failed.contains(used) {
            return Ok(false);
        }
        let last = remaining.len() == 1;
        for k in by_adjacency(p, coatoms, &remaining, covered) {
            self.tick()?;
            let s = coatoms[k];
            let mut pset = p.below(s).clone();
            pset.difference_with(covered);
            let single = pset.count_ones(..) == 1;
            if last {
                if single {
                    classes.push(SClass {
                        coatom: p.elem_name(s).to_string(),
                        kind: SKind::Terminal,
                        members: names_set(p, &pset),
                        sub: None,
                    });
                    return Ok(true);
                }
                continue;
            }
            if single {
                continue;
            }
            let mut rest = pset.clone();
            rest.set(s, false);
            let tau = tau_name(p.elem_name(s), None);
            let Some(sub) = self.ordinary_block(p, s, &rest, &tau)? else {
                continue;
            };
            classes.push(SClass {
                coatom: p.elem_name(s).to_string(),
                kind: SKind::Ordinary,
                members: names_set(p, &pset),
                sub: Some(Box::new(sub)),
            });
            used.insert(k);
            let mut next = covered.clone();
            next.union_with(&pset);
            if self.order_dfs(p, coatoms, used, &next, classes, failed)? {
                return Ok(true);
            }
            used.set(k, false);
            classes.pop();
        }
        failed.insert(used.clone());
        Ok(false)
    }

    /// Assigns every element outside the initial and terminal classes to
    /// some coatom above it, then checks the resulting ordinary classes.
    fn assign_search(
        &mut self,
        p: &GradedPoset,
        s1: usize,
        coatoms: &[usize],
        first: SClass,
    ) -> Found<Vec<SClass>> {
        let top = p.top();
        for &st in coatoms.iter().filter(|&&c| c != s1) {
            self.tick()?;
            let others: Vec<usize> = coatoms
                .iter()
                .copied()
                .filter(|&c| c != s1 && c != st)
                .collect();
            let mut free: Vec<usize> = (0..p.len())
                .filter(|&x| x != top && !p.le(x, s1) && !coatoms.contains(&x))
                .collect();
            free.sort_by_key(|&x| (std::cmp::Reverse(p.rank(x)), x));
            let options: Vec<Vec<usize>> = free
                .iter()
                .map(|&x| (0..others.len()).filter(|&k| p.le(x, others[k])).collect())
                .collect();
            if options.iter().any(Vec::is_empty) {
                continue;
            }
            let mut sets: Vec<ElemSet> = others
                .iter()
                .map(|&c| {
                    let mut s = p.empty_set();
                    s.insert(c);
                    s
                })
                .collect();
            if let Some(subs) = self.assign_dfs(p, &others, &free, &options, 0, &mut sets)? {
                let mut classes = vec![first.clone()];
                for ((&c, set), sub) in others.iter().zip(&sets).zip(subs) {
                    classes.push(SClass {
                        coatom: p.elem_name(c).to_string(),
                        kind: SKind::Ordinary,
                        members: names_set(p, set),
                        sub: Some(Box::new(sub)),
                    });
                }
                classes.push(SClass {
                    coatom: p.elem_name(st).to_string(),
                    kind: SKind::Terminal,
                    members: [p.elem_name(st).to_string()].into(),
                    sub: None,
                });
                return Ok(Some(classes));
            }
        }
        Ok(None)
    }

    fn assign_dfs(
        &mut self,
        p: &GradedPoset,
        others: &[usize],
        free: &[usize],
        options: &[Vec<usize>],
        i: usize,
        sets: &mut Vec<ElemSet>,
    ) -> Found<Vec<SCert>> {
        self.tick()?;
        if i == free.len() {
            let mut subs = Vec::new();
            for (&c, set) in others.iter().zip(sets.iter()) {
                let mut rest = set.clone();
                rest.set(c, false);
                match self.ordinary_block(p, c, &rest, &tau_name(p.elem_name(c), None))? {
                    Some(sub) => subs.push(sub),
                    None => return Ok(None),
                }
            }
            return Ok(Some(subs));
        }
        for &k in &options[i] {
            sets[k].insert(free[i]);
            if let Some(s) = self.assign_dfs(p, others, free, options, i + 1, sets)? {
                return Ok(Some(s));
            }
            sets[k].set(free[i], false);
        }
        Ok(None)
    }

    /// Checks the conditions on an ordinary class (or block) `rest` of
    /// coatom `s` and searches the sub-certificate of its semisuspension.
    fn ordinary_block(
        &mut self,
        p: &GradedPoset,
        s: usize,
        rest: &ElemSet,
        tau: &str,
    ) -> Found<SCert> {
        match block_conditions(p, s, rest, tau) {
            Ok(ss) => self.s(&ss, Some(tau)),
            Err(_) => Ok(None),
        }
    }

    fn se(&mut self, p: &GradedPoset) -> Found<SeCert> {
        if !p.is_valid() || !p.is_semi_eulerian() {
            return Ok(None);
        }
        if p.rank_top() == 1 {
            return Ok(Some(SeCert {
                poset: p.clone(),
                classes: Vec::new(),
            }));
        }
        let coatoms = p.coatoms();
        for &s1 in &coatoms {
            self.tick()?;
            let Some(sub) = self.s(&initial_sub_poset(p, s1), None)? else {
                continue;
            };
            let mut classes = vec![SeClass {
                coatom: p.elem_name(s1).to_string(),
                kind: SeKind::Initial,
                members: names_set(p, p.below(s1)),
                sub: Some(Box::new(sub)),
                subclasses: Vec::new(),
            }];
            let mut used = FixedBitSet::with_capacity(coatoms.len());
            used.insert(coatoms.iter().position(|&c| c == s1).expect("coatom"));
            let mut failed = HashSet::new();
            if self.se_dfs(
                p,
                &coatoms,
                &mut used,
                p.below(s1),
                &mut classes,
                &mut failed,
            )? {
                let mut c = SeCert {
                    poset: p.clone(),
                    classes,
                };
                c.sort();
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    fn se_dfs(
        &mut self,
        p: &GradedPoset,
        coatoms: &[usize],
        used: &mut FixedBitSet,
        covered: &ElemSet,
        classes: &mut Vec<SeClass>,
        failed: &mut HashSet<FixedBitSet>,
    ) -> Result<bool, Exhausted> {
        let remaining: Vec<usize> = (0..coatoms.len()).filter(|&k| !used.contains(k)).collect();
        if remaining.is_empty() {
            return Ok(true);
        }
        if failed.contains(used) {
            return Ok(false);
        }
        for k in by_adjacency(p, coatoms, &remaining, covered) {
            self.tick()?;
            let s = coatoms[k];
            let mut pset = p.below(s).clone();
            pset.difference_with(covered);
            let class = if pset.count_ones(..) == 1 {
                SeClass {
                    coatom: p.elem_name(s).to_string(),
                    kind: SeKind::Singleton,
                    members: names_set(p, &pset),
                    sub: None,
                    subclasses: Vec::new(),
                }
            } else {
                let mut rest = pset.clone();
                rest.set(s, false);
                let Some(blocks) = self.decompose(p, s, &rest)? else {
                    continue;
                };
                SeClass {
                    coatom: p.elem_name(s).to_string(),
                    kind: SeKind::Ordinary,
                    members: names_set(p, &pset),
                    sub: None,
                    subclasses: blocks,
                }
            };
            classes.push(class);
            used.insert(k);
            let mut next = covered.clone();
            next.union_with(&pset);
            if self.se_dfs(p, coatoms, used, &next, classes, failed)? {
                return Ok(true);
            }
            used.set(k, false);
            classes.pop();
        }
        failed.insert(used.clone());
        Ok(false)
    }

    /// Splits `rest` into blocks that each satisfy the ordinary-class
    /// conditions: first the whole set, then its connected components,
    /// then (for small sets) every set partition.
    fn decompose(&mut self, p: &GradedPoset, s: usize, rest: &ElemSet) -> Found<Vec<SeSubclass>> {
        let whole = vec![rest.clone()];
        if let Some(b) = self.try_blocks(p, s, &whole)? {
            return Ok(Some(b));
        }
        let comps = components(p, rest);
        if comps.len() > 1 {
            if let Some(b) = self.try_blocks(p, s, &comps)? {
                return Ok(Some(b));
            }
        }
        let elems: Vec<usize> = rest.ones().collect();
        if elems.len() > MAX_PARTITION_SIZE {
            return Ok(None);
        }
        let tried: HashSet<Vec<Vec<usize>>> = [whole, comps]
            .iter()
            .map(|bs| bs.iter().map(|b| b.ones().collect()).collect())
            .collect();
        let mut labels = vec![0usize; elems.len()];
        loop {
            let nblocks = labels.iter().max().map_or(0, |m| m + 1);
            let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); nblocks];
            for (i, &l) in labels.iter().enumerate() {
                blocks[l].push(elems[i]);
            }
            if !tried.contains(&blocks) {
                let sets: Vec<ElemSet> = blocks
                    .iter()
                    .map(|b| {
                        let mut s = p.empty_set();
                        s.extend(b.iter().copied());
                        s
                    })
                    .collect();
                if let Some(b) = self.try_blocks(p, s, &sets)? {
                    return Ok(Some(b));
                }
            }
            if !next_restricted_growth(&mut labels) {
                return Ok(None);
            }
        }
    }

    fn try_blocks(
        &mut self,
        p: &GradedPoset,
        s: usize,
        blocks: &[ElemSet],
    ) -> Found<Vec<SeSubclass>> {
        let mut sorted: Vec<&ElemSet> = blocks.iter().collect();
        sorted.sort_by_key(|b| b.ones().next());
        let mut out = Vec::new();
        for (j, b) in sorted.into_iter().enumerate() {
            self.tick()?;
            let tau = tau_name(p.elem_name(s), Some(j + 1));
            match self.ordinary_block(p, s, b, &tau)? {
                Some(sub) => out.push(SeSubclass {
                    members: names_set(p, b),
                    sub: Some(Box::new(sub)),
                }),
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    }
}

fn finish_s(p: &GradedPoset, classes: Vec<SClass>) -> SCert {
    let mut c = SCert {
        poset: p.clone(),
        classes,
    };
    c.sort();
    c
}

/// Remaining coatom positions, those sharing a lower cover with the
/// covered set first, then by name.
fn by_adjacency(
    p: &GradedPoset,
    coatoms: &[usize],
    remaining: &[usize],
    covered: &ElemSet,
) -> Vec<usize> {
    let mut v: Vec<(bool, usize)> = remaining
        .iter()
        .map(|&k| {
            let adj = p
                .lower_covers(coatoms[k])
                .iter()
                .any(|&r| covered.contains(r));
            (!adj, k)
        })
        .collect();
    v.sort();
    v.into_iter().map(|(_, k)| k).collect()
}

/// Blocks of `rest` under: two elements are linked when their closures
/// share an element other than `bot`.
fn components(p: &GradedPoset, rest: &ElemSet) -> Vec<ElemSet> {
    let bot = p.bot();
    let elems: Vec<usize> = rest.ones().collect();
    let mut parent: Vec<usize> = (0..elems.len()).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for a in 0..elems.len() {
        for b in a + 1..elems.len() {
            let mut both = p.below(elems[a]).clone();
            both.intersect_with(p.below(elems[b]));
            both.set(bot, false);
            if both.count_ones(..) > 0 {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, ElemSet> = Default::default();
    for (i, &x) in elems.iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_insert_with(|| p.empty_set()).insert(x);
    }
    let mut out: Vec<ElemSet> = groups.into_values().collect();
    out.sort_by_key(|b| b.ones().next());
    out
}

/// Next restricted growth string (set partition) in lexicographic order.
fn next_restricted_growth(a: &mut [usize]) -> bool {
    let n = a.len();
    for i in (1..n).rev() {
        let max_prefix = a[..i].iter().copied().max().unwrap_or(0);
        if a[i] <= max_prefix {
            a[i] += 1;
            for x in a.iter_mut().skip(i + 1) {
                *x = 0;
            }
            return true;
        }
    }
    false
}

/// The ordinary-class conditions without the sub-certificate; on success
/// returns the semisuspension that the sub-certificate must cover.
fn block_conditions(
    p: &GradedPoset,
    s: usize,
    rest: &ElemSet,
    tau: &str,
) -> Result<GradedPoset, String> {
    if rest.count_ones(..) == 0 {
        return Err("class has only its coatom".into());
    }
    let gamma = gamma_poset(p, s, rest).map_err(|e| e.to_string())?;
    if !gamma.is_near_eulerian() {
        return Err("closure of the class is not near-Eulerian".into());
    }
    let bd = p
        .set_of(gamma.names_of(&gamma.boundary_set()))
        .expect("boundary lies in the ambient poset");
    let mut both = bd.clone();
    both.intersect_with(rest);
    if both.count_ones(..) > 0 {
        return Err(format!(
            "class meets the boundary in {}",
            p.names_of(&both).join(" ")
        ));
    }
    let mut union = bd;
    union.union_with(rest);
    if union != p.closure(rest) {
        return Err("class and boundary do not fill the closure".into());
    }
    Ok(gamma.semisuspension_named(tau).0)
}

fn require_eulerian(p: &GradedPoset) -> Result<(), PartitionError> {
    if let Some(v) = p.validate().first() {
        return Err(PartitionError::Precondition(format!("invalid poset: {v}")));
    }
    if !p.is_eulerian() {
        return Err(PartitionError::Precondition(format!(
            "{} is not Eulerian (an SE-partition may exist)",
            p.name()
        )));
    }
    Ok(())
}

/// Searches for an S-certificate within `budget` nodes.
pub fn search_s_certificate(p: &GradedPoset, budget: u64) -> Result<SCert, PartitionError> {
    require_eulerian(p)?;
    Searcher::new(budget)
        .find_s(p, None)?
        .ok_or(PartitionError::NotFound)
}

/// Searches for an SE-certificate within `budget` nodes.
pub fn search_se_certificate(p: &GradedPoset, budget: u64) -> Result<SeCert, PartitionError> {
    if let Some(v) = p.validate().first() {
        return Err(PartitionError::Precondition(format!("invalid poset: {v}")));
    }
    if !p.is_semi_eulerian() {
        return Err(PartitionError::Precondition(format!(
            "{} is not semi-Eulerian",
            p.name()
        )));
    }
    Searcher::new(budget)
        .find_se(p)?
        .ok_or(PartitionError::NotFound)
}

/// Builds the certificate whose classes are `closure(s_i)` minus the
/// closures of earlier coatoms, with searched sub-certificates.
pub fn order_to_s_certificate<S: AsRef<str>>(
    p: &GradedPoset,
    order: &[S],
    budget: u64,
) -> Result<SCert, PartitionError> {
    require_eulerian(p)?;
    let coatoms: BTreeSet<usize> = p.coatoms().into_iter().collect();
    let idx: Vec<usize> = order
        .iter()
        .map(|n| {
            p.index_of(n.as_ref())
                .filter(|i| coatoms.contains(i))
                .ok_or_else(|| {
                    PartitionError::Precondition(format!("{} is not a coatom", n.as_ref()))
                })
        })
        .collect::<Result<_, _>>()?;
    let distinct: BTreeSet<usize> = idx.iter().copied().collect();
    if distinct.len() != idx.len() || distinct != coatoms {
        return Err(PartitionError::Precondition(
            "order must list every coatom exactly once".into(),
        ));
    }
    let mut searcher = Searcher::new(budget);
    let mut covered = p.empty_set();
    let mut classes = Vec::new();
    let fail = |s: usize, reason: String| PartitionError::OrderFailure {
        facet: p.elem_name(s).to_string(),
        reason,
    };
    for (i, &s) in idx.iter().enumerate() {
        let mut pset = p.below(s).clone();
        pset.difference_with(&covered);
        let name = p.elem_name(s).to_string();
        let class = if i == 0 {
            let sub = searcher
                .find_s(&initial_sub_poset(p, s), None)?
                .ok_or_else(|| fail(s, "boundary has no S-partition in the search".into()))?;
            SClass {
                coatom: name,
                kind: SKind::Initial,
                members: names_set(p, &pset),
                sub: Some(Box::new(sub)),
            }
        } else if i + 1 == idx.len() {
            if pset.count_ones(..) != 1 {
                return Err(fail(s, "last class is not a singleton".into()));
            }
            SClass {
                coatom: name,
                kind: SKind::Terminal,
                members: names_set(p, &pset),
                sub: None,
            }
        } else {
            let mut rest = pset.clone();
            rest.set(s, false);
            let tau = tau_name(&name, None);
            let ss = block_conditions(p, s, &rest, &tau).map_err(|r| fail(s, r))?;
            let sub = searcher
                .find_s(&ss, Some(&tau))?
                .ok_or_else(|| fail(s, "semisuspension has no S-partition from tau".into()))?;
            SClass {
                coatom: name,
                kind: SKind::Ordinary,
                members: names_set(p, &pset),
                sub: Some(Box::new(sub)),
            }
        };
        covered.union_with(&pset);
        classes.push(class);
    }
    let cert = finish_s(p, classes);
    let v = verify_s_partition(&cert);
    if v.is_empty() {
        Ok(cert)
    } else {
        Err(PartitionError::Violations(v))
    }
}

/// Builds an S-certificate from a partition of a simplicial complex into
/// intervals `[r_i, s_i]` (`r_i` a face, `s_i` a facet). The first interval
/// must start at `bot` and the last must be a single facet.
pub fn simplicial_partition_to_s_certificate<S: AsRef<str>>(
    p: &GradedPoset,
    pairs: &[(S, S)],
    budget: u64,
) -> Result<SCert, PartitionError> {
    require_eulerian(p)?;
    let top = p.top();
    for x in (0..p.len()).filter(|&x| x != top) {
        let atoms = p.below(x).ones().filter(|&a| p.rank(a) == 1).count();
        let size = p.below(x).count_ones(..);
        if atoms != p.rank(x) || Some(size) != 1usize.checked_shl(p.rank(x) as u32) {
            return Err(PartitionError::NotSimplicial(format!(
                "[bot, {}] is not boolean",
                p.elem_name(x)
            )));
        }
    }
    let coatoms: BTreeSet<usize> = p.coatoms().into_iter().collect();
    let mut seen = p.empty_set();
    let mut facets = BTreeSet::new();
    let mut intervals = Vec::new();
    for (r, s) in pairs {
        let (r, s) = (r.as_ref(), s.as_ref());
        let ri = p
            .index_of(r)
            .ok_or_else(|| PartitionError::NotAPartition(format!("unknown face {r}")))?;
        let si = p
            .index_of(s)
            .filter(|i| coatoms.contains(i))
            .ok_or_else(|| PartitionError::NotAPartition(format!("{s} is not a facet")))?;
        if !p.le(ri, si) {
            return Err(PartitionError::NotAPartition(format!(
                "{r} is not a face of {s}"
            )));
        }
        let mut iv = p.above(ri).clone();
        iv.intersect_with(p.below(si));
        let mut clash = iv.clone();
        clash.intersect_with(&seen);
        if clash.count_ones(..) > 0 {
            return Err(PartitionError::NotAPartition(format!(
                "intervals overlap in {}",
                p.names_of(&clash).join(" ")
            )));
        }
        seen.union_with(&iv);
        facets.insert(si);
        intervals.push((ri, si, iv));
    }
    let mut all = p.full_set();
    all.set(top, false);
    if seen != all || facets != coatoms || intervals.len() != coatoms.len() {
        return Err(PartitionError::NotAPartition(
            "intervals do not cover every face exactly once".into(),
        ));
    }
    if intervals[0].0 != p.bot() {
        return Err(PartitionError::NotAPartition(
            "the first interval must start at the empty face".into(),
        ));
    }
    let (rl, sl, _) = &intervals[intervals.len() - 1];
    if rl != sl {
        return Err(PartitionError::NotAPartition(
            "the last interval must be a single facet".into(),
        ));
    }
    let mut searcher = Searcher::new(budget);
    let last = intervals.len() - 1;
    let mut classes = Vec::new();
    for (i, (_, s, iv)) in intervals.into_iter().enumerate() {
        let name = p.elem_name(s).to_string();
        let fail = |reason: String| PartitionError::OrderFailure {
            facet: name.clone(),
            reason,
        };
        let (kind, sub) = if i == 0 {
            let sub = searcher
                .find_s(&initial_sub_poset(p, s), None)?
                .ok_or_else(|| fail("boundary has no S-partition in the search".into()))?;
            (SKind::Initial, Some(Box::new(sub)))
        } else if i == last {
            (SKind::Terminal, None)
        } else {
            let mut rest = iv.clone();
            rest.set(s, false);
            let tau = tau_name(&name, None);
            let ss = block_conditions(p, s, &rest, &tau).map_err(fail)?;
            let sub = searcher
                .find_s(&ss, Some(&tau))?
                .ok_or_else(|| fail("semisuspension has no S-partition from tau".into()))?;
            (SKind::Ordinary, Some(Box::new(sub)))
        };
        classes.push(SClass {
            coatom: name.clone(),
            kind,
            members: names_set(p, &iv),
            sub,
        });
    }
    let cert = finish_s(p, classes);
    let v = verify_s_partition(&cert);
    if v.is_empty() {
        Ok(cert)
    } else {
        Err(PartitionError::Violations(v))
    }
}

/// SE-certificate of the product of two rank-3 posets with classes
/// `P_s x Q_t`; blocks and sub-certificates are searched.
pub fn product_se_partition(cp: &SCert, cq: &SCert, budget: u64) -> Result<SeCert, PartitionError> {
    let (rp, rq) = (cp.poset.rank_top(), cq.poset.rank_top());
    if rp != 3 || rq != 3 {
        return Err(PartitionError::RankNotThree(rp, rq));
    }
    for c in [cp, cq] {
        let v = verify_s_partition(c);
        if !v.is_empty() {
            return Err(PartitionError::Violations(v));
        }
    }
    let prod = cp.poset.product(&cq.poset);
    let mut searcher = Searcher::new(budget);
    let mut classes = Vec::new();
    for a in &cp.classes {
        for b in &cq.classes {
            let coatom = format!("({},{})", a.coatom, b.coatom);
            let s = prod.index_of(&coatom).expect("product of coatoms");
            let mut members: BTreeSet<String> = BTreeSet::new();
            for x in a.members.iter().filter(|x| *x != "bot") {
                for y in b.members.iter().filter(|y| *y != "bot") {
                    members.insert(format!("({x},{y})"));
                }
            }
            let initial = a.kind == SKind::Initial && b.kind == SKind::Initial;
            if initial {
                members.insert("bot".into());
            }
            let fail = |reason: &str| PartitionError::OrderFailure {
                facet: coatom.clone(),
                reason: reason.to_string(),
            };
            let class = if initial {
                let sub = searcher
                    .find_s(&initial_sub_poset(&prod, s), None)?
                    .ok_or_else(|| fail("boundary has no S-partition in the search"))?;
                SeClass {
                    coatom: coatom.clone(),
                    kind: SeKind::Initial,
                    members,
                    sub: Some(Box::new(sub)),
                    subclasses: Vec::new(),
                }
            } else if members.len() == 1 {
                SeClass {
                    coatom: coatom.clone(),
                    kind: SeKind::Singleton,
                    members,
                    sub: None,
                    subclasses: Vec::new(),
                }
            } else {
                let mut rest = prod.set_of(&members)?;
                rest.set(s, false);
                let r = searcher.decompose(&prod, s, &rest);
                let blocks = searcher
                    .lift(r)?
                    .ok_or_else(|| fail("no decomposition into near-Eulerian blocks"))?;
                SeClass {
                    coatom: coatom.clone(),
                    kind: SeKind::Ordinary,
                    members,
                    sub: None,
                    subclasses: blocks,
                }
            };
            classes.push(class);
        }
    }
    let mut cert = SeCert {
        poset: prod,
        classes,
    };
    cert.sort();
    let v = verify_se_partition(&cert);
    if v.is_empty() {
        Ok(cert)
    } else {
        Err(PartitionError::Violations(v))
    }
}
