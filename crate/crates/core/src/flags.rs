//! Flag f- and h-vectors, Dehn-Sommerville checks, the cd-index and its
//! semi-Eulerian variant.
//!
//! A rank set `K` of `[d] = {1..d}` is stored as a bitmask with bit `i-1`
//! standing for rank `i`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::ncpoly::{Alphabet, Letter, NcPolynomial, PolyError, Word};
use crate::poset::GradedPoset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlagError {
    #[error("no cd-index: {0}")]
    NotInImage(String),
    #[error("malformed flag vector line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Ranks in the set `mask`, ascending.
pub fn mask_ranks(mask: usize) -> Vec<usize> {
    (0..usize::BITS as usize)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| b + 1)
        .collect()
}

pub fn ranks_mask(ranks: &[usize]) -> usize {
    ranks.iter().fold(0, |m, &r| m | 1 << (r - 1))
}

fn show_set(mask: usize) -> String {
    let items: Vec<String> = mask_ranks(mask).iter().map(|r| r.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// `f_K` for every `K` of `[d]`, indexed by mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagVector {
    d: usize,
    counts: Vec<BigInt>,
}

/// `h_K` for every `K` of `[d]`, indexed by mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagHVector {
    d: usize,
    counts: Vec<BigInt>,
}

macro_rules! vector_common {
    ($t:ty) => {
        impl $t {
            pub fn from_counts(d: usize, counts: Vec<BigInt>) -> Self {
                assert_eq!(counts.len(), 1 << d, "need 2^d entries");
                Self { d, counts }
            }

            pub fn d(&self) -> usize {
                self.d
            }

            pub fn get(&self, mask: usize) -> &BigInt {
                &self.counts[mask]
            }

            /// Entry for the rank set given as a list, e.g. `&[1, 3]`.
            pub fn at(&self, ranks: &[usize]) -> &BigInt {
                &self.counts[ranks_mask(ranks)]
            }

            pub fn counts(&self) -> &[BigInt] {
                &self.counts
            }

            /// Masks in display order: by size, then lexicographically.
            pub fn masks(&self) -> Vec<usize> {
                let mut m: Vec<usize> = (0..self.counts.len()).collect();
                m.sort_by_key(|&k| (k.count_ones(), mask_ranks(k)));
                m
            }
        }

        impl fmt::Display for $t {
            /// One `K={1,3}: 36` line per rank set.
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                for m in self.masks() {
                    writeln!(f, "K={}: {}", show_set(m), self.counts[m])?;
                }
                Ok(())
            }
        }
    };
}

vector_common!(FlagVector);
vector_common!(FlagHVector);

impl FlagVector {
    pub fn to_h(&self) -> FlagHVector {
        let mut c = self.counts.clone();
        for bit in 0..self.d {
            for m in 0..c.len() {
                if m >> bit & 1 == 1 {
                    let lower = c[m ^ (1 << bit)].clone();
                    c[m] -= lower;
                }
            }
        }
        FlagHVector {
            d: self.d,
            counts: c,
        }
    }

    /// `Upsilon = sum f_K u_K`.
    pub fn chain_polynomial(&self) -> NcPolynomial {
        mask_polynomial(self.d, &self.counts)
    }

    /// Parses the `K={..}: n` line format; missing sets are an error.
    pub fn parse(text: &str) -> Result<FlagVector, FlagError> {
        let mut entries: Vec<(usize, BigInt)> = Vec::new();
        let mut d = 0;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let perr = |message: &str| FlagError::Parse {
                line: i + 1,
                message: message.to_string(),
            };
            let rest = line
                .strip_prefix("K={")
                .ok_or_else(|| perr("expected K={...}"))?;
            let (set, value) = rest.split_once("}:").ok_or_else(|| perr("expected `}:`"))?;
            let ranks: Vec<usize> = if set.trim().is_empty() {
                Vec::new()
            } else {
                set.split(',')
                    .map(|s| s.trim().parse::<usize>().ok().filter(|&r| r >= 1))
                    .collect::<Option<_>>()
                    .ok_or_else(|| perr("bad rank"))?
            };
            d = d.max(ranks.iter().copied().max().unwrap_or(0));
            let v: BigInt = value.trim().parse().map_err(|_| perr("bad count"))?;
            entries.push((ranks_mask(&ranks), v));
        }
        let mut counts: Vec<Option<BigInt>> = vec![None; 1 << d];
        for (m, v) in entries {
            counts[m] = Some(v);
        }
        let counts = counts
            .into_iter()
            .enumerate()
            .map(|(m, c)| {
                c.ok_or_else(|| FlagError::Parse {
                    line: 0,
                    message: format!("missing K={}", show_set(m)),
                })
            })
            .collect::<Result<_, _>>()?;
        Ok(FlagVector { d, counts })
    }
}

impl FlagHVector {
    pub fn to_f(&self) -> FlagVector {
        let mut c = self.counts.clone();
        for bit in 0..self.d {
            for m in 0..c.len() {
                if m >> bit & 1 == 1 {
                    let lower = c[m ^ (1 << bit)].clone();
                    c[m] += lower;
                }
            }
        }
        FlagVector {
            d: self.d,
            counts: c,
        }
    }

    /// `Psi = sum h_K u_K`.
    pub fn ab_polynomial(&self) -> NcPolynomial {
        mask_polynomial(self.d, &self.counts)
    }
}

/// `sum c_K u_K` with `u_i = b` when `i` is in `K`, else `a`.
fn mask_polynomial(d: usize, coeffs: &[BigInt]) -> NcPolynomial {
    let terms = coeffs.iter().enumerate().map(|(m, c)| {
        let w: Vec<Letter> = (0..d)
            .map(|i| {
                if m >> i & 1 == 1 {
                    Letter::B
                } else {
                    Letter::A
                }
            })
            .collect();
        (Word::new(w), c.clone())
    });
    NcPolynomial::from_terms(Alphabet::Ab, terms).expect("ab words")
}

/// Counts chains `bot < x_1 < ... < top` by the set of ranks they use.
pub fn flag_f(p: &GradedPoset) -> FlagVector {
    let d = p.dim();
    let by_rank: Vec<Vec<usize>> = (0..=d).map(|r| p.elements_of_rank(r)).collect();
    // ends[m][x]: chains with rank set m whose top element is x (x of rank max(m))
    let mut ends: Vec<Vec<BigInt>> = vec![Vec::new(); 1 << d];
    let mut counts = vec![BigInt::zero(); 1 << d];
    counts[0] = BigInt::one();
    for m in 1usize..1 << d {
        let top_rank = usize::BITS as usize - m.leading_zeros() as usize;
        let rest = m ^ (1 << (top_rank - 1));
        let mut here = Vec::with_capacity(by_rank[top_rank].len());
        for &y in &by_rank[top_rank] {
            let c = if rest == 0 {
                BigInt::one()
            } else {
                let prev_rank = usize::BITS as usize - rest.leading_zeros() as usize;
                by_rank[prev_rank]
                    .iter()
                    .zip(&ends[rest])
                    .filter(|(&x, _)| p.le(x, y))
                    .map(|(_, c)| c)
                    .sum()
            };
            here.push(c);
        }
        counts[m] = here.iter().sum();
        ends[m] = here;
    }
    FlagVector { d, counts }
}

pub fn flag_h(f: &FlagVector) -> FlagHVector {
    f.to_h()
}

pub fn ab_polynomial(h: &FlagHVector) -> NcPolynomial {
    h.ab_polynomial()
}

/// `sum_{i=1}^{d} (-1)^(i-1) f_{i}`: the alternating cell count.
pub fn euler_characteristic(p: &GradedPoset) -> BigInt {
    let counts = p.rank_counts();
    (1..=p.dim())
        .map(|i| {
            let c = BigInt::from(counts[i]);
            if i % 2 == 1 {
                c
            } else {
                -c
            }
        })
        .sum()
}

/// Euler characteristic of the (d-1)-sphere, `1 + (-1)^(d-1)`.
pub fn sphere_euler(d: usize) -> BigInt {
    if d % 2 == 1 {
        BigInt::from(2)
    } else {
        BigInt::zero()
    }
}

/// A failing Dehn-Sommerville equation for the rank set `k_set` between
/// consecutive members `i < k` of `k_set` plus `{0, d+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DsViolation {
    pub k_set: usize,
    pub i: usize,
    pub k: usize,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl fmt::Display for DsViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "K={} i={} k={}: {} != {}",
            show_set(self.k_set),
            self.i,
            self.k,
            self.lhs,
            self.rhs
        )
    }
}

/// Checks, for every `K` and consecutive `i < k` in `K + {0, d+1}` with
/// `k - i >= 2`:
/// `sum_{j=i+1}^{k-1} (-1)^(j-i-1) f_{K+j} = (1 - (-1)^(k-i-1)) f_K`.
pub fn check_dehn_sommerville(f: &FlagVector) -> Vec<DsViolation> {
    let d = f.d;
    let mut out = Vec::new();
    for m in 0..1usize << d {
        let mut pts = vec![0];
        pts.extend(mask_ranks(m));
        pts.push(d + 1);
        for w in pts.windows(2) {
            let (i, k) = (w[0], w[1]);
            if k - i < 2 {
                continue;
            }
            let mut lhs = BigInt::zero();
            for j in i + 1..k {
                let v = &f.counts[m | 1 << (j - 1)];
                if (j - i - 1) % 2 == 0 {
                    lhs += v;
                } else {
                    lhs -= v;
                }
            }
            let rhs = if (k - i - 1) % 2 == 1 {
                &f.counts[m] * 2
            } else {
                BigInt::zero()
            };
            if lhs != rhs {
                out.push(DsViolation {
                    k_set: m,
                    i,
                    k,
                    lhs,
                    rhs,
                });
            }
        }
    }
    out
}

/// The cd-index from a flag vector, or the first failing equation.
pub fn cd_index_of_flags(f: &FlagVector) -> Result<NcPolynomial, FlagError> {
    let psi = f.to_h().ab_polynomial();
    psi.ab_to_cd().map_err(|e| {
        let why = match e {
            PolyError::NotInImage(s) => s,
            other => other.to_string(),
        };
        match check_dehn_sommerville(f).first() {
            Some(v) => FlagError::NotInImage(format!("Dehn-Sommerville fails at {v}")),
            None => FlagError::NotInImage(why),
        }
    })
}

/// `Phi` with `Phi(a+b, ab+ba) = Psi`.
pub fn cd_index(p: &GradedPoset) -> Result<NcPolynomial, FlagError> {
    cd_index_of_flags(&flag_f(p))
}

/// The flag vector with `f_{d}` shifted by `chi(S^(d-1)) - chi(p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModifiedFlagVector {
    pub base: FlagVector,
    pub correction: BigInt,
    pub warning: Option<String>,
}

impl ModifiedFlagVector {
    pub fn vector(&self) -> FlagVector {
        let mut v = self.base.clone();
        if v.d >= 1 {
            v.counts[1 << (v.d - 1)] += &self.correction;
        }
        v
    }
}

pub fn modified_flag_f(p: &GradedPoset) -> ModifiedFlagVector {
    let base = flag_f(p);
    let correction = if p.dim() >= 1 {
        sphere_euler(p.dim()) - euler_characteristic(p)
    } else {
        BigInt::zero()
    };
    let warning = (!p.is_semi_eulerian()).then(|| format!("{} is not semi-Eulerian", p.name()));
    ModifiedFlagVector {
        base,
        correction,
        warning,
    }
}

/// `Phi` with `Phi(a+b, ab+ba) = Upsilon'(a-b, b)`, `Upsilon'` the chain
/// polynomial of the modified flag vector.
pub fn semi_cd_index(p: &GradedPoset) -> Result<NcPolynomial, FlagError> {
    if p.dim() == 0 {
        return Ok(NcPolynomial::one(Alphabet::Cd));
    }
    let fv = modified_flag_f(p).vector();
    let psi = fv
        .chain_polynomial()
        .substitute_a_minus_b()
        .expect("chain polynomial is in a, b");
    psi.ab_to_cd()
        .map_err(|e| match check_dehn_sommerville(&fv).first() {
            Some(v) => FlagError::NotInImage(format!("Dehn-Sommerville fails at {v}")),
            None => FlagError::NotInImage(e.to_string()),
        })
}
