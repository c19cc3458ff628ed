//! Line-oriented text format:
//!
//! ```text
//! poset <name>
//! rank <d+1>
//! elem <id> <rank>
//! cover <lower-id> <upper-id>
//! ```
//!
//! `#` starts a comment. Lines may appear in any order after `poset`.

use std::fmt::Write as _;

use thiserror::Error;

use super::{GradedPoset, PosetError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParsePosetError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParsePosetError {
    ParsePosetError {
        line,
        message: message.into(),
    }
}

impl GradedPoset {
    pub fn parse(text: &str) -> Result<GradedPoset, ParsePosetError> {
        let mut name: Option<String> = None;
        let mut rank: Option<usize> = None;
        let mut elems: Vec<(String, usize)> = Vec::new();
        let mut elem_lines = std::collections::HashMap::new();
        let mut covers: Vec<(String, String, usize)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "poset" => {
                    if toks.len() != 2 {
                        return Err(err(ln, "expected `poset <name>`"));
                    }
                    if name.is_some() {
                        return Err(err(ln, "duplicate poset header"));
                    }
                    name = Some(toks[1].to_string());
                }
                "rank" => {
                    if toks.len() != 2 {
                        return Err(err(ln, "expected `rank <n>`"));
                    }
                    let r = toks[1]
                        .parse()
                        .map_err(|_| err(ln, format!("bad rank {:?}", toks[1])))?;
                    rank = Some(r);
                }
                "elem" => {
                    if toks.len() != 3 {
                        return Err(err(ln, "expected `elem <id> <rank>`"));
                    }
                    let r = toks[2]
                        .parse()
                        .map_err(|_| err(ln, format!("bad rank {:?}", toks[2])))?;
                    if elem_lines.insert(toks[1].to_string(), ln).is_some() {
                        return Err(err(ln, format!("duplicate element {}", toks[1])));
                    }
                    elems.push((toks[1].to_string(), r));
                }
                "cover" => {
                    if toks.len() != 3 {
                        return Err(err(ln, "expected `cover <lower> <upper>`"));
                    }
                    covers.push((toks[1].to_string(), toks[2].to_string(), ln));
                }
                other => return Err(err(ln, format!("unknown directive {other:?}"))),
            }
        }
        let name = name.ok_or_else(|| err(1, "missing `poset <name>` header"))?;
        let rank = rank.ok_or_else(|| err(1, "missing `rank` line"))?;
        for (lo, hi, ln) in &covers {
            for id in [lo, hi] {
                if !elem_lines.contains_key(id) {
                    return Err(err(*ln, format!("unknown element {id}")));
                }
            }
        }
        GradedPoset::new(
            name,
            rank,
            elems,
            covers.iter().map(|(l, h, _)| (l.as_str(), h.as_str())),
        )
        .map_err(|e: PosetError| err(1, e.to_string()))
    }

    /// Serializes in the text format, elements by rank then name.
    pub fn to_text(&self) -> String {
        self.to_text_with_header(&[])
    }

    /// Like [`Self::to_text`] with leading `#` comment lines.
    pub fn to_text_with_header(&self, comments: &[&str]) -> String {
        let mut out = String::new();
        for c in comments {
            let _ = writeln!(out, "# {c}");
        }
        let _ = writeln!(out, "poset {}", self.name);
        let _ = writeln!(out, "rank {}", self.rank_top);
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.ranks[i], i));
        for &i in &order {
            let _ = writeln!(out, "elem {} {}", self.names[i], self.ranks[i]);
        }
        let mut pairs = self.cover_pairs();
        pairs.sort_by_key(|&(l, u)| (self.ranks[l], l, u));
        for (l, u) in pairs {
            let _ = writeln!(out, "cover {} {}", self.names[l], self.names[u]);
        }
        out
    }
}
