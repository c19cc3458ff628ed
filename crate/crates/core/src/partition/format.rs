//! Text form of certificates.
//!
//! ```text
//! spart Q
//! class ABD kind=initial
//!   members A B D AB AD BD ABD bot
//!   sub
//!     class AB kind=initial
//!       members ...
//! ```
//!
//! SE certificates start with `separt`, and ordinary classes list their
//! blocks as `subclass <j>` sections holding `members` and `sub`. Nesting
//! is by two spaces; `#` starts a comment line.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use super::{
    gamma_poset, initial_sub_poset, tau_name, SCert, SClass, SKind, SeCert, SeClass, SeKind,
    SeSubclass,
};
use crate::poset::GradedPoset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseCertError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseCertError {
    ParseCertError {
        line,
        message: message.into(),
    }
}

fn pad(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("  ");
    }
}

fn members_line(out: &mut String, depth: usize, ms: &BTreeSet<String>) {
    pad(out, depth);
    out.push_str("members");
    for m in ms {
        out.push(' ');
        out.push_str(m);
    }
    out.push('\n');
}

fn write_s_body(out: &mut String, c: &SCert, depth: usize) {
    for cl in &c.classes {
        pad(out, depth);
        let _ = writeln!(out, "class {} kind={}", cl.coatom, cl.kind);
        members_line(out, depth + 1, &cl.members);
        if let Some(sub) = &cl.sub {
            pad(out, depth + 1);
            out.push_str("sub\n");
            write_s_body(out, sub, depth + 2);
        }
    }
}

impl SCert {
    pub fn to_text(&self) -> String {
        let mut out = format!("spart {}\n", self.poset.name());
        write_s_body(&mut out, self, 0);
        out
    }

    /// Reads a certificate for `p`; sub-certificate posets are derived
    /// from `p` and the classes.
    pub fn parse(text: &str, p: &GradedPoset) -> Result<SCert, ParseCertError> {
        let lines = lex(text)?;
        let mut r = Reader { lines, pos: 0 };
        r.header("spart")?;
        let c = r.s_body(p, 0)?;
        r.finish()?;
        Ok(c)
    }
}

impl SeCert {
    pub fn to_text(&self) -> String {
        let mut out = format!("separt {}\n", self.poset.name());
        for cl in &self.classes {
            let _ = writeln!(out, "class {} kind={}", cl.coatom, cl.kind);
            members_line(&mut out, 1, &cl.members);
            if let Some(sub) = &cl.sub {
                out.push_str("  sub\n");
                write_s_body(&mut out, sub, 2);
            }
            for (j, sc) in cl.subclasses.iter().enumerate() {
                let _ = writeln!(out, "  subclass {}", j + 1);
                members_line(&mut out, 2, &sc.members);
                if let Some(sub) = &sc.sub {
                    out.push_str("    sub\n");
                    write_s_body(&mut out, sub, 3);
                }
            }
        }
        out
    }

    pub fn parse(text: &str, p: &GradedPoset) -> Result<SeCert, ParseCertError> {
        let lines = lex(text)?;
        let mut r = Reader { lines, pos: 0 };
        r.header("separt")?;
        let mut classes = Vec::new();
        while let Some(line) = r.peek_at(0) {
            let (no, coatom, kind) = Reader::class_line(line)?;
            r.pos += 1;
            let kind = match kind.as_str() {
                "initial" => SeKind::Initial,
                "ordinary" => SeKind::Ordinary,
                "singleton" => SeKind::Singleton,
                k => return Err(err(no, format!("unknown kind {k}"))),
            };
            let s = coatom_index(p, &coatom, no)?;
            let members = r.members(1)?;
            let mut sub = None;
            if r.keyword(1, "sub") {
                let sp = initial_sub_poset(p, s);
                sub = Some(Box::new(r.s_body(&sp, 2)?));
            }
            let mut subclasses = Vec::new();
            while let Some(l) = r.peek_at(1) {
                let no = l.no;
                let words: Vec<&str> = l.text.split_whitespace().collect();
                if words.first() != Some(&"subclass") {
                    return Err(err(no, format!("unexpected '{}'", l.text)));
                }
                let j: usize = words
                    .get(1)
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| err(no, "subclass needs a number"))?;
                if j != subclasses.len() + 1 {
                    return Err(err(
                        no,
                        format!("expected subclass {}", subclasses.len() + 1),
                    ));
                }
                r.pos += 1;
                let members = r.members(2)?;
                let mut sub = None;
                if r.keyword(2, "sub") {
                    let sp = derived_ordinary(p, s, &members, &tau_name(&coatom, Some(j)), no)?;
                    sub = Some(Box::new(r.s_body(&sp, 3)?));
                }
                subclasses.push(SeSubclass { members, sub });
            }
            classes.push(SeClass {
                coatom,
                kind,
                members,
                sub,
                subclasses,
            });
        }
        r.finish()?;
        let mut c = SeCert {
            poset: p.clone(),
            classes,
        };
        c.sort();
        Ok(c)
    }
}

struct Line {
    no: usize,
    depth: usize,
    text: String,
}

fn lex(text: &str) -> Result<Vec<Line>, ParseCertError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let trimmed = raw.trim_start_matches(' ');
        let body = trimmed.trim_end();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        if trimmed.starts_with('\t') {
            return Err(err(no, "tabs are not allowed for indentation"));
        }
        let indent = raw.len() - trimmed.len();
        if indent % 2 != 0 {
            return Err(err(no, "indentation must be a multiple of two spaces"));
        }
        out.push(Line {
            no,
            depth: indent / 2,
            text: body.to_string(),
        });
    }
    Ok(out)
}

fn coatom_index(p: &GradedPoset, c: &str, no: usize) -> Result<usize, ParseCertError> {
    p.index_of(c)
        .filter(|&i| p.coatoms().contains(&i))
        .ok_or_else(|| err(no, format!("{c} is not a coatom of {}", p.name())))
}

fn derived_ordinary(
    p: &GradedPoset,
    s: usize,
    members: &BTreeSet<String>,
    tau: &str,
    no: usize,
) -> Result<GradedPoset, ParseCertError> {
    let name = p.elem_name(s);
    let mut rest = p
        .set_of(members.iter().filter(|m| *m != name))
        .map_err(|e| err(no, e.to_string()))?;
    rest.set(s, false);
    let gamma = gamma_poset(p, s, &rest).map_err(|e| err(no, e.to_string()))?;
    Ok(gamma.semisuspension_named(tau).0)
}

struct Reader {
    lines: Vec<Line>,
    pos: usize,
}

impl Reader {
    fn peek_at(&self, depth: usize) -> Option<&Line> {
        self.lines.get(self.pos).filter(|l| l.depth == depth)
    }

    fn header(&mut self, kw: &str) -> Result<(), ParseCertError> {
        match self.lines.first() {
            Some(l) if l.depth == 0 && l.text.split_whitespace().next() == Some(kw) => {
                self.pos = 1;
                Ok(())
            }
            Some(l) => Err(err(l.no, format!("expected '{kw} <name>'"))),
            None => Err(err(0, "empty certificate")),
        }
    }

    fn finish(&self) -> Result<(), ParseCertError> {
        match self.lines.get(self.pos) {
            None => Ok(()),
            Some(l) => Err(err(l.no, format!("unexpected '{}'", l.text))),
        }
    }

    fn class_line(l: &Line) -> Result<(usize, String, String), ParseCertError> {
        let words: Vec<&str> = l.text.split_whitespace().collect();
        match words.as_slice() {
            ["class", c, k] if k.starts_with("kind=") => {
                Ok((l.no, c.to_string(), k["kind=".len()..].to_string()))
            }
            _ => Err(err(l.no, "expected 'class <coatom> kind=<kind>'")),
        }
    }

    fn members(&mut self, depth: usize) -> Result<BTreeSet<String>, ParseCertError> {
        match self.lines.get(self.pos) {
            Some(l) if l.depth == depth && l.text.split_whitespace().next() == Some("members") => {
                let ms = l
                    .text
                    .split_whitespace()
                    .skip(1)
                    .map(String::from)
                    .collect();
                self.pos += 1;
                Ok(ms)
            }
            Some(l) => Err(err(l.no, "expected 'members ...'")),
            None => Err(err(0, "missing 'members' line at end of input")),
        }
    }

    fn keyword(&mut self, depth: usize, kw: &str) -> bool {
        if self.peek_at(depth).is_some_and(|l| l.text == kw) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn s_body(&mut self, p: &GradedPoset, depth: usize) -> Result<SCert, ParseCertError> {
        let mut classes = Vec::new();
        while let Some(l) = self.peek_at(depth) {
            let (no, coatom, kind) = Reader::class_line(l)?;
            self.pos += 1;
            let kind = match kind.as_str() {
                "initial" => SKind::Initial,
                "ordinary" => SKind::Ordinary,
                "terminal" => SKind::Terminal,
                k => return Err(err(no, format!("unknown kind {k}"))),
            };
            let s = coatom_index(p, &coatom, no)?;
            let members = self.members(depth + 1)?;
            let mut sub = None;
            if self.keyword(depth + 1, "sub") {
                let sp = match kind {
                    SKind::Initial => initial_sub_poset(p, s),
                    SKind::Ordinary => {
                        derived_ordinary(p, s, &members, &tau_name(&coatom, None), no)?
                    }
                    SKind::Terminal => return Err(err(no, "a terminal class has no sub")),
                };
                sub = Some(Box::new(self.s_body(&sp, depth + 2)?));
            }
            classes.push(SClass {
                coatom,
                kind,
                members,
                sub,
            });
        }
        let mut c = SCert {
            poset: p.clone(),
            classes,
        };
        c.sort();
        Ok(c)
    }
}
