use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::{Alphabet, Letter, NcPolynomial, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParsePolyError {
    #[error("unexpected character {ch:?} at offset {pos}")]
    UnexpectedChar { ch: char, pos: usize },
    #[error("missing exponent after '^' at offset {0}")]
    MissingExponent(usize),
    #[error("empty term at offset {0}")]
    EmptyTerm(usize),
    #[error("letter {letter} is not in alphabet {alphabet}")]
    WrongAlphabet { letter: char, alphabet: Alphabet },
}

pub(super) fn write_poly(p: &NcPolynomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (i, (w, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        match (i, neg) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        if w.is_empty() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            write!(f, "{w}")?;
        } else {
            write!(f, "{mag}{w}")?;
        }
    }
    Ok(())
}

impl NcPolynomial {
    /// Parses text such as `c^3 + 5cd - 2dc`, `aa+3ab` or `0`.
    ///
    /// Whitespace is ignored, `*` between a coefficient and its word is
    /// allowed, and the Unicode minus sign is accepted alongside `-`.
    pub fn parse(s: &str, alphabet: Alphabet) -> Result<Self, ParsePolyError> {
        let chars: Vec<(usize, char)> = s
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (i, if c == '\u{2212}' { '-' } else { c }))
            .collect();
        let mut out = NcPolynomial::zero(alphabet);
        let mut i = 0;
        if chars.is_empty() {
            return Err(ParsePolyError::EmptyTerm(0));
        }
        while i < chars.len() {
            let start = chars[i].0;
            let mut sign = BigInt::one();
            if i > 0 || matches!(chars[i].1, '+' | '-') {
                match chars[i].1 {
                    '+' => i += 1,
                    '-' => {
                        sign = -sign;
                        i += 1
                    }
                    ch if i > 0 => return Err(ParsePolyError::UnexpectedChar { ch, pos: start }),
                    _ => {}
                }
            }
            let mut digits = String::new();
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                digits.push(chars[i].1);
                i += 1;
            }
            if i < chars.len() && chars[i].1 == '*' && !digits.is_empty() {
                i += 1;
            }
            let mut letters = Vec::new();
            while i < chars.len() {
                let (pos, ch) = chars[i];
                let Some(l) = Letter::from_char(ch) else {
                    break;
                };
                if l.alphabet() != alphabet {
                    return Err(ParsePolyError::WrongAlphabet {
                        letter: ch,
                        alphabet,
                    });
                }
                i += 1;
                let mut reps = 1usize;
                if i < chars.len() && chars[i].1 == '^' {
                    i += 1;
                    let mut e = String::new();
                    while i < chars.len() && chars[i].1.is_ascii_digit() {
                        e.push(chars[i].1);
                        i += 1;
                    }
                    reps = e
                        .parse()
                        .map_err(|_| ParsePolyError::MissingExponent(pos))?;
                }
                letters.extend(std::iter::repeat_n(l, reps));
            }
            if digits.is_empty() && letters.is_empty() {
                return match chars.get(i) {
                    Some(&(pos, ch)) => Err(ParsePolyError::UnexpectedChar { ch, pos }),
                    None => Err(ParsePolyError::EmptyTerm(start)),
                };
            }
            if i < chars.len() && !matches!(chars[i].1, '+' | '-') {
                let (pos, ch) = chars[i];
                return Err(ParsePolyError::UnexpectedChar { ch, pos });
            }
            let coeff: BigInt = if digits.is_empty() {
                BigInt::one()
            } else {
                digits.parse().expect("ascii digits")
            };
            let c = sign * coeff;
            if !c.is_zero() {
                out.add_term(Word::new(letters), c);
            }
        }
        Ok(out)
    }
}
