//! Exact noncommutative polynomials over the integers in the letters `a, b`
//! or `c, d`, the substitution maps between them, and cd-index extraction.

mod solve;
mod text;
mod word;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use solve::{solve_integer, SolveOutcome};
pub use text::ParsePolyError;
pub use word::{ab_word_index, ab_words, cd_words, Alphabet, Letter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: Alphabet, right: Alphabet },
    #[error("polynomial is not homogeneous (degrees {0} and {1} both present)")]
    InhomogeneousInput(usize, usize),
    #[error("not in the image of the cd map: {0}")]
    NotInImage(String),
    #[error("word {0} mixes alphabets")]
    MixedWord(String),
}

/// A polynomial in non-commuting letters with nonzero integer coefficients.
///
/// The zero polynomial has no terms. Terms are kept in canonical word order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NcPolynomial {
    alphabet: Alphabet,
    terms: BTreeMap<Word, BigInt>,
}

impl NcPolynomial {
    pub fn zero(alphabet: Alphabet) -> Self {
        NcPolynomial {
            alphabet,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alphabet: Alphabet) -> Self {
        Self::monomial(alphabet, Word::empty(), BigInt::one())
    }

    /// Builds `coeff * word`; panics if the word is not in `alphabet`.
    pub fn monomial(alphabet: Alphabet, word: Word, coeff: impl Into<BigInt>) -> Self {
        assert!(
            word.alphabet().is_none_or(|a| a == alphabet) && word.is_single_alphabet(),
            "word {word} not in alphabet {alphabet}"
        );
        let mut p = Self::zero(alphabet);
        p.add_term(word, coeff.into());
        p
    }

    pub fn letter(letter: Letter) -> Self {
        Self::monomial(letter.alphabet(), Word::new(vec![letter]), 1)
    }

    /// Collects `(word, coeff)` pairs, summing repeats and dropping zeros.
    pub fn from_terms<I>(alphabet: Alphabet, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Word, BigInt)>,
    {
        let mut p = Self::zero(alphabet);
        for (w, c) in terms {
            if !w.is_single_alphabet() {
                return Err(PolyError::MixedWord(w.to_string()));
            }
            if let Some(a) = w.alphabet() {
                if a != alphabet {
                    return Err(PolyError::AlphabetMismatch {
                        left: alphabet,
                        right: a,
                    });
                }
            }
            p.add_term(w, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, w: Word, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Coefficient of the word spelled by `s` (plain letters, no exponents).
    pub fn coeff_of(&self, s: &str) -> BigInt {
        Word::parse(s)
            .map(|w| self.coeff(&w))
            .unwrap_or_else(BigInt::zero)
    }

    /// Common degree of all terms; `Ok(None)` for the zero polynomial.
    pub fn homogeneous_degree(&self) -> Result<Option<usize>, PolyError> {
        let mut deg = None;
        for w in self.terms.keys() {
            let d = w.degree();
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err(PolyError::InhomogeneousInput(e, d)),
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_ok()
    }

    /// True when every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Sum of all coefficients.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    fn check_same(&self, other: &Self) -> Result<(), PolyError> {
        if self.alphabet != other.alphabet {
            Err(PolyError::AlphabetMismatch {
                left: self.alphabet,
                right: other.alphabet,
            })
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same(other)?;
        let mut out = Self::zero(self.alphabet);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.alphabet);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * k);
        }
        out
    }

    /// Appends `x` to every word on the right.
    pub fn multiply_right_letter(&self, x: Letter) -> Result<Self, PolyError> {
        if x.alphabet() != self.alphabet {
            return Err(PolyError::AlphabetMismatch {
                left: self.alphabet,
                right: x.alphabet(),
            });
        }
        Ok(NcPolynomial {
            alphabet: self.alphabet,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| {
                    let mut w = w.clone();
                    w.push(x);
                    (w, c.clone())
                })
                .collect(),
        })
    }

    /// Replaces every letter by a polynomial and expands.
    fn substitute<F>(&self, target: Alphabet, image: F) -> Self
    where
        F: Fn(Letter) -> NcPolynomial,
    {
        let mut out = Self::zero(target);
        let mut cache: BTreeMap<Letter, NcPolynomial> = BTreeMap::new();
        for (w, c) in &self.terms {
            let mut acc = Self::one(target);
            for &l in w.letters() {
                let img = cache.entry(l).or_insert_with(|| image(l));
                acc = acc
                    .try_mul(img)
                    .expect("substitution images share an alphabet");
            }
            for (w2, c2) in acc.terms {
                out.add_term(w2, c * c2);
            }
        }
        out
    }

    /// The graded map `c -> a+b`, `d -> ab+ba`.
    pub fn expand_cd_to_ab(&self) -> Result<Self, PolyError> {
        if self.alphabet != Alphabet::Cd {
            return Err(PolyError::AlphabetMismatch {
                left: Alphabet::Cd,
                right: self.alphabet,
            });
        }
        Ok(self.substitute(Alphabet::Ab, |l| match l {
            Letter::C => a() + b(),
            Letter::D => a() * b() + b() * a(),
            _ => unreachable!("cd polynomial holds only c and d"),
        }))
    }

    /// `a -> a - b`, `b -> b`; turns a chain polynomial into an ab-polynomial.
    pub fn substitute_a_minus_b(&self) -> Result<Self, PolyError> {
        self.substitute_ab(|| a() - b())
    }

    /// `a -> a + b`, `b -> b`; inverse of [`Self::substitute_a_minus_b`].
    pub fn substitute_a_plus_b(&self) -> Result<Self, PolyError> {
        self.substitute_ab(|| a() + b())
    }

    fn substitute_ab(&self, a_image: impl Fn() -> NcPolynomial) -> Result<Self, PolyError> {
        if self.alphabet != Alphabet::Ab {
            return Err(PolyError::AlphabetMismatch {
                left: Alphabet::Ab,
                right: self.alphabet,
            });
        }
        Ok(self.substitute(Alphabet::Ab, |l| match l {
            Letter::A => a_image(),
            Letter::B => b(),
            _ => unreachable!("ab polynomial holds only a and b"),
        }))
    }

    /// Finds the unique cd-polynomial whose expansion equals `self`.
    ///
    /// Builds the 0/1 matrix of the ab-expansions of all cd-words of the
    /// degree and solves it exactly; inconsistent or non-integral systems
    /// report [`PolyError::NotInImage`].
    pub fn ab_to_cd(&self) -> Result<Self, PolyError> {
        if self.alphabet != Alphabet::Ab {
            return Err(PolyError::AlphabetMismatch {
                left: Alphabet::Ab,
                right: self.alphabet,
            });
        }
        let Some(deg) = self.homogeneous_degree()? else {
            return Ok(Self::zero(Alphabet::Cd));
        };
        let basis = cd_words(deg);
        let nrows = 1usize << deg;
        let mut rows = vec![vec![BigInt::zero(); basis.len()]; nrows];
        for (j, w) in basis.iter().enumerate() {
            let img = Self::monomial(Alphabet::Cd, w.clone(), 1).expand_cd_to_ab()?;
            for (abw, c) in img.terms() {
                rows[ab_word_index(abw)][j] = c.clone();
            }
        }
        let mut rhs = vec![BigInt::zero(); nrows];
        for (w, c) in &self.terms {
            rhs[ab_word_index(w)] = c.clone();
        }
        match solve_integer(&rows, &rhs, basis.len()) {
            SolveOutcome::Integral(x) => {
                let out = Self::from_terms(Alphabet::Cd, basis.into_iter().zip(x))?;
                debug_assert_eq!(out.expand_cd_to_ab().as_ref(), Ok(self));
                Ok(out)
            }
            SolveOutcome::Inconsistent { row, residual } => Err(PolyError::NotInImage(format!(
                "inconsistent at {} (residual {})",
                ab_words(deg)[row],
                residual
            ))),
            SolveOutcome::NonIntegral { column } => Err(PolyError::NotInImage(format!(
                "non-integral coefficient for {}",
                cd_words(deg)[column]
            ))),
            SolveOutcome::Underdetermined { column } => Err(PolyError::NotInImage(format!(
                "singular cd basis at {}",
                cd_words(deg)[column]
            ))),
        }
    }
}

fn a() -> NcPolynomial {
    NcPolynomial::letter(Letter::A)
}

fn b() -> NcPolynomial {
    NcPolynomial::letter(Letter::B)
}

/// The cd-letter `c` as a polynomial.
pub fn c() -> NcPolynomial {
    NcPolynomial::letter(Letter::C)
}

/// The cd-letter `d` as a polynomial.
pub fn d() -> NcPolynomial {
    NcPolynomial::letter(Letter::D)
}

impl Add for NcPolynomial {
    type Output = NcPolynomial;
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("alphabet mismatch in +")
    }
}

impl Add for &NcPolynomial {
    type Output = NcPolynomial;
    fn add(self, rhs: Self) -> NcPolynomial {
        self.try_add(rhs).expect("alphabet mismatch in +")
    }
}

impl Sub for NcPolynomial {
    type Output = NcPolynomial;
    fn sub(self, rhs: Self) -> Self {
        self.try_sub(&rhs).expect("alphabet mismatch in -")
    }
}

impl Mul for NcPolynomial {
    type Output = NcPolynomial;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("alphabet mismatch in *")
    }
}

impl Neg for &NcPolynomial {
    type Output = NcPolynomial;
    fn neg(self) -> NcPolynomial {
        NcPolynomial {
            alphabet: self.alphabet,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Neg for NcPolynomial {
    type Output = NcPolynomial;
    fn neg(self) -> NcPolynomial {
        -&self
    }
}

impl fmt::Display for NcPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::write_poly(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cd(s: &str) -> NcPolynomial {
        NcPolynomial::parse(s, Alphabet::Cd).unwrap()
    }

    fn ab(s: &str) -> NcPolynomial {
        NcPolynomial::parse(s, Alphabet::Ab).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!((cd("c^2") + cd("2d")).to_string(), "c^2 + 2d");
        assert!((cd("cd") + cd("-cd")).is_zero());
        assert_eq!((ab("a+b") + ab("a-b")).to_string(), "2a");
    }

    #[test]
    fn add_rejects_mixed_alphabets() {
        assert!(matches!(
            cd("c").try_add(&ab("a")),
            Err(PolyError::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn right_multiplication_examples() {
        let p = cd("c^2 + 2d").multiply_right_letter(Letter::C).unwrap();
        assert_eq!(p.to_string(), "c^3 + 2dc");
        let one = NcPolynomial::one(Alphabet::Cd);
        assert_eq!(one.multiply_right_letter(Letter::D).unwrap(), d());
        assert_eq!(
            cd("cd").multiply_right_letter(Letter::C).unwrap(),
            cd("cdc")
        );
        assert!(cd("c").multiply_right_letter(Letter::A).is_err());
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(c().expand_cd_to_ab().unwrap(), ab("a+b"));
        assert_eq!(d().expand_cd_to_ab().unwrap(), ab("ab+ba"));
        // (a+b)(a+b) expanded by hand
        assert_eq!(cd("c^2").expand_cd_to_ab().unwrap(), ab("aa+ab+ba+bb"));
    }

    #[test]
    fn extraction_examples() {
        assert_eq!(ab("a+b").ab_to_cd().unwrap(), c());
        assert_eq!(ab("aa+3ab+3ba+bb").ab_to_cd().unwrap(), cd("c^2+2d"));
        assert!(matches!(ab("a").ab_to_cd(), Err(PolyError::NotInImage(_))));
        assert!(matches!(
            ab("a+ab").ab_to_cd(),
            Err(PolyError::InhomogeneousInput(..))
        ));
    }

    #[test]
    fn a_minus_b_examples() {
        assert_eq!(ab("a+2b").substitute_a_minus_b().unwrap(), ab("a+b"));
        assert_eq!(ab("b").substitute_a_minus_b().unwrap(), ab("b"));
        assert_eq!(ab("aa").substitute_a_minus_b().unwrap(), ab("aa-ab-ba+bb"));
    }

    #[test]
    fn degree_zero_unit() {
        let one = NcPolynomial::one(Alphabet::Ab);
        assert_eq!(one.ab_to_cd().unwrap(), NcPolynomial::one(Alphabet::Cd));
    }
}
