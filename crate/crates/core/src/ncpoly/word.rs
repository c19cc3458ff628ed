use std::cmp::Ordering;
use std::fmt;

/// The two two-letter alphabets a polynomial can live in.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Alphabet {
    Ab,
    Cd,
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alphabet::Ab => f.write_str("ab"),
            Alphabet::Cd => f.write_str("cd"),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    C,
    D,
}

impl Letter {
    /// `d` has degree two, every other letter degree one.
    pub fn degree(self) -> usize {
        match self {
            Letter::D => 2,
            _ => 1,
        }
    }

    pub fn alphabet(self) -> Alphabet {
        match self {
            Letter::A | Letter::B => Alphabet::Ab,
            Letter::C | Letter::D => Alphabet::Cd,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
            Letter::C => 'c',
            Letter::D => 'd',
        }
    }

    pub fn from_char(ch: char) -> Option<Letter> {
        match ch {
            'a' => Some(Letter::A),
            'b' => Some(Letter::B),
            'c' => Some(Letter::C),
            'd' => Some(Letter::D),
            _ => None,
        }
    }
}

/// A monomial in non-commuting letters.
///
/// Words compare by degree first and then lexicographically letter by
/// letter (`a < b`, `c < d`), which is the canonical order used for
/// printing and for indexing linear systems.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|l| l.degree()).sum()
    }

    /// `None` for the empty word, which belongs to both alphabets.
    pub fn alphabet(&self) -> Option<Alphabet> {
        self.0.first().map(|l| l.alphabet())
    }

    pub fn is_single_alphabet(&self) -> bool {
        match self.alphabet() {
            None => true,
            Some(a) => self.0.iter().all(|l| l.alphabet() == a),
        }
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Parses a plain letter string such as `"cdc"`; exponents are not
    /// accepted here (see the polynomial parser for that).
    pub fn parse(s: &str) -> Option<Word> {
        s.chars()
            .map(Letter::from_char)
            .collect::<Option<Vec<_>>>()
            .map(Word)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    /// Runs of a repeated letter are exponent-compressed: `ccdc` prints as `c^2dc`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i + 1;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            let run = j - i;
            if run == 1 {
                write!(f, "{}", l.as_char())?;
            } else {
                write!(f, "{}^{}", l.as_char(), run)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// All cd-words of the given degree, in canonical order.
///
/// There are `F_{degree+1}` of them (Fibonacci with `F_1 = F_2 = 1`).
pub fn cd_words(degree: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(remaining: usize, cur: &mut Vec<Letter>, out: &mut Vec<Word>) {
        if remaining == 0 {
            out.push(Word(cur.clone()));
            return;
        }
        cur.push(Letter::C);
        rec(remaining - 1, cur, out);
        cur.pop();
        if remaining >= 2 {
            cur.push(Letter::D);
            rec(remaining - 2, cur, out);
            cur.pop();
        }
    }
    rec(degree, &mut cur, &mut out);
    out.sort();
    out
}

/// All `2^degree` ab-words of the given degree, in canonical order.
pub fn ab_words(degree: usize) -> Vec<Word> {
    (0..1usize << degree)
        .map(|bits| {
            Word(
                (0..degree)
                    .map(|i| {
                        if bits >> (degree - 1 - i) & 1 == 1 {
                            Letter::B
                        } else {
                            Letter::A
                        }
                    })
                    .collect(),
            )
        })
        .collect()
}

/// Index of an ab-word among [`ab_words`] of its degree (`b` reads as bit 1).
pub fn ab_word_index(w: &Word) -> usize {
    w.0.iter()
        .fold(0, |acc, l| (acc << 1) | usize::from(*l == Letter::B))
}
