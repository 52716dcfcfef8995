//! Reduced words over one edge class.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{EdgeClass, OrientedEdge, SquareComplexPresentation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("letter {position} is {found}, expected {expected}")]
    MixedClass {
        position: usize,
        expected: EdgeClass,
        found: EdgeClass,
    },
    #[error("word is not reduced at position {position}")]
    NotReduced { position: usize },
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("periodic word must be non-empty")]
    Empty,
    #[error("word is not cyclically reduced")]
    NotCyclicallyReduced,
    #[error("word is a proper power ({exponent} copies of a shorter word)")]
    ProperPower { exponent: usize },
}

/// A reduced word whose letters all belong to one edge class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    class: EdgeClass,
    letters: Vec<OrientedEdge>,
}

impl Word {
    pub fn empty(class: EdgeClass) -> Self {
        Self { class, letters: Vec::new() }
    }

    pub fn new(class: EdgeClass, letters: Vec<OrientedEdge>) -> Result<Self, WordError> {
        for (i, l) in letters.iter().enumerate() {
            if l.class != class {
                return Err(WordError::MixedClass { position: i, expected: class, found: l.class });
            }
        }
        if let Some(i) = letters.windows(2).position(|w| w[1] == w[0].inverse()) {
            return Err(WordError::NotReduced { position: i + 1 });
        }
        Ok(Self { class, letters })
    }

    pub(crate) fn from_germs(class: EdgeClass, germs: impl IntoIterator<Item = usize>) -> Self {
        Self {
            class,
            letters: germs.into_iter().map(|g| OrientedEdge::from_germ(class, g)).collect(),
        }
    }

    /// Parses whitespace- or comma-separated letters such as `a -b c`.
    /// `(a b)^3` repeats the parenthesized word.
    pub fn parse(p: &SquareComplexPresentation, class: EdgeClass, text: &str) -> Result<Self, WordError> {
        let text = text.trim();
        let (body, power) = match text.strip_prefix('(').and_then(|t| t.rsplit_once(")^")) {
            Some((body, k)) => {
                let k: usize = k.trim().parse().map_err(|_| WordError::UnknownLetter(text.to_string()))?;
                (body, k)
            }
            None => (text, 1),
        };
        let letters = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| p.parse_letter(t).ok_or_else(|| WordError::UnknownLetter(t.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(class, letters)?.pow(power))
    }

    pub fn class(&self) -> EdgeClass {
        self.class
    }

    pub fn letters(&self) -> &[OrientedEdge] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn germs(&self) -> impl Iterator<Item = usize> + '_ {
        self.letters.iter().map(|l| l.germ())
    }

    pub fn inverse(&self) -> Self {
        Self {
            class: self.class,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Concatenation; fails if the junction cancels.
    pub fn concat(&self, other: &Word) -> Result<Self, WordError> {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word::new(self.class, letters)
    }

    /// `k` copies; only reduced when the word is cyclically reduced or `k <= 1`.
    pub fn pow(&self, k: usize) -> Self {
        let mut letters = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            letters.extend_from_slice(&self.letters);
        }
        Self { class: self.class, letters }
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(f), Some(l)) => self.len() == 1 || *l != f.inverse(),
            _ => true,
        }
    }

    pub fn display<'a>(&'a self, p: &'a SquareComplexPresentation) -> WordDisplay<'a> {
        WordDisplay { word: self, p }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    p: &'a SquareComplexPresentation,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.word.letters.iter().map(|l| self.p.letter_name(*l)).collect();
        f.write_str(&names.join(" "))
    }
}

/// The period of a bi-infinite word: cyclically reduced and primitive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PeriodicWord {
    period: Word,
}

impl PeriodicWord {
    pub fn new(period: Word) -> Result<Self, WordError> {
        if period.is_empty() {
            return Err(WordError::Empty);
        }
        if !period.is_cyclically_reduced() {
            return Err(WordError::NotCyclicallyReduced);
        }
        let n = period.len();
        let smallest = (1..=n)
            .find(|&d| n.is_multiple_of(d) && (0..n).all(|i| period.letters[i] == period.letters[i % d]))
            .unwrap_or(n);
        if smallest < n {
            return Err(WordError::ProperPower { exponent: n / smallest });
        }
        Ok(Self { period })
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    pub fn len(&self) -> usize {
        self.period.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn class(&self) -> EdgeClass {
        self.period.class
    }

    pub fn pow(&self, k: usize) -> Word {
        self.period.pow(k)
    }

    /// Letter `i` of the right-infinite word `period^∞`.
    pub fn letter(&self, i: usize) -> OrientedEdge {
        self.period.letters[i % self.period.len()]
    }

    pub fn inverse(&self) -> Self {
        Self { period: self.period.inverse() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(g: usize) -> OrientedEdge {
        OrientedEdge::from_germ(EdgeClass::Horizontal, g)
    }

    #[test]
    fn reducedness() {
        assert!(Word::new(EdgeClass::Horizontal, vec![h(0), h(1)]).is_err());
        assert!(Word::new(EdgeClass::Horizontal, vec![h(0), h(2), h(1)]).is_ok());
        let mixed = Word::new(EdgeClass::Horizontal, vec![OrientedEdge::from_germ(EdgeClass::Vertical, 0)]);
        assert!(matches!(mixed, Err(WordError::MixedClass { .. })));
    }

    #[test]
    fn periodic_word_rules() {
        let w = |g: &[usize]| Word::new(EdgeClass::Horizontal, g.iter().map(|&x| h(x)).collect()).unwrap();
        assert_eq!(PeriodicWord::new(w(&[0, 0])).unwrap_err(), WordError::ProperPower { exponent: 2 });
        assert_eq!(PeriodicWord::new(w(&[0, 2, 0, 2, 0, 2])).unwrap_err(), WordError::ProperPower { exponent: 3 });
        assert_eq!(PeriodicWord::new(w(&[0, 2, 1])).unwrap_err(), WordError::NotCyclicallyReduced);
        assert_eq!(PeriodicWord::new(w(&[])).unwrap_err(), WordError::Empty);
        assert!(PeriodicWord::new(w(&[0])).is_ok());
        assert!(PeriodicWord::new(w(&[0, 0, 2])).is_ok());
        let p = PeriodicWord::new(w(&[0, 2])).unwrap();
        assert_eq!(p.letter(5), h(2));
        assert_eq!(p.inverse().period().letters(), &[h(3), h(1)]);
    }

    #[test]
    fn parse_with_power() {
        let p = crate::complex::parse_complex("hedges: a b\nvedges: x\n").unwrap();
        let w = Word::parse(&p, EdgeClass::Horizontal, "(a -b)^3").unwrap();
        assert_eq!(w.len(), 6);
        assert_eq!(w.display(&p).to_string(), "a -b a -b a -b");
        assert!(Word::parse(&p, EdgeClass::Horizontal, "a x").is_err());
        assert!(Word::parse(&p, EdgeClass::Horizontal, "a q").is_err());
    }
}
