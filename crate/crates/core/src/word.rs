//! Letters and freely reduced words over a finite alphabet.
//!
//! Generators are numbered from 1. A [`Word`] is always freely reduced: every
//! constructor cancels adjacent inverse pairs, so two words are equal as
//! group elements of the free group exactly when they are equal as values.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// A signed generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    generator: u32,
    positive: bool,
}

impl Letter {
    pub fn new(generator: u32, positive: bool) -> Self {
        assert!(generator >= 1, "generators are numbered from 1");
        Letter {
            generator,
            positive,
        }
    }

    pub fn pos(generator: u32) -> Self {
        Letter::new(generator, true)
    }

    pub fn neg(generator: u32) -> Self {
        Letter::new(generator, false)
    }

    pub fn generator(self) -> u32 {
        self.generator
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    /// +1 or -1.
    pub fn sign(self) -> i64 {
        if self.positive {
            1
        } else {
            -1
        }
    }

    pub fn inverse(self) -> Self {
        Letter {
            generator: self.generator,
            positive: !self.positive,
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.positive != other.positive
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// Builds a word from arbitrary letters, freely reducing them.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            match out.last() {
                Some(&last) if last.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word { letters: out }
    }

    /// `generator^exponent`.
    pub fn power_of(generator: u32, exponent: i64) -> Self {
        let letter = Letter::new(generator, exponent >= 0);
        Word {
            letters: vec![letter; exponent.unsigned_abs() as usize],
        }
    }

    pub fn letter(l: Letter) -> Self {
        Word { letters: vec![l] }
    }

    /// Builds a word from signed generator indices: `3` is g3, `-3` is g3⁻¹.
    pub fn from_signed(indices: &[i32]) -> Self {
        Word::from_letters(indices.iter().map(|&i| {
            assert!(i != 0, "0 is not a signed generator index");
            Letter::new(i.unsigned_abs(), i > 0)
        }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Self {
        Word::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn pow(&self, exponent: i64) -> Self {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut out = Word::empty();
        for _ in 0..exponent.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Word) -> Self {
        g.inverse().concat(self).concat(g)
    }

    pub fn max_generator(&self) -> u32 {
        self.letters.iter().map(|l| l.generator).max().unwrap_or(0)
    }

    pub fn check_rank(&self, rank: u32) -> Result<()> {
        match self.letters.iter().find(|l| l.generator > rank) {
            Some(l) => Err(Error::GeneratorOutOfRange {
                generator: l.generator,
                rank,
            }),
            None => Ok(()),
        }
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(&a), Some(&b)) if self.letters.len() > 1 => !a.cancels(b),
            _ => true,
        }
    }

    pub fn cyclically_reduced(&self) -> Self {
        let mut start = 0;
        let mut end = self.letters.len();
        while end - start > 1 && self.letters[start].cancels(self.letters[end - 1]) {
            start += 1;
            end -= 1;
        }
        Word {
            letters: self.letters[start..end].to_vec(),
        }
    }

    /// Exponent sum of each generator 1..=rank.
    pub fn exponent_sums(&self, rank: u32) -> Vec<i64> {
        let mut sums = vec![0; rank as usize];
        for l in &self.letters {
            sums[l.generator as usize - 1] += l.sign();
        }
        sums
    }

    /// Replaces generator `i` by `images[i - 1]`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Word::empty();
        for l in &self.letters {
            let image = &images[l.generator as usize - 1];
            out = if l.positive {
                out.concat(image)
            } else {
                out.concat(&image.inverse())
            };
        }
        out
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

impl Mul for Word {
    type Output = Word;

    fn mul(self, rhs: Word) -> Word {
        self.concat(&rhs)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word::from_letters(iter)
    }
}

/// Generator names used to print and parse words such as `x^2.y^-1.x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Alphabet {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
        }
    }

    /// `x, y` for rank ≤ 2, otherwise `g1 .. gk`.
    pub fn default_for_rank(rank: u32) -> Self {
        match rank {
            1 => Alphabet::new(&["x"]),
            2 => Alphabet::new(&["x", "y"]),
            _ => Alphabet {
                names: (1..=rank).map(|i| format!("g{i}")).collect(),
            },
        }
    }

    pub fn rank(&self) -> u32 {
        self.names.len() as u32
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, generator: u32) -> &str {
        &self.names[generator as usize - 1]
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| i as u32 + 1)
    }

    /// Syllable form with `.` separators; the empty word prints as `1`.
    pub fn format(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let letters = w.letters();
        let mut i = 0;
        while i < letters.len() {
            let l = letters[i];
            let mut j = i;
            while j < letters.len() && letters[j] == l {
                j += 1;
            }
            let exp = (j - i) as i64 * l.sign();
            let name = self.name(l.generator());
            if exp == 1 {
                parts.push(name.to_string());
            } else {
                parts.push(format!("{name}^{exp}"));
            }
            i = j;
        }
        parts.join(".")
    }

    pub fn parse(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::empty());
        }
        let mut out = Word::empty();
        for syllable in s.split('.') {
            let (name, exp) = match syllable.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e.trim().parse().map_err(|_| Error::Parse {
                        line: 0,
                        message: format!("bad exponent in syllable `{syllable}`"),
                    })?;
                    (n.trim(), e)
                }
                None => (syllable.trim(), 1),
            };
            let g = self.index_of(name).ok_or_else(|| Error::Parse {
                line: 0,
                message: format!("unknown generator `{name}`"),
            })?;
            out = out.concat(&Word::power_of(g, exp));
        }
        Ok(out)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| {
                if l.positive {
                    format!("g{}", l.generator)
                } else {
                    format!("g{}^-1", l.generator)
                }
            })
            .collect();
        write!(f, "{}", parts.join("."))
    }
}
