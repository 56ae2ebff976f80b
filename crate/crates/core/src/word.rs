//! Freely reduced words in signed generator indices.

use std::cmp::Ordering;
use std::fmt;

/// A letter: `+k` is generator `k − 1`, `−k` its inverse. Never zero.
pub type Letter = i32;

pub fn letter(generator: usize, inverse: bool) -> Letter {
    let k = generator as Letter + 1;
    if inverse {
        -k
    } else {
        k
    }
}

pub fn generator_of(l: Letter) -> usize {
    (l.unsigned_abs() - 1) as usize
}

/// Sort key: `g₀ < g₀⁻¹ < g₁ < g₁⁻¹ < …`.
fn letter_key(l: Letter) -> u32 {
    2 * (l.unsigned_abs() - 1) + u32::from(l < 0)
}

/// A freely reduced word. Ordered shortlex: by length, then letter by letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from letters, freely reducing it.
    ///
    /// # Panics
    /// On a zero letter.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            assert!(l != 0, "zero is not a letter");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn single(l: Letter) -> Self {
        Word::new([l])
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

    pub fn concat(&self, other: &Word) -> Word {
        Word::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// No cancellation between the last and the first letter.
    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(&f), Some(&l)) => self.0.len() == 1 || f != -l,
            _ => true,
        }
    }

    /// Applies a letter substitution `generator i ↦ images[i]`, inverses
    /// mapping to the inverse image.
    pub fn substitute(&self, images: &[Letter]) -> Word {
        Word::new(self.0.iter().map(|&l| {
            let img = images[generator_of(l)];
            if l < 0 {
                -img
            } else {
                img
            }
        }))
    }

    /// Renders with generator names, `e` for the identity.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| {
            self.0
                .iter()
                .map(|&l| letter_key(l))
                .cmp(other.0.iter().map(|&l| letter_key(l)))
        })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        for (i, &l) in self.word.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let g = generator_of(l);
            match self.names.get(g) {
                Some(name) => write!(f, "{name}")?,
                None => write!(f, "g{}", g + 1)?,
            }
            if l < 0 {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}
