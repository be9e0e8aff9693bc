//! Multi-indices: finite words over the alphabet `{1..N}`.

use std::fmt;

use crate::error::{Error, Result};

/// A finite word over `{1..N}`. The empty word stands for `s_∅ = 1`.
///
/// Words carry no alphabet size; the owning element or table validates
/// letters against its own `N`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word, checking every letter lies in `1..=n`.
    pub fn new(letters: Vec<u8>, n: usize) -> Result<Self> {
        for &l in &letters {
            if l == 0 || l as usize > n {
                return Err(Error::LetterOutOfRange {
                    letter: l as usize,
                    n,
                });
            }
        }
        Ok(Word(letters))
    }

    /// Builds a word without validation. Callers guarantee the letters.
    pub fn from_letters(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, letter: u8) {
        self.0.push(letter);
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    /// `self = prefix ++ rest`; returns `rest`.
    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.0.strip_prefix(prefix.0.as_slice()).map(|r| Word(r.to_vec()))
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn max_letter(&self) -> u8 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// All `n^len` words of the given length, in lexicographic order.
    pub fn all(n: usize, len: usize) -> impl Iterator<Item = Word> {
        let total = (n as u64).pow(len as u32);
        (0..total).map(move |c| Word::decode(c, n, len))
    }

    /// Base-`n` code with the first letter most significant.
    pub fn encode(&self, n: usize) -> u64 {
        self.0
            .iter()
            .fold(0u64, |acc, &l| acc * n as u64 + (l as u64 - 1))
    }

    pub fn decode(mut code: u64, n: usize, len: usize) -> Word {
        let mut v = vec![0u8; len];
        for slot in v.iter_mut().rev() {
            *slot = (code % n as u64) as u8 + 1;
            code /= n as u64;
        }
        Word(v)
    }
}

impl From<&[u8]> for Word {
    fn from(s: &[u8]) -> Self {
        Word(s.to_vec())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w\"{self}\"")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Shorthand for tests and examples: `w("121")`.
pub fn w(s: &str) -> Word {
    Word(s.bytes().map(|b| b - b'0').collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_decode_lex_order() {
        let all: Vec<Word> = Word::all(2, 3).collect();
        assert_eq!(all.len(), 8);
        assert_eq!(all[0], w("111"));
        assert_eq!(all[5], w("212"));
        for (i, word) in all.iter().enumerate() {
            assert_eq!(word.encode(2), i as u64);
        }
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(sorted, all);
    }

    #[test]
    fn validation() {
        assert!(Word::new(vec![1, 3], 2).is_err());
        assert!(Word::new(vec![0], 2).is_err());
        assert_eq!(Word::new(vec![], 2).unwrap(), Word::empty());
    }

    #[test]
    fn prefix_ops() {
        let a = w("1221");
        assert!(a.starts_with(&w("12")));
        assert_eq!(a.strip_prefix(&w("12")), Some(w("21")));
        assert_eq!(a.strip_prefix(&w("2")), None);
        assert_eq!(w("12").concat(&w("3")), w("123"));
    }
}
