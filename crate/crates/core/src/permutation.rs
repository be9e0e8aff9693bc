//! Permutations of the words of a fixed length `k`.
//!
//! Words of length `k` are identified with `1..=N^k` in lexicographic order,
//! so for `N = k = 2` the labels are `11 → 1, 12 → 2, 21 → 3, 22 → 4`.

use std::fmt;

use crate::error::{Error, Result};
use crate::word::Word;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    n: usize,
    k: usize,
    /// `images[code(J)] = code(σ(J))`, codes are 0-based lexicographic ranks.
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize, k: usize) -> Self {
        let size = n.pow(k as u32);
        Permutation {
            n,
            k,
            images: (0..size as u32).collect(),
        }
    }

    /// From 0-based images of the lexicographically ordered words.
    pub fn from_images(n: usize, k: usize, images: Vec<u32>) -> Result<Self> {
        if n < 2 || k == 0 {
            return Err(Error::BadPermutation(format!("need N >= 2 and k >= 1, got N={n}, k={k}")));
        }
        let size = n.pow(k as u32);
        if images.len() != size {
            return Err(Error::BadPermutation(format!(
                "expected {size} images, got {}",
                images.len()
            )));
        }
        let mut seen = vec![false; size];
        for &i in &images {
            if i as usize >= size || std::mem::replace(&mut seen[i as usize], true) {
                return Err(Error::BadPermutation(format!("not a bijection on 1..={size}")));
            }
        }
        Ok(Permutation { n, k, images })
    }

    /// From disjoint cycles over the 1-based labels `1..=N^k`.
    pub fn from_cycles(n: usize, k: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let size = n.pow(k as u32);
        let mut images: Vec<u32> = (0..size as u32).collect();
        let mut touched = vec![false; size];
        for cycle in cycles {
            for (idx, &a) in cycle.iter().enumerate() {
                if a == 0 || a > size {
                    return Err(Error::BadPermutation(format!("label {a} outside 1..={size}")));
                }
                if std::mem::replace(&mut touched[a - 1], true) {
                    return Err(Error::BadPermutation(format!("label {a} repeated")));
                }
                let b = cycle[(idx + 1) % cycle.len()];
                if b == 0 || b > size {
                    return Err(Error::BadPermutation(format!("label {b} outside 1..={size}")));
                }
                images[a - 1] = (b - 1) as u32;
            }
        }
        Self::from_images(n, k, images)
    }

    /// The shift permutation `ij ↦ ji` on words of length two.
    pub fn swap(n: usize) -> Self {
        let images = (0..n * n)
            .map(|c| ((c % n) * n + c / n) as u32)
            .collect();
        Permutation { n, k: 2, images }
    }

    /// Parses `"(1 2)(3 4)"`, `"()"`, `"perm-word 2134"` or a named shorthand
    /// (`id`, `shift`, `flip`).
    pub fn parse(text: &str, n: usize, k: usize) -> Result<Self> {
        let t = text.trim();
        match t {
            "id" => return Ok(Self::identity(n, k)),
            "shift" => {
                if k != 2 {
                    return Err(Error::BadPermutation("'shift' needs rank 2".into()));
                }
                return Ok(Self::swap(n));
            }
            "flip" => {
                if n != 2 || k != 2 {
                    return Err(Error::BadPermutation("'flip' needs N = 2, rank 2".into()));
                }
                return Self::from_cycles(2, 2, &[vec![1, 3], vec![2, 4]]);
            }
            _ => {}
        }
        if let Some(rest) = t.strip_prefix("perm-word") {
            return Self::parse_word(rest, n, k);
        }
        if t.starts_with('(') {
            return Self::parse_cycles(t, n, k);
        }
        Err(Error::BadPermutation(format!("cannot parse '{t}'")))
    }

    /// One-line notation: images of `1..=N^k` in order. Digits may be run
    /// together when `N^k <= 9`; otherwise separate them by spaces or commas.
    pub fn parse_word(text: &str, n: usize, k: usize) -> Result<Self> {
        let size = n.pow(k as u32);
        let t = text.trim();
        let labels: Vec<usize> = if t.contains([' ', ',']) {
            t.split([' ', ','])
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| Error::BadPermutation(format!("bad label '{s}'"))))
                .collect::<Result<_>>()?
        } else {
            t.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::BadPermutation(format!("bad digit '{c}'")))
                })
                .collect::<Result<_>>()?
        };
        if labels.iter().any(|&l| l == 0 || l > size) {
            return Err(Error::BadPermutation(format!("labels must lie in 1..={size}")));
        }
        Self::from_images(n, k, labels.iter().map(|&l| (l - 1) as u32).collect())
    }

    fn parse_cycles(text: &str, n: usize, k: usize) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(Error::BadPermutation(format!("expected '(' in '{text}'")));
            };
            let Some(end) = body.find(')') else {
                return Err(Error::BadPermutation(format!("unclosed cycle in '{text}'")));
            };
            let inner = &body[..end];
            let labels: Vec<usize> = if inner.contains([' ', ',']) {
                inner
                    .split([' ', ','])
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse().map_err(|_| Error::BadPermutation(format!("bad label '{s}'"))))
                    .collect::<Result<_>>()?
            } else {
                // "(12)" style: single-digit labels run together.
                inner
                    .chars()
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as usize)
                            .ok_or_else(|| Error::BadPermutation(format!("bad label '{c}'")))
                    })
                    .collect::<Result<_>>()?
            };
            if !labels.is_empty() {
                cycles.push(labels);
            }
            rest = body[end + 1..].trim_start();
        }
        Self::from_cycles(n, k, &cycles)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn apply_code(&self, code: u32) -> u32 {
        self.images[code as usize]
    }

    pub fn apply_word(&self, word: &Word) -> Word {
        debug_assert_eq!(word.len(), self.k);
        Word::decode(self.images[word.encode(self.n) as usize] as u64, self.n, self.k)
    }

    /// Applies `σ` in place to the window `letters[pos..pos + k]`.
    pub(crate) fn apply_window(&self, letters: &mut [u8], pos: usize) {
        let n = self.n as u32;
        let window = &mut letters[pos..pos + self.k];
        let code = window.iter().fold(0u32, |acc, &l| acc * n + (l as u32 - 1));
        let mut img = self.images[code as usize];
        for slot in window.iter_mut().rev() {
            *slot = (img % n) as u8 + 1;
            img /= n;
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation {
            n: self.n,
            k: self.k,
            images: inv,
        }
    }

    /// Conjugation by the global letter reversal `i ↦ N + 1 - i`.
    pub fn letter_reversed(&self) -> Self {
        let size = self.images.len() as u32;
        let rev = |c: u32| size - 1 - c;
        let images = (0..size).map(|c| rev(self.images[rev(c) as usize])).collect();
        Permutation {
            n: self.n,
            k: self.k,
            images,
        }
    }

    /// Disjoint-cycle labels (1-based), fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut c = start;
            while !seen[c] {
                seen[c] = true;
                cycle.push(c + 1);
                c = self.images[c] as usize;
            }
            out.push(cycle);
        }
        out
    }
}

/// Cycle notation, e.g. `(1 2)(3 4)`; the identity prints as `id`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "id");
        }
        for c in cycles {
            let labels: Vec<String> = c.iter().map(|l| l.to_string()).collect();
            write!(f, "({})", labels.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    #[test]
    fn cycle_and_word_notation_agree() {
        let a = Permutation::parse("(1 2)(3 4)", 2, 2).unwrap();
        let b = Permutation::parse("perm-word 2143", 2, 2).unwrap();
        let c = Permutation::parse("(12)(34)", 2, 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.to_string(), "(1 2)(3 4)");
    }

    #[test]
    fn three_cycle_direction() {
        // (1 2 3): 11 -> 12 -> 21 -> 11
        let p = Permutation::parse("(1 2 3)", 2, 2).unwrap();
        assert_eq!(p.apply_word(&w("11")), w("12"));
        assert_eq!(p.apply_word(&w("12")), w("21"));
        assert_eq!(p.apply_word(&w("21")), w("11"));
        assert_eq!(p.apply_word(&w("22")), w("22"));
        assert!(p.inverse().to_string() == "(1 3 2)");
    }

    #[test]
    fn named_shorthands() {
        assert_eq!(Permutation::parse("shift", 2, 2).unwrap().to_string(), "(2 3)");
        assert_eq!(Permutation::parse("flip", 2, 2).unwrap().to_string(), "(1 3)(2 4)");
        assert!(Permutation::parse("id", 2, 3).unwrap().is_identity());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::parse("perm-word 1134", 2, 2).is_err());
        assert!(Permutation::parse("(1 5)", 2, 2).is_err());
        assert!(Permutation::parse("(1 2)(2 3)", 2, 2).is_err());
        assert!(Permutation::parse("12", 2, 2).is_err());
    }

    #[test]
    fn letter_reversal_maps_rows() {
        // Swapping the letters 1 and 2 turns (1 2) into (3 4) and (1 3) into (2 4).
        let p = Permutation::parse("(1 2)", 2, 2).unwrap();
        assert_eq!(p.letter_reversed().to_string(), "(3 4)");
        let q = Permutation::parse("(1 3)", 2, 2).unwrap();
        assert_eq!(q.letter_reversed().to_string(), "(2 4)");
    }
}
