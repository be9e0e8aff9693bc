use std::fmt;
use std::str::FromStr;

use crate::dynamics::induced::InducedMap;
use crate::dynamics::Masa;
use crate::element::AlgebraElement;
use crate::endomorphism::EndomorphismSpec;
use crate::error::{Error, Result};
use crate::text::parse_element;
use crate::word::Word;

/// Closed-form maps of the Cantor set `{1, 2}^ℕ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OracleId {
    Id,
    Shift,
    Flip,
    FirstLetterFlip,
    Psi12,
    Psi1324,
    T13,
    T1432,
    T123,
    T142,
    TEF,
    Case2A,
    Case2B,
}

impl OracleId {
    pub const ALL: [OracleId; 13] = [
        OracleId::Id,
        OracleId::Shift,
        OracleId::Flip,
        OracleId::FirstLetterFlip,
        OracleId::Psi12,
        OracleId::Psi1324,
        OracleId::T13,
        OracleId::T1432,
        OracleId::T123,
        OracleId::T142,
        OracleId::TEF,
        OracleId::Case2A,
        OracleId::Case2B,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OracleId::Id => "id",
            OracleId::Shift => "shift",
            OracleId::Flip => "flip",
            OracleId::FirstLetterFlip => "first-letter-flip",
            OracleId::Psi12 => "psi12",
            OracleId::Psi1324 => "psi1324",
            OracleId::T13 => "t13",
            OracleId::T1432 => "t1432",
            OracleId::T123 => "t123",
            OracleId::T142 => "t142",
            OracleId::TEF => "tEF",
            OracleId::Case2A => "case2A",
            OracleId::Case2B => "case2B",
        }
    }

    /// Letters of input needed per letter of output, `1` or `2`.
    pub fn window(self) -> usize {
        match self {
            OracleId::Id
            | OracleId::Flip
            | OracleId::FirstLetterFlip
            | OracleId::Psi12
            | OracleId::Psi1324 => 1,
            _ => 2,
        }
    }

    /// Letter `k` (1-based) of `T(w)`.
    fn letter(self, w: &[u8], k: usize) -> u8 {
        let pick = |b: bool| if b { 1 } else { 2 };
        let wk = w[k - 1];
        let next = || w[k];
        let ones = || w[..k].iter().filter(|&&l| l == 1).count();
        let segments = || 1 + w[..=k].windows(2).filter(|p| p[0] != p[1]).count();
        match self {
            OracleId::Id => wk,
            OracleId::Shift => next(),
            OracleId::Flip => 3 - wk,
            OracleId::FirstLetterFlip => {
                if k == 1 {
                    3 - wk
                } else {
                    wk
                }
            }
            OracleId::Psi12 => pick(ones() % 2 == 1),
            OracleId::Psi1324 => pick(ones() % 2 == 0),
            OracleId::T13 => pick(wk != next()),
            OracleId::T1432 => pick(if k == 1 { wk == next() } else { wk != next() }),
            OracleId::T123 => pick(segments() % 2 == 0),
            OracleId::T142 => pick((k + segments()).is_multiple_of(2)),
            OracleId::TEF => pick(wk == next()),
            OracleId::Case2A => pick(next() == 2),
            OracleId::Case2B => pick(next() == 1),
        }
    }

    /// The oracle as an induced map of the given depth.
    pub fn induced_map(self, depth: usize) -> InducedMap {
        let k = self.window();
        let letters = (1..=depth)
            .map(|q| {
                Word::all(2, q + k - 1)
                    .map(|x| self.letter(x.letters(), q))
                    .collect()
            })
            .collect();
        let masa = if self == OracleId::TEF { Masa::EF } else { Masa::Standard };
        InducedMap::from_letters(2, k, masa, letters)
    }
}

impl fmt::Display for OracleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OracleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OracleId::ALL
            .into_iter()
            .find(|o| o.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Invalid(format!("unknown oracle '{s}'")))
    }
}

/// `T(w)`, of length `|w| - window + 1`.
pub fn oracle_map(o: OracleId, w: &Word) -> Result<Word> {
    if w.len() < o.window() || w.letters().iter().any(|&l| l == 0 || l > 2) {
        return Err(Error::Invalid(format!(
            "oracle {o} needs a word over {{1,2}} of length >= {}",
            o.window()
        )));
    }
    let out = w.len() + 1 - o.window();
    Ok(Word::from_letters(
        (1..=out).map(|k| o.letter(w.letters(), k)).collect(),
    ))
}

impl InducedMap {
    /// Agreement of the block tables with `o` at every depth `1..=depth`.
    pub fn matches_oracle(&self, o: OracleId, depth: usize) -> bool {
        if self.n() != 2 || o.window() > self.rank() || depth > self.depth() {
            return false;
        }
        (1..=depth).all(|q| {
            let len = self.window(q);
            let table = self.raw_table(q);
            Word::all(2, len).enumerate().all(|(code, x)| {
                let img = oracle_map(o, &x.prefix(q + o.window() - 1)).expect("window fits");
                table[code] as u64 == img.encode(2)
            })
        })
    }
}

/// Agreement of the standard-masa map of `e` with `o` up to `depth`.
pub fn oracle_equivalence(e: &EndomorphismSpec, o: OracleId, depth: usize) -> Result<bool> {
    let map = InducedMap::standard(e, depth, u64::MAX)?;
    Ok(map.matches_oracle(o, depth))
}

/// The oracle fixed by the value `ρ(s_1 s_1^*)`, when it is one of the two
/// projections of the two-case lemma.
pub fn select_case2(e: &EndomorphismSpec) -> Option<OracleId> {
    if e.n() != 2 {
        return None;
    }
    let img = e.apply(&AlgebraElement::monomial(2, Word::from_letters(vec![1]), Word::from_letters(vec![1])));
    let a = parse_element("s[12] t[12] + s[22] t[22]", 2).expect("literal parses");
    let b = parse_element("s[11] t[11] + s[21] t[21]", 2).expect("literal parses");
    if img.equals(&a).unwrap_or(false) {
        Some(OracleId::Case2A)
    } else if img.equals(&b).unwrap_or(false) {
        Some(OracleId::Case2B)
    } else {
        None
    }
}

/// The (permutation, oracle) pairings of the closed-form maps, 17 in all.
/// Rows of the two-case lemma get their oracle from [`select_case2`].
pub fn oracle_pairings() -> Vec<(&'static str, Option<OracleId>)> {
    let mut out = vec![
        ("id", Some(OracleId::Id)),
        ("(2 3)", Some(OracleId::Shift)),
        ("(1 2)", Some(OracleId::Psi12)),
        ("(1 3 2 4)", Some(OracleId::Psi1324)),
        ("(1 3)", Some(OracleId::T13)),
        ("(1 4 3 2)", Some(OracleId::T1432)),
        ("(1 2 3)", Some(OracleId::T123)),
        ("(1 4 2)", Some(OracleId::T142)),
        ("(1 3)(2 4)", Some(OracleId::Flip)),
        ("(1 4)(2 3)", Some(OracleId::FirstLetterFlip)),
    ];
    for c in ["(1 4)", "(1 3 2)", "(1 2 4)", "(1 4 3)", "(2 3 4)", "(1 2 4 3)", "(1 3 4 2)"] {
        out.push((c, None));
    }
    out
}
