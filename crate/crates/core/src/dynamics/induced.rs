use num_traits::One;

use crate::dynamics::Masa;
use crate::element::AlgebraElement;
use crate::endomorphism::EndomorphismSpec;
use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::word::Word;

/// `(Tw)|_p = map[w|_window]`, stored by lexicographic codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMapTable {
    pub n: usize,
    pub p: usize,
    pub window: usize,
    pub map: Vec<u32>,
}

impl BlockMapTable {
    pub fn image(&self, w: &Word) -> Word {
        assert!(w.len() >= self.window, "word shorter than window");
        let code = w.prefix(self.window).encode(self.n);
        Word::decode(self.map[code as usize] as u64, self.n, self.p)
    }

    /// Every output word has a nonempty preimage and the map is total.
    pub fn check_partition(&self) -> Result<()> {
        let size = self.n.pow(self.p as u32);
        if self.map.len() != self.n.pow(self.window as u32) {
            return Err(Error::PartitionViolated("table is not total".into()));
        }
        let mut hit = vec![false; size];
        for &v in &self.map {
            let slot = hit
                .get_mut(v as usize)
                .ok_or_else(|| Error::PartitionViolated(format!("output code {v} out of range")))?;
            *slot = true;
        }
        match hit.iter().position(|h| !h) {
            Some(v) => Err(Error::PartitionViolated(format!(
                "no preimage for {}",
                Word::decode(v as u64, self.n, self.p)
            ))),
            None => Ok(()),
        }
    }

    /// `deeper` restricted to depth `self.p` agrees with `self`.
    pub fn prefix_consistent(&self, deeper: &BlockMapTable) -> bool {
        let drop_out = self.n.pow((deeper.p - self.p) as u32) as u32;
        let drop_in = self.n.pow((deeper.window - self.window) as u32);
        deeper
            .map
            .iter()
            .enumerate()
            .all(|(x, &v)| self.map[x / drop_in] == v / drop_out)
    }
}

/// Codes of the words `w` with `s_w s_w^*` in `a` leveled to length `m`.
/// Fails unless `a` is a 0/1 sum of such diagonal projections.
pub(crate) fn diagonal_support(a: &AlgebraElement, m: usize) -> Result<Vec<u64>> {
    let leveled = a.normalized().level_balanced(m).map_err(|_| {
        Error::MasaNotInvariant(format!("image needs words longer than {m}"))
    })?;
    let mut out = Vec::with_capacity(leveled.len());
    for (mono, c) in leveled.terms() {
        if mono.left != mono.right || mono.left.len() != m || !c.is_one() {
            return Err(Error::MasaNotInvariant(format!(
                "term {c} * s[{}] t[{}] is not a diagonal projection",
                mono.left, mono.right
            )));
        }
        out.push(mono.left.encode(a.n()));
    }
    Ok(out)
}

/// True iff `ρ(s_v s_v^*)` is a 0/1 sum of diagonal projections for every
/// `|v| <= depth`.
pub fn diagonal_invariant(e: &EndomorphismSpec, depth: usize) -> bool {
    (1..=depth).all(|len| {
        Word::all(e.n(), len).all(|v| {
            let img = e.apply(&AlgebraElement::monomial(e.n(), v.clone(), v));
            let m = img.max_right_lengths().values().copied().max().unwrap_or(0);
            diagonal_support(&img, m).is_ok()
        })
    })
}

/// The depth-`p` block map of `T`, computed one cylinder at a time from
/// the images `ρ(s_v s_v^*)`.
pub fn block_map(e: &EndomorphismSpec, p: usize) -> Result<BlockMapTable> {
    if p == 0 {
        return Err(Error::Invalid("block maps need depth p >= 1".into()));
    }
    let n = e.n();
    let window = p + e.rank() - 1;
    let mut map = vec![u32::MAX; n.pow(window as u32)];
    for v in Word::all(n, p) {
        let code = v.encode(n) as u32;
        let img = e.apply(&AlgebraElement::monomial(n, v.clone(), v));
        for w in diagonal_support(&img, window)? {
            if map[w as usize] != u32::MAX {
                return Err(Error::PartitionViolated(format!(
                    "{} lies under two cylinders",
                    Word::decode(w, n, window)
                )));
            }
            map[w as usize] = code;
        }
    }
    if let Some(w) = map.iter().position(|&c| c == u32::MAX) {
        return Err(Error::PartitionViolated(format!(
            "{} lies under no cylinder",
            Word::decode(w as u64, n, window)
        )));
    }
    let table = BlockMapTable { n, p, window, map };
    table.check_partition()?;
    Ok(table)
}

/// Block tables of `T` at every depth `1..=depth`.
///
/// `tables[q - 1][code(x)]` is the code of `(Tx)|_q` for `|x| = q + k - 1`.
#[derive(Clone, Debug)]
pub struct InducedMap {
    n: usize,
    k: usize,
    masa: Masa,
    tables: Vec<Vec<u32>>,
}

impl InducedMap {
    /// Assembles tables from letter tables: `letters[q - 1][code(x)]` is the
    /// `q`-th letter of `Tx` for `|x| = q + k - 1`.
    pub fn from_letters(n: usize, k: usize, masa: Masa, letters: Vec<Vec<u8>>) -> Self {
        let mut tables: Vec<Vec<u32>> = Vec::with_capacity(letters.len());
        for (i, row) in letters.into_iter().enumerate() {
            let table = if i == 0 {
                row.iter().map(|&l| l as u32 - 1).collect()
            } else {
                let prev = &tables[i - 1];
                row.iter()
                    .enumerate()
                    .map(|(x, &l)| prev[x / n] * n as u32 + (l as u32 - 1))
                    .collect()
            };
            tables.push(table);
        }
        InducedMap { n, k, masa, tables }
    }

    /// The map on the standard masa `C_N`.
    pub fn standard(e: &EndomorphismSpec, depth: usize, budget: u64) -> Result<Self> {
        check_budget(e.n(), depth + e.rank() - 1, budget)?;
        let letters = match e.permutation() {
            Some(sigma) => standard_letters_perm(sigma, depth),
            None => standard_letters_generic(e, depth)?,
        };
        Ok(Self::from_letters(e.n(), e.rank(), Masa::Standard, letters))
    }

    /// Same as [`InducedMap::standard`] but always through the algebra.
    pub fn standard_generic(e: &EndomorphismSpec, depth: usize, budget: u64) -> Result<Self> {
        check_budget(e.n(), depth + e.rank() - 1, budget)?;
        let letters = standard_letters_generic(e, depth)?;
        Ok(Self::from_letters(e.n(), e.rank(), Masa::Standard, letters))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Input words are `k - 1` letters longer than outputs.
    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn masa(&self) -> Masa {
        self.masa
    }

    pub fn depth(&self) -> usize {
        self.tables.len()
    }

    pub fn window(&self, q: usize) -> usize {
        q + self.k - 1
    }

    pub fn raw_table(&self, q: usize) -> &[u32] {
        &self.tables[q - 1]
    }

    pub fn table(&self, q: usize) -> BlockMapTable {
        BlockMapTable {
            n: self.n,
            p: q,
            window: self.window(q),
            map: self.tables[q - 1].clone(),
        }
    }

    /// `T(w)` truncated to the letters `w` determines.
    pub fn apply_word(&self, w: &Word) -> Word {
        let q = w.len() + 1 - self.k;
        Word::decode(
            self.tables[q - 1][w.encode(self.n) as usize] as u64,
            self.n,
            q,
        )
    }

    /// For each `j <= depth`: words agreeing on `j` letters but not on the
    /// next one have depth-`j` images that differ. Rank one maps never
    /// separate.
    pub fn separation_check(&self, depth: usize) -> bool {
        if self.k < 2 {
            return false;
        }
        let depth = depth.min(self.depth());
        let n = self.n as u64;
        (1..=depth).all(|j| {
            let tail = n.pow((self.k - 2) as u32);
            let table = &self.tables[j - 1];
            let block = n * tail;
            (0..n.pow(j as u32)).all(|prefix| {
                let base = prefix * block;
                let mut owner = std::collections::HashMap::new();
                (0..block).all(|off| {
                    let letter = off / tail;
                    let img = table[(base + off) as usize];
                    *owner.entry(img).or_insert(letter) == letter
                })
            })
        })
    }
}

pub(crate) fn check_budget(n: usize, len: usize, budget: u64) -> Result<()> {
    let needed = (n as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded {
            needed,
            cap: budget,
        });
    }
    Ok(())
}

/// `T = π_q^{-1}` truncated to `q` letters, where `π_q` sweeps `σ` over the
/// windows `q-1, ..., 0`; the inverse sweeps `σ^{-1}` over `0, ..., q-1`.
fn standard_letters_perm(sigma: &Permutation, depth: usize) -> Vec<Vec<u8>> {
    let inv = sigma.inverse();
    let (n, k) = (sigma.n(), sigma.k());
    (1..=depth)
        .map(|q| {
            let len = q + k - 1;
            let size = n.pow(len as u32) as u64;
            (0..size)
                .map(|code| {
                    let mut letters = Word::decode(code, n, len).letters().to_vec();
                    for pos in 0..q {
                        inv.apply_window(&mut letters, pos);
                    }
                    letters[q - 1]
                })
                .collect()
        })
        .collect()
}

fn standard_letters_generic(e: &EndomorphismSpec, depth: usize) -> Result<Vec<Vec<u8>>> {
    let (n, k) = (e.n(), e.rank());
    (1..=depth)
        .map(|q| {
            let len = q + k - 1;
            let mut row = vec![0u8; n.pow(len as u32)];
            for v in Word::all(n, q) {
                let letter = v.letters()[q - 1];
                let img = e.apply(&AlgebraElement::monomial(n, v.clone(), v));
                for w in diagonal_support(&img, len)? {
                    if row[w as usize] != 0 {
                        return Err(Error::PartitionViolated(format!(
                            "{} lies under two cylinders",
                            Word::decode(w, n, len)
                        )));
                    }
                    row[w as usize] = letter;
                }
            }
            if row.contains(&0) {
                return Err(Error::PartitionViolated(format!("depth {q} images do not cover")));
            }
            Ok(row)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endomorphism::{rank2_permutative, RANK2_TABLE_ORDER};
    use crate::scalar::Scalar;
    use crate::text::parse_element;
    use crate::word::w;

    fn spec(c: &str) -> EndomorphismSpec {
        EndomorphismSpec::from_permutation(Permutation::parse(c, 2, 2).unwrap())
    }

    #[test]
    fn shift_and_identity_tables() {
        let t = block_map(&spec("(2 3)"), 2).unwrap();
        for x in Word::all(2, 3) {
            assert_eq!(t.image(&x), Word::from(&x.letters()[1..]));
        }
        let id = block_map(&EndomorphismSpec::identity(2), 2).unwrap();
        assert_eq!(id.window, 2);
        for x in Word::all(2, 2) {
            assert_eq!(id.image(&x), x);
        }
    }

    #[test]
    fn sigma13_depth_one() {
        let t = block_map(&spec("(1 3)"), 1).unwrap();
        assert_eq!(t.image(&w("11")), w("2"));
        assert_eq!(t.image(&w("12")), w("1"));
        assert_eq!(t.image(&w("21")), w("1"));
        assert_eq!(t.image(&w("22")), w("2"));
    }

    #[test]
    fn fast_generic_and_cylinder_routes_agree() {
        for e in rank2_permutative() {
            let fast = InducedMap::standard(&e, 6, 1 << 20).unwrap();
            let slow = InducedMap::standard_generic(&e.without_fast_path(), 6, 1 << 20).unwrap();
            for q in 1..=6 {
                let direct = block_map(&e, q).unwrap();
                assert_eq!(fast.table(q), direct, "{} at {q}", e.label());
                assert_eq!(slow.table(q), direct, "{} at {q}", e.label());
            }
        }
    }

    #[test]
    fn prefix_consistency() {
        for e in rank2_permutative() {
            let m = InducedMap::standard(&e, 8, 1 << 20).unwrap();
            for q in 1..8 {
                assert!(m.table(q).prefix_consistent(&m.table(q + 1)));
                m.table(q).check_partition().unwrap();
            }
        }
    }

    #[test]
    fn diagonal_invariance() {
        for c in RANK2_TABLE_ORDER {
            assert!(diagonal_invariant(&spec(c), 4), "{c}");
        }
        let gauge = EndomorphismSpec::from_unitary(AlgebraElement::scalar(2, Scalar::i())).unwrap();
        assert!(diagonal_invariant(&gauge, 3));
        let u = parse_element("1/2+1/2i + 1/2-1/2i * s[1] t[2] + 1/2-1/2i * s[2] t[1]", 2).unwrap();
        let mixing = EndomorphismSpec::from_unitary(u).unwrap();
        assert!(!diagonal_invariant(&mixing, 2));
        assert!(matches!(block_map(&mixing, 1), Err(Error::MasaNotInvariant(_))));
        assert!(matches!(block_map(&spec("(1 2)"), 0), Err(Error::Invalid(_))));
    }

    #[test]
    fn separation() {
        let m13 = InducedMap::standard(&spec("(1 3)"), 10, 1 << 20).unwrap();
        assert!(m13.separation_check(10));
        let id = InducedMap::standard(&spec("id"), 10, 1 << 20).unwrap();
        assert!(!id.separation_check(10));
        let id1 = InducedMap::standard(&EndomorphismSpec::identity(2), 5, 1 << 20).unwrap();
        assert!(!id1.separation_check(5));
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            InducedMap::standard(&spec("(1 2)"), 20, 1 << 10),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
