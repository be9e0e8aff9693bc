use num_traits::Zero;
use rayon::prelude::*;

use crate::dynamics::induced::{check_budget, BlockMapTable, InducedMap};
use crate::dynamics::Masa;
use crate::element::AlgebraElement;
use crate::endomorphism::{theta_power, EndomorphismSpec};
use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::scalar::Scalar;
use crate::text::parse_element;
use crate::word::Word;

/// `X = s_1 s_2^* + s_2 s_1^*`.
pub fn flip_unitary() -> AlgebraElement {
    parse_element("s[1] t[2] + s[2] t[1]", 2).expect("literal parses")
}

/// `E = ½(1 + X)`.
pub fn e_projection() -> AlgebraElement {
    parse_element("1/2 + 1/2 * s[1] t[2] + 1/2 * s[2] t[1]", 2).expect("literal parses")
}

/// `F = ½(1 - X)`.
pub fn f_projection() -> AlgebraElement {
    parse_element("1/2 - 1/2 * s[1] t[2] - 1/2 * s[2] t[1]", 2).expect("literal parses")
}

/// A word over `{E, F}`, written with `1` for `E` and `2` for `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionWord(pub Word);

impl ProjectionWord {
    pub fn depth(&self) -> usize {
        self.0.len()
    }

    /// `P_q = q_1 θ(q_2) ⋯ θ^{m-1}(q_m)`.
    pub fn projection(&self) -> AlgebraElement {
        let (e, f) = (e_projection(), f_projection());
        let mut acc = AlgebraElement::one(2);
        for (i, &l) in self.0.letters().iter().enumerate() {
            let q = if l == 1 { &e } else { &f };
            acc = &acc * &theta_power(q, i);
        }
        acc
    }
}

/// The depth-`p` block map on `C_{E,F}`: every `r` of length `p + k - 1`
/// is assigned the `v` with `P_r ≤ ρ(P_v)`, and `ρ(P_v)` must be exactly
/// the sum of its assigned `P_r`.
pub fn ef_block_map(e: &EndomorphismSpec, p: usize) -> Result<BlockMapTable> {
    require_two(e)?;
    if p == 0 {
        return Err(Error::Invalid("block maps need depth p >= 1".into()));
    }
    let window = p + e.rank() - 1;
    let small: Vec<(Word, AlgebraElement)> = Word::all(2, window)
        .map(|r| {
            let pr = ProjectionWord(r.clone()).projection();
            (r, pr)
        })
        .collect();
    let mut map = vec![u32::MAX; 1 << window];
    for v in Word::all(2, p) {
        let q = e.apply(&ProjectionWord(v.clone()).projection());
        let mut sum = AlgebraElement::zero(2);
        for (r, pr) in &small {
            if (pr * &q).equals(pr)? {
                let slot = &mut map[r.encode(2) as usize];
                if *slot != u32::MAX {
                    return Err(Error::PartitionViolated(format!("{r} lies under two cylinders")));
                }
                *slot = v.encode(2) as u32;
                sum = &sum + pr;
            }
        }
        if !sum.equals(&q)? {
            return Err(Error::MasaNotInvariant(format!(
                "image of P_{v} is not a sum of depth-{window} projections"
            )));
        }
    }
    let table = BlockMapTable {
        n: 2,
        p,
        window,
        map,
    };
    table.check_partition()?;
    Ok(table)
}

impl InducedMap {
    /// The map on `C_{E,F}` (alphabet `E ↦ 1`, `F ↦ 2`).
    ///
    /// Letter `j` of `T(r)` is `E` iff `P_r ≤ Q_j = ρ(θ^{j-1}(E))`. With `Q_j`
    /// written as a matrix `(Q_{IJ})` at depth `m = j + k - 1`, the weight
    /// `⟨h_r, Q_j h_r⟩` in the Hadamard basis is `2^{-m} Ĝ(r)`, where `Ĝ` is
    /// the Walsh–Hadamard transform of `G(D) = Σ_{I ⊕ J = D} Q_{IJ}`.
    pub fn ef(e: &EndomorphismSpec, depth: usize, budget: u64) -> Result<Self> {
        require_two(e)?;
        check_budget(2, depth + e.rank() - 1, budget)?;
        let letters = match e.permutation() {
            Some(sigma) => (1..=depth)
                .map(|j| ef_letters_perm(sigma, j))
                .collect::<Result<Vec<_>>>()?,
            None => (1..=depth)
                .map(|j| ef_letters_generic(e, j))
                .collect::<Result<Vec<_>>>()?,
        };
        Ok(Self::from_letters(2, e.rank(), Masa::EF, letters))
    }

    /// Same as [`InducedMap::ef`] but always through the algebra.
    pub fn ef_generic(e: &EndomorphismSpec, depth: usize, budget: u64) -> Result<Self> {
        require_two(e)?;
        check_budget(2, depth + e.rank() - 1, budget)?;
        let letters = (1..=depth)
            .map(|j| ef_letters_generic(e, j))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_letters(2, e.rank(), Masa::EF, letters))
    }
}

fn require_two(e: &EndomorphismSpec) -> Result<()> {
    if e.n() != 2 {
        return Err(Error::Invalid("the E/F masa is defined for N = 2".into()));
    }
    Ok(())
}

fn not_invariant(j: usize) -> Error {
    Error::MasaNotInvariant(format!("ρ(θ^{}(E)) is not in C_EF", j - 1))
}

/// `ρ_σ(s_{Ka} s_{Kb}^*) = Σ_W s_{π_j(KaW)} s_{π_j(KbW)}^*`, so `2G` counts
/// the pairs by `code(I) ⊕ code(J)`.
fn ef_letters_perm(sigma: &Permutation, j: usize) -> Result<Vec<u8>> {
    let k = sigma.k();
    let m = j + k - 1;
    let sweep = |word: u64| -> u64 {
        let mut letters = Word::decode(word, 2, m).letters().to_vec();
        for pos in (0..j).rev() {
            sigma.apply_window(&mut letters, pos);
        }
        Word::from_letters(letters).encode(2)
    };
    let tail = 1u64 << (k - 1);
    let g: Vec<i64> = (0..1u64 << (j - 1))
        .into_par_iter()
        .fold(
            || vec![0i64; 1 << m],
            |mut acc, kw| {
                for wt in 0..tail {
                    let a = sweep(((kw << 1) << (k - 1)) | wt);
                    let b = sweep((((kw << 1) | 1) << (k - 1)) | wt);
                    acc[0] += 2;
                    acc[(a ^ b) as usize] += 2;
                }
                acc
            },
        )
        .reduce(
            || vec![0i64; 1 << m],
            |mut x, y| {
                x.iter_mut().zip(y).for_each(|(a, b)| *a += b);
                x
            },
        );
    let mut g = g;
    walsh_hadamard(&mut g);
    let full = 1i64 << (m + 1);
    g.into_iter()
        .map(|c| match c {
            c if c == full => Ok(1u8),
            0 => Ok(2u8),
            _ => Err(not_invariant(j)),
        })
        .collect()
}

fn ef_letters_generic(e: &EndomorphismSpec, j: usize) -> Result<Vec<u8>> {
    let m = j + e.rank() - 1;
    let q = e.apply(&theta_power(&e_projection(), j - 1));
    let leveled = q.normalized().level_balanced(m).map_err(|_| not_invariant(j))?;
    let mut g = vec![Scalar::zero(); 1 << m];
    for (mono, c) in leveled.terms() {
        if mono.degree() != 0 {
            return Err(not_invariant(j));
        }
        g[(mono.left.encode(2) ^ mono.right.encode(2)) as usize] += c;
    }
    let mut h = 1;
    while h < g.len() {
        for i in (0..g.len()).step_by(2 * h) {
            for t in i..i + h {
                let (x, y) = (g[t].clone(), g[t + h].clone());
                g[t] = &x + &y;
                g[t + h] = x - y;
            }
        }
        h *= 2;
    }
    let full = Scalar::from_int(1i64 << m);
    g.into_iter()
        .map(|c| {
            if c == full {
                Ok(1u8)
            } else if c.is_zero() {
                Ok(2u8)
            } else {
                Err(not_invariant(j))
            }
        })
        .collect()
}

fn walsh_hadamard(a: &mut [i64]) {
    let mut h = 1;
    while h < a.len() {
        for i in (0..a.len()).step_by(2 * h) {
            for t in i..i + h {
                let (x, y) = (a[t], a[t + h]);
                a[t] = x + y;
                a[t + h] = x - y;
            }
        }
        h *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::OracleId;

    fn spec(c: &str) -> EndomorphismSpec {
        EndomorphismSpec::from_permutation(Permutation::parse(c, 2, 2).unwrap())
    }

    #[test]
    fn projection_words_partition_unity() {
        for m in 1..=4 {
            let ps: Vec<AlgebraElement> =
                Word::all(2, m).map(|r| ProjectionWord(r).projection()).collect();
            let mut sum = AlgebraElement::zero(2);
            for (i, a) in ps.iter().enumerate() {
                assert_eq!(&(a * a), a);
                assert_eq!(&a.adjoint(), a);
                for b in &ps[i + 1..] {
                    assert!((a * b).is_zero());
                }
                sum = &sum + a;
            }
            assert_eq!(sum, AlgebraElement::one(2));
        }
    }

    #[test]
    fn psi_images_of_e() {
        let psi = spec("(1 2)");
        let (e, f) = (e_projection(), f_projection());
        let ee = &e * &theta_power(&e, 1);
        let ff = &f * &theta_power(&f, 1);
        assert_eq!(psi.apply(&e), &ee + &ff);
    }

    #[test]
    fn ef_tables_match_tef() {
        for c in ["(1 2)", "(1 3 2 4)"] {
            let m = InducedMap::ef(&spec(c), 10, 1 << 20).unwrap();
            assert!(m.matches_oracle(OracleId::TEF, 10), "{c}");
        }
    }

    #[test]
    fn three_routes_agree() {
        for c in ["(1 2)", "(3 4)", "(1 3 2 4)", "(1 4 2 3)", "id", "(1 2)(3 4)"] {
            let e = spec(c);
            let fast = InducedMap::ef(&e, 5, 1 << 20).unwrap();
            let slow = InducedMap::ef_generic(&e.without_fast_path(), 5, 1 << 20).unwrap();
            for p in 1..=5 {
                assert_eq!(fast.table(p), slow.table(p), "{c} at {p}");
            }
            for p in 1..=2 {
                assert_eq!(fast.table(p), ef_block_map(&e, p).unwrap(), "{c} at {p}");
            }
        }
    }

    #[test]
    fn identity_is_identity() {
        let m = InducedMap::ef(&EndomorphismSpec::identity(2), 6, 1 << 20).unwrap();
        assert!(m.matches_oracle(OracleId::Id, 6));
    }

    #[test]
    fn shift_acts_as_shift() {
        let m = InducedMap::ef(&spec("(2 3)"), 6, 1 << 20).unwrap();
        assert!(m.matches_oracle(OracleId::Shift, 6));
    }

    #[test]
    fn rejects_non_invariant() {
        let u = parse_element("s[1] t[1] + 0+1i * s[2] t[2]", 2).unwrap();
        let phase = EndomorphismSpec::from_unitary(u).unwrap();
        assert!(matches!(
            InducedMap::ef(&phase, 3, 1 << 20),
            Err(Error::MasaNotInvariant(_))
        ));
        assert!(matches!(ef_block_map(&phase, 1), Err(Error::MasaNotInvariant(_))));
    }

    #[test]
    fn psi_and_psi_prime_coincide() {
        let a = InducedMap::ef(&spec("(1 2)"), 8, 1 << 20).unwrap();
        let b = InducedMap::ef(&spec("(1 3 2 4)"), 8, 1 << 20).unwrap();
        for p in 1..=8 {
            assert_eq!(a.table(p), b.table(p));
        }
    }
}
