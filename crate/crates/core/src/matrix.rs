//! Matrix pictures of `O_N`: the isomorphism `Ψ_k : O_N → M_{N^k} ⊗ O_N`,
//! the coefficient matrices `T_J` of a homogeneous element, and operator
//! norms through the finite-dimensional embedding of the UHF core.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::Zero;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::element::{AlgebraElement, Monomial};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::word::Word;

/// Largest matrix handled by [`embed_degree0`] and [`operator_norm`].
pub const DIMENSION_CAP: usize = 1024;
pub const POWER_TOLERANCE: f64 = 1e-12;
pub const POWER_MAX_ITER: usize = 10_000;

/// `N^k × N^k` matrix with entries in `O_N`, rows and columns indexed by
/// words of length `k` in lexicographic order.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    n: usize,
    k: usize,
    dim: usize,
    entries: Vec<AlgebraElement>,
}

impl OperatorMatrix {
    pub fn zeros(n: usize, k: usize) -> Self {
        let dim = n.pow(k as u32);
        OperatorMatrix {
            n,
            k,
            dim,
            entries: vec![AlgebraElement::zero(n); dim * dim],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> &AlgebraElement {
        &self.entries[row * self.dim + col]
    }

    pub fn entry_mut(&mut self, row: usize, col: usize) -> &mut AlgebraElement {
        &mut self.entries[row * self.dim + col]
    }

    /// Matrix product with entries multiplied in `O_N`.
    pub fn mul(&self, rhs: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = OperatorMatrix::zeros(self.n, self.k);
        for r in 0..self.dim {
            for c in 0..self.dim {
                let mut acc = AlgebraElement::zero(self.n);
                for j in 0..self.dim {
                    let a = self.entry(r, j);
                    let b = rhs.entry(j, c);
                    if !a.terms().is_empty() && !b.terms().is_empty() {
                        acc = &acc + &(a * b);
                    }
                }
                *out.entry_mut(r, c) = acc;
            }
        }
        out
    }

    /// Conjugate transpose: entry `(K, M)` becomes `adjoint` of `(M, K)`.
    pub fn adjoint(&self) -> OperatorMatrix {
        let mut out = OperatorMatrix::zeros(self.n, self.k);
        for r in 0..self.dim {
            for c in 0..self.dim {
                *out.entry_mut(r, c) = self.entry(c, r).adjoint();
            }
        }
        out
    }

    /// Entrywise semantic equality.
    pub fn equals(&self, rhs: &OperatorMatrix) -> bool {
        self.dim == rhs.dim
            && self
                .entries
                .iter()
                .zip(&rhs.entries)
                .all(|(a, b)| a.equals(b).unwrap_or(false))
    }

    /// `Σ_{K,M} s_K (entry) s_M^*`, the inverse of [`psi`].
    pub fn collapse(&self) -> AlgebraElement {
        let words: Vec<Word> = Word::all(self.n, self.k).collect();
        let mut out = AlgebraElement::zero(self.n);
        for (r, kw) in words.iter().enumerate() {
            for (c, mw) in words.iter().enumerate() {
                let e = self.entry(r, c);
                if e.terms().is_empty() {
                    continue;
                }
                let t = &(&AlgebraElement::s(self.n, kw.clone()) * e)
                    * &AlgebraElement::s_star(self.n, mw.clone());
                out = &out + &t;
            }
        }
        out
    }
}

/// `Ψ_k(X)`, with entry `(K, M) = s_K^* X s_M`.
pub fn psi(x: &AlgebraElement, k: usize) -> OperatorMatrix {
    let n = x.n();
    let words: Vec<Word> = Word::all(n, k).collect();
    let mut out = OperatorMatrix::zeros(n, k);
    for (r, kw) in words.iter().enumerate() {
        let left = &AlgebraElement::s_star(n, kw.clone()) * x;
        if left.terms().is_empty() {
            continue;
        }
        for (c, mw) in words.iter().enumerate() {
            *out.entry_mut(r, c) = &left * &AlgebraElement::s(n, mw.clone());
        }
    }
    out
}

/// Dense square matrix of exact scalars.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarMatrix {
    pub dim: usize,
    pub entries: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn zeros(dim: usize) -> Self {
        ScalarMatrix {
            dim,
            entries: vec![Scalar::zero(); dim * dim],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.dim + c]
    }

    pub fn to_numeric(&self) -> NumericMatrix {
        NumericMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(Scalar::to_complex).collect(),
        }
    }
}

/// Dense square complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericMatrix {
    pub dim: usize,
    pub entries: Vec<Complex64>,
}

impl NumericMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Complex64::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        NumericMatrix { dim, entries }
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.entries[r * self.dim + c]
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut entries = vec![Complex64::zero(); d * d];
        for r in 0..d {
            for c in 0..d {
                entries[r * d + c] = self.get(c, r).conj();
            }
        }
        NumericMatrix { dim: d, entries }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let d = self.dim;
        let mut entries = vec![Complex64::zero(); d * d];
        for r in 0..d {
            for j in 0..d {
                let a = self.get(r, j);
                if a.is_zero() {
                    continue;
                }
                for c in 0..d {
                    entries[r * d + c] += a * rhs.get(j, c);
                }
            }
        }
        NumericMatrix { dim: d, entries }
    }

    fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim)
            .map(|r| {
                self.entries[r * self.dim..(r + 1) * self.dim]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Largest eigenvalue of a positive semidefinite matrix, by power
    /// iteration on the Rayleigh quotient.
    pub fn top_eigenvalue_psd(&self) -> Result<f64> {
        let d = self.dim;
        if d == 0 {
            return Ok(0.0);
        }
        // All-ones plus a small deterministic tilt.
        let mut v: Vec<Complex64> = (0..d)
            .map(|i| Complex64::new(1.0 + 0.1 * ((i * 7919 % 97) as f64 / 97.0), 0.0))
            .collect();
        normalize(&mut v);
        let mut lambda = 0.0;
        for _ in 0..POWER_MAX_ITER {
            let w = self.apply(&v);
            let next: f64 = v.iter().zip(&w).map(|(a, b)| (a.conj() * b).re).sum();
            let size = norm(&w);
            if size == 0.0 {
                return Ok(0.0);
            }
            v = w.into_iter().map(|z| z / size).collect();
            if (next - lambda).abs() <= POWER_TOLERANCE * next.abs().max(1.0) {
                return Ok(next.max(0.0));
            }
            lambda = next;
        }
        Err(Error::NoConvergence(POWER_MAX_ITER))
    }

    /// Largest singular value.
    pub fn spectral_norm(&self) -> Result<f64> {
        Ok(self.adjoint().mul(self).top_eigenvalue_psd()?.sqrt())
    }

    /// Row-major nested arrays of `[re, im]` pairs.
    pub fn to_rows(&self) -> Vec<Vec<[f64; 2]>> {
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| {
                let z = self.get(r, c);
                [z.re, z.im]
            }).collect())
            .collect()
    }
}

impl Serialize for NumericMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = self.to_rows();
        let mut seq = s.serialize_seq(Some(rows.len()))?;
        for row in &rows {
            seq.serialize_element(row)?;
        }
        seq.end()
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(v: &mut [Complex64]) {
    let s = norm(v);
    for z in v.iter_mut() {
        *z /= s;
    }
}

/// Which side the coefficient words of a decomposition sit on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `Ψ_k(X) = Σ_J T_J ⊗ s_J`.
    Creation,
    /// `Ψ_k(X) = Σ_J T_J ⊗ s_J^*`.
    Annihilation,
    /// `Ψ_k(X) = T ⊗ 1`; the single part is keyed by the empty word.
    Scalar,
}

#[derive(Clone, Debug)]
pub struct Lemma1Decomposition {
    pub n: usize,
    pub k: usize,
    pub direction: Direction,
    pub exact: BTreeMap<Word, ScalarMatrix>,
    pub parts: BTreeMap<Word, NumericMatrix>,
}

impl Lemma1Decomposition {
    /// Rebuilds `Σ_J T_J ⊗ s_J` (or `s_J^*`) as an operator matrix.
    pub fn reconstruct(&self) -> OperatorMatrix {
        let mut out = OperatorMatrix::zeros(self.n, self.k);
        for (j, t) in &self.exact {
            let m = match self.direction {
                Direction::Annihilation => Monomial::new(Word::empty(), j.clone()),
                _ => Monomial::new(j.clone(), Word::empty()),
            };
            for r in 0..t.dim {
                for c in 0..t.dim {
                    let coef = t.get(r, c);
                    if !coef.is_zero() {
                        out.entry_mut(r, c).add_monomial(m.clone(), coef.clone());
                    }
                }
            }
        }
        out
    }
}

/// The coefficient matrices `T_J` of a gauge-homogeneous `X`.
pub fn lemma1_decompose(x: &AlgebraElement, k: usize) -> Result<Lemma1Decomposition> {
    let n = x.n();
    let d = x.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    let canon = x.canonicalize();
    let l = canon.terms().keys().map(|m| m.right.len()).max().unwrap_or(0);
    let p = (l as i64 + d).max(0) as usize;
    if k < p.max(l) {
        return Err(Error::RankTooSmall { k, p, l });
    }
    let direction = match d {
        0 => Direction::Scalar,
        d if d > 0 => Direction::Creation,
        _ => Direction::Annihilation,
    };
    let len = d.unsigned_abs() as usize;
    let dim = n.pow(k as u32);
    let mut exact: BTreeMap<Word, ScalarMatrix> = Word::all(n, len)
        .map(|j| (j, ScalarMatrix::zeros(dim)))
        .collect();
    let psi_x = psi(x, k);
    for r in 0..dim {
        for c in 0..dim {
            for (m, coef) in psi_x.entry(r, c).normalized().terms() {
                let j = match direction {
                    Direction::Annihilation if m.left.is_empty() => &m.right,
                    _ if m.right.is_empty() => &m.left,
                    _ => return Err(Error::RankTooSmall { k, p, l }),
                };
                let t = exact.get_mut(j).ok_or(Error::RankTooSmall { k, p, l })?;
                t.entries[r * dim + c] += coef;
            }
        }
    }
    let parts = exact.iter().map(|(j, t)| (j.clone(), t.to_numeric())).collect();
    Ok(Lemma1Decomposition {
        n,
        k,
        direction,
        exact,
        parts,
    })
}

/// The matrix of a degree-0 element in `M_{N^m}`, `m` its largest
/// right-length.
pub fn embed_degree0(x: &AlgebraElement) -> Result<NumericMatrix> {
    Ok(embed_degree0_exact(x)?.to_numeric())
}

pub fn embed_degree0_exact(x: &AlgebraElement) -> Result<ScalarMatrix> {
    let norm = x.normalized();
    if let Some(d) = norm.terms().keys().map(Monomial::degree).find(|&d| d != 0) {
        return Err(Error::NonzeroDegree(d));
    }
    let m = norm.terms().keys().map(|t| t.right.len()).max().unwrap_or(0);
    let n = x.n();
    let dim = (n as u128).pow(m as u32);
    if dim > DIMENSION_CAP as u128 {
        return Err(Error::DimensionCap {
            dim: dim.min(usize::MAX as u128) as usize,
            cap: DIMENSION_CAP,
        });
    }
    let dim = dim as usize;
    let mut out = ScalarMatrix::zeros(dim);
    for (t, c) in norm.level_balanced(m)?.terms() {
        let r = t.left.encode(n) as usize;
        let col = t.right.encode(n) as usize;
        out.entries[r * dim + col] += c;
    }
    Ok(out)
}

/// `‖X‖` for gauge-homogeneous `X`, from `‖X‖² = ‖X^* X‖`.
pub fn operator_norm(x: &AlgebraElement) -> Result<f64> {
    x.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    let xx = &x.adjoint() * x;
    Ok(embed_degree0(&xx)?.top_eigenvalue_psd()?.sqrt())
}

/// Lower and upper bounds on `‖X‖` from the gauge components: the largest
/// component norm and the sum of component norms.
pub fn norm_bounds(x: &AlgebraElement) -> Result<(f64, f64)> {
    let mut lower: f64 = 0.0;
    let mut upper = 0.0;
    for comp in x.normalized().gauge_components().values() {
        let v = operator_norm(comp)?;
        lower = lower.max(v);
        upper += v;
    }
    Ok((lower, upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endomorphism::perm_unitary;
    use crate::permutation::Permutation;
    use crate::text::parse_element;
    use crate::word::w;

    fn el(s: &str) -> AlgebraElement {
        parse_element(s, 2).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9
    }

    #[test]
    fn psi_of_unit_and_generator() {
        let one = psi(&AlgebraElement::one(2), 1);
        for r in 0..2 {
            for c in 0..2 {
                let expect = if r == c { AlgebraElement::one(2) } else { AlgebraElement::zero(2) };
                assert_eq!(one.entry(r, c), &expect);
            }
        }
        let s1 = psi(&el("s[1]"), 1);
        assert_eq!(s1.entry(0, 0), &el("s[1]"));
        assert_eq!(s1.entry(0, 1), &el("s[2]"));
        assert!(s1.entry(1, 0).is_zero() && s1.entry(1, 1).is_zero());
        assert!(s1.collapse().equals(&el("s[1]")).unwrap());
    }

    #[test]
    fn psi_low_bidegree_is_scalar() {
        let x = el("s[1] t[2] s[1] t[1]");
        let m = psi(&x, 2);
        for r in 0..4 {
            for c in 0..4 {
                assert!(m.entry(r, c).normalized().terms().keys().all(|t| t.left.is_empty() && t.right.is_empty()));
            }
        }
    }

    #[test]
    fn psi_is_a_star_homomorphism() {
        let a = el("s[1] t[2] + 1/2 * s[21]");
        let b = el("t[1] + s[12] t[2]");
        let k = 2;
        assert!(psi(&(&a * &b), k).equals(&psi(&a, k).mul(&psi(&b, k))));
        assert!(psi(&a.adjoint(), k).equals(&psi(&a, k).adjoint()));
    }

    #[test]
    fn decompositions() {
        let d = lemma1_decompose(&el("s[1]"), 1).unwrap();
        assert_eq!(d.direction, Direction::Creation);
        let t1 = &d.exact[&w("1")];
        let t2 = &d.exact[&w("2")];
        assert_eq!(t1.get(0, 0), &Scalar::from_int(1));
        assert_eq!(t2.get(0, 1), &Scalar::from_int(1));
        assert_eq!(t1.entries.iter().filter(|c| !c.is_zero()).count(), 1);
        assert!(d.reconstruct().equals(&psi(&el("s[1]"), 1)));

        let y = el("s[1] t[2] + 3 * s[2] t[2]");
        let d = lemma1_decompose(&y, 1).unwrap();
        assert_eq!(d.direction, Direction::Scalar);
        assert_eq!(d.exact[&Word::empty()].to_numeric(), embed_degree0(&y).unwrap());

        let z = el("s[2] t[12] + 2 * s[1] t[22]");
        let d = lemma1_decompose(&z, 2).unwrap();
        assert_eq!(d.direction, Direction::Annihilation);
        assert!(d.reconstruct().equals(&psi(&z, 2)));
        assert!(matches!(lemma1_decompose(&z, 1), Err(Error::RankTooSmall { .. })));
        assert!(matches!(lemma1_decompose(&el("s[1] + 1"), 2), Err(Error::NotHomogeneous)));
    }

    #[test]
    fn embeddings() {
        assert_eq!(embed_degree0(&AlgebraElement::one(2)).unwrap(), NumericMatrix::identity(1));
        let sigma = Permutation::parse("(1 2 3)", 2, 2).unwrap();
        let m = embed_degree0(&perm_unitary(&sigma)).unwrap();
        for c in 0..4 {
            let r = sigma.apply_code(c as u32) as usize;
            assert_eq!(m.get(r, c), Complex64::new(1.0, 0.0));
        }
        let e = embed_degree0(&el("1/2 + 1/2 * s[1] t[2] + 1/2 * s[2] t[1]")).unwrap();
        assert!(e.entries.iter().all(|z| *z == Complex64::new(0.5, 0.0)));
        assert!(matches!(embed_degree0(&el("s[1]")), Err(Error::NonzeroDegree(1))));
        assert!(matches!(
            embed_degree0(&el("s[11111111111] t[11111111111]")),
            Err(Error::DimensionCap { .. })
        ));
    }

    #[test]
    fn norms() {
        assert!(close(operator_norm(&el("s[1]")).unwrap(), 1.0));
        assert!(close(operator_norm(&el("s[1] t[2] + s[2] t[1]")).unwrap(), 1.0));
        assert!(close(operator_norm(&el("2 * s[11] t[2]")).unwrap(), 2.0));
        assert!(close(operator_norm(&el("1/2 - 1/2 * s[1] t[2] - 1/2 * s[2] t[1]")).unwrap(), 1.0));
        assert!(close(operator_norm(&AlgebraElement::zero(2)).unwrap(), 0.0));
        assert!(matches!(operator_norm(&el("1 + s[1]")), Err(Error::NotHomogeneous)));
        let (lo, hi) = norm_bounds(&el("1 + s[1]")).unwrap();
        assert!(close(lo, 1.0) && close(hi, 2.0));
    }

    #[test]
    fn json_shape() {
        let m = embed_degree0(&el("s[1] t[2]")).unwrap();
        assert_eq!(m.to_rows(), vec![vec![[0.0, 0.0], [1.0, 0.0]], vec![[0.0, 0.0], [0.0, 0.0]]]);
    }
}
