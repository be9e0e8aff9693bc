//! Polynomial elements `Σ c · s_I s_J^*` of the Cuntz algebra.
//!
//! Terms are kept in a map keyed by [`Monomial`], with zero coefficients
//! dropped eagerly. The stored form is not canonical: `s_1 s_1^* + s_2 s_2^*`
//! and `1` are different maps denoting the same element. Semantic equality
//! levels both sides to common right-lengths per gauge degree, where the
//! monomials form a basis.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::word::Word;

/// `s_I s_J^*`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub left: Word,
    pub right: Word,
}

impl Monomial {
    pub fn new(left: Word, right: Word) -> Self {
        Monomial { left, right }
    }

    pub fn identity() -> Self {
        Monomial::new(Word::empty(), Word::empty())
    }

    /// Gauge degree `|I| - |J|`.
    pub fn degree(&self) -> i64 {
        self.left.len() as i64 - self.right.len() as i64
    }

    pub fn adjoint(&self) -> Monomial {
        Monomial::new(self.right.clone(), self.left.clone())
    }

    /// Product of two monomials under the Cuntz relations, `None` when zero.
    pub fn mul(&self, rhs: &Monomial) -> Option<Monomial> {
        if let Some(rest) = rhs.left.strip_prefix(&self.right) {
            // K = J K'
            Some(Monomial::new(self.left.concat(&rest), rhs.right.clone()))
        } else {
            // J = K J'
            self.right
                .strip_prefix(&rhs.left)
                .map(|rest| Monomial::new(self.left.clone(), rhs.right.concat(&rest)))
        }
    }
}

/// Iteration order: gauge degree, then `|J|`, then `J`, then `I`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.right.len().cmp(&other.right.len()))
            .then_with(|| self.right.cmp(&other.right))
            .then_with(|| self.left.cmp(&other.left))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite linear combination of monomials over `O_N`.
#[derive(Clone, Debug)]
pub struct AlgebraElement {
    n: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

fn check_alphabet(n: usize) -> Result<()> {
    if (2..=255).contains(&n) {
        Ok(())
    } else {
        Err(Error::BadAlphabet(n))
    }
}

fn add_term(map: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
    match map.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += &c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl AlgebraElement {
    pub fn zero(n: usize) -> Self {
        assert!(check_alphabet(n).is_ok(), "alphabet size {n} out of range");
        AlgebraElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, Scalar::one())
    }

    pub fn scalar(n: usize, c: Scalar) -> Self {
        Self::term(n, Monomial::identity(), c)
    }

    pub fn term(n: usize, m: Monomial, c: Scalar) -> Self {
        let mut e = Self::zero(n);
        add_term(&mut e.terms, m, c);
        e
    }

    /// `s_I s_J^*` with coefficient one. Letters must lie in `1..=n`.
    pub fn monomial(n: usize, left: Word, right: Word) -> Self {
        debug_assert!(left.max_letter() as usize <= n && right.max_letter() as usize <= n);
        Self::term(n, Monomial::new(left, right), Scalar::one())
    }

    /// `s_I`.
    pub fn s(n: usize, word: Word) -> Self {
        Self::monomial(n, word, Word::empty())
    }

    /// `s_I^*`.
    pub fn s_star(n: usize, word: Word) -> Self {
        Self::monomial(n, Word::empty(), word)
    }

    /// The generator `s_i`.
    pub fn generator(n: usize, i: u8) -> Self {
        Self::s(n, Word::from_letters(vec![i]))
    }

    /// Builds from raw terms, validating letters and dropping zeros.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        check_alphabet(n)?;
        let mut e = AlgebraElement {
            n,
            terms: BTreeMap::new(),
        };
        for (m, c) in terms {
            for w in [&m.left, &m.right] {
                Word::new(w.letters().to_vec(), n)?;
            }
            add_term(&mut e.terms, m, c);
        }
        Ok(e)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True iff no terms are stored. Use [`AlgebraElement::is_zero`] for the
    /// semantic test.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for (m, d) in &self.terms {
            add_term(&mut out.terms, m.clone(), c * d);
        }
        out
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.same_n(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            add_term(&mut out.terms, m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.same_n(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            add_term(&mut out.terms, m.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Adds `c · m` in place.
    pub fn add_monomial(&mut self, m: Monomial, c: Scalar) {
        add_term(&mut self.terms, m, c);
    }

    fn same_n(&self, rhs: &Self) -> Result<()> {
        if self.n == rhs.n {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch(self.n, rhs.n))
        }
    }

    /// Bilinear extension of the monomial product rule.
    ///
    /// The right factor's terms are indexed by left word so each left term
    /// only visits the right terms whose left word is comparable with its
    /// right word.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.same_n(rhs)?;
        let mut by_left: BTreeMap<&Word, Vec<(&Word, &Scalar)>> = BTreeMap::new();
        for (m, c) in &rhs.terms {
            by_left.entry(&m.left).or_default().push((&m.right, c));
        }
        let mut out = BTreeMap::new();
        for (a, ca) in &self.terms {
            let j = a.right.letters();
            // K a prefix of J (including K = J): s_I s_{L J'}^*.
            for cut in 0..=j.len() {
                let k = Word::from(&j[..cut]);
                if let Some(hits) = by_left.get(&k) {
                    let rest = Word::from(&j[cut..]);
                    for (l, cb) in hits {
                        add_term(
                            &mut out,
                            Monomial::new(a.left.clone(), l.concat(&rest)),
                            ca * cb,
                        );
                    }
                }
            }
            // J a proper prefix of K: s_{I K'} s_L^*.
            for (k, hits) in by_left.range::<&Word, _>(&a.right..) {
                if !k.starts_with(&a.right) {
                    break;
                }
                if k.len() == j.len() {
                    continue;
                }
                let rest = Word::from(&k.letters()[j.len()..]);
                let left = a.left.concat(&rest);
                for (l, cb) in hits {
                    add_term(&mut out, Monomial::new(left.clone(), (*l).clone()), ca * cb);
                }
            }
        }
        Ok(AlgebraElement { n: self.n, terms: out })
    }

    /// Conjugate-linear star: `c s_I s_J^* ↦ conj(c) s_J s_I^*`.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            add_term(&mut out.terms, m.adjoint(), c.conj());
        }
        out
    }

    /// Per-degree maximum right-length over the stored terms.
    pub fn max_right_lengths(&self) -> BTreeMap<i64, usize> {
        let mut out: BTreeMap<i64, usize> = BTreeMap::new();
        for m in self.terms.keys() {
            let e = out.entry(m.degree()).or_insert(0);
            *e = (*e).max(m.right.len());
        }
        out
    }

    /// Inserts `Σ_i s_i s_i^*` on the right until every term of degree `d`
    /// has right-length `targets[d]`. Degrees absent from `targets` are kept.
    pub fn level(&self, targets: &BTreeMap<i64, usize>) -> Result<Self> {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let d = m.degree();
            let Some(&t) = targets.get(&d) else {
                add_term(&mut out.terms, m.clone(), c.clone());
                continue;
            };
            if t < m.right.len() {
                return Err(Error::LevelTargetTooSmall {
                    degree: d,
                    target: t,
                    current: m.right.len(),
                });
            }
            for ext in Word::all(self.n, t - m.right.len()) {
                add_term(
                    &mut out.terms,
                    Monomial::new(m.left.concat(&ext), m.right.concat(&ext)),
                    c.clone(),
                );
            }
        }
        Ok(out)
    }

    /// Levels every degree to its own maximum right-length. The result is
    /// the unique representation at those lengths.
    pub fn normalized(&self) -> Self {
        self.level(&self.max_right_lengths())
            .expect("max right-lengths are admissible targets")
    }

    /// Levels every term of degree 0 to bidegree `(m, m)`.
    pub fn level_balanced(&self, m: usize) -> Result<Self> {
        self.level(&BTreeMap::from([(0, m)]))
    }

    /// Semantic zero test modulo both Cuntz relations.
    pub fn is_zero(&self) -> bool {
        self.normalized().terms.is_empty()
    }

    /// Semantic equality modulo both Cuntz relations.
    pub fn equals(&self, rhs: &Self) -> Result<bool> {
        Ok(self.try_sub(rhs)?.is_zero())
    }

    /// Leveled form followed by greedy sibling contraction: whenever
    /// `Σ_a c s_{Ia} s_{Ja}^*` appears for all letters `a` with a shared
    /// coefficient, it is replaced by `c s_I s_J^*`.
    pub fn canonicalize(&self) -> Self {
        let mut terms = self.normalized().terms;
        let max_len = terms.keys().map(|m| m.right.len()).max().unwrap_or(0);
        for len in (1..=max_len).rev() {
            let mut groups: BTreeMap<(i64, Word, Word), Vec<(u8, Scalar)>> = BTreeMap::new();
            for (m, c) in &terms {
                if m.right.len() != len || m.left.is_empty() {
                    continue;
                }
                let (a, b) = (m.left.letters(), m.right.letters());
                let (la, lb) = (a[a.len() - 1], b[b.len() - 1]);
                if la != lb {
                    continue;
                }
                groups
                    .entry((
                        m.degree(),
                        Word::from(&b[..b.len() - 1]),
                        Word::from(&a[..a.len() - 1]),
                    ))
                    .or_default()
                    .push((la, c.clone()));
            }
            for ((_, right, left), sibs) in groups {
                if sibs.len() != self.n || sibs.iter().any(|(_, c)| *c != sibs[0].1) {
                    continue;
                }
                for (a, _) in &sibs {
                    let mut l = left.clone();
                    l.push(*a);
                    let mut r = right.clone();
                    r.push(*a);
                    terms.remove(&Monomial::new(l, r));
                }
                add_term(&mut terms, Monomial::new(left, right), sibs[0].1.clone());
            }
        }
        AlgebraElement { n: self.n, terms }
    }

    /// Splits terms by gauge degree `|I| - |J|`.
    pub fn gauge_components(&self) -> BTreeMap<i64, AlgebraElement> {
        let mut out: BTreeMap<i64, AlgebraElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Self::zero(self.n))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Conditional expectation onto the UHF core: the degree-0 component.
    pub fn expectation(&self) -> Self {
        self.gauge_components()
            .remove(&0)
            .unwrap_or_else(|| Self::zero(self.n))
    }

    /// The single gauge degree of a nonzero homogeneous element. Zero
    /// elements report degree 0.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let comps = self.normalized().gauge_components();
        match comps.len() {
            0 => Some(0),
            1 => comps.keys().next().copied(),
            _ => None,
        }
    }

    pub fn is_gauge_invariant(&self) -> bool {
        self.homogeneous_degree() == Some(0)
    }

    /// `τ(𝔼(a))` where `τ` is the normalized trace on the UHF core.
    pub fn trace_state(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            if m.left == m.right {
                let den = BigInt::from(self.n).pow(m.left.len() as u32);
                let w = Scalar::from_real(BigRational::new(BigInt::one(), den));
                acc += &(c * &w);
            }
        }
        acc
    }

    /// Membership in `F_{p,l} = span{s_I s_J^* : |I| = p, |J| = l}`.
    pub fn in_f(&self, p: usize, l: usize) -> bool {
        let canon = self.canonicalize();
        let d = p as i64 - l as i64;
        canon
            .terms
            .keys()
            .all(|m| m.degree() == d && m.right.len() <= l)
    }

    /// True iff the element is exactly one monomial in `A_{p,l}` with
    /// coefficient one.
    pub fn in_a(&self, p: usize, l: usize) -> bool {
        let canon = self.canonicalize();
        let check = |e: &AlgebraElement| {
            e.terms.len() == 1
                && e.terms.iter().all(|(m, c)| {
                    m.left.len() == p && m.right.len() == l && c.is_one()
                })
        };
        check(self) || check(&canon)
    }
}

impl PartialEq for AlgebraElement {
    /// Semantic equality. Elements over different alphabets are unequal.
    fn eq(&self, other: &Self) -> bool {
        self.equals(other).unwrap_or(false)
    }
}

impl<'a> Mul<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::mul(self, rhs).expect("alphabet mismatch in product")
    }
}

impl<'a> Add<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_add(rhs).expect("alphabet mismatch in sum")
    }
}

impl<'a> Sub<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_sub(rhs).expect("alphabet mismatch in difference")
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(&-Scalar::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    fn s(word: &str) -> AlgebraElement {
        AlgebraElement::s(2, w(word))
    }
    fn st(word: &str) -> AlgebraElement {
        AlgebraElement::s_star(2, w(word))
    }
    fn mono(i: &str, j: &str) -> AlgebraElement {
        AlgebraElement::monomial(2, w(i), w(j))
    }

    #[test]
    fn cuntz_relations() {
        assert_eq!(&st("1") * &s("1"), AlgebraElement::one(2));
        assert!((&st("1") * &s("2")).is_empty());
        let sum = &mono("1", "1") + &mono("2", "2");
        assert!(sum.equals(&AlgebraElement::one(2)).unwrap());
    }

    #[test]
    fn product_of_matrix_units() {
        // (s1 s2*)(s2 s1*) = s1 s1*
        let p = &mono("1", "2") * &mono("2", "1");
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.coefficient(&Monomial::new(w("1"), w("1"))), Scalar::one());
        // mixed lengths: (s1 s12*)(s1) = s1 s2*
        let q = &mono("1", "12") * &s("1");
        assert_eq!(q.terms().keys().next().unwrap(), &Monomial::new(w("1"), w("2")));
        // (s_1^*)(s_{12}) = s_2
        let r = &st("1") * &s("12");
        assert_eq!(r.terms().keys().next().unwrap(), &Monomial::new(w("2"), w("")));
    }

    #[test]
    fn adjoint_conjugates() {
        let a = mono("1", "2").scale(&Scalar::i());
        let b = mono("2", "1").scale(&-Scalar::i());
        assert_eq!(a.adjoint().terms(), b.terms());
        assert_eq!(s("1").adjoint().terms(), st("1").terms());
    }

    #[test]
    fn leveling() {
        let one = AlgebraElement::one(2);
        let l = one.level_balanced(1).unwrap();
        assert_eq!(l.terms(), (&mono("1", "1") + &mono("2", "2")).terms());
        let l2 = mono("1", "1").level_balanced(2).unwrap();
        assert_eq!(l2.terms(), (&mono("11", "11") + &mono("12", "12")).terms());
        let l3 = s("1").level(&BTreeMap::from([(1, 1)])).unwrap();
        assert_eq!(l3.terms(), (&mono("11", "1") + &mono("12", "2")).terms());
        assert_eq!(l3, &s("1") * &one);
        assert!(matches!(
            l2.level_balanced(1),
            Err(Error::LevelTargetTooSmall { .. })
        ));
    }

    #[test]
    fn equality_modulo_relations() {
        let one = AlgebraElement::one(2);
        let lhs = &(&mono("11", "11") + &mono("12", "12")) + &mono("2", "2");
        assert!(lhs.equals(&one).unwrap());
        assert!(!mono("1", "2").equals(&mono("2", "1")).unwrap());
        let three = AlgebraElement::one(3);
        assert_eq!(one.equals(&three), Err(Error::AlphabetMismatch(2, 3)));
    }

    #[test]
    fn canonical_contraction() {
        let lhs = &(&mono("11", "11") + &mono("12", "12")) + &mono("2", "2");
        let c = lhs.canonicalize();
        assert_eq!(c.terms(), AlgebraElement::one(2).terms());
        // Non-contractible mix keeps its shape.
        let x = &mono("1", "2") + &mono("2", "1");
        assert_eq!(x.canonicalize().terms(), x.terms());
        assert_eq!(c.canonicalize().terms(), c.terms());
    }

    #[test]
    fn gauge_and_trace() {
        let a = &s("1") + &mono("1", "1");
        let comps = a.gauge_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[&1].terms(), s("1").terms());
        assert_eq!(comps[&0].terms(), mono("1", "1").terms());
        let b = &mono("1", "2") + &mono("2", "2").scale(&Scalar::from_int(2));
        assert_eq!(b.expectation().terms(), b.terms());
        assert_eq!(AlgebraElement::one(2).trace_state(), Scalar::one());
        assert_eq!(mono("1", "1").trace_state(), Scalar::ratio(1, 2));
        assert_eq!(mono("1", "2").trace_state(), Scalar::zero());
        assert_eq!(s("1").trace_state(), Scalar::zero());
    }

    #[test]
    fn bidegree_predicates() {
        let x = &mono("1", "2") + &mono("2", "1");
        assert!(x.in_f(1, 1));
        assert!(x.in_f(3, 3));
        assert!(!x.in_f(0, 0));
        assert!(!x.in_f(2, 1));
        assert!(AlgebraElement::one(2).in_f(0, 0));
        assert!(mono("12", "1").in_a(2, 1));
        assert!(!x.in_a(1, 1));
        assert!(s("1").level(&BTreeMap::from([(1, 1)])).unwrap().in_f(1, 0));
    }
}
