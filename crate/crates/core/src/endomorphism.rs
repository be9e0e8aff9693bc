//! Endomorphisms `ρ_u` of `O_N` given by polynomial unitaries.
//!
//! `ρ_u` sends `s_i ↦ u s_i`. On monomials it acts by
//! `ρ_u(s_I s_J^*) = u_{|I|} s_I s_J^* u_{|J|}^*` where
//! `u_k = u θ(u) ⋯ θ^{k-1}(u)` is the cocycle and `θ` the canonical shift.

use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::One;

use crate::element::{AlgebraElement, Monomial};
use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::scalar::Scalar;
use crate::word::Word;

/// `θ(a) = Σ_i s_i a s_i^*`.
pub fn theta(a: &AlgebraElement) -> AlgebraElement {
    let n = a.n();
    let mut out = AlgebraElement::zero(n);
    for i in 1..=n as u8 {
        let prefix = Word::from_letters(vec![i]);
        for (m, c) in a.terms() {
            out.add_monomial(
                Monomial::new(prefix.concat(&m.left), prefix.concat(&m.right)),
                c.clone(),
            );
        }
    }
    out
}

/// `θ^m(a) = Σ_{|K| = m} s_K a s_K^*`.
pub fn theta_power(a: &AlgebraElement, m: usize) -> AlgebraElement {
    let n = a.n();
    let mut out = AlgebraElement::zero(n);
    for k in Word::all(n, m) {
        for (mono, c) in a.terms() {
            out.add_monomial(
                Monomial::new(k.concat(&mono.left), k.concat(&mono.right)),
                c.clone(),
            );
        }
    }
    out
}

/// `u_σ = Σ_J s_{σ(J)} s_J^*`.
pub fn perm_unitary(sigma: &Permutation) -> AlgebraElement {
    let (n, k) = (sigma.n(), sigma.k());
    let mut out = AlgebraElement::zero(n);
    for (code, &img) in sigma.images().iter().enumerate() {
        out.add_monomial(
            Monomial::new(
                Word::decode(img as u64, n, k),
                Word::decode(code as u64, n, k),
            ),
            Scalar::one(),
        );
    }
    out
}

/// Where an endomorphism came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    Permutation(Permutation),
    Unitary,
    Shift,
    Identity,
}

/// A unital endomorphism `ρ_u`, together with its defining unitary and rank.
#[derive(Clone)]
pub struct EndomorphismSpec {
    u: AlgebraElement,
    rank: usize,
    origin: Origin,
    /// Set when `u` is a permutation matrix; enables word-level application.
    perm: Option<Permutation>,
    cocycles: Arc<Mutex<Vec<AlgebraElement>>>,
}

impl fmt::Debug for EndomorphismSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EndomorphismSpec")
            .field("u", &self.u.to_string())
            .field("rank", &self.rank)
            .field("origin", &self.origin)
            .finish()
    }
}

fn is_unitary(u: &AlgebraElement) -> bool {
    let one = AlgebraElement::one(u.n());
    let ustar = u.adjoint();
    (u * &ustar).equals(&one).unwrap_or(false) && (&ustar * u).equals(&one).unwrap_or(false)
}

/// Least `k >= 1` with `u` expressible in bidegrees up to `(k, k)`; for
/// unbalanced unitaries the largest word length in the canonical form.
fn unitary_rank(u: &AlgebraElement) -> usize {
    let canon = u.canonicalize();
    canon
        .terms()
        .keys()
        .map(|m| m.left.len().max(m.right.len()))
        .max()
        .unwrap_or(0)
        .max(1)
}

impl EndomorphismSpec {
    fn build(u: AlgebraElement, rank: usize, origin: Origin, perm: Option<Permutation>) -> Self {
        EndomorphismSpec {
            u,
            rank,
            origin,
            perm,
            cocycles: Arc::new(Mutex::new(Vec::new())),
        }
    }

    /// The permutative endomorphism `ρ_σ`.
    pub fn from_permutation(sigma: Permutation) -> Self {
        let u = perm_unitary(&sigma);
        let rank = sigma.k();
        Self::build(u, rank, Origin::Permutation(sigma.clone()), Some(sigma))
    }

    /// `ρ_u` for a polynomial unitary `u`; fails if `u` is not unitary.
    pub fn from_unitary(u: AlgebraElement) -> Result<Self> {
        if !is_unitary(&u) {
            return Err(Error::NonUnitary);
        }
        let rank = unitary_rank(&u);
        Ok(Self::build(u, rank, Origin::Unitary, None))
    }

    /// The canonical shift `θ`, with `u = Σ_{i,j} s_i s_j s_i^* s_j^*`.
    pub fn shift(n: usize) -> Self {
        let sigma = Permutation::swap(n);
        let mut u = AlgebraElement::zero(n);
        for i in 1..=n as u8 {
            for j in 1..=n as u8 {
                let si = AlgebraElement::generator(n, i);
                let sj = AlgebraElement::generator(n, j);
                let t = &(&(&si * &sj) * &si.adjoint()) * &sj.adjoint();
                u = &u + &t;
            }
        }
        Self::build(u, 2, Origin::Shift, Some(sigma))
    }

    pub fn identity(n: usize) -> Self {
        Self::build(
            AlgebraElement::one(n),
            1,
            Origin::Identity,
            Some(Permutation::identity(n, 1)),
        )
    }

    pub fn u(&self) -> &AlgebraElement {
        &self.u
    }

    pub fn n(&self) -> usize {
        self.u.n()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    pub fn permutation(&self) -> Option<&Permutation> {
        self.perm.as_ref()
    }

    /// Label for reports: cycle notation for permutations.
    pub fn label(&self) -> String {
        match &self.origin {
            Origin::Permutation(p) => p.to_string(),
            Origin::Shift => "shift".into(),
            Origin::Identity => "id".into(),
            Origin::Unitary => format!("u = {}", self.u),
        }
    }

    /// Drops the permutation fast path so every application goes through
    /// the cocycle products.
    pub fn without_fast_path(&self) -> Self {
        let mut e = self.clone();
        e.perm = None;
        e.cocycles = Arc::new(Mutex::new(Vec::new()));
        e
    }

    /// `u_k = u θ(u) ⋯ θ^{k-1}(u)`, with `u_0 = 1`.
    pub fn cocycle(&self, k: usize) -> AlgebraElement {
        if k == 0 {
            return AlgebraElement::one(self.n());
        }
        let mut cache = self.cocycles.lock().expect("cocycle cache poisoned");
        if cache.is_empty() {
            cache.push(self.u.clone());
        }
        while cache.len() < k {
            let j = cache.len();
            let next = &cache[j - 1] * &theta_power(&self.u, j);
            cache.push(next);
        }
        cache[k - 1].clone()
    }

    /// `ρ_u(c s_I s_J^*)`, accumulated into `out`.
    fn apply_monomial_into(&self, m: &Monomial, c: &Scalar, out: &mut AlgebraElement) {
        match &self.perm {
            Some(sigma) => {
                // u_p s_I = Σ_W s_{π_p(IW)} s_W^* with |W| = k - 1, where π_p
                // sweeps σ over the windows p-1, ..., 1, 0.
                let k = sigma.k();
                for tail in Word::all(self.n(), k - 1) {
                    let left = sweep(sigma, m.left.concat(&tail));
                    let right = sweep(sigma, m.right.concat(&tail));
                    out.add_monomial(Monomial::new(left, right), c.clone());
                }
            }
            None => {
                let up = self.cocycle(m.left.len());
                let ul = self.cocycle(m.right.len());
                let mono = AlgebraElement::term(self.n(), m.clone(), c.clone());
                let img = &(&up * &mono) * &ul.adjoint();
                for (mm, cc) in img.terms() {
                    out.add_monomial(mm.clone(), cc.clone());
                }
            }
        }
    }

    /// `ρ_u(a)`, extended linearly from the monomial formula.
    pub fn apply(&self, a: &AlgebraElement) -> AlgebraElement {
        assert_eq!(a.n(), self.n(), "alphabet mismatch");
        let mut out = AlgebraElement::zero(self.n());
        for (m, c) in a.terms() {
            self.apply_monomial_into(m, c, &mut out);
        }
        out
    }

    pub fn apply_monomial(&self, m: &Monomial) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.n());
        self.apply_monomial_into(m, &Scalar::one(), &mut out);
        out
    }

    /// `ρ_u^m(a)`; `m = 0` is the identity.
    pub fn apply_power(&self, m: usize, a: &AlgebraElement) -> AlgebraElement {
        let mut cur = a.clone();
        for _ in 0..m {
            cur = self.apply(&cur);
        }
        cur
    }

    /// True iff `u` lies in the UHF core, i.e. `ρ_u` commutes with the gauge
    /// action.
    pub fn is_gauge_invariant(&self) -> bool {
        self.u
            .normalized()
            .terms()
            .keys()
            .all(|m| m.degree() == 0)
    }

    /// Re-derives the Cuntz relations for the images `ρ(s_i) = u s_i`.
    pub fn verify(&self) -> VerifyReport {
        let n = self.n();
        let one = AlgebraElement::one(n);
        let images: Vec<AlgebraElement> = (1..=n as u8)
            .map(|i| self.apply(&AlgebraElement::generator(n, i)))
            .collect();
        let mut isometries = true;
        let mut orthogonal = true;
        let mut complete = AlgebraElement::zero(n);
        let mut round_trip = AlgebraElement::zero(n);
        for (i, a) in images.iter().enumerate() {
            for (j, b) in images.iter().enumerate() {
                let p = &a.adjoint() * b;
                if i == j {
                    isometries &= p.equals(&one).unwrap_or(false);
                } else {
                    orthogonal &= p.is_zero();
                }
            }
            complete = &complete + &(a * &a.adjoint());
            let si_star = AlgebraElement::generator(n, i as u8 + 1).adjoint();
            round_trip = &round_trip + &(a * &si_star);
        }
        VerifyReport {
            unitary: is_unitary(&self.u),
            isometries,
            orthogonal,
            complete: complete.equals(&one).unwrap_or(false),
            round_trip: round_trip.equals(&self.u).unwrap_or(false),
        }
    }

    /// Checks `ρ^m(A_{p,l}) ⊆ F_{p+m(k-1), l+m(k-1)}` on every basis monomial.
    pub fn range_containment(&self, p: usize, l: usize, m: usize) -> bool {
        let shift = m * (self.rank - 1);
        basis_monomials(self.n(), p, l).all(|mono| {
            let img = self.apply_power(m, &AlgebraElement::term(self.n(), mono, Scalar::one()));
            img.in_f(p + shift, l + shift)
        })
    }

    /// Checks `ρ(A_{p,l}) ⊆ F_{p,l}` for all `1 <= p, l <= max`.
    pub fn preserves_bidegrees(&self, max: usize) -> bool {
        (1..=max).all(|p| {
            (1..=max).all(|l| {
                basis_monomials(self.n(), p, l).all(|mono| {
                    self.apply_monomial(&mono).in_f(p, l)
                })
            })
        })
    }
}

/// Applies `σ` to the windows starting at `len - k, ..., 1, 0`.
fn sweep(sigma: &Permutation, word: Word) -> Word {
    let k = sigma.k();
    let mut letters = word.letters().to_vec();
    if letters.len() >= k {
        for pos in (0..=letters.len() - k).rev() {
            sigma.apply_window(&mut letters, pos);
        }
    }
    Word::from_letters(letters)
}

/// All monomials `s_I s_J^*` with `|I| = p`, `|J| = l`.
pub fn basis_monomials(n: usize, p: usize, l: usize) -> impl Iterator<Item = Monomial> {
    Word::all(n, p).flat_map(move |i| Word::all(n, l).map(move |j| Monomial::new(i.clone(), j)))
}

/// Outcome of [`EndomorphismSpec::verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub unitary: bool,
    pub isometries: bool,
    pub orthogonal: bool,
    pub complete: bool,
    pub round_trip: bool,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.unitary && self.isometries && self.orthogonal && self.complete && self.round_trip
    }
}

/// The rank-2 permutations of `O_2` in the row order of the classical
/// entropy table, as cycle strings over the labels `11, 12, 21, 22 ↦ 1..4`.
pub const RANK2_TABLE_ORDER: [&str; 24] = [
    "id", "(1 2)", "(1 3)", "(1 4)", "(2 3)", "(2 4)", "(3 4)", "(1 2 3)", "(1 3 2)", "(1 2 4)",
    "(1 4 2)", "(1 3 4)", "(1 4 3)", "(2 3 4)", "(2 4 3)", "(1 2 3 4)", "(1 2 4 3)",
    "(1 3 2 4)", "(1 3 4 2)", "(1 4 2 3)", "(1 4 3 2)", "(1 2)(3 4)", "(1 3)(2 4)",
    "(1 4)(2 3)",
];

/// All 24 permutative endomorphisms of `O_2` of rank 2, in table order.
pub fn rank2_permutative() -> Vec<EndomorphismSpec> {
    RANK2_TABLE_ORDER
        .iter()
        .map(|s| {
            EndomorphismSpec::from_permutation(
                Permutation::parse(s, 2, 2).expect("table permutations parse"),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_element;
    use crate::word::w;

    fn spec(cycles: &str) -> EndomorphismSpec {
        EndomorphismSpec::from_permutation(Permutation::parse(cycles, 2, 2).unwrap())
    }

    fn el(s: &str) -> AlgebraElement {
        parse_element(s, 2).unwrap()
    }

    #[test]
    fn theta_basics() {
        assert_eq!(theta(&AlgebraElement::one(2)), AlgebraElement::one(2));
        let t = theta(&el("s[1]"));
        assert_eq!(t.terms(), el("s[11] t[1] + s[21] t[2]").terms());
    }

    #[test]
    fn perm_unitary_of_transposition() {
        let u = perm_unitary(&Permutation::parse("(1 2)", 2, 2).unwrap());
        let expect = el("s[11] t[12] + s[12] t[11] + s[21] t[21] + s[22] t[22]");
        assert_eq!(u.terms(), expect.terms());
        let id = perm_unitary(&Permutation::identity(2, 3));
        assert_eq!(id, AlgebraElement::one(2));
    }

    #[test]
    fn shift_unitary_is_sigma23() {
        let sh = EndomorphismSpec::shift(2);
        assert_eq!(sh.u(), spec("(2 3)").u());
        assert!(sh.verify().all_pass());
        for i in 1..=2u8 {
            let g = AlgebraElement::generator(2, i);
            assert_eq!(sh.apply(&g), theta(&g));
        }
    }

    #[test]
    fn images_of_generators() {
        let psi = spec("(1 2)");
        assert_eq!(psi.apply(&el("s[1]")), el("s[11] t[2] + s[12] t[1]"));
        assert_eq!(psi.apply(&el("s[2]")), el("s[2]"));
        let r13 = spec("(1 3)");
        assert_eq!(
            r13.apply(&el("s[1] t[1]")),
            el("s[12] t[12] + s[21] t[21]")
        );
    }

    #[test]
    fn fast_path_agrees_with_cocycle_products() {
        let samples = [
            "s[1]", "t[2]", "s[12] t[2]", "s[1] t[211]", "s[212] t[12]", "1", "s[22] t[22]",
        ];
        for sigma in RANK2_TABLE_ORDER {
            let fast = spec(sigma);
            let slow = fast.without_fast_path();
            for s in samples {
                let a = el(s);
                assert_eq!(fast.apply(&a), slow.apply(&a), "{sigma} on {s}");
            }
        }
        let sigma = Permutation::parse("(1 5 3)(2 8)", 2, 3).unwrap();
        let fast = EndomorphismSpec::from_permutation(sigma);
        let slow = fast.without_fast_path();
        for s in samples {
            assert_eq!(fast.apply(&el(s)), slow.apply(&el(s)), "rank 3 on {s}");
        }
    }

    #[test]
    fn cocycle_identities() {
        let e = spec("(2 3)");
        assert_eq!(e.cocycle(1), e.u().clone());
        let u2 = e.cocycle(2);
        assert_eq!(u2, e.u() * &theta(e.u()));
        let id = EndomorphismSpec::from_permutation(Permutation::identity(2, 2));
        assert_eq!(id.cocycle(4), AlgebraElement::one(2));
    }

    #[test]
    fn powers() {
        let sh = EndomorphismSpec::shift(2);
        let a = el("s[1] t[1]");
        assert_eq!(sh.apply_power(0, &a).terms(), a.terms());
        let expect = el("s[111] t[111] + s[121] t[121] + s[211] t[211] + s[221] t[221]");
        assert_eq!(sh.apply_power(2, &a), expect);
    }

    #[test]
    fn gauge_invariance() {
        assert!(spec("(1 4 2)").is_gauge_invariant());
        let gauge = EndomorphismSpec::from_unitary(AlgebraElement::scalar(2, Scalar::i())).unwrap();
        assert!(gauge.is_gauge_invariant());
        assert_eq!(gauge.rank(), 1);
        assert!(gauge.verify().all_pass());
        // Terms of degree +1, 0 and -1.
        let u = el("s[11] t[1] + s[12] t[21] + s[2] t[22]");
        let e = EndomorphismSpec::from_unitary(u).unwrap();
        assert!(!e.is_gauge_invariant());
        assert!(e.verify().all_pass());
    }

    #[test]
    fn rejects_non_unitaries() {
        assert!(matches!(
            EndomorphismSpec::from_unitary(el("s[1] t[1]")),
            Err(Error::NonUnitary)
        ));
    }

    #[test]
    fn containments() {
        let psi = spec("(1 2)");
        assert!(psi.range_containment(1, 1, 1));
        let sh = spec("(2 3)");
        assert!(sh.range_containment(2, 2, 2));
        let id = EndomorphismSpec::identity(2);
        assert!(id.range_containment(2, 1, 3));
    }

    #[test]
    fn words_helper() {
        assert_eq!(basis_monomials(2, 1, 2).count(), 8);
        assert_eq!(sweep(&Permutation::swap(2), w("121")), w("112"));
    }
}
