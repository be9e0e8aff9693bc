//! Named property suites, shared by the `verify` command and the tests.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::dynamics::{
    e_projection, ef_block_map, f_projection, flip_unitary, oracle_equivalence, oracle_pairings,
    select_case2, InducedMap, OracleId, ProjectionWord,
};
use crate::element::{AlgebraElement, Monomial};
use crate::endomorphism::{
    basis_monomials, rank2_permutative, theta, theta_power, EndomorphismSpec, RANK2_TABLE_ORDER,
};
use crate::error::{Error, Result};
use crate::matrix::{lemma1_decompose, operator_norm, psi};
use crate::permutation::Permutation;
use crate::random::{random_element, random_homogeneous, rng};
use crate::scalar::Scalar;
use crate::text::parse_element;
use crate::word::Word;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Relations,
    Lemma1,
    Lemma2,
    Cocycle,
    PsiFormulas,
    TraceInvariance,
    Oracles,
    Ef,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Relations,
        Suite::Lemma1,
        Suite::Lemma2,
        Suite::Cocycle,
        Suite::PsiFormulas,
        Suite::TraceInvariance,
        Suite::Oracles,
        Suite::Ef,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::Lemma1 => "lemma1",
            Suite::Lemma2 => "lemma2",
            Suite::Cocycle => "cocycle",
            Suite::PsiFormulas => "psi-formulas",
            Suite::TraceInvariance => "trace-invariance",
            Suite::Oracles => "oracles",
            Suite::Ef => "ef",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown suite '{s}'")))
    }
}

struct Collector(Vec<Check>);

impl Collector {
    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }
}

pub fn run_suite(suite: Suite, seed: u64) -> Result<SuiteReport> {
    let mut c = Collector(Vec::new());
    match suite {
        Suite::Relations => relations(&mut c, seed)?,
        Suite::Lemma1 => lemma1(&mut c, seed)?,
        Suite::Lemma2 => lemma2(&mut c)?,
        Suite::Cocycle => cocycle(&mut c, seed)?,
        Suite::PsiFormulas => psi_formulas(&mut c)?,
        Suite::TraceInvariance => trace_invariance(&mut c, seed)?,
        Suite::Oracles => oracles(&mut c)?,
        Suite::Ef => ef(&mut c)?,
    }
    Ok(SuiteReport {
        suite: suite.name().into(),
        seed,
        passed: c.0.iter().all(|x| x.passed),
        checks: c.0,
    })
}

/// Product of `s_{I_1} s_{J_1}^*` and `s_{I_2} s_{J_2}^*` by rewriting the
/// letter string `I_1 J_1^* I_2 J_2^*` with `s_i^* s_j → δ_ij` one step at a
/// time. Independent of [`Monomial::mul`].
pub fn rewrite_product(a: &Monomial, b: &Monomial) -> Option<Monomial> {
    // (letter, starred)
    let mut tokens: Vec<(u8, bool)> = Vec::new();
    let push = |tokens: &mut Vec<(u8, bool)>, m: &Monomial| {
        tokens.extend(m.left.letters().iter().map(|&l| (l, false)));
        tokens.extend(m.right.letters().iter().rev().map(|&l| (l, true)));
    };
    push(&mut tokens, a);
    push(&mut tokens, b);
    while let Some(pos) = tokens.windows(2).position(|w| w[0].1 && !w[1].1) {
        if tokens[pos].0 != tokens[pos + 1].0 {
            return None;
        }
        tokens.drain(pos..pos + 2);
    }
    let left: Vec<u8> = tokens.iter().filter(|t| !t.1).map(|t| t.0).collect();
    let right: Vec<u8> = tokens.iter().filter(|t| t.1).rev().map(|t| t.0).collect();
    Some(Monomial::new(Word::from_letters(left), Word::from_letters(right)))
}

/// All monomials `s_I s_J^*` with `|I|, |J| <= max_len`.
pub fn small_monomials(n: usize, max_len: usize) -> Vec<Monomial> {
    let words: Vec<Word> = (0..=max_len).flat_map(|l| Word::all(n, l)).collect();
    words
        .iter()
        .flat_map(|i| words.iter().map(move |j| Monomial::new(i.clone(), j.clone())))
        .collect()
}

fn relations(c: &mut Collector, seed: u64) -> Result<()> {
    for n in 2..=4usize {
        let one = AlgebraElement::one(n);
        let mut ok = true;
        let mut sum = AlgebraElement::zero(n);
        for i in 1..=n as u8 {
            let si = AlgebraElement::generator(n, i);
            for j in 1..=n as u8 {
                let sj = AlgebraElement::generator(n, j);
                let expect = if i == j { one.clone() } else { AlgebraElement::zero(n) };
                ok &= (&si.adjoint() * &sj).equals(&expect)?;
            }
            sum = &sum + &(&si * &si.adjoint());
        }
        ok &= sum.equals(&one)?;
        c.check(format!("cuntz relations N={n}"), ok, "");
    }
    let mut r = rng(seed);
    let (mut assoc, mut dist, mut anti, mut level, mut canon, mut trace) = (0, 0, 0, 0, 0, 0);
    let cases = 200;
    for _ in 0..cases {
        let a = random_element(&mut r, 2, 6, 4);
        let b = random_element(&mut r, 2, 6, 4);
        let d = random_element(&mut r, 2, 6, 4);
        assoc += !(&(&a * &b) * &d).equals(&(&a * &(&b * &d)))? as usize;
        dist += !(&a * &(&b + &d)).equals(&(&(&a * &b) + &(&a * &d)))? as usize;
        anti += !(&a * &b).adjoint().equals(&(&b.adjoint() * &a.adjoint()))? as usize;
        let mut targets = a.max_right_lengths();
        targets.values_mut().for_each(|t| *t += 1);
        level += !a.level(&targets)?.equals(&a)? as usize;
        let ca = a.canonicalize();
        canon += !(ca.equals(&a)? && ca.canonicalize().terms() == ca.terms()) as usize;
        let t = (&a * &a.adjoint()).trace_state();
        trace += !(t.is_real() && *t.re() >= num_rational::BigRational::from_integer(0.into())) as usize;
    }
    for (name, fails) in [
        ("associativity", assoc),
        ("distributivity", dist),
        ("adjoint anti-multiplicative", anti),
        ("leveling preserves equality", level),
        ("canonicalize idempotent and exact", canon),
        ("trace positivity", trace),
    ] {
        c.check(name, fails == 0, format!("{fails} failures in {cases} random cases"));
    }
    let monos = small_monomials(2, 3);
    let mut fails = 0usize;
    for a in &monos {
        for b in &monos {
            fails += (a.mul(b) != rewrite_product(a, b)) as usize;
        }
    }
    c.check(
        "monomial products vs word rewriting",
        fails == 0,
        format!("{fails} disagreements over {} pairs", monos.len() * monos.len()),
    );
    Ok(())
}

/// Largest `‖T_J‖ / ‖X‖` and reconstruction failures over `cases` random
/// `X ∈ F_{p,l}`, `p, l <= 3`, `N = 2`, `k = 3`.
pub fn lemma1_sample(seed: u64, cases: usize) -> Result<(f64, usize, f64)> {
    let mut r = rng(seed);
    let (mut worst, mut rebuild_fail, mut worst_excess) = (0.0f64, 0usize, f64::NEG_INFINITY);
    use rand::Rng;
    let mut done = 0;
    while done < cases {
        let p = r.random_range(0..=3);
        let l = r.random_range(0..=3);
        let terms = r.random_range(1..=5);
        let x = random_homogeneous(&mut r, 2, p, l, terms);
        if x.is_zero() {
            continue;
        }
        done += 1;
        let d = lemma1_decompose(&x, 3)?;
        rebuild_fail += !d.reconstruct().equals(&psi(&x, 3)) as usize;
        let nx = operator_norm(&x)?;
        for t in d.parts.values() {
            let nt = t.spectral_norm()?;
            worst = worst.max(nt / nx);
            worst_excess = worst_excess.max(nt - nx);
        }
    }
    Ok((worst, rebuild_fail, worst_excess))
}

fn lemma1(c: &mut Collector, seed: u64) -> Result<()> {
    let (worst, rebuild, excess) = lemma1_sample(seed, 100)?;
    c.check("reconstruction Σ T_J ⊗ s_J = Ψ_3(X)", rebuild == 0, format!("{rebuild} failures in 100"));
    c.check(
        "‖T_J‖ <= ‖X‖ + 1e-9",
        excess <= 1e-9,
        format!("max ‖T_J‖/‖X‖ = {worst:.12}"),
    );
    Ok(())
}

/// The image of a basis monomial of `A_{p,l}` under `ρ_σ^m` is a sum of
/// `N^{m(k-1)}` distinct monomials of `A_{p+m(k-1), l+m(k-1)}`, each with
/// coefficient one.
pub fn permutative_image_shape(e: &EndomorphismSpec, m: usize, mono: &Monomial) -> bool {
    let shift = m * (e.rank() - 1);
    let img = e.apply_power(m, &AlgebraElement::term(e.n(), mono.clone(), Scalar::from_int(1)));
    let expect = e.n().pow(shift as u32);
    img.len() == expect
        && img.terms().iter().all(|(t, c)| {
            t.left.len() == mono.left.len() + shift
                && t.right.len() == mono.right.len() + shift
                && *c == Scalar::from_int(1)
        })
}

fn lemma2(c: &mut Collector) -> Result<()> {
    let mut fails = Vec::new();
    for e in rank2_permutative() {
        for m in 1..=3 {
            for p in 1..=3 {
                if !e.range_containment(p, p, m) {
                    fails.push(format!("{} m={m} p=l={p}", e.label()));
                }
            }
        }
    }
    c.check(
        "ρ^m(F_{p,p}) ⊆ F_{p+m,p+m}, 24 permutations, m,p <= 3",
        fails.is_empty(),
        fails.join("; "),
    );
    let mut bad = 0usize;
    for e in rank2_permutative() {
        for m in 1..=3 {
            for p in 1..=3 {
                bad += basis_monomials(2, p, p).filter(|x| !permutative_image_shape(&e, m, x)).count();
            }
        }
    }
    c.check(
        "ρ^m(s_I s_J^*) is a sum of 2^m distinct monomials of A_{p+m,p+m}",
        bad == 0,
        format!("{bad} basis monomials with another shape"),
    );
    let u = parse_element("1/2+1/2i + 1/2-1/2i * s[1] t[2] + 1/2-1/2i * s[2] t[1]", 2)?;
    let mixing = EndomorphismSpec::from_unitary(u)?;
    let sigma3 = EndomorphismSpec::from_permutation(Permutation::parse("(1 5 3)(2 8)", 2, 3)?);
    let ok = (1..=2).all(|m| (0..=2).all(|p| (0..=2).all(|l| mixing.range_containment(p, l, m))))
        && (1..=2).all(|m| (1..=2).all(|p| sigma3.range_containment(p, p, m)));
    c.check("ρ_u^m(F_{p,l}) ⊆ F_{p+m(k-1),l+m(k-1)} for a rank-1 unitary and a rank-3 permutation", ok, "");
    let autos: Vec<bool> = ["id", "(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)"]
        .iter()
        .map(|s| Ok(spec(s)?.preserves_bidegrees(4)))
        .collect::<Result<_>>()?;
    c.check(
        "automorphism rows preserve every F_{p,l}, p,l <= 4",
        autos.iter().all(|&b| b),
        format!("{autos:?}"),
    );
    Ok(())
}

fn spec(cycles: &str) -> Result<EndomorphismSpec> {
    Ok(EndomorphismSpec::from_permutation(Permutation::parse(cycles, 2, 2)?))
}

fn sample_specs() -> Result<Vec<EndomorphismSpec>> {
    let mut out = rank2_permutative();
    out.push(EndomorphismSpec::shift(2));
    out.push(EndomorphismSpec::from_unitary(AlgebraElement::scalar(2, Scalar::i()))?);
    out.push(EndomorphismSpec::from_unitary(parse_element(
        "1/2+1/2i + 1/2-1/2i * s[1] t[2] + 1/2-1/2i * s[2] t[1]",
        2,
    )?)?);
    out.push(EndomorphismSpec::from_unitary(parse_element(
        "s[11] t[1] + s[12] t[21] + s[2] t[22]",
        2,
    )?)?);
    Ok(out)
}

fn cocycle(c: &mut Collector, seed: u64) -> Result<()> {
    let specs = sample_specs()?;
    let mut ident = Vec::new();
    let mut trip = Vec::new();
    for e in &specs {
        for k in 0..=4 {
            let lhs = e.cocycle(k + 1);
            let rhs = &e.cocycle(k) * &theta_power(e.u(), k);
            if !lhs.equals(&rhs)? {
                ident.push(format!("{} k={k}", e.label()));
            }
        }
        if !e.verify().all_pass() {
            trip.push(e.label());
        }
    }
    c.check("u_{k+1} = u_k θ^k(u), k <= 4", ident.is_empty(), ident.join("; "));
    c.check("ρ(s_i) satisfy the Cuntz relations and Σ ρ(s_i) s_i^* = u", trip.is_empty(), trip.join("; "));
    let mut r = rng(seed);
    let mut hom = 0usize;
    let mut fast = 0usize;
    for e in &specs {
        for _ in 0..10 {
            let a = random_element(&mut r, 2, 4, 3);
            let b = random_element(&mut r, 2, 4, 3);
            let ok = e.apply(&(&a * &b)).equals(&(&e.apply(&a) * &e.apply(&b)))?
                && e.apply(&a.adjoint()).equals(&e.apply(&a).adjoint())?;
            hom += !ok as usize;
            if e.permutation().is_some() {
                fast += !e.apply(&a).equals(&e.without_fast_path().apply(&a))? as usize;
            }
        }
    }
    c.check("apply is a *-homomorphism on random pairs", hom == 0, format!("{hom} failures"));
    c.check("word-level and cocycle routes agree", fast == 0, format!("{fast} failures"));
    Ok(())
}

/// `ψ(s_1^n) = s_1 s_2^n s_1^* + s_1 s_2^{n-1} s_1 s_2^*`.
pub fn psi_power_expected(n: usize) -> AlgebraElement {
    let twos = |m: usize| Word::from_letters(vec![2; m]);
    let one = Word::from_letters(vec![1]);
    let two = Word::from_letters(vec![2]);
    let mut a = AlgebraElement::zero(2);
    a.add_monomial(Monomial::new(one.concat(&twos(n)), one.clone()), Scalar::from_int(1));
    a.add_monomial(
        Monomial::new(one.concat(&twos(n - 1)).concat(&one), two),
        Scalar::from_int(1),
    );
    a
}

fn psi_formulas(c: &mut Collector) -> Result<()> {
    let psi = spec("(1 2)")?;
    let bad: Vec<usize> = (1..=10)
        .filter(|&n| {
            let s1n = AlgebraElement::s(2, Word::from_letters(vec![1; n]));
            !psi.apply(&s1n).equals(&psi_power_expected(n)).unwrap_or(false)
        })
        .collect();
    c.check("ψ(s_1^n) closed form, n <= 10", bad.is_empty(), format!("{bad:?}"));
    let x = flip_unitary();
    let psi_x = psi.apply(&x);
    let bad: Vec<usize> = (0..=6)
        .filter(|&k| {
            !theta_power(&psi_x, k)
                .equals(&psi.apply(&theta_power(&x, k)))
                .unwrap_or(false)
        })
        .collect();
    c.check("θ^k(ψ(X)) = ψ(θ^k(X)), k <= 6", bad.is_empty(), format!("{bad:?}"));
    let prime = spec("(1 3 2 4)")?;
    let s = |i| AlgebraElement::generator(2, i);
    let ok = prime.apply(&s(1)).equals(&psi.apply(&s(2)))? && prime.apply(&s(2)).equals(&psi.apply(&s(1)))?;
    c.check("ψ'(s_1) = ψ(s_2), ψ'(s_2) = ψ(s_1)", ok, "");
    let r = spec("(1 4)(2 3)")?;
    let mut bad = 0usize;
    for m in small_monomials(2, 3) {
        let a = AlgebraElement::term(2, m, Scalar::from_int(1));
        bad += !r.apply(&a).equals(&(&(&x * &a) * &x.adjoint()))? as usize;
    }
    c.check("ρ_(14)(23) = Ad(s_1 s_2^* + s_2 s_1^*) up to bidegree (3,3)", bad == 0, format!("{bad} failures"));
    let e = e_projection();
    let f = f_projection();
    let expect = &(&e * &theta(&e)) + &(&f * &theta(&f));
    c.check("ψ(E) = E ⊗ E + F ⊗ F", psi.apply(&e).equals(&expect)?, "");
    Ok(())
}

fn trace_invariance(c: &mut Collector, seed: u64) -> Result<()> {
    let monos = small_monomials(2, 3);
    let mut bad = Vec::new();
    for e in rank2_permutative() {
        let fails = monos
            .iter()
            .filter(|m| {
                let a = AlgebraElement::term(2, (*m).clone(), Scalar::from_int(1));
                e.apply(&a).trace_state() != a.trace_state()
            })
            .count();
        if fails > 0 {
            bad.push(format!("{}: {fails}", e.label()));
        }
    }
    c.check(
        "τ∘𝔼∘ρ_σ = τ∘𝔼 on all monomials |I|,|J| <= 3, 24 permutations",
        bad.is_empty(),
        bad.join("; "),
    );
    let gauge = EndomorphismSpec::from_unitary(AlgebraElement::scalar(2, Scalar::i()))?;
    let mut r = rng(seed);
    let fails = (0..50)
        .filter(|_| {
            let a = random_element(&mut r, 2, 6, 4);
            gauge.apply(&a).trace_state() != a.trace_state()
        })
        .count();
    c.check("gauge-invariant unitary preserves τ∘𝔼 on random elements", fails == 0, format!("{fails} failures"));
    Ok(())
}

/// Runs every pairing at `depth`; returns (label, oracle, passed).
pub fn oracle_suite(depth: usize) -> Result<Vec<(String, OracleId, bool)>> {
    oracle_pairings()
        .into_iter()
        .map(|(cycles, o)| {
            let e = spec(cycles)?;
            let o = o
                .or_else(|| select_case2(&e))
                .ok_or_else(|| Error::Invalid(format!("{cycles}: ρ(s_1 s_1^*) fits neither case")))?;
            Ok((e.label(), o, oracle_equivalence(&e, o, depth)?))
        })
        .collect()
}

fn oracles(c: &mut Collector) -> Result<()> {
    for (label, o, ok) in oracle_suite(12)? {
        c.check(format!("{label} ~ {o} at depth 12"), ok, "");
    }
    Ok(())
}

fn ef(c: &mut Collector) -> Result<()> {
    for m in 1..=4 {
        let ps: Vec<AlgebraElement> = Word::all(2, m).map(|r| ProjectionWord(r).projection()).collect();
        let mut ok = true;
        let mut sum = AlgebraElement::zero(2);
        for (i, a) in ps.iter().enumerate() {
            ok &= (a * a).equals(a)? && a.adjoint().equals(a)?;
            for b in &ps[i + 1..] {
                ok &= (a * b).is_zero();
            }
            sum = &sum + a;
        }
        ok &= sum.equals(&AlgebraElement::one(2))?;
        c.check(format!("P_q at depth {m}: orthogonal projections summing to 1"), ok, "");
    }
    for cycles in ["(1 2)", "(1 3 2 4)"] {
        let map = InducedMap::ef(&spec(cycles)?, 10, u64::MAX)?;
        c.check(format!("{cycles} on C_EF ~ tEF at depth 10"), map.matches_oracle(OracleId::TEF, 10), "");
    }
    for cycles in ["(1 2)", "(3 4)", "(1 3 2 4)", "(1 4 2 3)"] {
        let e = spec(cycles)?;
        let fast = InducedMap::ef(&e, 3, u64::MAX)?;
        let ok = (1..=3).all(|p| ef_block_map(&e, p).map(|t| t == fast.table(p)).unwrap_or(false));
        c.check(format!("{cycles}: projection route = Hadamard route, p <= 3"), ok, "");
    }
    let _ = RANK2_TABLE_ORDER;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    #[test]
    fn rewriting_examples() {
        let m = |a: &str, b: &str| Monomial::new(w(a), w(b));
        assert_eq!(rewrite_product(&m("1", "2"), &m("2", "1")), Some(m("1", "1")));
        assert_eq!(rewrite_product(&m("", "1"), &m("2", "")), None);
        assert_eq!(rewrite_product(&m("1", "12"), &m("1", "")), Some(m("1", "2")));
        assert_eq!(rewrite_product(&m("", "1"), &m("122", "")), Some(m("22", "")));
    }

    #[test]
    fn suites_parse() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
    }

    #[test]
    fn psi_power_small() {
        assert_eq!(
            psi_power_expected(1),
            parse_element("s[12] t[1] + s[11] t[2]", 2).unwrap()
        );
    }
}
