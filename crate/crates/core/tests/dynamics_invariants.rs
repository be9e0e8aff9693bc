use cuntzlab_core::dynamics::{
    entropy_estimate, join_count, required_depth, InducedMap, ProjectionWord, Verdict, DEFAULT_BUDGET,
};
use cuntzlab_core::endomorphism::rank2_permutative;
use cuntzlab_core::{AlgebraElement, EndomorphismSpec, Permutation, Word};

fn flip_code(code: u32, len: usize) -> u32 {
    (1u32 << len) - 1 - code
}

/// `φσφ` for the letter flip `φ: 1 ↔ 2` on words of length 2.
fn flip_conjugate(sigma: &Permutation) -> Permutation {
    let images = (0..4).map(|c| flip_code(sigma.apply_code(flip_code(c, 2)), 2)).collect();
    Permutation::from_images(2, 2, images).unwrap()
}

#[test]
fn letter_flip_conjugates_rows() {
    for e in rank2_permutative() {
        let sigma = e.permutation().unwrap().clone();
        let twin = EndomorphismSpec::from_permutation(flip_conjugate(&sigma));
        let a = InducedMap::standard(&e, 8, DEFAULT_BUDGET).unwrap();
        let b = InducedMap::standard(&twin, 8, DEFAULT_BUDGET).unwrap();
        for q in 1..=8 {
            let len = a.window(q);
            let (ta, tb) = (a.raw_table(q), b.raw_table(q));
            for x in 0..(1u32 << len) {
                assert_eq!(tb[x as usize], flip_code(ta[flip_code(x, len) as usize], q), "{}", e.label());
            }
        }
    }
    let pairs = [("(1 2)", "(3 4)"), ("(1 3 2 4)", "(1 4 2 3)"), ("(1 3)", "(2 4)"), ("(1 2 3)", "(2 4 3)")];
    for (a, b) in pairs {
        let twin = flip_conjugate(&Permutation::parse(a, 2, 2).unwrap());
        assert_eq!(twin, Permutation::parse(b, 2, 2).unwrap(), "{a}");
    }
}

#[test]
fn join_counts_monotone_and_bounded() {
    for e in rank2_permutative() {
        let map = InducedMap::standard(&e, required_depth(2, 3, 10), DEFAULT_BUDGET).unwrap();
        let mut prev_p: Option<Vec<u64>> = None;
        for p in 1..=3 {
            let counts: Vec<u64> = (1..=10).map(|n| join_count(&map, p, n, DEFAULT_BUDGET).unwrap()).collect();
            for (i, w) in counts.windows(2).enumerate() {
                assert!(w[0] <= w[1], "{} p={p} n={}", e.label(), i + 1);
            }
            for (i, &c) in counts.iter().enumerate() {
                assert!(c <= 1 << (p + i), "{}", e.label());
            }
            if let Some(prev) = prev_p {
                assert!(prev.iter().zip(&counts).all(|(a, b)| a <= b), "{}", e.label());
            }
            prev_p = Some(counts);
        }
    }
}

#[test]
fn separating_maps_have_full_entropy() {
    let mut separating = 0;
    for e in rank2_permutative() {
        let map = InducedMap::standard(&e, required_depth(2, 3, 12), DEFAULT_BUDGET).unwrap();
        if map.separation_check(10) {
            separating += 1;
            let s = entropy_estimate(&map, &e.label(), 3, 12, DEFAULT_BUDGET).unwrap();
            assert_eq!(s.verdict, Verdict::Log2, "{}", e.label());
        }
    }
    assert!(separating >= 1);
}

#[test]
fn deep_projection_words_partition_unity() {
    let one = AlgebraElement::one(2);
    for m in 5..=6 {
        let ps: Vec<AlgebraElement> = Word::all(2, m).map(|r| ProjectionWord(r).projection()).collect();
        let mut sum = AlgebraElement::zero(2);
        for p in &ps {
            assert!((p * p).equals(p).unwrap());
            assert!(p.adjoint().equals(p).unwrap());
            sum = &sum + p;
        }
        // Self-adjoint idempotents summing to 1 are mutually orthogonal.
        assert!(sum.equals(&one).unwrap());
        for (i, a) in ps.iter().enumerate().step_by(7) {
            for b in ps.iter().skip(i + 1).step_by(5) {
                assert!((a * b).is_zero());
            }
        }
    }
}
