use cuntzlab_core::matrix::{embed_degree0, lemma1_decompose, operator_norm, psi};
use cuntzlab_core::random::{random_homogeneous, rng};
use cuntzlab_core::parse_element;
use nalgebra::{Complex, DMatrix};

/// `‖X‖ = ‖X^* X‖^{1/2}` with the singular values from nalgebra.
fn svd_norm(x: &cuntzlab_core::AlgebraElement) -> f64 {
    let m = embed_degree0(&(&x.adjoint() * x)).unwrap();
    let rows = m.to_rows();
    let d = rows.len();
    let dm = DMatrix::from_fn(d, d, |r, c| Complex::new(rows[r][c][0], rows[r][c][1]));
    dm.singular_values().max().sqrt()
}

#[test]
fn power_iteration_matches_svd() {
    for text in [
        "1/2 - 1/2 * s[1] t[2] - 1/2 * s[2] t[1] + 1/2 * s[12] t[12]",
        "s[1] t[1] + 0+1i * s[2] t[2]",
        "2 * s[11] t[22] + s[21] t[12] - 1/3 * s[2] t[1]",
        "s[112] t[211] + 3/2 * s[1] t[1]",
    ] {
        let x = parse_element(text, 2).unwrap();
        let a = operator_norm(&x).unwrap();
        let b = svd_norm(&x);
        assert!((a - b).abs() < 1e-8, "{text}: {a} vs {b}");
    }
    let mut r = rng(11);
    for _ in 0..30 {
        let x = random_homogeneous(&mut r, 2, 2, 2, 6);
        if x.is_zero() {
            continue;
        }
        assert!((operator_norm(&x).unwrap() - svd_norm(&x)).abs() < 1e-8);
    }
}

#[test]
fn decomposition_parts_are_contractive() {
    let mut r = rng(3);
    for (p, l) in [(1, 1), (2, 1), (1, 3), (3, 3), (0, 2)] {
        let x = random_homogeneous(&mut r, 2, p, l, 5);
        if x.is_zero() {
            continue;
        }
        let d = lemma1_decompose(&x, 3).unwrap();
        assert!(d.reconstruct().equals(&psi(&x, 3)));
        let nx = svd_norm(&x);
        for t in d.parts.values() {
            assert!(t.spectral_norm().unwrap() <= nx + 1e-9);
        }
    }
}
