use num_complex::Complex64;
use proptest::prelude::*;
use qwsearch::linalg::{
    hermitian_eigendecompose, is_unitary, unitary_exp, ComplexMatrix, HermitianEigen,
};
use qwsearch::rng::SplitMix64;

fn random_hermitian(n: usize, seed: u64) -> ComplexMatrix {
    let mut rng = SplitMix64::new(seed);
    let mut m = ComplexMatrix::zeros(n, n);
    for r in 0..n {
        m[(r, r)] = Complex64::new(2.0 * rng.next_f64() - 1.0, 0.0);
        for c in r + 1..n {
            let z = Complex64::new(2.0 * rng.next_f64() - 1.0, 2.0 * rng.next_f64() - 1.0);
            m[(r, c)] = z;
            m[(c, r)] = z.conj();
        }
    }
    m
}

fn check_decomposition(m: &ComplexMatrix, eig: &HermitianEigen) {
    let n = m.rows();
    let scale = m.max_abs().max(f64::MIN_POSITIVE);
    let norm = m.frobenius_norm();
    for w in eig.eigenvalues.windows(2) {
        assert!(w[0] <= w[1], "eigenvalues not ascending");
    }
    for k in 0..n {
        let v = eig.eigenvectors.column(k);
        let mv = m.mul_vec(&v);
        let residual: f64 = mv
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - b * eig.eigenvalues[k]).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(
            residual <= 1e-10 * norm.max(1e-300),
            "residual {residual} for pair {k}"
        );
    }
    let gram = &eig.eigenvectors.adjoint() * &eig.eigenvectors;
    assert!(gram.max_abs_diff(&ComplexMatrix::identity(n)) <= 1e-10);
    assert!(eig.reconstruct().max_abs_diff(m) <= 1e-10 * scale);
}

/// Truncated Taylor series of `exp(itM)`, used only as an oracle on small inputs.
fn taylor_exp(m: &ComplexMatrix, t: f64) -> ComplexMatrix {
    let n = m.rows();
    let generator = m.scale(Complex64::new(0.0, t));
    let mut term = ComplexMatrix::identity(n);
    let mut sum = ComplexMatrix::identity(n);
    for k in 1..200 {
        term = (&term * &generator).scale(Complex64::new(1.0 / k as f64, 0.0));
        sum = sum.add(&term);
        if term.max_abs() < 1e-18 {
            break;
        }
    }
    sum
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn eigendecomposition_invariants(n in 1usize..24, seed in any::<u64>()) {
        let m = random_hermitian(n, seed);
        let eig = hermitian_eigendecompose(&m).unwrap();
        check_decomposition(&m, &eig);
    }

    #[test]
    fn propagator_inverse_and_group_law(n in 1usize..12, seed in any::<u64>(), s in -3.0f64..3.0, t in -3.0f64..3.0) {
        let m = random_hermitian(n, seed);
        let eig = hermitian_eigendecompose(&m).unwrap();
        let forward = eig.propagator(t);
        let backward = eig.propagator(-t);
        prop_assert!(is_unitary(&forward, 1e-10));
        let id = &forward * &backward;
        prop_assert!(id.max_abs_diff(&ComplexMatrix::identity(n)) <= 1e-10);
        let combined = eig.propagator(s + t);
        let product = &eig.propagator(s) * &forward;
        prop_assert!(combined.max_abs_diff(&product) <= 1e-9);
    }

    #[test]
    fn agrees_with_taylor_series(n in 1usize..=8, seed in any::<u64>(), t in -2.0f64..2.0) {
        let m = random_hermitian(n, seed);
        let spectral = unitary_exp(&m, t).unwrap();
        prop_assert!(spectral.max_abs_diff(&taylor_exp(&m, t)) <= 1e-10);
    }
}

#[test]
fn dimension_200() {
    let m = random_hermitian(200, 2024);
    let eig = hermitian_eigendecompose(&m).unwrap();
    check_decomposition(&m, &eig);
}

#[test]
fn degenerate_spectrum() {
    // J - I on 12 vertices: eigenvalue -1 with multiplicity 11.
    let n = 12;
    let m = ComplexMatrix::from_fn(n, n, |r, c| {
        Complex64::new(if r == c { 0.0 } else { 1.0 }, 0.0)
    });
    let eig = hermitian_eigendecompose(&m).unwrap();
    check_decomposition(&m, &eig);
    assert!(eig.eigenvalues[..n - 1]
        .iter()
        .all(|l| (l + 1.0).abs() < 1e-12));
    assert!((eig.eigenvalues[n - 1] - (n - 1) as f64).abs() < 1e-12);
}

#[test]
fn widely_scaled_entries() {
    let m = ComplexMatrix::from_real_rows(&[[1e6, 1e-3, 0.0], [1e-3, 2.0, 1.0], [0.0, 1.0, -1e-6]]);
    let eig = hermitian_eigendecompose(&m).unwrap();
    check_decomposition(&m, &eig);
}
