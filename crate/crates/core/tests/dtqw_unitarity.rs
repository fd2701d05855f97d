use num_complex::Complex64;
use proptest::prelude::*;
use qwsearch::ctqw::{search_hamiltonian, uniform_vertex_state, Propagation};
use qwsearch::dtqw::{
    apply_coin, coin_matrix, dtqw_evolve, evolution_matrix, shift, uniform_arc_state, Coin,
    CoinSpec, DtqwState,
};
use qwsearch::graph::{arc_space, gnp_random_graph, Graph};
use qwsearch::linalg::{is_unitary, max_abs_diff, ComplexMatrix};
use qwsearch::rng::SplitMix64;

fn random_spec(n: usize, seed: u64) -> CoinSpec {
    let mut rng = SplitMix64::new(seed);
    let coins = (0..n)
        .map(|_| {
            if rng.below(5) == 0 {
                Coin::MarkedNegativeIdentity
            } else {
                let a = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * rng.next_f64());
                let b = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * rng.next_f64());
                Coin::grover_type(a, b).unwrap()
            }
        })
        .collect();
    CoinSpec::new(coins).unwrap()
}

/// Random graph without isolated vertices and at most 200 arcs; the edge
/// density is lowered on each retry.
fn small_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut p = p;
    let mut s = seed;
    loop {
        let mut edges = gnp_random_graph(n, p, s).unwrap().edges().to_vec();
        // Attach any isolated vertex to its successor.
        for v in 0..n {
            if !edges.iter().any(|&(a, b)| a == v || b == v) {
                let e = (v.min((v + 1) % n), v.max((v + 1) % n));
                if !edges.contains(&e) {
                    edges.push(e);
                }
            }
        }
        let g = Graph::new(n, edges).unwrap();
        if g.edge_count() <= 100 {
            return g;
        }
        p *= 0.9;
        s = s.wrapping_add(1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn assembled_operator_is_unitary(n in 2usize..=20, p in 0.15f64..0.8, seed in any::<u64>()) {
        let g = small_graph(n, p, seed);
        let arcs = arc_space(&g);
        prop_assert!(arcs.len() <= 200);
        let spec = random_spec(n, seed ^ 0x5eed);
        let u = evolution_matrix(&arcs, &spec).unwrap();
        prop_assert!(is_unitary(&u, 1e-10));

        // U agrees with the matrix-free step on every basis vector.
        for i in (0..arcs.len()).step_by(7) {
            let e = DtqwState::basis(&arcs, i);
            let stepped = shift(&apply_coin(&e, &spec));
            prop_assert!(max_abs_diff(stepped.amplitudes(), &u.column(i)) < 1e-14);
        }

        let start = uniform_arc_state(&arcs).unwrap();
        let trajectory = dtqw_evolve(&start, &spec, 30);
        for s in &trajectory {
            prop_assert!((s.norm_sqr() - 1.0).abs() <= 1e-12);
            let total: f64 = s.vertex_distribution().iter().sum();
            prop_assert!((total - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn shift_is_an_involution(n in 2usize..=20, p in 0.15f64..0.8, seed in any::<u64>()) {
        let g = small_graph(n, p, seed);
        let arcs = arc_space(&g);
        let mut rng = SplitMix64::new(seed);
        let raw: Vec<Complex64> = (0..arcs.len())
            .map(|_| Complex64::new(rng.next_f64() - 0.5, rng.next_f64() - 0.5))
            .collect();
        let norm = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let state = DtqwState::new(&arcs, raw.iter().map(|z| z / norm).collect()).unwrap();
        let twice = shift(&shift(&state));
        prop_assert_eq!(twice.amplitudes(), state.amplitudes());
    }

    #[test]
    fn ctqw_conserves_probability(n in 2usize..=24, p in 0.2f64..0.9, seed in any::<u64>(), gamma in 0.01f64..2.0) {
        let g = gnp_random_graph(n, p, seed).unwrap();
        let h = search_hamiltonian(&g, 0, gamma).unwrap();
        let start = uniform_vertex_state(n).unwrap();
        let prop = Propagation::new(&h.matrix, start.amplitudes()).unwrap();
        for i in 0..20 {
            let t = 0.5 * i as f64;
            let total: f64 = prop.state_at(t).iter().map(|z| z.norm_sqr()).sum();
            prop_assert!((total - 1.0).abs() <= 1e-12, "t={} total={}", t, total);
        }
    }
}

#[test]
fn grover_type_coin_is_unitary() {
    let mut rng = SplitMix64::new(11);
    for d in 1..=12 {
        let a = Complex64::from_polar(1.0, 6.0 * rng.next_f64());
        let b = Complex64::from_polar(1.0, 6.0 * rng.next_f64());
        let c = coin_matrix(d, a, b).unwrap();
        assert!(is_unitary(&c, 1e-12));
        // Eigenvalue λ1 on the uniform vector.
        let uniform = vec![Complex64::new(1.0, 0.0); d];
        let image = c.mul_vec(&uniform);
        assert!(image.iter().all(|z| (z - a).norm() < 1e-14));
    }
    let grover = coin_matrix(3, Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)).unwrap();
    let expected = ComplexMatrix::from_real_rows(&[
        [-1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0],
        [2.0 / 3.0, -1.0 / 3.0, 2.0 / 3.0],
        [2.0 / 3.0, 2.0 / 3.0, -1.0 / 3.0],
    ]);
    assert!(grover.max_abs_diff(&expected) < 1e-15);
    assert!(coin_matrix(2, Complex64::new(1.1, 0.0), Complex64::new(1.0, 0.0)).is_err());
    assert!(coin_matrix(0, Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)).is_err());
}
