//! Acceptance report: one line per criterion, non-zero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use qwsearch::ctqw::{
    ctqw_evolve, ctqw_search_series, search_hamiltonian, uniform_vertex_state, CtqwState,
    Propagation,
};
use qwsearch::dtqw::{
    dtqw_evolve, dtqw_search_series, evolution_matrix, hadamard_walk_line, kolmogorov_distance,
    search_coin_spec, uniform_arc_state, Coin, CoinSpec, DtqwStepper,
};
use qwsearch::graph::{
    adjacency_matrix, apex_join, arc_space, complete_graph, cycle_graph, gnp_random_graph,
    hypercube_graph, paper_example_graph, random_regular_graph, Graph,
};
use qwsearch::linalg::{is_unitary, max_abs_diff, norm_sqr};
use qwsearch::partition::{coarsest_equitable_partition, validate_equitable};
use qwsearch::reduction::{
    apex_closed_form, apex_search_time, project_dtqw, reduced_ctqw_search_series,
    reduced_dtqw_search_series, ReducedCtqwSearch, ReducedDtqwSearch,
};
use qwsearch::rng::SplitMix64;
use qwsearch::scan::{default_ctqw_horizon, scan_ctqw};
use qwsearch::series::time_grid;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn within_budget(start: Instant, budget: Duration, detail: String) -> Outcome {
    let spent = start.elapsed();
    check(
        spent < budget,
        format!(
            "{detail}; {:.3}s of {:.0}s budget",
            spent.as_secs_f64(),
            budget.as_secs_f64()
        ),
    )
}

/// K8, Q4, the worked example graph, and an apex over a random cubic graph,
/// each with the value of `d` used for `γ = 1/d`.
fn equivalence_fixtures() -> Vec<(&'static str, Graph, usize)> {
    vec![
        ("K8", complete_graph(8).unwrap(), 6),
        ("Q4", hypercube_graph(4).unwrap(), 4),
        ("example", paper_example_graph(), 3),
        (
            "apex-rr10",
            apex_join(&random_regular_graph(10, 3, 7).unwrap()).unwrap(),
            3,
        ),
    ]
}

fn k2_worked_example() -> Outcome {
    let start = Instant::now();
    let a = adjacency_matrix(&complete_graph(2).unwrap());
    let psi0 = CtqwState::basis(2, 0);
    let mut worst = 0.0_f64;
    for i in 0..=63 {
        let t = 0.1 * i as f64;
        let s = ctqw_evolve(&a, t, &psi0).map_err(|e| e.to_string())?;
        worst = worst
            .max((s.vertex_probability(0) - t.cos().powi(2)).abs())
            .max((s.vertex_probability(1) - t.sin().powi(2)).abs());
    }
    if worst > 1e-10 {
        return Err(format!("max error {worst:.3e} > 1e-10"));
    }
    within_budget(
        start,
        Duration::from_secs(1),
        format!("max error {worst:.3e}"),
    )
}

fn apex_cycle_closed_form() -> Outcome {
    let start = Instant::now();
    let g = apex_join(&cycle_graph(8).unwrap()).unwrap();
    let big_t = apex_search_time(9, 2).unwrap();
    let expected_t = std::f64::consts::PI / 8f64.sqrt();
    if (big_t - expected_t).abs() > 1e-15 {
        return Err(format!("search time {big_t} != π/√8"));
    }
    let times = time_grid(4.0 * big_t, 200);
    let series = ctqw_search_series(&g, 0, 0.5, &times).map_err(|e| e.to_string())?;
    let mut worst = 0.0_f64;
    for s in &series.samples {
        worst = worst.max((s.probability - apex_closed_form(9, 2, s.at).unwrap()).abs());
    }
    let at_t = ctqw_search_series(&g, 0, 0.5, &[big_t]).unwrap().samples[0].probability;
    let peak_err = (at_t - 8.0 / 9.0).abs();
    if worst > 1e-8 || peak_err > 1e-8 {
        return Err(format!(
            "curve error {worst:.3e}, P(T) error {peak_err:.3e}"
        ));
    }
    within_budget(
        start,
        Duration::from_secs(1),
        format!("curve error {worst:.3e}, P(T)={at_t:.12}"),
    )
}

fn complete_64_closed_form() -> Outcome {
    let start = Instant::now();
    let n = 64;
    let d = 62;
    let gamma = 1.0 / 62.0;
    let g = complete_graph(n).unwrap();
    let big_t = apex_search_time(n, d).unwrap();
    let times = time_grid(4.0 * big_t, 200);
    let full = ctqw_search_series(&g, 0, gamma, &times).map_err(|e| e.to_string())?;
    let reduced = reduced_ctqw_search_series(&g, 0, gamma, &times).map_err(|e| e.to_string())?;
    if reduced.metadata.dimension != 2 {
        return Err(format!("reduced dimension {}", reduced.metadata.dimension));
    }
    let (mut full_err, mut red_err) = (0.0_f64, 0.0_f64);
    for (f, r) in full.samples.iter().zip(&reduced.samples) {
        let closed = apex_closed_form(n, d, f.at).unwrap();
        full_err = full_err.max((f.probability - closed).abs());
        red_err = red_err.max((r.probability - closed).abs());
    }
    let at_t = ctqw_search_series(&g, 0, gamma, &[big_t]).unwrap().samples[0].probability;
    let peak_err = (at_t - (1.0 - 1.0 / 64.0)).abs();
    let detail = format!("full {full_err:.3e}, reduced {red_err:.3e}, P(T) error {peak_err:.3e}");
    if full_err > 1e-8 || red_err > 1e-10 || peak_err > 1e-8 {
        return Err(detail);
    }
    within_budget(start, Duration::from_secs(5), detail)
}

fn dtqw_equivalence() -> Outcome {
    let start = Instant::now();
    let mut worst_state = 0.0_f64;
    let mut worst_prob = 0.0_f64;
    for (name, g, _) in equivalence_fixtures() {
        let arcs = arc_space(&g);
        let spec = search_coin_spec(&g, 0).map_err(|e| e.to_string())?;
        let psi0 = uniform_arc_state(&arcs).map_err(|e| e.to_string())?;
        let mut full = DtqwStepper::new(&psi0, &spec);
        let mut reduced = ReducedDtqwSearch::new(&g, 0).map_err(|e| e.to_string())?;
        for step in 1..=50 {
            full.step();
            reduced.step();
            let projected =
                project_dtqw(&reduced.partition, &reduced.operator.basis, &full.state());
            let e = max_abs_diff(&projected, &reduced.state);
            let p = (full.vertex_probability(0) - reduced.marked_probability()).abs();
            worst_state = worst_state.max(e);
            worst_prob = worst_prob.max(p);
            if e > 1e-10 || p > 1e-10 {
                return Err(format!(
                    "{name} step {step}: state {e:.3e}, probability {p:.3e}"
                ));
            }
        }
    }
    within_budget(
        start,
        Duration::from_secs(10),
        format!("state {worst_state:.3e}, probability {worst_prob:.3e}"),
    )
}

fn ctqw_equivalence() -> Outcome {
    let start = Instant::now();
    let times = time_grid(10.0, 50);
    let mut worst = 0.0_f64;
    for (name, g, d) in equivalence_fixtures() {
        for gamma in [0.1, 1.0 / d as f64] {
            let full = ctqw_search_series(&g, 0, gamma, &times).map_err(|e| e.to_string())?;
            let reduced =
                reduced_ctqw_search_series(&g, 0, gamma, &times).map_err(|e| e.to_string())?;
            let e = full.max_discrepancy(&reduced);
            worst = worst.max(e);
            if e > 1e-9 {
                return Err(format!("{name} gamma={gamma}: {e:.3e}"));
            }
        }
    }
    within_budget(
        start,
        Duration::from_secs(10),
        format!("max discrepancy {worst:.3e}"),
    )
}

fn unitarity_and_conservation() -> Outcome {
    let mut rng = SplitMix64::new(0xacce97);
    let mut graphs = 0;
    let mut worst_norm = 0.0_f64;
    while graphs < 40 {
        let n = 2 + rng.below(19) as usize;
        let g = gnp_random_graph(n, 0.2 + 0.6 * rng.next_f64(), rng.next_u64()).unwrap();
        if (0..n).any(|v| g.degree(v) == 0) || 2 * g.edge_count() > 200 {
            continue;
        }
        graphs += 1;
        let coins = (0..n)
            .map(|_| {
                let a = Complex64::from_polar(1.0, std::f64::consts::TAU * rng.next_f64());
                let b = Complex64::from_polar(1.0, std::f64::consts::TAU * rng.next_f64());
                Coin::grover_type(a, b).unwrap()
            })
            .collect();
        let spec = CoinSpec::new(coins).unwrap();
        let arcs = arc_space(&g);
        let u = evolution_matrix(&arcs, &spec).map_err(|e| e.to_string())?;
        if !is_unitary(&u, 1e-10) {
            return Err(format!(
                "U = SC not unitary on a graph with {} arcs",
                arcs.len()
            ));
        }
        for s in dtqw_evolve(&uniform_arc_state(&arcs).unwrap(), &spec, 25) {
            worst_norm = worst_norm.max((s.norm_sqr() - 1.0).abs());
        }
        if g.is_connected() {
            let h = search_hamiltonian(&g, 0, 0.5).unwrap();
            let prop = Propagation::new(&h.matrix, uniform_vertex_state(n).unwrap().amplitudes())
                .map_err(|e| e.to_string())?;
            let p = coarsest_equitable_partition(&g, 0).unwrap();
            let reduced = ReducedCtqwSearch::new(p, 0.5).map_err(|e| e.to_string())?;
            for t in time_grid(10.0, 25) {
                worst_norm = worst_norm
                    .max((norm_sqr(&prop.state_at(t)) - 1.0).abs())
                    .max((norm_sqr(&reduced.reduced_state(t)) - 1.0).abs());
            }
            let mut walk = ReducedDtqwSearch::new(&g, 0).map_err(|e| e.to_string())?;
            for _ in 0..25 {
                walk.step();
                worst_norm = worst_norm.max((walk.norm_sqr() - 1.0).abs());
            }
        }
    }
    check(
        worst_norm <= 1e-12,
        format!("{graphs} graphs unitary at 1e-10; worst norm drift {worst_norm:.3e}"),
    )
}

fn scaling_law() -> Outcome {
    let start = Instant::now();
    let sizes = [16usize, 64, 256, 1024];
    let mut measured = Vec::new();
    let mut problems = Vec::new();
    for &n in &sizes {
        let g = complete_graph(n).unwrap();
        let row = scan_ctqw(&g, 0, 1.0 / (n - 2) as f64, default_ctqw_horizon(n), 400)
            .map_err(|e| e.to_string())?;
        let expected = ((n - 2) as f64 * std::f64::consts::FRAC_PI_2) / ((n - 1) as f64).sqrt();
        let rel = (row.t_star - expected).abs() / expected;
        if row.j != 2 || rel > 1e-6 {
            problems.push(format!(
                "N={n}: T*={} vs {expected}, rel {rel:.2e}",
                row.t_star
            ));
        }
        measured.push(row.t_star);
    }
    let mut ratios = Vec::new();
    for (i, w) in measured.windows(2).enumerate() {
        let r = w[1] / w[0];
        ratios.push(format!("T*({})/T*({})={r:.4}", sizes[i + 1], sizes[i]));
        if !(1.96..=2.04).contains(&r) {
            problems.push(format!(
                "ratio {r:.4} for N={} outside [1.96, 2.04]",
                sizes[i]
            ));
        }
    }
    let detail = format!("{}; {}", ratios.join(", "), problems.join("; "));
    if !problems.is_empty() {
        return Err(detail);
    }
    within_budget(start, Duration::from_secs(5), detail)
}

fn partition_engine() -> Outcome {
    let start = Instant::now();
    let p = coarsest_equitable_partition(&paper_example_graph(), 0).unwrap();
    if p.blocks() != [vec![0], vec![1, 4], vec![2, 3]]
        || p.quotient_degrees() != [vec![0, 2, 0], vec![1, 0, 2], vec![0, 2, 1]]
    {
        return Err(format!("example graph gave {:?}", p.to_record()));
    }
    let mut rng = SplitMix64::new(8);
    for case in 0..100 {
        let n = 1 + rng.below(40) as usize;
        let g = gnp_random_graph(n, rng.next_f64(), rng.next_u64()).unwrap();
        let marked = rng.below(n as u64) as usize;
        let p = coarsest_equitable_partition(&g, marked).map_err(|e| e.to_string())?;
        if !validate_equitable(&g, p.blocks()).is_equitable() {
            return Err(format!("case {case}: output not equitable"));
        }
        for j in 0..p.block_count() {
            for k in 0..p.block_count() {
                if p.block_size(j) * p.quotient_degree(j, k)
                    != p.block_size(k) * p.quotient_degree(k, j)
                {
                    return Err(format!("case {case}: n_j d_jk != n_k d_kj at ({j},{k})"));
                }
            }
        }
    }
    within_budget(
        start,
        Duration::from_secs(5),
        "example exact, 100 random graphs valid".into(),
    )
}

fn konno_convergence() -> Outcome {
    let start = Instant::now();
    let distances: Vec<f64> = [100, 300, 1000]
        .iter()
        .map(|&n| kolmogorov_distance(&hadamard_walk_line(n)))
        .collect();
    let detail = format!(
        "n=100: {:.4}, n=300: {:.4}, n=1000: {:.4}",
        distances[0], distances[1], distances[2]
    );
    if !(distances[0] > distances[1] && distances[1] > distances[2] && distances[2] <= 0.06) {
        return Err(detail);
    }
    within_budget(start, Duration::from_secs(30), detail)
}

fn best_of<T>(runs: usize, mut f: impl FnMut() -> T) -> Duration {
    (0..runs)
        .map(|_| {
            let t = Instant::now();
            std::hint::black_box(f());
            t.elapsed()
        })
        .min()
        .unwrap()
}

fn reduction_payoff() -> Outcome {
    let g = complete_graph(256).unwrap();
    let arcs = arc_space(&g);
    let spec = search_coin_spec(&g, 0).unwrap();
    let psi0 = uniform_arc_state(&arcs).unwrap();
    let walk = ReducedDtqwSearch::new(&g, 0).unwrap();
    // 100 steps of evolution with setup excluded, then the whole search series.
    let full_steps = best_of(3, || {
        let mut w = DtqwStepper::new(&psi0, &spec);
        (0..100)
            .map(|_| {
                w.step();
                w.vertex_probability(0)
            })
            .sum::<f64>()
    });
    let reduced_steps = best_of(3, || {
        let mut w = walk.clone();
        (0..100)
            .map(|_| {
                w.step();
                w.marked_probability()
            })
            .sum::<f64>()
    });
    let full = best_of(3, || dtqw_search_series(&g, 0, 100).unwrap());
    let reduced = best_of(3, || reduced_dtqw_search_series(&g, 0, 100).unwrap());
    let ratio = |a: Duration, b: Duration| a.as_secs_f64() / b.as_secs_f64().max(1e-9);
    let step_speedup = ratio(full_steps, reduced_steps);
    let series_speedup = ratio(full, reduced);
    let gap = dtqw_search_series(&g, 0, 100)
        .unwrap()
        .max_discrepancy(&reduced_dtqw_search_series(&g, 0, 100).unwrap());
    check(
        step_speedup >= 10.0 && series_speedup >= 10.0 && gap <= 1e-10,
        format!(
            "100 steps: {:.2} ms vs {:.4} ms, speedup {step_speedup:.0}x; \
             with setup: {:.2} ms vs {:.3} ms, speedup {series_speedup:.0}x; \
             target 100x, asserted 10x; curves agree to {gap:.1e}",
            full_steps.as_secs_f64() * 1e3,
            reduced_steps.as_secs_f64() * 1e3,
            full.as_secs_f64() * 1e3,
            reduced.as_secs_f64() * 1e3
        ),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("K2 worked example", k2_worked_example),
        ("apex over C8 closed form", apex_cycle_closed_form),
        ("K64 closed form", complete_64_closed_form),
        ("DTQW reduction equivalence", dtqw_equivalence),
        ("CTQW reduction equivalence", ctqw_equivalence),
        ("unitarity and conservation", unitarity_and_conservation),
        ("complete graph scaling", scaling_law),
        ("partition engine", partition_engine),
        ("Konno limit convergence", konno_convergence),
        ("reduction speedup on K256", reduction_payoff),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({detail})", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
