//! Coined discrete-time quantum walk on the arcs of a graph.
//!
//! The state lives on directed arcs `j→k`. One step is `U = S·C`: the coin
//! `C = Σ_j |j⟩⟨j| ⊗ C_j` mixes the arcs leaving each vertex, then the
//! flip-flop shift `S` sends the amplitude on `j→k` to `k→j`.

mod line;

pub use line::{
    hadamard_walk_line, kolmogorov_distance, konno_cdf, konno_density, LineDistribution,
};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::{ArcSpace, Graph};
use crate::linalg::{norm_sqr, ComplexMatrix, ComplexVector, STATE_NORM_TOL};
use crate::series::{Axis, Mode, SeriesMetadata, TimeSeries};

const UNIMODULAR_TOL: f64 = 1e-12;

/// Local coin at one vertex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coin {
    /// `(λ1 − λ2)|D⟩⟨D| + λ2·I` with `|D⟩` the uniform local state.
    GroverType {
        lambda1: Complex64,
        lambda2: Complex64,
    },
    /// `−I`, used at the marked vertex during search.
    MarkedNegativeIdentity,
}

impl Coin {
    /// Grover's diffusion coin `2|D⟩⟨D| − I`.
    pub const GROVER: Coin = Coin::GroverType {
        lambda1: Complex64::new(1.0, 0.0),
        lambda2: Complex64::new(-1.0, 0.0),
    };

    pub fn grover_type(lambda1: Complex64, lambda2: Complex64) -> Result<Coin> {
        for l in [lambda1, lambda2] {
            if (l.norm() - 1.0).abs() > UNIMODULAR_TOL {
                return Err(Error::ContractViolation(format!(
                    "coin eigenvalue {l} is not unimodular"
                )));
            }
        }
        Ok(Coin::GroverType { lambda1, lambda2 })
    }

    /// `(λ1, λ2)`; the negative identity is `(−1, −1)`.
    pub fn eigenvalues(&self) -> (Complex64, Complex64) {
        match *self {
            Coin::GroverType { lambda1, lambda2 } => (lambda1, lambda2),
            Coin::MarkedNegativeIdentity => (Complex64::new(-1.0, 0.0), Complex64::new(-1.0, 0.0)),
        }
    }

    fn apply(&self, local: &mut [Complex64]) {
        match *self {
            Coin::MarkedNegativeIdentity => local.iter_mut().for_each(|z| *z = -*z),
            Coin::GroverType { lambda1, lambda2 } => {
                let d = local.len() as f64;
                let mean: Complex64 = local.iter().sum::<Complex64>() / d;
                let shift = (lambda1 - lambda2) * mean;
                for z in local {
                    *z = shift + lambda2 * *z;
                }
            }
        }
    }
}

/// Dense `d×d` Grover-type coin `(λ1 − λ2)|D⟩⟨D| + λ2·I`.
pub fn coin_matrix(d: usize, lambda1: Complex64, lambda2: Complex64) -> Result<ComplexMatrix> {
    if d == 0 {
        return Err(Error::InvalidSize(
            "coin dimension must be at least 1".into(),
        ));
    }
    Coin::grover_type(lambda1, lambda2)?;
    let diag_weight = (lambda1 - lambda2) / d as f64;
    Ok(ComplexMatrix::from_fn(d, d, |r, c| {
        if r == c {
            diag_weight + lambda2
        } else {
            diag_weight
        }
    }))
}

/// One coin per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct CoinSpec {
    coins: Vec<Coin>,
}

impl CoinSpec {
    pub fn new(coins: Vec<Coin>) -> Result<Self> {
        for c in &coins {
            if let Coin::GroverType { lambda1, lambda2 } = *c {
                Coin::grover_type(lambda1, lambda2)?;
            }
        }
        Ok(Self { coins })
    }

    pub fn uniform(n: usize, coin: Coin) -> Self {
        Self {
            coins: vec![coin; n],
        }
    }

    pub fn coin(&self, v: usize) -> Coin {
        self.coins[v]
    }

    pub fn coins(&self) -> &[Coin] {
        &self.coins
    }

    pub fn len(&self) -> usize {
        self.coins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coins.is_empty()
    }
}

/// `−I` at the marked vertex, Grover's coin elsewhere.
pub fn search_coin_spec(g: &Graph, marked: usize) -> Result<CoinSpec> {
    if marked >= g.vertex_count() {
        return Err(Error::InvalidInput(format!(
            "marked vertex {marked} outside 0..{}",
            g.vertex_count()
        )));
    }
    if !g.is_connected() {
        return Err(Error::InvalidInput("search needs a connected graph".into()));
    }
    let mut spec = CoinSpec::uniform(g.vertex_count(), Coin::GROVER);
    spec.coins[marked] = Coin::MarkedNegativeIdentity;
    Ok(spec)
}

/// Amplitudes over the arcs of a graph.
#[derive(Debug, Clone)]
pub struct DtqwState<'a> {
    arcs: &'a ArcSpace,
    amplitudes: ComplexVector,
}

impl<'a> DtqwState<'a> {
    /// Wraps amplitudes, checking length and unit norm.
    pub fn new(arcs: &'a ArcSpace, amplitudes: ComplexVector) -> Result<Self> {
        if amplitudes.len() != arcs.len() {
            return Err(Error::InvalidInput(format!(
                "state has {} amplitudes, arc space has {} arcs",
                amplitudes.len(),
                arcs.len()
            )));
        }
        let norm = norm_sqr(&amplitudes);
        if (norm - 1.0).abs() > STATE_NORM_TOL {
            return Err(Error::InvalidInput(format!(
                "state norm² is {norm}, expected 1"
            )));
        }
        Ok(Self { arcs, amplitudes })
    }

    /// Unit mass on one arc.
    pub fn basis(arcs: &'a ArcSpace, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::default(); arcs.len()];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self { arcs, amplitudes }
    }

    pub(crate) fn from_raw(arcs: &'a ArcSpace, amplitudes: ComplexVector) -> Self {
        debug_assert_eq!(arcs.len(), amplitudes.len());
        Self { arcs, amplitudes }
    }

    pub fn arcs(&self) -> &'a ArcSpace {
        self.arcs
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> ComplexVector {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }

    /// Probability of finding the walker at `s`: mass on the arcs leaving `s`.
    pub fn vertex_probability(&self, s: usize) -> f64 {
        norm_sqr(&self.amplitudes[self.arcs.outgoing(s)])
    }

    pub fn vertex_distribution(&self) -> Vec<f64> {
        (0..self.arcs.vertex_count())
            .map(|s| self.vertex_probability(s))
            .collect()
    }
}

/// `1/sqrt(2|E|)` on every arc.
pub fn uniform_arc_state(arcs: &ArcSpace) -> Result<DtqwState<'_>> {
    if arcs.is_empty() {
        return Err(Error::InvalidInput(
            "uniform arc state needs at least one edge".into(),
        ));
    }
    let amp = Complex64::new(1.0 / (arcs.len() as f64).sqrt(), 0.0);
    Ok(DtqwState::from_raw(arcs, vec![amp; arcs.len()]))
}

pub fn shift<'a>(state: &DtqwState<'a>) -> DtqwState<'a> {
    let arcs = state.arcs;
    let mut out = vec![Complex64::default(); arcs.len()];
    for (i, &z) in state.amplitudes.iter().enumerate() {
        out[arcs.reverse(i)] = z;
    }
    DtqwState::from_raw(arcs, out)
}

pub fn apply_coin<'a>(state: &DtqwState<'a>, spec: &CoinSpec) -> DtqwState<'a> {
    let mut amplitudes = state.amplitudes.clone();
    coin_in_place(state.arcs, spec, &mut amplitudes);
    DtqwState::from_raw(state.arcs, amplitudes)
}

fn coin_in_place(arcs: &ArcSpace, spec: &CoinSpec, amplitudes: &mut [Complex64]) {
    assert_eq!(
        spec.len(),
        arcs.vertex_count(),
        "coin spec must cover every vertex"
    );
    for v in 0..arcs.vertex_count() {
        let range = arcs.outgoing(v);
        if !range.is_empty() {
            spec.coin(v).apply(&mut amplitudes[range]);
        }
    }
}

/// `U = S·C`.
pub fn dtqw_step<'a>(state: &DtqwState<'a>, spec: &CoinSpec) -> DtqwState<'a> {
    shift(&apply_coin(state, spec))
}

/// States at steps `0..=steps`.
pub fn dtqw_evolve<'a>(state: &DtqwState<'a>, spec: &CoinSpec, steps: usize) -> Vec<DtqwState<'a>> {
    let mut out = Vec::with_capacity(steps + 1);
    out.push(state.clone());
    for _ in 0..steps {
        let next = dtqw_step(out.last().expect("non-empty"), spec);
        out.push(next);
    }
    out
}

/// Allocation-free stepper for long runs that only need observables.
#[derive(Debug, Clone)]
pub struct DtqwStepper<'a> {
    arcs: &'a ArcSpace,
    spec: &'a CoinSpec,
    current: ComplexVector,
    scratch: ComplexVector,
}

impl<'a> DtqwStepper<'a> {
    pub fn new(state: &DtqwState<'a>, spec: &'a CoinSpec) -> Self {
        Self {
            arcs: state.arcs,
            spec,
            current: state.amplitudes.clone(),
            scratch: vec![Complex64::default(); state.amplitudes.len()],
        }
    }

    pub fn step(&mut self) {
        coin_in_place(self.arcs, self.spec, &mut self.current);
        for (i, &z) in self.current.iter().enumerate() {
            self.scratch[self.arcs.reverse(i)] = z;
        }
        std::mem::swap(&mut self.current, &mut self.scratch);
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.current
    }

    pub fn vertex_probability(&self, s: usize) -> f64 {
        norm_sqr(&self.current[self.arcs.outgoing(s)])
    }

    pub fn state(&self) -> DtqwState<'a> {
        DtqwState::from_raw(self.arcs, self.current.clone())
    }
}

/// Dense matrix of `U = S·C` on the arc basis.
pub fn evolution_matrix(arcs: &ArcSpace, spec: &CoinSpec) -> Result<ComplexMatrix> {
    let mut u = ComplexMatrix::zeros(arcs.len(), arcs.len());
    for v in 0..arcs.vertex_count() {
        let range = arcs.outgoing(v);
        if range.is_empty() {
            continue;
        }
        let (l1, l2) = spec.coin(v).eigenvalues();
        let local = coin_matrix(range.len(), l1, l2)?;
        for (r, a) in range.clone().enumerate() {
            for (c, b) in range.clone().enumerate() {
                u[(arcs.reverse(a), b)] = local[(r, c)];
            }
        }
    }
    Ok(u)
}

/// Full-space search: uniform start, search coins, marked-vertex probability
/// at steps `0..=steps`.
pub fn dtqw_search_series(g: &Graph, marked: usize, steps: usize) -> Result<TimeSeries> {
    let spec = search_coin_spec(g, marked)?;
    let arcs = ArcSpace::new(g);
    let start = uniform_arc_state(&arcs)?;
    let mut stepper = DtqwStepper::new(&start, &spec);
    let mut series = TimeSeries::new(
        SeriesMetadata {
            graph: String::new(),
            vertices: g.vertex_count(),
            blocks: None,
            dimension: arcs.len(),
            mode: Mode::Full,
            marked,
            gamma: None,
            coin: Some("grover/-I".into()),
        },
        Axis::Step,
    );
    series.push_with_norm(
        0.0,
        stepper.vertex_probability(marked),
        norm_sqr(stepper.amplitudes()),
    );
    for step in 1..=steps {
        stepper.step();
        series.push_with_norm(
            step as f64,
            stepper.vertex_probability(marked),
            norm_sqr(stepper.amplitudes()),
        );
    }
    Ok(series)
}
