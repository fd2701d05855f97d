//! Exact reduction of both walks onto partition-adapted subspaces.
//!
//! For an equitable partition with blocks `B_0 = {w}, B_1, …` the uniform
//! states over the arcs from `B_j` to `B_k`
//!
//! ```text
//! |jk⟩ = (n_j d_jk)^{-1/2} Σ_{u∈B_j, v∈B_k, u~v} |u⟩⊗|v⟩      (d_jk > 0)
//! ```
//!
//! span a subspace that contains the uniform arc state and is invariant
//! under `U = S·C` whenever the coins are Grover-type and constant on blocks:
//!
//! ```text
//! U|jk⟩ = (λ_j1 − λ_j2)/d_j · Σ_{k': d_jk'>0} √(d_jk d_jk') |k'j⟩ + λ_j2 |kj⟩
//! ```
//!
//! Likewise the block states `|j⟩ = n_j^{-1/2} Σ_{v∈B_j} |v⟩` carry the
//! search Hamiltonian to `diag(1, 0, …, 0) + γ·Ā` with
//! `Ā_jk = √(d_jk d_kj)`.

use num_complex::Complex64;
use serde::Serialize;

use crate::ctqw::{check_times, Propagation};
use crate::dtqw::{CoinSpec, DtqwState};
use crate::error::{Error, Result};
use crate::graph::{ArcSpace, Graph};
use crate::linalg::{norm_sqr, ComplexMatrix, ComplexVector};
use crate::partition::{coarsest_equitable_partition, quotient_adjacency, EquitablePartition};
use crate::series::{Axis, Mode, SeriesMetadata, TimeSeries, SCHEMA_VERSION};

const COIN_MATCH_TOL: f64 = 1e-12;

/// Block pairs `(j, k)` with `d_jk > 0`, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedDtqwBasis {
    pairs: Vec<(usize, usize)>,
    blocks: usize,
    table: Vec<Option<usize>>,
}

impl ReducedDtqwBasis {
    pub fn new(p: &EquitablePartition) -> Self {
        let blocks = p.block_count();
        let mut pairs = Vec::new();
        let mut table = vec![None; blocks * blocks];
        for j in 0..blocks {
            for k in 0..blocks {
                if p.quotient_degree(j, k) > 0 {
                    table[j * blocks + k] = Some(pairs.len());
                    pairs.push((j, k));
                }
            }
        }
        Self {
            pairs,
            blocks,
            table,
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn index_of(&self, j: usize, k: usize) -> Option<usize> {
        if j >= self.blocks || k >= self.blocks {
            return None;
        }
        self.table[j * self.blocks + k]
    }
}

/// Restriction of `U = S·C` to the span of the block-pair states.
#[derive(Debug, Clone)]
pub struct ReducedDtqwOperator {
    pub basis: ReducedDtqwBasis,
    pub matrix: ComplexMatrix,
}

#[derive(Serialize)]
struct OperatorDump<'a> {
    schema: u32,
    basis: &'a [(usize, usize)],
    matrix: Vec<Vec<[f64; 2]>>,
}

impl ReducedDtqwOperator {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn apply(&self, reduced: &[Complex64]) -> ComplexVector {
        self.matrix.mul_vec(reduced)
    }

    /// Debug dump: basis pairs and the row-major matrix as `[re, im]` pairs.
    pub fn to_json(&self) -> String {
        let matrix = (0..self.matrix.rows())
            .map(|r| self.matrix.row(r).iter().map(|z| [z.re, z.im]).collect())
            .collect();
        serde_json::to_string(&OperatorDump {
            schema: SCHEMA_VERSION,
            basis: self.basis.pairs(),
            matrix,
        })
        .expect("operator serializes")
    }
}

/// Reduced evolution operator for per-block coin eigenvalues `(λ1, λ2)`.
pub fn reduced_dtqw_operator(
    p: &EquitablePartition,
    coins: &[(Complex64, Complex64)],
) -> Result<ReducedDtqwOperator> {
    if coins.len() != p.block_count() {
        return Err(Error::InvalidInput(format!(
            "{} block coins given for {} blocks",
            coins.len(),
            p.block_count()
        )));
    }
    if let Some(j) = (0..p.block_count()).find(|&j| p.block_degree(j) == 0) {
        return Err(Error::InvalidInput(format!("block {j} is isolated")));
    }
    let basis = ReducedDtqwBasis::new(p);
    let mut matrix = ComplexMatrix::zeros(basis.len(), basis.len());
    for (col, &(j, k)) in basis.pairs().iter().enumerate() {
        let (l1, l2) = coins[j];
        let weight = (l1 - l2) / p.block_degree(j) as f64;
        let d_jk = p.quotient_degree(j, k) as f64;
        for k2 in 0..p.block_count() {
            let d_jk2 = p.quotient_degree(j, k2);
            if d_jk2 == 0 {
                continue;
            }
            let row = basis.index_of(k2, j).expect("reverse pair present");
            matrix[(row, col)] += weight * (d_jk * d_jk2 as f64).sqrt();
        }
        let row = basis.index_of(k, j).expect("reverse pair present");
        matrix[(row, col)] += l2;
    }
    Ok(ReducedDtqwOperator { basis, matrix })
}

/// Search coins per block: `−I` on the marked block, Grover elsewhere.
pub fn search_block_coins(p: &EquitablePartition) -> Vec<(Complex64, Complex64)> {
    let one = Complex64::new(1.0, 0.0);
    (0..p.block_count())
        .map(|j| if j == 0 { (-one, -one) } else { (one, -one) })
        .collect()
}

/// Collapses a vertex coin assignment to per-block eigenvalue pairs, failing
/// if two vertices of one block carry different coins.
pub fn block_coins(p: &EquitablePartition, spec: &CoinSpec) -> Result<Vec<(Complex64, Complex64)>> {
    if spec.len() != p.vertex_count() {
        return Err(Error::InvalidInput(
            "coin spec does not cover the graph".into(),
        ));
    }
    let mut out = Vec::with_capacity(p.block_count());
    for (j, block) in p.blocks().iter().enumerate() {
        let reference = spec.coin(block[0]).eigenvalues();
        for &v in &block[1..] {
            let (a, b) = spec.coin(v).eigenvalues();
            if (a - reference.0).norm() > COIN_MATCH_TOL
                || (b - reference.1).norm() > COIN_MATCH_TOL
            {
                return Err(Error::InvalidInput(format!(
                    "vertices {} and {v} in block {j} carry different coins",
                    block[0]
                )));
            }
        }
        out.push(reference);
    }
    Ok(out)
}

/// Uniform arc state in the block-pair basis: `√(n_j d_jk / 2|E|)` on `(j, k)`.
pub fn reduced_uniform_dtqw(p: &EquitablePartition, basis: &ReducedDtqwBasis) -> ComplexVector {
    let arcs = (2 * p.edge_count()) as f64;
    basis
        .pairs()
        .iter()
        .map(|&(j, k)| {
            let weight = (p.block_size(j) * p.quotient_degree(j, k)) as f64;
            Complex64::new((weight / arcs).sqrt(), 0.0)
        })
        .collect()
}

/// Arc -> basis index, and the normalization `√(n_j d_jk)` of that pair.
fn arc_pairs(
    p: &EquitablePartition,
    basis: &ReducedDtqwBasis,
    arcs: &ArcSpace,
) -> Vec<(usize, f64)> {
    arcs.arcs()
        .iter()
        .map(|&(u, v)| {
            let (j, k) = (p.block_of(u), p.block_of(v));
            let index = basis.index_of(j, k).expect("arc joins adjacent blocks");
            let norm = ((p.block_size(j) * p.quotient_degree(j, k)) as f64).sqrt();
            (index, norm)
        })
        .collect()
}

/// Spreads reduced coefficients uniformly over the arcs of each block pair.
pub fn lift_dtqw<'a>(
    p: &EquitablePartition,
    basis: &ReducedDtqwBasis,
    arcs: &'a ArcSpace,
    reduced: &[Complex64],
) -> DtqwState<'a> {
    assert_eq!(
        reduced.len(),
        basis.len(),
        "reduced vector has wrong dimension"
    );
    let amplitudes = arc_pairs(p, basis, arcs)
        .into_iter()
        .map(|(i, norm)| reduced[i] / norm)
        .collect();
    DtqwState::from_raw(arcs, amplitudes)
}

/// Adjoint of [`lift_dtqw`]: inner products with each `|jk⟩`.
pub fn project_dtqw(
    p: &EquitablePartition,
    basis: &ReducedDtqwBasis,
    state: &DtqwState<'_>,
) -> ComplexVector {
    let mut out = vec![Complex64::default(); basis.len()];
    for ((i, norm), z) in arc_pairs(p, basis, state.arcs())
        .into_iter()
        .zip(state.amplitudes())
    {
        out[i] += z / norm;
    }
    out
}

/// Probability at the marked vertex: mass on the pairs `(0, k)`.
pub fn reduced_marked_probability(basis: &ReducedDtqwBasis, reduced: &[Complex64]) -> f64 {
    basis
        .pairs()
        .iter()
        .zip(reduced)
        .filter(|((j, _), _)| *j == 0)
        .map(|(_, z)| z.norm_sqr())
        .sum()
}

/// Reduced search walk from the uniform start; one matrix-vector product per step.
#[derive(Debug, Clone)]
pub struct ReducedDtqwSearch {
    pub partition: EquitablePartition,
    pub operator: ReducedDtqwOperator,
    pub state: ComplexVector,
}

impl ReducedDtqwSearch {
    pub fn new(g: &Graph, marked: usize) -> Result<Self> {
        if !g.is_connected() {
            return Err(Error::InvalidInput("search needs a connected graph".into()));
        }
        let partition = coarsest_equitable_partition(g, marked)?;
        Self::with_partition(partition)
    }

    pub fn with_partition(partition: EquitablePartition) -> Result<Self> {
        let operator = reduced_dtqw_operator(&partition, &search_block_coins(&partition))?;
        let state = reduced_uniform_dtqw(&partition, &operator.basis);
        Ok(Self {
            partition,
            operator,
            state,
        })
    }

    pub fn step(&mut self) {
        self.state = self.operator.apply(&self.state);
    }

    pub fn marked_probability(&self) -> f64 {
        reduced_marked_probability(&self.operator.basis, &self.state)
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.state)
    }
}

/// Marked-vertex probability at steps `0..=steps` via the reduced operator.
pub fn reduced_dtqw_search_series(g: &Graph, marked: usize, steps: usize) -> Result<TimeSeries> {
    let mut walk = ReducedDtqwSearch::new(g, marked)?;
    let mut series = TimeSeries::new(
        SeriesMetadata {
            graph: String::new(),
            vertices: g.vertex_count(),
            blocks: Some(walk.partition.block_count()),
            dimension: walk.operator.dim(),
            mode: Mode::Reduced,
            marked,
            gamma: None,
            coin: Some("grover/-I".into()),
        },
        Axis::Step,
    );
    series.push_with_norm(0.0, walk.marked_probability(), walk.norm_sqr());
    for step in 1..=steps {
        walk.step();
        series.push_with_norm(step as f64, walk.marked_probability(), walk.norm_sqr());
    }
    Ok(series)
}

/// `diag(1, 0, …, 0) + γ·Ā` on the block states.
#[derive(Debug, Clone)]
pub struct ReducedHamiltonian {
    pub matrix: ComplexMatrix,
    pub gamma: f64,
    pub block_sizes: Vec<usize>,
}

impl ReducedHamiltonian {
    pub fn dim(&self) -> usize {
        self.block_sizes.len()
    }

    /// `H̄` applied to the coefficients of `Σ_k c_k |k⟩`.
    pub fn apply(&self, reduced: &[Complex64]) -> ComplexVector {
        self.matrix.mul_vec(reduced)
    }
}

pub fn reduced_hamiltonian(p: &EquitablePartition, gamma: f64) -> ReducedHamiltonian {
    let mut matrix = quotient_adjacency(p).scale(Complex64::new(gamma, 0.0));
    matrix[(0, 0)] += Complex64::new(1.0, 0.0);
    ReducedHamiltonian {
        matrix,
        gamma,
        block_sizes: p.block_sizes(),
    }
}

/// `Σ_j c_j |j⟩` as a vertex vector.
pub fn lift_ctqw(p: &EquitablePartition, reduced: &[Complex64]) -> ComplexVector {
    assert_eq!(
        reduced.len(),
        p.block_count(),
        "reduced vector has wrong dimension"
    );
    let mut out = vec![Complex64::default(); p.vertex_count()];
    for (j, block) in p.blocks().iter().enumerate() {
        let amp = reduced[j] / (block.len() as f64).sqrt();
        for &v in block {
            out[v] = amp;
        }
    }
    out
}

/// Adjoint of [`lift_ctqw`].
pub fn project_ctqw(p: &EquitablePartition, full: &[Complex64]) -> ComplexVector {
    assert_eq!(full.len(), p.vertex_count(), "state has wrong dimension");
    p.blocks()
        .iter()
        .map(|block| {
            block.iter().map(|&v| full[v]).sum::<Complex64>() / (block.len() as f64).sqrt()
        })
        .collect()
}

/// Uniform vertex state in block coordinates: `√(n_j / N)`.
pub fn reduced_uniform_ctqw(p: &EquitablePartition) -> ComplexVector {
    let n = p.vertex_count() as f64;
    p.block_sizes()
        .into_iter()
        .map(|size| Complex64::new((size as f64 / n).sqrt(), 0.0))
        .collect()
}

/// Diagonalized reduced Hamiltonian with the uniform start loaded.
#[derive(Debug, Clone)]
pub struct ReducedCtqwSearch {
    pub partition: EquitablePartition,
    pub hamiltonian: ReducedHamiltonian,
    propagation: Propagation,
}

impl ReducedCtqwSearch {
    pub fn new(p: EquitablePartition, gamma: f64) -> Result<Self> {
        if !gamma.is_finite() {
            return Err(Error::InvalidInput(format!(
                "gamma must be finite, got {gamma}"
            )));
        }
        let hamiltonian = reduced_hamiltonian(&p, gamma);
        let propagation = Propagation::new(&hamiltonian.matrix, &reduced_uniform_ctqw(&p))?;
        Ok(Self {
            partition: p,
            hamiltonian,
            propagation,
        })
    }

    /// `|⟨0|exp(itH̄)|ψ0⟩|²`.
    pub fn marked_probability(&self, t: f64) -> f64 {
        self.propagation.probability_at(0, t)
    }

    pub fn reduced_state(&self, t: f64) -> ComplexVector {
        self.propagation.state_at(t)
    }
}

pub fn reduced_ctqw_probability(p: &EquitablePartition, gamma: f64, t: f64) -> Result<f64> {
    Ok(ReducedCtqwSearch::new(p.clone(), gamma)?.marked_probability(t))
}

/// Marked-vertex probability at `times` via the `J×J` reduced Hamiltonian.
pub fn reduced_ctqw_search_series(
    g: &Graph,
    marked: usize,
    gamma: f64,
    times: &[f64],
) -> Result<TimeSeries> {
    check_times(times)?;
    if !g.is_connected() {
        return Err(Error::InvalidInput("search needs a connected graph".into()));
    }
    let p = coarsest_equitable_partition(g, marked)?;
    let blocks = p.block_count();
    let search = ReducedCtqwSearch::new(p, gamma)?;
    let mut series = TimeSeries::new(
        SeriesMetadata {
            graph: String::new(),
            vertices: g.vertex_count(),
            blocks: Some(blocks),
            dimension: blocks,
            mode: Mode::Reduced,
            marked,
            gamma: Some(gamma),
            coin: None,
        },
        Axis::Time,
    );
    for &t in times {
        series.push(t, search.marked_probability(t));
    }
    Ok(series)
}

fn check_apex_family(n: usize, d: usize) -> Result<()> {
    if n < 3 || d < 1 || d > n - 2 {
        return Err(Error::InvalidInput(format!(
            "apex family needs N >= 3 and 1 <= d <= N - 2, got N = {n}, d = {d}"
        )));
    }
    Ok(())
}

/// Marked probability for a vertex joined to all of a `d`-regular graph on
/// `N − 1` vertices, with `γ = 1/d`:
/// `(1 − 1/N) − (1 − 2/N)·cos²(√(N−1)·t/d)`.
pub fn apex_closed_form(n: usize, d: usize, t: f64) -> Result<f64> {
    check_apex_family(n, d)?;
    let (nf, df) = (n as f64, d as f64);
    let c = ((nf - 1.0).sqrt() * t / df).cos();
    Ok((1.0 - 1.0 / nf) - (1.0 - 2.0 / nf) * c * c)
}

/// First time the closed form peaks: `(dπ/2) / √(N−1)`.
pub fn apex_search_time(n: usize, d: usize) -> Result<f64> {
    check_apex_family(n, d)?;
    Ok(d as f64 * std::f64::consts::FRAC_PI_2 / ((n - 1) as f64).sqrt())
}
