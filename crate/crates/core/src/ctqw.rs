//! Continuous-time quantum walk on vertices and its search Hamiltonian.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::{adjacency_matrix, Graph};
use crate::linalg::{
    hermitian_eigendecompose, norm_sqr, ComplexMatrix, ComplexVector, HermitianEigen,
    HERMITIAN_TOL, STATE_NORM_TOL,
};
use crate::series::{Axis, Mode, SeriesMetadata, TimeSeries};

/// `H = |w⟩⟨w| + γ·A`.
#[derive(Debug, Clone)]
pub struct SearchHamiltonian {
    pub matrix: ComplexMatrix,
    pub gamma: f64,
    pub marked: usize,
}

/// Builds the search Hamiltonian. Connectivity is not checked here; see
/// [`ctqw_search_series`].
pub fn search_hamiltonian(g: &Graph, marked: usize, gamma: f64) -> Result<SearchHamiltonian> {
    if marked >= g.vertex_count() {
        return Err(Error::InvalidInput(format!(
            "marked vertex {marked} outside 0..{}",
            g.vertex_count()
        )));
    }
    if !gamma.is_finite() {
        return Err(Error::InvalidInput(format!(
            "gamma must be finite, got {gamma}"
        )));
    }
    let mut matrix = adjacency_matrix(g).scale(Complex64::new(gamma, 0.0));
    matrix[(marked, marked)] += Complex64::new(1.0, 0.0);
    Ok(SearchHamiltonian {
        matrix,
        gamma,
        marked,
    })
}

/// Amplitudes over vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct CtqwState {
    amplitudes: ComplexVector,
}

impl CtqwState {
    pub fn new(amplitudes: ComplexVector) -> Result<Self> {
        let norm = norm_sqr(&amplitudes);
        if (norm - 1.0).abs() > STATE_NORM_TOL {
            return Err(Error::InvalidInput(format!(
                "state norm² is {norm}, expected 1"
            )));
        }
        Ok(Self { amplitudes })
    }

    /// Unit mass on vertex `v` of an `n`-vertex graph.
    pub fn basis(n: usize, v: usize) -> Self {
        let mut amplitudes = vec![Complex64::default(); n];
        amplitudes[v] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }

    pub fn vertex_probability(&self, s: usize) -> f64 {
        self.amplitudes[s].norm_sqr()
    }
}

pub fn uniform_vertex_state(n: usize) -> Result<CtqwState> {
    if n == 0 {
        return Err(Error::InvalidSize(
            "uniform state needs at least one vertex".into(),
        ));
    }
    let amp = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
    Ok(CtqwState {
        amplitudes: vec![amp; n],
    })
}

/// `exp(itM)·ψ` for a Hermitian `M` (arbitrary real or complex weights).
pub fn ctqw_evolve(m: &ComplexMatrix, t: f64, state: &CtqwState) -> Result<CtqwState> {
    if m.rows() != state.dim() {
        return Err(Error::InvalidInput(format!(
            "operator is {}x{}, state has dimension {}",
            m.rows(),
            m.cols(),
            state.dim()
        )));
    }
    let eig = hermitian_eigendecompose(m)?;
    Ok(CtqwState {
        amplitudes: eig.evolve(t, &state.amplitudes),
    })
}

/// A diagonalized Hamiltonian together with a start state, for cheap
/// evaluation at many times.
#[derive(Debug, Clone)]
pub struct Propagation {
    eig: HermitianEigen,
    coefficients: ComplexVector,
}

impl Propagation {
    pub fn new(m: &ComplexMatrix, start: &[Complex64]) -> Result<Self> {
        if m.rows() != start.len() {
            return Err(Error::InvalidInput(
                "operator and state dimensions differ".into(),
            ));
        }
        if m.hermiticity_defect() > HERMITIAN_TOL {
            return Err(Error::ContractViolation("operator is not Hermitian".into()));
        }
        let eig = hermitian_eigendecompose(m)?;
        let coefficients = eig.spectral_coefficients(start);
        Ok(Self { eig, coefficients })
    }

    pub fn dim(&self) -> usize {
        self.eig.dim()
    }

    pub fn state_at(&self, t: f64) -> ComplexVector {
        self.eig.evolve_coefficients(t, &self.coefficients)
    }

    pub fn amplitude_at(&self, index: usize, t: f64) -> Complex64 {
        self.eig.amplitude(index, t, &self.coefficients)
    }

    pub fn probability_at(&self, index: usize, t: f64) -> f64 {
        self.amplitude_at(index, t).norm_sqr()
    }
}

/// Full-space search curve `P_t(w)` from the uniform start, one
/// eigendecomposition for all times.
pub fn ctqw_search_series(
    g: &Graph,
    marked: usize,
    gamma: f64,
    times: &[f64],
) -> Result<TimeSeries> {
    check_times(times)?;
    if !g.is_connected() {
        return Err(Error::InvalidInput("search needs a connected graph".into()));
    }
    let h = search_hamiltonian(g, marked, gamma)?;
    let start = uniform_vertex_state(g.vertex_count())?;
    let prop = Propagation::new(&h.matrix, start.amplitudes())?;
    let mut series = TimeSeries::new(
        SeriesMetadata {
            graph: String::new(),
            vertices: g.vertex_count(),
            blocks: None,
            dimension: g.vertex_count(),
            mode: Mode::Full,
            marked,
            gamma: Some(gamma),
            coin: None,
        },
        Axis::Time,
    );
    for &t in times {
        series.push(t, prop.probability_at(marked, t));
    }
    Ok(series)
}

pub(crate) fn check_times(times: &[f64]) -> Result<()> {
    if times.iter().any(|t| !t.is_finite() || *t < 0.0) {
        return Err(Error::InvalidInput(
            "times must be finite and non-negative".into(),
        ));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidInput(
            "times must be strictly increasing".into(),
        ));
    }
    Ok(())
}
