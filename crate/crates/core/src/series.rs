//! Marked-vertex probability series and their CSV/JSON encodings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Version tag written into every JSON document.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Full,
    Reduced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    /// Discrete-time walk; samples are indexed by step count.
    Step,
    /// Continuous-time walk; samples are indexed by real time.
    Time,
}

impl Axis {
    pub fn csv_header(self) -> &'static str {
        match self {
            Axis::Step => "step,probability",
            Axis::Time => "t,probability",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesMetadata {
    /// Human-readable graph descriptor, e.g. `complete(n=8)`.
    pub graph: String,
    pub vertices: usize,
    /// Number of partition blocks, when a partition was used.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<usize>,
    /// Dimension of the space the dynamics ran in.
    pub dimension: usize,
    pub mode: Mode,
    pub marked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coin: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    /// Step (as an exact integer value) or time.
    pub at: f64,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    pub metadata: SeriesMetadata,
    pub axis: Axis,
    pub samples: Vec<Sample>,
    /// Total probability of the state at each sample, when tracked.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norms: Option<Vec<f64>>,
}

impl TimeSeries {
    pub fn new(metadata: SeriesMetadata, axis: Axis) -> Self {
        Self {
            metadata,
            axis,
            samples: Vec::new(),
            norms: None,
        }
    }

    pub fn push(&mut self, at: f64, probability: f64) {
        self.samples.push(Sample { at, probability });
    }

    /// Like [`push`](Self::push), also recording the state's total probability.
    pub fn push_with_norm(&mut self, at: f64, probability: f64, norm: f64) {
        self.push(at, probability);
        self.norms.get_or_insert_with(Vec::new).push(norm);
    }

    /// Largest `|norm − 1|` over the tracked norms.
    pub fn max_norm_drift(&self) -> Option<f64> {
        self.norms
            .as_ref()
            .map(|n| n.iter().map(|x| (x - 1.0).abs()).fold(0.0, f64::max))
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.probability).collect()
    }

    /// Largest pointwise probability gap against another series on the same grid.
    pub fn max_discrepancy(&self, other: &TimeSeries) -> f64 {
        assert_eq!(
            self.samples.len(),
            other.samples.len(),
            "series grids differ"
        );
        self.samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a.probability - b.probability).abs())
            .fold(0.0, f64::max)
    }

    /// Sample with the highest probability; earliest wins ties.
    pub fn peak(&self) -> Option<Sample> {
        self.samples
            .iter()
            .copied()
            .fold(None, |best, s| match best {
                Some(b) if b.probability >= s.probability => Some(b),
                _ => Some(s),
            })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(self.axis.csv_header());
        out.push('\n');
        for s in &self.samples {
            match self.axis {
                Axis::Step => {
                    let _ = writeln!(out, "{},{}", s.at as u64, format_float(s.probability));
                }
                Axis::Time => {
                    let _ = writeln!(
                        out,
                        "{},{}",
                        format_float(s.at),
                        format_float(s.probability)
                    );
                }
            }
        }
        out
    }
}

/// 17 significant digits, scientific notation.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// `samples` evenly spaced points on `[0, tmax]`, inclusive at both ends.
pub fn time_grid(tmax: f64, samples: usize) -> Vec<f64> {
    match samples {
        0 => Vec::new(),
        1 => vec![0.0],
        n => (0..n).map(|i| tmax * i as f64 / (n - 1) as f64).collect(),
    }
}
