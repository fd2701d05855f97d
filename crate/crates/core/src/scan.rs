//! Locating the optimal measurement time of a search walk.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::coarsest_equitable_partition;
use crate::reduction::{ReducedCtqwSearch, ReducedDtqwSearch};
use crate::series::{format_float, time_grid};

/// Width of the final golden-section bracket, in time units.
pub const GOLDEN_TOL: f64 = 1e-6;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Peak {
    pub time: f64,
    pub probability: f64,
}

/// Golden-section search for a maximum of a unimodal `f` on `[lo, hi]`.
pub fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> Peak {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    let time = 0.5 * (lo + hi);
    Peak {
        time,
        probability: f(time),
    }
}

/// Refined peaks closer than this to the best one count as ties.
pub const PEAK_TIE_TOL: f64 = 1e-9;

/// Earliest global maximum of `f` over the span of `grid`.
///
/// Every grid local maximum is refined by golden section between its
/// neighbors; the earliest refined peak within [`PEAK_TIE_TOL`] of the best
/// wins. Periodic curves have many equal peaks, and the grid alone would
/// pick whichever happens to fall closest to a sample.
pub fn refine_peak(f: impl Fn(f64) -> f64, grid: &[f64]) -> Result<Peak> {
    if grid.is_empty() {
        return Err(Error::InvalidInput("empty time grid".into()));
    }
    let values: Vec<f64> = grid.iter().map(|&t| f(t)).collect();
    if grid.len() == 1 {
        return Ok(Peak {
            time: grid[0],
            probability: values[0],
        });
    }
    let last = grid.len() - 1;
    let mut peaks = Vec::new();
    for i in 0..=last {
        let left = i == 0 || values[i] >= values[i - 1];
        let right = i == last || values[i] >= values[i + 1];
        if !(left && right) {
            continue;
        }
        let (lo, hi) = (grid[i.saturating_sub(1)], grid[(i + 1).min(last)]);
        let refined = golden_section_max(&f, lo, hi, GOLDEN_TOL);
        peaks.push(if refined.probability >= values[i] {
            refined
        } else {
            Peak {
                time: grid[i],
                probability: values[i],
            }
        });
    }
    let best = peaks
        .iter()
        .map(|p| p.probability)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(*peaks
        .iter()
        .find(|p| p.probability >= best - PEAK_TIE_TOL)
        .expect("a grid always has a local maximum"))
}

/// One row of a scan table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    pub n: usize,
    /// Dimension of the reduced space (blocks for CTQW, block pairs for DTQW).
    pub j: usize,
    pub t_star: f64,
    pub p_star: f64,
}

/// Default CTQW horizon `π√N`, which covers the first peak of complete-like
/// graphs and stops before the second.
pub fn default_ctqw_horizon(n: usize) -> f64 {
    std::f64::consts::PI * (n as f64).sqrt()
}

/// Default DTQW horizon `⌈2π√N⌉` steps.
pub fn default_dtqw_horizon(n: usize) -> usize {
    (2.0 * std::f64::consts::PI * (n as f64).sqrt()).ceil() as usize
}

/// Optimal CTQW search time on the reduced Hamiltonian.
pub fn scan_ctqw(
    g: &Graph,
    marked: usize,
    gamma: f64,
    tmax: f64,
    samples: usize,
) -> Result<ScanRow> {
    if !g.is_connected() {
        return Err(Error::InvalidInput("search needs a connected graph".into()));
    }
    if samples < 2 || tmax.is_nan() || tmax <= 0.0 {
        return Err(Error::InvalidInput(
            "scan needs tmax > 0 and at least two samples".into(),
        ));
    }
    let p = coarsest_equitable_partition(g, marked)?;
    let j = p.block_count();
    let search = ReducedCtqwSearch::new(p, gamma)?;
    let peak = refine_peak(|t| search.marked_probability(t), &time_grid(tmax, samples))?;
    Ok(ScanRow {
        n: g.vertex_count(),
        j,
        t_star: peak.time,
        p_star: peak.probability,
    })
}

/// Best DTQW search step in `0..=max_steps` on the reduced operator.
pub fn scan_dtqw(g: &Graph, marked: usize, max_steps: usize) -> Result<ScanRow> {
    let mut walk = ReducedDtqwSearch::new(g, marked)?;
    let mut best = (0usize, walk.marked_probability());
    for step in 1..=max_steps {
        walk.step();
        let p = walk.marked_probability();
        if p > best.1 {
            best = (step, p);
        }
    }
    Ok(ScanRow {
        n: g.vertex_count(),
        j: walk.operator.dim(),
        t_star: best.0 as f64,
        p_star: best.1,
    })
}

pub fn scan_table_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from("N,J,T_star,P_star\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.n,
            r.j,
            format_float(r.t_star),
            format_float(r.p_star)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_graph;
    use crate::reduction::apex_search_time;

    #[test]
    fn golden_section_on_parabola() {
        let peak = golden_section_max(|x| 1.0 - (x - 0.3).powi(2), 0.0, 1.0, 1e-9);
        assert!((peak.time - 0.3).abs() < 1e-8);
        assert!((peak.probability - 1.0).abs() < 1e-15);
    }

    #[test]
    fn grid_refinement() {
        let grid = time_grid(3.0, 7);
        let peak = refine_peak(|t| (t - 1.234).cos(), &grid).unwrap();
        assert!((peak.time - 1.234).abs() < 1e-6);
        assert!(refine_peak(|t| t, &[]).is_err());
        assert_eq!(refine_peak(|_| 0.5, &[0.0]).unwrap().time, 0.0);
    }

    #[test]
    fn earliest_of_equal_peaks() {
        // Peaks of equal height at 1, 3, 5, ...; a coarse grid lands nearer the later ones.
        let f = |t: f64| (std::f64::consts::FRAC_PI_2 * t).sin().powi(2);
        let grid = time_grid(6.0, 8);
        let peak = refine_peak(f, &grid).unwrap();
        assert!((peak.time - 1.0).abs() < 1e-6, "{peak:?}");
        let flat = refine_peak(|_| 0.5, &time_grid(1.0, 5)).unwrap();
        assert!(flat.probability == 0.5 && flat.time <= 0.25);
    }

    #[test]
    fn complete_graph_scan() {
        let n = 32;
        let g = complete_graph(n).unwrap();
        let row = scan_ctqw(&g, 0, 1.0 / (n - 2) as f64, default_ctqw_horizon(n), 400).unwrap();
        assert_eq!(row.j, 2);
        let expected = apex_search_time(n, n - 2).unwrap();
        assert!((row.t_star - expected).abs() / expected < 1e-6);
        assert!((row.p_star - (1.0 - 1.0 / n as f64)).abs() < 1e-12);
    }

    #[test]
    fn dtqw_scan_reports() {
        let g = complete_graph(16).unwrap();
        let row = scan_dtqw(&g, 0, default_dtqw_horizon(16)).unwrap();
        assert_eq!(row.j, 3);
        assert!(row.p_star > 1.0 / 16.0);
        let csv = scan_table_csv(&[row]);
        assert!(csv.starts_with("N,J,T_star,P_star\n16,3,"));
    }
}
