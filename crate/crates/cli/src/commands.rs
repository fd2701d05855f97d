use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use qwsearch::ctqw::ctqw_search_series;
use qwsearch::dtqw::{dtqw_search_series, hadamard_walk_line, kolmogorov_distance};
use qwsearch::partition::coarsest_equitable_partition;
use qwsearch::reduction::{
    apex_search_time, reduced_ctqw_search_series, reduced_dtqw_search_series,
};
use qwsearch::scan::{
    default_ctqw_horizon, default_dtqw_horizon, scan_ctqw, scan_dtqw, scan_table_csv, ScanRow,
};
use qwsearch::series::{format_float, time_grid, SCHEMA_VERSION};
use qwsearch::TimeSeries;

use crate::args::{Family, Format, GraphArgs, Mode, OutputArgs, Walk};
use crate::error::CliError;
use crate::source::{self, Instance};

/// Largest tolerated full/reduced gap in `--mode both`.
const CTQW_BOTH_TOL: f64 = 1e-9;
const DTQW_BOTH_TOL: f64 = 1e-10;
/// Largest tolerated drift of the total probability.
const NORM_TOL: f64 = 1e-12;
/// Relative tolerance on the measured search time against the closed form.
const SEARCH_TIME_TOL: f64 = 1e-6;

fn emit(output: &OutputArgs, text: &str) -> Result<(), CliError> {
    match &output.out {
        Some(path) => write_file(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text)?;
    Ok(())
}

fn to_json(value: &impl Serialize) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable output");
    text.push('\n');
    text
}

pub fn partition(graph: &GraphArgs, output: &OutputArgs) -> Result<(), CliError> {
    let inst = source::load(graph)?;
    inst.check_marked(graph.marked)?;
    let p = coarsest_equitable_partition(&inst.graph, graph.marked)?;
    let text = match output.format.unwrap_or(Format::Json) {
        Format::Json => {
            let record = p.to_record();
            to_json(&json!({
                "schema": SCHEMA_VERSION,
                "graph": inst.descriptor,
                "vertices": inst.graph.vertex_count(),
                "marked": graph.marked,
                "blocks": record.blocks,
                "quotient_degrees": record.quotient_degrees,
            }))
        }
        Format::Csv => {
            let mut out = String::from("vertex,block\n");
            for v in 0..inst.graph.vertex_count() {
                let _ = writeln!(out, "{v},{}", p.block_of(v));
            }
            out
        }
    };
    emit(output, &text)
}

fn series_text(series: &TimeSeries, format: Format, discrepancy: Option<f64>) -> String {
    match format {
        Format::Csv => series.to_csv(),
        Format::Json => {
            let mut value = json!({
                "schema": SCHEMA_VERSION,
                "metadata": series.metadata,
                "axis": series.axis,
                "samples": series.samples,
            });
            if let Some(norms) = &series.norms {
                value["norms"] = json!(norms);
            }
            if let Some(d) = discrepancy {
                value["max_discrepancy"] = json!(d);
            }
            to_json(&value)
        }
    }
}

/// Runs the requested mode(s); `both` returns the full series and the gap.
fn run_modes(
    mode: Mode,
    full: impl FnOnce() -> qwsearch::Result<TimeSeries>,
    reduced: impl FnOnce() -> qwsearch::Result<TimeSeries>,
) -> Result<(TimeSeries, Option<f64>), CliError> {
    Ok(match mode {
        Mode::Full => (full()?, None),
        Mode::Reduced => (reduced()?, None),
        Mode::Both => {
            let f = full()?;
            let r = reduced()?;
            let gap = f.max_discrepancy(&r);
            (f, Some(gap))
        }
    })
}

fn finish_series(
    mut series: TimeSeries,
    inst: &Instance,
    output: &OutputArgs,
    discrepancy: Option<f64>,
    tolerance: f64,
) -> Result<(), CliError> {
    series.metadata.graph = inst.descriptor.clone();
    let format = output.format.unwrap_or(Format::Csv);
    emit(output, &series_text(&series, format, discrepancy))?;
    if let Some(gap) = discrepancy {
        eprintln!("max discrepancy full vs reduced: {}", format_float(gap));
        if gap.is_nan() || gap > tolerance {
            return Err(CliError::Tolerance(format!(
                "full and reduced differ by {gap:e} > {tolerance:e}"
            )));
        }
    }
    if let Some(drift) = series.max_norm_drift() {
        if drift.is_nan() || drift > NORM_TOL {
            return Err(CliError::Tolerance(format!(
                "total probability drifted by {drift:e}"
            )));
        }
    }
    Ok(())
}

pub fn ctqw(
    graph: &GraphArgs,
    gamma: Option<f64>,
    tmax: Option<f64>,
    samples: usize,
    mode: Mode,
    output: &OutputArgs,
) -> Result<(), CliError> {
    let inst = source::load(graph)?;
    inst.check_marked(graph.marked)?;
    let gamma = inst.gamma(gamma)?;
    let tmax = tmax.unwrap_or_else(|| default_ctqw_horizon(inst.graph.vertex_count()));
    if samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    if samples > 1 && !(tmax > 0.0 && tmax.is_finite()) {
        return Err(CliError::Usage(format!(
            "--tmax must be positive, got {tmax}"
        )));
    }
    let times = time_grid(tmax, samples);
    let (g, w) = (&inst.graph, graph.marked);
    let (series, gap) = run_modes(
        mode,
        || ctqw_search_series(g, w, gamma, &times),
        || reduced_ctqw_search_series(g, w, gamma, &times),
    )?;
    finish_series(series, &inst, output, gap, CTQW_BOTH_TOL)
}

pub fn dtqw(
    graph: &GraphArgs,
    steps: usize,
    mode: Mode,
    output: &OutputArgs,
) -> Result<(), CliError> {
    let inst = source::load(graph)?;
    inst.check_marked(graph.marked)?;
    let (g, w) = (&inst.graph, graph.marked);
    let (series, gap) = run_modes(
        mode,
        || dtqw_search_series(g, w, steps),
        || reduced_dtqw_search_series(g, w, steps),
    )?;
    finish_series(series, &inst, output, gap, DTQW_BOTH_TOL)
}

pub struct ScanRequest {
    pub family: Family,
    pub sizes: Vec<usize>,
    pub d: Option<usize>,
    pub seed: u64,
    pub walk: Walk,
    pub marked: usize,
    pub gamma: Option<f64>,
    pub tmax: Option<f64>,
    pub samples: usize,
    pub steps: Option<usize>,
}

/// `d` of the apex-over-`d`-regular closed form, when the instance is one.
fn closed_form_degree(family: Family, inst: &Instance) -> Option<usize> {
    match family {
        Family::Complete | Family::ApexCycle | Family::ApexRegular => inst.natural_degree,
        _ => None,
    }
}

fn scan_one(req: &ScanRequest, n: usize) -> Result<(ScanRow, Option<f64>), CliError> {
    let inst = source::build(req.family, Some(n), req.d, None, req.seed)?;
    inst.check_marked(req.marked)?;
    let size = inst.graph.vertex_count();
    match req.walk {
        Walk::Ctqw => {
            let gamma = inst.gamma(req.gamma)?;
            let tmax = req.tmax.unwrap_or_else(|| default_ctqw_horizon(size));
            let row = scan_ctqw(&inst.graph, req.marked, gamma, tmax, req.samples)?;
            // The closed form applies with the marked vertex at the apex and γ = 1/d.
            let expected = match closed_form_degree(req.family, &inst) {
                Some(d) if req.marked == 0 && gamma == 1.0 / d as f64 && d + 2 <= size => {
                    Some(apex_search_time(size, d)?)
                }
                _ => None,
            };
            Ok((row, expected))
        }
        Walk::Dtqw => {
            let steps = req.steps.unwrap_or_else(|| default_dtqw_horizon(size));
            Ok((scan_dtqw(&inst.graph, req.marked, steps)?, None))
        }
    }
}

pub fn scan(req: &ScanRequest, output: &OutputArgs) -> Result<(), CliError> {
    if req.sizes.is_empty() {
        return Err(CliError::Usage("--n needs at least one size".into()));
    }
    let results: Vec<Result<(ScanRow, Option<f64>), CliError>> =
        req.sizes.par_iter().map(|&n| scan_one(req, n)).collect();
    let mut rows = Vec::with_capacity(results.len());
    let mut expected = Vec::with_capacity(results.len());
    for r in results {
        let (row, t) = r?;
        rows.push(row);
        expected.push(t);
    }
    let text = match output.format.unwrap_or(Format::Csv) {
        Format::Csv => scan_table_csv(&rows),
        Format::Json => {
            let entries: Vec<_> = rows
                .iter()
                .zip(&expected)
                .map(|(r, t)| {
                    let mut v = json!({"N": r.n, "J": r.j, "T_star": r.t_star, "P_star": r.p_star});
                    if let Some(t) = t {
                        v["T_closed_form"] = json!(t);
                    }
                    v
                })
                .collect();
            to_json(&json!({
                "schema": SCHEMA_VERSION,
                "family": format!("{:?}", req.family).to_lowercase(),
                "walk": format!("{:?}", req.walk).to_lowercase(),
                "rows": entries,
            }))
        }
    };
    emit(output, &text)?;
    for (row, t) in rows.iter().zip(&expected) {
        if let Some(t) = t {
            let rel = (row.t_star - t).abs() / t;
            if rel.is_nan() || rel > SEARCH_TIME_TOL {
                return Err(CliError::Tolerance(format!(
                    "N={}: T*={} differs from the closed form {t} by {rel:e} relative",
                    row.n, row.t_star
                )));
            }
        }
    }
    Ok(())
}

pub fn konno_demo(steps: &[usize], output: &OutputArgs) -> Result<(), CliError> {
    if steps.is_empty() {
        return Err(CliError::Usage("--steps needs at least one value".into()));
    }
    if let Some(&n) = steps.iter().find(|&&n| n < 10) {
        return Err(CliError::Precondition(format!(
            "step counts must be at least 10, got {n}"
        )));
    }
    let distances: Vec<f64> = steps
        .par_iter()
        .map(|&n| kolmogorov_distance(&hadamard_walk_line(n)))
        .collect();
    let text = match output.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut out = String::from("n,distance\n");
            for (n, d) in steps.iter().zip(&distances) {
                let _ = writeln!(out, "{n},{}", format_float(*d));
            }
            out
        }
        Format::Json => {
            let rows: Vec<_> = steps
                .iter()
                .zip(&distances)
                .map(|(n, d)| json!({"n": n, "distance": d}))
                .collect();
            to_json(&json!({"schema": SCHEMA_VERSION, "rows": rows}))
        }
    };
    emit(output, &text)
}
