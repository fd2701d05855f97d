//! Turning command-line graph arguments into a graph.

use std::fs;

use qwsearch::graph::{
    apex_join, complete_graph, cycle_graph, hypercube_graph, paper_example_graph,
    random_regular_graph, read_edge_list, torus_grid, Graph,
};

use crate::args::{Family, GraphArgs};
use crate::error::CliError;

/// A graph plus what is known about it for choosing defaults.
pub struct Instance {
    pub graph: Graph,
    pub descriptor: String,
    /// The `d` of `γ = 1/d`, when the family fixes one.
    pub natural_degree: Option<usize>,
}

pub fn load(args: &GraphArgs) -> Result<Instance, CliError> {
    if let Some(path) = &args.edge_list {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        let graph = read_edge_list(&text)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        let natural_degree = graph.regular_degree().filter(|&d| d > 0);
        return Ok(Instance {
            graph,
            descriptor: format!("edge-list({})", path.display()),
            natural_degree,
        });
    }
    let family = args.family.expect("clap requires a graph source");
    build(family, args.n, args.d, args.cols, args.seed)
}

fn need(value: Option<usize>, flag: &str, family: Family) -> Result<usize, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("--{flag} is required for {family:?}")))
}

pub fn build(
    family: Family,
    n: Option<usize>,
    d: Option<usize>,
    cols: Option<usize>,
    seed: u64,
) -> Result<Instance, CliError> {
    let (graph, descriptor, natural_degree) = match family {
        Family::Complete => {
            let n = need(n, "n", family)?;
            let g = complete_graph(n)?;
            // Complete graphs are apex joins over K_{N-1}, so d = N - 2.
            (
                g,
                format!("complete(n={n})"),
                n.checked_sub(2).filter(|&d| d > 0),
            )
        }
        Family::Cycle => {
            let n = need(n, "n", family)?;
            (cycle_graph(n)?, format!("cycle(n={n})"), Some(2))
        }
        Family::Hypercube => {
            let n = need(n, "n", family)?;
            if !n.is_power_of_two() || n < 2 {
                return Err(CliError::Precondition(format!(
                    "hypercube --n must be a power of two ≥ 2, got {n}"
                )));
            }
            let dim = n.trailing_zeros() as usize;
            (
                hypercube_graph(dim)?,
                format!("hypercube(dim={dim})"),
                Some(dim),
            )
        }
        Family::Torus => {
            let rows = need(n, "n", family)?;
            let cols = cols.unwrap_or(rows);
            let g = torus_grid(rows, cols)?;
            let degree = g.regular_degree();
            (g, format!("torus(rows={rows},cols={cols})"), degree)
        }
        Family::RandomRegular => {
            let n = need(n, "n", family)?;
            let d = need(d, "d", family)?;
            let g = random_regular_graph(n, d, seed)?;
            (
                g,
                format!("random-regular(n={n},d={d},seed={seed})"),
                Some(d).filter(|&d| d > 0),
            )
        }
        Family::ApexRegular => {
            let n = need(n, "n", family)?;
            let d = need(d, "d", family)?;
            if n < 2 {
                return Err(CliError::Precondition("apex-regular needs --n ≥ 2".into()));
            }
            let g = apex_join(&random_regular_graph(n - 1, d, seed)?)?;
            (
                g,
                format!("apex-regular(n={n},d={d},seed={seed})"),
                Some(d).filter(|&d| d > 0),
            )
        }
        Family::ApexCycle => {
            let n = need(n, "n", family)?;
            if n < 4 {
                return Err(CliError::Precondition("apex-cycle needs --n ≥ 4".into()));
            }
            (
                apex_join(&cycle_graph(n - 1)?)?,
                format!("apex-cycle(n={n})"),
                Some(2),
            )
        }
        Family::PaperExample => (paper_example_graph(), "paper-example".to_string(), None),
    };
    Ok(Instance {
        graph,
        descriptor,
        natural_degree,
    })
}

impl Instance {
    /// Explicit `γ`, else `1/d` for families with a natural degree.
    pub fn gamma(&self, explicit: Option<f64>) -> Result<f64, CliError> {
        match (explicit, self.natural_degree) {
            (Some(g), _) if g.is_finite() => Ok(g),
            (Some(g), _) => Err(CliError::Usage(format!("--gamma must be finite, got {g}"))),
            (None, Some(d)) => Ok(1.0 / d as f64),
            (None, None) => Err(CliError::Usage(format!(
                "no default hopping rate for {}; pass --gamma",
                self.descriptor
            ))),
        }
    }

    pub fn check_marked(&self, marked: usize) -> Result<(), CliError> {
        let n = self.graph.vertex_count();
        if marked >= n {
            return Err(CliError::Precondition(format!(
                "marked vertex {marked} outside 0..{n}"
            )));
        }
        Ok(())
    }
}
