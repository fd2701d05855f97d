//! Equitable partitions with the marked vertex isolated in block 0.
//!
//! A partition `B_0, …, B_{J-1}` is equitable when every vertex of `B_j` has
//! the same number `d[j][k]` of neighbors in `B_k`. The coarsest such
//! partition with `B_0 = {marked}` is found by colour refinement.

use std::collections::HashMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::ComplexMatrix;

/// Validated equitable partition of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquitablePartition {
    blocks: Vec<Vec<usize>>,
    quotient_degrees: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

/// Serialized form: `{"blocks": [[…], …], "quotient_degrees": [[…], …]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionRecord {
    pub blocks: Vec<Vec<usize>>,
    pub quotient_degrees: Vec<Vec<usize>>,
}

impl EquitablePartition {
    /// Validates `blocks` against `g`; block 0 must be the marked singleton.
    pub fn from_blocks(g: &Graph, blocks: Vec<Vec<usize>>) -> Result<Self> {
        match validate_equitable(g, &blocks) {
            Validation::Equitable { quotient_degrees } => {
                let mut block_of = vec![0; g.vertex_count()];
                for (j, block) in blocks.iter().enumerate() {
                    for &v in block {
                        block_of[v] = j;
                    }
                }
                Ok(Self {
                    blocks,
                    quotient_degrees,
                    block_of,
                })
            }
            Validation::Violated(v) => Err(Error::InvalidInput(format!(
                "not an equitable partition: {v}"
            ))),
        }
    }

    /// Parses a [`PartitionRecord`] and re-validates it against `g`,
    /// including the stored quotient degrees.
    pub fn from_json(g: &Graph, text: &str) -> Result<Self> {
        let record: PartitionRecord = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("partition JSON: {e}")))?;
        let p = Self::from_blocks(g, record.blocks)?;
        if p.quotient_degrees != record.quotient_degrees {
            return Err(Error::InvalidInput(
                "stored quotient degrees disagree with the graph".into(),
            ));
        }
        Ok(p)
    }

    pub fn to_record(&self) -> PartitionRecord {
        PartitionRecord {
            blocks: self.blocks.clone(),
            quotient_degrees: self.quotient_degrees.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("partition serializes")
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, j: usize) -> &[usize] {
        &self.blocks[j]
    }

    /// Number of blocks `J`.
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_size(&self, j: usize) -> usize {
        self.blocks[j].len()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.block_of.len()
    }

    pub fn marked(&self) -> usize {
        self.blocks[0][0]
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    /// `d[j][k]`: neighbors in block `k` of any vertex in block `j`.
    pub fn quotient_degrees(&self) -> &[Vec<usize>] {
        &self.quotient_degrees
    }

    pub fn quotient_degree(&self, j: usize, k: usize) -> usize {
        self.quotient_degrees[j][k]
    }

    /// Common vertex degree inside block `j` (row sum of the quotient matrix).
    pub fn block_degree(&self, j: usize) -> usize {
        self.quotient_degrees[j].iter().sum()
    }

    /// `|E|`, recovered as `Σ n_j·d_j / 2`.
    pub fn edge_count(&self) -> usize {
        (0..self.block_count())
            .map(|j| self.block_size(j) * self.block_degree(j))
            .sum::<usize>()
            / 2
    }
}

/// Outcome of [`validate_equitable`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validation {
    Equitable { quotient_degrees: Vec<Vec<usize>> },
    Violated(Violation),
}

impl Validation {
    pub fn is_equitable(&self) -> bool {
        matches!(self, Validation::Equitable { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NoBlocks,
    MarkedBlockNotSingleton {
        size: usize,
    },
    EmptyBlock {
        block: usize,
    },
    VertexOutOfRange {
        vertex: usize,
    },
    VertexRepeated {
        vertex: usize,
    },
    VertexMissing {
        vertex: usize,
    },
    /// `vertex` has `found` neighbors in `block`, other members of its own
    /// block have `expected`.
    DegreeMismatch {
        vertex: usize,
        block: usize,
        expected: usize,
        found: usize,
    },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NoBlocks => write!(f, "no blocks"),
            Violation::MarkedBlockNotSingleton { size } => {
                write!(f, "block 0 must be a singleton, has {size} vertices")
            }
            Violation::EmptyBlock { block } => write!(f, "block {block} is empty"),
            Violation::VertexOutOfRange { vertex } => write!(f, "vertex {vertex} out of range"),
            Violation::VertexRepeated { vertex } => {
                write!(f, "vertex {vertex} appears more than once")
            }
            Violation::VertexMissing { vertex } => write!(f, "vertex {vertex} is in no block"),
            Violation::DegreeMismatch {
                vertex,
                block,
                expected,
                found,
            } => write!(
                f,
                "vertex {vertex} has {found} neighbors in block {block}, expected {expected}"
            ),
        }
    }
}

/// Brute-force check of the three partition conditions.
pub fn validate_equitable(g: &Graph, blocks: &[Vec<usize>]) -> Validation {
    use Validation::Violated;

    let n = g.vertex_count();
    let Some(first) = blocks.first() else {
        return Violated(Violation::NoBlocks);
    };
    if first.len() != 1 {
        return Violated(Violation::MarkedBlockNotSingleton { size: first.len() });
    }
    let mut block_of = vec![usize::MAX; n];
    for (j, block) in blocks.iter().enumerate() {
        if block.is_empty() {
            return Violated(Violation::EmptyBlock { block: j });
        }
        for &v in block {
            if v >= n {
                return Violated(Violation::VertexOutOfRange { vertex: v });
            }
            if block_of[v] != usize::MAX {
                return Violated(Violation::VertexRepeated { vertex: v });
            }
            block_of[v] = j;
        }
    }
    if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
        return Violated(Violation::VertexMissing { vertex: v });
    }

    let count_into = |v: usize| {
        let mut counts = vec![0usize; blocks.len()];
        for &w in g.neighbors(v) {
            counts[block_of[w]] += 1;
        }
        counts
    };
    let mut quotient_degrees = Vec::with_capacity(blocks.len());
    for block in blocks {
        let reference = count_into(block[0]);
        for &v in &block[1..] {
            let counts = count_into(v);
            if let Some(k) = (0..blocks.len()).find(|&k| counts[k] != reference[k]) {
                return Violated(Violation::DegreeMismatch {
                    vertex: v,
                    block: k,
                    expected: reference[k],
                    found: counts[k],
                });
            }
        }
        quotient_degrees.push(reference);
    }
    Validation::Equitable { quotient_degrees }
}

/// Coarsest equitable partition in which `marked` is a singleton block 0.
///
/// Colour refinement seeded with `{marked}` versus the rest; see
/// [`refine_partition`].
pub fn coarsest_equitable_partition(g: &Graph, marked: usize) -> Result<EquitablePartition> {
    let n = g.vertex_count();
    if marked >= n {
        return Err(Error::InvalidInput(format!(
            "marked vertex {marked} outside 0..{n}"
        )));
    }
    let mut blocks = vec![vec![marked]];
    let rest: Vec<usize> = (0..n).filter(|&v| v != marked).collect();
    if !rest.is_empty() {
        blocks.push(rest);
    }
    refine_partition(g, blocks)
}

/// Coarsest equitable refinement of `initial`, whose first block must be a
/// singleton.
///
/// Each round splits every block by the vector of neighbor counts per
/// current block. The part holding the block's first vertex keeps its
/// position; the other parts are appended, ordered by smallest vertex.
/// Blocks only ever split, so at most `n` rounds run.
pub fn refine_partition(g: &Graph, initial: Vec<Vec<usize>>) -> Result<EquitablePartition> {
    let n = g.vertex_count();
    let mut blocks = initial;
    for block in &mut blocks {
        block.sort_unstable();
    }
    let mut colour = vec![usize::MAX; n];
    for (j, block) in blocks.iter().enumerate() {
        for &v in block {
            if v >= n || colour[v] != usize::MAX {
                return Err(Error::InvalidInput(format!(
                    "vertex {v} is out of range or repeated in the initial partition"
                )));
            }
            colour[v] = j;
        }
    }
    if blocks.first().map(Vec::len) != Some(1) || colour.contains(&usize::MAX) {
        return Err(Error::InvalidInput(
            "initial partition must cover every vertex and start with a singleton".into(),
        ));
    }

    loop {
        let mut appended: Vec<Vec<usize>> = Vec::new();
        for block in &mut blocks {
            if block.len() == 1 {
                continue;
            }
            let mut groups: Vec<Vec<usize>> = Vec::new();
            let mut index: HashMap<Vec<(usize, usize)>, usize> = HashMap::new();
            for &v in block.iter() {
                let sig = signature(g, &colour, v);
                let next = groups.len();
                let slot = *index.entry(sig).or_insert(next);
                if slot == next {
                    groups.push(Vec::new());
                }
                groups[slot].push(v);
            }
            if groups.len() > 1 {
                let mut groups = groups.into_iter();
                *block = groups.next().expect("at least one group");
                appended.extend(groups);
            }
        }
        if appended.is_empty() {
            break;
        }
        appended.sort_by_key(|b| b[0]);
        blocks.extend(appended);
        for (j, block) in blocks.iter().enumerate() {
            for &v in block {
                colour[v] = j;
            }
        }
    }

    EquitablePartition::from_blocks(g, blocks)
}

/// Sorted `(colour, count)` pairs over the neighbors of `v`.
fn signature(g: &Graph, colour: &[usize], v: usize) -> Vec<(usize, usize)> {
    let mut seen: Vec<usize> = g.neighbors(v).iter().map(|&w| colour[w]).collect();
    seen.sort_unstable();
    let mut sig: Vec<(usize, usize)> = Vec::new();
    for c in seen {
        match sig.last_mut() {
            Some((last, count)) if *last == c => *count += 1,
            _ => sig.push((c, 1)),
        }
    }
    sig
}

/// Symmetrized quotient `Ā[j][k] = sqrt(d[j][k]·d[k][j])`.
pub fn quotient_adjacency(p: &EquitablePartition) -> ComplexMatrix {
    let d = p.quotient_degrees();
    let size = p.block_count();
    ComplexMatrix::from_fn(size, size, |j, k| {
        Complex64::new(((d[j][k] * d[k][j]) as f64).sqrt(), 0.0)
    })
}
