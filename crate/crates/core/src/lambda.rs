//! L(2,1) labelings: the threshold closed form, the diameter-two extension
//! rule, the chain-graph labeling algorithm and its bounds.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{Block, GeneratingCode};
use crate::graph::{build_chain, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LambdaError {
    #[error("labeling has {labeling} colors but the graph has {graph} vertices")]
    SizeMismatch { labeling: usize, graph: usize },
    #[error("chain partition needs two non-empty lists of equal length (got {m} and {n})")]
    PartitionShape { m: usize, n: usize },
    #[error("chain partition cell sizes must be positive")]
    EmptyCell,
}

/// A vertex coloring with its span and holes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labeling {
    pub colors: Vec<u64>,
    pub span: u64,
    pub holes: Vec<u64>,
}

impl Labeling {
    pub fn new(colors: Vec<u64>) -> Self {
        let (span, holes) = span_and_holes(&colors);
        Labeling { colors, span, holes }
    }
}

fn span_and_holes(colors: &[u64]) -> (u64, Vec<u64>) {
    let (Some(&lo), Some(&hi)) = (colors.iter().min(), colors.iter().max()) else {
        return (0, Vec::new());
    };
    let used: BTreeSet<u64> = colors.iter().copied().collect();
    let holes = (lo + 1..hi).filter(|c| !used.contains(c)).collect();
    (hi - lo, holes)
}

/// Checks the L(2,1) conditions and that `span`/`holes` match the colors.
pub fn verify_labeling(g: &Graph, lab: &Labeling) -> Result<bool, LambdaError> {
    if lab.colors.len() != g.n() {
        return Err(LambdaError::SizeMismatch {
            labeling: lab.colors.len(),
            graph: g.n(),
        });
    }
    let c = &lab.colors;
    for u in 0..g.n() {
        for v in g.neighbors(u) {
            if c[u].abs_diff(c[v]) < 2 {
                return Ok(false);
            }
            for w in g.neighbors(v) {
                if w != u && !g.has_edge(u, w) && c[u] == c[w] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(span_and_holes(c) == (lab.span, lab.holes.clone()))
}

/// λ of the diameter-two graph obtained by adding `m` isolated and `n`
/// dominating vertices to a diameter-two graph with λ = `s` and `holes`
/// holes in a minimum labeling.
pub fn extend_diameter_two(s: u64, holes: u64, m: u64, n: u64) -> u64 {
    s + m.saturating_sub(holes) + 2 * n
}

/// Closed-form λ of a threshold graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdLambda {
    pub span: u64,
    /// Hole count `h_i` after each string.
    pub holes_per_stage: Vec<u64>,
}

pub fn lambda_threshold(code: &GeneratingCode) -> ThresholdLambda {
    let blocks = code.blocks();
    let ones: u64 = blocks.iter().map(|b| b.ones as u64).sum();
    let mut span = 2 * ones + blocks[0].zeros as u64 - 1;
    let mut holes_per_stage = Vec::with_capacity(blocks.len());
    let mut prev_ones = 0u64;
    for (i, b) in blocks.iter().enumerate() {
        let h = b.ones as u64 + prev_ones.saturating_sub(b.zeros as u64);
        holes_per_stage.push(h);
        if let Some(next) = blocks.get(i + 1) {
            span += (next.zeros as u64).saturating_sub(h);
        }
        prev_ones = b.ones as u64;
    }
    ThresholdLambda { span, holes_per_stage }
}

/// Cell sizes of a chain graph `G(m_1..m_l; n_1..n_l)` where every vertex
/// of `U_i` is adjacent to exactly `V_1 ∪ ... ∪ V_{l+1-i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainPartition {
    m: Vec<u32>,
    n: Vec<u32>,
}

impl ChainPartition {
    pub fn new(m: Vec<u32>, n: Vec<u32>) -> Result<Self, LambdaError> {
        if m.is_empty() || m.len() != n.len() {
            return Err(LambdaError::PartitionShape { m: m.len(), n: n.len() });
        }
        if m.iter().chain(&n).any(|&x| x == 0) {
            return Err(LambdaError::EmptyCell);
        }
        Ok(ChainPartition { m, n })
    }

    /// `U_i` is the 0-part of string `i`; `V_j` is the 1-part of string
    /// `l + 1 - j`, so `V_1` is the last string's complete part.
    pub fn from_code(code: &GeneratingCode) -> Self {
        let m = code.blocks().iter().map(|b| b.zeros).collect();
        let n = code.blocks().iter().rev().map(|b| b.ones).collect();
        ChainPartition { m, n }
    }

    pub fn to_code(&self) -> GeneratingCode {
        let blocks = self
            .m
            .iter()
            .zip(self.n.iter().rev())
            .map(|(&m, &n)| Block::new(m, n));
        GeneratingCode::from_blocks(blocks).expect("partition cells are positive")
    }

    pub fn m(&self) -> &[u32] {
        &self.m
    }

    pub fn n(&self) -> &[u32] {
        &self.n
    }

    pub fn l(&self) -> usize {
        self.m.len()
    }

    /// The chain graph in construction order of [`ChainPartition::to_code`].
    pub fn graph(&self) -> Graph {
        build_chain(&self.to_code())
    }

    /// First vertex index of each code block.
    fn block_offsets(&self) -> Vec<usize> {
        let l = self.l();
        let mut offsets = Vec::with_capacity(l);
        let mut at = 0usize;
        for j in 0..l {
            offsets.push(at);
            at += self.m[j] as usize + self.n[l - 1 - j] as usize;
        }
        offsets
    }
}

/// Bookkeeping for one `V_i`, `i >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStage {
    /// 1-based index `i` of the cell `V_i`.
    pub cell: usize,
    pub reused: u64,
    pub fresh: u64,
    /// Reusable colors left over for later cells.
    pub credit: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainLambda {
    pub span: u64,
    pub labeling: Labeling,
    pub stages: Vec<ChainStage>,
}

/// Labels a chain graph cell by cell.
///
/// `U_1, ..., U_l` take `0..Σm` in order, `V_1` sits above the hole `Σm`.
/// Each later `V_i` is at distance three from `U_{l+2-i}, ..., U_l`, so it
/// reuses their colors (highest first) except the lowest color of
/// `U_{l+2-i}`, which is adjacent to the top color of `U_{l+1-i}`. `V_2`
/// also gets the hole. Vertices beyond the reusable supply take fresh
/// colors above the current maximum.
pub fn lambda_chain(p: &ChainPartition) -> ChainLambda {
    let l = p.l();
    let offsets = p.block_offsets();
    let total_n: usize = offsets.last().copied().unwrap_or(0) + p.m[l - 1] as usize + p.n[0] as usize;
    let mut colors = vec![0u64; total_n];

    // Color range [start, end) of each U cell.
    let mut u_range = Vec::with_capacity(l);
    let mut next = 0u64;
    for (i, &m) in p.m.iter().enumerate() {
        u_range.push((next, next + m as u64));
        for k in 0..m as usize {
            colors[offsets[i] + k] = next + k as u64;
        }
        next += m as u64;
    }
    let sum_m = next;

    // V_j lives in code block l - j.
    let v_vertex = |j: usize, k: usize| offsets[l - j] + p.m[l - j] as usize + k;

    let mut max_color = sum_m;
    for k in 0..p.n[0] as usize {
        max_color = sum_m + 1 + k as u64;
        colors[v_vertex(1, k)] = max_color;
    }

    let mut pool: BTreeSet<u64> = BTreeSet::new();
    let mut stages = Vec::with_capacity(l.saturating_sub(1));
    for i in 2..=l {
        // U_{l+2-i} is index l+1-i (0-based).
        let (lo, hi) = u_range[l + 1 - i];
        pool.extend(lo + 1..hi);
        if i == 2 {
            pool.insert(sum_m);
        } else {
            pool.insert(u_range[l + 2 - i].0);
        }
        let (mut reused, mut fresh) = (0u64, 0u64);
        for k in 0..p.n[i - 1] as usize {
            let color = match pool.pop_last() {
                Some(c) => {
                    reused += 1;
                    c
                }
                None => {
                    fresh += 1;
                    max_color += 1;
                    max_color
                }
            };
            colors[v_vertex(i, k)] = color;
        }
        stages.push(ChainStage {
            cell: i,
            reused,
            fresh,
            credit: pool.len() as u64,
        });
    }

    let labeling = Labeling::new(colors);
    ChainLambda {
        span: labeling.span,
        labeling,
        stages,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainLambdaBounds {
    pub lower: u64,
    pub upper: u64,
    /// Every `n_{i+1} > m_{l+1-i}`.
    pub max_attained: bool,
    /// Every `n_{i+1} <= m_{l+1-i}`.
    pub min_attained: bool,
}

pub fn lambda_chain_bounds(p: &ChainPartition) -> ChainLambdaBounds {
    let l = p.l();
    let lower = p.m.iter().map(|&m| m as u64).sum::<u64>() + p.n[0] as u64;
    // (n_{i+1}, m_{l+1-i}) for i = 1..l-1, 0-based (n[i], m[l-i]).
    let pairs: Vec<(i64, i64)> = (1..l).map(|i| (p.n[i] as i64, p.m[l - i] as i64)).collect();
    let correction: i64 = pairs.iter().map(|(n, m)| n - m).sum();
    ChainLambdaBounds {
        lower,
        upper: (lower as i64 + correction) as u64,
        max_attained: pairs.iter().all(|(n, m)| n > m),
        min_attained: pairs.iter().all(|(n, m)| n <= m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn code(blocks: &[(u32, u32)]) -> GeneratingCode {
        GeneratingCode::from_blocks(blocks.iter().copied()).unwrap()
    }

    fn partition(m: &[u32], n: &[u32]) -> ChainPartition {
        ChainPartition::new(m.to_vec(), n.to_vec()).unwrap()
    }

    #[test]
    fn threshold_closed_form() {
        assert_eq!(lambda_threshold(&code(&[(3, 2)])).span, 6);
        assert_eq!(lambda_threshold(&code(&[(1, 3)])).span, 6);
        let r = lambda_threshold(&code(&[(2, 2), (2, 2)]));
        assert_eq!(r.span, 9);
        assert_eq!(r.holes_per_stage[0], 2);
    }

    #[test]
    fn extension_rule() {
        assert_eq!(extend_diameter_two(4, 2, 0, 0), 4);
        assert_eq!(extend_diameter_two(3, 1, 0, 1), 5);
        assert_eq!(extend_diameter_two(3, 1, 3, 0), 5);
    }

    #[test]
    fn closing_example() {
        let p = partition(&[5, 2, 3, 2, 4, 3, 3], &[2, 2, 5, 3, 6, 2, 5]);
        let r = lambda_chain(&p);
        assert_eq!(r.span, 30);
        assert!(verify_labeling(&p.graph(), &r.labeling).unwrap());
        let fresh: Vec<u64> = r.stages.iter().map(|s| s.fresh).collect();
        assert_eq!(fresh, vec![0, 1, 0, 3, 0, 2]);
    }

    #[test]
    fn small_chains() {
        let p4 = partition(&[1, 1], &[1, 1]);
        assert_eq!(lambda_chain(&p4).span, 3);
        let c4 = partition(&[2], &[2]);
        let r = lambda_chain(&c4);
        assert_eq!(r.span, 4);
        assert_eq!(r.labeling.colors, vec![0, 1, 3, 4]);
    }

    #[test]
    fn partition_code_round_trip() {
        let c = code(&[(1, 2), (3, 1), (2, 4)]);
        let p = ChainPartition::from_code(&c);
        assert_eq!(p.m(), &[1, 3, 2]);
        assert_eq!(p.n(), &[4, 1, 2]);
        assert_eq!(p.to_code(), c);
    }

    #[test]
    fn partition_nesting_matches_graph() {
        let p = partition(&[2, 1, 3], &[1, 2, 2]);
        let g = p.graph();
        let offsets = p.block_offsets();
        // Vertex of U_2 sees V_1 and V_2 only: 1 + 2 neighbors.
        assert_eq!(g.degree(offsets[1]), 3);
        // Vertex of V_1 sees every U vertex.
        let v1 = offsets[2] + 3;
        assert_eq!(g.degree(v1), 6);
    }

    #[test]
    fn bounds() {
        let b = lambda_chain_bounds(&partition(&[2], &[2]));
        assert_eq!((b.lower, b.upper), (4, 4));
        let b = lambda_chain_bounds(&partition(&[1, 1], &[1, 1]));
        assert_eq!((b.lower, b.upper, b.min_attained, b.max_attained), (3, 3, true, false));
        let b = lambda_chain_bounds(&partition(&[1, 1], &[1, 2]));
        assert_eq!((b.lower, b.upper, b.min_attained, b.max_attained), (3, 4, false, true));
    }

    #[test]
    fn partition_validation() {
        assert!(matches!(
            ChainPartition::new(vec![1], vec![1, 2]),
            Err(LambdaError::PartitionShape { .. })
        ));
        assert!(matches!(ChainPartition::new(vec![], vec![]), Err(LambdaError::PartitionShape { .. })));
        assert_eq!(ChainPartition::new(vec![1, 0], vec![1, 1]), Err(LambdaError::EmptyCell));
    }

    #[test]
    fn verify() {
        let k2 = Graph::complete(2);
        assert!(verify_labeling(&k2, &Labeling::new(vec![0, 2])).unwrap());
        assert!(!verify_labeling(&k2, &Labeling::new(vec![0, 1])).unwrap());
        let p4 = Graph::path(4);
        let lab = Labeling::new(vec![0, 2, 4, 1]);
        assert_eq!(lab.span, 4);
        assert_eq!(lab.holes, vec![3]);
        assert!(verify_labeling(&p4, &lab).unwrap());
        // Distance-two clash: vertices 0 and 2 share color.
        assert!(!verify_labeling(&p4, &Labeling::new(vec![0, 2, 0, 3])).unwrap());
        let mut stale = Labeling::new(vec![0, 2, 4, 1]);
        stale.span = 3;
        assert!(!verify_labeling(&p4, &stale).unwrap());
        assert_eq!(
            verify_labeling(&p4, &Labeling::new(vec![0, 2])),
            Err(LambdaError::SizeMismatch { labeling: 2, graph: 4 })
        );
    }
}
