//! Exhaustive ground truth for small graphs.
//!
//! Every routine here is independent of the closed forms: metric dimension
//! by subset enumeration, λ by backtracking over increasing spans, and the
//! threshold dimensions by enumerating every edge-superset.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{any_subset, distance_matrix, recognize_threshold, DistanceMatrix, Graph, GraphError};
use crate::lambda::Labeling;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} is {actual}, over the oracle budget of {limit}")]
    BudgetExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("graph is disconnected")]
    DisconnectedGraph,
    #[error("no threshold graph contains the input as a spanning subgraph")]
    NoThresholdSupergraph,
    #[error("oracle budgets must be positive")]
    InvalidBudget,
}

impl From<GraphError> for OracleError {
    fn from(_: GraphError) -> Self {
        OracleError::DisconnectedGraph
    }
}

/// Size caps for the exponential searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBudget {
    pub max_n_beta: usize,
    pub max_n_lambda: usize,
    pub max_nonedges_tau: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_n_beta: 15,
            max_n_lambda: 12,
            max_nonedges_tau: 14,
        }
    }
}

impl OracleBudget {
    pub fn new(max_n_beta: usize, max_n_lambda: usize, max_nonedges_tau: usize) -> Result<Self, OracleError> {
        if max_n_beta == 0 || max_n_lambda == 0 || max_nonedges_tau == 0 {
            return Err(OracleError::InvalidBudget);
        }
        Ok(OracleBudget {
            max_n_beta,
            max_n_lambda,
            max_nonedges_tau,
        })
    }

    fn check(&self, what: &'static str, limit: usize, actual: usize) -> Result<(), OracleError> {
        budget_check(what, limit, actual)
    }
}

fn budget_check(what: &'static str, limit: usize, actual: usize) -> Result<(), OracleError> {
    if actual > limit {
        return Err(OracleError::BudgetExceeded { what, limit, actual });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricBasis {
    pub beta: u64,
    /// Lexicographically least minimum resolving set.
    pub basis: Vec<usize>,
}

fn resolves(d: &DistanceMatrix, w: &[usize], keys: &mut Vec<Vec<u32>>) -> bool {
    let n = d.n();
    keys.clear();
    keys.extend((0..n).map(|v| w.iter().map(|&x| d.get(v, x)).collect()));
    keys.sort_unstable();
    keys.windows(2).all(|p| p[0] != p[1])
}

/// Packs distance vectors into `u128` keys when every distance fits in a
/// byte and `|w| <= 16`.
fn resolves_packed(d: &DistanceMatrix, w: &[usize], keys: &mut Vec<u128>) -> bool {
    let n = d.n();
    keys.clear();
    keys.extend((0..n).map(|v| {
        w.iter().fold(0u128, |acc, &x| acc << 8 | d.get(v, x) as u128)
    }));
    keys.sort_unstable();
    keys.windows(2).all(|p| p[0] != p[1])
}

fn metric_basis(d: &DistanceMatrix) -> MetricBasis {
    let n = d.n();
    let packed = n <= 17 && d.diameter() < 256;
    let mut wide = Vec::new();
    let mut narrow = Vec::new();
    for k in 0..=n {
        let mut found = None;
        any_subset(n, k, |w| {
            let ok = if packed && k <= 16 {
                resolves_packed(d, w, &mut narrow)
            } else {
                resolves(d, w, &mut wide)
            };
            if ok {
                found = Some(w.to_vec());
            }
            ok
        });
        if let Some(basis) = found {
            return MetricBasis { beta: k as u64, basis };
        }
    }
    unreachable!("the full vertex set always resolves")
}

/// Minimum resolving set by enumerating subsets in increasing size.
pub fn exact_metric_dimension(g: &Graph, budget: &OracleBudget) -> Result<MetricBasis, OracleError> {
    budget.check("vertex count", budget.max_n_beta, g.n())?;
    let d = distance_matrix(g)?;
    Ok(metric_basis(&d))
}

/// Exact metric dimension for graphs too large for plain enumeration but
/// with few twin classes.
///
/// A resolving set misses at most one vertex of each twin class, and twins
/// are interchangeable, so it suffices to take every non-least class member
/// and search subsets of the `c` class representatives: `2^c` checks.
pub fn exact_metric_dimension_by_twins(g: &Graph, max_classes: usize) -> Result<MetricBasis, OracleError> {
    let class = twin_classes(g);
    let reps: Vec<usize> = (0..g.n()).filter(|&u| class[u] == u).collect();
    budget_check("twin class count", max_classes, reps.len())?;
    let d = distance_matrix(g)?;
    let forced: Vec<usize> = (0..g.n()).filter(|&u| class[u] != u).collect();
    let mut keys = Vec::new();
    for k in 0..=reps.len() {
        let mut found = None;
        any_subset(reps.len(), k, |pick| {
            let mut w = forced.clone();
            w.extend(pick.iter().map(|&i| reps[i]));
            let ok = resolves(&d, &w, &mut keys);
            if ok {
                w.sort_unstable();
                found = Some(w);
            }
            ok
        });
        if let Some(basis) = found {
            return Ok(MetricBasis {
                beta: basis.len() as u64,
                basis,
            });
        }
    }
    unreachable!("the full vertex set always resolves")
}

/// Exact λ with a minimum-span witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactLambda {
    pub lambda: u64,
    pub labeling: Labeling,
}

struct LabelSearch {
    order: Vec<usize>,
    /// For each position in `order`, earlier positions that are adjacent
    /// (gap 2) or at distance two (gap 1).
    near: Vec<Vec<(usize, u64)>>,
    /// Nearest earlier position holding a twin. Swapping the colors of two
    /// twins preserves validity, so twins take non-decreasing colors.
    prev_twin: Vec<Option<usize>>,
    colors: Vec<u64>,
}

/// `u` and `v` have the same neighbors apart from each other.
fn twins(g: &Graph, u: usize, v: usize) -> bool {
    (0..g.n())
        .filter(|&x| x != u && x != v)
        .all(|x| g.has_edge(u, x) == g.has_edge(v, x))
}

/// Least member of each vertex's twin class. Being twins is an
/// equivalence relation.
pub fn twin_classes(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut class: Vec<usize> = (0..n).collect();
    for v in 0..n {
        if let Some(u) = (0..v).find(|&u| twins(g, u, v)) {
            class[v] = class[u];
        }
    }
    class
}

impl LabelSearch {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let class = twin_classes(g);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&u| (std::cmp::Reverse(g.degree(u)), class[u], u));
        let mut near = vec![Vec::new(); n];
        let mut prev_twin = vec![None; n];
        for (i, &u) in order.iter().enumerate() {
            for (j, &v) in order.iter().enumerate().take(i) {
                if g.has_edge(u, v) {
                    near[i].push((j, 2));
                } else if g.neighbors(u).any(|x| g.has_edge(x, v)) {
                    near[i].push((j, 1));
                }
                if class[u] == class[v] {
                    prev_twin[i] = Some(j);
                }
            }
        }
        LabelSearch {
            order,
            near,
            prev_twin,
            colors: vec![0; n],
        }
    }

    fn place(&mut self, i: usize, span: u64) -> bool {
        if i == self.order.len() {
            return true;
        }
        let low = self.prev_twin[i].map_or(0, |j| self.colors[j]);
        for c in low..=span {
            let ok = self.near[i]
                .iter()
                .all(|&(j, gap)| self.colors[j].abs_diff(c) >= gap);
            if ok {
                self.colors[i] = c;
                if self.place(i + 1, span) {
                    return true;
                }
            }
        }
        false
    }

    fn labeling(&self) -> Labeling {
        let mut colors = vec![0; self.order.len()];
        for (i, &u) in self.order.iter().enumerate() {
            colors[u] = self.colors[i];
        }
        Labeling::new(colors)
    }
}

/// Exact λ by backtracking over spans `Δ + 1, Δ + 2, ...`.
pub fn exact_lambda(g: &Graph, budget: &OracleBudget) -> Result<ExactLambda, OracleError> {
    budget.check("vertex count", budget.max_n_lambda, g.n())?;
    let mut search = LabelSearch::new(g);
    let delta = g.max_degree() as u64;
    let start = if delta == 0 { 0 } else { delta + 1 };
    for span in start.. {
        if search.place(0, span) {
            let labeling = search.labeling();
            return Ok(ExactLambda {
                lambda: labeling.span,
                labeling,
            });
        }
    }
    unreachable!("a span of 2n always admits a labeling")
}

/// Smallest metric dimension over the edge-supersets of `g` accepted by
/// `keep`.
fn min_over_supergraphs(
    g: &Graph,
    budget: &OracleBudget,
    keep: impl Fn(&Graph) -> bool,
) -> Result<Option<u64>, OracleError> {
    if !g.is_connected() {
        return Err(OracleError::DisconnectedGraph);
    }
    budget.check("vertex count", budget.max_n_beta, g.n())?;
    let non_edges = g.non_edges();
    budget.check("non-edge count", budget.max_nonedges_tau, non_edges.len())?;
    // Every connected graph on n >= 2 vertices has dimension at least 1.
    let floor = u64::from(g.n() >= 2);
    let mut best: Option<u64> = None;
    for mask in 0u64..1 << non_edges.len() {
        let mut h = g.clone();
        for (i, &(u, v)) in non_edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                h.add_edge(u, v);
            }
        }
        if !keep(&h) {
            continue;
        }
        let d = distance_matrix(&h)?;
        let beta = metric_basis(&d).beta;
        if best.is_none_or(|b| beta < b) {
            best = Some(beta);
            if beta == floor {
                break;
            }
        }
    }
    Ok(best)
}

/// Threshold dimension: minimum β over all spanning supergraphs.
pub fn exact_tau(g: &Graph, budget: &OracleBudget) -> Result<u64, OracleError> {
    Ok(min_over_supergraphs(g, budget, |_| true)?.expect("g is its own supergraph"))
}

/// Restricted threshold dimension: minimum β over threshold spanning
/// supergraphs, with vertices identified by index.
pub fn exact_tau_r(g: &Graph, budget: &OracleBudget) -> Result<u64, OracleError> {
    min_over_supergraphs(g, budget, recognize_threshold)?.ok_or(OracleError::NoThresholdSupergraph)
}
