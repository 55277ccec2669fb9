//! Metric dimension of threshold and chain graphs straight from the code.
//!
//! Both families are evaluated string by string. The first string gives a
//! base value; every later string adds an increment chosen by its shape
//! `(s, t)` and by whether it directly follows a pendant string `0^s 1`
//! (`s > 1`), possibly separated by a run of `0 1` strings.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{Block, GeneratingCode};
use crate::graph::Family;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("general bounds need n >= 2 and 1 <= d <= n - 1 (got n = {n}, d = {d})")]
    InvalidArguments { n: u64, d: u64 },
}

/// Which rule produced one increment of the metric dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BetaRule {
    /// First threshold string `0^s 1^t` with `s > 1`: `s + t - 2`.
    StringBase,
    /// First threshold string `0 1^t`, the clique `K_{t+1}`: `t`.
    CliqueBase,
    /// First chain string, the complete bipartite `K_{s,t}`.
    BicliqueBase,
    /// Chain `0 1 0 1`, the path on four vertices: total 1.
    PathPair,
    /// `s > 1` after a pendant string: `s + t - 1`.
    AfterPendant,
    /// `s > 1, t > 1`: `s + t - 2`.
    Wide,
    /// `s > 1, t = 1`: `s - 1`.
    Pendant,
    /// `s = 1, t > 1`: `t`.
    Fan,
    /// `s = t = 1`: `1`.
    Unit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaStep {
    pub block: usize,
    pub rule: BetaRule,
    pub increment: i64,
}

/// Metric dimension with a per-string audit trail. `value` is the sum of
/// all increments in `trace`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaResult {
    pub value: u64,
    pub family: Family,
    pub trace: Vec<BetaStep>,
}

/// Metric dimension of the threshold graph of a single string `0^s 1^t`.
pub fn beta_string(s: u32, t: u32) -> u64 {
    if s > 1 {
        s as u64 + t as u64 - 2
    } else {
        t as u64
    }
}

fn is_pendant(b: &Block) -> bool {
    b.zeros > 1 && b.ones == 1
}

fn is_unit(b: &Block) -> bool {
    b.zeros == 1 && b.ones == 1
}

/// True when some earlier string is pendant and only `0 1` strings sit
/// between it and block `j`.
fn follows_pendant(blocks: &[Block], j: usize) -> bool {
    blocks[..j]
        .iter()
        .rev()
        .find(|b| !is_unit(b))
        .is_some_and(is_pendant)
}

fn increment(blocks: &[Block], j: usize) -> (BetaRule, i64) {
    let b = blocks[j];
    let (s, t) = (b.zeros as i64, b.ones as i64);
    if s > 1 && follows_pendant(blocks, j) {
        return (BetaRule::AfterPendant, s + t - 1);
    }
    match (s > 1, t > 1) {
        (true, true) => (BetaRule::Wide, s + t - 2),
        (true, false) => (BetaRule::Pendant, s - 1),
        (false, true) => (BetaRule::Fan, t),
        (false, false) => (BetaRule::Unit, 1),
    }
}

fn finish(family: Family, trace: Vec<BetaStep>) -> BetaResult {
    let value = trace.iter().map(|s| s.increment).sum::<i64>();
    BetaResult {
        value: value.max(0) as u64,
        family,
        trace,
    }
}

/// Metric dimension of the threshold graph realized by `code`.
pub fn beta_threshold(code: &GeneratingCode) -> BetaResult {
    let blocks = code.blocks();
    let first = blocks[0];
    let rule = if first.zeros > 1 {
        BetaRule::StringBase
    } else {
        BetaRule::CliqueBase
    };
    let mut trace = vec![BetaStep {
        block: 0,
        rule,
        increment: beta_string(first.zeros, first.ones) as i64,
    }];
    for j in 1..blocks.len() {
        let (rule, inc) = increment(blocks, j);
        trace.push(BetaStep { block: j, rule, increment: inc });
    }
    finish(Family::Threshold, trace)
}

/// Metric dimension of the chain graph realized by `code`.
pub fn beta_chain(code: &GeneratingCode) -> BetaResult {
    let blocks = code.blocks();
    let first = blocks[0];
    // K_{s,t} has dimension s + t - 2 once it has three vertices; K_2 has 1.
    let base = (first.zeros as i64 + first.ones as i64 - 2).max(1);
    let mut trace = vec![BetaStep {
        block: 0,
        rule: BetaRule::BicliqueBase,
        increment: base,
    }];
    for j in 1..blocks.len() {
        if j == 1 && is_unit(&first) && is_unit(&blocks[1]) {
            // P4 has dimension 1 whatever the base contributed.
            trace.push(BetaStep {
                block: 1,
                rule: BetaRule::PathPair,
                increment: 1 - base,
            });
            continue;
        }
        let (rule, inc) = increment(blocks, j);
        trace.push(BetaStep { block: j, rule, increment: inc });
    }
    finish(Family::Chain, trace)
}

pub fn beta(code: &GeneratingCode, family: Family) -> BetaResult {
    match family {
        Family::Threshold => beta_threshold(code),
        Family::Chain => beta_chain(code),
    }
}

/// Per-string bounds on the threshold metric dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaBounds {
    pub lower: u64,
    pub upper: u64,
    /// Every string has `s > 1` and `t > 1`, so `lower` is exact.
    pub lower_attained: bool,
    /// Every string has `s = 1`, so `upper` is exact.
    pub upper_attained: bool,
}

impl BetaBounds {
    pub fn contains(&self, value: u64) -> bool {
        self.lower <= value && value <= self.upper
    }
}

pub fn beta_bounds(code: &GeneratingCode) -> BetaBounds {
    let blocks = code.blocks();
    let lower = blocks.iter().map(|b| b.len() as u64 - 2).sum();
    let upper = blocks.iter().map(|b| b.len() as u64 - 1).sum();
    BetaBounds {
        lower,
        upper,
        lower_attained: blocks.iter().all(|b| b.zeros > 1 && b.ones > 1),
        upper_attained: blocks.iter().all(|b| b.zeros == 1),
    }
}

/// Bounds valid for every connected graph of order `n` and diameter `d`:
/// the least `k >= 1` with `k + d^k >= n`, and `n - d`.
pub fn general_bounds(n: u64, d: u64) -> Result<(u64, u64), MetricError> {
    if n < 2 || d < 1 || d > n - 1 {
        return Err(MetricError::InvalidArguments { n, d });
    }
    let lower = (1..n)
        .find(|&k| {
            let power = u32::try_from(k).ok().and_then(|e| d.checked_pow(e)).unwrap_or(u64::MAX);
            k.saturating_add(power) >= n
        })
        .unwrap_or(n - 1);
    Ok((lower, n - d))
}
