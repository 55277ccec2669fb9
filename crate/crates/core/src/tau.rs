//! Threshold dimension τ (minimum metric dimension over spanning
//! supergraphs) and restricted threshold dimension τ_r (the same minimum
//! over threshold supergraphs), computed from the code.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{Block, GeneratingCode};
use crate::metric::beta_threshold;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TauError {
    #[error("input outside the formula's domain: {0}")]
    InapplicableInput(&'static str),
}

/// Hypothesis that produced a τ value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TauClause {
    /// `0^s 1^t`, `s >= 3`: `t - 1 + k` for the least `k >= 2` with
    /// `s - k <= 2^k - 1`.
    SingleString,
    #[serde(rename = "two_strings_i")]
    TwoStringsI,
    #[serde(rename = "two_strings_ii")]
    TwoStringsII,
    #[serde(rename = "two_strings_iii")]
    TwoStringsIII,
    #[serde(rename = "three_strings_i")]
    ThreeStringsI,
    #[serde(rename = "three_strings_ii")]
    ThreeStringsII,
    #[serde(rename = "three_strings_iii")]
    ThreeStringsIII,
    #[serde(rename = "three_strings_iv")]
    ThreeStringsIV,
    /// Longer codes, last string resolved by `k_1` of its own zeros.
    #[serde(rename = "general_i")]
    GeneralI,
    /// Longer codes, last string's zeros plus `r` earlier zeros.
    #[serde(rename = "general_ii")]
    GeneralII,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauResult {
    pub value: Option<u64>,
    /// The free parameter (`k`, `k_1`, `k_2`, `k_3` or `r`) of the clause used.
    pub witness_k: Option<u64>,
    pub applicable: bool,
    pub clause: Option<TauClause>,
    /// Clauses whose hypotheses were checked, in order.
    pub condition_trace: Vec<TauClause>,
}

impl TauResult {
    fn inapplicable(condition_trace: Vec<TauClause>) -> Self {
        TauResult {
            value: None,
            witness_k: None,
            applicable: false,
            clause: None,
            condition_trace,
        }
    }

    fn found(clause: TauClause, value: i128, k: i128, condition_trace: Vec<TauClause>) -> Self {
        TauResult {
            value: Some(value.max(0) as u64),
            witness_k: Some(k as u64),
            applicable: true,
            clause: Some(clause),
            condition_trace,
        }
    }
}

/// `2^e` saturated well below `i128::MAX` so sums stay representable.
fn pow2(e: i128) -> i128 {
    if e < 0 {
        0
    } else if e >= 100 {
        1 << 100
    } else {
        1 << e
    }
}

/// Least `k` in `lo..=hi` satisfying `ok`.
fn least(lo: i128, hi: i128, ok: impl Fn(i128) -> bool) -> Option<i128> {
    (lo..=hi).find(|&k| ok(k))
}

/// Least number of isolated vertices `k >= 2` able to separate `s` vertices:
/// `s - k <= 2^k - 1`.
pub fn min_separating_k(s: u64) -> u64 {
    let s = s as i128;
    least(2, s.max(2), |k| s - k <= pow2(k) - 1).expect("k = s always works") as u64
}

/// τ of the threshold graph `0^s 1^t`, `s >= 3`.
pub fn tau_string(s: u32, t: u32) -> Result<TauResult, TauError> {
    if s < 3 {
        return Err(TauError::InapplicableInput("single-string threshold dimension needs s >= 3"));
    }
    let k = min_separating_k(s as u64) as i128;
    Ok(TauResult::found(
        TauClause::SingleString,
        t as i128 - 1 + k,
        k,
        vec![TauClause::SingleString],
    ))
}

type Clause<'a> = (TauClause, Box<dyn Fn() -> Option<(i128, i128)> + 'a>);

fn first_applicable(clauses: Vec<Clause<'_>>) -> TauResult {
    let mut trace = Vec::with_capacity(clauses.len());
    for (clause, eval) in clauses {
        trace.push(clause);
        if let Some((value, k)) = eval() {
            return TauResult::found(clause, value, k, trace);
        }
    }
    TauResult::inapplicable(trace)
}

fn two_strings(a: Block, b: Block) -> TauResult {
    let (s1, t1) = (a.zeros as i128, a.ones as i128);
    let (s2, t2) = (b.zeros as i128, b.ones as i128);
    let cap = pow2(s2) - 1;
    let clauses: Vec<Clause<'_>> = vec![
        (
            TauClause::TwoStringsI,
            Box::new(move || {
                least(1, s2, |k| s1 + t1 + s2 - k <= pow2(k) - 1).map(|k| (t2 - 1 + k, k))
            }),
        ),
        (
            TauClause::TwoStringsII,
            Box::new(move || {
                if t1 < cap {
                    return None;
                }
                let m1 = t1 - cap;
                least(1, s1, |k| s1 - k <= pow2(s2 + k) - pow2(s2)).map(|k| (t2 - 1 + s2 + m1 + k, k))
            }),
        ),
        (
            TauClause::TwoStringsIII,
            Box::new(move || {
                if t1 >= cap {
                    return None;
                }
                let m2 = cap - t1;
                least(1, s1, |k| s1 - m2 - k <= pow2(s2 + k) - pow2(s2)).map(|k| (t2 - 1 + s2 + k, k))
            }),
        ),
    ];
    first_applicable(clauses)
}

fn three_strings(a: Block, b: Block, c: Block) -> TauResult {
    let (s1, t1) = (a.zeros as i128, a.ones as i128);
    let (s2, t2) = (b.zeros as i128, b.ones as i128);
    let (s3, t3) = (c.zeros as i128, c.ones as i128);
    let cap = pow2(s3) - 1;
    let clauses: Vec<Clause<'_>> = vec![
        (
            TauClause::ThreeStringsI,
            Box::new(move || {
                // sum over i of (s_i + t_{3-i}) with t_0 = 0.
                let total = s1 + s2 + s3 + t2 + t1;
                least(1, s3, |k| total - k <= pow2(k) - 1).map(|k| (t3 - 1 + k, k))
            }),
        ),
        (
            TauClause::ThreeStringsII,
            Box::new(move || {
                if t2 < cap {
                    return None;
                }
                least(1, s1 + s2, |k| s1 + t1 + s2 - k <= pow2(s3 + k) - pow2(s3))
                    .map(|k| (t3 - 1 + s3 + (t2 - cap) + k, k))
            }),
        ),
        (
            TauClause::ThreeStringsIII,
            Box::new(move || {
                if t2 >= cap || t1 - (cap - t2) < pow2(s2 + s3) - pow2(s3) {
                    return None;
                }
                least(1, s1 + s2, |k| s1 + s2 - k <= pow2(s3 + k) - pow2(s3))
                    .map(|k| (t3 - 1 + s3 + (t1 + t2 + 1 - pow2(s2 + s3)) + k, k))
            }),
        ),
        (
            TauClause::ThreeStringsIV,
            Box::new(move || {
                let prefix = s1 + t1 + s2 + t2;
                if t1 + t2 >= cap || prefix < cap {
                    return None;
                }
                least(1, s1 + s2, |k| prefix - k <= pow2(s3 + k) - pow2(s3)).map(|k| (t3 - 1 + s3 + k, k))
            }),
        ),
    ];
    first_applicable(clauses)
}

fn general(blocks: &[Block]) -> TauResult {
    let (last, prefix) = blocks.split_last().expect("non-empty code");
    let (sk, tk) = (last.zeros as i128, last.ones as i128);
    let prefix_zeros: i128 = prefix.iter().map(|b| b.zeros as i128).sum();
    let prefix_ones: i128 = prefix.iter().map(|b| b.ones as i128).sum();
    let prefix_len = prefix_zeros + prefix_ones;
    let cap = pow2(sk) - 1;
    let clauses: Vec<Clause<'_>> = vec![
        (
            TauClause::GeneralI,
            Box::new(move || {
                if blocks.iter().any(|b| b.zeros < b.ones) {
                    return None;
                }
                // sum over i of (s_i + t_{k-i}) with t_0 = 0.
                let total = prefix_zeros + sk + prefix_ones;
                least(1, sk, |k| total - k <= pow2(k) - 1).map(|k| (tk - 1 + k, k))
            }),
        ),
        (
            TauClause::GeneralII,
            Box::new(move || {
                if prefix_ones >= cap || prefix_len < cap {
                    return None;
                }
                least(1, prefix_zeros, |r| prefix_len - r <= pow2(sk + r) - pow2(sk)).map(|r| (tk - 1 + sk + r, r))
            }),
        ),
    ];
    first_applicable(clauses)
}

/// τ of the threshold graph realized by `code`. Codes outside every
/// clause's hypotheses come back with `applicable == false`.
pub fn tau_code(code: &GeneratingCode) -> TauResult {
    match code.blocks() {
        [a] => tau_string(a.zeros, a.ones)
            .unwrap_or_else(|_| TauResult::inapplicable(vec![TauClause::SingleString])),
        [a, b] => two_strings(*a, *b),
        [a, b, c] => three_strings(*a, *b, *c),
        blocks => general(blocks),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauRResult {
    pub value: u64,
    /// Code of the threshold supergraph achieving `value`.
    pub rewritten_code: GeneratingCode,
}

/// `0^s 1^t` rewritten as `0^2 1 (0 1)^{L-2} 0 1^{t'}` where `L = ⌊s/2⌋`
/// and `t' = t` for even `s`, `t + 1` for odd `s`. Only zeros turn into
/// ones, so the result is an edge-superset on the same vertices.
fn split_string(s: u32, t: u32) -> Vec<Block> {
    let strings = (s / 2) as usize;
    let last_ones = if s % 2 == 0 { t } else { t + 1 };
    let mut out = Vec::with_capacity(strings);
    out.push(Block::new(2, 1));
    out.extend(std::iter::repeat(Block::new(1, 1)).take(strings - 2));
    out.push(Block::new(1, last_ones));
    out
}

pub fn tau_r_string(s: u32, t: u32) -> Result<TauRResult, TauError> {
    if s < 4 {
        return Err(TauError::InapplicableInput(
            "single-string restricted threshold dimension needs s >= 4",
        ));
    }
    let value = s.div_ceil(2) as u64 + t as u64 - 1;
    let rewritten_code = GeneratingCode::from_blocks(split_string(s, t)).expect("positive blocks");
    Ok(TauRResult { value, rewritten_code })
}

/// Per-string rewrite: `s >= 4` splits as in [`tau_r_string`], `0^3 1^t`
/// becomes `0 1 0 1^t`, shorter strings are kept.
fn rewrite_strings(code: &GeneratingCode) -> Vec<Block> {
    let mut out = Vec::new();
    for b in code.blocks() {
        match b.zeros {
            0..=2 => out.push(*b),
            3 => out.extend([Block::new(1, 1), Block::new(1, b.ones)]),
            s => out.extend(split_string(s, b.ones)),
        }
    }
    out
}

/// Within each stretch of strings free of `t >= 2`, every second
/// occurrence of `0^2 1` becomes `0 1^2`.
fn alternate_pendants(blocks: &mut [Block]) {
    let pendant = Block::new(2, 1);
    let mut seen = 0usize;
    for b in blocks.iter_mut() {
        if b.ones >= 2 {
            seen = 0;
        } else if *b == pendant {
            seen += 1;
            if seen % 2 == 0 {
                *b = Block::new(1, 2);
            }
        }
    }
}

/// τ_r of the threshold graph realized by `code`, with the supergraph code.
pub fn tau_r_code(code: &GeneratingCode) -> TauRResult {
    let mut blocks = rewrite_strings(code);
    alternate_pendants(&mut blocks);
    let rewritten_code = GeneratingCode::from_blocks(blocks).expect("positive blocks");
    TauRResult {
        value: beta_threshold(&rewritten_code).value,
        rewritten_code,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::parse_code;

    fn code(blocks: &[(u32, u32)]) -> GeneratingCode {
        GeneratingCode::from_blocks(blocks.iter().copied()).unwrap()
    }

    #[test]
    fn single_string_small() {
        let r = tau_string(3, 2).unwrap();
        assert_eq!((r.value, r.witness_k), (Some(3), Some(2)));
        let r = tau_string(5, 2).unwrap();
        assert_eq!((r.value, r.witness_k), (Some(3), Some(2)));
        assert!(tau_string(2, 5).is_err());
    }

    #[test]
    fn separating_k() {
        // k vertices separate at most 2^k - 1 + k.
        assert_eq!(min_separating_k(5), 2);
        assert_eq!(min_separating_k(6), 3);
        assert_eq!(min_separating_k(10), 3);
        assert_eq!(min_separating_k(11), 4);
        assert_eq!(min_separating_k(2058), 11);
        assert_eq!(min_separating_k(2059), 12);
        assert_eq!(min_separating_k(u32::MAX as u64), 32);
    }

    #[test]
    fn single_string_monotone_in_s() {
        for t in 1..4 {
            let values: Vec<u64> = (3..300).map(|s| tau_string(s, t).unwrap().value.unwrap()).collect();
            assert!(values.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn tau_code_dispatch() {
        let r = tau_code(&code(&[(3, 2)]));
        assert_eq!(r.value, Some(3));
        assert_eq!(r.clause, Some(TauClause::SingleString));
        let r = tau_code(&code(&[(2, 2)]));
        assert!(!r.applicable);
        let r = tau_code(&code(&[(3, 1), (2, 2)]));
        assert!(r.applicable);
        assert_eq!(r.condition_trace.first(), Some(&TauClause::TwoStringsI));
    }

    #[test]
    fn tau_code_three_and_more() {
        let r = tau_code(&code(&[(2, 1), (2, 1), (3, 2)]));
        assert_eq!(r.clause, Some(TauClause::ThreeStringsI));
        let r = tau_code(&code(&[(2, 1), (2, 1), (2, 1), (4, 2)]));
        assert_eq!(r.clause, Some(TauClause::GeneralI));
        let r = tau_code(&code(&[(1, 2), (1, 2), (1, 2), (1, 2)]));
        assert_eq!(r.condition_trace, vec![TauClause::GeneralI, TauClause::GeneralII]);
    }

    #[test]
    fn clause_names() {
        let names = serde_json::to_string(&[TauClause::TwoStringsIII, TauClause::ThreeStringsIV, TauClause::GeneralII]).unwrap();
        assert_eq!(names, r#"["two_strings_iii","three_strings_iv","general_ii"]"#);
    }

    #[test]
    fn huge_exponents_do_not_overflow() {
        let r = tau_code(&code(&[(u32::MAX, u32::MAX), (u32::MAX, 1)]));
        assert!(r.applicable);
        let _ = tau_code(&code(&[(90, 3), (200, 1), (7, 7)]));
        let _ = tau_code(&code(&[(90, 3), (200, 1), (7, 7), (1000, 2)]));
    }

    #[test]
    fn restricted_single_string() {
        let r = tau_r_string(4, 2).unwrap();
        assert_eq!(r.value, 3);
        assert_eq!(r.rewritten_code, code(&[(2, 1), (1, 2)]));
        let r = tau_r_string(5, 2).unwrap();
        assert_eq!(r.value, 4);
        assert_eq!(r.rewritten_code, code(&[(2, 1), (1, 3)]));
        let r = tau_r_string(8, 2).unwrap();
        assert_eq!(r.rewritten_code, code(&[(2, 1), (1, 1), (1, 1), (1, 2)]));
        assert!(tau_r_string(3, 2).is_err());
    }

    #[test]
    fn restricted_worked_examples() {
        let g = parse_code("0^3 1^2 0^8 1^2 0^5 1 0^6 1^4 0^7 1^2").unwrap();
        let r = tau_r_code(&g);
        assert_eq!(r.value, 22);
        let want = parse_code("(0 1 0 1^2)(0^2 1 0 1 0 1 0 1^2)(0^2 1 0 1^2)(0^2 1 0 1 0 1^4)(0^2 1 0 1 0 1^3)").unwrap();
        assert_eq!(r.rewritten_code, want);

        let g = parse_code("0^2 1 0^4 1 0^6 1 0^8 1").unwrap();
        let r = tau_r_code(&g);
        assert_eq!(r.value, 12);
        let want = parse_code("(0^2 1)(0 1^2)(0 1)(0^2 1)(0 1)(0 1)(0 1^2)(0 1)(0 1)(0 1)").unwrap();
        assert_eq!(r.rewritten_code, want);
    }

    #[test]
    fn restricted_matches_beta_for_small_zero_runs() {
        let g = code(&[(2, 2)]);
        assert_eq!(tau_r_code(&g).value, 2);
        assert_eq!(tau_r_code(&g).rewritten_code, g);
    }

    #[test]
    fn rewrite_preserves_length_and_only_adds_ones() {
        let g = parse_code("0^9 1 0^2 1 0^2 1 0^3 1^2 0^4 1").unwrap();
        let r = tau_r_code(&g);
        let (before, after) = (g.expand(), r.rewritten_code.expand());
        assert_eq!(before.len(), after.len());
        assert!(before.iter().zip(&after).all(|(&b, &a)| !b || a));
    }
}
