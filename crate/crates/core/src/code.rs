//! Binary generating codes `0^{s_1}1^{t_1} ... 0^{s_k}1^{t_k}`.
//!
//! A code is stored in compressed form as a list of [`Block`]s, one per
//! string `0^s 1^t`. The parser accepts raw bit strings (`0101`) and the
//! exponent notation (`(0^3 1^2)(0^8 1^2)`), with optional whitespace and
//! parentheses.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One string `0^zeros 1^ones` of a generating code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Block {
    pub zeros: u32,
    pub ones: u32,
}

impl Block {
    pub const fn new(zeros: u32, ones: u32) -> Self {
        Block { zeros, ones }
    }

    pub fn len(&self) -> usize {
        self.zeros as usize + self.ones as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl From<(u32, u32)> for Block {
    fn from((zeros, ones): (u32, u32)) -> Self {
        Block { zeros, ones }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("empty code")]
    EmptyInput,
    #[error("illegal character {found:?} at position {position}")]
    IllegalCharacter { position: usize, found: char },
    #[error("zero exponent at position {0}")]
    ZeroExponent(usize),
    #[error("exponent at position {0} does not fit in 32 bits")]
    ExponentOverflow(usize),
    #[error("missing exponent after '^' at position {0}")]
    MissingExponent(usize),
    #[error("code must start with 0")]
    LeadingOne,
    #[error("code must end with 1")]
    TrailingZero,
    #[error("block {index} has a zero exponent")]
    EmptyBlock { index: usize },
}

/// A validated, maximally compressed generating code.
///
/// Invariants: at least one block, every block has `zeros >= 1` and
/// `ones >= 1`. The expansion therefore starts with `0` and ends with `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Block>", into = "Vec<Block>")]
pub struct GeneratingCode {
    blocks: Vec<Block>,
}

impl GeneratingCode {
    /// Builds a code from explicit blocks. Every exponent must be positive.
    pub fn from_blocks<I, B>(blocks: I) -> Result<Self, CodeError>
    where
        I: IntoIterator<Item = B>,
        B: Into<Block>,
    {
        let blocks: Vec<Block> = blocks.into_iter().map(Into::into).collect();
        if blocks.is_empty() {
            return Err(CodeError::EmptyInput);
        }
        if let Some(index) = blocks.iter().position(|b| b.zeros == 0 || b.ones == 0) {
            return Err(CodeError::EmptyBlock { index });
        }
        Ok(GeneratingCode { blocks })
    }

    /// Builds a code from a bit sequence (`false` = 0, `true` = 1).
    pub fn from_bits(bits: &[bool]) -> Result<Self, CodeError> {
        let runs = bits.iter().map(|&b| (b, 1u32));
        from_runs(runs)
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Number of strings `k`.
    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Expanded length `n = sum(s_i + t_i)`, i.e. the vertex count.
    pub fn len(&self) -> usize {
        self.blocks.iter().map(Block::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The expanded bit sequence, `true` for a dominating (1) vertex.
    pub fn expand(&self) -> Vec<bool> {
        let mut bits = Vec::with_capacity(self.len());
        for b in &self.blocks {
            bits.extend(std::iter::repeat(false).take(b.zeros as usize));
            bits.extend(std::iter::repeat(true).take(b.ones as usize));
        }
        bits
    }

    /// The expansion as a `0`/`1` string.
    pub fn to_bit_string(&self) -> String {
        self.expand().into_iter().map(|b| if b { '1' } else { '0' }).collect()
    }
}

/// Parses a code in raw or exponent notation.
pub fn parse_code(text: &str) -> Result<GeneratingCode, CodeError> {
    let mut runs: Vec<(bool, u32)> = Vec::new();
    let mut depth = 0usize;
    let mut chars = text.char_indices().peekable();

    while let Some((pos, c)) = chars.next() {
        match c {
            c if c.is_whitespace() => {}
            '(' => depth += 1,
            ')' => {
                if depth == 0 {
                    return Err(CodeError::IllegalCharacter { position: pos, found: c });
                }
                depth -= 1;
            }
            '0' | '1' => {
                let bit = c == '1';
                let mut exp = 1u32;
                if let Some(&(caret, '^')) = chars.peek() {
                    chars.next();
                    let mut digits = String::new();
                    while let Some(&(_, d)) = chars.peek() {
                        if !d.is_ascii_digit() {
                            break;
                        }
                        digits.push(d);
                        chars.next();
                    }
                    if digits.is_empty() {
                        return Err(CodeError::MissingExponent(caret));
                    }
                    exp = digits.parse().map_err(|_| CodeError::ExponentOverflow(caret + 1))?;
                    if exp == 0 {
                        return Err(CodeError::ZeroExponent(caret + 1));
                    }
                }
                runs.push((bit, exp));
            }
            _ => return Err(CodeError::IllegalCharacter { position: pos, found: c }),
        }
    }
    if depth != 0 {
        return Err(CodeError::IllegalCharacter {
            position: text.len(),
            found: '(',
        });
    }
    from_runs(runs)
}

/// Merges adjacent runs of equal bits and checks the boundary rules.
fn from_runs<I>(runs: I) -> Result<GeneratingCode, CodeError>
where
    I: IntoIterator<Item = (bool, u32)>,
{
    let mut merged: Vec<(bool, u32)> = Vec::new();
    for (bit, len) in runs {
        match merged.last_mut() {
            Some((last, total)) if *last == bit => {
                *total = total.checked_add(len).ok_or(CodeError::ExponentOverflow(0))?;
            }
            _ => merged.push((bit, len)),
        }
    }
    match (merged.first(), merged.last()) {
        (None, _) | (_, None) => return Err(CodeError::EmptyInput),
        (Some((true, _)), _) => return Err(CodeError::LeadingOne),
        (_, Some((false, _))) => return Err(CodeError::TrailingZero),
        _ => {}
    }
    let blocks = merged
        .chunks_exact(2)
        .map(|pair| Block::new(pair[0].1, pair[1].1))
        .collect();
    Ok(GeneratingCode { blocks })
}

impl FromStr for GeneratingCode {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_code(s)
    }
}

impl TryFrom<Vec<Block>> for GeneratingCode {
    type Error = CodeError;

    fn try_from(blocks: Vec<Block>) -> Result<Self, Self::Error> {
        GeneratingCode::from_blocks(blocks)
    }
}

impl From<GeneratingCode> for Vec<Block> {
    fn from(code: GeneratingCode) -> Self {
        code.blocks
    }
}

fn write_run(f: &mut fmt::Formatter<'_>, bit: char, exp: u32) -> fmt::Result {
    if exp == 1 {
        write!(f, "{bit}")
    } else {
        write!(f, "{bit}^{exp}")
    }
}

/// Compressed notation, e.g. `(0^3 1^2)(0 1)`.
impl fmt::Display for GeneratingCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            f.write_str("(")?;
            write_run(f, '0', b.zeros)?;
            f.write_str(" ")?;
            write_run(f, '1', b.ones)?;
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Every valid code whose expansion has exactly `n` bits, in lexicographic
/// order of the block lists.
pub fn codes_of_length(n: usize) -> Vec<GeneratingCode> {
    fn rec(rem: usize, prefix: &mut Vec<Block>, out: &mut Vec<GeneratingCode>) {
        if rem == 0 {
            if !prefix.is_empty() {
                out.push(GeneratingCode { blocks: prefix.clone() });
            }
            return;
        }
        for s in 1..rem {
            for t in 1..=rem - s {
                prefix.push(Block::new(s as u32, t as u32));
                rec(rem - s - t, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut out);
    out
}

/// Every valid code with expansion length in `2..=max_n`, ordered by length
/// and then lexicographically.
pub fn codes_up_to(max_n: usize) -> Vec<GeneratingCode> {
    (2..=max_n).flat_map(codes_of_length).collect()
}
