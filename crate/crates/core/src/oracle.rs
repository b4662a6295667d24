//! Exhaustive minimum-attractor search for short words.

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::verifier::{Verifier, VerifyError};
use crate::word::Word;

pub const DEFAULT_MAX_LEN: usize = 25;
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("word of length {len} exceeds the oracle cap {cap}")]
    TooLong { len: usize, cap: usize },
    #[error("verifier budget of {budget} calls exhausted at size {size}")]
    BudgetExhausted { budget: u64, size: usize },
    #[error("max size {max_size} exceeds the word length {len}")]
    MaxSizeTooLarge { max_size: usize, len: usize },
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_len: usize,
    /// Maximum number of verifier calls per search.
    pub budget: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_len: DEFAULT_MAX_LEN,
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalAttractor {
    pub size: usize,
    /// Lexicographically least passing subset of that size.
    pub positions: Vec<usize>,
    pub verifier_calls: u64,
}

/// Number of distinct letters: every attractor needs one position per letter.
pub fn letter_lower_bound(w: &Word) -> usize {
    w.distinct_letters().len()
}

/// Least `k <= max_size` such that some `k`-subset of positions is an
/// attractor, with the lexicographically least such subset. `Ok(None)` when
/// no subset of size at most `max_size` works.
pub fn minimal_attractor(
    w: &Word,
    max_size: usize,
    limits: &OracleLimits,
) -> Result<Option<MinimalAttractor>, OracleError> {
    search(w, letter_lower_bound(w), max_size, limits)
}

/// Lexicographically least attractor of exactly `size` positions, if any.
pub fn attractor_of_size(
    w: &Word,
    size: usize,
    limits: &OracleLimits,
) -> Result<Option<MinimalAttractor>, OracleError> {
    search(w, size, size, limits)
}

/// Every attractor of exactly `size` positions, in lexicographic order.
pub fn all_attractors_of_size(
    w: &Word,
    size: usize,
    limits: &OracleLimits,
) -> Result<Vec<Vec<usize>>, OracleError> {
    let mut found = Vec::new();
    enumerate(w, size, size, limits, |subset| {
        found.push(subset.to_vec());
        false
    })?;
    Ok(found)
}

fn search(
    w: &Word,
    from: usize,
    max_size: usize,
    limits: &OracleLimits,
) -> Result<Option<MinimalAttractor>, OracleError> {
    let mut hit = None;
    let calls = enumerate(w, from, max_size, limits, |subset| {
        hit = Some(subset.to_vec());
        true
    })?;
    Ok(hit.map(|positions| MinimalAttractor {
        size: positions.len(),
        positions,
        verifier_calls: calls,
    }))
}

/// Feeds passing subsets of sizes `from..=max_size`, in order, to `on_pass`
/// until it returns true. Returns the number of verifier calls made.
fn enumerate(
    w: &Word,
    from: usize,
    max_size: usize,
    limits: &OracleLimits,
    mut on_pass: impl FnMut(&[usize]) -> bool,
) -> Result<u64, OracleError> {
    let n = w.len();
    if n > limits.max_len {
        return Err(OracleError::TooLong {
            len: n,
            cap: limits.max_len,
        });
    }
    if max_size > n {
        return Err(OracleError::MaxSizeTooLarge { max_size, len: n });
    }
    let verifier = Verifier::new(w.clone())?;
    let letters: Vec<u8> = w.distinct_letters().iter().map(|a| a.byte()).collect();
    let full: u128 = (1u128 << letters.len()) - 1;
    let letter_bit: Vec<u128> = w
        .as_bytes()
        .iter()
        .map(|b| 1u128 << letters.binary_search(b).unwrap())
        .collect();

    let mut calls = 0u64;
    for size in from.max(letters.len())..=max_size {
        for subset in (0..n).combinations(size) {
            if subset.iter().fold(0, |acc, &p| acc | letter_bit[p]) != full {
                continue;
            }
            if calls == limits.budget {
                return Err(OracleError::BudgetExhausted {
                    budget: limits.budget,
                    size,
                });
            }
            calls += 1;
            if verifier.check(&subset)?.is_pass() && on_pass(&subset) {
                return Ok(calls);
            }
        }
    }
    Ok(calls)
}
