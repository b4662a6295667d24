//! The string attractor profile `s(n)`: the minimum attractor size of the
//! length-`n` prefix of `u(Δ)`. For episturmian sequences it is the number
//! of distinct letters in that prefix, so it is non-decreasing and
//! eventually constant.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::oracle::{minimal_attractor, OracleError, OracleLimits};
use crate::tower::{sequence_prefix, Caps, DirectiveSpec, Tower, TowerError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("profile disagrees with the exhaustive minimum at n = {}", .0.first_disagreement().unwrap().n)]
    Disagreement(ProfileCheck),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProfileEntry {
    pub n: usize,
    pub s: usize,
}

/// `s(1), ..., s(N)`; `s(0)` is left undefined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileTable {
    pub entries: Vec<ProfileEntry>,
}

impl ProfileTable {
    pub fn values(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.s).collect()
    }

    /// Least `n` from which the table stays at its final value.
    pub fn constant_from(&self) -> Option<usize> {
        let last = self.entries.last()?.s;
        let i = self
            .entries
            .iter()
            .rposition(|e| e.s != last)
            .map_or(0, |i| i + 1);
        Some(self.entries[i].n)
    }
}

/// Letter count of each prefix of `u(Δ)` up to length `upto`.
pub fn profile(
    spec: &DirectiveSpec,
    upto: usize,
    caps: &Caps,
) -> Result<ProfileTable, ProfileError> {
    let prefix = sequence_prefix(spec, upto, caps)?;
    let mut seen = [false; 256];
    let mut count = 0;
    let entries = prefix
        .as_bytes()
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            if !seen[b as usize] {
                seen[b as usize] = true;
                count += 1;
            }
            ProfileEntry { n: i + 1, s: count }
        })
        .collect();
    Ok(ProfileTable { entries })
}

/// The value `s` settles on (the directive's alphabet size) and the least
/// `n` at which it is reached, i.e. one past the first occurrence of the
/// last letter to appear.
pub fn predicted_plateau(
    spec: &DirectiveSpec,
    caps: &Caps,
) -> Result<(usize, usize), ProfileError> {
    let alphabet = spec.alphabet();
    let mut tower = Tower::new(spec.clone());
    while !alphabet.iter().all(|&a| tower.prefix().contains_letter(a)) {
        tower.grow(caps)?;
    }
    let bytes = tower.prefix().as_bytes();
    let n = alphabet
        .iter()
        .map(|a| bytes.iter().position(|&b| b == a.byte()).unwrap() + 1)
        .max()
        .expect("directives are non-empty");
    Ok((n, alphabet.len()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProfileCheckRow {
    pub n: usize,
    pub formula: usize,
    pub oracle: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileCheck {
    pub rows: Vec<ProfileCheckRow>,
}

impl ProfileCheck {
    pub fn first_disagreement(&self) -> Option<&ProfileCheckRow> {
        self.rows.iter().find(|r| r.formula != r.oracle)
    }
}

/// Compares `s(n)` with the exhaustive minimum for every `n <= upto`.
/// Any disagreement is an error.
pub fn profile_oracle_check(
    spec: &DirectiveSpec,
    upto: usize,
    caps: &Caps,
    limits: &OracleLimits,
) -> Result<ProfileCheck, ProfileError> {
    let table = profile(spec, upto, caps)?;
    let prefix = sequence_prefix(spec, upto, caps)?;
    let rows = table
        .entries
        .par_iter()
        .map(|e| {
            let word = prefix.prefix(e.n);
            let min = minimal_attractor(&word, e.n, limits)?
                .expect("the full position set is always an attractor");
            Ok(ProfileCheckRow {
                n: e.n,
                formula: e.s,
                oracle: min.size,
            })
        })
        .collect::<Result<Vec<_>, OracleError>>()?;
    let check = ProfileCheck { rows };
    if check.first_disagreement().is_some() {
        return Err(ProfileError::Disagreement(check));
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> DirectiveSpec {
        DirectiveSpec::parse(s).unwrap()
    }

    #[test]
    fn profile_examples() {
        let caps = Caps::default();
        assert_eq!(
            profile(&spec(":01"), 5, &caps).unwrap().values(),
            [1, 2, 2, 2, 2]
        );
        assert_eq!(
            profile(&spec(":012"), 6, &caps).unwrap().values(),
            [1, 2, 2, 3, 3, 3]
        );
        assert_eq!(
            profile(&spec(":0"), 4, &caps).unwrap().values(),
            [1, 1, 1, 1]
        );
        assert!(profile(&spec("01:"), 4, &caps).is_err());
    }

    #[test]
    fn plateau() {
        let caps = Caps::default();
        assert_eq!(predicted_plateau(&spec(":012"), &caps).unwrap(), (4, 3));
        assert_eq!(predicted_plateau(&spec(":01"), &caps).unwrap(), (2, 2));
        let t = profile(&spec(":012"), 30, &caps).unwrap();
        assert_eq!(t.constant_from(), Some(4));
        // the third letter first shows up after 0, 00100: position 5
        assert_eq!(predicted_plateau(&spec("001:2"), &caps).unwrap(), (6, 3));
    }

    #[test]
    fn oracle_check_small() {
        let check =
            profile_oracle_check(&spec(":0"), 10, &Caps::default(), &OracleLimits::default())
                .unwrap();
        assert!(check.rows.iter().all(|r| r.oracle == 1));
        assert_eq!(check.rows.len(), 10);
    }
}
