//! Machine-readable rows and the factor conformance sweep.
//!
//! The sweep runs the factor construction on every distinct factor of a
//! tower level, records the verifier's verdict on each candidate, and
//! independently asks the exhaustive oracle whether an attractor with one
//! position per letter exists at all. Rows come out in shortlex order of
//! the factor, so identical inputs serialize identically.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::attractor::{
    factor_attractor, Attractor, AttractorError, FactorAttractor, Provenance, Status,
};
use crate::oracle::{attractor_of_size, OracleError, OracleLimits};
use crate::tower::{build_tower, Caps, DirectiveSpec, Stop, TowerError};
use crate::word::{distinct_factors, Word};

/// Largest factor length the sweep sends to the oracle by default.
pub const DEFAULT_SWEEP_ORACLE_LEN: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SweepError {
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error(transparent)]
    Attractor(#[from] AttractorError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StatusTag {
    Unverified,
    Verified,
    Failed,
}

/// One attractor as emitted by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttractorRow {
    pub word: Word,
    pub positions: Vec<usize>,
    pub provenance: Provenance,
    pub status: StatusTag,
    pub witness: Option<Word>,
    pub case: Option<u8>,
    pub level: Option<usize>,
    pub occurrence_start: Option<usize>,
}

impl AttractorRow {
    pub fn from_attractor(word: &Word, a: &Attractor) -> Self {
        let (status, witness) = match &a.status {
            Status::Unverified => (StatusTag::Unverified, None),
            Status::Verified => (StatusTag::Verified, None),
            Status::Failed(w) => (StatusTag::Failed, Some(w.clone())),
        };
        AttractorRow {
            word: word.clone(),
            positions: a.positions().to_vec(),
            provenance: a.provenance,
            status,
            witness,
            case: None,
            level: None,
            occurrence_start: None,
        }
    }

    pub fn from_factor(fa: &FactorAttractor) -> Self {
        AttractorRow {
            case: fa.context.map(|c| c.case),
            level: Some(fa.level),
            occurrence_start: Some(fa.occurrence_start),
            ..AttractorRow::from_attractor(&fa.target, &fa.attractor)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    #[serde(flatten)]
    pub row: AttractorRow,
    /// Number of distinct letters `d` of the factor.
    pub letters: usize,
    pub i: Option<usize>,
    pub j: Option<usize>,
    pub reversed: bool,
    /// Whether the oracle found an attractor of size `d`; `None` when the
    /// factor is longer than the oracle cap.
    pub oracle_size_d: Option<bool>,
    /// Lexicographically least size-`d` attractor found by the oracle.
    pub oracle_witness: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub word: Word,
    pub positions: Vec<usize>,
    pub witness: Word,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub directive: String,
    pub level: usize,
    pub level_word: Word,
    pub max_factor_len: usize,
    pub factors: usize,
    pub size_d_candidates: usize,
    pub verified: usize,
    pub failed: usize,
    pub pass_rate: f64,
    pub oracle_checked: usize,
    pub oracle_confirmed: usize,
    pub failures: Vec<Failure>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConformanceReport {
    pub rows: Vec<SweepRow>,
    pub summary: SweepSummary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepOptions {
    pub level: usize,
    pub max_factor_len: usize,
    pub oracle_max_len: usize,
    pub caps: Caps,
    pub limits: OracleLimits,
}

impl SweepOptions {
    pub fn new(level: usize, max_factor_len: usize) -> Self {
        SweepOptions {
            level,
            max_factor_len,
            oracle_max_len: DEFAULT_SWEEP_ORACLE_LEN,
            caps: Caps::default(),
            limits: OracleLimits::default(),
        }
    }
}

fn sweep_row(
    tower: &crate::tower::Tower,
    factor: &Word,
    opts: &SweepOptions,
) -> Result<SweepRow, SweepError> {
    let fa = factor_attractor(tower, factor)?;
    let letters = factor.distinct_letters().len();
    let oracle = if factor.len() <= opts.oracle_max_len {
        let limits = OracleLimits {
            max_len: opts.limits.max_len.max(opts.oracle_max_len),
            ..opts.limits
        };
        Some(attractor_of_size(factor, letters, &limits)?.map(|m| m.positions))
    } else {
        None
    };
    Ok(SweepRow {
        row: AttractorRow::from_factor(&fa),
        letters,
        i: fa.context.map(|c| c.i),
        j: fa.context.map(|c| c.j),
        reversed: fa.context.is_some_and(|c| c.reversed),
        oracle_size_d: oracle.as_ref().map(Option::is_some),
        oracle_witness: oracle.flatten(),
    })
}

/// Runs the factor construction over all distinct factors of `w_level` up
/// to `max_factor_len` letters.
pub fn sweep(spec: &DirectiveSpec, opts: &SweepOptions) -> Result<ConformanceReport, SweepError> {
    let tower = build_tower(spec, Stop::Levels(opts.level), &opts.caps)?;
    let level_word = tower.level_word(opts.level).expect("level was built");
    let factors: Vec<Word> = distinct_factors(&level_word)
        .into_iter()
        .filter(|f| f.len() <= opts.max_factor_len)
        .collect();
    let rows = factors
        .par_iter()
        .map(|f| sweep_row(&tower, f, opts))
        .collect::<Result<Vec<_>, _>>()?;

    let count = |tag| rows.iter().filter(|r| r.row.status == tag).count();
    let verified = count(StatusTag::Verified);
    let failed = count(StatusTag::Failed);
    let failures = rows
        .iter()
        .filter_map(|r| {
            r.row.witness.as_ref().map(|w| Failure {
                word: r.row.word.clone(),
                positions: r.row.positions.clone(),
                witness: w.clone(),
            })
        })
        .collect();
    let summary = SweepSummary {
        directive: spec.to_string(),
        level: opts.level,
        level_word,
        max_factor_len: opts.max_factor_len,
        factors: rows.len(),
        size_d_candidates: rows
            .iter()
            .filter(|r| r.row.positions.len() == r.letters)
            .count(),
        verified,
        failed,
        pass_rate: if rows.is_empty() {
            1.0
        } else {
            verified as f64 / rows.len() as f64
        },
        oracle_checked: rows.iter().filter(|r| r.oracle_size_d.is_some()).count(),
        oracle_confirmed: rows
            .iter()
            .filter(|r| r.oracle_size_d == Some(true))
            .count(),
        failures,
    };
    Ok(ConformanceReport { rows, summary })
}
