//! Attractor constructions for palindromic prefixes and arbitrary factors
//! of standard episturmian sequences.
//!
//! For a palindromic prefix `w_n`, the positions `m_a` (one per letter `a`
//! of `w_n`, the length of the longest palindromic prefix followed by `a`)
//! form an attractor of size equal to the number of letters, hence minimum.
//!
//! A factor `f` is located at the least level `n` containing it. Writing
//! `d` for the letter consumed at level `n`, every occurrence of `f` in
//! `w_n` covers the copies of `d` that were not already inside `w_{n-1}`:
//!
//! * `d` new:    `w_n = w_{n-1} d w_{n-1}`, `f` covers the middle `d`;
//! * `d` repeated: `w_n = u d w_k d reverse(u)` with `w_k` the longest
//!   palindromic prefix of `w_{n-1}` followed by `d`; `f` covers both `d`s.
//!
//! The occurrence is framed by the least levels `i` (on the left) and `j`
//! (on the right); when `j >= i` the candidate is the shifted prefix
//! attractor of `w_j`, plus the middle `d` in the first case. Otherwise the
//! same recipe runs on `reverse(f)` at the mirrored occurrence and the
//! result is mirrored back.
//!
//! Factor candidates are always checked by the verifier and carry its
//! verdict: the covering argument behind the recipe can place the crossing
//! occurrence of a sub-factor partly outside `f` (the Fibonacci factor
//! `1001` is the smallest example), so success is recorded, not assumed.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tower::{
    grow_until_found, Caps, ClosureCase, FactorLocation, SearchLimit, Tower, TowerError,
};
use crate::verifier::{Verifier, VerifyError, VerifyOutcome};
use crate::word::{is_palindrome, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AttractorError {
    #[error("level {level} is out of range (tower top is {top})")]
    LevelOutOfRange { level: usize, top: usize },
    #[error("level 0 is the empty word and has no attractor")]
    EmptyLevel,
    #[error("the target factor is empty")]
    EmptyTarget,
    #[error("attractor of length {expected} applied to a word of length {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("mirroring requires a palindrome")]
    NotPalindrome,
    #[error("{target:?} not found up to level {searched_through} ({limit})")]
    NotFound {
        target: Word,
        searched_through: usize,
        limit: SearchLimit,
    },
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("construction invariant violated: {0}")]
    Internal(String),
}

/// Which construction produced an attractor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// The `m_a` positions of a palindromic prefix.
    Prefix,
    /// The mirror image of a prefix attractor.
    Mirror,
    /// Factor recipe, consumed letter new at the minimal level.
    FactorNewLetter,
    /// Factor recipe, consumed letter already present.
    FactorRepeatedLetter,
    /// Factor recipe applied to the reversed factor, then mirrored.
    MirroredFactor,
    /// Exhaustive search.
    Oracle,
    /// Supplied by the caller.
    Input,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "witness", rename_all = "kebab-case")]
pub enum Status {
    Unverified,
    Verified,
    Failed(Word),
}

impl Status {
    pub fn from_outcome(outcome: &VerifyOutcome) -> Self {
        match outcome {
            VerifyOutcome::Pass => Status::Verified,
            VerifyOutcome::Fail { witness, .. } => Status::Failed(witness.clone()),
        }
    }

    pub fn is_verified(&self) -> bool {
        matches!(self, Status::Verified)
    }

    pub fn witness(&self) -> Option<&Word> {
        match self {
            Status::Failed(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attractor {
    positions: Vec<usize>,
    word_length: usize,
    pub provenance: Provenance,
    pub status: Status,
}

impl Attractor {
    pub fn new(mut positions: Vec<usize>, word_length: usize, provenance: Provenance) -> Self {
        positions.sort_unstable();
        positions.dedup();
        assert!(
            positions.last().map_or(true, |&p| p < word_length),
            "attractor position out of range"
        );
        Attractor {
            positions,
            word_length,
            provenance,
            status: Status::Unverified,
        }
    }

    /// Strictly increasing.
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn word_length(&self) -> usize {
        self.word_length
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Runs the verifier against `word` and records its verdict.
    pub fn verify(mut self, word: &Word) -> Result<Self, AttractorError> {
        if word.len() != self.word_length {
            return Err(AttractorError::LengthMismatch {
                expected: self.word_length,
                actual: word.len(),
            });
        }
        let outcome = Verifier::new(word.clone())?.check(&self.positions)?;
        self.status = Status::from_outcome(&outcome);
        Ok(self)
    }
}

/// Attractor of the level-`n` palindromic prefix: `{ m_a }` over its letters.
pub fn prefix_attractor(tower: &Tower, n: usize) -> Result<Attractor, AttractorError> {
    if n == 0 {
        return Err(AttractorError::EmptyLevel);
    }
    let rec = tower.level(n).ok_or(AttractorError::LevelOutOfRange {
        level: n,
        top: tower.top_level(),
    })?;
    Ok(Attractor::new(
        rec.m_map.values().copied().collect(),
        rec.length,
        Provenance::Prefix,
    ))
}

/// `{ L - 1 - p }`: an attractor of a palindrome of length `L` reflected.
pub fn mirror_attractor(a: &Attractor, word: &Word) -> Result<Attractor, AttractorError> {
    if word.len() != a.word_length {
        return Err(AttractorError::LengthMismatch {
            expected: a.word_length,
            actual: word.len(),
        });
    }
    if !is_palindrome(word) {
        return Err(AttractorError::NotPalindrome);
    }
    let len = a.word_length;
    Ok(Attractor::new(
        a.positions.iter().map(|&p| len - 1 - p).collect(),
        len,
        Provenance::Mirror,
    ))
}

/// One tower step on prefix attractors: the old position of `consumed`
/// (if any) is replaced by `prev_length`, the length of the level just
/// closed. `m_map` is that of the level just closed.
pub fn next_attractor(
    current: &[usize],
    consumed: Letter,
    m_map: &BTreeMap<Letter, usize>,
    prev_length: usize,
) -> Vec<usize> {
    let old = m_map.get(&consumed).copied();
    let mut next: Vec<usize> = current
        .iter()
        .copied()
        .filter(|&p| Some(p) != old)
        .collect();
    next.push(prev_length);
    next.sort_unstable();
    next.dedup();
    next
}

/// Where and how a factor attractor was constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorContext {
    /// Least level containing the factor.
    pub level: usize,
    /// Leftmost start of the factor in that level.
    pub start: usize,
    /// 1 when the consumed letter is new at `level`, 2 otherwise.
    pub case: u8,
    /// `|u|` in `w_n = u d w_k d reverse(u)`; case 2 only.
    pub u_len: Option<usize>,
    /// Level of `w_k`; case 2 only.
    pub k: Option<usize>,
    /// Least level framing the part of the occurrence left of the pivot.
    pub i: usize,
    /// Least level framing the part right of the pivot.
    pub j: usize,
    /// True when `j < i` forced the recipe onto the reversed factor.
    pub reversed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorAttractor {
    pub target: Word,
    pub level: usize,
    pub occurrence_start: usize,
    pub attractor: Attractor,
    /// `None` when the target is itself a palindromic prefix `w_n`.
    pub context: Option<FactorContext>,
}

/// A factor to construct an attractor for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorTarget {
    Word(Word),
    /// `u(Δ)[start .. start + len]`.
    Span {
        start: usize,
        len: usize,
    },
}

/// Frame of one occurrence in `w_n` coordinates.
struct Frame {
    case: u8,
    u_len: Option<usize>,
    k: Option<usize>,
    i: usize,
    j: usize,
    /// Positions when `j >= i`.
    positions: Option<Vec<usize>>,
}

fn frame(tower: &Tower, n: usize, s: usize, len: usize) -> Result<Frame, AttractorError> {
    let rec = &tower.levels()[n];
    let prev = &tower.levels()[n - 1];
    let d = rec.consumed.expect("level >= 1 consumed a letter");
    let internal = |msg: String| AttractorError::Internal(msg);
    let level_at_least = |l: usize| {
        tower
            .level_for_length(l)
            .ok_or_else(|| internal(format!("no level of length >= {l}")))
    };

    if rec.case == Some(ClosureCase::NewLetter) {
        // w_n = w_{n-1} d w_{n-1}, pivot at c
        let c = prev.length;
        if !(s <= c && c < s + len) {
            return Err(internal(format!("occurrence {s}+{len} misses pivot {c}")));
        }
        let i = level_at_least(c - s)?;
        let j = level_at_least(s + len - c - 1)?;
        let positions = (j >= i).then(|| {
            std::iter::once(c)
                .chain(tower.levels()[j].m_map.values().map(|&m| c + 1 + m))
                .collect()
        });
        return Ok(Frame {
            case: 1,
            u_len: None,
            k: None,
            i,
            j,
            positions,
        });
    }

    // w_n = u d w_k d reverse(u)
    let m = *prev
        .m_map
        .get(&d)
        .ok_or_else(|| internal(format!("{d:?} missing from level {}", n - 1)))?;
    let k = tower
        .level_of_length(m)
        .ok_or_else(|| internal(format!("no level of length {m}")))?;
    let u_len = prev.length - m - 1;
    if !(s <= u_len && prev.length < s + len) {
        return Err(internal(format!(
            "occurrence {s}+{len} misses {u_len} or {}",
            prev.length
        )));
    }
    // w_i ends at |w_{n-1}|, w_j starts at |u| + 1
    let i = level_at_least(prev.length - s)?;
    let j = level_at_least(s + len - u_len - 1)?;
    if !(k < i && i < n && k < j && j < n) {
        return Err(internal(format!(
            "framing levels i={i} j={j} outside ({k}, {n})"
        )));
    }
    let positions = if j >= i {
        let mj = &tower.levels()[j].m_map;
        // the copy of d inside w_j sits on the second pivot
        debug_assert_eq!(mj.get(&d), Some(&m));
        Some(mj.values().map(|&p| u_len + 1 + p).collect())
    } else {
        None
    };
    Ok(Frame {
        case: 2,
        u_len: Some(u_len),
        k: Some(k),
        i,
        j,
        positions,
    })
}

/// Attractor for a factor of `u(Δ)` contained in `tower`.
///
/// The result always carries the verifier's verdict on the target.
pub fn factor_attractor(tower: &Tower, target: &Word) -> Result<FactorAttractor, AttractorError> {
    if target.is_empty() {
        return Err(AttractorError::EmptyTarget);
    }
    let (n, s) = tower
        .locate(target)
        .ok_or_else(|| AttractorError::NotFound {
            target: target.clone(),
            searched_through: tower.top_level(),
            limit: SearchLimit::LevelCap,
        })?;
    let len = target.len();

    if s == 0 && len == tower.levels()[n].length {
        let attractor = prefix_attractor(tower, n)?.verify(target)?;
        return Ok(FactorAttractor {
            target: target.clone(),
            level: n,
            occurrence_start: s,
            attractor,
            context: None,
        });
    }

    let f = frame(tower, n, s, len)?;
    let (positions, provenance, reversed) = match f.positions {
        Some(ps) => {
            let provenance = if f.case == 1 {
                Provenance::FactorNewLetter
            } else {
                Provenance::FactorRepeatedLetter
            };
            (
                ps.into_iter().map(|p| p - s).collect::<Vec<_>>(),
                provenance,
                false,
            )
        }
        None => {
            // the mirrored occurrence of reverse(target) swaps i and j
            let s_rev = tower.levels()[n].length - s - len;
            let g = frame(tower, n, s_rev, len)?;
            let ps = g.positions.ok_or_else(|| {
                AttractorError::Internal(format!("reversed frame still has j={} < i={}", g.j, g.i))
            })?;
            let ps = ps.into_iter().map(|p| len - 1 - (p - s_rev)).collect();
            (ps, Provenance::MirroredFactor, true)
        }
    };

    let attractor = Attractor::new(positions, len, provenance);
    let letters = target.distinct_letters();
    let hit: std::collections::BTreeSet<Letter> = attractor
        .positions()
        .iter()
        .map(|&p| target.letter(p))
        .collect();
    if attractor.len() != letters.len() || hit != letters {
        return Err(AttractorError::Internal(format!(
            "candidate {:?} for {target:?} does not pick one position per letter",
            attractor.positions()
        )));
    }
    let attractor = attractor.verify(target)?;
    Ok(FactorAttractor {
        target: target.clone(),
        level: n,
        occurrence_start: s,
        attractor,
        context: Some(FactorContext {
            level: n,
            start: s,
            case: f.case,
            u_len: f.u_len,
            k: f.k,
            i: f.i,
            j: f.j,
            reversed,
        }),
    })
}

/// Resolves `target` against `u(Δ)` of `tower`'s directive, growing the
/// tower up to `level_cap`, then constructs its attractor.
pub fn factor_attractor_in(
    tower: &mut Tower,
    target: &FactorTarget,
    level_cap: usize,
    caps: &Caps,
) -> Result<FactorAttractor, AttractorError> {
    let word = match target {
        FactorTarget::Word(w) => w.clone(),
        FactorTarget::Span { start, len } => {
            if *len == 0 {
                return Err(AttractorError::EmptyTarget);
            }
            while tower.prefix().len() < start + len {
                tower.grow(caps)?;
            }
            tower.prefix().slice(*start..start + len)
        }
    };
    if word.is_empty() {
        return Err(AttractorError::EmptyTarget);
    }
    match grow_until_found(tower, &word, level_cap, caps) {
        FactorLocation::Found { .. } => factor_attractor(tower, &word),
        FactorLocation::NotFound {
            searched_through,
            limit,
        } => Err(AttractorError::NotFound {
            target: word,
            searched_through,
            limit,
        }),
    }
}
