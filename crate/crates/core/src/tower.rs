//! Standard episturmian sequences built by iterated palindromic closure.
//!
//! A directive sequence `d_0 d_1 d_2 ...` drives the tower
//! `w_0 = ε`, `w_{n+1} = (w_n d_n)^(+)`. Each `w_n` is a prefix of the
//! next, and the `w_n` are exactly the palindromic prefixes of the limit
//! sequence.
//!
//! Directives are written `preperiod:period`, e.g. `:01` for `(01)^ω`
//! (Fibonacci) or `0011:` for the finite directive `0011`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::word::{find_bytes, Letter, Word, WordError};

pub const DEFAULT_MAX_PREFIX_LEN: usize = 10_000_000;
pub const DEFAULT_MAX_LEVELS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DirectiveError {
    #[error("directive {0:?} must have the form <preperiod>:<period>")]
    Malformed(String),
    #[error("directive letters must be alphanumeric, got {0:?}")]
    BadLetter(char),
    #[error("directive is empty on both sides of ':'")]
    Empty,
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TowerError {
    #[error("level {level} exceeds the level cap {cap}")]
    LevelCap { level: usize, cap: usize },
    #[error("level {level} would have length {length}, above the prefix cap {cap}")]
    LengthCap {
        level: usize,
        length: usize,
        cap: usize,
    },
    #[error("finite directive exhausted after level {}", .partial.top_level())]
    DirectiveExhausted { partial: Box<Tower> },
}

/// Growth limits for a tower.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_prefix_len: usize,
    pub max_levels: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_prefix_len: DEFAULT_MAX_PREFIX_LEN,
            max_levels: DEFAULT_MAX_LEVELS,
        }
    }
}

/// An eventually periodic directive sequence `preperiod (period)^ω`.
/// An empty period makes it finite.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DirectiveSpec {
    preperiod: Word,
    period: Word,
}

impl DirectiveSpec {
    pub fn new(preperiod: Word, period: Word) -> Result<Self, DirectiveError> {
        if preperiod.is_empty() && period.is_empty() {
            return Err(DirectiveError::Empty);
        }
        if let Some(c) = preperiod
            .letters()
            .chain(period.letters())
            .map(Letter::as_char)
            .find(|c| !c.is_ascii_alphanumeric())
        {
            return Err(DirectiveError::BadLetter(c));
        }
        Ok(DirectiveSpec { preperiod, period })
    }

    pub fn parse(text: &str) -> Result<Self, DirectiveError> {
        let (pre, per) = text
            .split_once(':')
            .filter(|(_, per)| !per.contains(':'))
            .ok_or_else(|| DirectiveError::Malformed(text.to_owned()))?;
        DirectiveSpec::new(Word::new(pre)?, Word::new(per)?)
    }

    pub fn fibonacci() -> Self {
        DirectiveSpec::parse(":01").unwrap()
    }

    pub fn tribonacci() -> Self {
        DirectiveSpec::parse(":012").unwrap()
    }

    pub fn preperiod(&self) -> &Word {
        &self.preperiod
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    /// The `n`-th directive letter, `None` past the end of a finite directive.
    pub fn letter_at(&self, n: usize) -> Option<Letter> {
        if n < self.preperiod.len() {
            Some(self.preperiod.letter(n))
        } else if self.period.is_empty() {
            None
        } else {
            Some(
                self.period
                    .letter((n - self.preperiod.len()) % self.period.len()),
            )
        }
    }

    /// Every letter the directive ever uses, in order of first appearance.
    pub fn alphabet(&self) -> Vec<Letter> {
        let mut seen = Vec::new();
        for a in self.preperiod.letters().chain(self.period.letters()) {
            if !seen.contains(&a) {
                seen.push(a);
            }
        }
        seen
    }

    /// True when letters first appear in the order `0, 1, 2, ...`.
    pub fn is_normalized(&self) -> bool {
        self.alphabet()
            .iter()
            .enumerate()
            .all(|(i, a)| i < 10 && a.as_char() == char::from_digit(i as u32, 10).unwrap())
    }
}

impl FromStr for DirectiveSpec {
    type Err = DirectiveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DirectiveSpec::parse(s)
    }
}

impl fmt::Display for DirectiveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.preperiod, self.period)
    }
}

/// How `w_n` arose from `w_{n-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosureCase {
    /// `w_n = w_{n-1} d`: only possible when `w_{n-1}` is a power of `d`.
    Append,
    /// `d` is new, so `w_n = w_{n-1} d w_{n-1}`.
    NewLetter,
    /// `d` already occurs and the closure overlaps `w_{n-1}`.
    Interior,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelRecord {
    pub length: usize,
    /// The directive letter consumed to reach this level; `None` at level 0.
    pub consumed: Option<Letter>,
    pub case: Option<ClosureCase>,
    /// For each letter `a` of `w_n`, the length of the longest palindromic
    /// prefix of `w_n` followed by `a`.
    pub m_map: BTreeMap<Letter, usize>,
}

/// Stopping rule for [`build_tower`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stop {
    /// Build levels `0..=n`.
    Levels(usize),
    /// Build until the top level has at least this many letters.
    MinLength(usize),
}

/// The palindromic prefixes `w_0 ⊂ w_1 ⊂ ... ⊂ w_top` of `u(Δ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tower {
    spec: DirectiveSpec,
    prefix: Word,
    levels: Vec<LevelRecord>,
}

impl Tower {
    /// The tower holding only `w_0 = ε`.
    pub fn new(spec: DirectiveSpec) -> Self {
        Tower {
            spec,
            prefix: Word::empty(),
            levels: vec![LevelRecord {
                length: 0,
                consumed: None,
                case: None,
                m_map: BTreeMap::new(),
            }],
        }
    }

    pub fn spec(&self) -> &DirectiveSpec {
        &self.spec
    }

    /// `w_top`, the longest level built so far.
    pub fn prefix(&self) -> &Word {
        &self.prefix
    }

    pub fn levels(&self) -> &[LevelRecord] {
        &self.levels
    }

    pub fn top_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> Option<&LevelRecord> {
        self.levels.get(n)
    }

    pub fn level_word(&self, n: usize) -> Option<Word> {
        self.levels.get(n).map(|r| self.prefix.prefix(r.length))
    }

    /// Least level whose word has at least `len` letters.
    pub fn level_for_length(&self, len: usize) -> Option<usize> {
        let i = self.levels.partition_point(|r| r.length < len);
        (i < self.levels.len()).then_some(i)
    }

    /// Level whose word has exactly `len` letters.
    pub fn level_of_length(&self, len: usize) -> Option<usize> {
        self.levels.binary_search_by_key(&len, |r| r.length).ok()
    }

    /// Adds the next level.
    ///
    /// With `m` the length of the longest palindromic prefix of `w_n`
    /// followed by `d_n` (or `-1` when `d_n` is new), `|w_{n+1}| = 2|w_n| - m`
    /// and the new letters mirror the start of the word.
    pub fn grow(&mut self, caps: &Caps) -> Result<&LevelRecord, TowerError> {
        let level = self.levels.len();
        if level > caps.max_levels {
            return Err(TowerError::LevelCap {
                level,
                cap: caps.max_levels,
            });
        }
        let Some(d) = self.spec.letter_at(level - 1) else {
            return Err(TowerError::DirectiveExhausted {
                partial: Box::new(self.clone()),
            });
        };
        let top = self.levels.last().expect("level 0 always present");
        let len = top.length;
        let new_len = match top.m_map.get(&d) {
            Some(&m) => 2 * len - m,
            None => 2 * len + 1,
        };
        if new_len > caps.max_prefix_len {
            return Err(TowerError::LengthCap {
                level,
                length: new_len,
                cap: caps.max_prefix_len,
            });
        }
        let case = if !top.m_map.contains_key(&d) {
            ClosureCase::NewLetter
        } else if new_len == len + 1 {
            ClosureCase::Append
        } else {
            ClosureCase::Interior
        };
        let mut m_map = top.m_map.clone();
        m_map.insert(d, len);

        let mut bytes = std::mem::take(&mut self.prefix).into_bytes();
        bytes.reserve(new_len - len);
        bytes.push(d.byte());
        for i in len + 1..new_len {
            bytes.push(bytes[new_len - 1 - i]);
        }
        self.prefix = Word::from_bytes_unchecked(bytes);
        self.levels.push(LevelRecord {
            length: new_len,
            consumed: Some(d),
            case: Some(case),
            m_map,
        });
        Ok(self.levels.last().unwrap())
    }

    /// Minimal level containing `f` and the leftmost start of `f` there,
    /// among the levels already built.
    pub fn locate(&self, f: &Word) -> Option<(usize, usize)> {
        let start = find_bytes(self.prefix.as_bytes(), f.as_bytes(), 0)?;
        let level = self.level_for_length(start + f.len())?;
        Some((level, start))
    }
}

pub fn build_tower(spec: &DirectiveSpec, stop: Stop, caps: &Caps) -> Result<Tower, TowerError> {
    let mut tower = Tower::new(spec.clone());
    let done = |t: &Tower| match stop {
        Stop::Levels(n) => t.top_level() >= n,
        Stop::MinLength(len) => t.prefix.len() >= len,
    };
    while !done(&tower) {
        tower.grow(caps)?;
    }
    Ok(tower)
}

/// The first `n` letters of `u(Δ)`.
pub fn sequence_prefix(spec: &DirectiveSpec, n: usize, caps: &Caps) -> Result<Word, TowerError> {
    let tower = build_tower(spec, Stop::MinLength(n), caps)?;
    Ok(tower.prefix.prefix(n))
}

/// Lengths `L` (including 0) for which `w[..L]` is a palindrome.
pub fn palindromic_prefixes(w: &Word) -> Vec<usize> {
    let b = w.as_bytes();
    (0..=b.len())
        .filter(|&len| crate::word::is_palindrome_bytes(&b[..len]))
        .collect()
}

/// Why a factor search stopped without a hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchLimit {
    /// The requested maximum level was reached.
    LevelCap,
    /// The next level would exceed the prefix-length cap.
    LengthCap,
    /// The finite directive ended; the factor genuinely does not occur.
    DirectiveExhausted,
}

impl fmt::Display for SearchLimit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchLimit::LevelCap => "level cap reached",
            SearchLimit::LengthCap => "prefix length cap reached",
            SearchLimit::DirectiveExhausted => "finite directive exhausted",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorLocation {
    Found {
        level: usize,
        start: usize,
    },
    NotFound {
        searched_through: usize,
        limit: SearchLimit,
    },
}

/// Grows `tower` until some level contains `f` or a limit is hit.
pub fn grow_until_found(
    tower: &mut Tower,
    f: &Word,
    level_cap: usize,
    caps: &Caps,
) -> FactorLocation {
    assert!(!f.is_empty(), "the empty word is not searched for");
    let caps = Caps {
        max_levels: caps.max_levels.min(level_cap),
        ..*caps
    };
    let mut from = 0;
    loop {
        if let Some(start) = find_bytes(tower.prefix.as_bytes(), f.as_bytes(), from) {
            let level = tower
                .level_for_length(start + f.len())
                .expect("occurrence inside prefix");
            return FactorLocation::Found { level, start };
        }
        from = (tower.prefix.len() + 1).saturating_sub(f.len());
        if let Err(e) = tower.grow(&caps) {
            let limit = match e {
                TowerError::LevelCap { .. } => SearchLimit::LevelCap,
                TowerError::LengthCap { .. } => SearchLimit::LengthCap,
                TowerError::DirectiveExhausted { .. } => SearchLimit::DirectiveExhausted,
            };
            return FactorLocation::NotFound {
                searched_through: tower.top_level(),
                limit,
            };
        }
    }
}

/// Least level `n <= level_cap` with `f` a factor of `w_n`, plus the leftmost
/// start of `f` in `w_n`.
pub fn find_factor(
    spec: &DirectiveSpec,
    f: &Word,
    level_cap: usize,
    caps: &Caps,
) -> FactorLocation {
    let mut tower = Tower::new(spec.clone());
    grow_until_found(&mut tower, f, level_cap, caps)
}
