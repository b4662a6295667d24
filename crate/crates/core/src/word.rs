//! Finite words over a printable-ASCII alphabet and the handful of
//! primitives every other module is built on.
//!
//! Positions are 0-indexed. An occurrence of a factor is the whole interval
//! of positions it covers, not just its start: this is the notion of
//! occurrence under which string attractors are defined.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("letter {0:?} is not a printable ASCII character")]
    InvalidLetter(char),
    #[error("expected exactly one letter, got {0:?}")]
    NotOneLetter(String),
    #[error("the empty factor has no occurrences")]
    EmptyFactor,
}

/// A single letter. Letters compare by character code.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    pub fn new(c: char) -> Result<Self, WordError> {
        if c.is_ascii_graphic() {
            Ok(Letter(c as u8))
        } else {
            Err(WordError::InvalidLetter(c))
        }
    }

    pub fn byte(self) -> u8 {
        self.0
    }

    pub fn as_char(self) -> char {
        self.0 as char
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "'{}'", self.as_char())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl FromStr for Letter {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Letter::new(c),
            _ => Err(WordError::NotOneLetter(s.to_owned())),
        }
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let buf = [self.0];
        // always valid UTF-8: the byte is printable ASCII
        serializer.serialize_str(std::str::from_utf8(&buf).unwrap())
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A finite word `w[0] w[1] ... w[len-1]`.
///
/// `Ord` is shortlex: shorter words first, then lexicographic by character
/// code. Every ordered listing of factors in this crate uses it.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(s: &str) -> Result<Self, WordError> {
        s.parse()
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        Word(letters.into_iter().map(Letter::byte).collect())
    }

    pub(crate) fn from_bytes_unchecked(bytes: Vec<u8>) -> Self {
        debug_assert!(bytes.iter().all(u8::is_ascii_graphic));
        Word(bytes)
    }

    pub(crate) fn into_bytes(self) -> Vec<u8> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        // construction only admits printable ASCII
        std::str::from_utf8(&self.0).expect("words are ASCII")
    }

    /// Panics if `i` is out of range.
    pub fn letter(&self, i: usize) -> Letter {
        Letter(self.0[i])
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.0.iter().map(|&b| Letter(b))
    }

    pub fn push(&mut self, a: Letter) {
        self.0.push(a.0);
    }

    pub fn slice(&self, range: Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    pub fn prefix(&self, len: usize) -> Word {
        self.slice(0..len)
    }

    pub fn contains_letter(&self, a: Letter) -> bool {
        self.0.contains(&a.0)
    }

    pub fn distinct_letters(&self) -> BTreeSet<Letter> {
        self.letters().collect()
    }

    /// Leftmost start of `f` in `self`, naive scan.
    pub fn find(&self, f: &Word) -> Option<usize> {
        find_bytes(&self.0, &f.0, 0)
    }

    /// Renders the word with the letters at `positions` bracketed, e.g.
    /// `0[1]0[0]10` for `{1, 3}` on `010010`.
    pub fn mark(&self, positions: &[usize]) -> String {
        let mut out = String::with_capacity(self.len() + 2 * positions.len());
        for (i, &b) in self.0.iter().enumerate() {
            if positions.contains(&i) {
                out.push('[');
                out.push(b as char);
                out.push(']');
            } else {
                out.push(b as char);
            }
        }
        out
    }
}

pub(crate) fn find_bytes(haystack: &[u8], needle: &[u8], from: usize) -> Option<usize> {
    if needle.is_empty() {
        return Some(from.min(haystack.len()));
    }
    if haystack.len() < needle.len() || from > haystack.len() - needle.len() {
        return None;
    }
    haystack[from..]
        .windows(needle.len())
        .position(|win| win == needle)
        .map(|p| p + from)
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(c) = s.chars().find(|c| !c.is_ascii_graphic()) {
            return Err(WordError::InvalidLetter(c));
        }
        Ok(Word(s.as_bytes().to_vec()))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.as_str())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One occurrence of a factor: the interval `start .. start + len`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occurrence {
    pub start: usize,
    pub len: usize,
}

impl Occurrence {
    pub fn positions(&self) -> Range<usize> {
        self.start..self.start + self.len
    }

    pub fn contains(&self, p: usize) -> bool {
        self.positions().contains(&p)
    }

    /// True when some position of `sorted` falls inside this occurrence.
    pub fn crosses(&self, sorted: &[usize]) -> bool {
        let i = sorted.partition_point(|&p| p < self.start);
        i < sorted.len() && sorted[i] < self.start + self.len
    }
}

impl Serialize for Occurrence {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.positions())
    }
}

pub fn reverse(w: &Word) -> Word {
    Word(w.0.iter().rev().copied().collect())
}

pub fn is_palindrome(w: &Word) -> bool {
    is_palindrome_bytes(&w.0)
}

pub(crate) fn is_palindrome_bytes(b: &[u8]) -> bool {
    b.iter().eq(b.iter().rev())
}

/// All occurrences of `f` in `w`, by increasing start.
pub fn occurrences(w: &Word, f: &Word) -> Result<Vec<Occurrence>, WordError> {
    if f.is_empty() {
        return Err(WordError::EmptyFactor);
    }
    let len = f.len();
    if len > w.len() {
        return Ok(Vec::new());
    }
    Ok(w.0
        .windows(len)
        .enumerate()
        .filter(|(_, win)| *win == f.as_bytes())
        .map(|(start, _)| Occurrence { start, len })
        .collect())
}

/// Every non-empty factor of `w` exactly once, in shortlex order.
pub fn distinct_factors(w: &Word) -> Vec<Word> {
    let n = w.len();
    let mut out = Vec::new();
    for len in 1..=n {
        let mut seen: HashSet<&[u8]> = HashSet::new();
        let mut this_len: Vec<&[u8]> = w.0.windows(len).filter(|f| seen.insert(f)).collect();
        this_len.sort_unstable();
        out.extend(this_len.into_iter().map(|f| Word(f.to_vec())));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::new(s).unwrap()
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(reverse(&w("01101")), w("10110"));
        assert_eq!(reverse(&w("")), w(""));
        assert_eq!(reverse(&w("010")), w("010"));
    }

    #[test]
    fn palindrome_examples() {
        assert!(is_palindrome(&w("0001000")));
        assert!(is_palindrome(&w("")));
        assert!(!is_palindrome(&w("01")));
    }

    #[test]
    fn occurrences_examples() {
        let occ = occurrences(&w("010010"), &w("00")).unwrap();
        assert_eq!(occ, vec![Occurrence { start: 2, len: 2 }]);
        assert_eq!(occ[0].positions().collect::<Vec<_>>(), vec![2, 3]);

        let starts: Vec<_> = occurrences(&w("010010"), &w("010"))
            .unwrap()
            .iter()
            .map(|o| o.start)
            .collect();
        assert_eq!(starts, vec![0, 3]);

        assert!(occurrences(&w("0"), &w("1")).unwrap().is_empty());
        assert_eq!(occurrences(&w("0"), &w("")), Err(WordError::EmptyFactor));
    }

    #[test]
    fn distinct_factor_examples() {
        let got: Vec<String> = distinct_factors(&w("010"))
            .iter()
            .map(|f| f.to_string())
            .collect();
        assert_eq!(got, ["0", "1", "01", "10", "010"]);
        assert_eq!(distinct_factors(&w("aaa")).len(), 3);
        assert!(distinct_factors(&w("")).is_empty());
    }

    #[test]
    fn rejects_non_printable() {
        assert!(Word::new("a b").is_err());
        assert!("ab".parse::<Letter>().is_err());
        assert_eq!("a".parse::<Letter>().unwrap().as_char(), 'a');
    }

    #[test]
    fn mark_brackets_positions() {
        assert_eq!(w("010010").mark(&[1, 3]), "0[1]0[0]10");
    }

    #[test]
    fn crosses_uses_interval() {
        let occ = Occurrence { start: 2, len: 2 };
        assert!(occ.crosses(&[0, 3]));
        assert!(!occ.crosses(&[1, 4]));
    }
}
