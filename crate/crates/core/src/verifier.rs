//! Deciding whether a set of positions is a string attractor of a word.
//!
//! `Γ` is an attractor of `w` when every non-empty factor of `w` has an
//! occurrence whose interval contains some position of `Γ`. On failure the
//! verifier reports the shortlex-least factor with no such occurrence.
//!
//! [`Verifier`] answers queries in linear time off a suffix automaton: all
//! factors in one automaton state share their set of end positions `E`, so
//! a factor of length `L` in that state is crossed iff some `e` in `E` has
//! an attractor position within `L - 1` to its left. [`is_attractor_reference`]
//! enumerates factors and occurrences directly and is kept for
//! cross-checking.

use serde::Serialize;
use thiserror::Error;

use crate::word::{distinct_factors, occurrences, Occurrence, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("cannot verify an attractor of the empty word")]
    EmptyWord,
    #[error("position {position} is out of range for a word of length {len}")]
    OutOfRange { position: usize, len: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum VerifyOutcome {
    Pass,
    Fail {
        witness: Word,
        occurrences: Vec<Occurrence>,
    },
}

impl VerifyOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, VerifyOutcome::Pass)
    }

    pub fn witness(&self) -> Option<&Word> {
        match self {
            VerifyOutcome::Pass => None,
            VerifyOutcome::Fail { witness, .. } => Some(witness),
        }
    }
}

fn normalize(w: &Word, positions: &[usize]) -> Result<Vec<usize>, VerifyError> {
    if w.is_empty() {
        return Err(VerifyError::EmptyWord);
    }
    if let Some(&position) = positions.iter().find(|&&p| p >= w.len()) {
        return Err(VerifyError::OutOfRange {
            position,
            len: w.len(),
        });
    }
    let mut sorted = positions.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    Ok(sorted)
}

fn fail(w: &Word, witness: Word) -> VerifyOutcome {
    let occurrences = occurrences(w, &witness).expect("witness is non-empty");
    VerifyOutcome::Fail {
        witness,
        occurrences,
    }
}

/// Leftmost occurrence of `f` in `w` containing a position of `positions`.
pub fn crossing_occurrence(w: &Word, f: &Word, positions: &[usize]) -> Option<Occurrence> {
    let mut sorted = positions.to_vec();
    sorted.sort_unstable();
    occurrences(w, f)
        .ok()?
        .into_iter()
        .find(|occ| occ.crosses(&sorted))
}

/// Attractor check by direct enumeration of distinct factors and their
/// occurrences. Cubic; meant for small words and cross-validation.
pub fn is_attractor_reference(w: &Word, positions: &[usize]) -> Result<VerifyOutcome, VerifyError> {
    let sorted = normalize(w, positions)?;
    for f in distinct_factors(w) {
        if crossing_occurrence(w, &f, &sorted).is_none() {
            return Ok(fail(w, f));
        }
    }
    Ok(VerifyOutcome::Pass)
}

/// Attractor check through a fresh [`Verifier`].
pub fn is_attractor(w: &Word, positions: &[usize]) -> Result<VerifyOutcome, VerifyError> {
    Verifier::new(w.clone())?.check(positions)
}

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct State {
    len: u32,
    link: u32,
    /// Some end position of every factor in this state.
    end: u32,
    next: Vec<(u8, u32)>,
}

impl State {
    fn get(&self, c: u8) -> u32 {
        self.next
            .iter()
            .find(|(k, _)| *k == c)
            .map_or(NONE, |&(_, v)| v)
    }

    fn set(&mut self, c: u8, to: u32) {
        match self.next.iter_mut().find(|(k, _)| *k == c) {
            Some(slot) => slot.1 = to,
            None => self.next.push((c, to)),
        }
    }
}

/// A word preprocessed for repeated attractor queries.
#[derive(Debug, Clone)]
pub struct Verifier {
    word: Word,
    states: Vec<State>,
    /// State reached after reading `w[..=e]`.
    prefix_state: Vec<u32>,
    /// State indices by decreasing `len`, so children precede suffix links.
    order: Vec<u32>,
}

impl Verifier {
    pub fn new(word: Word) -> Result<Self, VerifyError> {
        if word.is_empty() {
            return Err(VerifyError::EmptyWord);
        }
        let n = word.len();
        let mut states = Vec::with_capacity(2 * n);
        states.push(State {
            len: 0,
            link: NONE,
            end: 0,
            next: Vec::new(),
        });
        let mut prefix_state = Vec::with_capacity(n);
        let mut last = 0u32;
        for (e, &c) in word.as_bytes().iter().enumerate() {
            let cur = states.len() as u32;
            states.push(State {
                len: states[last as usize].len + 1,
                link: 0,
                end: e as u32,
                next: Vec::new(),
            });
            let mut p = last;
            while p != NONE && states[p as usize].get(c) == NONE {
                states[p as usize].set(c, cur);
                p = states[p as usize].link;
            }
            if p != NONE {
                let q = states[p as usize].get(c);
                if states[p as usize].len + 1 == states[q as usize].len {
                    states[cur as usize].link = q;
                } else {
                    let clone = states.len() as u32;
                    let mut cloned = states[q as usize].clone();
                    cloned.len = states[p as usize].len + 1;
                    states.push(cloned);
                    while p != NONE && states[p as usize].get(c) == q {
                        states[p as usize].set(c, clone);
                        p = states[p as usize].link;
                    }
                    states[q as usize].link = clone;
                    states[cur as usize].link = clone;
                }
            }
            prefix_state.push(cur);
            last = cur;
        }

        let mut order: Vec<u32> = (0..states.len() as u32).collect();
        order.sort_unstable_by_key(|&i| std::cmp::Reverse(states[i as usize].len));

        Ok(Verifier {
            word,
            states,
            prefix_state,
            order,
        })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    /// Number of distinct non-empty factors.
    pub fn distinct_factor_count(&self) -> usize {
        self.states[1..]
            .iter()
            .map(|s| (s.len - self.states[s.link as usize].len) as usize)
            .sum()
    }

    pub fn check(&self, positions: &[usize]) -> Result<VerifyOutcome, VerifyError> {
        let sorted = normalize(&self.word, positions)?;
        match self.shortest_uncrossed(&sorted) {
            None => Ok(VerifyOutcome::Pass),
            Some(witness) => Ok(fail(&self.word, witness)),
        }
    }

    /// Shortlex-least factor without a crossing occurrence.
    fn shortest_uncrossed(&self, sorted: &[usize]) -> Option<Word> {
        let n = self.word.len();
        // gap[s] = distance from an end position back to the nearest
        // attractor position at or before it, minimised over the state's
        // end positions
        let mut gap = vec![u32::MAX; self.states.len()];
        let mut next_pos = 0;
        let mut prev: Option<usize> = None;
        for e in 0..n {
            while next_pos < sorted.len() && sorted[next_pos] <= e {
                prev = Some(sorted[next_pos]);
                next_pos += 1;
            }
            if let Some(p) = prev {
                gap[self.prefix_state[e] as usize] = (e - p) as u32;
            }
        }
        for &s in &self.order {
            let link = self.states[s as usize].link;
            if link != NONE {
                gap[link as usize] = gap[link as usize].min(gap[s as usize]);
            }
        }

        // lengths minlen..=min(len, gap) of a state are uncrossed
        let mut best: Option<(u32, &[u8])> = None;
        let bytes = self.word.as_bytes();
        for (i, st) in self.states.iter().enumerate().skip(1) {
            let min_len = self.states[st.link as usize].len + 1;
            if gap[i] < min_len {
                continue;
            }
            let end = st.end as usize;
            let f = &bytes[end + 1 - min_len as usize..=end];
            let better = match best {
                None => true,
                Some((l, g)) => min_len < l || (min_len == l && f < g),
            };
            if better {
                best = Some((min_len, f));
            }
        }
        best.map(|(_, f)| Word::from_bytes_unchecked(f.to_vec()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::new(s).unwrap()
    }

    #[test]
    fn verify_examples() {
        assert_eq!(is_attractor(&w("010010"), &[1, 3]), Ok(VerifyOutcome::Pass));
        // {1} misses every '0', so the shortest uncrossed factor is "0"
        assert_eq!(
            is_attractor(&w("010010"), &[1]).unwrap().witness(),
            Some(&w("0"))
        );
        assert_eq!(
            is_attractor(&w("010010"), &[0, 1]),
            Ok(VerifyOutcome::Fail {
                witness: w("00"),
                occurrences: vec![Occurrence { start: 2, len: 2 }],
            })
        );
        assert_eq!(
            is_attractor(&w("010010"), &[0, 5]).unwrap().witness(),
            Some(&w("1"))
        );
        assert_eq!(is_attractor(&w("0"), &[0]), Ok(VerifyOutcome::Pass));
        assert_eq!(
            is_attractor_reference(&w("010010"), &[0, 1])
                .unwrap()
                .witness(),
            Some(&w("00"))
        );
    }

    #[test]
    fn verify_errors() {
        assert_eq!(is_attractor(&w(""), &[]), Err(VerifyError::EmptyWord));
        assert_eq!(
            is_attractor(&w("01"), &[2]),
            Err(VerifyError::OutOfRange {
                position: 2,
                len: 2
            })
        );
        // empty set fails on the first letter
        assert_eq!(
            is_attractor(&w("10"), &[]).unwrap().witness(),
            Some(&w("0"))
        );
    }

    #[test]
    fn crossing_examples() {
        assert_eq!(
            crossing_occurrence(&w("010010"), &w("010"), &[3]),
            Some(Occurrence { start: 3, len: 3 })
        );
        assert_eq!(crossing_occurrence(&w("010010"), &w("00"), &[1]), None);
        assert_eq!(
            crossing_occurrence(&w("0"), &w("0"), &[0]),
            Some(Occurrence { start: 0, len: 1 })
        );
    }

    #[test]
    fn factor_count_matches_enumeration() {
        for s in ["0100101001001010010", "aaaa", "abcabcab", "x"] {
            let word = w(s);
            assert_eq!(
                Verifier::new(word.clone()).unwrap().distinct_factor_count(),
                distinct_factors(&word).len()
            );
        }
    }

    fn word_and_positions() -> impl Strategy<Value = (Word, Vec<usize>)> {
        "[abc]{1,24}".prop_flat_map(|s| {
            let n = s.len();
            (Just(w(&s)), proptest::collection::vec(0..n, 0..5))
        })
    }

    proptest! {
        #[test]
        fn agrees_with_reference((word, positions) in word_and_positions()) {
            prop_assert_eq!(
                is_attractor(&word, &positions).unwrap(),
                is_attractor_reference(&word, &positions).unwrap()
            );
        }

        #[test]
        fn monotone_and_letter_bound((word, positions) in word_and_positions(), extra in 0usize..24) {
            let v = Verifier::new(word.clone()).unwrap();
            let all: Vec<usize> = (0..word.len()).collect();
            prop_assert!(v.check(&all).unwrap().is_pass());
            if v.check(&positions).unwrap().is_pass() {
                let mut sup = positions.clone();
                sup.push(extra % word.len());
                prop_assert!(v.check(&sup).unwrap().is_pass());
                let covered: std::collections::BTreeSet<_> =
                    positions.iter().map(|&p| word.letter(p)).collect();
                prop_assert_eq!(covered, word.distinct_letters());
            }
        }
    }
}
