//! Exhaustive cross-validation of the automaton verifier against an
//! independent strategy: a factor is crossed by `Γ` iff `Γ` meets the union
//! of its occurrence intervals.

use epiattr_core::{is_attractor_reference, Verifier, Word};
use rayon::prelude::*;
use std::collections::BTreeSet;

/// (factor, union of its occurrence intervals as a bitmask), shortlex order.
fn factor_masks(w: &[u8]) -> Vec<(Vec<u8>, u32)> {
    let n = w.len();
    let factors: BTreeSet<(usize, &[u8])> = (1..=n)
        .flat_map(|len| w.windows(len).map(move |f| (len, f)))
        .collect();
    factors
        .into_iter()
        .map(|(len, f)| {
            let mask = (0..=n - len)
                .filter(|&s| &w[s..s + len] == f)
                .fold(0u32, |m, s| m | (((1u32 << len) - 1) << s));
            (f.to_vec(), mask)
        })
        .collect()
}

fn word_of(bits: u32, n: usize) -> Vec<u8> {
    (0..n)
        .map(|i| if bits >> i & 1 == 1 { b'1' } else { b'0' })
        .collect()
}

#[test]
fn automaton_matches_interval_unions_up_to_12() {
    for n in 1..=12usize {
        let mismatches: usize = (0..1u32 << n)
            .into_par_iter()
            .map(|bits| {
                let bytes = word_of(bits, n);
                let masks = factor_masks(&bytes);
                let word = Word::new(std::str::from_utf8(&bytes).unwrap()).unwrap();
                let verifier = Verifier::new(word).unwrap();
                let mut bad = 0;
                let mut positions = Vec::with_capacity(n);
                for gamma in 0..1u32 << n {
                    positions.clear();
                    positions.extend((0..n).filter(|&p| gamma >> p & 1 == 1));
                    let expected = masks
                        .iter()
                        .find(|(_, m)| m & gamma == 0)
                        .map(|(f, _)| f.as_slice());
                    let got = verifier.check(&positions).unwrap();
                    if got.witness().map(|w| w.as_bytes()) != expected {
                        bad += 1;
                    }
                }
                bad
            })
            .sum();
        assert_eq!(mismatches, 0, "length {n}");
    }
}

#[test]
fn reference_matches_automaton_up_to_8() {
    for n in 1..=8usize {
        for bits in 0..1u32 << n {
            let bytes = word_of(bits, n);
            let word = Word::new(std::str::from_utf8(&bytes).unwrap()).unwrap();
            let verifier = Verifier::new(word.clone()).unwrap();
            for gamma in 0..1u32 << n {
                let positions: Vec<usize> = (0..n).filter(|&p| gamma >> p & 1 == 1).collect();
                assert_eq!(
                    verifier.check(&positions).unwrap(),
                    is_attractor_reference(&word, &positions).unwrap(),
                    "{word} {positions:?}"
                );
            }
        }
    }
}
