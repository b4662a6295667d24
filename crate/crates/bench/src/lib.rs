//! Shared fixtures for the benchmarks.

use epiattr_core::{build_tower, prefix_attractor, Caps, DirectiveSpec, Stop, Tower, Word};

/// Tower of `spec` grown until its top level has at least `len` letters.
pub fn tower_of_length(spec: &DirectiveSpec, len: usize) -> Tower {
    build_tower(spec, Stop::MinLength(len), &Caps::default()).expect("fixture within caps")
}

/// Top palindromic prefix of `tower` with its prefix attractor.
pub fn top_with_attractor(tower: &Tower) -> (Word, Vec<usize>) {
    let n = tower.top_level();
    let a = prefix_attractor(tower, n).expect("top level exists");
    (tower.level_word(n).unwrap(), a.positions().to_vec())
}
