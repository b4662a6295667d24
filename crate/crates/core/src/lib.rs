//! String attractors of episturmian sequences.
//!
//! Standard episturmian sequences are generated by iterated palindromic
//! closure from a directive sequence ([`tower`]). Their palindromic
//! prefixes and all their factors admit string attractors with exactly one
//! position per distinct letter, which is the least possible size.
//! [`attractor`] builds those attractors, [`verifier`] checks any position
//! set against a word, and [`oracle`] finds minimum attractors of short
//! words by exhaustive search.
//!
//! ```
//! use epiattr_core::{build_tower, prefix_attractor, Caps, DirectiveSpec, Stop};
//!
//! let tower = build_tower(&DirectiveSpec::tribonacci(), Stop::Levels(5), &Caps::default()).unwrap();
//! let a = prefix_attractor(&tower, 5).unwrap();
//! assert_eq!(a.positions(), [3, 7, 14]);
//! ```

pub mod attractor;
pub mod closure;
pub mod oracle;
pub mod profile;
pub mod report;
pub mod tower;
pub mod verifier;
pub mod word;

pub use attractor::{
    factor_attractor, factor_attractor_in, mirror_attractor, next_attractor, prefix_attractor,
    Attractor, AttractorError, FactorAttractor, FactorContext, FactorTarget, Provenance, Status,
};
pub use closure::{
    closure_oracle, longest_pal_suffix_preceded_by, palindromic_closure, ClosureError,
};
pub use oracle::{
    all_attractors_of_size, attractor_of_size, letter_lower_bound, minimal_attractor,
    MinimalAttractor, OracleError, OracleLimits,
};
pub use profile::{
    predicted_plateau, profile, profile_oracle_check, ProfileCheck, ProfileError, ProfileTable,
};
pub use report::{
    sweep, AttractorRow, ConformanceReport, StatusTag, SweepError, SweepOptions, SweepRow,
};
pub use tower::{
    build_tower, find_factor, palindromic_prefixes, sequence_prefix, Caps, ClosureCase,
    DirectiveError, DirectiveSpec, FactorLocation, LevelRecord, SearchLimit, Stop, Tower,
    TowerError,
};
pub use verifier::{
    crossing_occurrence, is_attractor, is_attractor_reference, Verifier, VerifyError, VerifyOutcome,
};
pub use word::{
    distinct_factors, is_palindrome, occurrences, reverse, Letter, Occurrence, Word, WordError,
};
