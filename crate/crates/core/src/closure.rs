//! Palindromic closure: the shortest palindrome having `w a` as a prefix.

use thiserror::Error;

use crate::word::{is_palindrome_bytes, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosureError {
    #[error("the word must be non-empty")]
    EmptyWord,
    #[error("no palindrome of length <= {max} has {prefix:?} as a prefix")]
    OracleExhausted { prefix: Word, max: usize },
}

/// Length of the longest palindromic suffix of `w` that is immediately
/// preceded by `a`. Zero is a valid answer (when `w` ends with `a`).
/// `None` when no suffix qualifies, which is always the case when `a`
/// does not occur in `w`.
pub fn longest_pal_suffix_preceded_by(w: &Word, a: Letter) -> Result<Option<usize>, ClosureError> {
    if w.is_empty() {
        return Err(ClosureError::EmptyWord);
    }
    let b = w.as_bytes();
    let n = b.len();
    Ok((0..n)
        .rev()
        .find(|&len| b[n - len - 1] == a.byte() && is_palindrome_bytes(&b[n - len..])))
}

/// `(w a)^(+)`.
///
/// With `w = v p`, where `p` is the longest palindromic suffix of `w`
/// preceded by `a`, the closure is `v p reverse(v)`; without such a suffix
/// it is `w a reverse(w)`.
pub fn palindromic_closure(w: &Word, a: Letter) -> Word {
    let split = if w.is_empty() {
        None
    } else {
        longest_pal_suffix_preceded_by(w, a).expect("non-empty")
    };
    let b = w.as_bytes();
    let mut out = Vec::with_capacity(2 * b.len() + 1);
    out.extend_from_slice(b);
    match split {
        Some(p) => out.extend(b[..b.len() - p].iter().rev()),
        None => {
            out.push(a.byte());
            out.extend(b.iter().rev());
        }
    }
    Word::from_bytes_unchecked(out)
}

/// Independent check of [`palindromic_closure`]: tries every length from
/// `|w| + 1` upwards, forcing each position by the prefix `w a` and the
/// palindrome symmetry, and returns the first consistent word.
pub fn closure_oracle(w: &Word, a: Letter) -> Result<Word, ClosureError> {
    let mut prefix = w.as_bytes().to_vec();
    prefix.push(a.byte());
    let n = prefix.len();
    let max = 2 * w.len() + 1;
    'lengths: for len in n..=max {
        let mut cand: Vec<Option<u8>> = vec![None; len];
        for (i, &c) in prefix.iter().enumerate() {
            for idx in [i, len - 1 - i] {
                match cand[idx] {
                    Some(x) if x != c => continue 'lengths,
                    _ => cand[idx] = Some(c),
                }
            }
        }
        if let Some(bytes) = cand.into_iter().collect::<Option<Vec<u8>>>() {
            return Ok(Word::from_bytes_unchecked(bytes));
        }
    }
    Err(ClosureError::OracleExhausted {
        prefix: Word::from_bytes_unchecked(prefix),
        max,
    })
}
