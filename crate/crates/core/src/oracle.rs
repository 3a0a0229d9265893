//! Codes presented as membership oracles.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::gf2::{LinearCode, ENUMERATION_LIMIT};
use crate::word::Word;

/// A (possibly nonlinear) binary code: a length, a membership predicate and
/// optionally an enumerator.
///
/// Implementations must be safe to query concurrently.
#[allow(clippy::len_without_is_empty)]
pub trait CodeOracle: Send + Sync {
    /// Codeword length.
    fn len(&self) -> usize;

    /// Membership for a word of length [`CodeOracle::len`]. Callers check
    /// the length; implementations may assume it.
    fn contains(&self, w: &Word) -> bool;

    /// All codewords, when the code is small enough to list.
    fn codewords(&self) -> Option<Vec<Word>> {
        None
    }

    fn cardinality_hint(&self) -> Option<u64> {
        None
    }

    /// Length-checked membership.
    fn try_contains(&self, w: &Word) -> Result<bool> {
        if w.len() != self.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: w.len(),
            });
        }
        Ok(self.contains(w))
    }
}

impl<T: CodeOracle + ?Sized> CodeOracle for &T {
    fn len(&self) -> usize {
        (**self).len()
    }
    fn contains(&self, w: &Word) -> bool {
        (**self).contains(w)
    }
    fn codewords(&self) -> Option<Vec<Word>> {
        (**self).codewords()
    }
    fn cardinality_hint(&self) -> Option<u64> {
        (**self).cardinality_hint()
    }
}

impl CodeOracle for LinearCode {
    fn len(&self) -> usize {
        LinearCode::len(self)
    }

    fn contains(&self, w: &Word) -> bool {
        self.contains_bits(w.bits())
    }

    fn codewords(&self) -> Option<Vec<Word>> {
        self.enumerate_codewords().ok()
    }

    fn cardinality_hint(&self) -> Option<u64> {
        1u64.checked_shl(self.dimension() as u32)
    }
}

/// A code given by an explicit list of words.
#[derive(Clone, Debug)]
pub struct ExplicitCode {
    len: usize,
    words: Vec<Word>,
    index: HashSet<Word>,
}

impl ExplicitCode {
    /// Duplicates are removed; order of first occurrence is kept.
    pub fn new(len: usize, words: impl IntoIterator<Item = Word>) -> Result<Self> {
        let mut index = HashSet::new();
        let mut list = Vec::new();
        for w in words {
            if w.len() != len {
                return Err(Error::LengthMismatch {
                    left: len,
                    right: w.len(),
                });
            }
            if index.insert(w) {
                list.push(w);
            }
        }
        Ok(ExplicitCode {
            len,
            words: list,
            index,
        })
    }

    /// Snapshot of an enumerable oracle.
    pub fn from_oracle(oracle: &dyn CodeOracle) -> Result<Self> {
        let words = oracle.codewords().ok_or(Error::NoEnumerator)?;
        Self::new(oracle.len(), words)
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    /// Copy without `w`.
    pub fn without(&self, w: &Word) -> ExplicitCode {
        let words = self.words.iter().copied().filter(|x| x != w);
        ExplicitCode::new(self.len, words).expect("lengths already validated")
    }
}

impl CodeOracle for ExplicitCode {
    fn len(&self) -> usize {
        self.len
    }

    fn contains(&self, w: &Word) -> bool {
        self.index.contains(w)
    }

    fn codewords(&self) -> Option<Vec<Word>> {
        Some(self.words.clone())
    }

    fn cardinality_hint(&self) -> Option<u64> {
        Some(self.words.len() as u64)
    }
}

/// Whether a code of `log2_size` may be listed.
pub(crate) fn enumerable(log2_size: usize) -> bool {
    log2_size <= ENUMERATION_LIMIT
}
