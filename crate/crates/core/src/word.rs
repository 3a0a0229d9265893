//! Binary words of the Hamming space `Q_n`.
//!
//! A [`Word`] packs up to [`MAX_LEN`] coordinates into a single `u64`.
//! Coordinates are 1-indexed: coordinate `i` lives in bit `i - 1`, so
//! coordinate 1 is the least significant bit while the textual form lists
//! coordinate 1 first (leftmost).

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Longest supported word.
pub const MAX_LEN: usize = 63;

#[inline]
pub(crate) fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// A fixed-length binary word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    len: u8,
    bits: u64,
}

impl Word {
    /// The all-zero word of length `len`.
    pub fn zero(len: usize) -> Result<Self> {
        Self::from_bits(len, 0)
    }

    /// The all-ones word of length `len`.
    pub fn ones(len: usize) -> Result<Self> {
        Self::from_bits(len, low_mask(len))
    }

    /// The unit word `e^i`.
    pub fn unit(len: usize, i: usize) -> Result<Self> {
        Self::from_support(len, [i])
    }

    /// Builds a word from raw bits; bit `i - 1` is coordinate `i`.
    pub fn from_bits(len: usize, bits: u64) -> Result<Self> {
        if len > MAX_LEN {
            return Err(Error::WordTooLong(len));
        }
        if bits & !low_mask(len) != 0 {
            return Err(Error::Malformed(format!(
                "bits {bits:#x} do not fit in length {len}"
            )));
        }
        Ok(Self::from_bits_unchecked(len, bits))
    }

    #[inline]
    pub(crate) fn from_bits_unchecked(len: usize, bits: u64) -> Self {
        debug_assert!(len <= MAX_LEN && bits & !low_mask(len) == 0);
        Word {
            len: len as u8,
            bits,
        }
    }

    /// Builds the word whose support is `support` (1-based coordinates).
    pub fn from_support<I: IntoIterator<Item = usize>>(len: usize, support: I) -> Result<Self> {
        if len > MAX_LEN {
            return Err(Error::WordTooLong(len));
        }
        let mut bits = 0u64;
        for i in support {
            if i == 0 || i > len {
                return Err(Error::CoordinateOutOfRange { coordinate: i, len });
            }
            bits |= 1 << (i - 1);
        }
        Ok(Self::from_bits_unchecked(len, bits))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Raw bit representation; coordinate `i` is bit `i - 1`.
    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Value of coordinate `i` (1-based). Panics when `i` is out of range.
    #[inline]
    pub fn bit(&self, i: usize) -> u8 {
        assert!(i >= 1 && i <= self.len(), "coordinate {i} out of range");
        ((self.bits >> (i - 1)) & 1) as u8
    }

    /// Coordinate-wise XOR.
    pub fn try_add(&self, other: &Word) -> Result<Word> {
        self.check_len(other)?;
        Ok(Word {
            len: self.len,
            bits: self.bits ^ other.bits,
        })
    }

    /// Set of nonzero coordinates, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        let mut b = self.bits;
        while b != 0 {
            out.push(b.trailing_zeros() as usize + 1);
            b &= b - 1;
        }
        out
    }

    #[inline]
    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Modulo-2 sum of the coordinates.
    #[inline]
    pub fn parity(&self) -> u8 {
        (self.bits.count_ones() & 1) as u8
    }

    /// `(self, other)`: `self` occupies coordinates `1..=self.len()`.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        let len = self.len() + other.len();
        if len > MAX_LEN {
            return Err(Error::WordTooLong(len));
        }
        Ok(Word::from_bits_unchecked(
            len,
            self.bits | (other.bits << self.len()),
        ))
    }

    /// Hamming distance.
    pub fn distance(&self, other: &Word) -> Result<usize> {
        self.check_len(other)?;
        Ok((self.bits ^ other.bits).count_ones() as usize)
    }

    /// Flips coordinate `i`.
    pub fn flip(&self, i: usize) -> Result<Word> {
        if i == 0 || i > self.len() {
            return Err(Error::CoordinateOutOfRange {
                coordinate: i,
                len: self.len(),
            });
        }
        Ok(Word {
            len: self.len,
            bits: self.bits ^ (1 << (i - 1)),
        })
    }

    /// `1…1 + self`.
    pub fn complement(&self) -> Word {
        Word {
            len: self.len,
            bits: self.bits ^ low_mask(self.len()),
        }
    }

    /// Sub-word of coordinates `start..start + len` (1-based start).
    pub fn slice(&self, start: usize, len: usize) -> Result<Word> {
        if start == 0 || start + len - 1 > self.len() {
            return Err(Error::CoordinateOutOfRange {
                coordinate: start + len.saturating_sub(1),
                len: self.len(),
            });
        }
        Ok(Word::from_bits_unchecked(
            len,
            (self.bits >> (start - 1)) & low_mask(len),
        ))
    }

    /// Every word of `Q_len` in increasing order of raw bits.
    pub fn all(len: usize) -> impl Iterator<Item = Word> {
        assert!(len <= 32, "refusing to iterate over Q_{len}");
        (0..1u64 << len).map(move |b| Word::from_bits_unchecked(len, b))
    }

    /// Every word of length `len` and weight `w`, ordered lexicographically
    /// by support.
    pub fn of_weight(len: usize, w: usize) -> impl Iterator<Item = Word> {
        Combinations::new(len, w).map(move |s| {
            Word::from_bits_unchecked(len, s.iter().fold(0u64, |acc, &i| acc | 1 << (i - 1)))
        })
    }

    fn check_len(&self, other: &Word) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }
}

/// Panics on a length mismatch; use [`Word::try_add`] for a checked sum.
impl Add for Word {
    type Output = Word;

    #[inline]
    fn add(self, rhs: Word) -> Word {
        assert_eq!(self.len, rhs.len, "adding words of different lengths");
        Word {
            len: self.len,
            bits: self.bits ^ rhs.bits,
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if (self.bits >> i) & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.len() > MAX_LEN {
            return Err(Error::WordTooLong(s.len()));
        }
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(Error::ParseWord(s.to_string())),
            }
        }
        Ok(Word::from_bits_unchecked(s.len(), bits))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Lexicographic `w`-subsets of `{1..n}`.
pub(crate) struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub(crate) fn new(n: usize, w: usize) -> Self {
        let current = if w <= n { Some((1..=w).collect()) } else { None };
        Combinations { n, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.take()?;
        let w = cur.len();
        let mut next = cur.clone();
        let mut i = w;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - (w - 1 - i) {
                next[i] += 1;
                for j in i + 1..w {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(cur)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(w("0101").try_add(&w("0011")).unwrap(), w("0110"));
        let x = w("1101001");
        assert_eq!(x + x, Word::zero(7).unwrap());
        assert_eq!(x + Word::zero(7).unwrap(), x);
        assert_eq!(
            w("01").try_add(&w("011")),
            Err(Error::LengthMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn support_examples() {
        assert_eq!(w("0101").support(), vec![2, 4]);
        assert!(Word::zero(5).unwrap().support().is_empty());
        assert_eq!(w("111").support(), vec![1, 2, 3]);
    }

    #[test]
    fn parity_examples() {
        assert_eq!(w("110").parity(), 0);
        assert_eq!(w("1").parity(), 1);
        assert_eq!(w("0000").parity(), 0);
    }

    #[test]
    fn concat_examples() {
        assert_eq!(w("01").concat(&w("1")).unwrap(), w("011"));
        assert_eq!(w("").concat(&w("1011")).unwrap(), w("1011"));
        let c = w("111").concat(&w("0000")).unwrap();
        assert_eq!(c, w("1110000"));
        assert_eq!(c.len(), 7);
        let long = Word::zero(40).unwrap();
        assert!(matches!(long.concat(&long), Err(Error::WordTooLong(80))));
    }

    #[test]
    fn distance_examples() {
        assert_eq!(w("101").distance(&w("011")).unwrap(), 2);
        assert_eq!(w("101").distance(&w("101")).unwrap(), 0);
        for n in [1, 7, 63] {
            let d = Word::zero(n).unwrap().distance(&Word::ones(n).unwrap());
            assert_eq!(d.unwrap(), n);
        }
        assert!(w("1").distance(&w("10")).is_err());
    }

    #[test]
    fn text_form_is_coordinate_one_first() {
        let e1 = Word::unit(7, 1).unwrap();
        assert_eq!(e1.to_string(), "1000000");
        assert_eq!(e1.bit(1), 1);
        assert_eq!(Word::unit(7, 7).unwrap().to_string(), "0000001");
        assert!("01x".parse::<Word>().is_err());
        assert!(Word::unit(3, 4).is_err());
    }

    #[test]
    fn weight_three_enumeration() {
        assert_eq!(Word::of_weight(63, 3).count(), 39711);
        assert_eq!(Word::of_weight(7, 3).count(), 35);
        let first: Vec<_> = Word::of_weight(4, 2).map(|x| x.support()).collect();
        assert_eq!(
            first,
            vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]
        );
        assert_eq!(Word::of_weight(3, 4).count(), 0);
        assert_eq!(Word::of_weight(3, 0).count(), 1);
    }

    fn triple(len: usize) -> impl Strategy<Value = (Word, Word, Word)> {
        let m = low_mask(len);
        (any::<u64>(), any::<u64>(), any::<u64>()).prop_map(move |(a, b, c)| {
            (
                Word::from_bits_unchecked(len, a & m),
                Word::from_bits_unchecked(len, b & m),
                Word::from_bits_unchecked(len, c & m),
            )
        })
    }

    proptest! {
        #[test]
        fn distance_is_a_metric((a, b, c) in (1usize..=63).prop_flat_map(triple)) {
            let d = |x: &Word, y: &Word| x.distance(y).unwrap();
            prop_assert_eq!(d(&a, &b), d(&b, &a));
            prop_assert_eq!(d(&a, &b) == 0, a == b);
            prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
        }

        #[test]
        fn addition_is_an_abelian_group_of_exponent_two((a, b, c) in (0usize..=63).prop_flat_map(triple)) {
            prop_assert_eq!((a + b) + c, a + (b + c));
            prop_assert_eq!(a + b, b + a);
            prop_assert_eq!(a + a, Word::zero(a.len()).unwrap());
        }

        #[test]
        fn weight_of_sum_is_symmetric_difference((a, b, _c) in (1usize..=63).prop_flat_map(triple)) {
            let sa: std::collections::BTreeSet<_> = a.support().into_iter().collect();
            let sb: std::collections::BTreeSet<_> = b.support().into_iter().collect();
            prop_assert_eq!((a + b).weight(), sa.symmetric_difference(&sb).count());
        }

        #[test]
        fn text_round_trip((a, _b, _c) in (0usize..=63).prop_flat_map(triple)) {
            prop_assert_eq!(a.to_string().parse::<Word>().unwrap(), a);
        }
    }
}
