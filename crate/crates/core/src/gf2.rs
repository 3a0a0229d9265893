//! Linear algebra over GF(2) and linear codes presented by matrices.
//!
//! Rows are packed into `u64` with column `j` (1-based) in bit `j - 1`, the
//! same layout as [`Word`], so a row *is* a word of length `cols`.

use std::fmt;

use crate::error::{Error, Result};
use crate::word::{low_mask, Word, MAX_LEN};

/// Default cap on the dimension of codes that may be enumerated.
pub const ENUMERATION_LIMIT: usize = 24;

/// A dense binary matrix with at most [`MAX_LEN`] columns.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<u64>,
}

impl BitMatrix {
    pub fn new(cols: usize, rows: Vec<u64>) -> Result<Self> {
        if cols > MAX_LEN {
            return Err(Error::WordTooLong(cols));
        }
        if rows.iter().any(|r| r & !low_mask(cols) != 0) {
            return Err(Error::Malformed(format!("row wider than {cols} columns")));
        }
        Ok(BitMatrix { cols, rows })
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(cols, vec![0; rows])
    }

    /// Stacks words as rows; all must share the length `cols`.
    pub fn from_words(cols: usize, words: &[Word]) -> Result<Self> {
        for w in words {
            if w.len() != cols {
                return Err(Error::LengthMismatch {
                    left: cols,
                    right: w.len(),
                });
            }
        }
        Self::new(cols, words.iter().map(Word::bits).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn row(&self, r: usize) -> Word {
        Word::from_bits_unchecked(self.cols, self.rows[r])
    }

    /// Entry at 0-based row `r`, 1-based column `c`.
    pub fn get(&self, r: usize, c: usize) -> u8 {
        ((self.rows[r] >> (c - 1)) & 1) as u8
    }

    /// Column `c` (1-based) as a word of length `nrows`; row 1 is coordinate 1.
    pub fn column(&self, c: usize) -> Word {
        let bits = self
            .rows
            .iter()
            .enumerate()
            .fold(0u64, |acc, (r, row)| acc | (((row >> (c - 1)) & 1) << r));
        Word::from_bits_unchecked(self.rows.len(), bits)
    }

    pub fn transpose(&self) -> Result<BitMatrix> {
        let rows = (1..=self.cols).map(|c| self.column(c).bits()).collect();
        BitMatrix::new(self.rows.len(), rows)
    }

    /// `M · w` as a word of length `nrows`.
    pub fn syndrome(&self, w: &Word) -> Result<Word> {
        if w.len() != self.cols {
            return Err(Error::LengthMismatch {
                left: self.cols,
                right: w.len(),
            });
        }
        Ok(self.syndrome_unchecked(w.bits()))
    }

    #[inline]
    pub(crate) fn syndrome_unchecked(&self, bits: u64) -> Word {
        let s = self
            .rows
            .iter()
            .enumerate()
            .fold(0u64, |acc, (r, row)| {
                acc | (((row & bits).count_ones() as u64) & 1) << r
            });
        Word::from_bits_unchecked(self.rows.len(), s)
    }

    /// Reduced row echelon form with zero rows dropped, plus the pivot
    /// columns (1-based, increasing). Pivots are taken leftmost-first.
    pub fn row_reduce(&self) -> (BitMatrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut top = 0;
        for c in 1..=self.cols {
            let bit = 1u64 << (c - 1);
            let Some(p) = (top..rows.len()).find(|&r| rows[r] & bit != 0) else {
                continue;
            };
            rows.swap(top, p);
            let pivot_row = rows[top];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != top && *row & bit != 0 {
                    *row ^= pivot_row;
                }
            }
            pivots.push(c);
            top += 1;
            if top == rows.len() {
                break;
            }
        }
        rows.truncate(top);
        (
            BitMatrix {
                cols: self.cols,
                rows,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().1.len()
    }

    /// Basis of `{x : M x = 0}` in reduced row echelon form.
    pub fn nullspace(&self) -> BitMatrix {
        let (rref, pivots) = self.row_reduce();
        let mut basis = Vec::with_capacity(self.cols - pivots.len());
        for f in (1..=self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = 1u64 << (f - 1);
            for (r, &p) in pivots.iter().enumerate() {
                if rref.rows[r] >> (f - 1) & 1 == 1 {
                    v |= 1 << (p - 1);
                }
            }
            basis.push(v);
        }
        BitMatrix {
            cols: self.cols,
            rows: basis,
        }
        .row_reduce()
        .0
    }

    /// One row per line of '0'/'1', column 1 first.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in 0..self.rows.len() {
            s.push_str(&self.row(r).to_string());
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<BitMatrix> {
        let words: Vec<Word> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(str::parse)
            .collect::<Result<_>>()?;
        let cols = words.first().map_or(0, Word::len);
        Self::from_words(cols, &words)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows.len(), self.cols)?;
        for r in 0..self.rows.len() {
            writeln!(f, "  {}", self.row(r))?;
        }
        write!(f, "]")
    }
}

/// A linear code given by a full-rank parity-check matrix and generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    length: usize,
    parity_check: BitMatrix,
    generator: BitMatrix,
}

impl LinearCode {
    /// Code `{x : H x = 0}`. Dependent rows of `h` are eliminated.
    pub fn from_parity_check(h: BitMatrix) -> Self {
        let parity_check = if h.rank() == h.nrows() {
            h
        } else {
            h.row_reduce().0
        };
        let generator = parity_check.nullspace();
        LinearCode {
            length: parity_check.ncols(),
            parity_check,
            generator,
        }
    }

    /// Row space of `g`.
    pub fn from_generator(g: &BitMatrix) -> Self {
        let generator = g.row_reduce().0;
        let parity_check = generator.nullspace();
        LinearCode {
            length: g.ncols(),
            parity_check,
            generator,
        }
    }

    pub fn len(&self) -> usize {
        self.length
    }

    pub fn is_empty(&self) -> bool {
        self.length == 0
    }

    pub fn dimension(&self) -> usize {
        self.generator.nrows()
    }

    pub fn parity_check(&self) -> &BitMatrix {
        &self.parity_check
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    /// The orthogonal complement.
    pub fn dual(&self) -> LinearCode {
        LinearCode {
            length: self.length,
            parity_check: self.generator.clone(),
            generator: self.parity_check.clone(),
        }
    }

    /// Syndrome membership.
    pub fn contains(&self, w: &Word) -> Result<bool> {
        Ok(self.parity_check.syndrome(w)?.bits() == 0)
    }

    #[inline]
    pub(crate) fn contains_bits(&self, bits: u64) -> bool {
        self.parity_check
            .rows()
            .iter()
            .all(|row| (row & bits).count_ones() & 1 == 0)
    }

    /// All codewords, information tuples in lexicographic order
    /// (first generator row most significant).
    pub fn enumerate_codewords(&self) -> Result<Vec<Word>> {
        self.enumerate_codewords_with_limit(ENUMERATION_LIMIT)
    }

    pub fn enumerate_codewords_with_limit(&self, limit: usize) -> Result<Vec<Word>> {
        let k = self.dimension();
        if k > limit {
            return Err(Error::EnumerationLimit {
                dimension: k,
                limit,
            });
        }
        let g = self.generator.rows();
        Ok((0..1u64 << k)
            .map(|info| {
                let bits = (0..k)
                    .filter(|i| info >> (k - 1 - i) & 1 == 1)
                    .fold(0u64, |acc, i| acc ^ g[i]);
                Word::from_bits_unchecked(self.length, bits)
            })
            .collect())
    }

    /// Minimum weight over nonzero codewords.
    pub fn min_distance(&self) -> Result<usize> {
        if self.dimension() == 0 {
            return Err(Error::ZeroCode);
        }
        Ok(self
            .enumerate_codewords()?
            .iter()
            .map(Word::weight)
            .filter(|&w| w > 0)
            .min()
            .expect("nonzero dimension has nonzero codewords"))
    }

    /// `(A_0, …, A_n)`.
    pub fn weight_distribution(&self) -> Result<Vec<u64>> {
        let mut dist = vec![0u64; self.length + 1];
        for w in self.enumerate_codewords()? {
            dist[w.weight()] += 1;
        }
        Ok(dist)
    }
}

/// Matrix-canonical Hamming code of length `2^t - 1`: column `j` is the
/// `t`-bit binary expansion of `j`, most significant bit in row 1.
pub fn hamming_parity_check(t: usize) -> Result<LinearCode> {
    if t == 0 || t > 6 {
        return Err(Error::Malformed(format!(
            "Hamming parameter t = {t} outside 1..=6"
        )));
    }
    let n = (1usize << t) - 1;
    let rows = (0..t)
        .map(|r| {
            (1..=n)
                .filter(|j| j >> (t - 1 - r) & 1 == 1)
                .fold(0u64, |acc, j| acc | 1 << (j - 1))
        })
        .collect();
    Ok(LinearCode::from_parity_check(BitMatrix::new(n, rows)?))
}

/// Smallest linear code of length `len` containing `words`.
pub fn span_of(len: usize, words: &[Word]) -> Result<LinearCode> {
    Ok(LinearCode::from_generator(&BitMatrix::from_words(len, words)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn hamming_three() {
        let h = hamming_parity_check(2).unwrap();
        assert_eq!(h.len(), 3);
        let cols: Vec<String> = (1..=3).map(|c| h.parity_check().column(c).to_string()).collect();
        // row 1 holds the most significant bit
        assert_eq!(cols, ["01", "10", "11"]);
        assert_eq!(h.enumerate_codewords().unwrap(), vec![w("000"), w("111")]);
        assert!(h.contains(&w("111")).unwrap());
        assert_eq!(h.min_distance().unwrap(), 3);
    }

    #[test]
    fn hamming_seven_weight_distribution() {
        let h = hamming_parity_check(3).unwrap();
        assert_eq!(h.dimension(), 4);
        // oracle: brute force over Q_7 with the column rule applied directly
        let mut brute = vec![0u64; 8];
        for x in Word::all(7) {
            let s = x.support().iter().fold(0usize, |acc, &j| acc ^ j);
            if s == 0 {
                brute[x.weight()] += 1;
            }
        }
        assert_eq!(brute, vec![1, 0, 0, 7, 7, 0, 0, 1]);
        assert_eq!(h.weight_distribution().unwrap(), brute);
    }

    #[test]
    fn contains_examples() {
        let h = hamming_parity_check(3).unwrap();
        assert!(h.contains(&Word::zero(7).unwrap()).unwrap());
        assert!(!h.contains(&Word::unit(7, 1).unwrap()).unwrap());
        assert!(h.contains(&Word::ones(7).unwrap()).unwrap());
        assert!(h.contains(&Word::zero(6).unwrap()).is_err());
    }

    #[test]
    fn enumeration_sizes_and_limit() {
        assert_eq!(hamming_parity_check(3).unwrap().enumerate_codewords().unwrap().len(), 16);
        let h15 = hamming_parity_check(4).unwrap();
        let all = h15.enumerate_codewords().unwrap();
        assert_eq!(all.len(), 2048);
        assert_eq!(all.iter().collect::<BTreeSet<_>>().len(), 2048);
        assert_eq!(h15.min_distance().unwrap(), 3);
        assert!(matches!(
            h15.enumerate_codewords_with_limit(10),
            Err(Error::EnumerationLimit { dimension: 11, limit: 10 })
        ));
        assert!(matches!(
            hamming_parity_check(6).unwrap().enumerate_codewords(),
            Err(Error::EnumerationLimit { .. })
        ));
    }

    #[test]
    fn enumeration_order_follows_information_tuples() {
        let c = span_of(3, &[w("100"), w("010")]).unwrap();
        // info tuples 00, 01, 10, 11 over rows (100, 010)
        assert_eq!(
            c.enumerate_codewords().unwrap(),
            vec![w("000"), w("010"), w("100"), w("110")]
        );
    }

    #[test]
    fn span_examples() {
        let c = span_of(3, &[w("110"), w("011")]).unwrap();
        assert_eq!(c.dimension(), 2);
        assert_eq!(c.enumerate_codewords().unwrap().len(), 4);

        let z = span_of(5, &[]).unwrap();
        assert_eq!(z.dimension(), 0);
        assert_eq!(z.enumerate_codewords().unwrap(), vec![Word::zero(5).unwrap()]);
        assert_eq!(z.min_distance(), Err(Error::ZeroCode));

        let h7 = hamming_parity_check(3).unwrap();
        let fano: Vec<Word> = h7
            .enumerate_codewords()
            .unwrap()
            .into_iter()
            .filter(|x| x.weight() == 3)
            .collect();
        assert_eq!(fano.len(), 7);
        let s = span_of(7, &fano).unwrap();
        assert_eq!(s.dimension(), 4);
        for x in Word::all(7) {
            assert_eq!(s.contains(&x).unwrap(), h7.contains(&x).unwrap());
        }
    }

    #[test]
    fn generator_is_reduced_echelon_leftmost_pivots() {
        let c = span_of(4, &[w("0110"), w("1100"), w("1010")]).unwrap();
        assert_eq!(c.generator().to_text(), "1010\n0110\n");
    }

    #[test]
    fn parity_check_annihilates_generator() {
        for t in 1..=5 {
            let h = hamming_parity_check(t).unwrap();
            assert_eq!(h.dimension(), h.len() - t);
            for r in 0..h.generator().nrows() {
                assert!(h.contains(&h.generator().row(r)).unwrap());
            }
        }
    }

    #[test]
    fn contains_matches_enumeration_exhaustively() {
        for t in 2..=4 {
            let h = hamming_parity_check(t).unwrap();
            let set: BTreeSet<Word> = h.enumerate_codewords().unwrap().into_iter().collect();
            for x in Word::all(h.len()) {
                assert_eq!(h.contains(&x).unwrap(), set.contains(&x));
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let h = hamming_parity_check(3).unwrap();
        let text = h.parity_check().to_text();
        assert_eq!(text, "0001111\n0110011\n1010101\n");
        assert_eq!(BitMatrix::from_text(&text).unwrap(), *h.parity_check());
    }

    proptest! {
        #[test]
        fn double_dual_is_identity(cols in 1usize..=12, rows in proptest::collection::vec(any::<u64>(), 0..8)) {
            let m = BitMatrix::new(cols, rows.iter().map(|r| r & low_mask(cols)).collect()).unwrap();
            let c = LinearCode::from_generator(&m);
            let dd = c.dual().dual();
            prop_assert_eq!(dd.generator().row_reduce().0, m.row_reduce().0);
            prop_assert_eq!(c.dimension() + c.dual().dimension(), cols);
            for r in 0..c.generator().nrows() {
                prop_assert_eq!(c.parity_check().syndrome(&c.generator().row(r)).unwrap().bits(), 0);
            }
        }
    }
}
