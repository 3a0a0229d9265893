//! The Nordstrom–Robinson code as the Gray image of the octacode, the
//! Hamming code enclosing it, and the component-trace check.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::components::{linear_component, ComponentSpec};
use crate::error::{Error, Result};
use crate::gf2::{span_of, BitMatrix, LinearCode};
use crate::oracle::CodeOracle;
use crate::perfect::CanonicalHamming;
use crate::word::Word;

/// Octacode generator over Z4: the four cyclic shifts of
/// `g(x) = 3 + x + 2x^2 + x^3` on seven coordinates, bordered by an
/// eighth coordinate making each row sum to 0 mod 4.
pub const OCTACODE_GENERATOR: [[u8; 8]; 4] = [
    [3, 1, 2, 1, 0, 0, 0, 1],
    [0, 3, 1, 2, 1, 0, 0, 1],
    [0, 0, 3, 1, 2, 1, 0, 1],
    [0, 0, 0, 3, 1, 2, 1, 1],
];

/// A word of length 8 over Z4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuaternaryWord([u8; 8]);

impl QuaternaryWord {
    pub fn new(symbols: [u8; 8]) -> Result<Self> {
        if symbols.iter().any(|&s| s > 3) {
            return Err(Error::Malformed(format!("{symbols:?} has a symbol outside Z4")));
        }
        Ok(QuaternaryWord(symbols))
    }

    pub fn symbols(&self) -> [u8; 8] {
        self.0
    }

    pub fn add(&self, other: &QuaternaryWord) -> QuaternaryWord {
        QuaternaryWord(std::array::from_fn(|i| (self.0[i] + other.0[i]) % 4))
    }

    /// Sum of `min(s, 4 - s)`.
    pub fn lee_weight(&self) -> usize {
        self.0.iter().map(|&s| s.min(4 - s) as usize).sum()
    }
}

/// All 256 Z4-combinations of the octacode generator rows, information
/// tuples in lexicographic order.
pub fn octacode_words() -> Vec<QuaternaryWord> {
    (0..256u32)
        .map(|info| {
            let coeffs: [u8; 4] = std::array::from_fn(|r| (info >> (2 * (3 - r)) & 3) as u8);
            QuaternaryWord(std::array::from_fn(|j| {
                (0..4).map(|r| coeffs[r] * OCTACODE_GENERATOR[r][j]).sum::<u8>() % 4
            }))
        })
        .collect()
}

/// Gray map `0→00, 1→01, 2→11, 3→10`, symbol `p` onto coordinates
/// `2p+1, 2p+2`.
pub fn gray_map(q: &QuaternaryWord) -> Word {
    let bits = q.0.iter().enumerate().fold(0u64, |acc, (p, &s)| {
        let (first, second) = match s {
            0 => (0, 0),
            1 => (0, 1),
            2 => (1, 1),
            _ => (1, 0),
        };
        acc | first << (2 * p) | second << (2 * p + 1)
    });
    Word::from_bits_unchecked(16, bits)
}

/// Minimum pairwise distance of a word list, `None` below two words.
pub fn min_pairwise_distance(words: &[Word]) -> Option<usize> {
    (0..words.len())
        .into_par_iter()
        .filter_map(|i| {
            words[i + 1..]
                .iter()
                .map(|b| (words[i].bits() ^ b.bits()).count_ones() as usize)
                .min()
        })
        .min()
}

/// The length-15 Nordstrom–Robinson code.
#[derive(Clone, Debug)]
pub struct NrCode {
    words: Vec<Word>,
    extended: Vec<Word>,
    origin_included: bool,
    index: HashSet<Word>,
}

impl NrCode {
    /// Sorted codewords of length 15.
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// The (16, 256, 6) Gray image before puncturing.
    pub fn extended(&self) -> &[Word] {
        &self.extended
    }

    /// Whether the zero word was already present before translation.
    pub fn origin_included(&self) -> bool {
        self.origin_included
    }

    /// Newline-separated textual words.
    pub fn to_text(&self) -> String {
        self.words.iter().map(|w| format!("{w}\n")).collect()
    }
}

impl CodeOracle for NrCode {
    fn len(&self) -> usize {
        15
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

/// Gray image of the octacode punctured at coordinate 16 and translated to
/// contain the zero word. Fails if the parameter checks do not come out as
/// (16, 256, 6) and (15, 256, 5).
pub fn nordstrom_robinson() -> Result<NrCode> {
    let extended: Vec<Word> = octacode_words().iter().map(gray_map).collect();
    let mut words: Vec<Word> = extended
        .iter()
        .map(|w| w.slice(1, 15))
        .collect::<Result<_>>()?;
    let zero = Word::zero(15)?;
    let origin_included = words.contains(&zero);
    if !origin_included {
        let shift = words[0];
        words.iter_mut().for_each(|w| *w = *w + shift);
    }
    words.sort();
    words.dedup();

    if extended.iter().collect::<HashSet<_>>().len() != 256 || words.len() != 256 {
        return Err(Error::Consistency("octacode image does not have 256 distinct words".into()));
    }
    if min_pairwise_distance(&extended) != Some(6) {
        return Err(Error::Consistency("extended image is not at distance 6".into()));
    }
    if min_pairwise_distance(&words) != Some(5) {
        return Err(Error::Consistency("punctured image is not at distance 5".into()));
    }
    let index = words.iter().copied().collect();
    Ok(NrCode {
        words,
        extended,
        origin_included,
        index,
    })
}

/// Size `2^(n+1)/(n+1)^2` and minimum distance at least 5.
pub fn verify_preparata_parameters(code: &[Word], n: usize) -> bool {
    if n == 0 || n > 126 || code.iter().any(|w| w.len() != n) {
        return false;
    }
    let num = 1u128 << (n + 1);
    let den = ((n + 1) * (n + 1)) as u128;
    if !num.is_multiple_of(den) || code.len() as u128 != num / den {
        return false;
    }
    min_pairwise_distance(code).map_or(code.len() <= 1, |d| d >= 5)
}

/// The Hamming code containing a Preparata-parameter code of length 15:
/// four independent vectors of the dual of `span(P)` serve as parity checks,
/// and their columns must be the 15 distinct nonzero 4-bit vectors.
pub fn enclosing_hamming(p: &NrCode) -> Result<LinearCode> {
    if !p.contains(&Word::zero(15)?) {
        return Err(Error::Malformed("code must contain the zero word".into()));
    }
    let span = span_of(15, p.words())?;
    let dual = span.dual();
    if dual.dimension() < 4 {
        return Err(Error::Consistency(format!(
            "dual of the span has dimension {} < 4",
            dual.dimension()
        )));
    }
    let checks = BitMatrix::new(15, dual.generator().rows()[..4].to_vec())?;
    let columns: HashSet<u64> = (1..=15).map(|c| checks.column(c).bits()).collect();
    if columns.len() != 15 || columns.contains(&0) {
        return Err(Error::Consistency(
            "parity-check columns are not the 15 nonzero 4-bit vectors".into(),
        ));
    }
    let code = LinearCode::from_parity_check(checks);
    if let Some(w) = p.words().iter().find(|w| !code.contains_bits(w.bits())) {
        return Err(Error::Consistency(format!("{w} escapes the enclosing code")));
    }
    Ok(code)
}

/// Coordinate permutation carrying a length-15 Hamming code onto the
/// canonical recursive `H_15`: coordinate `j` goes to the canonical
/// coordinate whose parity-check column is equal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordinateMap {
    /// `to_canonical[j - 1]` is the canonical coordinate of coordinate `j`.
    to_canonical: Vec<usize>,
}

impl CoordinateMap {
    pub fn to_canonical(&self, w: &Word) -> Word {
        Word::from_support(w.len(), w.support().into_iter().map(|j| self.to_canonical[j - 1]))
            .expect("permutation stays in range")
    }

    pub fn from_canonical(&self, w: &Word) -> Word {
        let mut inverse = vec![0; self.to_canonical.len()];
        for (j, &c) in self.to_canonical.iter().enumerate() {
            inverse[c - 1] = j + 1;
        }
        Word::from_support(w.len(), w.support().into_iter().map(|c| inverse[c - 1]))
            .expect("permutation stays in range")
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.to_canonical
    }
}

/// Column matching between `code`'s parity-check matrix and the canonical
/// one of the same length.
pub fn canonical_alignment(code: &LinearCode) -> Result<CoordinateMap> {
    let canonical = CanonicalHamming::new(code.len())?;
    let ours = code.parity_check();
    let theirs = canonical.parity_check();
    if ours.nrows() != theirs.nrows() {
        return Err(Error::Consistency("redundancy differs from the canonical code".into()));
    }
    let by_column: BTreeMap<u64, usize> = (1..=code.len())
        .map(|c| (theirs.column(c).bits(), c))
        .collect();
    let to_canonical = (1..=code.len())
        .map(|c| {
            by_column.get(&ours.column(c).bits()).copied().ok_or_else(|| {
                Error::Consistency(format!("column {c} has no canonical counterpart"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CoordinateMap { to_canonical })
}

/// The 16 linear components `R(β)`, `β ∈ H_7`, of the canonical `H_15`
/// carried into the coordinates of `code`, in the order of `H_7`.
pub fn transported_components(code: &LinearCode) -> Result<Vec<Vec<Word>>> {
    if code.len() != 15 {
        return Err(Error::Malformed("components are defined for length 15".into()));
    }
    let map = canonical_alignment(code)?;
    let betas = CanonicalHamming::new(7)?
        .codewords()
        .expect("H_7 is small");
    betas
        .into_iter()
        .map(|b| {
            let r = linear_component(ComponentSpec::new(7, b)?);
            Ok(r.codewords()
                .expect("2^7 words")
                .iter()
                .map(|w| map.from_canonical(w))
                .collect())
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceReport {
    pub is_perfect_in_graph: bool,
    pub trace_size: usize,
    pub component_size: usize,
    /// Vertex degree in `(R, E)` mapped to the number of vertices.
    pub degree_histogram: BTreeMap<usize, usize>,
}

/// Checks that `P ∩ R` is a perfect code in the graph on `R` whose edges
/// join words at distance 3.
pub fn component_trace_check(
    p: &dyn CodeOracle,
    component: &[Word],
    enclosing: &dyn CodeOracle,
) -> Result<TraceReport> {
    if let Some(w) = component.iter().find(|w| !enclosing.try_contains(w).unwrap_or(false)) {
        return Err(Error::Malformed(format!("{w} is not in the enclosing code")));
    }
    let trace: Vec<Word> = component.iter().copied().filter(|w| p.contains(w)).collect();
    let mut degree_histogram = BTreeMap::new();
    let mut is_perfect_in_graph = true;
    for r in component {
        let degree = component.iter().filter(|x| (r.bits() ^ x.bits()).count_ones() == 3).count();
        *degree_histogram.entry(degree).or_insert(0) += 1;
        let dominated = trace
            .iter()
            .filter(|t| matches!((r.bits() ^ t.bits()).count_ones(), 0 | 3))
            .count();
        if dominated != 1 {
            is_perfect_in_graph = false;
        }
    }
    Ok(TraceReport {
        is_perfect_in_graph,
        trace_size: trace.len(),
        component_size: component.len(),
        degree_histogram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::ExplicitCode;
    use crate::perfect::{verify_perfect, VerifyMode};
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn octacode_basics() {
        let words = octacode_words();
        assert_eq!(words.len(), 256);
        assert_eq!(words.iter().collect::<HashSet<_>>().len(), 256);
        assert!(words.contains(&QuaternaryWord([0; 8])));
        let set: HashSet<_> = words.iter().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let a = words.choose(&mut rng).unwrap();
            let b = words.choose(&mut rng).unwrap();
            assert!(set.contains(&a.add(b)));
        }
        assert!(QuaternaryWord::new([4, 0, 0, 0, 0, 0, 0, 0]).is_err());
    }

    #[test]
    fn gray_map_examples() {
        assert_eq!(gray_map(&QuaternaryWord([0; 8])), Word::zero(16).unwrap());
        assert_eq!(
            gray_map(&QuaternaryWord([2, 0, 0, 0, 0, 0, 0, 0])).to_string(),
            "1100000000000000"
        );
        assert_eq!(
            gray_map(&QuaternaryWord([1, 3, 0, 0, 0, 0, 0, 0])).to_string(),
            "0110000000000000"
        );
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..200 {
            let q = QuaternaryWord(std::array::from_fn(|_| rng.gen_range(0..4)));
            assert_eq!(q.lee_weight(), gray_map(&q).weight());
        }
    }

    #[test]
    fn nordstrom_robinson_parameters() {
        let nr = nordstrom_robinson().unwrap();
        assert_eq!(nr.words().len(), 256);
        assert!(nr.origin_included());
        assert_eq!(min_pairwise_distance(nr.words()), Some(5));
        assert_eq!(min_pairwise_distance(nr.extended()), Some(6));
        assert!(verify_preparata_parameters(nr.words(), 15));
        assert!(!verify_preparata_parameters(&nr.words()[1..], 15));
        let h15 = CanonicalHamming::new(15).unwrap().codewords().unwrap();
        assert!(!verify_preparata_parameters(&h15, 15));
    }

    #[test]
    fn enclosure() {
        let nr = nordstrom_robinson().unwrap();
        let h = enclosing_hamming(&nr).unwrap();
        assert_eq!(h.dimension(), 11);
        assert_eq!(h.parity_check().nrows(), 4);
        assert_eq!(h.min_distance().unwrap(), 3);
        assert!(nr.words().iter().all(|w| h.contains(w).unwrap()));
        assert!(verify_perfect(&h, VerifyMode::Exhaustive).unwrap().is_perfect);
    }

    #[test]
    fn alignment_maps_onto_canonical_code() {
        let nr = nordstrom_robinson().unwrap();
        let h = enclosing_hamming(&nr).unwrap();
        let map = canonical_alignment(&h).unwrap();
        let canonical = CanonicalHamming::new(15).unwrap();
        for w in h.enumerate_codewords().unwrap() {
            let c = map.to_canonical(&w);
            assert!(canonical.contains(&c));
            assert_eq!(map.from_canonical(&c), w);
        }
    }

    #[test]
    fn traces_partition_nr() {
        let nr = nordstrom_robinson().unwrap();
        let h = enclosing_hamming(&nr).unwrap();
        let comps = transported_components(&h).unwrap();
        assert_eq!(comps.len(), 16);
        let mut seen = HashSet::new();
        for r in &comps {
            let rep = component_trace_check(&nr, r, &h).unwrap();
            assert!(rep.is_perfect_in_graph);
            assert_eq!(rep.trace_size, 16);
            assert_eq!(rep.degree_histogram, BTreeMap::from([(7, 128)]));
            assert_eq!(rep.trace_size * 8, rep.component_size);
            for w in r.iter().filter(|w| nr.contains(w)) {
                assert!(seen.insert(*w));
            }
        }
        assert_eq!(seen.len(), 256);
    }

    #[test]
    fn random_subset_fails_trace_check() {
        let nr = nordstrom_robinson().unwrap();
        let h = enclosing_hamming(&nr).unwrap();
        let r = &transported_components(&h).unwrap()[3];
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let fake = ExplicitCode::new(15, r.choose_multiple(&mut rng, 16).copied()).unwrap();
        let rep = component_trace_check(&fake, r, &h).unwrap();
        assert_eq!(rep.trace_size, 16);
        assert!(!rep.is_perfect_in_graph);

        let outside = vec![Word::unit(15, 1).unwrap()];
        assert!(component_trace_check(&nr, &outside, &h).is_err());
    }
}
