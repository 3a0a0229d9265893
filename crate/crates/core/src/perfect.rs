//! Perfect codes: the recursive canonical Hamming family, the Vasil'ev
//! construction, and direct perfectness/antipodality checks.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, LinearCode};
use crate::oracle::{enumerable, CodeOracle};
use crate::word::{low_mask, Word, MAX_LEN};

/// Longest code that [`verify_perfect`] scans exhaustively by default.
pub const EXHAUSTIVE_LIMIT: usize = 20;

/// Returns `t` with `n = 2^t - 1`.
pub fn perfect_exponent(n: usize) -> Result<usize> {
    if n == 0 || n > MAX_LEN || !(n + 1).is_power_of_two() {
        return Err(Error::NotPerfectLength(n));
    }
    Ok((n + 1).trailing_zeros() as usize)
}

#[inline]
fn parity(bits: u64) -> u64 {
    (bits.count_ones() & 1) as u64
}

/// Membership in the canonical `H_n` by recursive descent on
/// `(x1, x2, x3)`: `x3 = |x1|` and `x1 + x2 ∈ H_k`.
#[inline]
pub(crate) fn canonical_member(mut n: usize, mut bits: u64) -> bool {
    while n > 1 {
        let k = (n - 1) / 2;
        let m = low_mask(k);
        let x1 = bits & m;
        let x2 = (bits >> k) & m;
        if (bits >> (2 * k)) & 1 != parity(x1) {
            return false;
        }
        bits = x1 ^ x2;
        n = k;
    }
    bits == 0
}

/// The canonical Hamming code of length `n = 2^t - 1`:
/// `H_1 = {0}` and `H_{2k+1} = {(α, α+β, |α|) : α ∈ Q_k, β ∈ H_k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CanonicalHamming {
    n: usize,
    t: usize,
}

/// Canonical Hamming code of length `n`.
pub fn canonical_hamming(n: usize) -> Result<CanonicalHamming> {
    CanonicalHamming::new(n)
}

impl CanonicalHamming {
    pub fn new(n: usize) -> Result<Self> {
        let t = perfect_exponent(n)?;
        Ok(CanonicalHamming { n, t })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn dimension(&self) -> usize {
        self.n - self.t
    }

    /// Parity-check matrix following the recursion: each check `h` of
    /// `H_k` lifts to `(h, h, 0)`, plus the new check `(1…1, 0…0, 1)`.
    pub fn parity_check(&self) -> BitMatrix {
        let mut n = 1;
        let mut rows = vec![1u64];
        while n < self.n {
            let k = n;
            n = 2 * k + 1;
            for r in rows.iter_mut() {
                *r |= *r << k;
            }
            rows.push(low_mask(k) | 1 << (2 * k));
        }
        BitMatrix::new(self.n, rows).expect("width bounded by MAX_LEN")
    }

    /// The same code as a matrix-presented [`LinearCode`].
    pub fn to_linear(&self) -> LinearCode {
        LinearCode::from_parity_check(self.parity_check())
    }

    /// Codewords of weight 3, each found by pairing two coordinates with
    /// the unique third whose parity-check column completes a zero sum.
    pub fn weight3_codewords(&self) -> Vec<Word> {
        let h = self.parity_check();
        let cols: Vec<u64> = (1..=self.n).map(|c| h.column(c).bits()).collect();
        let mut by_col = vec![0usize; 1 << self.t];
        for (i, &c) in cols.iter().enumerate() {
            by_col[c as usize] = i + 1;
        }
        let mut out = Vec::new();
        for a in 1..=self.n {
            for b in a + 1..=self.n {
                let c = by_col[(cols[a - 1] ^ cols[b - 1]) as usize];
                if c > b {
                    out.push(Word::from_support(self.n, [a, b, c]).expect("in range"));
                }
            }
        }
        out
    }
}

impl CodeOracle for CanonicalHamming {
    fn len(&self) -> usize {
        self.n
    }

    fn contains(&self, w: &Word) -> bool {
        canonical_member(self.n, w.bits())
    }

    fn codewords(&self) -> Option<Vec<Word>> {
        if !enumerable(self.dimension()) {
            return None;
        }
        let mut n = 1;
        let mut words = vec![0u64];
        while n < self.n {
            let k = n;
            n = 2 * k + 1;
            let mut next = Vec::with_capacity(words.len() << k);
            for &beta in &words {
                for alpha in 0..1u64 << k {
                    next.push(alpha | (alpha ^ beta) << k | parity(alpha) << (2 * k));
                }
            }
            words = next;
        }
        Some(
            words
                .into_iter()
                .map(|b| Word::from_bits_unchecked(self.n, b))
                .collect(),
        )
    }

    fn cardinality_hint(&self) -> Option<u64> {
        Some(1u64 << self.dimension())
    }
}

/// Parameters of a Vasil'ev code: the base length `k = 2^t - 1` and the
/// function `λ : H_k → {0,1}`, stored as the set of codewords where λ is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VasilevSpec {
    k: usize,
    lambda_ones: BTreeSet<Word>,
}

#[derive(Serialize, Deserialize)]
struct VasilevSpecFile {
    k: usize,
    #[serde(default)]
    lambda: BTreeMap<String, u8>,
}

impl VasilevSpec {
    /// Entries of `lambda` are keyed by codewords of the canonical `H_k`;
    /// missing codewords map to 0.
    pub fn new(k: usize, lambda: impl IntoIterator<Item = (Word, u8)>) -> Result<Self> {
        let base = CanonicalHamming::new(k)?;
        if 2 * k + 1 > MAX_LEN {
            return Err(Error::WordTooLong(2 * k + 1));
        }
        let mut lambda_ones = BTreeSet::new();
        for (beta, v) in lambda {
            if beta.len() != k {
                return Err(Error::Malformed(format!(
                    "lambda key {beta} has length {} instead of {k}",
                    beta.len()
                )));
            }
            if !base.contains(&beta) {
                return Err(Error::Malformed(format!(
                    "lambda key {beta} is not a codeword of H_{k}"
                )));
            }
            match v {
                0 => {}
                1 => {
                    lambda_ones.insert(beta);
                }
                _ => return Err(Error::Malformed(format!("lambda value {v} is not 0 or 1"))),
            }
        }
        Ok(VasilevSpec { k, lambda_ones })
    }

    /// `λ ≡ 0`.
    pub fn zero(k: usize) -> Result<Self> {
        Self::new(k, [])
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn lambda(&self, beta: &Word) -> u8 {
        self.lambda_ones.contains(beta) as u8
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: VasilevSpecFile =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        let entries = file
            .lambda
            .into_iter()
            .map(|(k, v)| Ok((k.parse::<Word>()?, v)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(file.k, entries)
    }

    /// Only the entries where λ is 1 are written.
    pub fn to_json(&self) -> String {
        let file = VasilevSpecFile {
            k: self.k,
            lambda: self
                .lambda_ones
                .iter()
                .map(|b| (b.to_string(), 1))
                .collect(),
        };
        serde_json::to_string(&file).expect("plain struct")
    }
}

/// `{(α, α+β, |α| + λ(β)) : α ∈ Q_k, β ∈ H_k}`.
#[derive(Clone, Debug)]
pub struct VasilevCode {
    spec: VasilevSpec,
    base: CanonicalHamming,
}

pub fn vasilev(spec: VasilevSpec) -> VasilevCode {
    let base = CanonicalHamming::new(spec.k).expect("validated by VasilevSpec");
    VasilevCode { spec, base }
}

impl VasilevCode {
    pub fn spec(&self) -> &VasilevSpec {
        &self.spec
    }
}

impl CodeOracle for VasilevCode {
    fn len(&self) -> usize {
        2 * self.spec.k + 1
    }

    fn contains(&self, w: &Word) -> bool {
        let k = self.spec.k;
        let m = low_mask(k);
        let x1 = w.bits() & m;
        let beta = x1 ^ ((w.bits() >> k) & m);
        if !canonical_member(k, beta) {
            return false;
        }
        let lam = self.spec.lambda(&Word::from_bits_unchecked(k, beta)) as u64;
        (w.bits() >> (2 * k)) & 1 == parity(x1) ^ lam
    }

    fn codewords(&self) -> Option<Vec<Word>> {
        let k = self.spec.k;
        if !enumerable(self.len() - self.base.t() - 1) {
            return None;
        }
        let betas = self.base.codewords()?;
        let mut out = Vec::with_capacity(betas.len() << k);
        for beta in betas {
            let lam = self.spec.lambda(&beta) as u64;
            for alpha in 0..1u64 << k {
                let bits = alpha | (alpha ^ beta.bits()) << k | (parity(alpha) ^ lam) << (2 * k);
                out.push(Word::from_bits_unchecked(2 * k + 1, bits));
            }
        }
        Some(out)
    }

    fn cardinality_hint(&self) -> Option<u64> {
        Some(1u64 << (self.spec.k + self.base.dimension()))
    }
}

/// How [`verify_perfect`] and friends cover the space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum VerifyMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerfectnessReport {
    #[serde(flatten)]
    pub mode: VerifyMode,
    pub is_perfect: bool,
    /// First word (in scan order) whose radius-1 ball does not hold exactly
    /// one codeword.
    pub witness: Option<Word>,
    pub words_checked: u64,
}

/// Number of codewords within distance 1 of `w`, stopping at 2.
fn ball_count(oracle: &dyn CodeOracle, w: Word) -> usize {
    let mut count = oracle.contains(&w) as usize;
    for i in 0..w.len() {
        let x = Word::from_bits_unchecked(w.len(), w.bits() ^ 1 << i);
        if oracle.contains(&x) {
            count += 1;
            if count > 1 {
                break;
            }
        }
    }
    count
}

/// Checks that the radius-1 balls around codewords partition `Q_n`.
pub fn verify_perfect(oracle: &dyn CodeOracle, mode: VerifyMode) -> Result<PerfectnessReport> {
    let n = oracle.len();
    match mode {
        VerifyMode::Exhaustive => {
            if n > EXHAUSTIVE_LIMIT {
                return Err(Error::Malformed(format!(
                    "exhaustive scan of Q_{n} exceeds the limit Q_{EXHAUSTIVE_LIMIT}; use sampled mode"
                )));
            }
            let witness = (0..1u64 << n)
                .into_par_iter()
                .find_first(|&b| ball_count(oracle, Word::from_bits_unchecked(n, b)) != 1)
                .map(|b| Word::from_bits_unchecked(n, b));
            Ok(PerfectnessReport {
                mode,
                is_perfect: witness.is_none(),
                witness,
                words_checked: 1 << n,
            })
        }
        VerifyMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mask = low_mask(n);
            let mut witness = None;
            for _ in 0..samples {
                let w = Word::from_bits_unchecked(n, rng.gen::<u64>() & mask);
                if ball_count(oracle, w) != 1 {
                    witness = Some(w);
                    break;
                }
            }
            Ok(PerfectnessReport {
                mode,
                is_perfect: witness.is_none(),
                witness,
                words_checked: samples,
            })
        }
    }
}

/// True iff every codeword's complement is a codeword. Needs an enumerator.
pub fn verify_antipodal(oracle: &dyn CodeOracle) -> Result<bool> {
    let words = oracle.codewords().ok_or(Error::NoEnumerator)?;
    Ok(words.par_iter().all(|c| oracle.contains(&c.complement())))
}

/// Sampled antipodality for a perfect code too large to enumerate: random
/// words are decoded to the codeword in their radius-1 ball and that
/// codeword's complement is tested. Returns false if a sample has no
/// codeword nearby.
pub fn verify_antipodal_sampled(oracle: &dyn CodeOracle, samples: u64, seed: u64) -> bool {
    let n = oracle.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask = low_mask(n);
    (0..samples).all(|_| {
        let w = Word::from_bits_unchecked(n, rng.gen::<u64>() & mask);
        let decoded = std::iter::once(w)
            .chain((0..n).map(|i| Word::from_bits_unchecked(n, w.bits() ^ 1 << i)))
            .find(|x| oracle.contains(x));
        decoded.is_some_and(|c| oracle.contains(&c.complement()))
    })
}

/// Codewords at distance exactly `d` from the codeword `center`, in
/// lexicographic order of the difference support.
pub fn codewords_at_distance(oracle: &dyn CodeOracle, center: &Word, d: usize) -> Result<Vec<Word>> {
    if !oracle.try_contains(center)? {
        return Err(Error::NotACodeword(center.to_string()));
    }
    Ok(Word::of_weight(center.len(), d)
        .map(|e| *center + e)
        .filter(|x| oracle.contains(x))
        .collect())
}

/// A pair of codewords whose sum is not a codeword, if any.
pub fn nonlinearity_witness(oracle: &dyn CodeOracle) -> Result<Option<(Word, Word)>> {
    let words = oracle.codewords().ok_or(Error::NoEnumerator)?;
    Ok(words.iter().enumerate().find_map(|(i, a)| {
        words[i + 1..]
            .iter()
            .find(|b| !oracle.contains(&(*a + **b)))
            .map(|b| (*a, *b))
    }))
}
