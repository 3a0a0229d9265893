//! Linear components `R(β) = {(α, α+β, |α|) : α ∈ Q_k}` of the canonical
//! Hamming code, their switching at the last coordinate, and i-closure.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::oracle::{enumerable, CodeOracle};
use crate::perfect::{canonical_member, codewords_at_distance, CanonicalHamming};
use crate::word::{low_mask, Word, MAX_LEN};

/// Longest code for which [`i_closure`] materializes components.
pub const CLOSURE_MAX_LEN: usize = 15;

/// Selects the component `R(β)` of `H_{2k+1}`; switching is always at
/// coordinate `n = 2k + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ComponentSpec {
    k: usize,
    beta: Word,
}

impl ComponentSpec {
    pub fn new(k: usize, beta: Word) -> Result<Self> {
        let base = CanonicalHamming::new(k)?;
        if 2 * k + 1 > MAX_LEN {
            return Err(Error::WordTooLong(2 * k + 1));
        }
        if !base.try_contains(&beta)? {
            return Err(Error::NotACodeword(beta.to_string()));
        }
        Ok(ComponentSpec { k, beta })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn beta(&self) -> Word {
        self.beta
    }

    /// Code length `2k + 1`.
    pub fn n(&self) -> usize {
        2 * self.k + 1
    }

    /// The switching coordinate, always `n`.
    pub fn coordinate(&self) -> usize {
        self.n()
    }

    #[inline]
    pub(crate) fn in_component(&self, bits: u64) -> bool {
        let k = self.k;
        let m = low_mask(k);
        let x1 = bits & m;
        x1 ^ ((bits >> k) & m) == self.beta.bits()
            && (bits >> (2 * k)) & 1 == (x1.count_ones() & 1) as u64
    }

    /// `(α, α + β, |α|)`.
    pub fn element(&self, alpha: u64) -> Word {
        let k = self.k;
        let bits = alpha | (alpha ^ self.beta.bits()) << k | ((alpha.count_ones() & 1) as u64) << (2 * k);
        Word::from_bits_unchecked(self.n(), bits)
    }
}

/// The linear component `R(β)` as a code.
#[derive(Clone, Copy, Debug)]
pub struct LinearComponent {
    spec: ComponentSpec,
}

pub fn linear_component(spec: ComponentSpec) -> LinearComponent {
    LinearComponent { spec }
}

impl LinearComponent {
    pub fn spec(&self) -> &ComponentSpec {
        &self.spec
    }
}

impl CodeOracle for LinearComponent {
    fn len(&self) -> usize {
        self.spec.n()
    }

    fn contains(&self, w: &Word) -> bool {
        self.spec.in_component(w.bits())
    }

    fn codewords(&self) -> Option<Vec<Word>> {
        if !enumerable(self.spec.k) {
            return None;
        }
        Some((0..1u64 << self.spec.k).map(|a| self.spec.element(a)).collect())
    }

    fn cardinality_hint(&self) -> Option<u64> {
        Some(1 << self.spec.k)
    }
}

/// `C(β) = (H_n ∖ R) ∪ (R + e^n)`.
#[derive(Clone, Copy, Debug)]
pub struct SwitchedCode {
    spec: ComponentSpec,
    hamming: CanonicalHamming,
}

pub fn switched_code(spec: ComponentSpec) -> SwitchedCode {
    let hamming = CanonicalHamming::new(spec.n()).expect("2k+1 is a perfect length");
    SwitchedCode { spec, hamming }
}

impl SwitchedCode {
    pub fn spec(&self) -> &ComponentSpec {
        &self.spec
    }

    /// Whether `w` lies in the switched part `R + e^n`.
    pub fn in_switched_part(&self, w: &Word) -> bool {
        self.spec.in_component(w.bits() ^ 1 << (self.spec.n() - 1))
    }
}

impl CodeOracle for SwitchedCode {
    fn len(&self) -> usize {
        self.spec.n()
    }

    fn contains(&self, w: &Word) -> bool {
        let n = self.spec.n();
        let bits = w.bits();
        (canonical_member(n, bits) && !self.spec.in_component(bits))
            || self.spec.in_component(bits ^ 1 << (n - 1))
    }

    fn codewords(&self) -> Option<Vec<Word>> {
        let n = self.spec.n();
        let flip = 1u64 << (n - 1);
        let words = self.hamming.codewords()?;
        Some(
            words
                .into_iter()
                .map(|w| {
                    if self.spec.in_component(w.bits()) {
                        Word::from_bits_unchecked(n, w.bits() ^ flip)
                    } else {
                        w
                    }
                })
                .collect(),
        )
    }

    fn cardinality_hint(&self) -> Option<u64> {
        self.hamming.cardinality_hint()
    }
}

/// Smallest subset of the code containing `seed` and closed under
/// i-closeness (codewords at distance 3 that differ in coordinate `i`).
pub fn i_closure(oracle: &dyn CodeOracle, i: usize, seed: &Word) -> Result<BTreeSet<Word>> {
    let n = oracle.len();
    if n > CLOSURE_MAX_LEN {
        return Err(Error::Malformed(format!(
            "i-closure is limited to length {CLOSURE_MAX_LEN}, got {n}"
        )));
    }
    if i == 0 || i > n {
        return Err(Error::CoordinateOutOfRange { coordinate: i, len: n });
    }
    if !oracle.try_contains(seed)? {
        return Err(Error::NotACodeword(seed.to_string()));
    }
    let mut seen = BTreeSet::from([*seed]);
    let mut queue = VecDeque::from([*seed]);
    while let Some(w) = queue.pop_front() {
        for x in codewords_at_distance(oracle, &w, 3)? {
            if (x + w).bit(i) == 1 && seen.insert(x) {
                queue.push_back(x);
            }
        }
    }
    Ok(seen)
}

/// `{R(β) : β ∈ H_k}`, in the enumeration order of `H_k`.
pub fn hamming_partition_into_components(k: usize) -> Result<Vec<LinearComponent>> {
    let base = CanonicalHamming::new(k)?;
    let betas = base.codewords().ok_or(Error::EnumerationLimit {
        dimension: base.dimension(),
        limit: crate::gf2::ENUMERATION_LIMIT,
    })?;
    betas
        .into_iter()
        .map(|b| ComponentSpec::new(k, b).map(linear_component))
        .collect()
}
