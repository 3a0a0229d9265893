//! Machine replay of the argument that the switched code
//! `C(β) = (H_n ∖ R(β)) ∪ (R(β) + e^n)`, `n = 4^t - 1`, contains no code
//! with Preparata parameters.
//!
//! Translating by a codeword `y = (γ, γ+δ, |γ|)` of `H_n` fixes `H_n` and
//! maps `R(β)` to `R(β + δ)`, so it suffices to inspect every weight-3
//! `β' = β + δ` with `y = 0`. For each such case the verifier records:
//!
//! * **counting**: the designated weight-3 word `x ∈ R'` has `n(n-1)/6`
//!   code neighbours at distance 3, of which only `(n-1)/2` lie in `R'`;
//!   the zero word is one of the others.
//! * **structure**: `R'` has exactly four weight-3 words, supported on
//!   `{i,j,k}, {i,j',k'}, {i',j,k'}, {i',j',k}`; each meets `{i,j,k}`.
//! * **swap**: the weight-3 words of `R` are supported on
//!   `{i,j,k'}, {i,j',k}, {i',j,k}, {i',j',k'}`, lie in `H_n`, and the
//!   triple system of `C` at 0 is that of `H_n` with these four replaced.
//! * **antipodal**: `0` and `1…1` are in `H_n`.
//! * **contradiction**: `x ∉ H_n`, whereas `1…1` plus the indicator of the
//!   complement of `{i,j,k}` (the sum over any triple partition of that
//!   complement) equals `x`.
//!
//! In exhaustive mode each case additionally searches the triple system of
//! `H_n` for partitions of `{1..n} ∖ {i,j,k}`, which must find none.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::components::{switched_code, ComponentSpec};
use crate::error::{Error, Result};
use crate::exact_cover::SearchStatus;
use crate::oracle::CodeOracle;
use crate::perfect::{codewords_at_distance, CanonicalHamming};
use crate::sts::{find_triple_partitions, neighborhood_sts, PartitionConstraints, Triple, TripleSystem};
use crate::word::{Word, MAX_LEN};

/// `(n, k)` for `n = 4^t - 1`, `k = (n - 1) / 2`.
pub fn theorem_lengths(t: usize) -> Result<(usize, usize)> {
    if t < 2 {
        return Err(Error::NotPreparataLength((1usize << (2 * t)) - 1));
    }
    if 2 * t > 6 || (1usize << (2 * t)) - 1 > MAX_LEN {
        return Err(Error::WordTooLong((1usize << (2 * t.min(31))) - 1));
    }
    let n = (1usize << (2 * t)) - 1;
    Ok((n, (n - 1) / 2))
}

/// `t` with `n = 4^t - 1`; lengths `2^t - 1` with odd `t` are refused.
pub fn preparata_exponent(n: usize) -> Result<usize> {
    let t = crate::perfect::perfect_exponent(n).map_err(|_| Error::NotPreparataLength(n))?;
    if t % 2 == 1 || t < 4 {
        return Err(Error::NotPreparataLength(n));
    }
    Ok(t / 2)
}

fn sorted_by_support(mut words: Vec<Word>) -> Vec<Word> {
    words.sort_by_key(Word::support);
    words
}

fn check_base_codeword(beta: &Word, k: usize) -> Result<CanonicalHamming> {
    let base = CanonicalHamming::new(k)?;
    if !base.try_contains(beta)? {
        return Err(Error::NotACodeword(beta.to_string()));
    }
    Ok(base)
}

/// `{β + δ : δ ∈ H_k, wt(β + δ) = 3}`, ordered by support.
pub fn effective_betas(beta: &Word, k: usize) -> Result<Vec<Word>> {
    let base = check_base_codeword(beta, k)?;
    let out = match base.codewords() {
        Some(deltas) => deltas
            .into_iter()
            .map(|d| *beta + d)
            .filter(|b| b.weight() == 3)
            .collect(),
        None => {
            let out = base.weight3_codewords();
            if let Some(b) = out.iter().find(|b| !base.contains(&(**b + *beta))) {
                return Err(Error::Consistency(format!("{b} is not a translate of {beta}")));
            }
            out
        }
    };
    Ok(sorted_by_support(out))
}

/// Weight-3 words of `R(β') + e^n` (`switched`) or `R(β')`, found by
/// filtering `(α, α+β', |α| + s)`. Only `wt(α) ≤ 3` can give weight 3, so
/// large `k` scan those `α` alone.
fn filter_weight3(beta_prime: &Word, k: usize, switched: bool) -> Vec<Word> {
    let spec = ComponentSpec::new(k, *beta_prime).expect("validated by caller");
    let flip = if switched { 1u64 << (2 * k) } else { 0 };
    let alphas: Box<dyn Iterator<Item = u64>> = if k <= 15 {
        Box::new(0..1u64 << k)
    } else {
        Box::new((0..=3).flat_map(move |w| Word::of_weight(k, w).map(|x| x.bits())))
    };
    let words = alphas
        .map(|a| Word::from_bits_unchecked(2 * k + 1, spec.element(a).bits() ^ flip))
        .filter(|w| w.weight() == 3)
        .collect();
    sorted_by_support(words)
}

/// Closed-form weight-3 words of the switched component `R(β') + e^n`:
/// empty unless `wt(β') = 3`; for support `{a,b,c}` they are supported on
/// `{a,b,c}, {a,b+k,c+k}, {b,a+k,c+k}, {c,a+k,b+k}`. The list is checked
/// against a direct filter of the component.
pub fn weight3_words_of_switched_component(beta_prime: &Word, k: usize) -> Result<Vec<Word>> {
    check_base_codeword(beta_prime, k)?;
    let n = 2 * k + 1;
    let closed: Vec<Word> = match beta_prime.support()[..] {
        [a, b, c] => [
            [a, b, c],
            [a, b + k, c + k],
            [b, a + k, c + k],
            [c, a + k, b + k],
        ]
        .into_iter()
        .map(|s| Word::from_support(n, s))
        .collect::<Result<_>>()?,
        _ => Vec::new(),
    };
    if sorted_by_support(closed.clone()) != filter_weight3(beta_prime, k, true) {
        return Err(Error::Consistency(format!(
            "closed form of the weight-3 words of R({beta_prime}) + e^{n} disagrees with the component"
        )));
    }
    Ok(closed)
}

/// Closed-form weight-3 words of the unswitched `R(β')`, checked the same
/// way: `{a,b,c+k}, {a,c,b+k}, {b,c,a+k}, {a+k,b+k,c+k}`.
pub fn weight3_words_of_component(beta_prime: &Word, k: usize) -> Result<Vec<Word>> {
    check_base_codeword(beta_prime, k)?;
    let n = 2 * k + 1;
    let closed: Vec<Word> = match beta_prime.support()[..] {
        [a, b, c] => [
            [a, b, c + k],
            [a, c, b + k],
            [b, c, a + k],
            [a + k, b + k, c + k],
        ]
        .into_iter()
        .map(|s| Word::from_support(n, s))
        .collect::<Result<_>>()?,
        _ => Vec::new(),
    };
    if sorted_by_support(closed.clone()) != filter_weight3(beta_prime, k, false) {
        return Err(Error::Consistency(format!(
            "closed form of the weight-3 words of R({beta_prime}) disagrees with the component"
        )));
    }
    Ok(closed)
}

fn to_triple(w: &Word) -> Triple {
    let s = w.support();
    [s[0], s[1], s[2]]
}

/// Four triples on six points, each point on two triples, any two triples
/// meeting in exactly one point.
fn is_pasch(triples: &[Triple]) -> bool {
    if triples.len() != 4 {
        return false;
    }
    let points: BTreeSet<usize> = triples.iter().flatten().copied().collect();
    let each_twice = points
        .iter()
        .all(|p| triples.iter().filter(|t| t.contains(p)).count() == 2);
    let pairwise = (0..4).all(|i| {
        (i + 1..4).all(|j| triples[i].iter().filter(|p| triples[j].contains(p)).count() == 1)
    });
    points.len() == 6 && each_twice && pairwise
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Algebraic,
    Exhaustive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OverallStatus {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepFlags {
    pub counting: bool,
    pub structure: bool,
    pub swap: bool,
    pub antipodal: bool,
    pub contradiction: bool,
}

impl StepFlags {
    pub fn all(&self) -> bool {
        self.counting && self.structure && self.swap && self.antipodal && self.contradiction
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactCoverOutcome {
    pub solutions: usize,
    pub nodes: u64,
    pub status: SearchStatus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighbourCounts {
    /// Codewords of `C` at distance 3 from `x`.
    pub at_distance_3: usize,
    /// Of those, the ones in the switched component.
    pub same_component: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub beta_prime: Word,
    /// Supports of the weight-3 words of `R' = R(β') + e^n`.
    pub supports: Vec<Triple>,
    pub ijk: Triple,
    /// `{i', j', k'}`.
    pub primes: Triple,
    /// Supports of the weight-3 words of `R(β')`.
    pub swapped_supports: Vec<Triple>,
    pub neighbours: NeighbourCounts,
    pub steps: StepFlags,
    pub exact_cover: Option<ExactCoverOutcome>,
}

impl CaseRecord {
    fn status(&self) -> OverallStatus {
        if !self.steps.all() {
            return OverallStatus::Fail;
        }
        match self.exact_cover {
            None => OverallStatus::Pass,
            Some(ec) if ec.solutions > 0 => OverallStatus::Fail,
            Some(ec) if ec.status == SearchStatus::BudgetExhausted => OverallStatus::Inconclusive,
            Some(_) => OverallStatus::Pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremCertificate {
    pub t: usize,
    pub n: usize,
    pub k: usize,
    pub beta: Word,
    pub mode: Mode,
    pub cases: Vec<CaseRecord>,
    /// Unconstrained partition search over the triple system of `H_n`.
    pub control: Option<ExactCoverOutcome>,
    pub overall_status: OverallStatus,
}

fn control_status(control: &Option<ExactCoverOutcome>) -> OverallStatus {
    match control {
        None => OverallStatus::Pass,
        Some(c) if c.solutions > 0 => OverallStatus::Pass,
        Some(c) if c.status == SearchStatus::BudgetExhausted => OverallStatus::Inconclusive,
        Some(_) => OverallStatus::Fail,
    }
}

fn reduce(statuses: impl IntoIterator<Item = OverallStatus>) -> OverallStatus {
    statuses.into_iter().fold(OverallStatus::Pass, |acc, s| match (acc, s) {
        (OverallStatus::Fail, _) | (_, OverallStatus::Fail) => OverallStatus::Fail,
        (OverallStatus::Inconclusive, _) | (_, OverallStatus::Inconclusive) => {
            OverallStatus::Inconclusive
        }
        _ => OverallStatus::Pass,
    })
}

impl TheoremCertificate {
    /// Status implied by the recorded flags and search outcomes.
    pub fn derived_status(&self) -> OverallStatus {
        if self.cases.is_empty() {
            return OverallStatus::Fail;
        }
        reduce(
            self.cases
                .iter()
                .map(CaseRecord::status)
                .chain([control_status(&self.control)]),
        )
    }

    /// Recomputes every algebraic case from its `beta_prime` and checks it
    /// against the record, then re-derives the overall status. Exact-cover
    /// outcomes are taken as recorded.
    pub fn revalidate(&self) -> Result<OverallStatus> {
        let (n, k) = theorem_lengths(self.t)?;
        if (n, k) != (self.n, self.k) {
            return Err(Error::Consistency("recorded lengths do not match t".into()));
        }
        let betas = effective_betas(&self.beta, k)?;
        let recorded: Vec<Word> = self.cases.iter().map(|c| c.beta_prime).collect();
        if betas != recorded {
            return Err(Error::Consistency("case list differs from the effective betas".into()));
        }
        for case in &self.cases {
            let fresh = algebraic_case(&case.beta_prime, n, k)?;
            let same = fresh.supports == case.supports
                && fresh.ijk == case.ijk
                && fresh.primes == case.primes
                && fresh.swapped_supports == case.swapped_supports
                && fresh.neighbours == case.neighbours
                && fresh.steps == case.steps;
            if !same {
                return Err(Error::Consistency(format!(
                    "case {} does not reproduce",
                    case.beta_prime
                )));
            }
            if (self.mode == Mode::Exhaustive) != case.exact_cover.is_some() {
                return Err(Error::Consistency("exact-cover record does not match the mode".into()));
            }
        }
        let status = self.derived_status();
        if status != self.overall_status {
            return Err(Error::Consistency(format!(
                "recorded status {:?} but the record implies {:?}",
                self.overall_status, status
            )));
        }
        Ok(status)
    }
}

fn algebraic_case(beta_prime: &Word, n: usize, k: usize) -> Result<CaseRecord> {
    let h = CanonicalHamming::new(n)?;
    let spec = ComponentSpec::new(k, *beta_prime)?;
    let code = switched_code(spec);
    let switched = weight3_words_of_switched_component(beta_prime, k)?;
    let unswitched = weight3_words_of_component(beta_prime, k)?;
    let [a, b, c] = match beta_prime.support()[..] {
        [a, b, c] => [a, b, c],
        _ => return Err(Error::Malformed(format!("{beta_prime} does not have weight 3"))),
    };
    let ijk = [a, b, c];
    let primes = [a + k, b + k, c + k];
    let supports: Vec<Triple> = switched.iter().map(to_triple).collect();
    let swapped_supports: Vec<Triple> = unswitched.iter().map(to_triple).collect();
    let zero = Word::zero(n)?;
    let ones = Word::ones(n)?;
    let x = Word::from_support(n, ijk)?;

    // counting
    let near = codewords_at_distance(&code, &x, 3)?;
    let same_component = near.iter().filter(|y| code.in_switched_part(y)).count();
    let neighbours = NeighbourCounts {
        at_distance_3: near.len(),
        same_component,
    };
    let counting = n * (n - 1) / 6 > (n - 1) / 2
        && near.len() == n * (n - 1) / 6
        && same_component == (n - 1) / 2
        && near.contains(&zero)
        && !code.in_switched_part(&zero);

    // structure
    let [i, j, kk] = ijk;
    let [ip, jp, kp] = primes;
    let sorted = |mut t: [usize; 3]| {
        t.sort_unstable();
        t
    };
    let pattern = [ijk, sorted([i, jp, kp]), sorted([ip, j, kp]), sorted([ip, jp, kk])];
    let structure = supports.as_slice() == pattern.as_slice()
        && primes.iter().all(|p| !ijk.contains(p) && *p <= n)
        && supports.iter().all(|s| s.iter().any(|p| ijk.contains(p)))
        && supports[1..].iter().all(|s| *s != ijk)
        && is_pasch(&supports)
        && switched.iter().all(|w| code.contains(w) && code.in_switched_part(w));

    // swap
    let swap_pattern = [sorted([i, j, kp]), sorted([i, jp, kk]), sorted([ip, j, kk]), sorted([ip, jp, kp])];
    let s_c = neighborhood_sts(&code, &zero)?;
    let s_h = neighborhood_sts(&h, &zero)?;
    let mut expected: BTreeSet<Triple> = s_h.triples().clone();
    let removed = swapped_supports.iter().all(|t| expected.remove(t));
    expected.extend(supports.iter().copied());
    let swap = swapped_supports.as_slice() == swap_pattern.as_slice()
        && unswitched.iter().all(|w| h.contains(w))
        && removed
        && *s_c.triples() == expected;

    // antipodal
    let antipodal = h.contains(&zero) && h.contains(&ones);

    // contradiction
    let complement = Word::from_support(n, (1..=n).filter(|p| !ijk.contains(p)))?;
    let contradiction = !h.contains(&x)
        && code.contains(&x)
        && (n - 3).is_multiple_of(3)
        && ones + complement == x;

    Ok(CaseRecord {
        beta_prime: *beta_prime,
        supports,
        ijk,
        primes,
        swapped_supports,
        neighbours,
        steps: StepFlags {
            counting,
            structure,
            swap,
            antipodal,
            contradiction,
        },
        exact_cover: None,
    })
}

fn prepare(t: usize, beta: &Word) -> Result<(usize, usize, Vec<Word>)> {
    let (n, k) = theorem_lengths(t)?;
    let betas = effective_betas(beta, k)?;
    Ok((n, k, betas))
}

/// Replays every step for each effective `β'`, using membership oracles
/// only (no enumeration of `H_n`).
pub fn verify_theorem_algebraic(t: usize, beta: &Word) -> Result<TheoremCertificate> {
    let (n, k, betas) = prepare(t, beta)?;
    let cases = betas
        .par_iter()
        .map(|b| algebraic_case(b, n, k))
        .collect::<Result<Vec<_>>>()?;
    let mut cert = TheoremCertificate {
        t,
        n,
        k,
        beta: *beta,
        mode: Mode::Algebraic,
        cases,
        control: None,
        overall_status: OverallStatus::Fail,
    };
    cert.overall_status = cert.derived_status();
    Ok(cert)
}

/// The triple system of `H_n` at the zero word.
pub fn hamming_triple_system(n: usize) -> Result<TripleSystem> {
    neighborhood_sts(&CanonicalHamming::new(n)?, &Word::zero(n)?)
}

/// Algebraic mode plus, per case, an exact-cover search for partitions of
/// `{1..n} ∖ {i,j,k}` into triples of `H_n`'s triple system, and one
/// unconstrained control search. `node_budget` applies to each search.
pub fn verify_theorem_exhaustive(
    t: usize,
    beta: &Word,
    node_budget: Option<u64>,
) -> Result<TheoremCertificate> {
    let mut cert = verify_theorem_algebraic(t, beta)?;
    let s_h = hamming_triple_system(cert.n)?;
    let outcome = |constraints: &PartitionConstraints| -> Result<ExactCoverOutcome> {
        let r = find_triple_partitions(&s_h, constraints, None, node_budget)?;
        Ok(ExactCoverOutcome {
            solutions: r.partitions.len(),
            nodes: r.nodes_visited,
            status: r.status,
        })
    };
    let outcomes = cert
        .cases
        .par_iter()
        .map(|case| {
            outcome(&PartitionConstraints {
                required_triple: None,
                excluded_points: case.ijk.into_iter().collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    for (case, o) in cert.cases.iter_mut().zip(outcomes) {
        case.exact_cover = Some(o);
    }
    cert.control = Some(outcome(&PartitionConstraints::default())?);
    cert.mode = Mode::Exhaustive;
    cert.overall_status = cert.derived_status();
    Ok(cert)
}
