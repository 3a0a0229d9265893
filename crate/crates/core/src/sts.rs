//! Steiner triple systems read off code neighbourhoods, the Preparata
//! partition condition, and triple-partition (parallel class) search.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_cover::{solve_exact_cover, ExactCoverInstance, SearchStatus};
use crate::oracle::CodeOracle;
use crate::perfect::codewords_at_distance;
use crate::word::Word;

/// A 3-subset of `{1..n}` with increasing entries.
pub type Triple = [usize; 3];

/// Sorts and checks a candidate triple against the point range `1..=n`.
pub fn triple(n: usize, mut t: [usize; 3]) -> Result<Triple> {
    t.sort_unstable();
    if t[0] == 0 || t[2] > n || t[0] == t[1] || t[1] == t[2] {
        return Err(Error::Malformed(format!("{t:?} is not a 3-subset of 1..={n}")));
    }
    Ok(t)
}

fn support_triple(w: &Word) -> Option<Triple> {
    match w.support()[..] {
        [a, b, c] => Some([a, b, c]),
        _ => None,
    }
}

/// A family of 3-subsets of `{1..n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TripleSystemFile", into = "TripleSystemFile")]
pub struct TripleSystem {
    n: usize,
    triples: BTreeSet<Triple>,
}

#[derive(Serialize, Deserialize)]
struct TripleSystemFile {
    n: usize,
    triples: Vec<[usize; 3]>,
}

impl TryFrom<TripleSystemFile> for TripleSystem {
    type Error = Error;

    fn try_from(f: TripleSystemFile) -> Result<Self> {
        TripleSystem::new(f.n, f.triples)
    }
}

impl From<TripleSystem> for TripleSystemFile {
    fn from(ts: TripleSystem) -> Self {
        TripleSystemFile {
            n: ts.n,
            triples: ts.triples.into_iter().collect(),
        }
    }
}

impl TripleSystem {
    pub fn new(n: usize, triples: impl IntoIterator<Item = [usize; 3]>) -> Result<Self> {
        let triples = triples
            .into_iter()
            .map(|t| triple(n, t))
            .collect::<Result<_>>()?;
        Ok(TripleSystem { n, triples })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn triples(&self) -> &BTreeSet<Triple> {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.triples.contains(t)
    }
}

/// `T(α) = {supp(β + α) : β ∈ C, ρ(α, β) = 3}`.
pub fn neighborhood_sts(oracle: &dyn CodeOracle, alpha: &Word) -> Result<TripleSystem> {
    let near = codewords_at_distance(oracle, alpha, 3)?;
    Ok(TripleSystem {
        n: oracle.len(),
        triples: near
            .iter()
            .filter_map(|b| support_triple(&(*b + *alpha)))
            .collect(),
    })
}

/// Every pair of points lies in exactly one triple.
pub fn validate_sts(ts: &TripleSystem) -> bool {
    let n = ts.n;
    let mut seen = vec![false; (n + 1) * (n + 1)];
    for &[a, b, c] in &ts.triples {
        for (x, y) in [(a, b), (a, c), (b, c)] {
            if std::mem::replace(&mut seen[x * (n + 1) + y], true) {
                return false;
            }
        }
    }
    (1..=n).all(|x| (x + 1..=n).all(|y| seen[x * (n + 1) + y]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionConditionReport {
    pub holds: bool,
    pub triples: TripleSystem,
}

/// Collects `{supp(β + α) : β ∈ P, ρ(α, β) = 3}` for `α ∈ C ∖ P` and
/// reports whether it partitions `{1..n}` into triples.
pub fn preparata_partition_condition(
    code: &dyn CodeOracle,
    subcode: &[Word],
    alpha: &Word,
) -> Result<PartitionConditionReport> {
    let n = code.len();
    for p in subcode {
        if !code.try_contains(p)? {
            return Err(Error::Malformed(format!("{p} is in the subcode but not in the code")));
        }
        if p == alpha {
            return Err(Error::Malformed(format!("alpha {alpha} belongs to the subcode")));
        }
    }
    if !code.try_contains(alpha)? {
        return Err(Error::NotACodeword(alpha.to_string()));
    }
    let triples: BTreeSet<Triple> = subcode
        .iter()
        .filter_map(|b| support_triple(&(*b + *alpha)))
        .collect();
    let covered: BTreeSet<usize> = triples.iter().flatten().copied().collect();
    let holds = n.is_multiple_of(3) && triples.len() == n / 3 && covered.len() == n;
    Ok(PartitionConditionReport {
        holds,
        triples: TripleSystem { n, triples },
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionConstraints {
    pub required_triple: Option<Triple>,
    #[serde(default)]
    pub excluded_points: BTreeSet<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionSearch {
    /// Each partition is sorted; the list is sorted lexicographically.
    pub partitions: Vec<Vec<Triple>>,
    pub nodes_visited: u64,
    pub status: SearchStatus,
}

/// Partitions of `{1..n} ∖ excluded_points` into triples of `ts` that
/// contain `required_triple` when one is given.
pub fn find_triple_partitions(
    ts: &TripleSystem,
    constraints: &PartitionConstraints,
    max_solutions: Option<usize>,
    node_budget: Option<u64>,
) -> Result<PartitionSearch> {
    let n = ts.n;
    if let Some(&p) = constraints.excluded_points.iter().find(|&&p| p == 0 || p > n) {
        return Err(Error::InvalidConstraints(format!("excluded point {p} outside 1..={n}")));
    }
    let required = constraints
        .required_triple
        .map(|t| triple(n, t).map_err(|e| Error::InvalidConstraints(e.to_string())))
        .transpose()?;
    let mut blocked = constraints.excluded_points.clone();
    if let Some(r) = required {
        if r.iter().any(|p| blocked.contains(p)) {
            return Err(Error::InvalidConstraints(format!(
                "required triple {r:?} meets the excluded points"
            )));
        }
        if !ts.contains(&r) {
            return Ok(PartitionSearch {
                partitions: Vec::new(),
                nodes_visited: 0,
                status: SearchStatus::Complete,
            });
        }
        blocked.extend(r);
    }
    let usable: Vec<Triple> = ts
        .triples
        .iter()
        .filter(|t| t.iter().all(|p| !blocked.contains(p)))
        .copied()
        .collect();
    let universe = (1..=n).filter(|p| !blocked.contains(p)).map(|p| p as u32);
    let subsets = usable.iter().map(|t| t.iter().map(|&p| p as u32).collect()).collect();
    let instance = ExactCoverInstance::new(universe, subsets)?;
    let result = solve_exact_cover(&instance, max_solutions, node_budget);

    let mut partitions: Vec<Vec<Triple>> = result
        .solutions
        .iter()
        .map(|sol| {
            let mut part: Vec<Triple> = sol.iter().map(|&i| usable[i]).chain(required).collect();
            part.sort_unstable();
            part
        })
        .collect();
    partitions.sort();
    Ok(PartitionSearch {
        partitions,
        nodes_visited: result.nodes_visited,
        status: result.status,
    })
}
