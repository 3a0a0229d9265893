//! Exact cover by bitmask backtracking.
//!
//! Branching picks the uncovered point with the fewest remaining candidate
//! subsets (ties go to the smallest point), and candidates are tried in
//! index order, so solution order and node counts are deterministic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An indexed family of subsets of a finite universe of points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactCoverInstance {
    universe: Vec<u32>,
    subsets: Vec<Vec<u32>>,
}

impl ExactCoverInstance {
    /// Duplicate points are ignored. Subsets must be non-empty and lie in
    /// the universe.
    pub fn new(universe: impl IntoIterator<Item = u32>, subsets: Vec<Vec<u32>>) -> Result<Self> {
        let mut universe: Vec<u32> = universe.into_iter().collect();
        universe.sort_unstable();
        universe.dedup();
        let mut normalized = Vec::with_capacity(subsets.len());
        for (index, mut s) in subsets.into_iter().enumerate() {
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                return Err(Error::EmptySubset { index });
            }
            if s.iter().any(|p| universe.binary_search(p).is_err()) {
                return Err(Error::SubsetOutsideUniverse { index });
            }
            normalized.push(s);
        }
        Ok(ExactCoverInstance {
            universe,
            subsets: normalized,
        })
    }

    pub fn universe(&self) -> &[u32] {
        &self.universe
    }

    pub fn subsets(&self) -> &[Vec<u32>] {
        &self.subsets
    }

    /// Whether `solution` (subset indices) is an exact cover.
    pub fn is_exact_cover(&self, solution: &[usize]) -> bool {
        let mut seen = vec![false; self.universe.len()];
        for &i in solution {
            let Some(s) = self.subsets.get(i) else {
                return false;
            };
            for p in s {
                let idx = self.universe.binary_search(p).expect("validated");
                if std::mem::replace(&mut seen[idx], true) {
                    return false;
                }
            }
        }
        seen.into_iter().all(|b| b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Complete,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactCoverResult {
    /// Each solution lists subset indices in increasing order.
    pub solutions: Vec<Vec<usize>>,
    pub nodes_visited: u64,
    pub status: SearchStatus,
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn with_len(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn is_subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn toggle(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

struct Search<'a> {
    masks: &'a [Bits],
    candidates: &'a [Vec<usize>],
    max_solutions: Option<usize>,
    node_budget: Option<u64>,
    chosen: Vec<usize>,
    solutions: Vec<Vec<usize>>,
    nodes: u64,
    exhausted: bool,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.exhausted || self.max_solutions.is_some_and(|m| self.solutions.len() >= m)
    }

    fn run(&mut self, uncovered: &mut Bits) {
        if self.node_budget.is_some_and(|b| self.nodes >= b) {
            self.exhausted = true;
            return;
        }
        self.nodes += 1;
        if uncovered.is_empty() {
            let mut s = self.chosen.clone();
            s.sort_unstable();
            self.solutions.push(s);
            return;
        }
        let mut best: Option<(usize, usize)> = None;
        for p in uncovered.ones() {
            let count = self.candidates[p]
                .iter()
                .filter(|&&s| self.masks[s].is_subset_of(uncovered))
                .count();
            if best.is_none_or(|(_, c)| count < c) {
                best = Some((p, count));
                if count == 0 {
                    return;
                }
            }
        }
        let (point, _) = best.expect("uncovered is non-empty");
        for &s in &self.candidates[point] {
            if !self.masks[s].is_subset_of(uncovered) {
                continue;
            }
            uncovered.toggle(&self.masks[s]);
            self.chosen.push(s);
            self.run(uncovered);
            self.chosen.pop();
            uncovered.toggle(&self.masks[s]);
            if self.done() {
                return;
            }
        }
    }
}

/// Enumerates exact covers. `None` limits mean unlimited. The budget counts
/// search-tree nodes; when it runs out the partial solutions are returned
/// with [`SearchStatus::BudgetExhausted`].
pub fn solve_exact_cover(
    instance: &ExactCoverInstance,
    max_solutions: Option<usize>,
    node_budget: Option<u64>,
) -> ExactCoverResult {
    let m = instance.universe.len();
    let index = |p: &u32| instance.universe.binary_search(p).expect("validated");
    let masks: Vec<Bits> = instance
        .subsets
        .iter()
        .map(|s| {
            let mut b = Bits::with_len(m);
            s.iter().for_each(|p| b.set(index(p)));
            b
        })
        .collect();
    let mut candidates = vec![Vec::new(); m];
    for (i, mask) in masks.iter().enumerate() {
        for (p, list) in candidates.iter_mut().enumerate() {
            if mask.get(p) {
                list.push(i);
            }
        }
    }
    let mut uncovered = Bits::with_len(m);
    (0..m).for_each(|p| uncovered.set(p));

    let mut search = Search {
        masks: &masks,
        candidates: &candidates,
        max_solutions,
        node_budget,
        chosen: Vec::new(),
        solutions: Vec::new(),
        nodes: 0,
        exhausted: false,
    };
    if max_solutions != Some(0) {
        search.run(&mut uncovered);
    }
    ExactCoverResult {
        solutions: search.solutions,
        nodes_visited: search.nodes,
        status: if search.exhausted {
            SearchStatus::BudgetExhausted
        } else {
            SearchStatus::Complete
        },
    }
}
