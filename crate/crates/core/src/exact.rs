//! Exact offline optimum: the fewest vertices whose removal leaves G H-free.
//!
//! The whole revealed graph is considered, regardless of any deletions an online
//! strategy has made. Branch-and-bound: take the canonical first copy, branch on
//! deleting each of its vertices, prune with a greedy vertex-disjoint packing of
//! copies. Costs are found by iterative deepening from the packing bound.

use thiserror::Error;

use crate::advice::{AdviceTape, Provenance};
use crate::graph::{OnlineGraph, VertexId};
use crate::pattern::{first_copy_in, InducedCopy, PatternGraph};

/// Search-node cap for [`is_unique_optimum`] before it gives up.
pub const UNIQUENESS_NODE_CAP: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("optimum exceeds budget {budget}")]
    OverBudget { budget: usize },
    #[error("deleting the proposed set leaves the copy {0:?}")]
    NotASolution(InducedCopy),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptResult {
    pub solution: Vec<VertexId>,
    pub cost: usize,
    pub unique: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Uniqueness {
    Unique,
    /// Another solution no larger than the proposed one.
    Alternative(Vec<VertexId>),
    Undecided,
}

struct Search<'a> {
    g: &'a OnlineGraph,
    h: &'a PatternGraph,
    present: Vec<bool>,
    protected: Vec<bool>,
    chosen: Vec<VertexId>,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(g: &'a OnlineGraph, h: &'a PatternGraph) -> Self {
        Self { g, h, present: vec![true; g.len()], protected: vec![false; g.len()], chosen: Vec::new(), nodes: 0 }
    }

    fn first_copy(&self) -> Option<InducedCopy> {
        first_copy_in(self.g, self.h, &self.present)
    }

    /// Greedy first-fit packing of vertex-disjoint copies, starting from `first`.
    fn packing_from(&self, first: &InducedCopy) -> usize {
        let mut mask = self.present.clone();
        let mut next = Some(first.clone());
        let mut count = 0;
        while let Some(copy) = next {
            count += 1;
            for v in &copy.vertices {
                mask[v.0] = false;
            }
            next = first_copy_in(self.g, self.h, &mask);
        }
        count
    }

    fn packing(&self) -> usize {
        self.first_copy().map_or(0, |c| self.packing_from(&c))
    }

    /// Finds a solution using at most `limit` further deletions of unprotected vertices.
    fn dfs(&mut self, limit: usize) -> bool {
        self.nodes += 1;
        let Some(copy) = self.first_copy() else {
            return true;
        };
        if limit == 0 || self.packing_from(&copy) > limit {
            return false;
        }
        let branch: Vec<VertexId> = copy.vertices.iter().copied().filter(|v| !self.protected[v.0]).collect();
        let mut locked = Vec::new();
        let mut ok = false;
        for v in branch {
            self.present[v.0] = false;
            self.chosen.push(v);
            ok = self.dfs(limit - 1);
            if ok {
                break;
            }
            self.chosen.pop();
            self.present[v.0] = true;
            // every solution through v was just explored
            self.protected[v.0] = true;
            locked.push(v);
        }
        for v in locked {
            self.protected[v.0] = false;
        }
        ok
    }

    /// Smallest extension up to `cap` further deletions, by iterative deepening.
    fn deepen(&mut self, cap: usize) -> Option<usize> {
        let start = self.packing();
        (start..=cap).find(|&c| {
            let depth = self.chosen.len();
            let ok = self.dfs(c);
            if !ok {
                self.chosen.truncate(depth);
            }
            ok
        })
    }

    /// Looks for any solution of size ≤ `limit` other than `target`.
    fn alternative(&mut self, limit: usize, target: &[VertexId], cap: u64) -> Option<Option<Vec<VertexId>>> {
        self.nodes += 1;
        if self.nodes > cap {
            return None;
        }
        let Some(copy) = self.first_copy() else {
            let mut set = self.chosen.clone();
            set.sort_unstable();
            return Some((set != target).then_some(set));
        };
        if limit == 0 || self.packing_from(&copy) > limit {
            return Some(None);
        }
        let branch: Vec<VertexId> = copy.vertices.iter().copied().filter(|v| !self.protected[v.0]).collect();
        let mut locked = Vec::new();
        let mut result = Some(None);
        for v in branch {
            self.present[v.0] = false;
            self.chosen.push(v);
            let r = self.alternative(limit - 1, target, cap);
            self.chosen.pop();
            self.present[v.0] = true;
            if !matches!(r, Some(None)) {
                result = r;
                break;
            }
            self.protected[v.0] = true;
            locked.push(v);
        }
        for v in locked {
            self.protected[v.0] = false;
        }
        result
    }
}

/// Exact minimum deletion set of the full revealed graph.
pub fn min_deletion_set(g: &OnlineGraph, h: &PatternGraph, budget: Option<usize>) -> Result<OptResult, ExactError> {
    let mut search = Search::new(g, h);
    let cap = budget.unwrap_or(g.len());
    match search.deepen(cap) {
        Some(cost) => {
            let mut solution = search.chosen;
            solution.sort_unstable();
            debug_assert_eq!(solution.len(), cost);
            Ok(OptResult { solution, cost, unique: None })
        }
        None => Err(ExactError::OverBudget { budget: cap }),
    }
}

/// Lower bound from greedily packed vertex-disjoint copies (first-fit, canonical order).
pub fn packing_lower_bound(g: &OnlineGraph, h: &PatternGraph) -> usize {
    Search::new(g, h).packing()
}

/// The optimal solution with the lexicographically smallest sorted vertex tuple.
pub fn lex_min_optimum(g: &OnlineGraph, h: &PatternGraph) -> OptResult {
    let cost = min_deletion_set(g, h, None).expect("unbudgeted search always succeeds").cost;
    let mut search = Search::new(g, h);
    let mut solution = Vec::with_capacity(cost);
    for v in g.vertices() {
        if solution.len() == cost {
            break;
        }
        search.present[v.0] = false;
        let remaining = cost - solution.len() - 1;
        let depth = search.chosen.len();
        if search.dfs(remaining) {
            solution.push(v);
        } else {
            search.present[v.0] = true;
            search.protected[v.0] = true;
        }
        // a successful probe leaves its own picks removed; only `v` is committed
        for u in search.chosen.drain(depth..) {
            search.present[u.0] = true;
        }
    }
    debug_assert_eq!(solution.len(), cost);
    OptResult { solution, cost, unique: None }
}

/// Advice tape with bit 1 exactly on the lexicographically least optimum.
pub fn correct_advice(g: &OnlineGraph, h: &PatternGraph) -> AdviceTape {
    let opt = lex_min_optimum(g, h);
    let mut bits = vec![false; g.len()];
    for v in opt.solution {
        bits[v.0] = true;
    }
    AdviceTape::new(bits, Provenance::Correct)
}

/// Checks that `sol` solves G and that no other set of size ≤ |sol| does.
pub fn is_unique_optimum(g: &OnlineGraph, h: &PatternGraph, sol: &[VertexId]) -> Result<Uniqueness, ExactError> {
    let mut target = sol.to_vec();
    target.sort_unstable();
    target.dedup();
    let mut mask = vec![true; g.len()];
    for v in &target {
        mask[v.0] = false;
    }
    if let Some(copy) = first_copy_in(g, h, &mask) {
        return Err(ExactError::NotASolution(copy));
    }
    let mut search = Search::new(g, h);
    Ok(match search.alternative(target.len(), &target, UNIQUENESS_NODE_CAP) {
        None => Uniqueness::Undecided,
        Some(None) => Uniqueness::Unique,
        Some(Some(other)) => Uniqueness::Alternative(other),
    })
}
