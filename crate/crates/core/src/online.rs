//! Online execution under the delayed-decision model, and the strategies.
//!
//! After every reveal the engine repeatedly takes the canonical first intact
//! copy of H among alive vertices and asks the strategy which vertices to
//! delete, until the alive graph is H-free. Only then is the next vertex
//! revealed.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::advice::Provenance;
use crate::exact::min_deletion_set;
use crate::graph::{GraphError, OnlineGraph, VertexId};
use crate::harness::instance::{Instance, InstanceError};
use crate::pattern::{copies_containing, first_copy_in, InducedCopy, PatternGraph};
use crate::Rational;

#[derive(Debug, Error)]
pub enum OnlineError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("ALG_p needs p in [0,1), got {0}")]
    InvalidP(Rational),
    #[error("strategy `{strategy}` left copy {copy:?} intact (deleted {deleted:?})")]
    PolicyDidNotResolve { strategy: String, copy: Vec<VertexId>, deleted: Vec<VertexId> },
    #[error("unknown strategy `{0}`")]
    UnknownStrategy(String),
}

/// Which branch of ALG_p handles a copy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgPCase {
    /// No advice-1 vertex in the copy, now or earlier: delete all, counters frozen.
    DeleteAllNoCount,
    /// Ignore the advice: delete all k vertices, `d += 1`.
    DeleteAll,
    /// Follow the advice: delete the earliest advice-1 vertex, `e += 1`.
    DeleteOneAdvice1,
}

/// Case selection of ALG_p, with `e/(e+d) > p` evaluated as `e > p·(e+d)`.
pub fn algp_case(e: u64, d: u64, p: Rational, copy_has_advice1: bool, declared_incorrect: bool) -> AlgPCase {
    if declared_incorrect || !copy_has_advice1 {
        return AlgPCase::DeleteAllNoCount;
    }
    let e_r = Rational::from_integer(e as i64);
    let total = Rational::from_integer((e + d) as i64);
    if d == 0 || e_r > p * total {
        AlgPCase::DeleteAll
    } else {
        AlgPCase::DeleteOneAdvice1
    }
}

/// Checks `e ≤ p(e+d) + 1` and `d ≤ (1−p)(e+d) + 1`; empty when both hold or `e+d = 0`.
pub fn counter_lemma_violations(e: u64, d: u64, p: Rational) -> Vec<String> {
    let mut out = Vec::new();
    if e + d == 0 {
        return out;
    }
    let total = Rational::from_integer((e + d) as i64);
    let one = Rational::one();
    if Rational::from_integer(e as i64) > p * total + one {
        out.push(format!("e/(e+d) bound broken: e={e} d={d} p={p}"));
    }
    if Rational::from_integer(d as i64) > (one - p) * total + one {
        out.push(format!("d/(e+d) bound broken: e={e} d={d} p={p}"));
    }
    out
}

/// Counter-lemma check on the final counters of an ALG_p run.
pub fn check_counter_lemmas(report: &RunReport, p: Rational) -> Vec<String> {
    counter_lemma_violations(report.final_e, report.final_d, p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlgPState {
    pub p: Rational,
    pub e: u64,
    pub d: u64,
    pub advice_declared_incorrect: bool,
}

/// A deletion rule consulted once per intact copy.
pub trait Policy {
    fn label(&self) -> String;

    /// Vertices to delete for `copy`, in emission order. At least one must lie in `copy`.
    fn resolve(&mut self, g: &OnlineGraph, h: &PatternGraph, copy: &InducedCopy) -> Vec<VertexId>;

    fn algp_state(&self) -> Option<AlgPState> {
        None
    }

    /// Case chosen by the last `resolve`, for ALG_p only.
    fn last_case(&self) -> Option<AlgPCase> {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    AlgP(Rational),
    Naive,
    AlgOne,
    GreedyOverlap,
}

impl Strategy {
    /// `algp` (needs `p`), `naive`, `alg1`, `greedy`.
    pub fn parse(name: &str, p: Option<Rational>) -> Result<Self, OnlineError> {
        match name {
            "algp" => {
                let p = p.unwrap_or_else(|| Rational::new(1, 2));
                Self::algp(p)
            }
            "naive" => Ok(Strategy::Naive),
            "alg1" => Ok(Strategy::AlgOne),
            "greedy" => Ok(Strategy::GreedyOverlap),
            other => Err(OnlineError::UnknownStrategy(other.to_string())),
        }
    }

    pub fn algp(p: Rational) -> Result<Self, OnlineError> {
        if p < Rational::zero() || p >= Rational::one() {
            return Err(OnlineError::InvalidP(p));
        }
        Ok(Strategy::AlgP(p))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Strategy::AlgP(_) => "algp",
            Strategy::Naive => "naive",
            Strategy::AlgOne => "alg1",
            Strategy::GreedyOverlap => "greedy",
        }
    }

    /// Trust parameter: `p` for ALG_p, 1 for ALG_1.
    pub fn p(&self) -> Option<Rational> {
        match self {
            Strategy::AlgP(p) => Some(*p),
            Strategy::AlgOne => Some(Rational::one()),
            _ => None,
        }
    }

    pub fn policy(&self) -> Result<Box<dyn Policy + Send>, OnlineError> {
        Ok(match *self {
            Strategy::AlgP(p) => Box::new(AlgP::new(p)?),
            Strategy::Naive => Box::new(Naive),
            Strategy::AlgOne => Box::new(AlgOne),
            Strategy::GreedyOverlap => Box::new(GreedyOverlap),
        })
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::AlgP(p) => write!(f, "algp({p})"),
            other => f.write_str(other.name()),
        }
    }
}

fn earliest_advice1(g: &OnlineGraph, copy: &InducedCopy) -> Option<VertexId> {
    copy.vertices.iter().copied().find(|&v| g.advice(v))
}

/// ALG_p for `p` in `[0,1)`.
#[derive(Clone, Debug)]
pub struct AlgP {
    state: AlgPState,
    last: Option<AlgPCase>,
}

impl AlgP {
    pub fn new(p: Rational) -> Result<Self, OnlineError> {
        if p < Rational::zero() || p >= Rational::one() {
            return Err(OnlineError::InvalidP(p));
        }
        Ok(Self { state: AlgPState { p, e: 0, d: 0, advice_declared_incorrect: false }, last: None })
    }
}

impl Policy for AlgP {
    fn label(&self) -> String {
        Strategy::AlgP(self.state.p).to_string()
    }

    fn resolve(&mut self, g: &OnlineGraph, _h: &PatternGraph, copy: &InducedCopy) -> Vec<VertexId> {
        let s = &mut self.state;
        let first1 = earliest_advice1(g, copy);
        let case = algp_case(s.e, s.d, s.p, first1.is_some(), s.advice_declared_incorrect);
        self.last = Some(case);
        match case {
            AlgPCase::DeleteAllNoCount => {
                s.advice_declared_incorrect = true;
                copy.vertices.clone()
            }
            AlgPCase::DeleteAll => {
                s.d += 1;
                copy.vertices.clone()
            }
            AlgPCase::DeleteOneAdvice1 => {
                s.e += 1;
                vec![first1.expect("case needs an advice-1 vertex")]
            }
        }
    }

    fn algp_state(&self) -> Option<AlgPState> {
        Some(self.state)
    }

    fn last_case(&self) -> Option<AlgPCase> {
        self.last
    }
}

/// Deletes every vertex of each copy.
#[derive(Clone, Copy, Debug, Default)]
pub struct Naive;

impl Policy for Naive {
    fn label(&self) -> String {
        "naive".into()
    }

    fn resolve(&mut self, _g: &OnlineGraph, _h: &PatternGraph, copy: &InducedCopy) -> Vec<VertexId> {
        copy.vertices.clone()
    }
}

/// Always trusts the advice; falls back to deleting the whole copy when it has no advice-1 vertex.
#[derive(Clone, Copy, Debug, Default)]
pub struct AlgOne;

impl Policy for AlgOne {
    fn label(&self) -> String {
        "alg1".into()
    }

    fn resolve(&mut self, g: &OnlineGraph, _h: &PatternGraph, copy: &InducedCopy) -> Vec<VertexId> {
        match earliest_advice1(g, copy) {
            Some(v) => vec![v],
            None => copy.vertices.clone(),
        }
    }
}

/// Deletes the copy vertex lying in the most induced copies of the full revealed
/// graph (destroyed copies included); ties go to the earliest arrival.
#[derive(Clone, Copy, Debug, Default)]
pub struct GreedyOverlap;

impl Policy for GreedyOverlap {
    fn label(&self) -> String {
        "greedy".into()
    }

    fn resolve(&mut self, g: &OnlineGraph, h: &PatternGraph, copy: &InducedCopy) -> Vec<VertexId> {
        let everything = vec![true; g.len()];
        let mut best = (0usize, copy.vertices[0]);
        for &v in &copy.vertices {
            let count = copies_containing(g, h, &everything, v).len();
            if count > best.0 {
                best = (count, v);
            }
        }
        vec![best.1]
    }
}

/// Outcome of one run. `ratio = deletions_total / max(opt_cost, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub pattern: String,
    pub k: usize,
    pub strategy: String,
    /// `Some(p)` only for ALG_p runs.
    pub algp_p: Option<Rational>,
    pub provenance: Provenance,
    pub vertices: usize,
    pub deletions_total: usize,
    pub opt_cost: usize,
    pub final_e: u64,
    pub final_d: u64,
    pub case1_triggered: bool,
    pub deleted_advice1: usize,
    pub alive_advice1: usize,
    pub ratio: Rational,
    /// `deletions − bound·opt` once checked against a competitive bound.
    pub additive_slack_used: Option<Rational>,
    pub deletion_order: Vec<VertexId>,
    pub invariant_violations: Vec<String>,
}

/// A live run: reveal vertices one at a time, the policy answers in between.
pub struct OnlineRun<'h> {
    graph: OnlineGraph,
    pattern: &'h PatternGraph,
    policy: Box<dyn Policy + Send + 'h>,
    violations: Vec<String>,
}

impl<'h> OnlineRun<'h> {
    pub fn new(pattern: &'h PatternGraph, policy: Box<dyn Policy + Send + 'h>) -> Self {
        Self { graph: OnlineGraph::new(), pattern, policy, violations: Vec::new() }
    }

    pub fn graph(&self) -> &OnlineGraph {
        &self.graph
    }

    pub fn pattern(&self) -> &PatternGraph {
        self.pattern
    }

    pub fn policy(&self) -> &dyn Policy {
        self.policy.as_ref()
    }

    pub fn violations(&self) -> &[String] {
        &self.violations
    }

    /// Reveals one vertex and resolves every copy it creates.
    /// Returns the vertices deleted in response, in emission order.
    pub fn reveal(&mut self, neighbors: &[VertexId], advice: bool) -> Result<Vec<VertexId>, OnlineError> {
        let v = self.graph.add_vertex(neighbors, advice)?;
        let mut deleted = Vec::new();
        loop {
            // the graph was H-free before `v`, so every intact copy contains it
            let alive = self.graph.alive_mask();
            let Some(copy) = first_copy_through(&self.graph, self.pattern, &alive, v) else {
                break;
            };
            let before = self.policy.algp_state();
            let chosen = self.policy.resolve(&self.graph, self.pattern, &copy);
            if chosen.is_empty() || !chosen.iter().any(|u| copy.contains(*u)) {
                return Err(OnlineError::PolicyDidNotResolve {
                    strategy: self.policy.label(),
                    copy: copy.vertices,
                    deleted: chosen,
                });
            }
            self.graph.delete_vertices(&chosen)?;
            if let (Some(before), Some(after)) = (before, self.policy.algp_state()) {
                self.audit_algp(before, after, &copy, &chosen);
            }
            deleted.extend(chosen);
        }
        Ok(deleted)
    }

    fn audit_algp(&mut self, before: AlgPState, after: AlgPState, copy: &InducedCopy, chosen: &[VertexId]) {
        let mut bad = Vec::new();
        if after.e < before.e || after.d < before.d {
            bad.push(format!("counters decreased: ({},{}) -> ({},{})", before.e, before.d, after.e, after.d));
        }
        if before.advice_declared_incorrect && (after.e, after.d) != (before.e, before.d) {
            bad.push("counters moved after advice was declared incorrect".to_string());
        }
        if before.advice_declared_incorrect && !after.advice_declared_incorrect {
            bad.push("incorrect-advice flag was cleared".to_string());
        }
        match self.policy.last_case() {
            Some(AlgPCase::DeleteOneAdvice1) => {
                if chosen.len() != 1 || !self.graph.advice(chosen[0]) {
                    bad.push(format!("advice-following step deleted {chosen:?}"));
                }
            }
            Some(_) if chosen != copy.vertices.as_slice() => {
                bad.push(format!("delete-all step deleted {chosen:?} for copy {:?}", copy.vertices));
            }
            _ => {}
        }
        bad.extend(counter_lemma_violations(after.e, after.d, after.p));
        self.violations.extend(bad);
    }

    /// Builds the report; `opt_cost` is the offline optimum of the revealed graph.
    pub fn finish(self, opt_cost: usize, provenance: Provenance) -> RunReport {
        let g = &self.graph;
        let state = self.policy.algp_state();
        let deleted_advice1 = g.deletion_log().iter().filter(|&&v| g.advice(v)).count();
        let alive_advice1 = g.alive().into_iter().filter(|&v| g.advice(v)).count();
        let deletions_total = g.deleted_count();
        RunReport {
            pattern: self.pattern.spec_string(),
            k: self.pattern.k(),
            strategy: self.policy.label(),
            algp_p: state.map(|s| s.p),
            provenance,
            vertices: g.len(),
            deletions_total,
            opt_cost,
            final_e: state.map_or(0, |s| s.e),
            final_d: state.map_or(0, |s| s.d),
            case1_triggered: state.is_some_and(|s| s.advice_declared_incorrect),
            deleted_advice1,
            alive_advice1,
            ratio: Rational::new(deletions_total as i64, opt_cost.max(1) as i64),
            additive_slack_used: None,
            deletion_order: g.deletion_log().to_vec(),
            invariant_violations: self.violations,
        }
    }
}

fn first_copy_through(g: &OnlineGraph, h: &PatternGraph, alive: &[bool], v: VertexId) -> Option<InducedCopy> {
    let copy = copies_containing(g, h, alive, v).into_iter().next();
    debug_assert_eq!(copy, first_copy_in(g, h, alive));
    copy
}

/// Replays a static instance against a policy. `opt` defaults to the exact optimum.
pub fn run_policy<'h>(
    instance: &'h Instance,
    policy: Box<dyn Policy + Send + 'h>,
    opt: Option<usize>,
) -> Result<RunReport, OnlineError> {
    instance.validate()?;
    let mut run = OnlineRun::new(&instance.pattern, policy);
    for (nbrs, &bit) in instance.neighbors.iter().zip(&instance.advice.bits) {
        run.reveal(nbrs, bit)?;
    }
    let opt = match opt {
        Some(o) => o,
        None => min_deletion_set(run.graph(), &instance.pattern, None).map(|r| r.cost).unwrap_or(0),
    };
    Ok(run.finish(opt, instance.advice.provenance.clone()))
}

pub fn run_strategy(instance: &Instance, strategy: Strategy) -> Result<RunReport, OnlineError> {
    run_policy(instance, strategy.policy()?, None)
}
