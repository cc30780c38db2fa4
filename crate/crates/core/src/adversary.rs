//! Adaptive adversaries played live against a strategy.
//!
//! A gadget starts as one copy of H (the originals, original `j` in class `j`).
//! Whenever the strategy deletes a gadget vertex, a twin is reinserted into the
//! same class, which recreates a copy of H. The class of the last original to be
//! deleted becomes the designated class and is never refilled; its single vertex
//! alone hits every copy in the gadget, so the offline optimum is 1 while the
//! strategy has paid at least `k`.
//!
//! In false-twin mode each class is an independent set (needs H without false
//! twins); in true-twin mode each class is a clique (needs H without true twins).
//! Either way the gadget is a blow-up of H with at most one alive vertex per class.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::advice::{AdviceTape, CorruptionScheme, Provenance};
use crate::exact::min_deletion_set;
use crate::graph::{OnlineGraph, VertexId};
use crate::harness::instance::Instance;
use crate::online::{OnlineError, OnlineRun, Policy, RunReport};
use crate::pattern::{first_copy_in, InducedCopy, PatternGraph};

#[derive(Debug, Error)]
pub enum AdversaryError {
    #[error("{mode:?} reinsertion needs a pattern without {twin} twins; {pattern} has them")]
    InvalidMode { mode: ReinsertionMode, pattern: String, twin: &'static str },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Online(#[from] OnlineError),
    #[error("copy {0:?} has no advice-1 vertex")]
    CopyWithoutAdvice(InducedCopy),
    #[error("gadget stalled: no pending deletion and no designated class")]
    Stalled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReinsertionMode {
    /// The twin copies the open neighborhood; classes are independent sets.
    FalseTwin,
    /// The twin copies the closed neighborhood; classes are cliques.
    TrueTwin,
}

impl ReinsertionMode {
    pub fn check(self, h: &PatternGraph) -> Result<(), AdversaryError> {
        let t = h.traits();
        let (bad, twin) = match self {
            ReinsertionMode::FalseTwin => (t.has_false_twin_pair, "false"),
            ReinsertionMode::TrueTwin => (t.has_true_twin_pair, "true"),
        };
        if bad {
            Err(AdversaryError::InvalidMode { mode: self, pattern: h.spec_string(), twin })
        } else {
            Ok(())
        }
    }

    /// True-twin mode when H allows it, otherwise false-twin mode.
    pub fn for_pattern(h: &PatternGraph) -> Option<Self> {
        [ReinsertionMode::TrueTwin, ReinsertionMode::FalseTwin].into_iter().find(|m| m.check(h).is_ok())
    }
}

impl std::str::FromStr for ReinsertionMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "false-twin" | "false" => Ok(Self::FalseTwin),
            "true-twin" | "true" => Ok(Self::TrueTwin),
            _ => Err(format!("unknown reinsertion mode `{s}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetState {
    pub mode: ReinsertionMode,
    /// `classes[j]` holds every vertex of class j in arrival order.
    pub classes: Vec<Vec<VertexId>>,
    pub originals: Vec<VertexId>,
    pub designated_class: Option<usize>,
    pub reveal_budget: usize,
    pub reveals_used: usize,
    pub unbounded: bool,
    /// Largest number of simultaneously alive vertices seen in one class.
    pub peak_alive_per_class: usize,
    /// Alive advice-1 vertex carried over from the previous gadget.
    pub seed: Option<VertexId>,
}

impl GadgetState {
    fn new(mode: ReinsertionMode, k: usize, reveal_budget: usize) -> Self {
        Self {
            mode,
            classes: vec![Vec::new(); k],
            originals: Vec::with_capacity(k),
            designated_class: None,
            reveal_budget,
            reveals_used: 0,
            unbounded: false,
            peak_alive_per_class: 0,
            seed: None,
        }
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        let mut all: Vec<VertexId> = self.classes.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }

    pub fn class_of(&self, v: VertexId) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&v))
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.class_of(v).is_some()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChainKind {
    /// Gadgets share nothing.
    Disjoint,
    /// A leftover alive advice-1 vertex becomes the first original of the next gadget.
    SharedAdvice1Vertex,
    /// As above, and every new vertex is joined to all earlier vertices outside its gadget.
    CompleteJoin,
}

impl std::str::FromStr for ChainKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "disjoint" => Ok(Self::Disjoint),
            "shared" => Ok(Self::SharedAdvice1Vertex),
            "join" => Ok(Self::CompleteJoin),
            _ => Err(format!("unknown chain kind `{s}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AdviceRule {
    /// Bit 1 on every vertex of class 1 (pattern vertex 0), 0 elsewhere.
    Class1GetsOne,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainConfig {
    pub m: usize,
    pub kind: ChainKind,
    pub advice_rule: AdviceRule,
}

impl ChainConfig {
    pub fn check(&self, h: &PatternGraph) -> Result<(), AdversaryError> {
        if self.m == 0 {
            return Err(AdversaryError::Precondition("a chain needs at least one gadget".into()));
        }
        let t = h.traits();
        match self.kind {
            ChainKind::Disjoint => Ok(()),
            ChainKind::SharedAdvice1Vertex if !t.is_two_connected => Err(AdversaryError::Precondition(format!(
                "shared-vertex chains need a 2-connected pattern; {h} is not"
            ))),
            ChainKind::CompleteJoin if !(t.is_path && h.k() >= 5) => Err(AdversaryError::Precondition(format!(
                "complete-join chains need a path on at least 5 vertices; got {h}"
            ))),
            _ => Ok(()),
        }
    }
}

/// How a duel's report obtains the offline optimum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OptMode {
    /// Branch-and-bound on the final graph.
    Exact,
    /// One per designated gadget. Only sound when no copy spans two gadgets,
    /// which callers must check separately (see [`spanning_copies`]).
    PerGadget,
}

pub struct DuelOutcome {
    pub graph: OnlineGraph,
    pub instance: Instance,
    pub report: RunReport,
    pub gadget: GadgetState,
}

pub struct ChainOutcome {
    pub graph: OnlineGraph,
    /// Replayable static trace; the advice tape lives in `instance.advice`.
    pub instance: Instance,
    pub report: RunReport,
    pub gadgets: Vec<GadgetState>,
    pub unbounded: bool,
}

impl ChainOutcome {
    pub fn tape(&self) -> &AdviceTape {
        &self.instance.advice
    }
}

struct Arena<'h> {
    run: OnlineRun<'h>,
    h: &'h PatternGraph,
    mode: ReinsertionMode,
    kind: ChainKind,
    rule: AdviceRule,
    // (gadget, class) pairs per vertex; a shared vertex belongs to several gadgets
    membership: Vec<Vec<(usize, usize)>>,
    gadgets: Vec<GadgetState>,
}

impl<'h> Arena<'h> {
    fn in_gadget(&self, v: VertexId, gi: usize) -> Option<usize> {
        self.membership[v.0].iter().find(|(g, _)| *g == gi).map(|&(_, c)| c)
    }

    fn reveal(&mut self, gi: usize, class: usize, mut nbrs: Vec<VertexId>) -> Result<Vec<VertexId>, AdversaryError> {
        if self.kind == ChainKind::CompleteJoin {
            let n = self.run.graph().len();
            nbrs.extend((0..n).map(VertexId).filter(|&u| self.in_gadget(u, gi).is_none()));
        }
        nbrs.sort_unstable();
        nbrs.dedup();
        let advice = self.rule == AdviceRule::Class1GetsOne && class == 0;
        let id = VertexId(self.run.graph().len());
        self.membership.push(vec![(gi, class)]);
        self.gadgets[gi].classes[class].push(id);
        self.gadgets[gi].reveals_used += 1;
        let deleted = self.run.reveal(&nbrs, advice)?;
        self.observe(gi);
        Ok(deleted)
    }

    fn observe(&mut self, gi: usize) {
        let g = self.run.graph();
        let peak =
            self.gadgets[gi].classes.iter().map(|c| c.iter().filter(|&&v| g.is_alive(v)).count()).max().unwrap_or(0);
        let state = &mut self.gadgets[gi];
        state.peak_alive_per_class = state.peak_alive_per_class.max(peak);
    }

    fn reinsertion_neighbors(&self, gi: usize, v: VertexId, class: usize) -> Vec<VertexId> {
        let g = self.run.graph();
        let mut nbrs: Vec<VertexId> =
            g.neighbors(v).iter().copied().filter(|&u| self.in_gadget(u, gi).is_some()).collect();
        if self.mode == ReinsertionMode::TrueTwin {
            nbrs.extend(self.gadgets[gi].classes[class].iter().copied());
        }
        nbrs
    }

    fn play(&mut self, seed: Option<VertexId>, budget: usize) -> Result<(), AdversaryError> {
        let k = self.h.k();
        let gi = self.gadgets.len();
        let mut state = GadgetState::new(self.mode, k, budget);
        state.seed = seed;
        self.gadgets.push(state);

        let mut queue = VecDeque::new();
        for q in 0..k {
            if q == 0 {
                if let Some(s) = seed {
                    self.membership[s.0].push((gi, 0));
                    self.gadgets[gi].classes[0].push(s);
                    self.gadgets[gi].originals.push(s);
                    self.observe(gi);
                    continue;
                }
            }
            let nbrs: Vec<VertexId> =
                self.h.neighbors(q).filter(|&p| p < q).map(|p| self.gadgets[gi].originals[p]).collect();
            let id = VertexId(self.run.graph().len());
            self.gadgets[gi].originals.push(id);
            queue.extend(self.reveal(gi, q, nbrs)?);
        }

        let mut pending = k;
        let mut seen_original = vec![false; k];
        while let Some(v) = queue.pop_front() {
            let Some(class) = self.in_gadget(v, gi) else {
                continue;
            };
            if let Some(pos) = self.gadgets[gi].originals.iter().position(|&o| o == v) {
                if !seen_original[pos] {
                    seen_original[pos] = true;
                    pending -= 1;
                }
                if pending == 0 {
                    self.gadgets[gi].designated_class = Some(class);
                    return Ok(());
                }
            }
            if self.gadgets[gi].reveals_used >= budget {
                self.gadgets[gi].unbounded = true;
                return Ok(());
            }
            let nbrs = self.reinsertion_neighbors(gi, v, class);
            queue.extend(self.reveal(gi, class, nbrs)?);
        }
        Err(AdversaryError::Stalled)
    }

    fn leftover_advice1(&self, gi: usize) -> Option<VertexId> {
        if self.rule != AdviceRule::Class1GetsOne {
            return None;
        }
        let g = self.run.graph();
        self.gadgets[gi].classes[0].iter().copied().find(|&v| g.is_alive(v))
    }
}

fn provenance_for(rule: AdviceRule) -> Provenance {
    match rule {
        AdviceRule::Class1GetsOne => Provenance::ClassLabel,
        AdviceRule::None => Provenance::Untrusted,
    }
}

fn chain_inner<'h>(
    h: &'h PatternGraph,
    cfg: ChainConfig,
    mode: ReinsertionMode,
    policy: Box<dyn Policy + Send + 'h>,
    budget: usize,
    opt_mode: OptMode,
) -> Result<ChainOutcome, AdversaryError> {
    mode.check(h)?;
    cfg.check(h)?;
    if budget < h.k() {
        return Err(AdversaryError::Precondition(format!("reveal budget {budget} is below k = {}", h.k())));
    }
    let mut arena = Arena {
        run: OnlineRun::new(h, policy),
        h,
        mode,
        kind: cfg.kind,
        rule: cfg.advice_rule,
        membership: Vec::new(),
        gadgets: Vec::new(),
    };
    let mut unbounded = false;
    for j in 0..cfg.m {
        let seed = match (j, cfg.kind) {
            (0, _) | (_, ChainKind::Disjoint) => None,
            _ => arena.leftover_advice1(j - 1),
        };
        arena.play(seed, budget)?;
        if arena.gadgets[j].unbounded {
            unbounded = true;
            break;
        }
    }
    let graph = arena.run.graph().clone();
    let opt = match opt_mode {
        OptMode::Exact => min_deletion_set(&graph, h, None).map(|r| r.cost).unwrap_or(0),
        OptMode::PerGadget => arena.gadgets.iter().filter(|g| g.designated_class.is_some()).count(),
    };
    let provenance = provenance_for(cfg.advice_rule);
    let instance = Instance::from_graph(&graph, h, provenance.clone());
    let report = arena.run.finish(opt, provenance);
    Ok(ChainOutcome { graph, instance, report, gadgets: arena.gadgets, unbounded })
}

/// Plays one gadget against `policy` with all-zero advice.
pub fn gadget_duel<'h>(
    h: &'h PatternGraph,
    mode: ReinsertionMode,
    policy: Box<dyn Policy + Send + 'h>,
    budget: usize,
) -> Result<DuelOutcome, AdversaryError> {
    gadget_duel_with_advice(h, mode, policy, budget, AdviceRule::None)
}

pub fn gadget_duel_with_advice<'h>(
    h: &'h PatternGraph,
    mode: ReinsertionMode,
    policy: Box<dyn Policy + Send + 'h>,
    budget: usize,
    rule: AdviceRule,
) -> Result<DuelOutcome, AdversaryError> {
    let cfg = ChainConfig { m: 1, kind: ChainKind::Disjoint, advice_rule: rule };
    let out = chain_inner(h, cfg, mode, policy, budget, OptMode::Exact)?;
    let gadget = out.gadgets.into_iter().next().expect("one gadget was played");
    Ok(DuelOutcome { graph: out.graph, instance: out.instance, report: out.report, gadget })
}

/// Plays `cfg.m` gadgets in sequence, combined as `cfg.kind` prescribes.
/// `budget` bounds the reveals of each gadget; the chain stops at the first unbounded gadget.
pub fn chain_duel<'h>(
    h: &'h PatternGraph,
    cfg: ChainConfig,
    mode: ReinsertionMode,
    policy: Box<dyn Policy + Send + 'h>,
    budget: usize,
) -> Result<ChainOutcome, AdversaryError> {
    chain_inner(h, cfg, mode, policy, budget, OptMode::Exact)
}

pub fn chain_duel_with_opt<'h>(
    h: &'h PatternGraph,
    cfg: ChainConfig,
    mode: ReinsertionMode,
    policy: Box<dyn Policy + Send + 'h>,
    budget: usize,
    opt_mode: OptMode,
) -> Result<ChainOutcome, AdversaryError> {
    chain_inner(h, cfg, mode, policy, budget, opt_mode)
}

/// Copies of H in the full graph that contain two vertices not sharing any gadget.
pub fn spanning_copies(g: &OnlineGraph, h: &PatternGraph, gadgets: &[GadgetState]) -> Vec<InducedCopy> {
    let mut member: Vec<Vec<usize>> = vec![Vec::new(); g.len()];
    for (gi, gadget) in gadgets.iter().enumerate() {
        for v in gadget.vertices() {
            member[v.0].push(gi);
        }
    }
    let everything = vec![true; g.len()];
    crate::pattern::find_copies_in(g, h, &everything, None)
        .into_iter()
        .filter(|c| {
            c.vertices
                .iter()
                .enumerate()
                .any(|(i, a)| c.vertices[i + 1..].iter().any(|b| !member[a.0].iter().any(|x| member[b.0].contains(x))))
        })
        .collect()
}

/// Extends `g` so that `tape` becomes its unique correct advice.
///
/// Every copy of H in `g` must contain an advice-1 vertex. For each advice-1
/// vertex two fresh copies of H are attached through it (advice 0, disjoint
/// from everything else), so the advice-1 set is then the only optimum.
pub fn expand_to_correct(
    g: &OnlineGraph,
    tape: &AdviceTape,
    h: &PatternGraph,
) -> Result<(OnlineGraph, AdviceTape), AdversaryError> {
    if tape.len() != g.len() {
        return Err(AdversaryError::Precondition(format!("{} advice bits for {} vertices", tape.len(), g.len())));
    }
    let without_advice1: Vec<bool> = tape.bits.iter().map(|b| !b).collect();
    if let Some(copy) = first_copy_in(g, h, &without_advice1) {
        return Err(AdversaryError::CopyWithoutAdvice(copy));
    }
    let mut out = g.offline();
    out.set_advice(&tape.bits);
    let k = h.k();
    let ones: Vec<VertexId> = g.vertices().filter(|v| tape.bits[v.0]).collect();
    for a in ones {
        for _ in 0..2 {
            let mut placed = vec![a];
            for q in 1..k {
                let nbrs: Vec<VertexId> = h.neighbors(q).filter(|&p| p < q).map(|p| placed[p]).collect();
                placed.push(out.add_vertex(&nbrs, false).expect("fresh vertices only reference revealed ones"));
            }
        }
    }
    let mut bits = tape.bits.clone();
    bits.resize(out.len(), false);
    Ok((out, AdviceTape::new(bits, Provenance::Correct)))
}

/// Deterministic corruption of a tape under `(scheme, seed)`; length is preserved.
pub fn corrupt_advice(tape: &AdviceTape, scheme: &CorruptionScheme, seed: u64) -> AdviceTape {
    let n = tape.len();
    let bits = match scheme {
        CorruptionScheme::AllZeros => vec![false; n],
        CorruptionScheme::AllOnes => vec![true; n],
        CorruptionScheme::FlipEach(prob) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            tape.bits.iter().map(|&b| b ^ rng.gen_bool(prob.clamp(0.0, 1.0))).collect()
        }
        CorruptionScheme::ShiftToClassLabel => {
            let mut shifted = vec![false; n];
            for (i, _) in tape.bits.iter().enumerate().filter(|(_, &b)| b) {
                if i + 1 < n {
                    shifted[i + 1] = true;
                }
            }
            shifted
        }
    };
    AdviceTape::new(bits, Provenance::Corrupted(scheme.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::online::{Naive, Strategy};
    use crate::pattern::find_copies;

    fn pat(name: &str) -> PatternGraph {
        PatternGraph::builtin(name).unwrap()
    }

    /// Deletes the newest vertex of every copy, so it never finishes a gadget.
    struct Newest;
    impl Policy for Newest {
        fn label(&self) -> String {
            "newest".into()
        }
        fn resolve(&mut self, _g: &OnlineGraph, _h: &PatternGraph, c: &InducedCopy) -> Vec<VertexId> {
            vec![*c.vertices.last().unwrap()]
        }
    }

    #[test]
    fn naive_on_false_twin_triangle_gadget() {
        let h = pat("K3");
        let out = gadget_duel(&h, ReinsertionMode::FalseTwin, Box::new(Naive), 100).unwrap();
        assert_eq!(out.graph.len(), 5);
        assert_eq!((out.report.deletions_total, out.report.opt_cost), (3, 1));
        assert_eq!(out.report.ratio, crate::Rational::from_integer(3));
        assert_eq!(out.gadget.designated_class, Some(2));
        assert!(out.gadget.peak_alive_per_class <= 1);
    }

    #[test]
    fn naive_on_true_twin_c4_gadget() {
        let h = pat("C4");
        let out = gadget_duel(&h, ReinsertionMode::TrueTwin, Box::new(Naive), 100).unwrap();
        assert_eq!((out.report.deletions_total, out.report.opt_cost), (4, 1));
        assert!(out.graph.len() <= 8);
    }

    #[test]
    fn newest_deleter_runs_out_of_budget() {
        let h = pat("K3");
        let out = gadget_duel(&h, ReinsertionMode::FalseTwin, Box::new(Newest), 50).unwrap();
        assert!(out.gadget.unbounded);
        assert_eq!(out.gadget.designated_class, None);
        assert_eq!(out.gadget.reveals_used, 50);
    }

    #[test]
    fn mode_must_suit_pattern() {
        let h = pat("K3");
        assert!(matches!(
            gadget_duel(&h, ReinsertionMode::TrueTwin, Box::new(Naive), 10),
            Err(AdversaryError::InvalidMode { .. })
        ));
        let c4 = pat("C4");
        assert!(gadget_duel(&c4, ReinsertionMode::FalseTwin, Box::new(Naive), 10).is_err());
        assert_eq!(ReinsertionMode::for_pattern(&h), Some(ReinsertionMode::FalseTwin));
        assert_eq!(ReinsertionMode::for_pattern(&c4), Some(ReinsertionMode::TrueTwin));
    }

    #[test]
    fn chain_preconditions() {
        let cfg = |kind| ChainConfig { m: 2, kind, advice_rule: AdviceRule::Class1GetsOne };
        let p4 = pat("P4");
        assert!(chain_duel(&p4, cfg(ChainKind::SharedAdvice1Vertex), ReinsertionMode::TrueTwin, Box::new(Naive), 50)
            .is_err());
        assert!(chain_duel(&p4, cfg(ChainKind::CompleteJoin), ReinsertionMode::TrueTwin, Box::new(Naive), 50).is_err());
        let zero = ChainConfig { m: 0, kind: ChainKind::Disjoint, advice_rule: AdviceRule::None };
        assert!(chain_duel(&p4, zero, ReinsertionMode::TrueTwin, Box::new(Naive), 50).is_err());
    }

    #[test]
    fn disjoint_triangle_chain() {
        let h = pat("K3");
        let cfg = ChainConfig { m: 2, kind: ChainKind::Disjoint, advice_rule: AdviceRule::None };
        let out = chain_duel(&h, cfg, ReinsertionMode::FalseTwin, Box::new(Naive), 100).unwrap();
        assert_eq!((out.report.opt_cost, out.report.deletions_total), (2, 6));
        assert_eq!(out.tape().ones(), 0);
    }

    #[test]
    fn shared_c4_chain_forces_cost() {
        let h = pat("C4");
        let cfg = ChainConfig { m: 3, kind: ChainKind::SharedAdvice1Vertex, advice_rule: AdviceRule::Class1GetsOne };
        let policy = Strategy::AlgP(crate::Rational::new(1, 2)).policy().unwrap();
        let out = chain_duel(&h, cfg, ReinsertionMode::TrueTwin, policy, 200).unwrap();
        assert!(!out.unbounded);
        assert_eq!(out.report.opt_cost, 3);
        assert!(out.report.deletions_total >= 12);
        assert!(spanning_copies(&out.graph, &h, &out.gadgets).is_empty());
    }

    #[test]
    fn expansion_of_triangle() {
        let mut g = OnlineGraph::new();
        g.add_vertex(&[], true).unwrap();
        g.add_vertex(&[VertexId(0)], false).unwrap();
        g.add_vertex(&[VertexId(0), VertexId(1)], false).unwrap();
        let tape = AdviceTape::new(vec![true, false, false], Provenance::Untrusted);
        let (big, big_tape) = expand_to_correct(&g, &tape, &pat("K3")).unwrap();
        assert_eq!(big.len(), 7);
        assert_eq!(big_tape.bits, vec![true, false, false, false, false, false, false]);
        assert_eq!(big_tape.provenance, Provenance::Correct);
        let opt = min_deletion_set(&big, &pat("K3"), None).unwrap();
        assert_eq!(opt.solution, vec![VertexId(0)]);
        assert_eq!(
            crate::exact::is_unique_optimum(&big, &pat("K3"), &[VertexId(0)]),
            Ok(crate::exact::Uniqueness::Unique)
        );
    }

    #[test]
    fn expansion_identity_on_h_free_graph() {
        let mut g = OnlineGraph::new();
        g.add_vertex(&[], false).unwrap();
        g.add_vertex(&[VertexId(0)], false).unwrap();
        let tape = AdviceTape::zeros(2, Provenance::Untrusted);
        let (big, big_tape) = expand_to_correct(&g, &tape, &pat("K3")).unwrap();
        assert_eq!(big, g.offline());
        assert_eq!(big_tape.bits, tape.bits);
    }

    #[test]
    fn expansion_rejects_copy_without_advice() {
        let mut g = OnlineGraph::new();
        g.add_vertex(&[], false).unwrap();
        g.add_vertex(&[VertexId(0)], false).unwrap();
        g.add_vertex(&[VertexId(0), VertexId(1)], false).unwrap();
        let err = expand_to_correct(&g, &AdviceTape::zeros(3, Provenance::Untrusted), &pat("K3")).unwrap_err();
        assert!(matches!(err, AdversaryError::CopyWithoutAdvice(c) if c.vertices.len() == 3));
    }

    #[test]
    fn corruption_schemes() {
        let tape = AdviceTape::new(vec![true, false, true], Provenance::Correct);
        assert_eq!(corrupt_advice(&tape, &CorruptionScheme::AllZeros, 1).bits, vec![false; 3]);
        assert_eq!(corrupt_advice(&tape, &CorruptionScheme::AllOnes, 1).bits, vec![true; 3]);
        assert_eq!(corrupt_advice(&tape, &CorruptionScheme::FlipEach(0.0), 9).bits, tape.bits);
        assert_eq!(corrupt_advice(&tape, &CorruptionScheme::FlipEach(1.0), 9).bits, vec![false, true, false]);
        assert_eq!(corrupt_advice(&tape, &CorruptionScheme::ShiftToClassLabel, 0).bits, vec![false, true, false]);
        let a = corrupt_advice(&tape, &CorruptionScheme::FlipEach(0.5), 42);
        assert_eq!(a, corrupt_advice(&tape, &CorruptionScheme::FlipEach(0.5), 42));
        assert_eq!(a.len(), 3);
    }

    #[test]
    fn gadget_copies_use_one_vertex_per_class() {
        let h = pat("C5");
        let out = gadget_duel(&h, ReinsertionMode::TrueTwin, Box::new(crate::online::GreedyOverlap), 100).unwrap();
        let all = find_copies(&out.graph.offline(), &h, None);
        assert!(!all.is_empty());
        for c in all {
            let mut classes: Vec<usize> = c.vertices.iter().map(|&v| out.gadget.class_of(v).unwrap()).collect();
            classes.sort_unstable();
            assert_eq!(classes, (0..5).collect::<Vec<_>>());
        }
    }
}
