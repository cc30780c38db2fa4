//! Consistency/robustness sweep over a grid of `p`.
//!
//! For each `p`, ALG_p is measured on
//! - consistency: a seeded random family with correct advice, plus the
//!   expanded adversary chain (whose class labels become the unique correct advice);
//! - robustness: the same family under each corruption scheme, plus the
//!   adversary chain with class-label advice.
//!
//! The consistency estimate is the expanded chain's ratio; small random graphs
//! only test the bound, since their additive constant swamps the ratio. The
//! robustness estimate is the maximum over all robustness runs. Every run is
//! checked against its bound in exact arithmetic.

use rayon::prelude::*;
use serde::Serialize;

use crate::adversary::{
    chain_duel_with_opt, expand_to_correct, spanning_copies, AdviceRule, ChainConfig, ChainKind, OptMode,
    ReinsertionMode,
};
use crate::advice::{AdviceTape, CorruptionScheme, Provenance};
use crate::graph::{OnlineGraph, VertexId};
use crate::harness::generate::{random_instance, AdviceSource};
use crate::harness::instance::Instance;
use crate::harness::report::{decimal, render, Format, ReportRow};
use crate::harness::{consistency_bound, robustness_bound, verify_and_record, Verification};
use crate::online::{check_counter_lemmas, run_policy, AlgP, RunReport};
use crate::pattern::{first_copy_in, PatternGraph};
use crate::Rational;

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub pattern: PatternGraph,
    pub ps: Vec<Rational>,
    pub mode: ReinsertionMode,
    pub chain: ChainKind,
    pub m: usize,
    /// Reveal budget per gadget.
    pub budget: usize,
    pub family_size: usize,
    pub family_n: usize,
    pub edge_prob: f64,
    pub schemes: Vec<CorruptionScheme>,
    pub seed: u64,
}

impl SweepConfig {
    /// Defaults for a pattern: the chain it supports, `m = 20`, 20 random graphs on 10 vertices.
    pub fn for_pattern(pattern: PatternGraph, ps: Vec<Rational>) -> Option<Self> {
        let mode = ReinsertionMode::for_pattern(&pattern)?;
        let t = pattern.traits();
        let chain = if t.is_two_connected {
            ChainKind::SharedAdvice1Vertex
        } else if t.is_path && pattern.k() >= 5 {
            ChainKind::CompleteJoin
        } else {
            ChainKind::Disjoint
        };
        Some(SweepConfig {
            pattern,
            ps,
            mode,
            chain,
            m: 20,
            budget: 1000,
            family_size: 20,
            family_n: 10,
            edge_prob: 0.5,
            schemes: vec![
                CorruptionScheme::AllZeros,
                CorruptionScheme::AllOnes,
                CorruptionScheme::ShiftToClassLabel,
                CorruptionScheme::FlipEach(0.3),
            ],
            seed: 1,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub p: Rational,
    pub consistency_ratio: Option<Rational>,
    pub robustness_ratio: Option<Rational>,
    pub consistency_bound: Rational,
    pub robustness_bound: Rational,
    pub consistency_pass: bool,
    pub robustness_pass: bool,
    /// Set across the whole sweep, in ascending `p`.
    pub consistency_non_increasing: bool,
    pub robustness_non_decreasing: bool,
    pub runs: usize,
    pub invariant_violations: usize,
    pub error: Option<String>,
}

/// A checked run with the static trace that reproduces it.
pub struct SweepRun {
    pub run_id: String,
    pub report: RunReport,
    pub trace: Instance,
    pub verdict: Verification,
    pub m: usize,
}

pub struct SweepOutput {
    pub rows: Vec<SweepRow>,
    pub runs: Vec<SweepRun>,
}

impl SweepOutput {
    pub fn all_pass(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.error.is_none() && r.consistency_pass && r.robustness_pass && r.invariant_violations == 0)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SweepRun> {
        self.runs.iter().filter(|r| !r.verdict.passed())
    }

    pub fn report_rows(&self) -> Vec<ReportRow> {
        self.runs.iter().map(|r| ReportRow::new(r.run_id.clone(), &r.report, r.m, &r.verdict)).collect()
    }

    pub fn render(&self, format: Format) -> String {
        let flat: Vec<FlatRow> = self.rows.iter().map(FlatRow::from).collect();
        render(&flat, format, &SWEEP_COLUMNS)
    }
}

pub const SWEEP_COLUMNS: [&str; 16] = [
    "p_num",
    "p_den",
    "p",
    "consistency_ratio",
    "consistency_bound",
    "consistency_pass",
    "robustness_ratio",
    "robustness_bound",
    "robustness_pass",
    "consistency_non_increasing",
    "robustness_non_decreasing",
    "consistency_ratio_exact",
    "robustness_ratio_exact",
    "runs",
    "invariant_violations",
    "error",
];

#[derive(Serialize)]
struct FlatRow {
    p_num: i64,
    p_den: i64,
    p: String,
    consistency_ratio: Option<String>,
    consistency_bound: String,
    consistency_pass: bool,
    robustness_ratio: Option<String>,
    robustness_bound: String,
    robustness_pass: bool,
    consistency_non_increasing: bool,
    robustness_non_decreasing: bool,
    consistency_ratio_exact: Option<String>,
    robustness_ratio_exact: Option<String>,
    runs: usize,
    invariant_violations: usize,
    error: Option<String>,
}

impl From<&SweepRow> for FlatRow {
    fn from(r: &SweepRow) -> Self {
        FlatRow {
            p_num: *r.p.numer(),
            p_den: *r.p.denom(),
            p: decimal(r.p),
            consistency_ratio: r.consistency_ratio.map(decimal),
            consistency_bound: decimal(r.consistency_bound),
            consistency_pass: r.consistency_pass,
            robustness_ratio: r.robustness_ratio.map(decimal),
            robustness_bound: decimal(r.robustness_bound),
            robustness_pass: r.robustness_pass,
            consistency_non_increasing: r.consistency_non_increasing,
            robustness_non_decreasing: r.robustness_non_decreasing,
            consistency_ratio_exact: r.consistency_ratio.map(|x| x.to_string()),
            robustness_ratio_exact: r.robustness_ratio.map(|x| x.to_string()),
            runs: r.runs,
            invariant_violations: r.invariant_violations,
            error: r.error.clone(),
        }
    }
}

#[derive(Default)]
struct Tally {
    consistency: Option<Rational>,
    robustness: Option<Rational>,
    consistency_pass: bool,
    robustness_pass: bool,
    violations: usize,
    runs: Vec<SweepRun>,
}

impl Tally {
    fn new() -> Self {
        Tally { consistency_pass: true, robustness_pass: true, ..Default::default() }
    }

    fn record(&mut self, run_id: String, mut report: RunReport, trace: Instance, m: usize, p: Rational, measure: bool) {
        let verdict = verify_and_record(&mut report, Some(&trace));
        self.violations += report.invariant_violations.len() + check_counter_lemmas(&report, p).len();
        let consistency = report.provenance == Provenance::Correct;
        let (ratio, pass) = if consistency {
            (&mut self.consistency, &mut self.consistency_pass)
        } else {
            (&mut self.robustness, &mut self.robustness_pass)
        };
        if measure {
            *ratio = Some(ratio.map_or(report.ratio, |r| r.max(report.ratio)));
        }
        *pass &= verdict.passed();
        self.runs.push(SweepRun { run_id, report, trace, verdict, m });
    }
}

/// Opt of an expanded graph: the advice-1 set solves it, and the attached
/// copies give as many vertex-disjoint copies, so it is exactly the number of ones.
fn expanded_opt(g: &OnlineGraph, h: &PatternGraph, tape: &AdviceTape) -> Result<usize, String> {
    let rest: Vec<bool> = tape.bits.iter().map(|b| !b).collect();
    match first_copy_in(g, h, &rest) {
        None => Ok(tape.ones()),
        Some(c) => Err(format!("advice-1 set misses copy {:?}", c.vertices)),
    }
}

/// Chain opt: the designated vertices must hit every copy and no copy may span gadgets;
/// otherwise fall back to the exact solver.
fn chain_opt_mode(
    h: &PatternGraph,
    cfg: &SweepConfig,
    chain: ChainConfig,
    p: Rational,
) -> Result<crate::adversary::ChainOutcome, String> {
    let policy = Box::new(AlgP::new(p).map_err(|e| e.to_string())?);
    let out =
        chain_duel_with_opt(h, chain, cfg.mode, policy, cfg.budget, OptMode::PerGadget).map_err(|e| e.to_string())?;
    let designated: Vec<VertexId> =
        out.gadgets.iter().filter_map(|g| g.designated_class.map(|c| g.classes[c][0])).collect();
    let mut rest = vec![true; out.graph.len()];
    for v in &designated {
        rest[v.0] = false;
    }
    if first_copy_in(&out.graph, h, &rest).is_none() && spanning_copies(&out.graph, h, &out.gadgets).is_empty() {
        return Ok(out);
    }
    let policy = Box::new(AlgP::new(p).map_err(|e| e.to_string())?);
    chain_duel_with_opt(h, chain, cfg.mode, policy, cfg.budget, OptMode::Exact).map_err(|e| e.to_string())
}

fn sweep_row(cfg: &SweepConfig, p: Rational) -> (SweepRow, Vec<SweepRun>) {
    let h = &cfg.pattern;
    let k = h.k();
    let mut row = SweepRow {
        p,
        consistency_ratio: None,
        robustness_ratio: None,
        consistency_bound: consistency_bound(k, p),
        robustness_bound: robustness_bound(k, p),
        consistency_pass: false,
        robustness_pass: false,
        consistency_non_increasing: true,
        robustness_non_decreasing: true,
        runs: 0,
        invariant_violations: 0,
        error: None,
    };
    let mut tally = Tally::new();
    let result = (|| -> Result<(), String> {
        let run = |inst: &Instance| -> Result<RunReport, String> {
            let policy = Box::new(AlgP::new(p).map_err(|e| e.to_string())?);
            run_policy(inst, policy, None).map_err(|e| e.to_string())
        };
        for i in 0..cfg.family_size {
            let seed = cfg.seed.wrapping_mul(1_000_003).wrapping_add(i as u64);
            let inst = random_instance(h, cfg.family_n, cfg.edge_prob, &AdviceSource::Correct, seed);
            tally.record(format!("p={p}/family{i}/correct"), run(&inst)?, inst.clone(), 0, p, false);
            for scheme in &cfg.schemes {
                let tape = crate::adversary::corrupt_advice(&inst.advice, scheme, seed);
                let bad = inst.clone().with_advice(tape);
                tally.record(format!("p={p}/family{i}/corrupt:{scheme}"), run(&bad)?, bad, 0, p, true);
            }
        }

        let chain = ChainConfig { m: cfg.m, kind: cfg.chain, advice_rule: AdviceRule::Class1GetsOne };
        let out = chain_opt_mode(h, cfg, chain, p)?;
        if out.unbounded {
            return Err(format!("chain gadget exceeded the reveal budget {}", cfg.budget));
        }
        let (big, big_tape) = expand_to_correct(&out.graph, out.tape(), h).map_err(|e| e.to_string())?;
        tally.record(format!("p={p}/chain"), out.report, out.instance, cfg.m, p, true);

        let opt = expanded_opt(&big, h, &big_tape)?;
        let expanded = Instance::from_graph(&big, h, Provenance::Correct).with_advice(big_tape);
        let policy = Box::new(AlgP::new(p).map_err(|e| e.to_string())?);
        let report = run_policy(&expanded, policy, Some(opt)).map_err(|e| e.to_string())?;
        tally.record(format!("p={p}/chain-expanded"), report, expanded, cfg.m, p, true);
        Ok(())
    })();
    row.error = result.err();
    row.consistency_ratio = tally.consistency;
    row.robustness_ratio = tally.robustness;
    row.consistency_pass = tally.consistency_pass && row.error.is_none();
    row.robustness_pass = tally.robustness_pass && row.error.is_none();
    row.invariant_violations = tally.violations;
    row.runs = tally.runs.len();
    (row, tally.runs)
}

/// Runs the grid in parallel; rows come back in ascending `p` regardless of scheduling.
pub fn sweep(cfg: &SweepConfig) -> SweepOutput {
    let mut ps = cfg.ps.clone();
    ps.sort();
    ps.dedup();
    let results: Vec<(SweepRow, Vec<SweepRun>)> = ps.par_iter().map(|&p| sweep_row(cfg, p)).collect();
    let (mut rows, runs): (Vec<SweepRow>, Vec<Vec<SweepRun>>) = results.into_iter().unzip();

    let consistency: Vec<Option<Rational>> = rows.iter().map(|r| r.consistency_ratio).collect();
    let robustness: Vec<Option<Rational>> = rows.iter().map(|r| r.robustness_ratio).collect();
    let non_increasing = consistency.windows(2).all(|w| match (w[0], w[1]) {
        (Some(a), Some(b)) => b <= a,
        _ => true,
    });
    let non_decreasing = robustness.windows(2).all(|w| match (w[0], w[1]) {
        (Some(a), Some(b)) => b >= a,
        _ => true,
    });
    for r in &mut rows {
        r.consistency_non_increasing = non_increasing;
        r.robustness_non_decreasing = non_decreasing;
    }
    SweepOutput { rows, runs: runs.into_iter().flatten().collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_triangle_sweep() {
        let mut cfg = SweepConfig::for_pattern(
            PatternGraph::builtin("K3").unwrap(),
            vec![Rational::new(1, 2), Rational::new(0, 1)],
        )
        .unwrap();
        cfg.m = 3;
        cfg.family_size = 3;
        cfg.family_n = 7;
        let out = sweep(&cfg);
        assert_eq!(out.rows.len(), 2);
        assert_eq!(out.rows[0].p, Rational::new(0, 1));
        assert_eq!(
            (out.rows[0].consistency_bound, out.rows[0].robustness_bound),
            (Rational::from_integer(3), Rational::from_integer(3))
        );
        assert!(out.all_pass(), "{:?}", out.rows);
        assert_eq!(out.render(Format::Csv), sweep(&cfg).render(Format::Csv));
    }
}
