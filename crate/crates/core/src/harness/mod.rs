//! Experiment plumbing: instance files, bound checks, report rows, sweeps.

pub mod generate;
pub mod instance;
pub mod report;
pub mod sweep;

use num_traits::{One, Zero};

use crate::advice::Provenance;
use crate::harness::instance::Instance;
use crate::online::RunReport;
use crate::Rational;

/// Multiplicative consistency bound `k − p(k−1)`.
pub fn consistency_bound(k: usize, p: Rational) -> Rational {
    let k = Rational::from_integer(k as i64);
    k - p * (k - Rational::one())
}

/// Multiplicative robustness bound `k + p/(1−p)`; `p` must be below 1.
pub fn robustness_bound(k: usize, p: Rational) -> Rational {
    Rational::from_integer(k as i64) + p / (Rational::one() - p)
}

/// `(bound, additive)` used for a run with the given advice provenance.
pub fn bounds_for(k: usize, p: Rational, provenance: &Provenance) -> (Rational, Rational) {
    match provenance {
        Provenance::Correct => (consistency_bound(k, p), Rational::from_integer(k as i64 - 1)),
        _ => (robustness_bound(k, p), Rational::one() / (Rational::one() - p)),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundCheck {
    pub bound: Rational,
    pub additive: Rational,
    /// `bound·opt + additive`.
    pub limit: Rational,
    /// `deletions − bound·opt`; at most `additive` on a pass.
    pub slack: Rational,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verification {
    Pass(BoundCheck),
    /// `witness` is the emitted replay file when a trace was supplied.
    Fail {
        check: BoundCheck,
        witness: Option<String>,
    },
    /// Not an ALG_p report, so no bound applies.
    Rejected(String),
}

impl Verification {
    pub fn passed(&self) -> bool {
        matches!(self, Verification::Pass(_))
    }

    pub fn check(&self) -> Option<&BoundCheck> {
        match self {
            Verification::Pass(c) | Verification::Fail { check: c, .. } => Some(c),
            Verification::Rejected(_) => None,
        }
    }
}

/// Checks `deletions_total ≤ bound·opt_cost + additive` in exact arithmetic.
///
/// Correct advice is held to `(k − p(k−1), k − 1)`, anything else to
/// `(k + p/(1−p), 1/(1−p))`.
pub fn verify_bounds(report: &RunReport, trace: Option<&Instance>) -> Verification {
    let Some(p) = report.algp_p else {
        return Verification::Rejected(format!("`{}` is not an ALG_p run", report.strategy));
    };
    if p < Rational::zero() || p >= Rational::one() {
        return Verification::Rejected(format!("p = {p} outside [0,1)"));
    }
    let (bound, additive) = bounds_for(report.k, p, &report.provenance);
    let opt = Rational::from_integer(report.opt_cost as i64);
    let deletions = Rational::from_integer(report.deletions_total as i64);
    let limit = bound * opt + additive;
    let check = BoundCheck { bound, additive, limit, slack: deletions - bound * opt, pass: deletions <= limit };
    if check.pass {
        Verification::Pass(check)
    } else {
        Verification::Fail { check, witness: trace.map(Instance::emit) }
    }
}

/// Runs [`verify_bounds`] and records the slack in the report.
pub fn verify_and_record(report: &mut RunReport, trace: Option<&Instance>) -> Verification {
    let v = verify_bounds(report, trace);
    report.additive_slack_used = v.check().map(|c| c.slack);
    v
}
