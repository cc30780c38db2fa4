//! Online delayed connected H-node-deletion with untrusted one-bit predictions.
//!
//! An online graph is revealed vertex by vertex. Whenever an induced copy of the
//! fixed connected pattern H appears among the alive vertices, a strategy must
//! irrevocably delete vertices until the graph is H-free again. Each vertex
//! carries one advice bit claiming membership in a fixed optimal solution.
//!
//! Modules:
//! - [`graph`]: arrival-ordered graph with deletions.
//! - [`pattern`]: pattern classification and induced-copy enumeration.
//! - [`exact`]: offline optimum, correct advice, uniqueness checks.
//! - [`online`]: the run engine and the strategies (`ALG_p`, naive, `ALG_1`, greedy overlap).
//! - [`adversary`]: reinsertion gadgets, gadget chains, advice expansion and corruption.
//! - [`harness`]: instance format, bound verification, sweeps, CSV/JSON reports.

pub mod adversary;
pub mod advice;
pub mod exact;
pub mod graph;
pub mod harness;
pub mod online;
pub mod pattern;

use num_traits::{ToPrimitive, Zero};

/// Exact rational used for `p`, ratios and every bound comparison.
pub type Rational = num_rational::Ratio<i64>;

/// Parses `num/den`, an integer, or a finite decimal like `0.25` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let bad = || format!("not a rational: `{s}`");
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(format!("zero denominator in `{s}`"));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || frac.len() > 12 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let int: i64 = if int.is_empty() || int == "-" { 0 } else { int.parse().map_err(|_| bad())? };
        let den = 10i64.pow(frac.len() as u32);
        let f: i64 = frac.parse().map_err(|_| bad())?;
        let mag = Rational::new(int.abs() * den + f, den);
        return Ok(if neg { -mag } else { mag });
    }
    s.parse::<i64>().map(Rational::from_integer).map_err(|_| bad())
}

/// Decimal rendering for presentation only.
pub fn rational_to_f64(r: Rational) -> f64 {
    if r.is_zero() {
        0.0
    } else {
        r.to_f64().unwrap_or(f64::NAN)
    }
}
