//! Line-oriented instance files.
//!
//! ```text
//! hdel v1
//! pattern K3
//! v 1
//! v 0 0
//! v 0 0 1
//! ```
//!
//! One `v` line per vertex in arrival order: the advice bit, then the indices of
//! earlier neighbors. Canonical files list neighbors ascending, separated by
//! single spaces, with LF line endings; they round-trip byte for byte.

use std::fmt::Write as _;

use thiserror::Error;

use crate::advice::{AdviceTape, Provenance};
use crate::graph::{OnlineGraph, VertexId};
use crate::pattern::PatternGraph;

pub const HEADER: &str = "hdel v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("vertex {vertex}: {reason}")]
    Stream { vertex: usize, reason: String },
}

/// A static reveal stream: pattern, backward neighbor lists, one advice bit per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub pattern: PatternGraph,
    pub neighbors: Vec<Vec<VertexId>>,
    pub advice: AdviceTape,
}

impl Instance {
    pub fn len(&self) -> usize {
        self.neighbors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neighbors.is_empty()
    }

    /// Every neighbor precedes its vertex, lists are strictly ascending, advice covers every vertex.
    pub fn validate(&self) -> Result<(), InstanceError> {
        if self.advice.len() != self.neighbors.len() {
            return Err(InstanceError::Stream {
                vertex: self.neighbors.len().min(self.advice.len()),
                reason: format!("{} advice bits for {} vertices", self.advice.len(), self.neighbors.len()),
            });
        }
        for (v, nbrs) in self.neighbors.iter().enumerate() {
            if let Some(&u) = nbrs.iter().find(|u| u.0 >= v) {
                return Err(InstanceError::Stream { vertex: v, reason: format!("neighbor {u} is not revealed yet") });
            }
            if nbrs.windows(2).any(|w| w[0] >= w[1]) {
                return Err(InstanceError::Stream { vertex: v, reason: "neighbors not strictly ascending".into() });
            }
        }
        Ok(())
    }

    /// The full revealed graph with advice attached and nothing deleted.
    pub fn to_graph(&self) -> Result<OnlineGraph, InstanceError> {
        self.validate()?;
        let mut g = OnlineGraph::new();
        for (nbrs, &bit) in self.neighbors.iter().zip(&self.advice.bits) {
            g.add_vertex(nbrs, bit).expect("validated stream");
        }
        Ok(g)
    }

    /// Captures the structure and advice of `g` (deletions are dropped).
    pub fn from_graph(g: &OnlineGraph, pattern: &PatternGraph, provenance: Provenance) -> Self {
        Instance {
            pattern: pattern.clone(),
            neighbors: g.vertices().map(|v| g.backward_neighbors(v).to_vec()).collect(),
            advice: AdviceTape::new(g.advice_bits().to_vec(), provenance),
        }
    }

    pub fn with_advice(mut self, advice: AdviceTape) -> Self {
        self.advice = advice;
        self
    }

    pub fn emit(&self) -> String {
        let mut out = String::new();
        out.push_str(HEADER);
        out.push('\n');
        let _ = writeln!(out, "pattern {}", self.pattern.spec_string());
        for (nbrs, &bit) in self.neighbors.iter().zip(&self.advice.bits) {
            out.push_str(if bit { "v 1" } else { "v 0" });
            for u in nbrs {
                let _ = write!(out, " {u}");
            }
            out.push('\n');
        }
        out
    }

    /// Parses an instance; advice read from a file is [`Provenance::Untrusted`].
    /// Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, InstanceError> {
        let err = |line: usize, reason: String| InstanceError::Parse { line, reason };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));

        match lines.next() {
            Some((_, l)) if l.trim() == HEADER => {}
            Some((n, l)) => return Err(err(n, format!("expected `{HEADER}`, found `{l}`"))),
            None => return Err(err(1, "empty input".into())),
        }
        let pattern = match lines.next() {
            Some((n, l)) => {
                let spec = l.trim().strip_prefix("pattern ").ok_or_else(|| err(n, "expected `pattern ...`".into()))?;
                PatternGraph::parse(spec).map_err(|e| err(n, e.to_string()))?
            }
            None => return Err(err(2, "missing pattern line".into())),
        };

        let mut neighbors = Vec::new();
        let mut bits = Vec::new();
        for (n, l) in lines {
            let mut fields = l.split_whitespace();
            if fields.next() != Some("v") {
                return Err(err(n, format!("expected a `v` line, found `{l}`")));
            }
            let bit = match fields.next() {
                Some("0") => false,
                Some("1") => true,
                other => return Err(err(n, format!("advice must be 0 or 1, found {other:?}"))),
            };
            let index = neighbors.len();
            let mut nbrs = Vec::new();
            for f in fields {
                let u: usize = f.parse().map_err(|_| err(n, format!("bad neighbor index `{f}`")))?;
                if u >= index {
                    return Err(err(n, format!("vertex {index} references unrevealed vertex {u}")));
                }
                nbrs.push(VertexId(u));
            }
            nbrs.sort_unstable();
            if nbrs.windows(2).any(|w| w[0] == w[1]) {
                return Err(err(n, format!("vertex {index} lists a neighbor twice")));
            }
            neighbors.push(nbrs);
            bits.push(bit);
        }
        Ok(Instance { pattern, neighbors, advice: AdviceTape::new(bits, Provenance::Untrusted) })
    }
}
