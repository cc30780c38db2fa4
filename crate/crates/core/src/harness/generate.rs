//! Seeded random instances and advice sources.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adversary::corrupt_advice;
use crate::advice::{AdviceTape, CorruptionScheme, Provenance};
use crate::exact::correct_advice;
use crate::graph::{OnlineGraph, VertexId};
use crate::harness::instance::Instance;
use crate::pattern::PatternGraph;

/// Where the advice of a generated instance comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum AdviceSource {
    /// Bit 1 exactly on the lexicographically least optimum.
    Correct,
    /// Adversary class labels; only meaningful for duels.
    Classwise,
    /// Correct advice, then corrupted.
    Corrupt { scheme: CorruptionScheme, seed: u64 },
}

impl std::fmt::Display for AdviceSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AdviceSource::Correct => f.write_str("correct"),
            AdviceSource::Classwise => f.write_str("classwise"),
            AdviceSource::Corrupt { scheme, seed } => write!(f, "corrupt:{scheme}@{seed}"),
        }
    }
}

impl std::str::FromStr for AdviceSource {
    type Err = String;

    /// `correct`, `classwise`, or `corrupt:<scheme>[@seed]` with schemes
    /// `zeros`, `ones`, `shift`, `flip:<prob>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "correct" => return Ok(AdviceSource::Correct),
            "classwise" => return Ok(AdviceSource::Classwise),
            _ => {}
        }
        let rest = s.strip_prefix("corrupt:").ok_or_else(|| format!("unknown advice source `{s}`"))?;
        let (scheme, seed) = match rest.rsplit_once('@') {
            Some((scheme, seed)) => (scheme, seed.parse().map_err(|_| format!("bad seed in `{s}`"))?),
            None => (rest, 0),
        };
        Ok(AdviceSource::Corrupt { scheme: scheme.parse()?, seed })
    }
}

/// Erdős–Rényi graph in arrival order: each earlier vertex is a neighbor with probability `edge_prob`.
pub fn random_graph(n: usize, edge_prob: f64, rng: &mut impl Rng) -> OnlineGraph {
    let mut g = OnlineGraph::new();
    for v in 0..n {
        let nbrs: Vec<VertexId> = (0..v).filter(|_| rng.gen_bool(edge_prob)).map(VertexId).collect();
        g.add_vertex(&nbrs, false).expect("backward neighbors only");
    }
    g
}

/// Applies an advice source to a fixed graph. `Classwise` has no meaning here and yields zeros.
pub fn advice_for(g: &OnlineGraph, h: &PatternGraph, source: &AdviceSource) -> AdviceTape {
    match source {
        AdviceSource::Correct => correct_advice(g, h),
        AdviceSource::Classwise => AdviceTape::zeros(g.len(), Provenance::ClassLabel),
        AdviceSource::Corrupt { scheme, seed } => corrupt_advice(&correct_advice(g, h), scheme, *seed),
    }
}

/// A seeded random instance with `n` vertices.
pub fn random_instance(h: &PatternGraph, n: usize, edge_prob: f64, source: &AdviceSource, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_graph(n, edge_prob, &mut rng);
    let tape = advice_for(&g, h, source);
    Instance::from_graph(&g, h, tape.provenance.clone()).with_advice(tape)
}
