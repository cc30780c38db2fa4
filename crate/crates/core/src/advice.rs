//! Per-vertex advice bits and where they came from.

use std::fmt;

/// How an advice tape was produced. Only [`Provenance::Correct`] tapes are held
/// to the consistency bound; everything else is checked against robustness.
#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    /// Encodes a fixed optimal solution of the full instance.
    Correct,
    /// Adversary class labels (bit 1 on every vertex of class 1).
    ClassLabel,
    Corrupted(CorruptionScheme),
    /// Read from a file or built by hand; no claim about correctness.
    Untrusted,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Correct => f.write_str("correct"),
            Provenance::ClassLabel => f.write_str("classwise"),
            Provenance::Corrupted(s) => write!(f, "corrupt:{s}"),
            Provenance::Untrusted => f.write_str("untrusted"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CorruptionScheme {
    /// Flip each bit independently with this probability.
    FlipEach(f64),
    AllZeros,
    AllOnes,
    /// Every 1 moves to the next arrival index, so advice points at a later vertex.
    ShiftToClassLabel,
}

impl fmt::Display for CorruptionScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorruptionScheme::FlipEach(p) => write!(f, "flip:{p}"),
            CorruptionScheme::AllZeros => f.write_str("zeros"),
            CorruptionScheme::AllOnes => f.write_str("ones"),
            CorruptionScheme::ShiftToClassLabel => f.write_str("shift"),
        }
    }
}

impl std::str::FromStr for CorruptionScheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "zeros" => Ok(Self::AllZeros),
            "ones" => Ok(Self::AllOnes),
            "shift" => Ok(Self::ShiftToClassLabel),
            _ => {
                let prob = s
                    .strip_prefix("flip:")
                    .and_then(|p| p.parse::<f64>().ok())
                    .ok_or_else(|| format!("unknown corruption scheme `{s}`"))?;
                if !(0.0..=1.0).contains(&prob) {
                    return Err(format!("flip probability {prob} outside [0,1]"));
                }
                Ok(Self::FlipEach(prob))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdviceTape {
    pub bits: Vec<bool>,
    pub provenance: Provenance,
}

impl AdviceTape {
    pub fn new(bits: Vec<bool>, provenance: Provenance) -> Self {
        Self { bits, provenance }
    }

    pub fn zeros(n: usize, provenance: Provenance) -> Self {
        Self::new(vec![false; n], provenance)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}
