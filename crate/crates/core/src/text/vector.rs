use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Norm {
    L1,
    L2,
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Norm::L1 => "l1",
            Norm::L2 => "l2",
        })
    }
}

impl FromStr for Norm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "l1" => Ok(Norm::L1),
            "l2" => Ok(Norm::L2),
            other => Err(format!("unknown norm {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormState {
    RawCounts,
    Normalized(Norm),
}

/// Token → weight. Iteration is in token order, which fixes the summation
/// order of every distance computed over it.
#[derive(Debug, Clone, PartialEq)]
pub struct TermVector {
    weights: BTreeMap<String, f64>,
    state: NormState,
}

impl Default for TermVector {
    fn default() -> Self {
        TermVector {
            weights: BTreeMap::new(),
            state: NormState::RawCounts,
        }
    }
}

impl TermVector {
    pub fn from_tokens<I, S>(tokens: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut weights = BTreeMap::new();
        for t in tokens {
            *weights.entry(t.into()).or_insert(0.0) += 1.0;
        }
        TermVector {
            weights,
            state: NormState::RawCounts,
        }
    }

    /// Builds a raw-count vector from explicit counts. Zero counts are dropped.
    pub fn from_counts<'a>(counts: impl IntoIterator<Item = (&'a str, u32)>) -> Self {
        let weights = counts
            .into_iter()
            .filter(|&(_, c)| c > 0)
            .map(|(t, c)| (t.to_string(), f64::from(c)))
            .collect();
        TermVector {
            weights,
            state: NormState::RawCounts,
        }
    }

    pub fn state(&self) -> NormState {
        self.state
    }

    pub fn get(&self, token: &str) -> Option<f64> {
        self.weights.get(token).copied()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn tokens(&self) -> impl Iterator<Item = &str> {
        self.weights.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.weights.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn magnitude(&self, norm: Norm) -> f64 {
        match norm {
            Norm::L1 => self.weights.values().map(|w| w.abs()).sum(),
            Norm::L2 => self.weights.values().map(|w| w * w).sum::<f64>().sqrt(),
        }
    }
}

/// Scales `v` to unit L1 sum or unit L2 magnitude. Empty stays empty.
pub fn normalize(v: &TermVector, norm: Norm) -> TermVector {
    let mag = v.magnitude(norm);
    let weights = if mag > 0.0 {
        v.weights
            .iter()
            .map(|(k, w)| (k.clone(), w / mag))
            .collect()
    } else {
        BTreeMap::new()
    };
    TermVector {
        weights,
        state: NormState::Normalized(norm),
    }
}
