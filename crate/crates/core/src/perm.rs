//! Orderings of the ground set.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::set::{Element, GroundSet, SetMask};

/// A permutation `σ` of `[n]`, stored as the sequence `σ(1), …, σ(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    seq: Vec<Element>,
}

impl Permutation {
    pub fn identity(n: GroundSet) -> Self {
        Permutation {
            seq: n.elements().collect(),
        }
    }

    /// Parses the sequence `σ(1), …, σ(n)` from labels.
    pub fn from_labels(n: GroundSet, labels: &[usize]) -> Result<Self> {
        if labels.len() != n.size() {
            return Err(Error::Format(format!(
                "permutation has {} entries, expected {}",
                labels.len(),
                n.size()
            )));
        }
        let seq = labels
            .iter()
            .map(|&l| n.element(l))
            .collect::<Result<Vec<_>>>()?;
        if seq
            .iter()
            .map(|e| e.singleton())
            .fold(SetMask::EMPTY, SetMask::union)
            != n.full()
        {
            return Err(Error::Format(format!("{labels:?} is not a permutation")));
        }
        Ok(Permutation { seq })
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// `σ(i)` for `1 ≤ i ≤ n`.
    pub fn at(&self, i: usize) -> Element {
        self.seq[i - 1]
    }

    pub fn as_slice(&self) -> &[Element] {
        &self.seq
    }

    /// `{σ(1), …, σ(k)}`.
    pub fn prefix_set(&self, k: usize) -> SetMask {
        self.seq[..k].iter().fold(SetMask::EMPTY, |m, e| m.with(*e))
    }

    /// Image of a set under the relabelling `i ↦ σ(i)`.
    pub fn image(&self, set: SetMask) -> SetMask {
        set.elements()
            .fold(SetMask::EMPTY, |m, e| m.with(self.seq[e.bit() as usize]))
    }
}

/// All `n!` permutations of `[n]` in lexicographic order.
#[derive(Debug, Clone, Copy)]
pub struct PermutationSet {
    n: GroundSet,
}

impl PermutationSet {
    pub fn new(n: GroundSet) -> Self {
        PermutationSet { n }
    }

    pub fn len(&self) -> usize {
        factorial(self.n.size()) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> impl Iterator<Item = Permutation> {
        self.n
            .elements()
            .permutations(self.n.size())
            .map(|seq| Permutation { seq })
    }
}

/// `k!` for `k ≤ 20`.
pub fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}
