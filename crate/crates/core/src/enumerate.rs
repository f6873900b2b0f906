//! Exhaustive generation of maximal intersecting families and of downsets,
//! plus canonical forms under relabelling of the ground set.
//!
//! Both generators work on membership words of at most 128 bits, so they are
//! limited to `n ≤ 7`.

use crate::error::Result;
use crate::exec::Exec;
use crate::family::Family;
use crate::perm::PermutationSet;
use crate::set::{GroundSet, SetMask};

pub const MAX_ENUM_N: usize = 7;
pub const MAX_DOWNSET_N: usize = 5;

/// Complementary pairs `(A, A^c)` of `[n]`, with `A` the smaller mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplementaryPairTable {
    n: GroundSet,
    pairs: Vec<(SetMask, SetMask)>,
}

impl ComplementaryPairTable {
    /// Pairs ordered by decreasing `|A|`, then increasing mask.
    pub fn new(n: GroundSet) -> Self {
        let mut pairs: Vec<(SetMask, SetMask)> = n
            .masks()
            .map(|a| (a, a.complement(n)))
            .filter(|(a, c)| a < c)
            .collect();
        pairs.sort_by(|x, y| y.0.len().cmp(&x.0.len()).then(x.0.cmp(&y.0)));
        ComplementaryPairTable { n, pairs }
    }

    pub fn reversed(mut self) -> Self {
        self.pairs.reverse();
        self
    }

    pub fn ground(&self) -> GroundSet {
        self.n
    }

    pub fn pairs(&self) -> &[(SetMask, SetMask)] {
        &self.pairs
    }
}

/// Bitset tables of supersets and subsets for every mask of `[n]`.
struct Closures {
    up: Vec<u128>,
    down: Vec<u128>,
}

impl Closures {
    fn new(n: GroundSet) -> Self {
        let masks: Vec<SetMask> = n.masks().collect();
        let row = |keep: &dyn Fn(SetMask) -> bool| -> u128 {
            masks
                .iter()
                .filter(|m| keep(**m))
                .fold(0, |acc, m| acc | 1 << m.index())
        };
        let up = masks.iter().map(|&x| row(&|y| x.is_subset(y))).collect();
        let down = masks.iter().map(|&x| row(&|y| y.is_subset(x))).collect();
        Closures { up, down }
    }
}

#[derive(Clone, Copy)]
struct PairState {
    inn: u128,
    out: u128,
}

struct PairSearch<'a> {
    n: GroundSet,
    pairs: &'a [(SetMask, SetMask)],
    closures: Closures,
}

impl PairSearch<'_> {
    /// Puts `x` in the family: all supersets in, all subsets of `x^c` out.
    fn choose(&self, s: PairState, x: SetMask) -> Option<PairState> {
        let up = self.closures.up[x.index()];
        let down = self.closures.down[x.complement(self.n).index()];
        if up & down != 0 || up & s.out != 0 || down & s.inn != 0 {
            return None;
        }
        Some(PairState {
            inn: s.inn | up,
            out: s.out | down,
        })
    }

    fn next_open(&self, s: PairState, from: usize) -> Option<usize> {
        (from..self.pairs.len()).find(|&i| {
            let bit = 1u128 << self.pairs[i].0.index();
            (s.inn | s.out) & bit == 0
        })
    }

    fn branches(&self, s: PairState, i: usize) -> impl Iterator<Item = PairState> + '_ {
        let (a, c) = self.pairs[i];
        [a, c].into_iter().filter_map(move |x| self.choose(s, x))
    }

    fn run(&self, s: PairState, from: usize, out: &mut Vec<u128>) {
        match self.next_open(s, from) {
            None => out.push(s.inn),
            Some(i) => {
                for t in self.branches(s, i) {
                    self.run(t, i + 1, out);
                }
            }
        }
    }

    /// Expands the search breadth-first until at least `target` subtrees exist.
    fn frontier(&self, target: usize) -> (Vec<(PairState, usize)>, Vec<u128>) {
        let mut layer = vec![(PairState { inn: 0, out: 0 }, 0usize)];
        let mut done = Vec::new();
        while layer.len() < target {
            let mut next = Vec::new();
            let mut grew = false;
            for (s, from) in layer {
                match self.next_open(s, from) {
                    None => done.push(s.inn),
                    Some(i) => {
                        grew = true;
                        next.extend(self.branches(s, i).map(|t| (t, i + 1)));
                    }
                }
            }
            layer = next;
            if !grew {
                break;
            }
        }
        (layer, done)
    }
}

/// All maximal intersecting families of `P([n])`, `1 ≤ n ≤ 7`, sorted by
/// membership bitset.
pub fn enumerate_maximal_intersecting(n: usize) -> Result<Vec<Family>> {
    enumerate_maximal_intersecting_with(n, Exec::default())
}

pub fn enumerate_maximal_intersecting_with(n: usize, exec: Exec) -> Result<Vec<Family>> {
    let n = GroundSet::bounded(n, MAX_ENUM_N)?;
    Ok(enumerate_from_table(&ComplementaryPairTable::new(n), exec))
}

/// Runs the pair backtracking in the given pair order.
pub fn enumerate_from_table(table: &ComplementaryPairTable, exec: Exec) -> Vec<Family> {
    let n = table.ground();
    assert!(n.size() <= MAX_ENUM_N);
    let search = PairSearch {
        n,
        pairs: &table.pairs,
        closures: Closures::new(n),
    };
    let (frontier, mut bits) = search.frontier(if exec.is_parallel() { 256 } else { 1 });
    let parts = exec.map(&frontier, |&(s, from)| {
        let mut out = Vec::new();
        search.run(s, from, &mut out);
        out
    });
    bits.extend(parts.into_iter().flatten());
    bits.sort_unstable();
    bits.into_iter()
        .map(|b| Family::from_bits128(n, b))
        .collect()
}

/// All subset-closed families of `P([n])`, the empty family included,
/// `1 ≤ n ≤ 5`, sorted by membership bitset.
pub fn enumerate_downsets(n: usize) -> Result<Vec<Family>> {
    let n = GroundSet::bounded(n, MAX_DOWNSET_N)?;
    let closures = Closures::new(n);
    let mut order: Vec<SetMask> = n.masks().collect();
    order.sort_by(|x, y| y.len().cmp(&x.len()).then(x.cmp(y)));

    fn rec(order: &[SetMask], c: &Closures, inn: u128, out: u128, acc: &mut Vec<u128>) {
        let Some((i, x)) = order
            .iter()
            .enumerate()
            .find(|(_, x)| (inn | out) >> x.index() & 1 == 0)
        else {
            acc.push(inn);
            return;
        };
        let rest = &order[i + 1..];
        let down = c.down[x.index()];
        if down & out == 0 {
            rec(rest, c, inn | down, out, acc);
        }
        let up = c.up[x.index()];
        if up & inn == 0 {
            rec(rest, c, inn, out | up, acc);
        }
    }

    let mut bits = Vec::new();
    rec(&order, &closures, 0, 0, &mut bits);
    bits.sort_unstable();
    Ok(bits
        .into_iter()
        .map(|b| Family::from_bits128(n, b))
        .collect())
}

/// Canonical forms under relabelling of `[n]`, `n ≤ 7`.
///
/// The canonical form is the relabelling with the least membership bitset.
pub struct Canonicalizer {
    n: GroundSet,
    images: Vec<Vec<u8>>,
}

impl Canonicalizer {
    pub fn new(n: GroundSet) -> Result<Self> {
        let n = GroundSet::bounded(n.size(), MAX_ENUM_N)?;
        let images = PermutationSet::new(n)
            .iter()
            .map(|p| n.masks().map(|m| p.image(m).bits() as u8).collect())
            .collect();
        Ok(Canonicalizer { n, images })
    }

    pub fn canonicalize(&self, f: &Family) -> Family {
        assert_eq!(f.ground(), self.n, "family over a different ground set");
        let members: Vec<usize> = f.members().map(SetMask::index).collect();
        let best = self
            .images
            .iter()
            .map(|img| members.iter().fold(0u128, |acc, &m| acc | 1 << img[m]))
            .min()
            .unwrap_or(0);
        Family::from_bits128(self.n, best)
    }
}

/// One-off canonical form; build a [`Canonicalizer`] when canonicalizing many
/// families over the same ground set.
pub fn canonicalize(f: &Family) -> Result<Family> {
    Ok(Canonicalizer::new(f.ground())?.canonicalize(f))
}
