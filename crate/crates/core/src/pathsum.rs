//! Shift operators, partial compositions along a permutation, and the path
//! sum `Λ` on the edges of the hypercube `P([n])`.
//!
//! Edge values are stored up-positive: a move `A → A ∪ {a}` adds `+1` to the
//! edge `(A, A ∪ {a})` and a move `A ∪ {a} → A` adds `−1` to the same edge.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::family::{Family, LocalFamily};
use crate::perm::{factorial, Permutation, PermutationSet};
use crate::set::{Element, GroundSet, SetMask};

pub const MAX_BRUTEFORCE_N: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShiftTag {
    /// `A ↦ A ⊕ {a}`.
    Alpha,
    /// `A ↦ A ∪ {a}` when that set is absent from the family, else `A`.
    Beta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Shift {
    pub tag: ShiftTag,
    pub axis: Element,
}

impl Shift {
    pub fn alpha(axis: Element) -> Self {
        Shift {
            tag: ShiftTag::Alpha,
            axis,
        }
    }

    pub fn beta(axis: Element) -> Self {
        Shift {
            tag: ShiftTag::Beta,
            axis,
        }
    }

    /// Image of a single member of `family`.
    #[inline]
    pub fn image(self, family: &Family, a: SetMask) -> SetMask {
        match self.tag {
            ShiftTag::Alpha => a.toggle(self.axis),
            ShiftTag::Beta => {
                let up = a.with(self.axis);
                if family.contains(up) {
                    a
                } else {
                    up
                }
            }
        }
    }
}

/// One member's move `from → to` under a shift; `from == to` for a fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Move {
    pub from: SetMask,
    pub to: SetMask,
}

/// Applies a shift to every member, returning the shifted family and the
/// per-member moves in increasing order of `from`.
pub fn apply_shift(shift: Shift, family: &Family) -> Result<(Family, Vec<Move>)> {
    family.ground().element(shift.axis.label())?;
    Ok(apply_unchecked(shift, family))
}

fn apply_unchecked(shift: Shift, family: &Family) -> (Family, Vec<Move>) {
    let moves: Vec<Move> = family
        .members()
        .map(|from| Move {
            from,
            to: shift.image(family, from),
        })
        .collect();
    let after = Family::from_masks(family.ground(), moves.iter().map(|m| m.to))
        .expect("shift images stay inside the ground set");
    debug_assert_eq!(after.len(), family.len(), "shift must be injective");
    (after, moves)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub shift: Shift,
    pub before: Family,
    pub moves: Vec<Move>,
    pub after: Family,
}

/// The partial compositions `Θ^0(F), …, Θ^k(F)` with the moves taken at each
/// step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathTrace {
    pub start: Family,
    pub steps: Vec<TraceStep>,
}

impl PathTrace {
    /// `Θ^k(F)`.
    pub fn end(&self) -> &Family {
        self.steps.last().map_or(&self.start, |s| &s.after)
    }

    /// Every family along the trace, `Θ^0(F)` first.
    pub fn families(&self) -> impl Iterator<Item = &Family> {
        std::iter::once(&self.start).chain(self.steps.iter().map(|s| &s.after))
    }
}

/// Applies `tag_{σ(1)}, …, tag_{σ(k)}` in turn.
pub fn theta_trace(
    tag: ShiftTag,
    sigma: &Permutation,
    family: &Family,
    k: usize,
) -> Result<PathTrace> {
    let n = family.ground();
    if sigma.len() != n.size() {
        return Err(Error::GroundSetMismatch(sigma.len(), n.size()));
    }
    if k > n.size() {
        return Err(Error::Format(format!(
            "step count {k} exceeds n = {}",
            n.size()
        )));
    }
    let mut steps = Vec::with_capacity(k);
    let mut cur = family.clone();
    for i in 1..=k {
        let shift = Shift {
            tag,
            axis: sigma.at(i),
        };
        let (after, moves) = apply_unchecked(shift, &cur);
        steps.push(TraceStep {
            shift,
            before: cur,
            moves,
            after: after.clone(),
        });
        cur = after;
    }
    Ok(PathTrace {
        start: family.clone(),
        steps,
    })
}

/// An integer on every oriented hypercube edge `(A, A ∪ {a})`.
///
/// Axis `a` holds `2^(n−1)` values indexed by the rank of `A` among the
/// subsets of `[n] \ {a}` in increasing mask order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AxisFlow {
    n: GroundSet,
    axes: Vec<Vec<i64>>,
}

/// Rank of `set` (not containing `a`) among subsets of `[n] \ {a}`.
#[inline]
pub fn edge_rank(a: Element, set: SetMask) -> usize {
    let b = a.bit();
    let bits = set.bits();
    let low = bits & ((1 << b) - 1);
    ((bits >> (b + 1)) << b | low) as usize
}

#[inline]
pub fn edge_unrank(a: Element, rank: usize) -> SetMask {
    let b = a.bit();
    let r = rank as u32;
    SetMask::from_bits((r >> b) << (b + 1) | (r & ((1 << b) - 1)))
}

impl AxisFlow {
    pub fn zero(n: GroundSet) -> Self {
        AxisFlow {
            n,
            axes: vec![vec![0; n.subsets() / 2]; n.size()],
        }
    }

    /// Builds a flow from per-axis arrays in rank order.
    pub fn from_axes(n: GroundSet, axes: Vec<Vec<i64>>) -> Result<Self> {
        if axes.len() != n.size() || axes.iter().any(|v| v.len() != n.subsets() / 2) {
            return Err(Error::Format(format!(
                "axis arrays do not match n = {}",
                n.size()
            )));
        }
        Ok(AxisFlow { n, axes })
    }

    pub fn ground(&self) -> GroundSet {
        self.n
    }

    pub fn axis(&self, a: Element) -> &[i64] {
        &self.axes[a.bit() as usize]
    }

    pub fn axes(&self) -> &[Vec<i64>] {
        &self.axes
    }

    /// Value on `(A, A ∪ {a})`; `A` must not contain `a`.
    #[inline]
    pub fn edge(&self, a: Element, from: SetMask) -> i64 {
        debug_assert!(!from.contains(a));
        self.axes[a.bit() as usize][edge_rank(a, from)]
    }

    #[inline]
    fn bump(&mut self, a: Element, from: SetMask, delta: i64) {
        self.axes[a.bit() as usize][edge_rank(a, from)] += delta;
    }

    /// Records a single-axis move in the up-positive convention; fixed points
    /// add nothing.
    #[inline]
    fn record(&mut self, mv: Move) {
        let diff = mv.from.symmetric_difference(mv.to);
        if diff.is_empty() {
            return;
        }
        debug_assert_eq!(diff.len(), 1);
        let a = diff.elements().next().unwrap();
        if mv.to.contains(a) {
            self.bump(a, mv.from, 1);
        } else {
            self.bump(a, mv.to, -1);
        }
    }

    /// Every edge as `(axis, lower end, value)`, axis-major in rank order.
    pub fn edges(&self) -> impl Iterator<Item = (Element, SetMask, i64)> + '_ {
        self.n.elements().flat_map(move |a| {
            self.axes[a.bit() as usize]
                .iter()
                .enumerate()
                .map(move |(r, &v)| (a, edge_unrank(a, r), v))
        })
    }

    /// Net outflow at `A`: `Σ_{a∉A} Λ(A, A∪{a}) − Σ_{a∈A} Λ(A∖{a}, A)`.
    pub fn divergence(&self, at: SetMask) -> i64 {
        self.n
            .elements()
            .map(|a| {
                if at.contains(a) {
                    -self.edge(a, at.without(a))
                } else {
                    self.edge(a, at)
                }
            })
            .sum()
    }

    fn checked_merge(mut self, other: AxisFlow) -> AxisFlow {
        for (x, y) in self.axes.iter_mut().zip(other.axes) {
            for (p, q) in x.iter_mut().zip(y) {
                *p = p.checked_add(q).expect("path sum overflow");
            }
        }
        self
    }
}

impl fmt::Display for AxisFlow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in self.n.elements() {
            writeln!(f, "axis {a}: {:?}", self.axis(a))?;
        }
        Ok(())
    }
}

/// `Λ(F)` by walking every member along every permutation, `n ≤ 6`.
pub fn pathsum_bruteforce(family: &Family) -> Result<AxisFlow> {
    pathsum_bruteforce_with(family, Exec::default())
}

pub fn pathsum_bruteforce_with(family: &Family, exec: Exec) -> Result<AxisFlow> {
    let n = GroundSet::bounded(family.n(), MAX_BRUTEFORCE_N)?;
    let perms: Vec<Permutation> = PermutationSet::new(n).iter().collect();
    let members: Vec<SetMask> = family.members().collect();
    Ok(exec.fold(
        &perms,
        || AxisFlow::zero(n),
        |mut acc, sigma| {
            // α ignores the family, so Θ^i(F, A) is A ⊕ {σ(1), …, σ(i)}.
            for &start in &members {
                let mut cur = start;
                for &a in sigma.as_slice() {
                    let next = cur.toggle(a);
                    acc.record(Move {
                        from: cur,
                        to: next,
                    });
                    cur = next;
                }
            }
            acc
        },
        AxisFlow::checked_merge,
    ))
}

/// Factorial weights `|B|! (n−1−|B|)!` indexed by `|B|`.
fn path_weights(n: GroundSet) -> Vec<i64> {
    let m = n.size() - 1;
    (0..=m)
        .map(|k| (factorial(k) * factorial(m - k)) as i64)
        .collect()
}

/// `Λ(F)` on the single edge `(A, A ∪ {a})` from the closed formula over the
/// preimages of `{∅}` and `{{a}}` under the link `F/{a}`.
pub fn pathsum_formula_edge(family: &Family, a: Element, from: SetMask) -> Result<i64> {
    let n = family.ground();
    let a = n.element(a.label())?;
    n.mask(from.bits())?;
    if from.contains(a) {
        return Err(Error::LinkOverlap {
            universe: a.singleton().bits(),
            base: from.bits(),
        });
    }
    let w = path_weights(n);
    let up = family.link_preimage(a, &LocalFamily::only_empty(n, a))?;
    let down = family.link_preimage(a, &LocalFamily::only_singleton(n, a))?;
    let weigh = |pre: &LocalFamily| -> i64 {
        pre.members()
            .map(|b| w[from.symmetric_difference(b).len()])
            .sum()
    };
    Ok(weigh(&up) - weigh(&down))
}

/// `Λ(F)` on every edge from the closed formula.
pub fn pathsum_formula(family: &Family) -> AxisFlow {
    pathsum_formula_with(family, Exec::default())
}

pub fn pathsum_formula_with(family: &Family, exec: Exec) -> AxisFlow {
    let n = family.ground();
    let w = path_weights(n);
    // Per axis: members of Π({∅}) and Π({{a}}).
    let preimages: Vec<(Vec<SetMask>, Vec<SetMask>)> = n
        .elements()
        .map(|a| {
            let rest = a.singleton().complement(n);
            let mut plus = Vec::new();
            let mut minus = Vec::new();
            for b in rest.subsets() {
                match (family.contains(b), family.contains(b.with(a))) {
                    (true, false) => plus.push(b),
                    (false, true) => minus.push(b),
                    _ => {}
                }
            }
            (plus, minus)
        })
        .collect();
    let half = n.subsets() / 2;
    let cells: Vec<(usize, usize)> = (0..n.size())
        .flat_map(|ax| (0..half).map(move |r| (ax, r)))
        .collect();
    let values = exec.map(&cells, |&(ax, r)| {
        let a = Element::new(ax as u8 + 1);
        let from = edge_unrank(a, r);
        let (plus, minus) = &preimages[ax];
        let sum = |set: &[SetMask]| -> i64 {
            set.iter()
                .map(|b| w[from.symmetric_difference(*b).len()])
                .sum()
        };
        sum(plus) - sum(minus)
    });
    let axes = values.chunks(half).map(<[i64]>::to_vec).collect();
    AxisFlow { n, axes }
}

/// Divergence of `flow` at `at`; see [`AxisFlow::divergence`].
pub fn divergence(flow: &AxisFlow, at: SetMask) -> i64 {
    flow.divergence(at)
}
