//! Empty-set minimality, the star-coefficient decomposition built from the
//! path sum of the dual family, its exact verification, and the dot-product
//! checks against subset-closed families.
//!
//! Every coefficient is an integer numerator over the fixed denominator `n!`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::family::{Family, FamilyVector};
use crate::pathsum::{pathsum_formula_with, AxisFlow};
use crate::perm::factorial;
use crate::set::{Element, GroundSet, SetMask};

/// An edge `(A, A ∪ {a})` whose value is below the value at `(∅, {a})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Witness {
    pub axis: Element,
    pub from: SetMask,
    pub value: i64,
    pub empty_value: i64,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "axis {} edge ({}, {}) has {} < {} at the empty set",
            self.axis,
            self.from,
            self.from.with(self.axis),
            self.value,
            self.empty_value
        )
    }
}

/// Outcome of [`is_empty_minimal`], with the path sum of the dual family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minimality {
    pub witness: Option<Witness>,
    pub flow: AxisFlow,
}

impl Minimality {
    pub fn is_minimal(&self) -> bool {
        self.witness.is_none()
    }
}

/// Decides whether `Λ(F*)` attains its per-axis minimum on the edges at `∅`.
/// Ties count as minimal.
pub fn is_empty_minimal(family: &Family) -> Result<Minimality> {
    is_empty_minimal_with(family, Exec::Sequential)
}

pub fn is_empty_minimal_with(family: &Family, exec: Exec) -> Result<Minimality> {
    if !family.is_maximal_intersecting() {
        return Err(Error::NotMaximalIntersecting);
    }
    let flow = pathsum_formula_with(&family.dual(), exec);
    let witness = family.ground().elements().find_map(|a| {
        let axis = flow.axis(a);
        let empty_value = axis[0];
        let (r, &value) = axis.iter().enumerate().find(|(_, &v)| v < empty_value)?;
        Some(Witness {
            axis: a,
            from: crate::pathsum::edge_unrank(a, r),
            value,
            empty_value,
        })
    });
    Ok(Minimality { witness, flow })
}

/// A hypercube edge `(from, to)` with `to = from ∪ {a}`. Orders by `(to, from)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub to: SetMask,
    pub from: SetMask,
}

impl Edge {
    pub fn new(from: SetMask, to: SetMask) -> Self {
        Edge { to, from }
    }

    /// The added element when this is a hypercube edge.
    pub fn axis(&self) -> Option<Element> {
        let d = self.to.difference(self.from);
        (self.from.is_subset(self.to) && d.len() == 1).then(|| d.elements().next().unwrap())
    }
}

/// Star coefficients `c_a` and edge slacks `λ_(A,B)` as numerators over
/// `denominator = n!`. Edges with zero slack are not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub n: GroundSet,
    pub denominator: u64,
    pub c_num: Vec<i64>,
    pub lambda_num: BTreeMap<Edge, i64>,
}

impl Decomposition {
    pub fn lambda(&self, from: SetMask, to: SetMask) -> i64 {
        self.lambda_num
            .get(&Edge::new(from, to))
            .copied()
            .unwrap_or(0)
    }
}

/// Builds `c_a = Λ(F*)(∅,{a}) / n!` and
/// `λ_(A,A∪{a}) = (Λ(F*)(A,A∪{a}) − Λ(F*)(∅,{a})) / n!`.
pub fn build_decomposition(family: &Family) -> Result<Decomposition> {
    let check = is_empty_minimal(family)?;
    if let Some(w) = check.witness {
        return Err(Error::NotEmptyMinimal(w));
    }
    Ok(decomposition_from_flow(&check.flow))
}

fn decomposition_from_flow(flow: &AxisFlow) -> Decomposition {
    let n = flow.ground();
    let c_num: Vec<i64> = n.elements().map(|a| flow.axis(a)[0]).collect();
    let lambda_num = flow
        .edges()
        .filter_map(|(a, from, v)| {
            let slack = v - c_num[a.bit() as usize];
            (slack != 0).then(|| (Edge::new(from, from.with(a)), slack))
        })
        .collect();
    Decomposition {
        n,
        denominator: factorial(n.size()),
        c_num,
        lambda_num,
    }
}

/// First failed constraint found by [`verify_decomposition`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    #[error("decomposition is over n = {got}, family over n = {want}")]
    Shape { want: usize, got: usize },
    #[error("denominator {got} is not n! = {want}")]
    Denominator { want: u64, got: u64 },
    #[error("({}, {}) is not a hypercube edge", .0.from, .0.to)]
    NotAnEdge(Edge),
    #[error("star coefficients sum to {got}, expected {want}")]
    CoefficientSum { want: i64, got: i64 },
    #[error("negative star coefficient {value} on axis {axis}")]
    NegativeCoefficient { axis: Element, value: i64 },
    #[error("negative slack {value} on edge ({}, {})", .edge.from, .edge.to)]
    NegativeSlack { edge: Edge, value: i64 },
    #[error("vertex {vertex}: expected {want}, decomposition gives {got}")]
    Vertex {
        vertex: SetMask,
        want: i64,
        got: i64,
    },
}

/// Checks `n!·V_F = Σ_a c_a V_{S_a} + Σ λ_(A,B) (e_B − e_A)` at every vertex
/// together with `Σ c_a = n!` and nonnegativity, in exact integers.
pub fn verify_decomposition(
    family: &Family,
    d: &Decomposition,
) -> std::result::Result<(), Violation> {
    let n = family.ground();
    if d.n != n || d.c_num.len() != n.size() {
        return Err(Violation::Shape {
            want: n.size(),
            got: d.c_num.len(),
        });
    }
    let scale = factorial(n.size());
    if d.denominator != scale {
        return Err(Violation::Denominator {
            want: scale,
            got: d.denominator,
        });
    }
    let full = n.full();
    if let Some(edge) = d
        .lambda_num
        .keys()
        .find(|e| e.axis().is_none() || !e.to.is_subset(full))
    {
        return Err(Violation::NotAnEdge(*edge));
    }
    let sum: i64 = d.c_num.iter().sum();
    if sum != scale as i64 {
        return Err(Violation::CoefficientSum {
            want: scale as i64,
            got: sum,
        });
    }
    if let Some((i, &value)) = d.c_num.iter().enumerate().find(|(_, &c)| c < 0) {
        return Err(Violation::NegativeCoefficient {
            axis: Element::new(i as u8 + 1),
            value,
        });
    }
    if let Some((&edge, &value)) = d.lambda_num.iter().find(|(_, &v)| v < 0) {
        return Err(Violation::NegativeSlack { edge, value });
    }

    let mut rhs: Vec<i64> = n
        .masks()
        .map(|c| {
            n.elements()
                .map(|a| {
                    if c.contains(a) {
                        d.c_num[a.bit() as usize]
                    } else {
                        -d.c_num[a.bit() as usize]
                    }
                })
                .sum()
        })
        .collect();
    for (edge, &v) in &d.lambda_num {
        rhs[edge.to.index()] += v;
        rhs[edge.from.index()] -= v;
    }
    let v = family.vector();
    for c in n.masks() {
        let want = scale as i64 * v.get(c) as i64;
        let got = rhs[c.index()];
        if want != got {
            return Err(Violation::Vertex {
                vertex: c,
                want,
                got,
            });
        }
    }
    Ok(())
}

/// Dot products of a maximal intersecting family against a downset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChvatalReport {
    pub dot: i64,
    /// `4|F ∩ G| − 2|G|`.
    pub counted: i64,
    pub identity_ok: bool,
    pub star_dots: Vec<i64>,
    pub bound_ok: bool,
}

/// Per-downset data reused across many maximal intersecting families.
#[derive(Debug, Clone)]
pub struct DownsetProfile {
    family: Family,
    vector: FamilyVector,
    star_dots: Vec<i64>,
}

impl DownsetProfile {
    pub fn new(downset: &Family) -> Result<Self> {
        if !downset.is_subset_closed() {
            return Err(Error::NotSubsetClosed);
        }
        let n = downset.ground();
        let vector = downset.vector();
        let star_dots = n
            .elements()
            .map(|a| FamilyVector::star(n, a).dot(&vector))
            .collect();
        Ok(DownsetProfile {
            family: downset.clone(),
            vector,
            star_dots,
        })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// `F` must already be known to be maximal intersecting.
    pub fn check_vector(&self, family: &Family, vf: &FamilyVector) -> ChvatalReport {
        let dot = vf.dot(&self.vector);
        let common = family
            .intersection_len(&self.family)
            .expect("same ground set") as i64;
        let counted = 4 * common - 2 * self.family.len() as i64;
        let best = self.star_dots.iter().copied().max().unwrap_or(0);
        ChvatalReport {
            dot,
            counted,
            identity_ok: dot == counted,
            star_dots: self.star_dots.clone(),
            bound_ok: dot <= best,
        }
    }
}

/// `V_F · V_G` for maximal intersecting `F` and subset-closed `G`, compared
/// against `4|F ∩ G| − 2|G|` and against the best star.
pub fn chvatal_check(family: &Family, downset: &Family) -> Result<ChvatalReport> {
    if family.ground() != downset.ground() {
        return Err(Error::GroundSetMismatch(family.n(), downset.n()));
    }
    if !family.is_maximal_intersecting() {
        return Err(Error::NotMaximalIntersecting);
    }
    let profile = DownsetProfile::new(downset)?;
    Ok(profile.check_vector(family, &family.vector()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::lift_swap;

    fn g(n: usize) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    fn e(l: u8) -> Element {
        Element::new(l)
    }

    fn s(n: usize, l: &[usize]) -> SetMask {
        g(n).set(l).unwrap()
    }

    fn majority3() -> Family {
        Family::from_predicate(g(3), |m| m.len() >= 2)
    }

    fn star(n: usize, a: u8) -> Family {
        Family::power_set(g(n)).star(e(a)).unwrap()
    }

    #[test]
    fn minimality_examples() {
        let m = is_empty_minimal(&majority3()).unwrap();
        assert!(m.is_minimal());
        assert_eq!(m.flow.axis(e(1)), &[2, 4, 4, 2]);
        let m = is_empty_minimal(&star(3, 1)).unwrap();
        assert!(m.is_minimal());

        let lifted = lift_swap(&star(4, 1), s(4, &[1])).unwrap();
        let m = is_empty_minimal(&lifted).unwrap();
        let w = m.witness.expect("not minimal");
        assert!(w.value < w.empty_value);
        assert_eq!(m.flow.edge(w.axis, w.from), w.value);

        assert!(matches!(
            is_empty_minimal(&Family::power_set(g(3))),
            Err(Error::NotMaximalIntersecting)
        ));
    }

    #[test]
    fn decomposition_examples() {
        let one = Family::from_sets(g(1), &[&[1usize][..]]).unwrap();
        let d = build_decomposition(&one).unwrap();
        assert_eq!(d.c_num, vec![1]);
        assert_eq!(d.denominator, 1);
        assert!(d.lambda_num.is_empty());
        assert_eq!(verify_decomposition(&one, &d), Ok(()));

        let d = build_decomposition(&majority3()).unwrap();
        assert_eq!(d.c_num, vec![2, 2, 2]);
        assert_eq!(d.lambda_num.len(), 6);
        for a in 1..=3 {
            for b in 1..=3 {
                if a != b {
                    assert_eq!(d.lambda(s(3, &[b]), s(3, &[a, b])), 2);
                }
            }
            assert_eq!(d.lambda(SetMask::EMPTY, s(3, &[a])), 0);
        }
        assert_eq!(verify_decomposition(&majority3(), &d), Ok(()));

        let d = build_decomposition(&star(3, 1)).unwrap();
        assert_eq!(d.c_num, vec![6, 0, 0]);
        assert!(d.lambda_num.is_empty());
    }

    #[test]
    fn decomposition_rejects_non_minimal() {
        let lifted = lift_swap(&star(4, 1), s(4, &[1])).unwrap();
        assert!(matches!(
            build_decomposition(&lifted),
            Err(Error::NotEmptyMinimal(_))
        ));
    }

    #[test]
    fn verify_catches_mutations() {
        let f = majority3();
        let d = build_decomposition(&f).unwrap();

        let mut bad = d.clone();
        bad.c_num[0] += 1;
        assert!(matches!(
            verify_decomposition(&f, &bad),
            Err(Violation::CoefficientSum { .. })
        ));

        let mut bad = d.clone();
        bad.c_num[0] += 1;
        bad.c_num[1] -= 1;
        assert!(matches!(
            verify_decomposition(&f, &bad),
            Err(Violation::Vertex { .. })
        ));

        let mut bad = d.clone();
        *bad.lambda_num.values_mut().next().unwrap() = -2;
        assert!(matches!(
            verify_decomposition(&f, &bad),
            Err(Violation::NegativeSlack { .. })
        ));

        let mut bad = d.clone();
        bad.lambda_num
            .insert(Edge::new(SetMask::EMPTY, s(3, &[1, 2])), 1);
        assert!(matches!(
            verify_decomposition(&f, &bad),
            Err(Violation::NotAnEdge(_))
        ));

        let mut bad = d.clone();
        bad.denominator = 2;
        assert!(matches!(
            verify_decomposition(&f, &bad),
            Err(Violation::Denominator { .. })
        ));

        let mut bad = d;
        bad.c_num = vec![7, 0, -1];
        assert!(matches!(
            verify_decomposition(&f, &bad),
            Err(Violation::NegativeCoefficient { .. })
        ));
    }

    #[test]
    fn chvatal_examples() {
        let n = g(3);
        let g12 = Family::from_predicate(n, |m| m.is_subset(s(3, &[1, 2])));
        let r = chvatal_check(&majority3(), &g12).unwrap();
        assert_eq!(r.dot, -4);
        assert!(r.identity_ok);
        assert_eq!(r.star_dots, vec![0, 0, -8]);
        assert!(r.bound_ok);

        let r = chvatal_check(&majority3(), &Family::empty(n)).unwrap();
        assert_eq!((r.dot, r.star_dots.clone()), (0, vec![0, 0, 0]));
        assert!(r.bound_ok);

        let r = chvatal_check(&star(3, 1), &Family::power_set(n)).unwrap();
        assert_eq!(r.dot, 0);
        assert_eq!(r.counted, 0);

        assert!(matches!(
            chvatal_check(&majority3(), &majority3()),
            Err(Error::NotSubsetClosed)
        ));
        assert!(matches!(
            chvatal_check(&g12, &g12),
            Err(Error::NotMaximalIntersecting)
        ));
    }
}
