//! Builders for central families, the near-central swap `H = (F ∖ G*) ∪ G`,
//! and the lift-and-swap family on `[n+1]`.

use crate::error::{Error, Precondition, Result};
use crate::family::Family;
use crate::set::{GroundSet, SetMask};

pub const MAX_CENTRAL_N: usize = 6;

/// For even `n`: one set from each complementary pair of the middle layer,
/// pairwise intersecting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiddleLayerChoice {
    n: GroundSet,
    selection: Vec<SetMask>,
}

impl MiddleLayerChoice {
    pub fn selection(&self) -> &[SetMask] {
        &self.selection
    }

    /// The selection together with every set larger than `n/2`.
    pub fn family(&self) -> Family {
        let half = self.n.size() / 2;
        let mut f = Family::from_predicate(self.n, |m| m.len() > half);
        for &m in &self.selection {
            f.insert_unchecked(m);
        }
        f
    }

    /// Every valid choice for even `n`.
    pub fn all(n: GroundSet) -> Vec<MiddleLayerChoice> {
        assert!(
            n.size() % 2 == 0,
            "middle layer choices need an even ground set"
        );
        let half = n.size() / 2;
        let pairs: Vec<(SetMask, SetMask)> = n
            .masks()
            .filter(|m| m.len() == half)
            .map(|m| (m, m.complement(n)))
            .filter(|(a, c)| a < c)
            .collect();

        fn rec(
            pairs: &[(SetMask, SetMask)],
            chosen: &mut Vec<SetMask>,
            n: GroundSet,
            out: &mut Vec<MiddleLayerChoice>,
        ) {
            let Some((&(a, c), rest)) = pairs.split_first() else {
                out.push(MiddleLayerChoice {
                    n,
                    selection: chosen.clone(),
                });
                return;
            };
            for x in [a, c] {
                if chosen.iter().all(|y| !x.is_disjoint(*y)) {
                    chosen.push(x);
                    rec(rest, chosen, n, out);
                    chosen.pop();
                }
            }
        }

        let mut out = Vec::new();
        rec(&pairs, &mut Vec::new(), n, &mut out);
        out
    }
}

/// All central maximal intersecting families of `P([n])`, `1 ≤ n ≤ 6`, sorted
/// by membership bitset.
pub fn central_families(n: usize) -> Result<Vec<Family>> {
    let n = GroundSet::bounded(n, MAX_CENTRAL_N)?;
    let mut out = if n.size() % 2 == 1 {
        let k = n.size().div_ceil(2);
        vec![Family::from_predicate(n, |m| m.len() >= k)]
    } else {
        MiddleLayerChoice::all(n)
            .iter()
            .map(MiddleLayerChoice::family)
            .collect()
    };
    out.sort();
    Ok(out)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `H = (F ∖ G*) ∪ G` for central `F` on `[2m+1]` and an intersecting `G` of
/// `m`-sets with `|G| ≤ C(2m, m) / 2`.
pub fn near_central(family: &Family, swap: &Family) -> Result<Family> {
    let n = family.n();
    if n % 2 == 0 {
        return Err(Error::Precondition(Precondition::EvenGroundSet(n)));
    }
    if swap.ground() != family.ground() {
        return Err(Error::GroundSetMismatch(n, swap.n()));
    }
    if !family.is_central() {
        return Err(Error::Precondition(Precondition::NotCentral));
    }
    let m = n / 2;
    if let Some(x) = swap.members().find(|x| x.len() != m) {
        return Err(Error::Precondition(Precondition::OffMiddleLayer(x.bits())));
    }
    if !swap.is_intersecting() {
        return Err(Error::Precondition(Precondition::NotIntersecting));
    }
    let layer = binomial(2 * m, m);
    if 2 * swap.len() > layer {
        return Err(Error::Precondition(Precondition::TooLarge {
            size: swap.len(),
            bound: layer / 2,
        }));
    }
    family.difference(&swap.dual())?.union(swap)
}

/// `G = ({B ⊆ [n+1] : B ∩ [n] ∈ F} ∖ {A}) ∪ {[n+1] ∖ A}` for a minimal member
/// `A` of a maximal intersecting `F` with `|A| ∉ {⌊n/2⌋, ⌈n/2⌉}`.
pub fn lift_swap(family: &Family, a: SetMask) -> Result<Family> {
    if !family.is_maximal_intersecting() {
        return Err(Error::NotMaximalIntersecting);
    }
    let n = family.ground();
    let lifted_n = GroundSet::new(n.size() + 1)?;
    n.mask(a.bits())?;
    if !family.contains(a) {
        return Err(Error::Precondition(Precondition::NotMember(a.bits())));
    }
    if a.elements().any(|x| family.contains(a.without(x))) {
        return Err(Error::Precondition(Precondition::NotMinimal(a.bits())));
    }
    let (lo, hi) = (n.size() / 2, n.size().div_ceil(2));
    if a.len() == lo || a.len() == hi {
        return Err(Error::Precondition(Precondition::Balanced(a.bits())));
    }
    let base = n.full();
    let mut g = Family::from_predicate(lifted_n, |b| family.contains(b.intersection(base)));
    g.remove(a);
    g.insert_unchecked(a.complement(lifted_n));
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::LocalFamily;
    use crate::set::Element;

    fn g(n: usize) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    fn fam(n: usize, sets: &[&[usize]]) -> Family {
        Family::from_sets(g(n), sets).unwrap()
    }

    fn majority(n: usize) -> Family {
        Family::from_predicate(g(n), |m| 2 * m.len() > n)
    }

    fn star(n: usize, a: u8) -> Family {
        Family::power_set(g(n)).star(Element::new(a)).unwrap()
    }

    #[test]
    fn central_counts() {
        let counts: Vec<usize> = (1..=6)
            .map(|n| central_families(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 1, 8, 1, 1024]);
        assert_eq!(central_families(3).unwrap(), vec![majority(3)]);
        let two = central_families(2).unwrap();
        assert!(two.contains(&fam(2, &[&[1], &[1, 2]])));
        assert!(two.contains(&fam(2, &[&[2], &[1, 2]])));
        for n in 1..=6 {
            assert!(central_families(n).unwrap().iter().all(Family::is_central));
        }
        assert!(central_families(7).is_err());
    }

    #[test]
    fn middle_layer_choice_invariants() {
        for ch in MiddleLayerChoice::all(g(4)) {
            assert_eq!(ch.selection().len(), 3);
            for x in ch.selection() {
                assert_eq!(x.len(), 2);
                assert!(ch.selection().iter().all(|y| !x.is_disjoint(*y)));
            }
        }
    }

    #[test]
    fn near_central_examples() {
        let h = near_central(&majority(3), &fam(3, &[&[1]])).unwrap();
        assert_eq!(h, star(3, 1));

        let gg = fam(5, &[&[1, 2], &[1, 3], &[2, 3]]);
        let h = near_central(&majority(5), &gg).unwrap();
        assert!(h.is_maximal_intersecting());
        assert_eq!(h.len(), majority(5).len());

        let too_big = fam(5, &[&[1, 2], &[1, 3], &[1, 4], &[1, 5]]);
        assert_eq!(
            near_central(&majority(5), &too_big)
                .unwrap_err()
                .to_string(),
            Error::Precondition(Precondition::TooLarge { size: 4, bound: 3 }).to_string()
        );
        assert_eq!(
            near_central(&majority(5), &Family::empty(g(5))).unwrap(),
            majority(5)
        );
    }

    #[test]
    fn near_central_named_errors() {
        let pre = |r: Result<Family>| match r {
            Err(Error::Precondition(p)) => p,
            other => panic!("expected precondition error, got {other:?}"),
        };
        assert_eq!(
            pre(near_central(
                &central_families(4).unwrap()[0],
                &Family::empty(g(4))
            )),
            Precondition::EvenGroundSet(4)
        );
        assert_eq!(
            pre(near_central(&star(5, 1), &Family::empty(g(5)))),
            Precondition::NotCentral
        );
        assert!(matches!(
            pre(near_central(&majority(5), &fam(5, &[&[1, 2, 3]]))),
            Precondition::OffMiddleLayer(_)
        ));
        assert_eq!(
            pre(near_central(&majority(5), &fam(5, &[&[1, 2], &[3, 4]]))),
            Precondition::NotIntersecting
        );
    }

    #[test]
    fn lift_swap_examples() {
        let a = g(4).set(&[1]).unwrap();
        let lifted = lift_swap(&star(4, 1), a).unwrap();
        assert_eq!(lifted.n(), 5);
        assert!(lifted.is_maximal_intersecting());
        let pre = lifted
            .dual()
            .link_preimage(
                Element::new(5),
                &LocalFamily::only_empty(g(5), Element::new(5)),
            )
            .unwrap();
        assert_eq!(pre.family, fam(5, &[&[1], &[2, 3, 4]]));

        let central4 = central_families(4).unwrap();
        let with12 = central4
            .iter()
            .find(|f| f.contains(g(4).set(&[1, 2]).unwrap()))
            .unwrap();
        assert!(matches!(
            lift_swap(with12, g(4).set(&[1, 2]).unwrap()),
            Err(Error::Precondition(Precondition::Balanced(_)))
        ));
        assert!(matches!(
            lift_swap(&star(2, 1), g(2).set(&[1]).unwrap()),
            Err(Error::Precondition(Precondition::Balanced(_)))
        ));
        assert!(matches!(
            lift_swap(&star(4, 1), g(4).set(&[1, 2]).unwrap()),
            Err(Error::Precondition(Precondition::NotMinimal(_)))
        ));
        assert!(matches!(
            lift_swap(&star(4, 1), g(4).set(&[2]).unwrap()),
            Err(Error::Precondition(Precondition::NotMember(_)))
        ));
        assert!(matches!(
            lift_swap(&Family::power_set(g(3)), SetMask::EMPTY),
            Err(Error::NotMaximalIntersecting)
        ));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(2, 1), 2);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(10, 5), 252);
    }
}
