//! Families of subsets of `[n]` and their basic predicates.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::set::{Element, GroundSet, SetMask};

/// A family of subsets of `[n]`, stored as a membership bitset over all `2^n`
/// masks.
///
/// Families order by ground set size first, then by the numeric value of the
/// membership bitset (bit `A` set when `A` is a member).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Family {
    n: GroundSet,
    words: Vec<u64>,
}

fn word_count(n: GroundSet) -> usize {
    n.subsets().div_ceil(64)
}

impl Family {
    pub fn empty(n: GroundSet) -> Self {
        Family {
            n,
            words: vec![0; word_count(n)],
        }
    }

    /// The full power set `P([n])`.
    pub fn power_set(n: GroundSet) -> Self {
        Self::from_predicate(n, |_| true)
    }

    pub fn from_predicate(n: GroundSet, mut keep: impl FnMut(SetMask) -> bool) -> Self {
        let mut f = Self::empty(n);
        for m in n.masks() {
            if keep(m) {
                f.insert_unchecked(m);
            }
        }
        f
    }

    /// Collects masks, rejecting any outside the ground set. Repeats are
    /// absorbed.
    pub fn from_masks(n: GroundSet, masks: impl IntoIterator<Item = SetMask>) -> Result<Self> {
        let mut f = Self::empty(n);
        for m in masks {
            f.insert(m)?;
        }
        Ok(f)
    }

    /// Convenience constructor from 1-indexed label lists.
    pub fn from_sets<S: AsRef<[usize]>>(n: GroundSet, sets: &[S]) -> Result<Self> {
        let masks = sets
            .iter()
            .map(|s| n.set(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_masks(n, masks)
    }

    /// Builds a family with `n ≤ 7` from a 128-bit membership word.
    pub(crate) fn from_bits128(n: GroundSet, bits: u128) -> Self {
        debug_assert!(n.size() <= 7);
        let mut words = vec![bits as u64];
        if n.size() == 7 {
            words.push((bits >> 64) as u64);
        }
        Family { n, words }
    }

    #[cfg(test)]
    pub(crate) fn to_bits128(&self) -> u128 {
        debug_assert!(self.n.size() <= 7);
        self.words
            .iter()
            .enumerate()
            .fold(0u128, |acc, (i, &w)| acc | (w as u128) << (64 * i))
    }

    #[inline]
    pub fn ground(&self) -> GroundSet {
        self.n
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n.size()
    }

    /// Raw membership words, least significant first.
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, m: SetMask) -> bool {
        let i = m.index();
        i < self.n.subsets() && self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    pub fn insert(&mut self, m: SetMask) -> Result<bool> {
        self.n.mask(m.bits())?;
        let was = self.contains(m);
        self.insert_unchecked(m);
        Ok(!was)
    }

    #[inline]
    pub(crate) fn insert_unchecked(&mut self, m: SetMask) {
        let i = m.index();
        self.words[i >> 6] |= 1 << (i & 63);
    }

    pub fn remove(&mut self, m: SetMask) -> bool {
        let was = self.contains(m);
        if was {
            let i = m.index();
            self.words[i >> 6] &= !(1 << (i & 63));
        }
        was
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in increasing mask order.
    pub fn members(&self) -> impl Iterator<Item = SetMask> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some(SetMask::from_bits((wi as u32) << 6 | b))
            })
        })
    }

    /// Members sorted by `(size, mask)`, the order used by writers.
    pub fn sorted_members(&self) -> Vec<SetMask> {
        let mut v: Vec<SetMask> = self.members().collect();
        v.sort_by_key(|m| (m.len(), m.bits()));
        v
    }

    fn check_same_ground(&self, other: &Family) -> Result<()> {
        if self.n != other.n {
            return Err(Error::GroundSetMismatch(self.n(), other.n()));
        }
        Ok(())
    }

    fn zip_words(&self, other: &Family, op: impl Fn(u64, u64) -> u64) -> Result<Family> {
        self.check_same_ground(other)?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| op(a, b))
            .collect();
        Ok(Family { n: self.n, words })
    }

    pub fn union(&self, other: &Family) -> Result<Family> {
        self.zip_words(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Family) -> Result<Family> {
        self.zip_words(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Family) -> Result<Family> {
        self.zip_words(other, |a, b| a & !b)
    }

    /// `|self ∩ other|`.
    pub fn intersection_len(&self, other: &Family) -> Result<usize> {
        self.check_same_ground(other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum())
    }

    pub fn is_subfamily(&self, other: &Family) -> bool {
        self.n == other.n
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    /// The setwise complement `F* = {A^c : A ∈ F}`.
    pub fn dual(&self) -> Family {
        let full = self.n.full();
        let mut out = Family::empty(self.n);
        for m in self.members() {
            out.insert_unchecked(m.complement_in(full));
        }
        out
    }

    /// `B ⊕ F = {A ⊕ B : A ∈ F}`.
    pub fn translate(&self, b: SetMask) -> Family {
        let mut out = Family::empty(self.n);
        for m in self.members() {
            out.insert_unchecked(m.symmetric_difference(b));
        }
        out
    }

    /// Relabels the ground set: `{σ(A) : A ∈ F}`.
    pub fn relabel(&self, sigma: &Permutation) -> Family {
        let mut out = Family::empty(self.n);
        for m in self.members() {
            out.insert_unchecked(sigma.image(m));
        }
        out
    }

    /// The star `{A ∈ F : a ∈ A}`.
    pub fn star(&self, a: Element) -> Result<Family> {
        let a = self.n.element(a.label())?;
        let mut out = self.clone();
        for m in self.members() {
            if !m.contains(a) {
                out.remove(m);
            }
        }
        Ok(out)
    }

    /// True when every two members, a member with itself included, meet.
    pub fn is_intersecting(&self) -> bool {
        // A ∩ B = ∅ iff B ⊆ A^c, so F is intersecting iff no complement of a
        // member lies in the up-closure of F.
        let n = self.n.size();
        let mut up: Vec<bool> = self.n.masks().map(|m| self.contains(m)).collect();
        for bit in 0..n {
            let step = 1usize << bit;
            for m in 0..up.len() {
                if m & step == 0 && up[m] {
                    up[m | step] = true;
                }
            }
        }
        let full = self.n.full();
        self.members().all(|m| !up[m.complement_in(full).index()])
    }

    /// Exactly one of `A`, `A^c` is a member, for every `A`.
    pub fn is_self_dual(&self) -> bool {
        let full = self.n.full();
        self.n
            .masks()
            .all(|m| self.contains(m) != self.contains(m.complement_in(full)))
    }

    pub fn is_superset_closed(&self) -> bool {
        let full = self.n.full();
        self.members().all(|m| {
            m.complement_in(full)
                .elements()
                .all(|e| self.contains(m.with(e)))
        })
    }

    pub fn is_subset_closed(&self) -> bool {
        self.members()
            .all(|m| m.elements().all(|e| self.contains(m.without(e))))
    }

    /// Self-dual and superset-closed, the characterization of inclusion-maximal
    /// intersecting subfamilies of `P([n])`.
    pub fn is_maximal_intersecting(&self) -> bool {
        self.is_self_dual() && self.is_superset_closed()
    }

    /// Maximal intersecting with `2|A| ≥ n` for every member.
    pub fn is_central(&self) -> bool {
        self.is_maximal_intersecting() && self.members().all(|m| 2 * m.len() >= self.n())
    }

    pub fn classify(&self) -> FamilyFlags {
        let self_dual = self.is_self_dual();
        let superset_closed = self.is_superset_closed();
        let maximal_intersecting = self_dual && superset_closed;
        FamilyFlags {
            intersecting: self.is_intersecting(),
            self_dual,
            subset_closed: self.is_subset_closed(),
            superset_closed,
            maximal_intersecting,
            central: maximal_intersecting && self.members().all(|m| 2 * m.len() >= self.n()),
        }
    }

    /// The `{−1, 0, +1}` embedding `V_F`.
    pub fn vector(&self) -> FamilyVector {
        let full = self.n.full();
        let entries = self
            .n
            .masks()
            .map(|m| {
                let here = self.contains(m);
                let there = self.contains(m.complement_in(full));
                here as i8 - there as i8
            })
            .collect();
        FamilyVector { n: self.n, entries }
    }

    /// The link `(F/A)(B) = {C ⊆ A : B ∪ C ∈ F}`.
    pub fn link(&self, universe: SetMask, base: SetMask) -> Result<LocalFamily> {
        self.n.mask(universe.bits())?;
        self.n.mask(base.bits())?;
        if !universe.is_disjoint(base) {
            return Err(Error::LinkOverlap {
                universe: universe.bits(),
                base: base.bits(),
            });
        }
        let mut family = Family::empty(self.n);
        for c in universe.subsets() {
            if self.contains(base.union(c)) {
                family.insert_unchecked(c);
            }
        }
        Ok(LocalFamily { universe, family })
    }

    /// `{B ⊆ [n] \ {a} : (F/{a})(B) = target}`, a family over `[n] \ {a}`.
    pub fn link_preimage(&self, a: Element, target: &LocalFamily) -> Result<LocalFamily> {
        let a = self.n.element(a.label())?;
        let single = a.singleton();
        if target.universe != single || target.family.n != self.n {
            return Err(Error::LinkTarget(a.label()));
        }
        let want_empty = target.family.contains(SetMask::EMPTY);
        let want_single = target.family.contains(single);
        let rest = single.complement(self.n);
        let mut family = Family::empty(self.n);
        for b in rest.subsets() {
            if self.contains(b) == want_empty && self.contains(b.with(a)) == want_single {
                family.insert_unchecked(b);
            }
        }
        Ok(LocalFamily {
            universe: rest,
            family,
        })
    }
}

impl PartialOrd for Family {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Family {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Family(n={}, ", self.n())?;
        f.debug_set()
            .entries(self.sorted_members().iter().map(|m| m.to_string()))
            .finish()?;
        f.write_str(")")
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.sorted_members().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

/// Result of [`Family::classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct FamilyFlags {
    pub intersecting: bool,
    pub self_dual: bool,
    pub subset_closed: bool,
    pub superset_closed: bool,
    pub maximal_intersecting: bool,
    pub central: bool,
}

/// A family whose members all lie inside a declared sub-universe of `[n]`.
/// Masks keep their ambient bit positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalFamily {
    pub universe: SetMask,
    pub family: Family,
}

impl LocalFamily {
    pub fn new(universe: SetMask, family: Family) -> Result<Self> {
        family.ground().mask(universe.bits())?;
        if let Some(m) = family.members().find(|m| !m.is_subset(universe)) {
            return Err(Error::Format(format!(
                "{m} is outside the universe {universe}"
            )));
        }
        Ok(LocalFamily { universe, family })
    }

    /// `{∅}` over the universe `{a}`.
    pub fn only_empty(n: GroundSet, a: Element) -> Self {
        let mut family = Family::empty(n);
        family.insert_unchecked(SetMask::EMPTY);
        LocalFamily {
            universe: a.singleton(),
            family,
        }
    }

    /// `{{a}}` over the universe `{a}`.
    pub fn only_singleton(n: GroundSet, a: Element) -> Self {
        let mut family = Family::empty(n);
        family.insert_unchecked(a.singleton());
        LocalFamily {
            universe: a.singleton(),
            family,
        }
    }

    pub fn contains(&self, m: SetMask) -> bool {
        self.family.contains(m)
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    pub fn members(&self) -> impl Iterator<Item = SetMask> + '_ {
        self.family.members()
    }
}

/// The embedding `V_F`, indexed by subset mask with entries in `{−1, 0, +1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FamilyVector {
    n: GroundSet,
    entries: Vec<i8>,
}

impl FamilyVector {
    pub fn ground(&self) -> GroundSet {
        self.n
    }

    #[inline]
    pub fn get(&self, m: SetMask) -> i8 {
        self.entries[m.index()]
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    /// Vector of the star `S_a(P([n]))`: `+1` on sets containing `a`, `−1`
    /// elsewhere.
    pub fn star(n: GroundSet, a: Element) -> Self {
        let entries = n
            .masks()
            .map(|m| if m.contains(a) { 1 } else { -1 })
            .collect();
        FamilyVector { n, entries }
    }

    pub fn dot(&self, other: &FamilyVector) -> i64 {
        assert_eq!(self.n, other.n, "vectors over different ground sets");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| (a as i64) * (b as i64))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    fn fam(n: usize, sets: &[&[usize]]) -> Family {
        Family::from_sets(g(n), sets).unwrap()
    }

    fn majority3() -> Family {
        fam(3, &[&[1, 2], &[1, 3], &[2, 3], &[1, 2, 3]])
    }

    fn e(l: u8) -> Element {
        Element::new(l)
    }

    /// Every family on `[n]`, by membership bits.
    fn all_families(n: usize) -> impl Iterator<Item = Family> {
        let gs = g(n);
        (0u32..1 << (1 << n))
            .map(move |bits| Family::from_predicate(gs, |m| bits >> m.index() & 1 == 1))
    }

    #[test]
    fn dual_examples() {
        assert_eq!(fam(2, &[&[1], &[1, 2]]).dual(), fam(2, &[&[2], &[]]));
        assert_eq!(Family::power_set(g(2)).dual(), Family::power_set(g(2)));
        for f in all_families(3) {
            assert_eq!(f.dual().dual(), f);
            assert_eq!(f.dual().len(), f.len());
        }
    }

    #[test]
    fn classify_examples() {
        let flags = majority3().classify();
        assert_eq!(
            flags,
            FamilyFlags {
                intersecting: true,
                self_dual: true,
                subset_closed: false,
                superset_closed: true,
                maximal_intersecting: true,
                central: true,
            }
        );
        let star = Family::power_set(g(3)).star(e(1)).unwrap();
        let flags = star.classify();
        assert!(flags.maximal_intersecting && !flags.central);

        let flags = fam(3, &[&[]]).classify();
        assert!(flags.subset_closed && !flags.intersecting);
    }

    #[test]
    fn intersecting_matches_pairwise_definition() {
        for f in all_families(3) {
            let members: Vec<SetMask> = f.members().collect();
            let pairwise = members
                .iter()
                .all(|a| members.iter().all(|b| !a.is_disjoint(*b)));
            assert_eq!(f.is_intersecting(), pairwise, "{f:?}");
        }
    }

    #[test]
    fn maximal_intersecting_matches_inclusion_maximality() {
        for n in 1..=3 {
            for f in all_families(n) {
                let maximal = f.is_intersecting()
                    && g(n).masks().filter(|m| !f.contains(*m)).all(|m| {
                        let mut bigger = f.clone();
                        bigger.insert(m).unwrap();
                        !bigger.is_intersecting()
                    });
                assert_eq!(f.classify().maximal_intersecting, maximal, "{f:?}");
                if maximal {
                    assert_eq!(f.len(), 1 << (n - 1));
                }
            }
        }
    }

    #[test]
    fn dual_swaps_up_and_down_closure() {
        for f in all_families(3) {
            assert_eq!(f.is_superset_closed(), f.dual().is_subset_closed());
            assert_eq!(f.is_subset_closed(), f.dual().is_superset_closed());
        }
    }

    #[test]
    fn star_examples() {
        assert_eq!(
            Family::power_set(g(2)).star(e(1)).unwrap(),
            fam(2, &[&[1], &[1, 2]])
        );
        assert!(fam(2, &[&[], &[2]]).star(e(1)).unwrap().is_empty());
        for n in 1..=5 {
            for a in g(n).elements() {
                assert!(Family::power_set(g(n))
                    .star(a)
                    .unwrap()
                    .is_maximal_intersecting());
            }
        }
        assert!(fam(2, &[&[1]]).star(e(3)).is_err());
    }

    #[test]
    fn vector_examples() {
        let v = fam(1, &[&[1]]).vector();
        assert_eq!(v.entries(), &[-1, 1]);
        let v = fam(2, &[&[], &[1]]).vector();
        // masks 0=∅, 1={1}, 2={2}, 3={1,2}
        assert_eq!(v.entries(), &[1, 1, -1, -1]);
        assert!(Family::power_set(g(2))
            .vector()
            .entries()
            .iter()
            .all(|&x| x == 0));
    }

    #[test]
    fn vector_antisymmetric_exhaustive() {
        for n in 1..=3 {
            for f in all_families(n) {
                let v = f.vector();
                for m in g(n).masks() {
                    assert_eq!(v.get(m), -v.get(m.complement(g(n))));
                }
            }
        }
    }

    #[test]
    fn link_examples() {
        let n = g(3);
        let f = majority3();
        let s = |l: &[usize]| n.set(l).unwrap();
        let l = f.link(s(&[1]), s(&[2])).unwrap();
        assert_eq!(l.family, fam(3, &[&[1]]));
        assert_eq!(l.universe, s(&[1]));
        let l = f.link(s(&[1]), s(&[2, 3])).unwrap();
        assert_eq!(l.family, fam(3, &[&[], &[1]]));
        assert_eq!(
            f.link(SetMask::EMPTY, s(&[1, 2])).unwrap().family,
            fam(3, &[&[]])
        );
        assert!(f.link(SetMask::EMPTY, s(&[1])).unwrap().is_empty());
        assert!(matches!(
            f.link(s(&[1]), s(&[1, 2])),
            Err(Error::LinkOverlap { .. })
        ));
    }

    #[test]
    fn link_preimage_examples() {
        let n = g(3);
        let target = LocalFamily::only_empty(n, e(1));
        let pre = majority3().dual().link_preimage(e(1), &target).unwrap();
        assert_eq!(pre.family, fam(3, &[&[2], &[3]]));
        assert_eq!(pre.universe, n.set(&[2, 3]).unwrap());

        let star_dual = Family::power_set(n).star(e(1)).unwrap().dual();
        let pre = star_dual.link_preimage(e(1), &target).unwrap();
        assert_eq!(pre.family, fam(3, &[&[], &[2], &[3], &[2, 3]]));

        let wrong = LocalFamily::only_empty(n, e(2));
        assert!(majority3().link_preimage(e(1), &wrong).is_err());
    }

    #[test]
    fn link_preimage_of_singleton_empty_for_downsets() {
        for f in all_families(3).filter(Family::is_subset_closed) {
            for a in g(3).elements() {
                let t = LocalFamily::only_singleton(g(3), a);
                assert!(f.link_preimage(a, &t).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn ordering_is_numeric_bitset_value() {
        let n = g(7);
        let low = Family::from_masks(n, [SetMask::from_bits(127)]).unwrap();
        let high = Family::from_masks(n, [SetMask::from_bits(0), SetMask::from_bits(1)]).unwrap();
        assert!(high < low);
        assert_eq!(Family::from_bits128(n, low.to_bits128()), low);
    }

    #[test]
    fn from_masks_validates() {
        assert!(Family::from_masks(g(2), [SetMask::from_bits(4)]).is_err());
        assert!(Family::from_sets(g(2), &[&[3usize][..]]).is_err());
    }

    #[test]
    fn members_iterate_across_words() {
        let n = g(8);
        let masks = [0u32, 63, 64, 200, 255].map(SetMask::from_bits);
        let f = Family::from_masks(n, masks).unwrap();
        assert_eq!(f.members().collect::<Vec<_>>(), masks.to_vec());
        assert_eq!(f.len(), 5);
    }
}
