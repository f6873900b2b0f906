//! Ground sets, elements and subsets.
//!
//! Elements are labelled `1..=n` at every public boundary. Internally element
//! `i` lives in bit `i - 1` of a [`SetMask`].

use std::fmt;

use crate::error::{Error, Result};

/// Hard cap on the ground set size.
pub const MAX_N: usize = 16;

/// The ground set `[n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSet(u8);

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        Self::bounded(n, MAX_N)
    }

    /// Like [`GroundSet::new`] with a tighter, feature-specific upper bound.
    pub fn bounded(n: usize, max: usize) -> Result<Self> {
        if n == 0 || n > max.min(MAX_N) {
            return Err(Error::GroundSetSize(n, max.min(MAX_N)));
        }
        Ok(GroundSet(n as u8))
    }

    #[inline]
    pub fn size(self) -> usize {
        self.0 as usize
    }

    /// Number of subsets, `2^n`.
    #[inline]
    pub fn subsets(self) -> usize {
        1 << self.0
    }

    #[inline]
    pub fn full(self) -> SetMask {
        SetMask(((1u64 << self.0) - 1) as u32)
    }

    pub fn elements(self) -> impl Iterator<Item = Element> {
        (1..=self.0).map(Element)
    }

    /// All subsets in increasing mask order.
    pub fn masks(self) -> impl Iterator<Item = SetMask> {
        (0..self.subsets() as u32).map(SetMask)
    }

    pub fn element(self, label: usize) -> Result<Element> {
        if label == 0 || label > self.size() {
            return Err(Error::ElementOutOfRange {
                element: label,
                n: self.size(),
            });
        }
        Ok(Element(label as u8))
    }

    pub fn mask(self, bits: u32) -> Result<SetMask> {
        if (bits as u64) >> self.0 != 0 {
            return Err(Error::MaskOutOfRange {
                mask: bits,
                n: self.size(),
            });
        }
        Ok(SetMask(bits))
    }

    /// Builds a mask from 1-indexed element labels.
    pub fn set(self, labels: &[usize]) -> Result<SetMask> {
        labels
            .iter()
            .try_fold(SetMask::EMPTY, |acc, &l| Ok(acc.with(self.element(l)?)))
    }
}

impl fmt::Display for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0)
    }
}

/// A ground-set element, labelled from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(u8);

impl Element {
    /// Element with the given label; range checks happen against a [`GroundSet`].
    pub const fn new(label: u8) -> Self {
        assert!(label >= 1 && label as usize <= MAX_N);
        Element(label)
    }

    #[inline]
    pub fn label(self) -> usize {
        self.0 as usize
    }

    /// Bit position inside a [`SetMask`].
    #[inline]
    pub fn bit(self) -> u32 {
        self.0 as u32 - 1
    }

    #[inline]
    pub fn singleton(self) -> SetMask {
        SetMask(1 << self.bit())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A subset of `[n]` as a bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SetMask(pub(crate) u32);

impl SetMask {
    pub const EMPTY: SetMask = SetMask(0);

    /// Wraps raw bits without range checking; see [`GroundSet::mask`].
    #[inline]
    pub const fn from_bits(bits: u32) -> Self {
        SetMask(bits)
    }

    #[inline]
    pub const fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, e: Element) -> bool {
        self.0 >> e.bit() & 1 == 1
    }

    #[inline]
    pub fn with(self, e: Element) -> SetMask {
        SetMask(self.0 | 1 << e.bit())
    }

    #[inline]
    pub fn without(self, e: Element) -> SetMask {
        SetMask(self.0 & !(1 << e.bit()))
    }

    #[inline]
    pub fn toggle(self, e: Element) -> SetMask {
        SetMask(self.0 ^ 1 << e.bit())
    }

    #[inline]
    pub fn union(self, other: SetMask) -> SetMask {
        SetMask(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: SetMask) -> SetMask {
        SetMask(self.0 & other.0)
    }

    #[inline]
    pub fn symmetric_difference(self, other: SetMask) -> SetMask {
        SetMask(self.0 ^ other.0)
    }

    #[inline]
    pub fn difference(self, other: SetMask) -> SetMask {
        SetMask(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: SetMask) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: SetMask) -> bool {
        self.0 & other.0 == 0
    }

    /// `[n] \ self`.
    #[inline]
    pub fn complement(self, n: GroundSet) -> SetMask {
        SetMask(!self.0 & n.full().0)
    }

    /// Complement relative to an arbitrary universe.
    #[inline]
    pub fn complement_in(self, universe: SetMask) -> SetMask {
        SetMask(!self.0 & universe.0)
    }

    /// Members as 1-indexed labels, increasing.
    pub fn elements(self) -> impl Iterator<Item = Element> {
        let bits = self.0;
        (0..32u8)
            .filter(move |i| bits >> i & 1 == 1)
            .map(|i| Element(i + 1))
    }

    pub fn labels(self) -> Vec<usize> {
        self.elements().map(Element::label).collect()
    }

    /// All subsets of `self`, in increasing mask order.
    pub fn subsets(self) -> impl Iterator<Item = SetMask> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(SetMask(cur))
        })
    }
}

impl fmt::Display for SetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl serde::Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.label() as u64)
    }
}

/// Serializes as the raw mask value.
impl serde::Serialize for SetMask {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u32(self.0)
    }
}

/// `[n] \ A`.
pub fn set_complement(a: SetMask, n: GroundSet) -> SetMask {
    a.complement(n)
}
