//! Colour identifiers and fixed-width colour sets.

use std::fmt;
use std::num::NonZeroU8;

use serde::{Serialize, Serializer};

/// Largest number of colours a grid may use. Every [`ColorSet`] is one `u128`.
pub const MAX_COLORS: usize = 128;

/// A colour in `1..=k`. Colour 0 does not exist; empty cells are `None`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorId(NonZeroU8);

impl ColorId {
    /// Returns `None` for 0 or anything above [`MAX_COLORS`].
    pub fn new(value: usize) -> Option<Self> {
        if value == 0 || value > MAX_COLORS {
            return None;
        }
        NonZeroU8::new(value as u8).map(ColorId)
    }

    pub fn get(self) -> usize {
        self.0.get() as usize
    }

    pub(crate) fn raw(self) -> u8 {
        self.0.get()
    }

    pub(crate) fn from_raw(raw: u8) -> Option<Self> {
        NonZeroU8::new(raw).map(ColorId)
    }
}

impl fmt::Display for ColorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for ColorId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_u8(self.raw())
    }
}

/// A subset of `{1..=128}` stored as a bitmask; bit `c - 1` marks colour `c`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ColorSet(u128);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    /// `{1..=k}`.
    pub fn full(k: usize) -> Self {
        debug_assert!(k <= MAX_COLORS);
        if k >= MAX_COLORS {
            ColorSet(u128::MAX)
        } else {
            ColorSet((1u128 << k) - 1)
        }
    }

    pub fn from_colors<I: IntoIterator<Item = ColorId>>(colors: I) -> Self {
        colors.into_iter().fold(Self::EMPTY, |s, c| s.with(c))
    }

    #[inline]
    pub fn contains(self, c: ColorId) -> bool {
        self.0 & bit(c) != 0
    }

    #[inline]
    pub fn insert(&mut self, c: ColorId) {
        self.0 |= bit(c);
    }

    #[inline]
    pub fn remove(&mut self, c: ColorId) {
        self.0 &= !bit(c);
    }

    #[inline]
    pub fn with(self, c: ColorId) -> Self {
        ColorSet(self.0 | bit(c))
    }

    #[inline]
    pub fn union(self, other: ColorSet) -> Self {
        ColorSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: ColorSet) -> Self {
        ColorSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: ColorSet) -> Self {
        ColorSet(self.0 & !other.0)
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// The only member, if there is exactly one.
    pub fn single(self) -> Option<ColorId> {
        if self.len() == 1 {
            self.first()
        } else {
            None
        }
    }

    /// The smallest member.
    pub fn first(self) -> Option<ColorId> {
        if self.0 == 0 {
            None
        } else {
            ColorId::from_raw(self.0.trailing_zeros() as u8 + 1)
        }
    }

    /// Members in ascending order.
    pub fn iter(self) -> ColorSetIter {
        ColorSetIter(self.0)
    }

    pub fn bits(self) -> u128 {
        self.0
    }
}

#[inline]
fn bit(c: ColorId) -> u128 {
    1u128 << (c.raw() - 1)
}

impl IntoIterator for ColorSet {
    type Item = ColorId;
    type IntoIter = ColorSetIter;

    fn into_iter(self) -> ColorSetIter {
        self.iter()
    }
}

impl FromIterator<ColorId> for ColorSet {
    fn from_iter<I: IntoIterator<Item = ColorId>>(iter: I) -> Self {
        Self::from_colors(iter)
    }
}

pub struct ColorSetIter(u128);

impl Iterator for ColorSetIter {
    type Item = ColorId;

    fn next(&mut self) -> Option<ColorId> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        ColorId::from_raw(tz as u8 + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for ColorSetIter {}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|c| c.get())).finish()
    }
}

impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for ColorSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter().map(|c| c.get()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: usize) -> ColorId {
        ColorId::new(v).unwrap()
    }

    #[test]
    fn color_id_range() {
        assert!(ColorId::new(0).is_none());
        assert_eq!(ColorId::new(1).unwrap().get(), 1);
        assert_eq!(ColorId::new(128).unwrap().get(), 128);
        assert!(ColorId::new(129).is_none());
    }

    #[test]
    fn full_sets() {
        assert_eq!(ColorSet::full(0), ColorSet::EMPTY);
        assert_eq!(
            ColorSet::full(3)
                .iter()
                .map(|c| c.get())
                .collect::<Vec<_>>(),
            [1, 2, 3]
        );
        assert_eq!(ColorSet::full(128).len(), 128);
        assert!(ColorSet::full(128).contains(c(128)));
    }

    #[test]
    fn set_algebra() {
        let a: ColorSet = [c(1), c(3), c(5)].into_iter().collect();
        let b: ColorSet = [c(3), c(4)].into_iter().collect();
        assert_eq!(a.union(b).len(), 4);
        assert_eq!(a.difference(b).to_string(), "{1,5}");
        assert_eq!(a.intersection(b).single(), Some(c(3)));
        assert_eq!(a.single(), None);
        assert_eq!(ColorSet::EMPTY.first(), None);
        let mut s = a;
        s.remove(c(1));
        assert_eq!(s.first(), Some(c(3)));
        s.insert(c(128));
        assert!(s.contains(c(128)));
        assert_eq!(format!("{s:?}"), "{3, 5, 128}");
    }
}
