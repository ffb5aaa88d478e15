//! Subsets of a ground set `[n] = {1, ..., n}` encoded as bitmasks.
//!
//! Element `i` lives in bit `i - 1`. The ground-set size is carried along so
//! that operations mixing subsets of different ground sets are rejected.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Largest supported ground-set size; full `2^n` tables must fit in memory.
pub const MAX_GROUND: usize = 20;

pub fn check_ground(n: usize) -> Result<()> {
    if (1..=MAX_GROUND).contains(&n) {
        Ok(())
    } else {
        Err(Error::GroundSize(n))
    }
}

/// Number of subsets of `[n]`, including the empty one.
pub fn lattice_size(n: usize) -> usize {
    1usize << n
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Subset {
    n: u8,
    bits: u32,
}

impl Subset {
    /// Builds a subset from 1-based elements; duplicates and order are ignored.
    pub fn new(n: usize, elements: &[usize]) -> Result<Self> {
        check_ground(n)?;
        let mut bits = 0u32;
        for &element in elements {
            if element == 0 || element > n {
                return Err(Error::ElementOutOfRange { element, n });
            }
            bits |= 1 << (element - 1);
        }
        Ok(Subset { n: n as u8, bits })
    }

    pub fn from_bits(n: usize, bits: u32) -> Result<Self> {
        check_ground(n)?;
        if bits >> n != 0 {
            let element = 32 - bits.leading_zeros() as usize;
            return Err(Error::ElementOutOfRange { element, n });
        }
        Ok(Subset { n: n as u8, bits })
    }

    /// Caller guarantees `n` is in range and `bits` fits in `n` bits.
    pub(crate) fn from_raw(n: usize, bits: u32) -> Self {
        debug_assert!(check_ground(n).is_ok() && bits >> n == 0);
        Subset { n: n as u8, bits }
    }

    /// # Panics
    /// If `n` is not in `1..=MAX_GROUND`.
    pub fn empty(n: usize) -> Self {
        check_ground(n).expect("ground-set size");
        Subset { n: n as u8, bits: 0 }
    }

    /// The whole ground set `[n]`.
    ///
    /// # Panics
    /// If `n` is not in `1..=MAX_GROUND`.
    pub fn full(n: usize) -> Self {
        check_ground(n).expect("ground-set size");
        Subset {
            n: n as u8,
            bits: full_mask(n),
        }
    }

    /// `{i}`; panics if `i` is out of range.
    pub fn singleton(n: usize, i: usize) -> Self {
        Subset::new(n, &[i]).expect("singleton in range")
    }

    pub fn ground(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Index into a dense `2^n` table.
    pub fn index(&self) -> usize {
        self.bits as usize
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i <= self.ground() && self.bits & (1 << (i - 1)) != 0
    }

    pub fn with(&self, i: usize) -> Result<Self> {
        if i == 0 || i > self.ground() {
            return Err(Error::ElementOutOfRange {
                element: i,
                n: self.ground(),
            });
        }
        Ok(Subset {
            n: self.n,
            bits: self.bits | (1 << (i - 1)),
        })
    }

    pub fn without(&self, i: usize) -> Self {
        if i == 0 || i > self.ground() {
            return *self;
        }
        Subset {
            n: self.n,
            bits: self.bits & !(1 << (i - 1)),
        }
    }

    fn same_ground(&self, other: &Subset) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::GroundMismatch {
                expected: self.ground(),
                found: other.ground(),
            })
        }
    }

    pub fn union(&self, other: &Subset) -> Result<Self> {
        self.same_ground(other)?;
        Ok(Subset {
            n: self.n,
            bits: self.bits | other.bits,
        })
    }

    pub fn intersection(&self, other: &Subset) -> Result<Self> {
        self.same_ground(other)?;
        Ok(Subset {
            n: self.n,
            bits: self.bits & other.bits,
        })
    }

    pub fn difference(&self, other: &Subset) -> Result<Self> {
        self.same_ground(other)?;
        Ok(Subset {
            n: self.n,
            bits: self.bits & !other.bits,
        })
    }

    pub fn complement(&self) -> Self {
        Subset {
            n: self.n,
            bits: !self.bits & full_mask(self.ground()),
        }
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.n == other.n && self.bits & !other.bits == 0
    }

    /// Elements in increasing order, 1-based.
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.bits;
        (1..=self.ground()).filter(move |&i| bits & (1 << (i - 1)) != 0)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.elements().collect()
    }

    /// Every `A` with `self ⊆ A ⊆ [n]`, in ascending mask order.
    pub fn supersets(&self) -> impl Iterator<Item = Subset> {
        let n = self.n;
        let base = self.bits;
        let free = !base & full_mask(n as usize);
        submasks_ascending(free).map(move |extra| Subset {
            n,
            bits: base | extra,
        })
    }

    /// Every `A ⊆ self`, in ascending mask order.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        let n = self.n;
        submasks_ascending(self.bits).map(move |bits| Subset { n, bits })
    }

    /// Comma-separated increasing elements, e.g. `"1,3,4"`; empty for `∅`.
    pub fn to_key(&self) -> String {
        let mut out = String::new();
        for (k, i) in self.elements().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(&format!("{i}"));
        }
        out
    }

    /// Parses the text form written by [`Subset::to_key`]. Elements must be
    /// strictly increasing; the empty string is the empty set.
    pub fn parse_key(n: usize, key: &str) -> Result<Self> {
        check_ground(n)?;
        let trimmed = key.trim();
        if trimmed.is_empty() {
            return Ok(Subset::empty(n));
        }
        let mut elements = Vec::new();
        for part in trimmed.split(',') {
            let element: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::BadSubset(String::from(key)))?;
            if elements.last().is_some_and(|&last| element <= last) {
                return Err(Error::BadSubset(String::from(key)));
            }
            elements.push(element);
        }
        Subset::new(n, &elements)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_key())
    }
}

pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Submasks of `mask` in ascending numeric order.
fn submasks_ascending(mask: u32) -> impl Iterator<Item = u32> {
    // Counting through the positions of `mask` with pdep-style spreading keeps
    // the output sorted.
    let positions: Vec<u32> = (0..32).filter(|b| mask & (1 << b) != 0).collect();
    let count = 1u64 << positions.len();
    (0..count).map(move |k| {
        let mut bits = 0u32;
        for (j, &pos) in positions.iter().enumerate() {
            if k & (1 << j) != 0 {
                bits |= 1 << pos;
            }
        }
        bits
    })
}

/// All subsets of `[n]` in ascending mask order, starting with `∅`.
pub fn all_subsets(n: usize) -> impl Iterator<Item = Subset> {
    let n8 = n as u8;
    (0..lattice_size(n) as u32).map(move |bits| Subset { n: n8, bits })
}

/// All nonempty subsets of `[n]` in ascending mask order.
pub fn nonempty_subsets(n: usize) -> impl Iterator<Item = Subset> {
    all_subsets(n).skip(1)
}

/// Möbius function of the Boolean lattice: `μ(S, A) = (-1)^{|A \ S|}`.
pub fn mobius(s: &Subset, a: &Subset) -> Result<i64> {
    if !s.is_subset_of(a) {
        return Err(Error::NotSubset {
            sub: format!("{s}"),
            sup: format!("{a}"),
        });
    }
    Ok(if (a.len() - s.len()).is_multiple_of(2) {
        1
    } else {
        -1
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn naive(s: &Subset) -> BTreeSet<usize> {
        s.elements().collect()
    }

    #[test]
    fn constructor_dedups_and_sorts() {
        let a = Subset::new(4, &[1, 3]).unwrap();
        assert_eq!(a.to_vec(), vec![1, 3]);
        assert_eq!(Subset::new(4, &[3, 1, 3]).unwrap(), a);
        assert_eq!(
            Subset::new(4, &[5]),
            Err(Error::ElementOutOfRange { element: 5, n: 4 })
        );
        assert_eq!(Subset::new(0, &[]), Err(Error::GroundSize(0)));
        assert_eq!(Subset::new(21, &[]), Err(Error::GroundSize(21)));
        assert!(Subset::new(20, &[20]).is_ok());
    }

    #[test]
    fn mobius_values() {
        let s = |e: &[usize]| Subset::new(3, e).unwrap();
        assert_eq!(mobius(&s(&[1]), &s(&[1, 2])), Ok(-1));
        assert_eq!(mobius(&s(&[1, 3]), &s(&[1, 3])), Ok(1));
        assert_eq!(mobius(&s(&[1]), &s(&[1, 2, 3])), Ok(1));
        assert!(matches!(
            mobius(&s(&[2]), &s(&[1, 3])),
            Err(Error::NotSubset { .. })
        ));
    }

    #[test]
    fn lattice_ops_match_element_lists() {
        for n in 1..=6 {
            for a in all_subsets(n) {
                let na = naive(&a);
                assert_eq!(a.len(), na.len());
                let nc: BTreeSet<usize> = (1..=n).filter(|i| !na.contains(i)).collect();
                assert_eq!(naive(&a.complement()), nc);
                for b in all_subsets(n) {
                    let nb = naive(&b);
                    assert_eq!(naive(&a.union(&b).unwrap()), &na | &nb);
                    assert_eq!(naive(&a.intersection(&b).unwrap()), &na & &nb);
                    assert_eq!(naive(&a.difference(&b).unwrap()), &na - &nb);
                    assert_eq!(a.is_subset_of(&b), na.is_subset(&nb));
                }
            }
        }
    }

    #[test]
    fn mobius_sums_vanish_below_top() {
        for n in 1..=6 {
            let top = Subset::full(n);
            for s in all_subsets(n) {
                let total: i64 = s.supersets().map(|a| mobius(&s, &a).unwrap()).sum();
                assert_eq!(total, if s == top { 1 } else { 0 }, "S = {s}");
            }
        }
    }

    #[test]
    fn supersets_and_subsets_are_sorted_and_complete() {
        let s = Subset::new(5, &[2, 4]).unwrap();
        let sup: Vec<Subset> = s.supersets().collect();
        assert_eq!(sup.len(), 8);
        assert!(sup.windows(2).all(|w| w[0] < w[1]));
        assert!(sup.iter().all(|a| s.is_subset_of(a)));
        let sub: Vec<Subset> = s.subsets().collect();
        assert_eq!(sub.len(), 4);
        assert!(sub.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn key_round_trip_and_rejects() {
        let a = Subset::new(6, &[1, 3, 4]).unwrap();
        assert_eq!(a.to_key(), "1,3,4");
        assert_eq!(Subset::parse_key(6, "1,3,4").unwrap(), a);
        assert_eq!(Subset::parse_key(6, "").unwrap(), Subset::empty(6));
        assert!(Subset::parse_key(6, "3,1").is_err());
        assert!(Subset::parse_key(6, "1,1").is_err());
        assert!(Subset::parse_key(6, "1,x").is_err());
        assert!(Subset::parse_key(6, "7").is_err());
        assert_eq!(format!("{a}"), "{1,3,4}");
    }

    #[test]
    fn mixing_ground_sets_is_an_error() {
        let a = Subset::new(3, &[1]).unwrap();
        let b = Subset::new(4, &[1]).unwrap();
        assert!(a.union(&b).is_err());
        assert!(!a.is_subset_of(&b));
    }
}
