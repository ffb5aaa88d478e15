//! Union-preserving maps `φ: Pow(k) -> Pow(n)`, the pullback `φ^#` on set
//! functions and the pushforward `φ_#` on functionals.
//!
//! A union-preserving map is determined by the images of singletons, so only
//! those are stored. The two induced maps are adjoint:
//! `⟨f, φ^# P⟩ = ⟨φ_# f, P⟩`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::functional::Functional;
use crate::polymatroid::SetFunction;
use crate::subset::{self, check_ground, Subset};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnionMap {
    k: usize,
    n: usize,
    images: Vec<Subset>,
}

impl UnionMap {
    /// `images[i - 1] = φ({i})`; images may be empty.
    pub fn new(k: usize, n: usize, images: Vec<Subset>) -> Result<Self> {
        check_ground(k)?;
        check_ground(n)?;
        if images.len() != k {
            return Err(Error::Shape(alloc::format!(
                "expected {k} singleton images, got {}",
                images.len()
            )));
        }
        if let Some(bad) = images.iter().find(|a| a.ground() != n) {
            return Err(Error::GroundMismatch {
                expected: n,
                found: bad.ground(),
            });
        }
        Ok(UnionMap { k, n, images })
    }

    pub fn identity(n: usize) -> Result<Self> {
        check_ground(n)?;
        UnionMap::new(n, n, (1..=n).map(|i| Subset::singleton(n, i)).collect())
    }

    pub fn source(&self) -> usize {
        self.k
    }

    pub fn target(&self) -> usize {
        self.n
    }

    pub fn images(&self) -> &[Subset] {
        &self.images
    }

    /// `φ(A) = ∪_{i ∈ A} φ(i)`.
    pub fn apply(&self, a: &Subset) -> Result<Subset> {
        if a.ground() != self.k {
            return Err(Error::GroundMismatch {
                expected: self.k,
                found: a.ground(),
            });
        }
        Ok(self.apply_bits(a.bits()))
    }

    fn apply_bits(&self, bits: u32) -> Subset {
        let image = self
            .images
            .iter()
            .enumerate()
            .filter(|(i, _)| bits & (1 << i) != 0)
            .fold(0u32, |acc, (_, img)| acc | img.bits());
        Subset::from_raw(self.n, image)
    }

    /// Images of all subsets of `[k]`, indexed by mask.
    fn image_table(&self) -> Vec<Subset> {
        let mut table = Vec::with_capacity(subset::lattice_size(self.k));
        table.push(Subset::empty(self.n));
        for bits in 1..subset::lattice_size(self.k) as u32 {
            // peel the lowest element off and reuse the smaller image
            let low = bits.trailing_zeros() as usize;
            let rest = table[(bits & (bits - 1)) as usize];
            let img = Subset::from_raw(self.n, rest.bits() | self.images[low].bits());
            table.push(img);
        }
        table
    }

    /// `φ^# P = P ∘ φ`, a set function on `[k]`.
    pub fn pullback(&self, p: &SetFunction) -> Result<SetFunction> {
        if p.n() != self.n {
            return Err(Error::GroundMismatch {
                expected: self.n,
                found: p.n(),
            });
        }
        let table = self.image_table();
        SetFunction::from_fn(self.k, |a| p.at(table[a.index()].index()).clone())
    }

    /// `φ_# (Σ c_A e*_A) = Σ c_A e*_{φ(A)}`. Colliding images accumulate and
    /// terms landing on `∅` vanish, since `H_n` has no `∅` coordinate.
    pub fn pushforward(&self, f: &Functional) -> Result<Functional> {
        if f.n() != self.k {
            return Err(Error::GroundMismatch {
                expected: self.k,
                found: f.n(),
            });
        }
        let mut out = Functional::zero(self.n)?;
        for (a, c) in f.terms() {
            let image = self.apply_bits(a.bits());
            if !image.is_empty() {
                out.accumulate(image, c.clone());
            }
        }
        Ok(out)
    }

    /// `outer ∘ self`: first `self: Pow(k) -> Pow(m)`, then `outer: Pow(m) -> Pow(n)`.
    pub fn then(&self, outer: &UnionMap) -> Result<UnionMap> {
        if outer.k != self.n {
            return Err(Error::GroundMismatch {
                expected: self.n,
                found: outer.k,
            });
        }
        let images = self
            .images
            .iter()
            .map(|img| outer.apply_bits(img.bits()))
            .collect();
        UnionMap::new(self.k, outer.n, images)
    }

    /// Injective on `Pow(k)`: every `φ(i)` has an element outside all other
    /// images.
    pub fn is_injective(&self) -> bool {
        (0..self.k).all(|i| {
            let others = self
                .images
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(0u32, |acc, (_, img)| acc | img.bits());
            self.images[i].bits() & !others != 0
        })
    }

    /// Surjective onto `Pow(n)`: every singleton of `[n]` is some `φ(i)`.
    pub fn is_surjective(&self) -> bool {
        (1..=self.n).all(|j| {
            let single = Subset::singleton(self.n, j);
            self.images.contains(&single)
        })
    }
}

/// The map `Pow(n) -> Pow(n-1)` with `φ(i) = {i}` for `i < n` and
/// `φ(n) = {1, n-1}`; it pushes `I_n` forward to `I_{n-1}`.
pub fn hierarchy_map(n: usize) -> Result<UnionMap> {
    if n < 5 {
        return Err(Error::TooSmall { n, min: 5 });
    }
    check_ground(n)?;
    let m = n - 1;
    let mut images: Vec<Subset> = (1..=m).map(|i| Subset::singleton(m, i)).collect();
    images.push(Subset::new(m, &[1, m])?);
    UnionMap::new(n, m, images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functional::kinser;
    use crate::polymatroid::CheckMode;
    use crate::rational;
    use proptest::prelude::*;

    fn s(n: usize, e: &[usize]) -> Subset {
        Subset::new(n, e).unwrap()
    }

    fn substitution() -> UnionMap {
        UnionMap::new(2, 3, vec![s(3, &[1]), s(3, &[2, 3])]).unwrap()
    }

    #[test]
    fn apply_examples() {
        let phi = substitution();
        assert_eq!(phi.apply(&s(2, &[1, 2])).unwrap(), s(3, &[1, 2, 3]));
        assert_eq!(phi.apply(&Subset::empty(2)).unwrap(), Subset::empty(3));
        let lossy = UnionMap::new(2, 2, vec![Subset::empty(2), s(2, &[2])]).unwrap();
        assert_eq!(lossy.apply(&s(2, &[1])).unwrap(), Subset::empty(2));
        assert!(phi.apply(&s(3, &[1])).is_err());
    }

    #[test]
    fn pullback_examples() {
        let phi = substitution();
        let p = SetFunction::from_int_fn(3, |a| a.len().min(1) as i64).unwrap();
        let back = phi.pullback(&p).unwrap();
        assert_eq!(back, SetFunction::from_int_fn(2, |_| 1).unwrap());
        let id = UnionMap::identity(3).unwrap();
        assert_eq!(id.pullback(&p).unwrap(), p);
        assert!(phi.pullback(&back).is_err());
    }

    #[test]
    fn pushforward_substitution_example() {
        let f = Functional::from_terms(
            2,
            [
                (s(2, &[1]), rational::int(1)),
                (s(2, &[2]), rational::int(1)),
                (s(2, &[1, 2]), rational::int(-1)),
            ],
        )
        .unwrap();
        let want = Functional::from_terms(
            3,
            [
                (s(3, &[1]), rational::int(1)),
                (s(3, &[2, 3]), rational::int(1)),
                (s(3, &[1, 2, 3]), rational::int(-1)),
            ],
        )
        .unwrap();
        assert_eq!(substitution().pushforward(&f).unwrap(), want);
        let id = UnionMap::identity(2).unwrap();
        assert_eq!(id.pushforward(&f).unwrap(), f);
    }

    #[test]
    fn pushforward_drops_empty_images_and_cancels() {
        let phi = UnionMap::new(2, 2, vec![Subset::empty(2), s(2, &[2])]).unwrap();
        let f = Functional::from_terms(
            2,
            [
                (s(2, &[1]), rational::int(7)),
                (s(2, &[2]), rational::int(1)),
                (s(2, &[1, 2]), rational::int(-1)),
            ],
        )
        .unwrap();
        assert!(phi.pushforward(&f).unwrap().is_zero());
    }

    #[test]
    fn hierarchy_map_shape() {
        let phi = hierarchy_map(5).unwrap();
        let want: Vec<Subset> = vec![s(4, &[1]), s(4, &[2]), s(4, &[3]), s(4, &[4]), s(4, &[1, 4])];
        assert_eq!(phi.images(), &want[..]);
        assert_eq!(phi.apply(&s(5, &[5])).unwrap(), s(4, &[1, 4]));
        assert_eq!(hierarchy_map(4), Err(Error::TooSmall { n: 4, min: 5 }));
        assert!(phi.is_surjective());
        assert!(!phi.is_injective());
    }

    #[test]
    fn hierarchy_collapses_kinser() {
        for n in 5..=10 {
            let pushed = hierarchy_map(n)
                .unwrap()
                .pushforward(&kinser(n).unwrap())
                .unwrap();
            assert_eq!(pushed, kinser(n - 1).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn injectivity_and_surjectivity_match_enumeration() {
        let mut rng_state = 17u64;
        let mut next = || {
            rng_state = rng_state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (rng_state >> 33) as u32
        };
        for _ in 0..400 {
            let k = 1 + next() as usize % 4;
            let n = 1 + next() as usize % 4;
            let images = (0..k)
                .map(|_| Subset::from_bits(n, next() & ((1 << n) - 1)).unwrap())
                .collect();
            let phi = UnionMap::new(k, n, images).unwrap();
            let table = phi.image_table();
            let mut distinct = table.clone();
            distinct.sort();
            distinct.dedup();
            assert_eq!(phi.is_injective(), distinct.len() == table.len(), "{phi:?}");
            assert_eq!(phi.is_surjective(), distinct.len() == 1 << n, "{phi:?}");
        }
    }

    fn arb_map(k: usize, n: usize) -> impl Strategy<Value = UnionMap> {
        proptest::collection::vec(0u32..(1 << n), k).prop_map(move |bits| {
            UnionMap::new(
                k,
                n,
                bits.into_iter()
                    .map(|b| Subset::from_bits(n, b).unwrap())
                    .collect(),
            )
            .unwrap()
        })
    }

    /// Rank functions of rank-capped sums of random "weights" are
    /// polymatroids; good enough as a generator here.
    fn arb_polymatroid(n: usize) -> impl Strategy<Value = SetFunction> {
        (proptest::collection::vec(0i64..=3, n), 0i64..=8).prop_map(move |(w, cap)| {
            SetFunction::from_int_fn(n, |a| a.elements().map(|i| w[i - 1]).sum::<i64>().min(cap)).unwrap()
        })
    }

    proptest! {
        #[test]
        fn pullback_preserves_polymatroids(
            (phi, p) in (1usize..=4, 1usize..=5).prop_flat_map(|(k, n)| (arb_map(k, n), arb_polymatroid(n)))
        ) {
            prop_assume!(p.is_polymatroid(CheckMode::Full));
            prop_assert!(phi.pullback(&p).unwrap().is_polymatroid(CheckMode::Full));
        }

        #[test]
        fn pullback_is_functorial(
            (inner, outer, p) in (1usize..=4, 1usize..=4, 1usize..=4)
                .prop_flat_map(|(k, m, n)| (arb_map(k, m), arb_map(m, n), arb_polymatroid(n)))
        ) {
            let composed = inner.then(&outer).unwrap();
            prop_assert_eq!(
                inner.pullback(&outer.pullback(&p).unwrap()).unwrap(),
                composed.pullback(&p).unwrap()
            );
        }
    }
}
