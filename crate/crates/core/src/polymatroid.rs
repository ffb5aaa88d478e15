//! Set functions on `Pow(n)` (vectors of the hyperplane `H_n`) and the
//! polymatroid, matroid and connectedness predicates.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::subset::{self, check_ground, lattice_size, Subset};

/// A function `Pow(n) -> Q` with `F(∅) = 0`, stored densely by mask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetFunction {
    n: usize,
    // values[0] is the empty set and is always zero.
    values: Vec<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    /// All pairs `(A, B)`; `O(4^n)`.
    Full,
    /// Single-element exchange form; `O(2^n n^2)`.
    Local,
}

/// Which axiom failed, with the subsets that witness it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `F(larger) < F(smaller)` although `smaller ⊆ larger`. Nonnegativity is
    /// the case `smaller = ∅`.
    Monotonicity { smaller: Subset, larger: Subset },
    /// `F(A ∪ B) + F(A ∩ B) > F(A) + F(B)`.
    Submodularity { a: Subset, b: Subset },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolymatroidCheck {
    Polymatroid,
    Violated(Violation),
    /// Some value is not an integer; `axioms_hold` reports whether the
    /// function would otherwise be monotone and submodular (a cone point).
    NonIntegral {
        axioms_hold: bool,
    },
}

impl SetFunction {
    pub fn zero(n: usize) -> Result<Self> {
        check_ground(n)?;
        Ok(SetFunction {
            n,
            values: vec![Rational::zero(); lattice_size(n)],
        })
    }

    /// Builds `F` by evaluating `f` on every nonempty subset.
    pub fn from_fn(n: usize, mut f: impl FnMut(Subset) -> Rational) -> Result<Self> {
        let mut out = SetFunction::zero(n)?;
        for a in subset::nonempty_subsets(n) {
            out.values[a.index()] = f(a);
        }
        Ok(out)
    }

    /// Integer-valued variant of [`SetFunction::from_fn`].
    pub fn from_int_fn(n: usize, mut f: impl FnMut(Subset) -> i64) -> Result<Self> {
        SetFunction::from_fn(n, |a| rational::int(f(a)))
    }

    /// Values listed for masks `1..2^n` in ascending order.
    pub fn from_values(n: usize, values: Vec<Rational>) -> Result<Self> {
        check_ground(n)?;
        if values.len() != lattice_size(n) - 1 {
            return Err(Error::Shape(alloc::format!(
                "expected {} values for n = {n}, got {}",
                lattice_size(n) - 1,
                values.len()
            )));
        }
        let mut all = Vec::with_capacity(lattice_size(n));
        all.push(Rational::zero());
        all.extend(values);
        Ok(SetFunction { n, values: all })
    }

    /// The standard basis vector `e_A` (1 on `A`, 0 elsewhere).
    pub fn basis(a: Subset) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::EmptyCoordinate);
        }
        let mut out = SetFunction::zero(a.ground())?;
        out.values[a.index()] = Rational::one();
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `F(A)`; zero for `∅`.
    pub fn value(&self, a: &Subset) -> Result<&Rational> {
        if a.ground() != self.n {
            return Err(Error::GroundMismatch {
                expected: self.n,
                found: a.ground(),
            });
        }
        Ok(&self.values[a.index()])
    }

    /// Value by raw mask; panics if the mask is out of range.
    pub fn at(&self, mask: usize) -> &Rational {
        &self.values[mask]
    }

    /// Sets `F(A)` for nonempty `A`.
    pub fn set(&mut self, a: &Subset, value: Rational) -> Result<()> {
        if a.ground() != self.n {
            return Err(Error::GroundMismatch {
                expected: self.n,
                found: a.ground(),
            });
        }
        if a.is_empty() {
            return Err(Error::EmptyCoordinate);
        }
        self.values[a.index()] = value;
        Ok(())
    }

    /// `(A, F(A))` for every nonempty `A`, ascending.
    pub fn entries(&self) -> impl Iterator<Item = (Subset, &Rational)> + '_ {
        subset::nonempty_subsets(self.n).map(move |a| (a, &self.values[a.index()]))
    }

    /// Coordinates in `Q^{2^n - 1}`, ascending mask order.
    pub fn coordinates(&self) -> &[Rational] {
        &self.values[1..]
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(|v| v.is_integer())
    }

    fn integer_values(&self) -> Option<Vec<i64>> {
        self.values.iter().map(rational::to_i64).collect()
    }

    pub fn check_polymatroid(&self, mode: CheckMode) -> PolymatroidCheck {
        let verdict = match self.integer_values() {
            Some(ints) => check_axioms(self.n, &ints, mode),
            None => check_axioms(self.n, &self.values, mode),
        };
        match (self.is_integral(), verdict) {
            (true, None) => PolymatroidCheck::Polymatroid,
            (true, Some(v)) => PolymatroidCheck::Violated(v),
            (false, v) => PolymatroidCheck::NonIntegral {
                axioms_hold: v.is_none(),
            },
        }
    }

    /// Integral, normalized, monotone and submodular.
    pub fn is_polymatroid(&self, mode: CheckMode) -> bool {
        self.check_polymatroid(mode) == PolymatroidCheck::Polymatroid
    }

    /// A polymatroid whose singletons all have rank at most one.
    pub fn is_matroid(&self) -> bool {
        self.is_polymatroid(CheckMode::Full)
            && (1..=self.n).all(|i| self.values[1 << (i - 1)] <= Rational::one())
    }

    /// True unless some proper nonempty `S` splits off:
    /// `F([n]) - F([n] \ S) = F(S)`.
    pub fn is_connected(&self) -> Result<bool> {
        if !self.is_polymatroid(CheckMode::Full) {
            return Err(Error::Precondition(alloc::string::String::from(
                "connectedness is only defined for polymatroids",
            )));
        }
        let full = Subset::full(self.n);
        let top = &self.values[full.index()];
        let split = subset::nonempty_subsets(self.n)
            .filter(|s| *s != full)
            .any(|s| top - &self.values[s.complement().index()] == self.values[s.index()]);
        Ok(!split)
    }

    fn same_ground(&self, other: &SetFunction) {
        assert_eq!(self.n, other.n, "set functions over different ground sets");
    }
}

trait Value: Clone + Ord + Zero {
    fn plus(&self, other: &Self) -> Self;
}

impl Value for i64 {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
}

impl Value for Rational {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
}

fn check_axioms<T: Value>(n: usize, values: &[T], mode: CheckMode) -> Option<Violation> {
    let size = lattice_size(n);
    let sub = |bits: usize| Subset::from_raw(n, bits as u32);
    match mode {
        CheckMode::Local => {
            for a in 0..size {
                for i in 0..n {
                    let ai = a | 1 << i;
                    if ai == a {
                        continue;
                    }
                    if values[ai] < values[a] {
                        return Some(Violation::Monotonicity {
                            smaller: sub(a),
                            larger: sub(ai),
                        });
                    }
                    for j in (i + 1)..n {
                        let aj = a | 1 << j;
                        if aj == a {
                            continue;
                        }
                        let aij = ai | aj;
                        if values[ai].plus(&values[aj]) < values[aij].plus(&values[a]) {
                            return Some(Violation::Submodularity {
                                a: sub(ai),
                                b: sub(aj),
                            });
                        }
                    }
                }
            }
        }
        CheckMode::Full => {
            for b in 0..size {
                // every A ⊆ B
                let mut a = b;
                loop {
                    if values[b] < values[a] {
                        return Some(Violation::Monotonicity {
                            smaller: sub(a),
                            larger: sub(b),
                        });
                    }
                    if a == 0 {
                        break;
                    }
                    a = (a - 1) & b;
                }
            }
            for a in 0..size {
                for b in (a + 1)..size {
                    if values[a].plus(&values[b]) < values[a | b].plus(&values[a & b]) {
                        return Some(Violation::Submodularity { a: sub(a), b: sub(b) });
                    }
                }
            }
        }
    }
    None
}

impl Add for &SetFunction {
    type Output = SetFunction;

    fn add(self, rhs: &SetFunction) -> SetFunction {
        self.same_ground(rhs);
        SetFunction {
            n: self.n,
            values: self.values.iter().zip(&rhs.values).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &SetFunction {
    type Output = SetFunction;

    fn sub(self, rhs: &SetFunction) -> SetFunction {
        self.same_ground(rhs);
        SetFunction {
            n: self.n,
            values: self.values.iter().zip(&rhs.values).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &SetFunction {
    type Output = SetFunction;

    fn neg(self) -> SetFunction {
        SetFunction {
            n: self.n,
            values: self.values.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul<&SetFunction> for &Rational {
    type Output = SetFunction;

    fn mul(self, rhs: &SetFunction) -> SetFunction {
        SetFunction {
            n: rhs.n,
            values: rhs.values.iter().map(|a| self * a).collect(),
        }
    }
}

impl core::iter::Sum for SetFunction {
    /// Panics on an empty iterator (the ground set would be unknown).
    fn sum<I: Iterator<Item = SetFunction>>(mut iter: I) -> Self {
        let first = iter.next().expect("sum of at least one set function");
        iter.fold(first, |acc, f| &acc + &f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn table(n: usize, pairs: &[(&[usize], i64)]) -> SetFunction {
        let mut f = SetFunction::zero(n).unwrap();
        for (elems, v) in pairs {
            f.set(&Subset::new(n, elems).unwrap(), rational::int(*v)).unwrap();
        }
        f
    }

    fn two_points(top: i64) -> SetFunction {
        table(2, &[(&[1], 1), (&[2], 1), (&[1, 2], top)])
    }

    #[test]
    fn basis_vector_values() {
        let e13 = SetFunction::basis(Subset::new(3, &[1, 3]).unwrap()).unwrap();
        assert_eq!(
            *e13.value(&Subset::new(3, &[1, 3]).unwrap()).unwrap(),
            rational::int(1)
        );
        assert_eq!(
            *e13.value(&Subset::new(3, &[1]).unwrap()).unwrap(),
            rational::int(0)
        );
        assert_eq!(*e13.value(&Subset::empty(3)).unwrap(), rational::int(0));
        assert!(e13.value(&Subset::empty(4)).is_err());
        assert_eq!(SetFunction::basis(Subset::empty(3)), Err(Error::EmptyCoordinate));
    }

    #[test]
    fn monotonicity_failure_is_reported() {
        let f = table(2, &[(&[1], 2), (&[2], 1), (&[1, 2], 1)]);
        for mode in [CheckMode::Full, CheckMode::Local] {
            assert!(!f.is_polymatroid(mode));
            assert!(matches!(
                f.check_polymatroid(mode),
                PolymatroidCheck::Violated(Violation::Monotonicity { .. })
            ));
        }
    }

    #[test]
    fn negative_singleton_fails_nonnegativity() {
        let f = table(1, &[(&[1], -1)]);
        assert_eq!(
            f.check_polymatroid(CheckMode::Local),
            PolymatroidCheck::Violated(Violation::Monotonicity {
                smaller: Subset::empty(1),
                larger: Subset::full(1)
            })
        );
    }

    #[test]
    fn non_integral_values_are_flagged_separately() {
        let half = Rational::new(1.into(), 2.into());
        let f = &half * &two_points(2);
        assert_eq!(
            f.check_polymatroid(CheckMode::Full),
            PolymatroidCheck::NonIntegral { axioms_hold: true }
        );
        assert!(!f.is_polymatroid(CheckMode::Full));
    }

    #[test]
    fn matroid_predicate() {
        assert!(two_points(1).is_matroid());
        assert!(two_points(2).is_matroid());
        let doubled = &rational::int(2) * &two_points(2);
        assert!(doubled.is_polymatroid(CheckMode::Full));
        assert!(!doubled.is_matroid());
    }

    #[test]
    fn connectedness() {
        assert_eq!(two_points(2).is_connected(), Ok(false));
        assert_eq!(two_points(1).is_connected(), Ok(true));
        assert_eq!(table(1, &[(&[1], 1)]).is_connected(), Ok(true));
        let bad = table(2, &[(&[1], 2), (&[2], 1), (&[1, 2], 1)]);
        assert!(matches!(bad.is_connected(), Err(Error::Precondition(_))));
    }

    #[test]
    fn basis_vectors_below_top_are_not_polymatroids() {
        for n in 1..=5 {
            for a in subset::nonempty_subsets(n) {
                let e = SetFunction::basis(a).unwrap();
                if a.len() < n {
                    assert!(!e.is_polymatroid(CheckMode::Full), "e_{a}");
                }
            }
        }
    }

    fn all_tables(n: usize, max: i64) -> impl Iterator<Item = SetFunction> {
        let slots = lattice_size(n) - 1;
        let total = (max as u64 + 1).pow(slots as u32);
        (0..total).map(move |mut code| {
            let mut vals = Vec::with_capacity(slots);
            for _ in 0..slots {
                vals.push(rational::int((code % (max as u64 + 1)) as i64));
                code /= max as u64 + 1;
            }
            SetFunction::from_values(n, vals).unwrap()
        })
    }

    #[test]
    fn local_and_full_agree_exhaustively_small() {
        for n in 1..=2 {
            for f in all_tables(n, 3) {
                assert_eq!(
                    f.is_polymatroid(CheckMode::Full),
                    f.is_polymatroid(CheckMode::Local),
                    "{f:?}"
                );
            }
        }
    }

    #[test]
    fn local_and_full_agree_exhaustively_n3() {
        // 4^7 = 16384 tables with values in 0..=3
        let mut agree = 0;
        for f in all_tables(3, 3) {
            assert_eq!(
                f.is_polymatroid(CheckMode::Full),
                f.is_polymatroid(CheckMode::Local),
                "{f:?}"
            );
            agree += 1;
        }
        assert_eq!(agree, 16384);
    }

    #[test]
    fn local_and_full_agree_on_random_tables() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for n in [4usize, 5] {
            let mut positives = 0;
            for trial in 0..10_000 {
                // odd trials cap |A| at a random level, which hits
                // polymatroids far more often than uniform noise
                let f = if trial % 2 == 0 {
                    SetFunction::from_int_fn(n, |_| rng.gen_range(0..=3)).unwrap()
                } else {
                    let cap = rng.gen_range(1..=3);
                    let mut f = SetFunction::from_int_fn(n, |a| (a.len() as i64).min(cap)).unwrap();
                    // perturb one entry so violations show up too
                    let a = Subset::from_bits(n, rng.gen_range(1..1u32 << n)).unwrap();
                    f.set(&a, rational::int(rng.gen_range(0..=3))).unwrap();
                    f
                };
                let full = f.is_polymatroid(CheckMode::Full);
                assert_eq!(full, f.is_polymatroid(CheckMode::Local));
                positives += full as usize;
            }
            assert!(positives > 0);
        }
    }

    #[test]
    fn vector_space_ops() {
        let a = two_points(2);
        let b = two_points(1);
        let d = &a - &b;
        assert_eq!(d, SetFunction::basis(Subset::full(2)).unwrap());
        assert_eq!(&d + &b, a);
        assert_eq!(&(-&a) + &a, SetFunction::zero(2).unwrap());
        assert_eq!(
            vec![a.clone(), b.clone()].into_iter().sum::<SetFunction>(),
            &a + &b
        );
    }
}
