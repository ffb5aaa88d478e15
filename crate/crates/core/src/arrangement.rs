//! Subspace arrangements `V_1, ..., V_n` of a `d`-dimensional space and their
//! rank functions `A -> dim Σ_{i ∈ A} V_i`.

use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, Field};
use crate::polymatroid::SetFunction;
use crate::subset::{self, check_ground, Subset};
use crate::unionmap::UnionMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    field: Field,
    ambient_dim: usize,
    // each stored in reduced row echelon form, so full row rank
    subspaces: Vec<ExactMatrix>,
}

impl Arrangement {
    /// Each matrix spans one subspace; bases are row-reduced on the way in.
    pub fn new(field: Field, ambient_dim: usize, spans: Vec<ExactMatrix>) -> Result<Self> {
        check_ground(spans.len())?;
        let mut subspaces = Vec::with_capacity(spans.len());
        for (i, m) in spans.iter().enumerate() {
            if m.field() != field {
                return Err(Error::FieldMismatch(format!(
                    "subspace {} is over {}, arrangement over {field}",
                    i + 1,
                    m.field()
                )));
            }
            if m.cols() != ambient_dim {
                return Err(Error::Shape(format!(
                    "subspace {} has {} columns, ambient dimension is {ambient_dim}",
                    i + 1,
                    m.cols()
                )));
            }
            subspaces.push(m.row_basis());
        }
        Ok(Arrangement {
            field,
            ambient_dim,
            subspaces,
        })
    }

    pub fn n(&self) -> usize {
        self.subspaces.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Basis of `V_i`, 1-based.
    pub fn subspace(&self, i: usize) -> &ExactMatrix {
        &self.subspaces[i - 1]
    }

    pub fn subspaces(&self) -> &[ExactMatrix] {
        &self.subspaces
    }

    fn check_indices(&self, indices: &Subset) -> Result<()> {
        if indices.ground() != self.n() {
            return Err(Error::GroundMismatch {
                expected: self.n(),
                found: indices.ground(),
            });
        }
        Ok(())
    }

    /// Basis of `Σ_{i ∈ A} V_i`.
    pub fn sum(&self, indices: &Subset) -> Result<ExactMatrix> {
        self.check_indices(indices)?;
        let stacked = ExactMatrix::stack_all(
            self.field,
            self.ambient_dim,
            indices.elements().map(|i| self.subspace(i)),
        )?;
        Ok(stacked.row_basis())
    }

    /// `dim Σ_{i ∈ A} V_i`; zero for the empty sum.
    pub fn rank_of(&self, indices: &Subset) -> Result<usize> {
        self.check_indices(indices)?;
        let stacked = ExactMatrix::stack_all(
            self.field,
            self.ambient_dim,
            indices.elements().map(|i| self.subspace(i)),
        )?;
        Ok(stacked.rank())
    }

    pub fn rank_function(&self) -> SetFunction {
        let n = self.n();
        SetFunction::from_int_fn(n, |a| self.rank_of(&a).expect("indices in range") as i64)
            .expect("n checked at construction")
    }

    /// Basis of `∩_{i ∈ indices} V_i`.
    pub fn intersect(&self, indices: &Subset) -> Result<ExactMatrix> {
        self.check_indices(indices)?;
        let mut members = indices.elements();
        let first = members.next().ok_or(Error::EmptyIndexSet)?;
        members.try_fold(self.subspace(first).clone(), |acc, i| {
            acc.intersect_rows(self.subspace(i))
        })
    }

    /// The arrangement `{Σ_{j ∈ φ(i)} V_j}_{i=1..k}`, whose rank function is
    /// `φ^# rk_V`.
    pub fn sum_pullback(&self, phi: &UnionMap) -> Result<Arrangement> {
        if phi.target() != self.n() {
            return Err(Error::GroundMismatch {
                expected: self.n(),
                found: phi.target(),
            });
        }
        let spans = phi
            .images()
            .iter()
            .map(|img| self.sum(img))
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(self.field, self.ambient_dim, spans)
    }

    /// The same integer bases read over another field.
    pub fn to_field(&self, field: Field) -> Result<Arrangement> {
        let spans = self
            .subspaces
            .iter()
            .map(|m| m.to_field(field))
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(field, self.ambient_dim, spans)
    }
}

/// `U(S, d)(A) = min{d, |A ∩ S|}`.
pub fn uniform_u(n: usize, s: &Subset, d: usize) -> Result<SetFunction> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    if s.ground() != n {
        return Err(Error::GroundMismatch {
            expected: n,
            found: s.ground(),
        });
    }
    let bits = s.bits();
    SetFunction::from_int_fn(n, |a| ((a.bits() & bits).count_ones() as usize).min(d) as i64)
}

/// Lines in general position in `GF(p)^d` for `i ∈ S` and zero subspaces
/// elsewhere. Line `i` is spanned by the moment-curve vector
/// `(1, t, t^2, ..., t^{d-1})` with `t = 0, 1, 2, ...` in the order of `S`.
/// The result is checked against `U(S, d)`; if the field is too small for
/// the lines to be in general position this returns an error.
pub fn generic_lines(n: usize, s: &Subset, d: usize, p: u64) -> Result<Arrangement> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    check_ground(n)?;
    if s.ground() != n {
        return Err(Error::GroundMismatch {
            expected: n,
            found: s.ground(),
        });
    }
    let field = Field::prime(p)?;
    let mut t = 0u64;
    let mut spans = Vec::with_capacity(n);
    for i in 1..=n {
        if s.contains(i) {
            let mut row = Vec::with_capacity(d);
            let mut power = 1 % p;
            for _ in 0..d {
                row.push(power as i64);
                power = power * (t % p) % p;
            }
            spans.push(ExactMatrix::from_int_rows(field, d, &[row])?);
            t += 1;
        } else {
            spans.push(ExactMatrix::empty(field, d));
        }
    }
    let arrangement = Arrangement::new(field, d, spans)?;
    if arrangement.rank_function() != uniform_u(n, s, d)? {
        return Err(Error::GeneralPosition {
            p,
            lines: s.len(),
            dim: d,
        });
    }
    Ok(arrangement)
}

/// A random arrangement of `n` subspaces of `GF(p)^d`: `V_i` is spanned by
/// `k_i` uniform vectors with `k_i` uniform in `0..=d`. Deterministic in
/// `seed`.
pub fn random_arrangement(n: usize, d: usize, p: u64, seed: u64) -> Result<Arrangement> {
    check_ground(n)?;
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let field = Field::prime(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spans = Vec::with_capacity(n);
    for _ in 0..n {
        let k = rng.gen_range(0..=d);
        let rows: Vec<Vec<i64>> = (0..k)
            .map(|_| (0..d).map(|_| rng.gen_range(0..p) as i64).collect())
            .collect();
        spans.push(ExactMatrix::from_int_rows(field, d, &rows)?);
    }
    Arrangement::new(field, d, spans)
}

/// Independent per-trial seed derived from a master seed, so parallel sweeps
/// give the same trials regardless of scheduling.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index.wrapping_add(0x9e37_79b9_7f4a_7c15)))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// All `U(S, d)` with `S` nonempty and `1 <= d <= n`, ascending in `S` then `d`.
pub fn all_uniform(n: usize) -> Result<Vec<(Subset, usize, SetFunction)>> {
    let mut out = Vec::new();
    for s in subset::nonempty_subsets(n) {
        for d in 1..=n {
            out.push((s, d, uniform_u(n, &s, d)?));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functional::{basic_functionals, kinser, orbit};
    use crate::polymatroid::CheckMode;
    use crate::rational;
    use num_traits::Signed;

    fn s(n: usize, e: &[usize]) -> Subset {
        Subset::new(n, e).unwrap()
    }

    fn lines(field: Field, vecs: &[&[i64]]) -> Arrangement {
        let spans = vecs
            .iter()
            .map(|v| ExactMatrix::from_int_rows(field, v.len(), &[v.to_vec()]).unwrap())
            .collect();
        Arrangement::new(field, vecs[0].len(), spans).unwrap()
    }

    #[test]
    fn rank_function_of_two_lines() {
        let gf2 = Field::Prime(2);
        let independent = lines(gf2, &[&[1, 0], &[0, 1]]);
        assert_eq!(
            independent.rank_function(),
            SetFunction::from_int_fn(2, |a| a.len() as i64).unwrap()
        );
        let equal = lines(gf2, &[&[1, 0], &[1, 0]]);
        assert_eq!(equal.rank_function(), SetFunction::from_int_fn(2, |_| 1).unwrap());
    }

    #[test]
    fn uniform_examples() {
        let u = uniform_u(4, &s(4, &[1, 2, 3]), 2).unwrap();
        assert_eq!(*u.value(&s(4, &[1, 2, 3])).unwrap(), rational::int(2));
        assert_eq!(*u.value(&s(4, &[4])).unwrap(), rational::int(0));
        assert!(u.is_polymatroid(CheckMode::Full));
        assert_eq!(uniform_u(4, &s(4, &[1]), 0), Err(Error::ZeroDimension));
    }

    #[test]
    fn uniform_splits_into_singletons_when_uncapped() {
        for n in 1..=5 {
            for set in subset::nonempty_subsets(n) {
                let split: SetFunction = set
                    .elements()
                    .map(|i| uniform_u(n, &Subset::singleton(n, i), 1).unwrap())
                    .sum();
                for d in set.len()..=n {
                    assert_eq!(uniform_u(n, &set, d).unwrap(), split);
                }
            }
        }
    }

    #[test]
    fn generic_lines_realize_uniform() {
        let set = s(4, &[1, 2, 3]);
        let v = generic_lines(4, &set, 2, 7).unwrap();
        let rk = v.rank_function();
        let at = |e: &[usize]| rk.value(&s(4, e)).unwrap().clone();
        assert_eq!(
            [at(&[1]), at(&[4]), at(&[1, 4]), at(&[1, 2, 3])],
            [1, 0, 1, 2].map(rational::int)
        );
        assert_eq!(rk, uniform_u(4, &set, 2).unwrap());
        assert_eq!(
            generic_lines(4, &Subset::full(4), 3, 2),
            Err(Error::GeneralPosition {
                p: 2,
                lines: 4,
                dim: 3
            })
        );
        let none = generic_lines(3, &Subset::empty(3), 2, 5).unwrap();
        assert_eq!(none.rank_function(), SetFunction::zero(3).unwrap());
        assert_eq!(generic_lines(3, &Subset::full(3), 2, 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn intersection_examples() {
        let v = lines(Field::Rational, &[&[1, 0], &[0, 1]]);
        assert_eq!(v.intersect(&s(2, &[1, 2])).unwrap().rows(), 0);
        assert!(v.intersect(&s(2, &[1])).unwrap().same_row_space(v.subspace(1)));
        assert_eq!(v.intersect(&Subset::empty(2)), Err(Error::EmptyIndexSet));
    }

    #[test]
    fn intersection_dimension_formula() {
        for seed in 0..200u64 {
            let p = [2, 3, 5][seed as usize % 3];
            let v = random_arrangement(2, 4, p, seed).unwrap();
            let meet = v.intersect(&Subset::full(2)).unwrap().rows();
            let a = v.subspace(1).rows();
            let b = v.subspace(2).rows();
            let sum = v.rank_of(&Subset::full(2)).unwrap();
            assert_eq!(meet, a + b - sum, "seed {seed}");
        }
    }

    #[test]
    fn random_arrangements_are_deterministic_and_polymatroidal() {
        for seed in 0..60u64 {
            let a = random_arrangement(4, 3, 5, seed).unwrap();
            assert_eq!(a, random_arrangement(4, 3, 5, seed).unwrap());
            let rk = a.rank_function();
            assert!(rk.is_polymatroid(CheckMode::Local));
            assert!(rk.is_polymatroid(CheckMode::Full));
            for f in orbit(&kinser(4).unwrap()).unwrap() {
                assert!(!f.pair(&rk).unwrap().is_negative(), "seed {seed}");
            }
        }
    }

    #[test]
    fn basic_inequalities_hold_on_gf5_arrangements() {
        let basics = basic_functionals(4).unwrap();
        for seed in 0..50u64 {
            let rk = random_arrangement(4, 4, 5, derive_seed(7, seed))
                .unwrap()
                .rank_function();
            for f in &basics {
                assert!(!f.pair(&rk).unwrap().is_negative());
            }
        }
    }

    #[test]
    fn sum_pullback_examples() {
        let v = random_arrangement(3, 3, 7, 11).unwrap();
        let id = UnionMap::identity(3).unwrap();
        let same = v.sum_pullback(&id).unwrap();
        for i in 1..=3 {
            assert!(same.subspace(i).same_row_space(v.subspace(i)));
        }
        let phi = UnionMap::new(2, 3, vec![Subset::empty(3), s(3, &[1, 3])]).unwrap();
        let w = v.sum_pullback(&phi).unwrap();
        assert_eq!(w.subspace(1).rows(), 0);
        assert_eq!(w.rank_function(), phi.pullback(&v.rank_function()).unwrap());
    }

    #[test]
    fn construction_rejects_mismatches() {
        let m = ExactMatrix::identity(Field::Prime(3), 2);
        assert!(matches!(
            Arrangement::new(Field::Rational, 2, vec![m.clone()]),
            Err(Error::FieldMismatch(_))
        ));
        assert!(matches!(
            Arrangement::new(Field::Prime(3), 3, vec![m]),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn seeds_differ_per_trial() {
        let seeds: alloc::collections::BTreeSet<u64> = (0..1000).map(|i| derive_seed(42, i)).collect();
        assert_eq!(seeds.len(), 1000);
    }
}
