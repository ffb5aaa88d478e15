//! Sparse linear functionals on `H_n`, written in the dual basis `e*_A`.

use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polymatroid::SetFunction;
use crate::rational::{self, Rational};
use crate::subset::{self, check_ground, Subset};

/// `Σ c_A e*_A` with no stored zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Functional {
    n: usize,
    coeffs: BTreeMap<Subset, Rational>,
}

impl Functional {
    pub fn zero(n: usize) -> Result<Self> {
        check_ground(n)?;
        Ok(Functional {
            n,
            coeffs: BTreeMap::new(),
        })
    }

    /// The dual basis element `e*_A`.
    pub fn dual_basis(a: Subset) -> Result<Self> {
        Functional::from_terms(a.ground(), [(a, Rational::one())])
    }

    /// Sums the given terms; repeated subsets accumulate.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Subset, Rational)>) -> Result<Self> {
        let mut f = Functional::zero(n)?;
        for (a, c) in terms {
            if a.ground() != n {
                return Err(Error::GroundMismatch {
                    expected: n,
                    found: a.ground(),
                });
            }
            if a.is_empty() {
                return Err(Error::EmptyCoordinate);
            }
            f.accumulate(a, c);
        }
        Ok(f)
    }

    /// Adds `c e*_A`; callers check `A` is nonempty and on the right ground set.
    pub(crate) fn accumulate(&mut self, a: Subset, c: Rational) {
        let entry = self.coeffs.entry(a).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&a);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, a: &Subset) -> Rational {
        self.coeffs.get(a).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in ascending subset order.
    pub fn terms(&self) -> impl Iterator<Item = (&Subset, &Rational)> {
        self.coeffs.iter()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `⟨f, P⟩ = Σ_A c_A P(A)`. The inequality `f` holds for `P` iff this is
    /// nonnegative.
    pub fn pair(&self, p: &SetFunction) -> Result<Rational> {
        if p.n() != self.n {
            return Err(Error::GroundMismatch {
                expected: self.n,
                found: p.n(),
            });
        }
        Ok(self
            .coeffs
            .iter()
            .fold(Rational::zero(), |acc, (a, c)| acc + c * p.at(a.index())))
    }

    /// Coefficient vector in `Q^{2^n - 1}`, ascending mask order.
    pub fn dense(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); subset::lattice_size(self.n) - 1];
        for (a, c) in &self.coeffs {
            out[a.index() - 1] = c.clone();
        }
        out
    }

    /// Relabels indices: the coefficient of `σ(A)` in the result is the
    /// coefficient of `A` in `self`.
    pub fn permute(&self, sigma: &Permutation) -> Result<Functional> {
        if sigma.n() != self.n {
            return Err(Error::GroundMismatch {
                expected: self.n,
                found: sigma.n(),
            });
        }
        let mut out = Functional::zero(self.n)?;
        for (a, c) in &self.coeffs {
            out.accumulate(sigma.apply_subset(a), c.clone());
        }
        Ok(out)
    }

    fn same_ground(&self, other: &Functional) {
        assert_eq!(self.n, other.n, "functionals over different ground sets");
    }
}

/// Free-function form of [`Functional::permute`].
pub fn permute_functional(f: &Functional, sigma: &Permutation) -> Result<Functional> {
    f.permute(sigma)
}

/// The inequality `I_n`:
///
/// `e*_{1,3} + e*_{1,n} - e*_{1,2} - e*_{1,3,n}
///   + Σ_{i=3..n} (e*_{2,i} + e*_{i-1,i} - e*_{i} - e*_{2,i-1,i})`.
///
/// Index sets are collapsed before coefficients are added, so the `i = 3`
/// terms `e*_{i-1,i}` and `e*_{2,i-1,i}` both land on `{2,3}`. For `n = 4`
/// this is Ingleton's inequality.
pub fn kinser(n: usize) -> Result<Functional> {
    if n < 4 {
        return Err(Error::TooSmall { n, min: 4 });
    }
    check_ground(n)?;
    let s = |e: &[usize]| Subset::new(n, e).expect("indices in range");
    let plus = || rational::int(1);
    let minus = || rational::int(-1);
    let mut terms = vec![
        (s(&[1, 3]), plus()),
        (s(&[1, n]), plus()),
        (s(&[1, 2]), minus()),
        (s(&[1, 3, n]), minus()),
    ];
    for i in 3..=n {
        terms.push((s(&[2, i]), plus()));
        terms.push((s(&[i - 1, i]), plus()));
        terms.push((s(&[i]), minus()));
        terms.push((s(&[2, i - 1, i]), minus()));
    }
    Functional::from_terms(n, terms)
}

/// The local generating family of the basic (polymatroid) inequalities:
/// monotonicity `e*_{A+i} - e*_A` for `i ∉ A`, and exchange submodularity
/// `e*_{A+i} + e*_{A+j} - e*_{A+i+j} - e*_A` for `i < j ∉ A`. Terms on `∅`
/// are dropped since every point of `H_n` vanishes there.
pub fn basic_functionals(n: usize) -> Result<Vec<Functional>> {
    check_ground(n)?;
    let mut out = Vec::new();
    for a in subset::all_subsets(n) {
        let outside: Vec<usize> = a.complement().elements().collect();
        for &i in &outside {
            let ai = a.with(i)?;
            let mut f = Functional::zero(n)?;
            f.accumulate(ai, rational::int(1));
            if !a.is_empty() {
                f.accumulate(a, rational::int(-1));
            }
            out.push(f);
        }
        for (k, &i) in outside.iter().enumerate() {
            for &j in &outside[k + 1..] {
                let mut f = Functional::zero(n)?;
                f.accumulate(a.with(i)?, rational::int(1));
                f.accumulate(a.with(j)?, rational::int(1));
                f.accumulate(a.with(i)?.with(j)?, rational::int(-1));
                if !a.is_empty() {
                    f.accumulate(a, rational::int(-1));
                }
                out.push(f);
            }
        }
    }
    Ok(out)
}

/// The distinct images of `f` under all `n!` index permutations, in
/// first-seen order over lexicographically ordered permutations.
pub fn orbit(f: &Functional) -> Result<Vec<Functional>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for sigma in Permutation::all(f.n())? {
        let g = f.permute(&sigma)?;
        let key: Vec<(Subset, Rational)> = g.terms().map(|(a, c)| (*a, c.clone())).collect();
        if seen.insert(key) {
            out.push(g);
        }
    }
    Ok(out)
}

/// A bijection of `[n]`, stored as 1-based images `σ(1), ..., σ(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        check_ground(n)?;
        let mut seen = vec![false; n + 1];
        for &i in &images {
            if i == 0 || i > n {
                return Err(Error::NotPermutation {
                    n,
                    detail: format!("image {i} out of range"),
                });
            }
            if core::mem::replace(&mut seen[i], true) {
                return Err(Error::NotPermutation {
                    n,
                    detail: format!("image {i} repeated"),
                });
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Permutation::new((1..=n).collect())
    }

    /// Swaps `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        if i == 0 || i > n || j == 0 || j > n {
            return Err(Error::ElementOutOfRange { element: i.max(j), n });
        }
        images.swap(i - 1, j - 1);
        Permutation::new(images)
    }

    /// All `n!` permutations in lexicographic order of their image lists.
    pub fn all(n: usize) -> Result<Vec<Permutation>> {
        check_ground(n)?;
        if n > 9 {
            return Err(Error::TooLarge { n, max: 9 });
        }
        let mut current: Vec<usize> = (1..=n).collect();
        let mut out = vec![Permutation {
            images: current.clone(),
        }];
        while next_permutation(&mut current) {
            out.push(Permutation {
                images: current.clone(),
            });
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn apply_subset(&self, a: &Subset) -> Subset {
        let bits = a.elements().fold(0u32, |acc, i| acc | 1 << (self.apply(i) - 1));
        Subset::from_raw(self.n(), bits)
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::GroundMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&i| self.apply(i)).collect(),
        })
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len())
        .rev()
        .find(|&j| v[j] > v[i - 1])
        .expect("pivot successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl Add for &Functional {
    type Output = Functional;

    fn add(self, rhs: &Functional) -> Functional {
        self.same_ground(rhs);
        let mut out = self.clone();
        for (a, c) in &rhs.coeffs {
            out.accumulate(*a, c.clone());
        }
        out
    }
}

impl Sub for &Functional {
    type Output = Functional;

    fn sub(self, rhs: &Functional) -> Functional {
        self + &(-rhs)
    }
}

impl Neg for &Functional {
    type Output = Functional;

    fn neg(self) -> Functional {
        Functional {
            n: self.n,
            coeffs: self.coeffs.iter().map(|(a, c)| (*a, -c)).collect(),
        }
    }
}

impl Mul<&Functional> for &Rational {
    type Output = Functional;

    fn mul(self, rhs: &Functional) -> Functional {
        if self.is_zero() {
            return Functional {
                n: rhs.n,
                coeffs: BTreeMap::new(),
            };
        }
        Functional {
            n: rhs.n,
            coeffs: rhs.coeffs.iter().map(|(a, c)| (*a, self * c)).collect(),
        }
    }
}
