use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Coefficient field of a matrix or arrangement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    /// `GF(p)`; `p` is prime and below `2^32` so products fit in a `u64`.
    Prime(u64),
    Rational,
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if !(2..1 << 32).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    /// `0` selects the rationals, anything else must be a supported prime.
    pub fn from_code(code: u64) -> Result<Self> {
        if code == 0 {
            Ok(Field::Rational)
        } else {
            Field::prime(code)
        }
    }

    pub fn code(&self) -> u64 {
        match self {
            Field::Prime(p) => *p,
            Field::Rational => 0,
        }
    }

    /// Reduces a rational into `GF(p)`; fails if the denominator vanishes.
    pub(crate) fn reduce(p: u64, value: &Rational) -> Result<u64> {
        let residue = |x: &num_bigint::BigInt| -> u64 {
            let r = x % num_bigint::BigInt::from(p);
            let r = if r < num_bigint::BigInt::zero() {
                r + num_bigint::BigInt::from(p)
            } else {
                r
            };
            u64::try_from(&r).expect("residue below p")
        };
        let num = residue(value.numer());
        let den = residue(value.denom());
        if den == 0 {
            return Err(Error::BadEntry(alloc::format!("{value} (mod {p})")));
        }
        Ok(ModP(p).mul(&num, &ModP(p).inv(&den)))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "GF({p})"),
            Field::Rational => write!(f, "Q"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Field operations used by the generic elimination routines.
pub(crate) trait Arith {
    type E: Clone + PartialEq + core::fmt::Debug;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    /// Panics on zero.
    fn inv(&self, a: &Self::E) -> Self::E;
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct ModP(pub u64);

impl Arith for ModP {
    type E = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.0
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.0
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.0 - a) % self.0
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero in GF({})", self.0);
        // Fermat: a^(p-2)
        let (mut base, mut exp, mut acc) = (*a, self.0 - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.0;
            }
            base = base * base % self.0;
            exp >>= 1;
        }
        acc
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Q;

impl Arith for Q {
    type E = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Rational {
        assert!(!a.is_zero(), "inverse of zero in Q");
        a.recip()
    }
}

/// In-place Gauss-Jordan elimination of a row-major `rows x cols` matrix.
/// Afterwards the first `r` rows are the reduced row echelon form (pivots
/// equal to one) and the remaining rows are zero. Returns the pivot columns.
pub(crate) fn rref<A: Arith>(ar: &A, rows: usize, cols: usize, data: &mut [A::E]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(found) = (r..rows).find(|&i| !ar.is_zero(&data[i * cols + c])) else {
            continue;
        };
        if found != r {
            for j in 0..cols {
                data.swap(found * cols + j, r * cols + j);
            }
        }
        let inv = ar.inv(&data[r * cols + c]);
        for j in c..cols {
            data[r * cols + j] = ar.mul(&data[r * cols + j], &inv);
        }
        for i in 0..rows {
            if i == r || ar.is_zero(&data[i * cols + c]) {
                continue;
            }
            let factor = data[i * cols + c].clone();
            for j in c..cols {
                let delta = ar.mul(&factor, &data[r * cols + j]);
                data[i * cols + j] = ar.sub(&data[i * cols + j], &delta);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{x : M x = 0}` for a row-major `rows x cols` matrix.
pub(crate) fn right_kernel<A: Arith>(
    ar: &A,
    rows: usize,
    cols: usize,
    mut data: Vec<A::E>,
) -> Vec<Vec<A::E>> {
    let pivots = rref(ar, rows, cols, &mut data);
    let mut is_pivot = alloc::vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut x = alloc::vec![ar.zero(); cols];
        x[free] = ar.one();
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = ar.neg(&data[r * cols + free]);
        }
        basis.push(x);
    }
    basis
}
