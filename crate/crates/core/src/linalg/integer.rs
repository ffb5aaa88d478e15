//! Fraction-free row echelon form over the integers, used for exact ranks and
//! span membership of rational vectors.
//!
//! Every stored row is primitive (content one, positive pivot), and a vector
//! is reduced against row `r` with pivot `c` by `v <- r[c] v - v[c] r`
//! followed by division by the content. No rationals appear, and the content
//! division keeps entries close to the size of the input.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Debug, Default)]
pub struct IntegerEchelon {
    cols: usize,
    // sorted by pivot column; row entries before the pivot are zero
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl IntegerEchelon {
    pub fn new(cols: usize) -> Self {
        IntegerEchelon {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows; the result is zero exactly when
    /// `v` lies in their span.
    pub fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length");
        make_primitive(&mut v);
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let a = &row[*pivot];
            let b = v[*pivot].clone();
            for j in *pivot..self.cols {
                let scaled = a * &v[j];
                v[j] = if row[j].is_zero() {
                    scaled
                } else {
                    scaled - &b * &row[j]
                };
            }
            make_primitive(&mut v);
        }
        v
    }

    pub fn contains(&self, v: Vec<BigInt>) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<BigInt>) -> bool {
        let v = self.reduce(v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let at = self.rows.partition_point(|(p, _)| *p < pivot);
        self.rows.insert(at, (pivot, v));
        true
    }

    pub fn insert_rational(&mut self, v: &[Rational]) -> bool {
        self.insert(clear_denominators(v))
    }

    pub fn contains_rational(&self, v: &[Rational]) -> bool {
        self.contains(clear_denominators(v))
    }
}

/// Scales a rational vector by the lcm of its denominators.
pub fn clear_denominators(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

fn make_primitive(v: &mut [BigInt]) {
    let mut content = BigInt::zero();
    let mut lead_negative = None;
    for x in v.iter().filter(|x| !x.is_zero()) {
        if lead_negative.is_none() {
            lead_negative = Some(x.is_negative());
        }
        content = content.gcd(x);
        if content.is_one() && lead_negative == Some(false) {
            return;
        }
    }
    if content.is_zero() {
        return;
    }
    if lead_negative == Some(true) {
        content = -content;
    }
    if content.is_one() {
        return;
    }
    for x in v.iter_mut() {
        if !x.is_zero() {
            *x = &*x / &content;
        }
    }
}

/// Exact rank of a family of rational vectors of length `cols`.
pub fn rational_rank<'a>(cols: usize, vectors: impl IntoIterator<Item = &'a [Rational]>) -> usize {
    let mut echelon = IntegerEchelon::new(cols);
    for v in vectors {
        echelon.insert_rational(v);
    }
    echelon.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rank_and_membership() {
        let mut e = IntegerEchelon::new(3);
        assert!(e.insert(ints(&[2, 4, 6])));
        assert!(!e.insert(ints(&[-1, -2, -3])));
        assert!(e.insert(ints(&[0, 3, 1])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(ints(&[2, 7, 7])));
        assert!(!e.contains(ints(&[0, 0, 1])));
        assert!(e.insert(ints(&[0, 0, 5])));
        assert_eq!(e.rank(), 3);
    }

    #[test]
    fn rational_vectors_are_cleared() {
        let half = Rational::new(1.into(), 2.into());
        let v = [half.clone(), rational::int(1)];
        assert_eq!(clear_denominators(&v), ints(&[1, 2]));
        let w = [rational::int(1), rational::int(2)];
        assert_eq!(rational_rank(2, [&v[..], &w[..]]), 1);
    }

    #[test]
    fn hilbert_like_matrix_has_full_rank() {
        let n = 8;
        let rows: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Rational::new(1.into(), BigInt::from(i + j + 1)))
                    .collect()
            })
            .collect();
        assert_eq!(rational_rank(n, rows.iter().map(|r| &r[..])), n);
    }
}
