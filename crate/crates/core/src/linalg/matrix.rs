use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::field::{self, Arith, Field, ModP, Q};
use super::integer::{clear_denominators, IntegerEchelon};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A dense matrix over `GF(p)` or `Q`. Rows are vectors; subspaces are
/// represented by the row span of a basis matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Entries,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Entries {
    Prime { p: u64, data: Vec<u64> },
    Rational(Vec<Rational>),
}

impl ExactMatrix {
    /// Row-major entries; in `GF(p)` each rational is reduced mod `p`.
    pub fn new(field: Field, rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows} x {cols} matrix",
                entries.len()
            )));
        }
        let entries = match field {
            Field::Prime(p) => Entries::Prime {
                p,
                data: entries
                    .iter()
                    .map(|x| Field::reduce(p, x))
                    .collect::<Result<_>>()?,
            },
            Field::Rational => Entries::Rational(entries),
        };
        Ok(ExactMatrix { rows, cols, entries })
    }

    /// Convenience constructor from integer rows of length `cols`.
    pub fn from_int_rows(field: Field, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Shape(format!(
                "row of length {} in a matrix with {cols} columns",
                bad.len()
            )));
        }
        let entries = rows.iter().flatten().map(|&x| crate::rational::int(x)).collect();
        ExactMatrix::new(field, rows.len(), cols, entries)
    }

    pub fn zero(field: Field, rows: usize, cols: usize) -> Self {
        let entries = match field {
            Field::Prime(p) => Entries::Prime {
                p,
                data: vec![0; rows * cols],
            },
            Field::Rational => Entries::Rational(vec![Rational::zero(); rows * cols]),
        };
        ExactMatrix { rows, cols, entries }
    }

    /// The `0 x cols` matrix, spanning the zero subspace.
    pub fn empty(field: Field, cols: usize) -> Self {
        ExactMatrix::zero(field, 0, cols)
    }

    pub fn identity(field: Field, size: usize) -> Self {
        let mut rows = vec![vec![0i64; size]; size];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 1;
        }
        ExactMatrix::from_int_rows(field, size, &rows).expect("square shape")
    }

    pub fn field(&self) -> Field {
        match &self.entries {
            Entries::Prime { p, .. } => Field::Prime(*p),
            Entries::Rational(_) => Field::Rational,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> Rational {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        match &self.entries {
            Entries::Prime { data, .. } => Rational::from_integer(BigInt::from(data[i * self.cols + j])),
            Entries::Rational(data) => data[i * self.cols + j].clone(),
        }
    }

    pub fn row(&self, i: usize) -> Vec<Rational> {
        (0..self.cols).map(|j| self.entry(i, j)).collect()
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.compatible(other)?;
        let entries = match (&self.entries, &other.entries) {
            (Entries::Prime { p, data: a }, Entries::Prime { data: b, .. }) => Entries::Prime {
                p: *p,
                data: a.iter().chain(b).copied().collect(),
            },
            (Entries::Rational(a), Entries::Rational(b)) => {
                Entries::Rational(a.iter().chain(b).cloned().collect())
            }
            _ => unreachable!("fields checked"),
        };
        Ok(ExactMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Stacks any number of matrices with `cols` columns over `field`.
    pub fn stack_all<'a>(
        field: Field,
        cols: usize,
        parts: impl IntoIterator<Item = &'a ExactMatrix>,
    ) -> Result<ExactMatrix> {
        parts
            .into_iter()
            .try_fold(ExactMatrix::empty(field, cols), |acc, m| acc.stack(m))
    }

    fn compatible(&self, other: &ExactMatrix) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(format!(
                "{} vs {}",
                self.field(),
                other.field()
            )));
        }
        if self.cols != other.cols {
            return Err(Error::Shape(format!("{} vs {} columns", self.cols, other.cols)));
        }
        Ok(())
    }

    /// Row rank. Over `Q` this uses fraction-free integer elimination.
    pub fn rank(&self) -> usize {
        match &self.entries {
            Entries::Prime { p, data } => {
                let mut data = data.clone();
                field::rref(&ModP(*p), self.rows, self.cols, &mut data).len()
            }
            Entries::Rational(data) => {
                let mut echelon = IntegerEchelon::new(self.cols);
                for r in 0..self.rows {
                    echelon.insert(clear_denominators(&data[r * self.cols..(r + 1) * self.cols]));
                }
                echelon.rank()
            }
        }
    }

    /// The nonzero rows of the reduced row echelon form: a canonical basis of
    /// the row space.
    pub fn row_basis(&self) -> ExactMatrix {
        fn go<A: Arith>(ar: &A, rows: usize, cols: usize, mut data: Vec<A::E>) -> (usize, Vec<A::E>) {
            let r = field::rref(ar, rows, cols, &mut data).len();
            data.truncate(r * cols);
            (r, data)
        }
        let (rank, entries) = match &self.entries {
            Entries::Prime { p, data } => {
                let (r, d) = go(&ModP(*p), self.rows, self.cols, data.clone());
                (r, Entries::Prime { p: *p, data: d })
            }
            Entries::Rational(data) => {
                let (r, d) = go(&Q, self.rows, self.cols, data.clone());
                (r, Entries::Rational(d))
            }
        };
        ExactMatrix {
            rows: rank,
            cols: self.cols,
            entries,
        }
    }

    pub fn same_row_space(&self, other: &ExactMatrix) -> bool {
        self.compatible(other).is_ok() && self.row_basis() == other.row_basis()
    }

    /// Basis of `rowspace(self) ∩ rowspace(other)`.
    ///
    /// Solves `x A = y B` through the right kernel of `[A; -B]^T`; the vectors
    /// `x A` span the intersection.
    pub fn intersect_rows(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.compatible(other)?;
        let a = self.row_basis();
        let b = other.row_basis();
        if a.rows == 0 || b.rows == 0 {
            return Ok(ExactMatrix::empty(self.field(), self.cols));
        }
        fn go<A: Arith>(ar: &A, a: &[A::E], ra: usize, b: &[A::E], rb: usize, cols: usize) -> Vec<A::E> {
            // transpose of [A; -B]: cols x (ra + rb)
            let width = ra + rb;
            let mut t = vec![ar.zero(); cols * width];
            for j in 0..cols {
                for i in 0..ra {
                    t[j * width + i] = a[i * cols + j].clone();
                }
                for i in 0..rb {
                    t[j * width + ra + i] = ar.neg(&b[i * cols + j]);
                }
            }
            let kernel = field::right_kernel(ar, cols, width, t);
            let mut out = Vec::with_capacity(kernel.len() * cols);
            for x in kernel {
                for j in 0..cols {
                    let mut acc = ar.zero();
                    for i in 0..ra {
                        if !ar.is_zero(&x[i]) {
                            acc = ar.add(&acc, &ar.mul(&x[i], &a[i * cols + j]));
                        }
                    }
                    out.push(acc);
                }
            }
            out
        }
        let cols = self.cols;
        let entries = match (&a.entries, &b.entries) {
            (Entries::Prime { p, data: da }, Entries::Prime { data: db, .. }) => Entries::Prime {
                p: *p,
                data: go(&ModP(*p), da, a.rows, db, b.rows, cols),
            },
            (Entries::Rational(da), Entries::Rational(db)) => {
                Entries::Rational(go(&Q, da, a.rows, db, b.rows, cols))
            }
            _ => unreachable!("fields checked"),
        };
        let len = match &entries {
            Entries::Prime { data, .. } => data.len(),
            Entries::Rational(data) => data.len(),
        };
        let m = ExactMatrix {
            rows: len / cols.max(1),
            cols,
            entries,
        };
        Ok(m.row_basis())
    }

    /// The same integer matrix read in another field.
    pub fn to_field(&self, field: Field) -> Result<ExactMatrix> {
        let entries = (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .map(|(i, j)| self.entry(i, j))
            .collect();
        ExactMatrix::new(field, self.rows, self.cols, entries)
    }
}
