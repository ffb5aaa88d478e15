//! Exact arithmetic for polymatroids, subspace arrangements and the linear
//! inequalities that separate realizable rank functions from general ones.
//!
//! Everything here is `no_std` (with `alloc`): set functions on the Boolean
//! lattice, sparse linear functionals, union-preserving substitution maps,
//! subspace arrangements over prime fields and the rationals, and a set of
//! certificate checks that re-derive the facet and hierarchy properties of the
//! Ingleton-type inequality family `I_n` by exact computation.
//!
//! Iteration over subsets is always in ascending bitmask order (element `i`
//! is bit `i - 1`), so every table and report is deterministic.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod arrangement;
pub mod certificates;
pub mod error;
pub mod functional;
pub mod linalg;
pub mod polymatroid;
pub mod rational;
pub mod subset;
pub mod unionmap;

pub use arrangement::{generic_lines, random_arrangement, uniform_u, Arrangement};
pub use certificates::{CertificateReport, Outcome};
pub use error::{Error, Result};
pub use functional::{basic_functionals, kinser, Functional, Permutation};
pub use linalg::{ExactMatrix, Field};
pub use polymatroid::{CheckMode, PolymatroidCheck, SetFunction};
pub use rational::Rational;
pub use subset::{mobius, Subset, MAX_GROUND};
pub use unionmap::{hierarchy_map, UnionMap};
