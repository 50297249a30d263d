//! Exact computations with representations of the Toeplitz algebras `E_n`.
//!
//! - [`algebra`]: normal-form arithmetic on the span of `v_α v_β*`.
//! - [`rep`]: block-structured representations on word-indexed bases.
//! - [`wold`]: defect scans, multiplicity and the Wold decomposition.
//! - [`equivalence`]: free and quasifree equivalence witnesses.
//! - [`endo`]: the endomorphisms `a ↦ Σ T_i a T_i*` of `B(H)`.
//! - [`module_kit`]: Hilbert modules over finite-dimensional C*-algebras and K₀ data.
//! - [`io`]: JSON file formats.

pub mod algebra;
pub mod endo;
pub mod equivalence;
pub mod error;
pub mod io;
pub mod matrix;
pub mod module_kit;
pub mod random;
pub mod rep;
pub mod scalar;
pub mod sparse;
pub mod wold;
pub mod word;

pub use algebra::AlgebraElement;
pub use error::{Error, Result};
pub use matrix::ScalarMatrix;
pub use rep::{direct_sum, BasisName, BasisUnitary, BlockKind, Layout, NameVector, RankVector, Representation};
pub use scalar::Scalar;
pub use sparse::SparseVector;
pub use word::{strip_prefix, word_concat, Letter, Word};
