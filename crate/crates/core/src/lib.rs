//! Support varieties for Frobenius kernels of the classical groups
//! `SL_n`, `SO_n` and `Sp_2n`, computed exactly.
//!
//! The crate is organised bottom-up:
//!
//! * [`rootsys`]: root systems of types A–D, weights, Weyl group actions,
//!   base-`p` digits and the admissibility gate `p > h·c`.
//! * [`linkage`]: blocks of `Dist(G_(r))` via the linkage condition.
//! * [`varieties`]: symbolic descriptors of support varieties over `G_(1)`
//!   and `G_(r)` together with finite-field membership tests.
//! * [`dpalg`]: the divided-power algebra `Dist(G_a)^{⊗r}` and the
//!   decomposition of `dψ_r(u_{r-1})`.
//! * [`oracle`]: explicit `SL_2` modules over finite fields, used to check
//!   the descriptors point by point.
//! * [`cli`]: request validation, dispatch and JSON reports for the
//!   `frobvar` binary.

pub mod cli;
pub mod dpalg;
pub mod error;
pub mod field;
pub mod lattice;
pub mod linkage;
pub mod matrix;
pub mod oracle;
pub mod rootsys;
pub mod varieties;

pub use error::{Error, Result};
pub use rootsys::{Family, Root, RootSystem, Weight, WeylElement};
pub use varieties::{G1Variety, SimpleRegistry, TupleVariety};
