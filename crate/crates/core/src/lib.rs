//! Generalized Green functions of `GL_n` and `SL_n` over finite fields.
//!
//! The pipeline runs series enumeration ([`springer`]), the Omega matrix and
//! the matrix equation `tP * Lambda * P = Omega` ([`solver`]), and Green
//! function tables with the split/non-split comparison ([`greentab`]).
//! Everything is exact: rational functions in `q` ([`qpoly`]) with
//! cyclotomic coefficients where roots of unity appear ([`cyclotomic`]).
//! The [`oracle`] module recomputes the same quantities by brute force over
//! small finite fields, and [`verify`] runs the acceptance checks that the
//! [`cli`] exposes as `gengreen verify`.

pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod greentab;
pub mod oracle;
pub mod partitions;
pub mod qpoly;
pub mod reductive;
pub mod solver;
pub mod springer;
pub mod symgroup;
pub mod verify;

pub use error::{Error, Result};
