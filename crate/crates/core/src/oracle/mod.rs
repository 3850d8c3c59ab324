//! Brute-force computations over small finite fields, used to check the
//! symbolic engine: flag counts, centralizer orders, symmetric group
//! characters, the twisting element `c_lambda`, and Kostka-Foulkes
//! polynomials from the charge statistic.

pub mod centralizer;
pub mod clambda;
pub mod field;
pub mod flags;
pub mod kostka;
pub mod specht;

pub use centralizer::brute_centralizer;
pub use clambda::{compute_c_lambda, CLambda, CLambdaConfig};
pub use flags::{count_flags, interpolate_counts, Interpolation};
pub use kostka::kostka_foulkes;
pub use specht::brute_symmetric_character;
