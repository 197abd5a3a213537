//! Nonlinear feedforward generators (NLFGs) over GF(q) and over word-based
//! σ-LFSRs, with exact full-period output distributions checked against
//! closed-form counts.
//!
//! The crate is organised bottom-up:
//!
//! * [`gf`]: field tower, polynomials, matrices, primitivity.
//! * [`registers`]: scalar LFSRs and σ-LFSRs.
//! * [`nlfg`]: multiplier assemblies and the generator.
//! * [`oracle`]: closed-form counts and brute-force enumerators.
//! * [`analysis`]: full-period measurement, reconciliation, Berlekamp–Massey
//!   and scheme comparison.
//! * [`cli`]: the `nlfg` command-line front end.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod gf;
pub mod nlfg;
pub mod oracle;
pub mod registers;

pub use error::{Error, Result};
