//! Monomial codes over GF(2): Reed-Muller, polar and partially symmetric
//! constructions, projection-based symmetry checks, and ML decoding on the
//! binary erasure channel.

pub mod bec;
pub mod codefile;
mod error;
mod flow;
pub mod gf2;
pub mod monomial;
pub mod psc;
pub mod symmetry;

pub use error::{Error, Result};
pub use monomial::{
    code_params, evaluate, generator_matrix, mon_of_row, reed_muller, rm_dimension, row_of_mon, CodeParams,
    Monomial, MonomialCode,
};
