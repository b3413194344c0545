//! Exact Hilbert-series calculus for isolated orbifold candidates in weighted
//! flag varieties of type G2 and Gr(2,5).
#![no_std]

extern crate alloc;

pub mod arith;
pub mod error;
pub mod flag;
pub mod orbifold;
pub mod search;

pub use error::{Error, Result};
