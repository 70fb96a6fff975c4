//! Exact Grassmann algebra, one-mode fermion and boson Fock spaces, and the
//! time propagation needed to check which Hamiltonians keep coherent states
//! coherent.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod boson;
pub mod coherence;
pub mod dynamics;
pub mod error;
pub mod fermion;
pub mod grassmann;

pub use error::{Error, Result};
pub use grassmann::{GeneratorSet, Multivector};
pub use num_complex::Complex64;
