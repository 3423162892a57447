//! Exact computational algebra for quadratic forms, quaternion algebras with
//! involution and quadratic pairs.
//!
//! All arithmetic happens in explicit field towers (`GF(p^k)` followed by
//! rational function and quotient extensions). Every isomorphism the crate
//! claims is shipped as a [`decompose::Certificate`] that can be re-checked
//! independently of the algorithm that produced it, and every decision over
//! an infinite field is three-valued: a verified witness, a certified
//! negative, or an explicit "not decided up to this bound".
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod decompose;
pub mod error;
pub mod field;
pub mod forms;
pub mod involution;
pub mod linalg;
pub mod qpair;
pub mod search;

pub use error::{Error, Result};
pub use field::{Elem, Field, TowerStep};
