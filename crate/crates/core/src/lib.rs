//! Exact combinatorics and algebra of dimer models on closed surfaces.
//!
//! The crate is `no_std` and only needs an allocator. Everything is exact:
//! integers are arbitrary precision and coefficients are rationals.
//!
//! Conventions used throughout:
//!
//! * faces are stored in traversal order, so the head of entry `k` is the tail
//!   of entry `k + 1`;
//! * a product `µ(f₁, …, f_k)` composes right to left, so `f_k` is applied first;
//! * the zig successor of an arrow follows its positive face, the zag successor
//!   its negative face.

#![no_std]

extern crate alloc;

pub mod error;
pub mod linalg;
pub mod lincomb;
pub mod quiver;
pub mod homology;
pub mod zigzag;
pub mod cover;
pub mod rectify;
pub mod mirror;
pub mod gentle;
pub mod mukappa;
pub mod verify;
pub mod rescale;
pub mod hochschild;
pub mod toric;
pub mod jacobi;
pub mod matfact;
pub mod transfer;
pub mod twisted;

pub use error::Error;
pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Exact rational scalar used for every coefficient.
pub type Q = BigRational;

/// Shorthand for an integer-valued rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}
