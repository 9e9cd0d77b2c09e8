//! Exact computational machinery around the reduced Burau representation
//! of the braid group `B_4`.
//!
//! The crate provides, bottom up:
//!
//! * [`ring`]: sparse Laurent polynomials over `Z` and `Z_p` (any integer
//!   `p > 1`, composite allowed) with the lowest degree as a first-class
//!   query;
//! * [`linalg`]: exact 3x3 matrix and vector algebra over those
//!   polynomials, with adjugate-based inversion;
//! * [`burau`]: the representation itself -- generator images, the fixed
//!   matrices `A`, `B`, `T`, and the conjugation identity suite;
//! * [`rewrite`]: words in `A` and `B`, conjugation to a `B^-i` suffix,
//!   and the rewriting into `T^m B^nk ... T^m1 B^n1 T^2`;
//! * [`pingpong`]: valuation-based vector classes, the mapping checks
//!   between them, and step-by-step non-identity certificates;
//! * [`search`]: exhaustive identity scans over bounded word trees, with
//!   certification of every eligible word in the cube alphabet.
//!
//! Everything is immutable after construction and all operations are pure,
//! so values can be shared freely across threads. The crate is `no_std`
//! (with `alloc`); anything involving IO lives in the companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod burau;
pub mod linalg;
pub mod pingpong;
pub mod rewrite;
pub mod ring;
pub mod search;

pub use burau::{AConjugation, BurauConstants};
pub use linalg::{Mat3, Vec3};
pub use pingpong::{Certificate, PingPongSet};
pub use rewrite::{NormalForm, WordAB};
pub use ring::{LaurentPoly, Modulus, Valuation};
