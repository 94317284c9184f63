//! Exact and numerical engine for the sheaf-theoretic SL(2,C) Casson-Lin
//! invariant of two-bridge knots and their connected sums.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs; IO, caching and thread pools live in the `clk`
//! companion crate.
//!
//! Layout, bottom-up:
//!
//! * [`exactalg`]: rationals, Gaussian rationals, univariate/bivariate/Laurent
//!   polynomials, gcd, squarefree decomposition, resultants.
//! * [`knotspec`]: knot descriptors, two-bridge presentations, Fox calculus.
//! * [`charvar`]: Riley matrices and the character polynomial `P(x, y)`.
//! * [`eulerlab`]: Euler characteristics, Behrend counts, the Milnor oracle.
//! * [`tracker`]: root finding and monodromy of slice roots.
//! * [`torusaction`]: the gluing action on Type II representations.
//! * [`cassonlin`]: bad sets, slices, sweeps and connected sums.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cassonlin;
pub mod charvar;
pub mod error;
pub mod eulerlab;
pub mod exactalg;
pub mod knotspec;
pub mod mat2;
pub mod torusaction;
pub mod tracker;

pub use error::{Error, Result};
pub use num_complex::Complex64;
