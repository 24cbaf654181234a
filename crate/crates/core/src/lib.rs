//! Numerics for H-harmonic function spaces on the unit ball of `R^n`, `n >= 3`.
//!
//! The crate evaluates the radial profiles of solid harmonics, the coefficient
//! integrals `I_m(s)` of the weighted H-harmonic Bergman norms together with
//! their meromorphic continuation in `s`, the reproducing kernels of the
//! weighted Bergman spaces and of the Moebius invariant Dirichlet-type space,
//! and the spectral form of the Dirichlet semi-inner product.
//!
//! Everything here is pure computation on `f64`; the crate is `no_std` and
//! only needs `alloc`. File formats, the command line and parallel drivers
//! live in the companion `hdirichlet` crate.
#![cfg_attr(not(feature = "std"), no_std)]
// `!(x > y)` deliberately rejects NaN alongside out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;

mod error;
mod math;

pub mod ballgeom;
pub mod coefficients;
pub mod dirichlet;
pub mod harmonics;
pub mod kernels;
pub mod quadrature;
pub mod specfun;
pub mod wallach;

pub(crate) use error::domain;
pub use error::{Error, Result};
