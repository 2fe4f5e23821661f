//! Computational core for cofinite Fuchsian groups and the local index
//! theorem on orbifold Riemann surfaces.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is pure
//! computation: exact and floating Möbius arithmetic, the two built-in
//! groups of signature (1;1) and (0;1;2,2,2), conjugacy-class enumeration,
//! truncated Selberg zeta products, resolvent kernels and Eisenstein series
//! at `s = 2`, Chern-form coefficient arithmetic and the radial analysis of
//! `(Δ₀ + ½)f = μν̄` near a cone point.
//!
//! File formats, caching and the command-line front end live in the
//! `orbifold-cli` crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;
pub mod groups;
pub mod index;
pub mod kernels;
pub mod localode;
pub mod moebius;
pub mod ode;
pub mod spectra;
pub mod sum;

pub use error::{Error, Result};
pub use groups::{ConjugacyClassRecord, GroupWord, Letter, Presentation, PresentedGroup, Signature};
pub use index::ChernCoefficients;
pub use moebius::{Classification, HyperbolicPoint, IntMoebius, Moebius};
pub use spectra::{LengthSpectrum, TruncatedSumResult};
