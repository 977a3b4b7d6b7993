//! Exact construction and verification of the quadratic systems that cut out
//! the variety of Lie algebras of maximal class (filiform Lie algebras).
//!
//! The crate is organised bottom-up:
//!
//! - [`combinat`], [`scalar`]: binomials, partition counts and exact rationals.
//! - [`lie`], [`fixtures`]: sparse structure constants, brackets, Jacobi
//!   defects and the reference algebras `m0`, `m1(2k)`, `m2`, `m_k`, `L_k`.
//! - [`exterior`]: the exterior algebra on `e^2, e^3, ...` with `D_1`,
//!   `D_{-1}`, the trivial-coefficient differential and the `omega` cocycles.
//! - [`cochain`]: adjoint-valued cochains, the basis cocycles `Psi_{j,s}` and
//!   `Psi_{i,j,s}`, the adjoint differential and the Nijenhuis-Richardson
//!   bracket.
//! - [`poly`], [`system`]: deformation polynomials, the closed-form
//!   generators `F_{j,q,r}` / `G_{j,q,r}` and assembled equation systems.
//! - [`oracle`]: brute-force expansion of `1/2 [Psi, Psi]`, known solution
//!   families, residual evaluation and Jacobi scans of deformed brackets.
//! - [`cli`]: the `filiform` command-line front end.

pub mod cli;
pub mod cochain;
pub mod combinat;
pub mod error;
pub mod exterior;
pub mod fixtures;
pub mod lie;
pub mod oracle;
pub mod poly;
pub mod render;
pub mod scalar;
pub mod system;

pub use error::{Error, Result};
pub use scalar::Scalar;
