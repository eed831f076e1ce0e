//! Nonclassicality tests for quantum states and measurements from classical
//! upper bounds on measurement statistics.
//!
//! Classical states and classical POVM elements admit ordinary nonnegative
//! Glauber-Sudarshan P representatives. Pairing a P weight with the bounded
//! Husimi Q function of the other side caps every outcome probability by a
//! computable constant; measured statistics above that cap certify
//! nonclassicality without moment reconstruction. The crate provides:
//!
//! - truncated Fock-space linear algebra ([`fock`]);
//! - a catalog of the standard states and detectors with closed-form
//!   cross-checks ([`catalog`]);
//! - Husimi Q evaluation, global maximization, and marginals ([`phase_space`]);
//! - photon-number and quadrature statistics, Mandel parameter, squeezing
//!   ([`statistics`]);
//! - the classical bounds and violation reports ([`bounds`]);
//! - loss, finite-efficiency and finite-sampling robustness ([`robustness`]);
//! - two-mode generalizations ([`two_mode`]);
//! - spin-j (SU(2)) analogues ([`su2`]);
//! - operational POVM-trace estimation protocols ([`trace_estimation`]);
//! - figure/table data and the reference check suite ([`figures`], [`suite`]).

pub mod bounds;
pub mod catalog;
pub mod error;
pub mod figures;
pub mod fock;
pub mod numerics;
pub mod phase_space;
pub mod robustness;
pub mod statistics;
pub mod suite;
pub mod su2;
pub mod trace_estimation;
pub mod two_mode;

pub use error::{Error, Result};
