//! Verifiable distributed differential privacy.
//!
//! Building blocks for running differentially private mechanisms across
//! mutually distrusting clients and servers while an external verifier
//! audits both data validity and the correctness of every sampling step:
//!
//! - [`field`], [`domain`], [`poly`], [`group`]: exact arithmetic over the
//!   BLS12-381 scalar field, evaluation domains, and pairing groups.
//! - [`commit`]: Pedersen and hiding KZG polynomial commitments.
//! - [`sigma`]: interactive proofs over commitments (opening, product,
//!   bit-validity OR, Pedersen/KZG equality, and secret polynomial
//!   evaluation), each with a zero-knowledge simulator.
//! - [`randomness`]: Legendre-PRF bit generation with verification
//!   witnesses, and the Bernoulli / discrete-Laplace sampling circuits with
//!   exact pmf enumeration.
//! - [`accountant`]: tight (epsilon, delta) accounting for the modified
//!   discrete Laplace mechanism, L1 utility, and parameter search.
//! - [`sharing`]: additive secret sharing with homomorphic share
//!   commitments.
//! - [`vrr`]: verifiable randomized response under local DP.
//! - [`vddlm`]: the verifiable distributed discrete Laplace mechanism,
//!   including the constraint system and committed-circuit proof.
//! - [`i2dp`]: the client-server-verifier session state machine.
//!
//! The crate is `no_std`-compatible (with `alloc`); anything that needs an
//! operating system (transports, clocks, files, CLI) lives in the companion
//! crate.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod commit;
pub mod domain;
pub mod field;
pub mod group;
pub mod poly;

pub use field::{Field, Scalar};
