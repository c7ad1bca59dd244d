//! Sequential single-control-qubit order finding with resource-limited
//! coherence channels.
//!
//! The crate is organised bottom-up:
//!
//! - [`numtheory`]: orders, totients, continued fractions, candidate outcome
//!   sets and the classical counting function `f(N, r)`.
//! - [`linalg`] and [`channels`]: small dense complex matrices, density
//!   matrices, Kraus/Choi channels, dephasing and the free-set tests (MIO, DI,
//!   unital), plus the two block super-channels used by the protocol.
//! - [`measures`]: cohering power, the NSID measure and the sign-vector
//!   functional `D`, together with the fixed-witness check that `D` is not
//!   monotone under detection-incoherent pre-processing.
//! - [`protocol`]: the factorised per-block simulation, the joint
//!   control/auxiliary brute-force oracle and a seeded Monte Carlo sampler.
//! - [`bounds`]: closed-form lower/upper bounds and the classical interval.
//! - [`report`] and [`cli`]: JSON/CSV reports and the command-line front end.
//!
//! Integers are held in `u64` with the modulus capped below `2^31`, so every
//! intermediate product fits comfortably in `u128`/`i128`.

pub mod bounds;
pub mod channels;
pub mod cli;
mod error;
pub mod linalg;
pub mod measures;
pub mod numtheory;
pub mod protocol;
pub mod report;
pub mod tolerance;

pub use error::{Error, Result};
