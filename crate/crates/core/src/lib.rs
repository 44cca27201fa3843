//! Lowering of IQP circuits (quadratic diagonal generator) onto the
//! single-layer unitary cluster Jastrow form under the Jordan–Wigner
//! encoding, with two independent simulators and a verification harness
//! that checks the construction numerically at desk scale.
//!
//! The core is generic over the real scalar type (`f32`/`f64`); the `*64`
//! aliases below are what the CLI and most users want.

pub mod bits;
pub mod compile;
pub mod dist;
pub mod error;
pub mod fermion;
pub mod io;
pub mod iqp;
pub mod linalg;
pub mod rng;
pub mod scalar;
pub mod ucj;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Real;

pub type IqpCircuit64 = iqp::IqpCircuit<f64>;
pub type Ucj1Compiled64 = ucj::Ucj1Compiled<f64>;
pub type UcjParams64 = ucj::UcjParams<f64>;
pub type StateVector64 = fermion::StateVector<f64>;
pub type Distribution64 = dist::Distribution<f64>;
pub type VerifyReport64 = verify::VerifyReport<f64>;
