//! Toponomic holonomic gates on anticoherent spin k-planes.
//!
//! A k-plane of a spin-s system is carried around a closed curve by spin
//! rotations; when the plane is anticoherent the Wilczek–Zee connection
//! vanishes and the holonomy depends only on the endpoint rotation.

pub mod error;
pub mod gates;
pub mod holonomy;
pub mod linalg;
pub mod planes;
pub mod spin;
pub mod states;

pub use error::{Result, TqcError};
pub use spin::{
    make_spin_operators, wigner_rotation, z_rotation, RotationKernel, RotationVector, Spin, SpinOperators,
};
