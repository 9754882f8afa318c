//! Quantum reflection of ultracold atoms above material surfaces.
//!
//! The crate computes, end to end:
//!
//! * Casimir-Polder potentials V(z) between a ground-state (anti)hydrogen
//!   atom and a plane mirror from the mirror's dielectric response at
//!   imaginary frequencies ([`casimir`], [`material`]);
//! * quantum-reflection amplitudes on those potentials with a full
//!   absorption boundary condition at the surface, and the complex
//!   scattering length governing the low-energy limit ([`scattering`]);
//! * the Liouville transformation that maps reflection on an attractive
//!   well onto scattering on a repulsive "badlands" barrier, solved
//!   independently as a cross-check ([`liouville`]);
//! * energies and lifetimes of gravitationally bound states above the
//!   mirror ([`gravity`]).
//!
//! Start with the examples directory; each example exercises one of these
//! capabilities. The `qreflect` binary drives the same pipelines from the
//! command line and writes CSV/JSON artifacts.

pub mod casimir;
pub mod config;
pub mod constants;
pub mod driver;
pub mod error;
pub mod gravity;
pub mod liouville;
pub mod material;
pub mod ode;
pub mod potential;
pub mod quad;
pub mod scattering;

mod airy;
mod numerov;

//AIRYEXPORT
pub use crate::config::{MaterialLibrary, MATERIALS_ENV};
pub use crate::error::{Error, Result};
pub use crate::material::{AtomPolarizability, FresnelPair, MaterialModel};
pub use crate::potential::{PotentialModel, PotentialTable};
//SCATEXPORT
