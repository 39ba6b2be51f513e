//! Planar limit of one-cut matrix models.
//!
//! The genus-zero free energy is computed three independent ways: as a formal
//! fixed point of the (R, S) system, by brute-force Wick enumeration of ribbon
//! graphs, and numerically from the equilibrium measure of the potential.
//! Closed forms for the extreme potentials feed a singularity-analysis stage that
//! produces coefficient asymptotics with exact constants where they exist.

pub mod algebra;
pub mod asymptotics;
pub mod cli;
pub mod closed_forms;
pub mod equilibrium;
pub mod planar;
pub mod series;
pub mod verify;
pub mod wick_oracle;

pub use algebra::{BigFloat, Poly, Rat};
