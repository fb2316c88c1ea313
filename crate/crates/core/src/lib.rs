//! Orbit counting and boundary equidistribution for discrete groups of
//! hyperbolic isometries.
//!
//! The crate enumerates orbits of Fuchsian and Schottky groups inside metric
//! balls with certified completeness, estimates critical exponents and
//! Patterson–Sullivan boundary measures, and runs the numerical experiments
//! that check orbit equidistribution on the boundary: sector counts and
//! their factorization, matrix-norm counting in the upper half-space,
//! weighted orbital averages and recurrence along geodesics.
//!
//! Each capability has a runnable program under `examples/`; the
//! `hyperorbit` binary wraps the same experiments behind subcommands.

pub mod cli;
pub mod error;
pub mod experiments;
pub mod fmt;
pub mod geometry;
pub mod group;
pub mod measure;
pub mod orbit;
pub mod selftest;

pub use error::{Error, Result};
