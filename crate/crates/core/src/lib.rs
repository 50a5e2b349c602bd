//! Exact computational engine for relative group cohomology and Ext-groups
//! over orbit categories of finite groups.
//!
//! The pipeline: finite groups and subgroup families ([`group`]), the orbit
//! category of a family ([`orbit`]), functor modules over it ([`module`]),
//! free resolutions and Ext ([`homalg`]), ordinary group cohomology as a
//! coefficient system ([`groupcoh`]), relative cohomology and splitting
//! checkers ([`relcoh`]), and the E2 page with its edge homomorphisms
//! ([`spectral`]). All arithmetic is exact, over GF(p).

// index loops over parallel tables are the dominant idiom here
#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod error;
pub mod group;
pub mod groupcoh;
pub mod homalg;
pub mod linalg;
pub mod module;
pub mod orbit;
pub mod relcoh;
pub mod spectral;
pub mod suites;

pub use error::{Error, Result};
