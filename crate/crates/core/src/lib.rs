//! Finite quandles and their good involutions.
//!
//! - [`group`]: finite groups as multiplication tables, automorphisms, fixed points.
//! - [`quandle`]: quandles as point-symmetry tables, components, isomorphism search.
//! - [`constructors`]: conjugation, twisted conjugation, Alexander, linear and
//!   generalized Alexander quandles.
//! - [`involution`]: verification and enumeration of good involutions.
//! - [`closed_forms`]: counting formulas and sequence checks.
//! - [`tables`]: reproduction of the per-order linear quandle tables.

pub mod closed_forms;
pub mod constructors;
pub mod error;
pub mod group;
pub mod involution;
pub mod quandle;
pub mod tables;

pub use error::{Error, Result};
