//! Sectional invariants of maps between finite topological spaces.
//!
//! A finite space is stored as its specialization preorder: `reach(x, y)`
//! holds when `y` lies in the minimal open set `U_x`. Everything else
//! (open sets, continuity, homotopy via fences, section and lift covers)
//! is derived from that relation.
//!
//! The crate is organised bottom-up:
//!
//! * [`finspace`] spaces, continuous maps, products, subspaces, pullbacks,
//!   configuration spaces and the constrained map enumerator;
//! * [`homotopy`] fence homotopy, beat-point cores, contractibility and
//!   LS-category;
//! * [`sectional`] `sec`, `secat` and their relative versions;
//! * [`coincidence`] fixed-point and coincidence searches plus the
//!   per-instance theorem checkers;
//! * [`harness`] census generation, seeded random instances and the
//!   property-suite runner.

pub mod budget;
pub mod coincidence;
pub mod error;
pub mod extnat;
pub mod finspace;
pub mod format;
pub mod harness;
pub mod homotopy;
pub mod pointset;
pub mod sectional;
pub mod setcover;

pub use budget::{Budget, Limits};
pub use error::{Error, Result};
pub use extnat::ExtNat;
pub use finspace::{CMap, FinSpace, OpenSet, Space};
pub use pointset::PointSet;
