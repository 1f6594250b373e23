//! Exact algebraic topology of finite set families and its application to
//! market economies.
//!
//! Reduced integral homology of simplicial complexes, the acyclicity
//! conditions on intersections and unions of subcomplex and polyhedral-cone
//! families, covers of subdivided complexes (nerves, KKM, Helly), and the
//! limited-arbitrage and limited-diversity tests for economies with linear,
//! min-of-linear or explicit-cone utilities. All arithmetic is over exact
//! rationals and big integers.

pub mod cones;
pub mod covers;
pub mod economy;
pub mod error;
pub mod exactmath;
pub mod families;
pub mod io;
pub mod selftest;
pub mod simplicial;
pub mod subsets;

pub use error::{Error, Result};
