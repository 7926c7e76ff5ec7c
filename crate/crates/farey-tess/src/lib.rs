//! Exact enumeration of Farey valence chains.
//!
//! Everything here runs on arbitrary-precision rational arithmetic: the
//! tiles of the Farey-triangle tessellation are cut as exact convex
//! polygons, admissible chains of valences are enumerated by refining
//! those tiles, and every geometric answer can be cross-checked against a
//! brute-force Farey-sequence oracle.

pub mod continuants;
pub mod enumeration;
pub mod error;
pub mod farey;
pub mod geometry;
pub mod rational;
pub mod report;
pub mod svg;
pub mod tiles;
pub mod verify;

pub use continuants::ValenceChain;
pub use error::Error;
pub use geometry::{AffineForm, ConvexRegion, HalfPlane, Point, RegionStatus, Relation};
pub use rational::Rational;
