//! Spherical knot mosaics.
//!
//! A spherical n-mosaic tiles the six faces of an n×n×n cube with the eleven
//! standard mosaic tiles. This crate validates such tilings, traces their
//! strands, extracts planar diagram codes, identifies knot types through the
//! Jones polynomial, runs the constructive shrink and reduction maps from
//! classical mosaics, and searches the space of mosaics exhaustively at small
//! sizes.

pub mod io;
pub mod knotid;
pub mod search;
pub mod sphere;
pub mod tiles;
pub mod trace;
pub mod transforms;
mod util;

pub use sphere::{CellAddr, ClassicalMosaic, CubeRotation, FaceId, SphericalMosaic};
pub use tiles::{Side, Tile};
