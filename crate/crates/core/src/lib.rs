#![allow(clippy::result_large_err)]

pub mod attraction;
pub mod beacons;
mod cells;
pub mod generators;
pub mod geometry;
pub mod io;
pub mod kernel;
pub mod placement;
pub mod polygon;
pub mod scalar;
pub mod verify;
