//! Clustered 3-colouring of planar graphs via separators and treewidth.
//!
//! The crate is `no_std` (it needs `alloc`). Graphs carry their embedding as a
//! rotation system, see [`planar::PlaneGraph`]. The entry point for colouring
//! is [`pipeline::three_colour`]; the separator and treewidth building blocks
//! are public so they can be checked and benchmarked on their own.

#![no_std]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod error;
pub mod generators;
pub mod num;
pub mod peel;
pub mod pipeline;
pub mod planar;
pub mod separators;
pub mod treewidth;
pub mod unionfind;

pub use error::{Error, Result, Stage};
pub use planar::{Dart, Face, FaceId, FaceWeighting, PlaneGraph, Violation};
