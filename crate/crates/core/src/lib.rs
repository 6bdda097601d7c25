//! Reduction from Wang tilings to periodic tilings of space by translated
//! copies of a small set of polyforms.

pub mod blocks;
pub mod error;
pub mod geometry;
pub mod io;
pub mod lattice;
pub mod layers;
pub mod reduction;
pub mod render;
pub mod solver;
pub mod tiling;
pub mod wang;

pub use blocks::{block, block_by_name, thick_block, BlockId};
pub use error::*;
pub use geometry::{Cell, Polyform, ShellSet, CUBE};
