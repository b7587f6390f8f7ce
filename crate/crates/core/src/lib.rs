//! Solver for Reverse Hex (Rex), the misère variant of Hex in which the
//! player who joins her two sides loses.
//!
//! The crate is organized around the solving pipeline:
//!
//! - [`board`]: geometry, positions, groups, hashing, text format;
//! - [`inferior`]: dead cells, captured sets, fillin, move domination;
//! - [`pairvc`]: pairing-based virtual connections, early win detection;
//! - [`search`]: depth-first proof-number search with a transposition
//!   table, knowledge pipeline, and resistance move ordering;
//! - [`oracle`]: brute-force reference solver and validators for boards
//!   of at most 16 cells.

pub mod board;
pub mod error;
pub mod inferior;
pub mod oracle;
pub mod pairvc;
pub mod search;

pub use board::{Coord, Dims, GameState, Player, Position};
pub use error::Error;
