//! Maker-Breaker games whose winning sets are the k-distinct solutions of an integer
//! system `Ax = b` inside a (random) board of integers.

pub mod edge_order;
pub mod error;
pub mod experiments;
pub mod game;
pub mod generate;
pub mod hypergraph;
pub mod linalg;
pub mod matrix_analysis;
pub mod solutions;
pub mod strategies;
pub mod system;

pub use error::{Error, Result};
pub use hypergraph::{sample_board, Board, EdgeId, Hypergraph, Vertex};
pub use system::RadoSystem;
