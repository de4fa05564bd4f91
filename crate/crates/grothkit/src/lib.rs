//! Approximation algorithms built on bilinear and quadratic relaxations —
//! cut-norm estimation, regular-pair testing, matrix cut decomposition,
//! maximum acyclic subgraph, parity-system estimation, kernel clustering
//! and lp quadratic maximization — each paired with an exact brute-force
//! oracle so every stated guarantee can be checked at desk scale.
//!
//! All randomized routines take an explicit `u64` seed and derive one
//! ChaCha stream per trial/restart, so results are bit-reproducible.

pub mod constants;
pub mod error;
pub mod linalg;
pub mod oracles;
pub mod parse;
pub mod rng;
pub mod rounding;
pub mod sdp;
pub mod types;

pub mod apps;
pub mod cutnorm;
pub mod graph;
pub mod kernel;
pub mod lp;

pub use error::{Error, Result};
pub use types::{DenseMatrix, Digraph, EdgeMask, SignVector, SparseTensor3, SubsetPair};
