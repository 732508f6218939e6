//! Randomised spread embeddings for k-uniform hypergraphs.
//!
//! The crate implements a toolkit around Dirac-type host hypergraphs:
//!
//! * [`hypergraph`] — the k-uniform hypergraph representation, ℓ-cycle and
//!   ℓ-path templates, degree and 1-density utilities;
//! * [`oracle`] — exhaustive backtracking enumerators and single-solution
//!   searches used as ground truth inside constant-size clusters;
//! * [`sampling`] — spread samplers for dense ordinary graphs (perfect
//!   matchings in balanced bipartite graphs, Hamilton cycles);
//! * [`cluster`] — the random clustering pipeline: window partition of a
//!   random permutation, bad-cluster classification and spread
//!   redistribution;
//! * [`cycle_embed`] / [`factor_embed`] — the randomised Hamilton ℓ-cycle
//!   and F-factor embedding algorithms;
//! * [`spread`] — Monte-Carlo spread estimation with Wilson intervals;
//! * [`robust`] — p-random sparsification, exact containment decisions and
//!   threshold sweeps.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI live
//! in the companion `hyperspread` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cluster;
pub mod cycle_embed;
pub mod error;
pub mod factor_embed;
pub mod hypergraph;
pub mod oracle;
pub mod robust;
pub mod rng;
pub mod sampling;
pub mod spread;

pub use error::{Error, Result};
pub use hypergraph::{Embedding, EllCycleSpec, Hypergraph, Vertex};
