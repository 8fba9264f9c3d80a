//! Graph-theoretic machinery for embeddings between right-angled Artin groups.
//!
//! Throughout, `G(Γ)` denotes the right-angled Artin group whose generators are
//! the vertices of `Γ` and in which two generators commute exactly when they are
//! *not* adjacent in `Γ` (that is, `G(Γ) = A(Γᶜ)`).
//!
//! The crate is `no_std` and only needs `alloc`. All file formats, the command
//! line and the experiment runner live in the `raagpath` companion crate.
//!
//! Module map:
//!
//! - [`graph`]: finite simplicial graphs, standard families, total orders.
//! - [`morphism`]: maps of graphs, immersions, coverings, restrictions.
//! - [`path`]: (induced / semi-induced) path enumeration, lifting and the
//!   PL / IPL / SIPL checkers.
//! - [`word`]: the word problem in `G(Γ)`.
//! - [`hom`]: the induced homomorphism `φ*` and bounded searches around it.
//! - [`cover`]: the lazily represented universal cover, deck transformations
//!   and deck enlargement.
//! - [`certify`]: injectivity / non-injectivity certificates, SIPL tree
//!   synthesis and the cycle-into-path decision procedure.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod certify;
pub mod cover;
mod error;
pub mod graph;
pub mod hom;
pub mod morphism;
pub mod path;
pub mod word;

pub use error::{Error, Result};
pub use graph::{Graph, TotalOrder, Vertex, VertexSet};
pub use morphism::GraphMap;
pub use word::{Letter, Word};
