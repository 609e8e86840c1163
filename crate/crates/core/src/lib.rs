//! Grover walks with a moving shift on triangulable graphs.
//!
//! A graph is *triangulable* when its symmetric arc set splits into directed
//! triangles. Such a split `π` defines a next-arc permutation `τ` of order
//! three and with it the moving shift `S_c`, giving the evolution
//! `U_c = S_c (2 d* d - I)`. This crate builds every operator involved,
//! searches for triangle partitions, predicts `σ(U_c)` from the spectrum of
//! the normalized adjacency matrix `T`, and checks that prediction against a
//! direct eigendecomposition.
//!
//! | module | contents |
//! |--------|----------|
//! | [`graph`] | graphs, canonical arc order, generators, edge-list parsing |
//! | [`triangulation`] | directed triangles, exact-cover search, `τ`, the incidence matrix `R` |
//! | [`operators`] | `d`, `S`, `S_c`, `U`, `U_c`, `T`, `T₁`, `T₂` and the lifted system `L`, `T̃`, `B` |
//! | [`spectral`] | eigensolvers, spectrum prediction, verification, inherited and birth eigenvectors |
//! | [`oracles`] | closed forms for double cones and a brute-force spectrum |
//! | [`walk`] | time evolution, vertex distributions, periodicity |
//! | [`format`] | JSON and CSV output |

pub mod error;
pub mod format;
pub mod graph;
pub mod operators;
pub mod oracles;
pub mod perm;
pub mod spectral;
pub mod triangulation;
pub mod walk;

pub use error::{Error, NotTriangulable, Result};
pub use graph::{Arc, ArcSet, Graph};
pub use operators::{LiftedSystem, OperatorSet};
pub use perm::Permutation;
pub use spectral::{EigenSpace, SpectrumReport, Tolerances};
pub use triangulation::{DirectedTriangle, TrianglePartition};
pub use walk::WalkState;

pub use nalgebra::{DMatrix, DVector};
pub use num_complex::Complex64;
