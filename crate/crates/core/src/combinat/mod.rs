//! Finite models of the neighbour relation: neighbour spaces, group-valued
//! forms, distributions, connections and their curvature.
//!
//! Composition is always written left to right.

mod affine;
mod bundle;
mod connection;
mod forms;
mod group;
mod loader;
mod space;

use thiserror::Error;

pub use affine::{affine_curvature, AffineConnection, AffineCurvature};
pub use bundle::{bundle_transport, BundleConnection};
pub use connection::{Arrows, FiniteGroupoid, GroupoidConnection};
pub use forms::{coboundary0, coboundary1, distribution_from_form, is_closed, Distribution, Form1, Form2};
pub use group::FiniteGroup;
pub use loader::{load_model, Model, Morphism};
pub use space::NeighbourSpace;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CombinatError {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error("no point {0}")]
    NoSuchPoint(usize),
    #[error("no group element {0:?}")]
    NoSuchElement(String),
    #[error("{0:?} is not a simplex: entries must be pairwise neighbours")]
    NotSimplex(Vec<usize>),
    #[error("normalization violated: {0}")]
    Normalization(String),
    #[error("malformed data: {0}")]
    Shape(String),
    #[error("invalid distribution: {0}")]
    Distribution(String),
    #[error("map does not preserve neighbours: {0}")]
    Morphism(String),
    #[error("connection not transportable on this model: {0}")]
    NotTransportable(String),
    #[error("connection is not symmetric")]
    NotSymmetric,
    #[error("element {element} does not lie over point {point}")]
    WrongFiber { element: usize, point: usize },
    #[error("model file: {0}")]
    Model(String),
}

/// All ordered `(k+1)`-tuples of mutual neighbours in `m`.
pub fn simplices(m: &NeighbourSpace, k: usize) -> Vec<Vec<usize>> {
    m.simplices(k)
}

/// `R(x, y, z) = ∇(x, y) ∇(y, z) ∇(z, x)`.
pub fn curvature<A: Arrows>(conn: &GroupoidConnection<A>, x: usize, y: usize, z: usize) -> Result<usize, CombinatError> {
    conn.curvature(x, y, z)
}

/// Whether the Bianchi identity holds on the 3-simplex `(x, y, z, u)`.
pub fn bianchi_check<A: Arrows>(conn: &GroupoidConnection<A>, x: usize, y: usize, z: usize, u: usize) -> Result<bool, CombinatError> {
    conn.bianchi_check(x, y, z, u)
}
