use std::path::PathBuf;

use thiserror::Error;

/// Structural problems found while building a [`crate::SimplicialMesh`].
#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeshError {
    #[error("mesh has no vertices or no simplices")]
    Empty,
    #[error("simplex {simplex} has {arity} vertices; only segments (2) and triangles (3) are supported")]
    UnsupportedArity { simplex: usize, arity: usize },
    #[error("simplex {simplex} has {arity} vertices but simplex 0 has {expected}")]
    MixedArity {
        simplex: usize,
        arity: usize,
        expected: usize,
    },
    #[error("vertex {vertex} has {found} coordinates, expected {expected}")]
    CoordinateArity {
        vertex: usize,
        found: usize,
        expected: usize,
    },
    #[error("vertex {vertex} of a curve in E2 has nonzero z coordinate {z}")]
    NonPlanarCurve { vertex: usize, z: f64 },
    #[error("vertex {vertex} has a non-finite coordinate")]
    NonFiniteCoordinate { vertex: usize },
    #[error("simplex {simplex} references vertex {index}, but the mesh has {count} vertices")]
    IndexOutOfRange {
        simplex: usize,
        index: usize,
        count: usize,
    },
    #[error("simplex {simplex} repeats vertex {index}")]
    RepeatedVertex { simplex: usize, index: usize },
    #[error("face {vertices:?} is shared by {count} simplices")]
    NonManifold { vertices: Vec<usize>, count: usize },
    #[error("simplex {simplex} is degenerate (volume {volume:e}, threshold {threshold:e})")]
    DegenerateSimplex {
        simplex: usize,
        volume: f64,
        threshold: f64,
    },
    #[error("orientation propagation reached a contradiction at simplex {simplex}")]
    Unorientable { simplex: usize },
    #[error("simplices {first} and {second} induce the same orientation on a shared face")]
    InconsistentOrientation { first: usize, second: usize },
    #[error("unknown simplex of dimension {dim} with index {index}")]
    UnknownSimplex { dim: usize, index: usize },
}

/// Errors from the geometric estimators.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurvatureError {
    #[error("face {facet} is on the boundary and carries no hinge angle")]
    BoundaryHinge { facet: usize },
    #[error("vertex {vertex} is on the boundary")]
    BoundaryVertex { vertex: usize },
    #[error("simplex {simplex} is degenerate")]
    DegenerateSimplex { simplex: usize },
    #[error("hinge angle {angle} at face {facet} is a reflex fold (|angle| >= pi)")]
    ReflexFold { facet: usize, angle: f64 },
    #[error("angle {theta} is outside [-pi/2, pi/2]")]
    ThetaOutOfRange { theta: f64 },
    #[error("unknown vertex {vertex}")]
    UnknownVertex { vertex: usize },
    #[error("unknown hinge {facet}")]
    UnknownHinge { facet: usize },
    #[error("vertex {vertex} is not in the closure of face {facet}")]
    NotAnEndpoint { facet: usize, vertex: usize },
    #[error("operation requires a mesh of dimension {expected}, got {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("unfolding around vertex {vertex} for hinge {facet} reaches the cut (covered angles {ccw:.6} / {cw:.6})")]
    UnfoldingCutCrossed {
        facet: usize,
        vertex: usize,
        ccw: f64,
        cw: f64,
    },
    #[error("triangle {triangle} has nearly parallel edge normals")]
    NearParallelNormals { triangle: usize },
    #[error("triangle {triangle} is missing a curvature value on face {facet}")]
    MissingAlpha { triangle: usize, facet: usize },
}

/// Errors raised by the file readers and writers.
#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot access {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("unsupported mesh format: {0}")]
    UnsupportedFormat(String),
    #[error(transparent)]
    Mesh(#[from] MeshError),
}

/// Validation errors for fixture parameters.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum FixtureError {
    #[error("polygon needs k >= 3 sides, got {0}")]
    TooFewSides(usize),
    #[error("cylinder needs at least 2 rings, got {0}")]
    TooFewRings(usize),
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },
}
