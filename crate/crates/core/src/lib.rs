//! Discrete extrinsic curvature on piecewise flat simplicial manifolds.
//!
//! Curves in the plane and triangulated surfaces in space are bent only
//! along their hinges. This crate measures those bends as signed hinge
//! angles and turns them into mean curvature averaged over dual vertex
//! regions, curvature orthogonal to each hinge averaged over hinge regions,
//! and a full curvature tensor on every triangle.
//!
//! ```
//! use hingecurv::{fixtures, compute_report, DualScheme};
//!
//! let sphere = fixtures::gen_icosphere(1.0, 0).unwrap();
//! let report = compute_report(&sphere, DualScheme::Barycentric, false).unwrap();
//! let h = report.vertices[0].mean_curvature.unwrap();
//! assert!((h + 2.09851).abs() < 1e-4);
//! ```

pub mod compare;
pub mod curvature;
pub mod dual;
pub mod error;
pub mod fixtures;
pub mod hinge;
pub mod io;
pub mod mesh;
pub mod polygon;
pub mod report;

pub use curvature::{
    alpha_hinge, build_hinge_region, cotan_mean_curvature, mean_curvature, total_mean_curvature,
    triangle_tensor, CotanRecord, CurvatureTensor, HingeRegion, RegionEntry,
};
pub use dual::{DualScheme, DualTessellation, TessellationCheck};
pub use error::{CurvatureError, FixtureError, IoError, MeshError};
pub use fixtures::{CrossSection, FixtureSpec};
pub use hinge::{deficit_angle, hinge_angle, path_integral, Hinge, Hinges, PathMode};
pub use mesh::{BuildOptions, Facet, SimplexRef, SimplicialMesh, StarQueryResult};
pub use report::{compute_report, CurvatureReport};
