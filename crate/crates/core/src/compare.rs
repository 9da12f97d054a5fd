//! Comparison against smooth reference surfaces and refinement studies.

use std::fmt;
use std::str::FromStr;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::dual::DualScheme;
use crate::error::CurvatureError;
use crate::fixtures::{CrossSection, FixtureSpec};
use crate::mesh::SimplicialMesh;
use crate::report::{compute_report, CurvatureReport};

/// Smooth manifold the discrete estimates are measured against, with
/// inward-negative curvature signs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Analytic {
    Circle { r: f64 },
    Sphere { r: f64 },
    /// Cylinder whose axis is the z axis.
    Cylinder { r: f64 },
}

impl Analytic {
    pub fn radius(&self) -> f64 {
        match *self {
            Analytic::Circle { r } | Analytic::Sphere { r } | Analytic::Cylinder { r } => r,
        }
    }

    pub fn mean_curvature(&self) -> f64 {
        match *self {
            Analytic::Circle { r } | Analytic::Cylinder { r } => -1.0 / r,
            Analytic::Sphere { r } => -2.0 / r,
        }
    }

    /// Normal curvature across a hinge with direction `hinge`, i.e. along
    /// the surface direction orthogonal to it.
    pub fn orthogonal_curvature(&self, hinge: &Vector3<f64>) -> f64 {
        match *self {
            Analytic::Circle { r } | Analytic::Sphere { r } => -1.0 / r,
            Analytic::Cylinder { r } => {
                let c = hinge.normalize().z;
                -c * c / r
            }
        }
    }

    /// Principal curvatures `(kmin, kmax)` of a surface.
    pub fn principal(&self) -> Option<(f64, f64)> {
        match *self {
            Analytic::Circle { .. } => None,
            Analytic::Sphere { r } => Some((-1.0 / r, -1.0 / r)),
            Analytic::Cylinder { r } => Some((-1.0 / r, 0.0)),
        }
    }

    /// Relative error of `value`, measured against `1/r` where the
    /// reference vanishes.
    pub fn relative_error(&self, value: f64, reference: f64) -> f64 {
        let scale = if reference == 0.0 {
            1.0 / self.radius()
        } else {
            reference.abs()
        };
        (value - reference).abs() / scale
    }
}

impl FromStr for Analytic {
    type Err = String;

    /// Parses `circle:R`, `sphere:R` or `cylinder:R`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, r) = s
            .split_once(':')
            .ok_or_else(|| format!("missing reference radius in '{s}' (expected {s}:R)"))?;
        let r: f64 = r.parse().map_err(|_| format!("invalid radius '{r}'"))?;
        if !(r.is_finite() && r > 0.0) {
            return Err(format!("radius must be positive, got {r}"));
        }
        match kind {
            "circle" => Ok(Analytic::Circle { r }),
            "sphere" => Ok(Analytic::Sphere { r }),
            "cylinder" => Ok(Analytic::Cylinder { r }),
            other => Err(format!("unknown reference '{other}' (expected circle, sphere or cylinder)")),
        }
    }
}

impl fmt::Display for Analytic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Analytic::Circle { .. } => "circle",
            Analytic::Sphere { .. } => "sphere",
            Analytic::Cylinder { .. } => "cylinder",
        };
        write!(f, "{name}:{}", self.radius())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ErrorStats {
    pub count: usize,
    pub max: f64,
    pub mean: f64,
}

impl ErrorStats {
    pub fn from_errors(errors: impl IntoIterator<Item = f64>) -> Self {
        let mut stats = ErrorStats::default();
        let mut sum = 0.0;
        for e in errors {
            stats.count += 1;
            stats.max = stats.max.max(e);
            sum += e;
        }
        if stats.count > 0 {
            stats.mean = sum / stats.count as f64;
        }
        stats
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub reference: Analytic,
    pub mean_curvature: ErrorStats,
    pub alpha: ErrorStats,
    pub principal: Option<ErrorStats>,
    pub cotan: Option<ErrorStats>,
}

/// Relative errors of every estimator in `report` against `reference`.
pub fn compare(mesh: &SimplicialMesh, report: &CurvatureReport, reference: Analytic) -> Comparison {
    let h_ref = reference.mean_curvature();
    let mean_curvature = ErrorStats::from_errors(report.mean_curvatures().map(|h| reference.relative_error(h, h_ref)));
    let alpha = ErrorStats::from_errors(report.hinges.iter().filter_map(|h| {
        let alpha = h.alpha?;
        let direction = match h.vertices[..] {
            [a, b] => mesh.point(b) - mesh.point(a),
            _ => Vector3::z(),
        };
        let expected = reference.orthogonal_curvature(&direction);
        Some(reference.relative_error(alpha, expected))
    }));
    let principal = (mesh.dim() == 2).then(|| {
        let expected = reference.principal().unwrap_or((h_ref / 2.0, h_ref / 2.0));
        let scale = 1.0 / reference.radius();
        ErrorStats::from_errors(report.triangles.iter().filter_map(|t| {
            let (kmin, kmax) = (t.kmin?, t.kmax?);
            Some(((kmin - expected.0).abs()).max((kmax - expected.1).abs()) / scale)
        }))
    });
    let cotan = (mesh.dim() == 2).then(|| {
        ErrorStats::from_errors(
            report
                .vertices
                .iter()
                .filter_map(|v| v.cotan.map(|c| reference.relative_error(c, h_ref))),
        )
    });
    Comparison {
        reference,
        mean_curvature,
        alpha,
        principal,
        cotan,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Levels are polygon side counts.
    Circle,
    /// Levels are subdivision counts.
    Icosphere,
    /// Levels are cross-section side counts.
    Cylinder,
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "circle" => Ok(Family::Circle),
            "icosphere" | "sphere" => Ok(Family::Icosphere),
            "cylinder" => Ok(Family::Cylinder),
            other => Err(format!("unknown family '{other}' (expected circle, icosphere or cylinder)")),
        }
    }
}

impl Family {
    pub fn default_levels(self) -> Vec<usize> {
        match self {
            Family::Circle => vec![4, 8, 16],
            Family::Icosphere => vec![0, 1, 2],
            Family::Cylinder => vec![8, 16, 32],
        }
    }

    pub fn fixture(self, level: usize, r: f64, cross_section: CrossSection) -> FixtureSpec {
        match self {
            Family::Circle => FixtureSpec::CirclePolygon { k: level, r },
            Family::Icosphere => FixtureSpec::Icosphere { r, subdivisions: level },
            Family::Cylinder => FixtureSpec::Cylinder {
                k: level,
                r,
                p: 0.5 * r,
                rings: 8,
                cross_section,
            },
        }
    }

    pub fn reference(self, r: f64) -> Analytic {
        match self {
            Family::Circle => Analytic::Circle { r },
            Family::Icosphere => Analytic::Sphere { r },
            Family::Cylinder => Analytic::Cylinder { r },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub level: usize,
    pub vertices: usize,
    pub max_mean_curvature_error: f64,
    pub mean_mean_curvature_error: f64,
    pub max_alpha_error: f64,
    pub max_cotan_error: Option<f64>,
}

#[derive(Debug, thiserror::Error)]
pub enum StudyError {
    #[error(transparent)]
    Fixture(#[from] crate::error::FixtureError),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
}

pub fn converge(
    family: Family,
    levels: &[usize],
    r: f64,
    scheme: DualScheme,
    cross_section: CrossSection,
    parallel: bool,
) -> Result<Vec<ConvergenceRow>, StudyError> {
    let reference = family.reference(r);
    let mut rows = Vec::with_capacity(levels.len());
    for &level in levels {
        let mesh = family.fixture(level, r, cross_section).build()?;
        let report = compute_report(&mesh, scheme, parallel)?;
        let c = compare(&mesh, &report, reference);
        rows.push(ConvergenceRow {
            level,
            vertices: mesh.vertex_count(),
            max_mean_curvature_error: c.mean_curvature.max,
            mean_mean_curvature_error: c.mean_curvature.mean,
            max_alpha_error: c.alpha.max,
            max_cotan_error: c.cotan.map(|s| s.max),
        });
    }
    Ok(rows)
}

/// True when the maximum mean-curvature error never grows by more than
/// `slack` from one level to the next.
pub fn is_monotone(rows: &[ConvergenceRow], slack: f64) -> bool {
    rows.windows(2)
        .all(|w| w[1].max_mean_curvature_error <= w[0].max_mean_curvature_error + slack)
}
