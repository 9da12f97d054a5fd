//! Hinges, signed hinge angles, deficit angles and geodesic path integrals.
//!
//! A hinge angle measures how far the second simplex at a hinge turns away
//! from the straight continuation of the first one. It is positive when the
//! fold is concave as seen from the orientation normal and negative when it
//! is convex, so an outward-oriented convex polyhedron has negative angles.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::CurvatureError;
use crate::mesh::SimplicialMesh;

/// Folds this close to a full reflection are rejected.
pub const REFLEX_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hinge {
    pub facet: usize,
    pub simplices: (usize, usize),
    /// (n-1)-volume |h|: edge length for surfaces, 1 for point hinges.
    pub measure: f64,
    /// Signed hinge angle in radians.
    pub angle: f64,
}

impl Hinge {
    pub fn path_integral(&self, theta: f64, mode: PathMode) -> Result<f64, CurvatureError> {
        path_integral(self.angle, theta, mode)
    }
}

/// All hinges of a mesh, addressable by facet id.
#[derive(Debug, Clone, Default)]
pub struct Hinges {
    list: Vec<Hinge>,
    by_facet: Vec<Option<usize>>,
}

impl Hinges {
    pub fn extract(mesh: &SimplicialMesh) -> Result<Self, CurvatureError> {
        let list = extract_hinges(mesh)?;
        let mut by_facet = vec![None; mesh.facet_count()];
        for (i, h) in list.iter().enumerate() {
            by_facet[h.facet] = Some(i);
        }
        Ok(Self { list, by_facet })
    }

    pub fn get(&self, facet: usize) -> Option<&Hinge> {
        self.by_facet.get(facet).copied().flatten().map(|i| &self.list[i])
    }

    pub fn angle(&self, facet: usize) -> Option<f64> {
        self.get(facet).map(|h| h.angle)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Hinge> {
        self.list.iter()
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn as_slice(&self) -> &[Hinge] {
        &self.list
    }
}

/// One hinge per interior facet, in facet order.
pub fn extract_hinges(mesh: &SimplicialMesh) -> Result<Vec<Hinge>, CurvatureError> {
    mesh.facets()
        .iter()
        .enumerate()
        .filter_map(|(f, facet)| facet.simplices.1.map(|b| (f, facet.simplices.0, b)))
        .map(|(facet, a, b)| {
            Ok(Hinge {
                facet,
                simplices: (a, b),
                measure: mesh.facet_measure(facet),
                angle: hinge_angle(mesh, facet)?,
            })
        })
        .collect()
}

/// Signed hinge angle of an interior facet.
pub fn hinge_angle(mesh: &SimplicialMesh, facet: usize) -> Result<f64, CurvatureError> {
    let first = mesh
        .facets()
        .get(facet)
        .ok_or(CurvatureError::UnknownHinge { facet })?
        .simplices
        .0;
    hinge_angle_from(mesh, facet, first)
}

/// Signed hinge angle with `first` playing the role of the simplex whose
/// normal is used. The result does not depend on that choice.
pub fn hinge_angle_from(
    mesh: &SimplicialMesh,
    facet: usize,
    first: usize,
) -> Result<f64, CurvatureError> {
    let f = mesh
        .facets()
        .get(facet)
        .ok_or(CurvatureError::UnknownHinge { facet })?;
    let second = f.other(first).ok_or(CurvatureError::BoundaryHinge { facet })?;

    let normal = mesh.simplex_normal(first);
    let straight = -inward(mesh, facet, first)?;
    let turned = inward(mesh, facet, second)?;
    let angle = turned.dot(&normal).atan2(turned.dot(&straight));
    if angle.abs() >= PI - REFLEX_MARGIN {
        return Err(CurvatureError::ReflexFold { facet, angle });
    }
    Ok(angle)
}

/// Unit vector tangent to `simplex`, orthogonal to the facet and pointing
/// into the simplex.
fn inward(mesh: &SimplicialMesh, facet: usize, simplex: usize) -> Result<Vector3<f64>, CurvatureError> {
    let verts = &mesh.facet(facet).vertices;
    let base = mesh.point(verts[0]);
    let apex = mesh
        .simplex(simplex)
        .iter()
        .find(|v| !verts.contains(v))
        .map(|&v| mesh.point(v))
        .expect("simplex has a vertex off the facet");
    let mut w = apex - base;
    if let [a, b] = verts.as_slice() {
        let axis = (mesh.point(*b) - mesh.point(*a)).normalize();
        w -= axis * w.dot(&axis);
    }
    let len = w.norm();
    if len <= f64::EPSILON * (apex - base).norm() || len == 0.0 {
        return Err(CurvatureError::DegenerateSimplex { simplex });
    }
    Ok(w / len)
}

/// Intrinsic angle deficit at a surface vertex.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeficitAngleRecord {
    pub vertex: usize,
    /// `2π - Σ angles` inside, `π - Σ angles` on the boundary.
    pub deficit: f64,
    pub boundary: bool,
}

pub fn deficit_record(mesh: &SimplicialMesh, vertex: usize) -> Result<DeficitAngleRecord, CurvatureError> {
    if mesh.dim() != 2 {
        return Err(CurvatureError::WrongDimension {
            expected: 2,
            found: mesh.dim(),
        });
    }
    if vertex >= mesh.vertex_count() {
        return Err(CurvatureError::UnknownVertex { vertex });
    }
    let sum: f64 = mesh
        .vertex_simplices(vertex)
        .iter()
        .map(|&s| {
            let corner = mesh.simplex(s).iter().position(|&x| x == vertex).unwrap();
            mesh.corner_angle(s, corner)
        })
        .sum();
    let boundary = mesh.is_boundary_vertex(vertex);
    Ok(DeficitAngleRecord {
        vertex,
        deficit: if boundary { PI - sum } else { TAU - sum },
        boundary,
    })
}

/// Deficit angle `2π - Σ angles` at an interior surface vertex.
pub fn deficit_angle(mesh: &SimplicialMesh, vertex: usize) -> Result<f64, CurvatureError> {
    let record = deficit_record(mesh, vertex)?;
    if record.boundary {
        return Err(CurvatureError::BoundaryVertex { vertex });
    }
    Ok(record.deficit)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PathMode {
    /// `2 asin(cos θ sin(ε/2))`, the turning angle of the crossing geodesic.
    Exact,
    /// `cos θ · ε`, correct to third order in ε.
    Linearized,
}

/// Integrated curvature along a geodesic crossing a hinge of angle `angle`
/// at angle `theta` to the hinge normal.
pub fn path_integral(angle: f64, theta: f64, mode: PathMode) -> Result<f64, CurvatureError> {
    if !(-FRAC_PI_2..=FRAC_PI_2).contains(&theta) {
        return Err(CurvatureError::ThetaOutOfRange { theta });
    }
    Ok(match mode {
        PathMode::Linearized => theta.cos() * angle,
        PathMode::Exact => 2.0 * (theta.cos() * (0.5 * angle).sin()).asin(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn folded_pair(height: f64) -> SimplicialMesh {
        // Shared edge along x; the second triangle is lifted by `height`.
        SimplicialMesh::from_surface(
            &[
                [0.0, 0.0, 0.0],
                [1.0, 0.0, 0.0],
                [0.5, 1.0, 0.0],
                [0.5, -1.0, height],
            ],
            &[[0, 1, 2], [1, 0, 3]],
        )
        .unwrap()
    }

    #[test]
    fn coplanar_pair_is_flat() {
        let mesh = folded_pair(0.0);
        let hinges = extract_hinges(&mesh).unwrap();
        assert_eq!(hinges.len(), 1);
        assert_eq!(hinges[0].angle, 0.0);
        assert_eq!(hinges[0].measure, 1.0);
    }

    #[test]
    fn fold_sign_follows_normal() {
        // Normals point to +z. Lifting the second triangle toward the normal
        // makes the fold concave (positive).
        let up = folded_pair(1.0);
        let angle = hinge_angle(&up, up.find_facet(&[0, 1]).unwrap()).unwrap();
        assert!((angle - std::f64::consts::FRAC_PI_4).abs() < 1e-14);
        let down = folded_pair(-1.0);
        let angle = hinge_angle(&down, down.find_facet(&[0, 1]).unwrap()).unwrap();
        assert!((angle + std::f64::consts::FRAC_PI_4).abs() < 1e-14);
    }

    #[test]
    fn boundary_facet_has_no_angle() {
        let mesh = folded_pair(0.3);
        let f = mesh.find_facet(&[1, 2]).unwrap();
        assert_eq!(
            hinge_angle(&mesh, f),
            Err(CurvatureError::BoundaryHinge { facet: f })
        );
    }

    #[test]
    fn sharp_folds_beyond_right_angle() {
        // Second triangle folded back over the first: bend of 3π/4.
        let mesh = SimplicialMesh::from_surface(
            &[
                [0.0, 0.0, 0.0],
                [1.0, 0.0, 0.0],
                [0.5, 1.0, 0.0],
                [0.5, 1.0, -1.0],
            ],
            &[[0, 1, 2], [1, 0, 3]],
        )
        .unwrap();
        let angle = hinge_angle(&mesh, mesh.find_facet(&[0, 1]).unwrap()).unwrap();
        assert!((angle + 0.75 * PI).abs() < 1e-14);
    }

    #[test]
    fn square_corners_turn_by_minus_half_pi() {
        let mesh = SimplicialMesh::from_curve(
            &[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]],
            &[[0, 1], [1, 2], [2, 3], [3, 0]],
        )
        .unwrap();
        let hinges = extract_hinges(&mesh).unwrap();
        assert_eq!(hinges.len(), 4);
        for h in hinges {
            assert!((h.angle + FRAC_PI_2).abs() < 1e-15);
            assert_eq!(h.measure, 1.0);
        }
    }

    #[test]
    fn deficit_of_flat_fan_is_zero() {
        let mut pts = vec![[0.0, 0.0, 0.0]];
        let mut tris = Vec::new();
        for i in 0..6 {
            let a = TAU * i as f64 / 6.0;
            pts.push([a.cos(), a.sin(), 0.0]);
            tris.push([0, 1 + i, 1 + (i + 1) % 6]);
        }
        let mesh = SimplicialMesh::from_surface(&pts, &tris).unwrap();
        assert!(deficit_angle(&mesh, 0).unwrap().abs() < 1e-14);
        assert!(matches!(
            deficit_angle(&mesh, 1),
            Err(CurvatureError::BoundaryVertex { vertex: 1 })
        ));
        let record = deficit_record(&mesh, 1).unwrap();
        assert!(record.boundary);
        // Two equilateral corners at a hull vertex.
        assert!((record.deficit - PI / 3.0).abs() < 1e-14);
    }

    #[test]
    fn path_integral_modes() {
        let eps = 0.2;
        for mode in [PathMode::Exact, PathMode::Linearized] {
            assert!((path_integral(eps, 0.0, mode).unwrap() - eps).abs() < 1e-15);
            assert!(path_integral(eps, FRAC_PI_2, mode).unwrap().abs() < 1e-16);
        }
        let lin = path_integral(eps, PI / 3.0, PathMode::Linearized).unwrap();
        let exact = path_integral(eps, PI / 3.0, PathMode::Exact).unwrap();
        assert!((lin - 0.1).abs() < 1e-15);
        assert!((exact - 2.0 * (0.5 * 0.1_f64.sin()).asin()).abs() < 1e-16);
        assert!((exact - lin).abs() <= eps.powi(3));
        assert!(matches!(
            path_integral(eps, 2.0, PathMode::Exact),
            Err(CurvatureError::ThetaOutOfRange { .. })
        ));
    }
}
