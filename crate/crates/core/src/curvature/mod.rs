//! Mean curvature over vertex regions, total mean curvature, hinge-orthogonal
//! curvature over hinge regions and the cotangent baseline.

mod region;
mod tensor;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

pub use region::{alpha_hinge, build_hinge_region, HingeRegion, RegionEntry};
pub use tensor::{edge_normals, tensor_from_edges, triangle_tensor, CurvatureTensor, PARALLEL_TOLERANCE};

use crate::dual::DualTessellation;
use crate::error::CurvatureError;
use crate::hinge::Hinges;
use crate::mesh::SimplicialMesh;

/// Average mean curvature over the vertex region of `vertex`.
pub fn mean_curvature(
    mesh: &SimplicialMesh,
    hinges: &Hinges,
    dual: &DualTessellation,
    vertex: usize,
) -> Result<f64, CurvatureError> {
    if vertex >= mesh.vertex_count() {
        return Err(CurvatureError::UnknownVertex { vertex });
    }
    if mesh.is_boundary_vertex(vertex) {
        return Err(CurvatureError::BoundaryVertex { vertex });
    }
    let mut sum = 0.0;
    for &f in mesh.vertex_facets(vertex) {
        let hinge = hinges
            .get(f)
            .ok_or(CurvatureError::BoundaryHinge { facet: f })?;
        sum += dual.hinge_split(mesh, f, vertex)? * hinge.angle;
    }
    Ok(sum / dual.cell_measure(vertex)?)
}

/// Σ |h| ε_h over all interior hinges.
pub fn total_mean_curvature(hinges: &Hinges) -> f64 {
    hinges.iter().map(|h| h.measure * h.angle).sum()
}

/// Σ |V_v| H_v over the vertices whose mean curvature is defined.
pub fn cell_weighted_total(
    mesh: &SimplicialMesh,
    hinges: &Hinges,
    dual: &DualTessellation,
) -> Result<f64, CurvatureError> {
    let mut total = 0.0;
    for v in 0..mesh.vertex_count() {
        if mesh.is_boundary_vertex(v) {
            continue;
        }
        total += dual.cell_measure(v)? * mean_curvature(mesh, hinges, dual, v)?;
    }
    Ok(total)
}

/// Cotangent-weighted mean-curvature normal at an interior vertex of a
/// surface together with its projection on the outward vertex normal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CotanRecord {
    pub vector: Vector3<f64>,
    pub normal: Vector3<f64>,
    /// Signed scalar comparable to the mean curvature.
    pub scalar: f64,
}

pub fn cotan_mean_curvature(
    mesh: &SimplicialMesh,
    dual: &DualTessellation,
    vertex: usize,
) -> Result<CotanRecord, CurvatureError> {
    if mesh.dim() != 2 {
        return Err(CurvatureError::WrongDimension {
            expected: 2,
            found: mesh.dim(),
        });
    }
    if vertex >= mesh.vertex_count() {
        return Err(CurvatureError::UnknownVertex { vertex });
    }
    if mesh.is_boundary_vertex(vertex) {
        return Err(CurvatureError::BoundaryVertex { vertex });
    }
    let p = mesh.points();
    let mut sum = Vector3::zeros();
    let mut normal = Vector3::zeros();
    for &t in mesh.vertex_simplices(vertex) {
        let tri = mesh.triangle(t);
        let corner = tri.iter().position(|&x| x == vertex).unwrap();
        let (a, b) = (tri[(corner + 1) % 3], tri[(corner + 2) % 3]);
        let cot = |at: usize, u: usize, w: usize| {
            let e1 = p[u] - p[at];
            let e2 = p[w] - p[at];
            e1.dot(&e2) / e1.cross(&e2).norm()
        };
        sum += cot(b, vertex, a) * (p[a] - p[vertex]) + cot(a, vertex, b) * (p[b] - p[vertex]);
        normal += (p[a] - p[vertex]).cross(&(p[b] - p[vertex]));
    }
    let vector = sum / (2.0 * dual.cell_measure(vertex)?);
    let normal = normal.normalize();
    Ok(CotanRecord {
        vector,
        normal,
        scalar: vector.dot(&normal),
    })
}

/// Intrinsic Gaussian curvature density δ_v / |V_v|.
pub fn gaussian_density(
    mesh: &SimplicialMesh,
    dual: &DualTessellation,
    vertex: usize,
) -> Result<f64, CurvatureError> {
    Ok(crate::hinge::deficit_angle(mesh, vertex)? / dual.cell_measure(vertex)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::DualScheme;
    use crate::fixtures::{flat_grid, gen_circle, gen_icosphere};
    use approx::assert_relative_eq;

    #[test]
    fn polygon_vertices_have_curvature_minus_inverse_radius() {
        let mesh = gen_circle(7, 2.0).unwrap();
        let hinges = Hinges::extract(&mesh).unwrap();
        let dual = DualTessellation::build(&mesh, DualScheme::Barycentric);
        for v in 0..7 {
            assert_relative_eq!(mean_curvature(&mesh, &hinges, &dual, v).unwrap(), -0.5, max_relative = 1e-13);
        }
        assert_relative_eq!(total_mean_curvature(&hinges), -std::f64::consts::TAU, max_relative = 1e-13);
    }

    #[test]
    fn flat_grid_interior_is_zero() {
        let mesh = flat_grid(4, 4, 1.0);
        let hinges = Hinges::extract(&mesh).unwrap();
        let dual = DualTessellation::build(&mesh, DualScheme::Mixed);
        let mut interior = 0;
        for v in 0..mesh.vertex_count() {
            match mean_curvature(&mesh, &hinges, &dual, v) {
                Ok(h) => {
                    interior += 1;
                    assert!(h.abs() < 1e-14);
                    let c = cotan_mean_curvature(&mesh, &dual, v).unwrap();
                    assert!(c.vector.norm() < 1e-14);
                }
                Err(e) => assert_eq!(e, CurvatureError::BoundaryVertex { vertex: v }),
            }
        }
        assert_eq!(interior, 9);
    }

    #[test]
    fn steiner_total_matches_cell_sum() {
        let mesh = gen_icosphere(1.0, 1).unwrap();
        let hinges = Hinges::extract(&mesh).unwrap();
        for scheme in DualScheme::ALL {
            let dual = DualTessellation::build(&mesh, scheme);
            let total = total_mean_curvature(&hinges);
            assert_relative_eq!(cell_weighted_total(&mesh, &hinges, &dual).unwrap(), total, max_relative = 1e-12);
        }
    }

    #[test]
    fn cotan_points_inward_on_a_sphere() {
        let mesh = gen_icosphere(1.0, 2).unwrap();
        let dual = DualTessellation::build(&mesh, DualScheme::Mixed);
        for v in 0..mesh.vertex_count() {
            let c = cotan_mean_curvature(&mesh, &dual, v).unwrap();
            assert!(c.scalar < 0.0);
            assert!(c.normal.dot(&mesh.point(v)) > 0.0);
        }
    }
}
