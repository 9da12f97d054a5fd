//! Per-triangle curvature tensors assembled from the three edge-orthogonal
//! curvatures of a triangle.

use nalgebra::{Matrix2, Vector2};
use serde::{Deserialize, Serialize};

use crate::error::CurvatureError;
use crate::mesh::SimplicialMesh;

/// Smallest admissible |det| of the matrix of two unit edge normals.
pub const PARALLEL_TOLERANCE: f64 = 1e-8;

/// Symmetric 2×2 tensor in a triangle's intrinsic orthonormal frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureTensor {
    pub k11: f64,
    pub k12: f64,
    pub k22: f64,
}

impl CurvatureTensor {
    pub fn zero() -> Self {
        Self {
            k11: 0.0,
            k12: 0.0,
            k22: 0.0,
        }
    }

    pub fn from_matrix(m: &Matrix2<f64>) -> Self {
        Self {
            k11: m[(0, 0)],
            k12: 0.5 * (m[(0, 1)] + m[(1, 0)]),
            k22: m[(1, 1)],
        }
    }

    pub fn matrix(&self) -> Matrix2<f64> {
        Matrix2::new(self.k11, self.k12, self.k12, self.k22)
    }

    pub fn trace(&self) -> f64 {
        self.k11 + self.k22
    }

    pub fn determinant(&self) -> f64 {
        self.k11 * self.k22 - self.k12 * self.k12
    }

    /// Value of the quadratic form on a direction (not necessarily unit).
    pub fn apply(&self, u: &Vector2<f64>) -> f64 {
        self.k11 * u.x * u.x + 2.0 * self.k12 * u.x * u.y + self.k22 * u.y * u.y
    }

    /// Eigenvalues `(kmin, kmax)`.
    pub fn principal(&self) -> (f64, f64) {
        let mean = 0.5 * (self.k11 + self.k22);
        let radius = (0.5 * (self.k11 - self.k22)).hypot(self.k12);
        (mean - radius, mean + radius)
    }
}

/// Unit outward normals of the three edges of a triangle in its intrinsic
/// frame, with edge `i` running from corner `i` to corner `i + 1`.
pub fn edge_normals(mesh: &SimplicialMesh, triangle: usize) -> ([Vector2<f64>; 3], [f64; 3]) {
    let q = mesh.intrinsic_triangle(triangle);
    let mut normals = [Vector2::zeros(); 3];
    let mut lengths = [0.0; 3];
    for i in 0..3 {
        let e = q[(i + 1) % 3] - q[i];
        lengths[i] = e.norm();
        normals[i] = Vector2::new(e.y, -e.x) / lengths[i];
    }
    (normals, lengths)
}

/// Reconstructs the curvature tensor of `triangle` from per-facet
/// edge-orthogonal curvatures `alpha`, indexed by facet id.
pub fn triangle_tensor(
    mesh: &SimplicialMesh,
    alpha: &[Option<f64>],
    triangle: usize,
) -> Result<CurvatureTensor, CurvatureError> {
    if mesh.dim() != 2 {
        return Err(CurvatureError::WrongDimension {
            expected: 2,
            found: mesh.dim(),
        });
    }
    let facets = mesh.simplex_facets(triangle);
    let mut a = [0.0; 3];
    for i in 0..3 {
        a[i] = alpha
            .get(facets[i])
            .copied()
            .flatten()
            .ok_or(CurvatureError::MissingAlpha {
                triangle,
                facet: facets[i],
            })?;
    }
    let (n, l) = edge_normals(mesh, triangle);
    tensor_from_edges(&n, &l, &a).ok_or(CurvatureError::NearParallelNormals { triangle })
}

/// Tensor whose quadratic form takes the value `alpha[i]` on each unit
/// normal `normals[i]`, given edge lengths with `Σ lengths[i]·normals[i] = 0`.
pub fn tensor_from_edges(
    normals: &[Vector2<f64>; 3],
    lengths: &[f64; 3],
    alpha: &[f64; 3],
) -> Option<CurvatureTensor> {
    let [l1, l2, l3] = *lengths;
    let [a1, a2, a3] = *alpha;
    let mixed = 0.5 * (l3 * l3 * a3 - l1 * l1 * a1 - l2 * l2 * a2) / (l1 * l2);
    let gram = Matrix2::new(a1, mixed, mixed, a2);
    let basis = Matrix2::from_columns(&[normals[0], normals[1]]);
    if basis.determinant().abs() < PARALLEL_TOLERANCE {
        return None;
    }
    let inv = basis.try_inverse()?;
    Some(CurvatureTensor::from_matrix(&(inv.transpose() * gram * inv)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn equilateral() -> ([Vector2<f64>; 3], [f64; 3]) {
        let mut n = [Vector2::zeros(); 3];
        for (i, v) in n.iter_mut().enumerate() {
            let phi = -PI / 2.0 + 2.0 * PI * i as f64 / 3.0;
            *v = Vector2::new(phi.cos(), phi.sin());
        }
        (n, [1.0; 3])
    }

    #[test]
    fn equal_alphas_give_multiple_of_identity() {
        let (n, l) = equilateral();
        let k = tensor_from_edges(&n, &l, &[-1.5; 3]).unwrap();
        assert_relative_eq!(k.k11, -1.5, epsilon = 1e-14);
        assert_relative_eq!(k.k22, -1.5, epsilon = 1e-14);
        assert!(k.k12.abs() < 1e-14);
    }

    #[test]
    fn reproduces_a_known_form() {
        let target = CurvatureTensor {
            k11: 0.3,
            k12: -0.7,
            k22: 1.1,
        };
        let n = [
            Vector2::new(0.0, -1.0),
            Vector2::new(1.0, 1.0).normalize(),
            Vector2::new(-1.0, 0.0),
        ];
        let l = [1.0, 2f64.sqrt(), 1.0];
        let a = [target.apply(&n[0]), target.apply(&n[1]), target.apply(&n[2])];
        let k = tensor_from_edges(&n, &l, &a).unwrap();
        assert_relative_eq!(k.k11, target.k11, epsilon = 1e-14);
        assert_relative_eq!(k.k12, target.k12, epsilon = 1e-14);
        assert_relative_eq!(k.k22, target.k22, epsilon = 1e-14);
    }

    #[test]
    fn principal_values_are_eigenvalues() {
        let k = CurvatureTensor {
            k11: 2.0,
            k12: 1.0,
            k22: 2.0,
        };
        assert_eq!(k.principal(), (1.0, 3.0));
        assert_eq!(k.trace(), 4.0);
        assert_eq!(k.determinant(), 3.0);
    }

    #[test]
    fn parallel_normals_are_rejected() {
        let n = [
            Vector2::new(0.0, -1.0),
            Vector2::new(1e-10, -1.0).normalize(),
            Vector2::new(0.0, 1.0),
        ];
        assert!(tensor_from_edges(&n, &[1.0, 1.0, 2.0], &[0.0; 3]).is_none());
    }

    #[test]
    fn missing_alpha_is_reported() {
        let mesh = SimplicialMesh::from_surface(
            &[[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]],
            &[[0, 1, 2]],
        )
        .unwrap();
        let err = triangle_tensor(&mesh, &[Some(0.0), None, Some(0.0)], 0).unwrap_err();
        assert!(matches!(err, CurvatureError::MissingAlpha { triangle: 0, .. }));
        let zero = triangle_tensor(&mesh, &[Some(0.0); 3], 0).unwrap();
        assert_eq!(zero.principal(), (0.0, 0.0));
    }
}
