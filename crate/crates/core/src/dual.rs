//! Dual tessellations: one region per vertex, assembled from per-simplex
//! pieces.
//!
//! Every scheme cuts each edge at its midpoint. Inside a triangle the piece
//! belonging to a corner is bounded by the two adjacent edge midpoints and a
//! scheme-dependent interior point:
//!
//! * `Barycentric`: the centroid.
//! * `Mixed`: the circumcenter for non-obtuse triangles, otherwise the
//!   midpoint of the edge opposite the obtuse corner.
//! * `Circumcentric`: the part of the triangle closer to the corner than to
//!   the other two corners. For acute triangles this is the circumcenter
//!   quad; for obtuse ones the region lost outside the triangle ends up with
//!   the obtuse corner.
//!
//! Pieces are kept as planar polygons in the triangle's intrinsic frame
//! (see [`SimplicialMesh::intrinsic_triangle`]) so that hinge regions can
//! unfold them.

use std::fmt;
use std::str::FromStr;

use nalgebra::{Point2, Vector2};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::CurvatureError;
use crate::mesh::SimplicialMesh;
use crate::polygon::{self, HalfPlane, Polygon};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DualScheme {
    Barycentric,
    Circumcentric,
    #[default]
    Mixed,
}

impl DualScheme {
    pub const ALL: [DualScheme; 3] = [
        DualScheme::Barycentric,
        DualScheme::Circumcentric,
        DualScheme::Mixed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DualScheme::Barycentric => "barycentric",
            DualScheme::Circumcentric => "circumcentric",
            DualScheme::Mixed => "mixed",
        }
    }
}

impl fmt::Display for DualScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DualScheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "barycentric" => Ok(DualScheme::Barycentric),
            "circumcentric" => Ok(DualScheme::Circumcentric),
            "mixed" => Ok(DualScheme::Mixed),
            other => Err(format!(
                "unknown dual scheme '{other}' (expected barycentric, circumcentric or mixed)"
            )),
        }
    }
}

#[derive(Debug, Clone)]
pub struct DualTessellation {
    scheme: DualScheme,
    dim: usize,
    cell_measures: Vec<f64>,
    /// Per top simplex, per local corner: measure of the corner's piece.
    piece_measures: Vec<Vec<f64>>,
    /// Per triangle, per local corner: the piece polygon in the intrinsic
    /// frame. Empty for curves.
    pieces: Vec<[Polygon; 3]>,
    /// Triangles whose circumcenter lies outside the triangle.
    obtuse: Vec<usize>,
    /// (vertex, triangle) pairs where the vertex's piece touches the edge
    /// opposite the vertex, i.e. a hinge outside the vertex star.
    locality_violations: Vec<(usize, usize)>,
    warnings: Vec<String>,
}

/// Angles above a right angle by more than this count as obtuse.
const OBTUSE_MARGIN: f64 = 1e-12;

impl DualTessellation {
    pub fn build(mesh: &SimplicialMesh, scheme: DualScheme) -> Self {
        let dim = mesh.dim();
        let mut cell_measures = vec![0.0; mesh.vertex_count()];
        let mut piece_measures = Vec::with_capacity(mesh.simplex_count());
        let mut pieces = Vec::new();
        let mut obtuse = Vec::new();
        let mut locality_violations = Vec::new();
        let mut warnings = Vec::new();

        if dim == 1 {
            for s in 0..mesh.simplex_count() {
                let half = 0.5 * mesh.simplex_volume(s);
                for &v in mesh.simplex(s) {
                    cell_measures[v] += half;
                }
                piece_measures.push(vec![half, half]);
            }
        } else {
            let built: Vec<TrianglePieces> = (0..mesh.simplex_count())
                .into_par_iter()
                .map(|s| triangle_pieces(mesh, s, scheme))
                .collect();
            for (s, tp) in built.into_iter().enumerate() {
                let t = mesh.triangle(s);
                let areas: Vec<f64> = tp.pieces.iter().map(|p| polygon::area(p)).collect();
                for (corner, &v) in t.iter().enumerate() {
                    cell_measures[v] += areas[corner];
                    if tp.touches_opposite[corner] {
                        locality_violations.push((v, s));
                    }
                }
                if tp.obtuse && scheme == DualScheme::Circumcentric {
                    obtuse.push(s);
                    warnings.push(format!(
                        "triangle {s}: circumcenter outside the triangle, cell clipped"
                    ));
                }
                piece_measures.push(areas);
                pieces.push(tp.pieces);
            }
            for &(v, s) in &locality_violations {
                warnings.push(format!(
                    "vertex {v}: dual cell reaches the edge opposite it in triangle {s}"
                ));
            }
        }

        Self {
            scheme,
            dim,
            cell_measures,
            piece_measures,
            pieces,
            obtuse,
            locality_violations,
            warnings,
        }
    }

    pub fn scheme(&self) -> DualScheme {
        self.scheme
    }

    /// |V_v|, the n-volume of the vertex region.
    pub fn cell_measure(&self, vertex: usize) -> Result<f64, CurvatureError> {
        self.cell_measures
            .get(vertex)
            .copied()
            .ok_or(CurvatureError::UnknownVertex { vertex })
    }

    pub fn cell_measures(&self) -> &[f64] {
        &self.cell_measures
    }

    /// |h ∩ V_v| for an endpoint `vertex` of the facet `facet`.
    ///
    /// Edges are always cut at their midpoints, so this is |h|/2 for
    /// surfaces. A point hinge lies wholly inside the cell of its vertex.
    pub fn hinge_split(
        &self,
        mesh: &SimplicialMesh,
        facet: usize,
        vertex: usize,
    ) -> Result<f64, CurvatureError> {
        let f = mesh
            .facets()
            .get(facet)
            .ok_or(CurvatureError::UnknownHinge { facet })?;
        if !f.vertices.contains(&vertex) {
            return Err(CurvatureError::NotAnEndpoint { facet, vertex });
        }
        Ok(match self.dim {
            1 => 1.0,
            _ => 0.5 * mesh.facet_measure(facet),
        })
    }

    /// Measure of the piece of `simplex` belonging to its local `corner`.
    pub fn piece_measure(&self, simplex: usize, corner: usize) -> f64 {
        self.piece_measures[simplex][corner]
    }

    /// Piece polygon of a triangle corner in the triangle's intrinsic frame.
    pub fn piece(&self, triangle: usize, corner: usize) -> &[Point2<f64>] {
        &self.pieces[triangle][corner]
    }

    pub fn obtuse_triangles(&self) -> &[usize] {
        &self.obtuse
    }

    pub fn locality_violations(&self) -> &[(usize, usize)] {
        &self.locality_violations
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Completeness and disjointness diagnostics.
    pub fn check(&self, mesh: &SimplicialMesh) -> TessellationCheck {
        let total = mesh.total_volume();
        let cells: f64 = self.cell_measures.iter().sum();
        let mut max_overlap_ratio: f64 = 0.0;
        let mut max_partition_error: f64 = 0.0;
        for (s, pieces) in self.pieces.iter().enumerate() {
            let area = mesh.simplex_volume(s);
            let sum: f64 = pieces.iter().map(|p| polygon::area(p)).sum();
            max_partition_error = max_partition_error.max((sum - area).abs() / area);
            for i in 0..3 {
                for j in i + 1..3 {
                    if pieces[i].len() < 3 || pieces[j].len() < 3 {
                        continue;
                    }
                    let overlap = polygon::area(&polygon::intersect_convex(&pieces[i], &pieces[j]));
                    max_overlap_ratio = max_overlap_ratio.max(overlap / area);
                }
            }
        }
        TessellationCheck {
            total_volume: total,
            cell_total: cells,
            completeness_error: (cells - total).abs() / total,
            max_overlap_ratio,
            max_partition_error,
            min_cell: self.cell_measures.iter().copied().fold(f64::INFINITY, f64::min),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TessellationCheck {
    pub total_volume: f64,
    pub cell_total: f64,
    /// |Σ|V_v| - |S|| / |S|.
    pub completeness_error: f64,
    /// Largest pairwise piece overlap inside one triangle, relative to its area.
    pub max_overlap_ratio: f64,
    /// Largest |Σ pieces - triangle| / triangle over all triangles.
    pub max_partition_error: f64,
    pub min_cell: f64,
}

struct TrianglePieces {
    pieces: [Polygon; 3],
    obtuse: bool,
    touches_opposite: [bool; 3],
}

fn triangle_pieces(mesh: &SimplicialMesh, s: usize, scheme: DualScheme) -> TrianglePieces {
    let q = mesh.intrinsic_triangle(s);
    let angles = [0, 1, 2].map(|c| mesh.corner_angle(s, c));
    let obtuse_corner = (0..3).find(|&c| angles[c] > std::f64::consts::FRAC_PI_2 + OBTUSE_MARGIN);

    let pieces = match scheme {
        DualScheme::Barycentric => {
            let centroid = Point2::from((q[0].coords + q[1].coords + q[2].coords) / 3.0);
            corner_quads(&q, centroid)
        }
        DualScheme::Mixed => {
            let center = match obtuse_corner {
                Some(c) => nalgebra::center(&q[(c + 1) % 3], &q[(c + 2) % 3]),
                None => circumcenter(&q),
            };
            corner_quads(&q, center)
        }
        DualScheme::Circumcentric => [0, 1, 2].map(|c| {
            let planes = [
                HalfPlane::closer_to(q[c], q[(c + 1) % 3]),
                HalfPlane::closer_to(q[c], q[(c + 2) % 3]),
            ];
            polygon::clip_all(&q, &planes)
        }),
    };

    let touches_opposite = [0, 1, 2].map(|c| {
        let piece = &pieces[c];
        if piece.len() < 3 {
            return false;
        }
        let a = q[(c + 1) % 3];
        let b = q[(c + 2) % 3];
        let planes = edge_planes(piece);
        polygon::clip_segment(a, b, &planes)
            .map(|(t0, t1)| t1 - t0 > 1e-9)
            .unwrap_or(false)
    });

    TrianglePieces {
        pieces,
        obtuse: obtuse_corner.is_some(),
        touches_opposite,
    }
}

fn corner_quads(q: &[Point2<f64>; 3], center: Point2<f64>) -> [Polygon; 3] {
    [0, 1, 2].map(|c| {
        let v = q[c];
        let next = nalgebra::center(&v, &q[(c + 1) % 3]);
        let prev = nalgebra::center(&v, &q[(c + 2) % 3]);
        let mut quad = vec![v, next, center, prev];
        quad.dedup_by(|a, b| (*a - *b).norm() == 0.0);
        quad
    })
}

/// Half-planes bounding a counter-clockwise convex polygon.
fn edge_planes(poly: &[Point2<f64>]) -> Vec<HalfPlane> {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let a = poly[i];
            let e = poly[(i + 1) % n] - a;
            let normal = Vector2::new(e.y, -e.x);
            let scale = normal.norm().max(f64::MIN_POSITIVE);
            // Slightly loosened so boundary-lying segments register.
            HalfPlane::new(normal, normal.dot(&a.coords) + 1e-12 * scale * e.norm())
        })
        .collect()
}

pub(crate) fn circumcenter(q: &[Point2<f64>; 3]) -> Point2<f64> {
    let b = q[1] - q[0];
    let c = q[2] - q[0];
    let d = 2.0 * (b.x * c.y - b.y * c.x);
    let bb = b.norm_squared();
    let cc = c.norm_squared();
    let ux = (c.y * bb - b.y * cc) / d;
    let uy = (b.x * cc - c.x * bb) / d;
    q[0] + Vector2::new(ux, uy)
}
