//! Piecewise flat simplicial manifolds.
//!
//! A [`SimplicialMesh`] is a homogeneous simplicial complex of dimension
//! `n` (1 for polylines in E², 2 for triangle surfaces in E³) together with
//! vertex coordinates in the ambient space E^{n+1}. Construction validates
//! the manifold conditions, rejects degenerate simplices and makes the
//! orientation consistent.
//!
//! The `(n-1)`-faces of the complex are called *facets* here. For surfaces
//! they are the edges, for polylines they are the vertices. An interior facet
//! is shared by exactly two simplices and becomes a hinge.

use std::collections::{HashMap, VecDeque};

use nalgebra::{Point2, Vector3};

use crate::error::MeshError;

/// Scale-relative degeneracy threshold: a simplex with volume below
/// `DEGENERACY_TOLERANCE * longest_edge^n` is rejected.
pub const DEGENERACY_TOLERANCE: f64 = 1e-12;

/// Identifies a simplex of a given dimension inside a mesh.
///
/// Dimension 0 refers to vertices, dimension `n` to the top simplices and
/// (for surfaces) dimension 1 to edges, indexed as facets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexRef {
    pub dim: usize,
    pub index: usize,
}

impl SimplexRef {
    pub fn vertex(index: usize) -> Self {
        Self { dim: 0, index }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    /// Flip simplices to match the orientation of the first simplex of each
    /// connected component. When disabled, inconsistent input is an error.
    pub repair_orientation: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            repair_orientation: true,
        }
    }
}

/// An `(n-1)`-face with its incident top simplices.
#[derive(Debug, Clone, PartialEq)]
pub struct Facet {
    /// Sorted vertex indices (one vertex for curves, two for surfaces).
    pub vertices: Vec<usize>,
    /// Incident top simplices; the second slot is `None` on the boundary.
    pub simplices: (usize, Option<usize>),
}

impl Facet {
    pub fn is_boundary(&self) -> bool {
        self.simplices.1.is_none()
    }

    /// The incident simplex across the facet from `simplex`.
    pub fn other(&self, simplex: usize) -> Option<usize> {
        match self.simplices {
            (a, Some(b)) if a == simplex => Some(b),
            (a, Some(b)) if b == simplex => Some(a),
            _ => None,
        }
    }
}

/// The result of a star query: every simplex whose closure contains the
/// center, grouped by dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarQueryResult {
    pub center: SimplexRef,
    /// `members[d]` holds the indices of dimension-`d` members. Dimensions
    /// not above the center's are empty.
    pub members: Vec<Vec<usize>>,
}

impl StarQueryResult {
    pub fn of_dim(&self, dim: usize) -> &[usize] {
        self.members.get(dim).map(Vec::as_slice).unwrap_or(&[])
    }
}

#[derive(Debug, Clone)]
pub struct SimplicialMesh {
    dim: usize,
    points: Vec<Vector3<f64>>,
    simplices: Vec<Vec<usize>>,
    facets: Vec<Facet>,
    /// Facet ids of each simplex. For a triangle `[a, b, c]` these are the
    /// edges `ab`, `bc`, `ca`; for a segment `[a, b]` the facets `a`, `b`.
    simplex_facets: Vec<Vec<usize>>,
    vertex_simplices: Vec<Vec<usize>>,
    vertex_facets: Vec<Vec<usize>>,
    boundary_vertex: Vec<bool>,
    flipped: usize,
}

impl SimplicialMesh {
    /// Builds a mesh, inferring the dimension from the simplex arity.
    ///
    /// Coordinates must have `n + 1` components. For curves, 3-component
    /// coordinates with `z == 0` are accepted as well (that is what OFF and
    /// OBJ files carry).
    pub fn new(points: Vec<Vec<f64>>, simplices: Vec<Vec<usize>>) -> Result<Self, MeshError> {
        Self::with_options(points, simplices, BuildOptions::default())
    }

    pub fn with_options(
        points: Vec<Vec<f64>>,
        simplices: Vec<Vec<usize>>,
        options: BuildOptions,
    ) -> Result<Self, MeshError> {
        if points.is_empty() || simplices.is_empty() {
            return Err(MeshError::Empty);
        }
        let arity = simplices[0].len();
        if !(2..=3).contains(&arity) {
            return Err(MeshError::UnsupportedArity { simplex: 0, arity });
        }
        let dim = arity - 1;
        let mut coords = Vec::with_capacity(points.len());
        for (vertex, p) in points.iter().enumerate() {
            let v = match (dim, p.len()) {
                (1, 2) => Vector3::new(p[0], p[1], 0.0),
                (1, 3) => {
                    if p[2] != 0.0 {
                        return Err(MeshError::NonPlanarCurve { vertex, z: p[2] });
                    }
                    Vector3::new(p[0], p[1], 0.0)
                }
                (2, 3) => Vector3::new(p[0], p[1], p[2]),
                (_, found) => {
                    return Err(MeshError::CoordinateArity {
                        vertex,
                        found,
                        expected: dim + 1,
                    })
                }
            };
            if !v.iter().all(|c| c.is_finite()) {
                return Err(MeshError::NonFiniteCoordinate { vertex });
            }
            coords.push(v);
        }
        Self::assemble(dim, coords, simplices, options)
    }

    /// Builds a polyline in E².
    pub fn from_curve(points: &[[f64; 2]], segments: &[[usize; 2]]) -> Result<Self, MeshError> {
        Self::new(
            points.iter().map(|p| p.to_vec()).collect(),
            segments.iter().map(|s| s.to_vec()).collect(),
        )
    }

    /// Builds a triangle surface in E³.
    pub fn from_surface(points: &[[f64; 3]], triangles: &[[usize; 3]]) -> Result<Self, MeshError> {
        Self::new(
            points.iter().map(|p| p.to_vec()).collect(),
            triangles.iter().map(|t| t.to_vec()).collect(),
        )
    }

    fn assemble(
        dim: usize,
        points: Vec<Vector3<f64>>,
        mut simplices: Vec<Vec<usize>>,
        options: BuildOptions,
    ) -> Result<Self, MeshError> {
        let count = points.len();
        for (s, simplex) in simplices.iter().enumerate() {
            if simplex.len() != dim + 1 {
                return Err(MeshError::MixedArity {
                    simplex: s,
                    arity: simplex.len(),
                    expected: dim + 1,
                });
            }
            for (i, &v) in simplex.iter().enumerate() {
                if v >= count {
                    return Err(MeshError::IndexOutOfRange {
                        simplex: s,
                        index: v,
                        count,
                    });
                }
                if simplex[..i].contains(&v) {
                    return Err(MeshError::RepeatedVertex { simplex: s, index: v });
                }
            }
            let (volume, longest) = simplex_volume(&points, simplex);
            let threshold = DEGENERACY_TOLERANCE * longest.powi(dim as i32);
            if !(volume >= threshold) || volume == 0.0 {
                return Err(MeshError::DegenerateSimplex {
                    simplex: s,
                    volume,
                    threshold,
                });
            }
        }

        // Facets in order of first appearance.
        let mut lookup: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut incidence: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        let mut simplex_facets = Vec::with_capacity(simplices.len());
        for (s, simplex) in simplices.iter().enumerate() {
            let mut ids = Vec::with_capacity(dim + 1);
            for key in facet_keys(simplex) {
                let id = *lookup.entry(key.clone()).or_insert_with(|| {
                    incidence.push((key, Vec::new()));
                    incidence.len() - 1
                });
                incidence[id].1.push(s);
                ids.push(id);
            }
            simplex_facets.push(ids);
        }
        let mut facets = Vec::with_capacity(incidence.len());
        for (vertices, incident) in incidence {
            match incident.as_slice() {
                [a] => facets.push(Facet {
                    vertices,
                    simplices: (*a, None),
                }),
                [a, b] => facets.push(Facet {
                    vertices,
                    simplices: (*a, Some(*b)),
                }),
                _ => {
                    return Err(MeshError::NonManifold {
                        vertices,
                        count: incident.len(),
                    })
                }
            }
        }

        let flipped = orient(&mut simplices, &facets, &simplex_facets, options)?;
        // Facet order inside each simplex follows its (possibly flipped) vertex order.
        for (s, simplex) in simplices.iter().enumerate() {
            simplex_facets[s] = facet_keys(simplex).map(|k| lookup[&k]).collect();
        }

        let mut vertex_simplices = vec![Vec::new(); count];
        for (s, simplex) in simplices.iter().enumerate() {
            for &v in simplex {
                vertex_simplices[v].push(s);
            }
        }
        let mut vertex_facets = vec![Vec::new(); count];
        let mut boundary_vertex = vec![false; count];
        for (f, facet) in facets.iter().enumerate() {
            for &v in &facet.vertices {
                vertex_facets[v].push(f);
                if facet.is_boundary() {
                    boundary_vertex[v] = true;
                }
            }
        }

        Ok(Self {
            dim,
            points,
            simplices,
            facets,
            simplex_facets,
            vertex_simplices,
            vertex_facets,
            boundary_vertex,
            flipped,
        })
    }

    /// Manifold dimension `n`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim + 1
    }

    pub fn vertex_count(&self) -> usize {
        self.points.len()
    }

    pub fn simplex_count(&self) -> usize {
        self.simplices.len()
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    /// Vertex position; curves have `z == 0`.
    pub fn point(&self, v: usize) -> Vector3<f64> {
        self.points[v]
    }

    pub fn points(&self) -> &[Vector3<f64>] {
        &self.points
    }

    pub fn simplex(&self, s: usize) -> &[usize] {
        &self.simplices[s]
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    /// Oriented triangle `s`. Panics on curves.
    pub fn triangle(&self, s: usize) -> [usize; 3] {
        let t = &self.simplices[s];
        [t[0], t[1], t[2]]
    }

    pub fn facet(&self, f: usize) -> &Facet {
        &self.facets[f]
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn simplex_facets(&self, s: usize) -> &[usize] {
        &self.simplex_facets[s]
    }

    pub fn vertex_simplices(&self, v: usize) -> &[usize] {
        &self.vertex_simplices[v]
    }

    pub fn vertex_facets(&self, v: usize) -> &[usize] {
        &self.vertex_facets[v]
    }

    /// Vertices touching a boundary facet. Isolated vertices count as boundary.
    pub fn is_boundary_vertex(&self, v: usize) -> bool {
        self.boundary_vertex[v] || self.vertex_simplices[v].is_empty()
    }

    pub fn boundary_facet_count(&self) -> usize {
        self.facets.iter().filter(|f| f.is_boundary()).count()
    }

    pub fn is_closed(&self) -> bool {
        self.facets.iter().all(|f| !f.is_boundary())
    }

    /// Number of simplices flipped by orientation repair during construction.
    pub fn repaired_orientations(&self) -> usize {
        self.flipped
    }

    /// Facet id of the given sorted vertex set, if present.
    pub fn find_facet(&self, vertices: &[usize]) -> Option<usize> {
        let mut key = vertices.to_vec();
        key.sort_unstable();
        let first = *key.first()?;
        self.vertex_facets[first]
            .iter()
            .copied()
            .find(|&f| self.facets[f].vertices == key)
    }

    /// Length of the edge or segment between two vertices.
    pub fn distance(&self, a: usize, b: usize) -> f64 {
        (self.points[b] - self.points[a]).norm()
    }

    /// n-volume of a top simplex.
    pub fn simplex_volume(&self, s: usize) -> f64 {
        simplex_volume(&self.points, &self.simplices[s]).0
    }

    /// Total n-volume of the mesh.
    pub fn total_volume(&self) -> f64 {
        (0..self.simplex_count()).map(|s| self.simplex_volume(s)).sum()
    }

    /// (n-1)-volume of a facet: edge length for surfaces, 1 for point facets.
    pub fn facet_measure(&self, f: usize) -> f64 {
        match self.facets[f].vertices.as_slice() {
            [a, b] => self.distance(*a, *b),
            _ => 1.0,
        }
    }

    /// Euler characteristic V - E + F (surfaces) or V - E (curves).
    pub fn euler_characteristic(&self) -> i64 {
        let used = self
            .vertex_simplices
            .iter()
            .filter(|s| !s.is_empty())
            .count() as i64;
        match self.dim {
            1 => used - self.simplices.len() as i64,
            _ => used - self.facets.len() as i64 + self.simplices.len() as i64,
        }
    }

    /// Unit normal of a top simplex from its orientation: the right-hand rule
    /// for triangles, `(dy, -dx)` for a segment with direction `(dx, dy)`.
    pub fn simplex_normal(&self, s: usize) -> Vector3<f64> {
        let simplex = &self.simplices[s];
        match self.dim {
            1 => {
                let d = self.points[simplex[1]] - self.points[simplex[0]];
                Vector3::new(d.y, -d.x, 0.0).normalize()
            }
            _ => {
                let [a, b, c] = self.triangle(s);
                let p = &self.points;
                (p[b] - p[a]).cross(&(p[c] - p[a])).normalize()
            }
        }
    }

    /// Isometric image of triangle `s` in its intrinsic frame: the first
    /// vertex at the origin, the second on the positive x axis and the third
    /// in the upper half plane, so the orientation is counter-clockwise.
    pub fn intrinsic_triangle(&self, s: usize) -> [Point2<f64>; 3] {
        let [a, b, c] = self.triangle(s);
        let p = &self.points;
        let e0 = p[b] - p[a];
        let e1 = p[c] - p[a];
        let len = e0.norm();
        let x = e0.dot(&e1) / len;
        let y = e0.cross(&e1).norm() / len;
        [Point2::origin(), Point2::new(len, 0.0), Point2::new(x, y)]
    }

    /// Interior angle of triangle `s` at its local corner `corner`.
    pub fn corner_angle(&self, s: usize, corner: usize) -> f64 {
        let t = self.triangle(s);
        let p = &self.points;
        let o = p[t[corner]];
        let u = p[t[(corner + 1) % 3]] - o;
        let w = p[t[(corner + 2) % 3]] - o;
        u.cross(&w).norm().atan2(u.dot(&w))
    }

    /// Simplices whose closure contains the given simplex.
    pub fn star(&self, center: SimplexRef) -> Result<StarQueryResult, MeshError> {
        let unknown = MeshError::UnknownSimplex {
            dim: center.dim,
            index: center.index,
        };
        let mut members = vec![Vec::new(); self.dim + 1];
        match (self.dim, center.dim) {
            (_, 0) => {
                if center.index >= self.vertex_count() {
                    return Err(unknown);
                }
                members[self.dim] = self.vertex_simplices[center.index].clone();
                if self.dim == 2 {
                    members[1] = self.vertex_facets[center.index].clone();
                }
            }
            (2, 1) => {
                let facet = self.facets.get(center.index).ok_or(unknown)?;
                members[2].push(facet.simplices.0);
                members[2].extend(facet.simplices.1);
            }
            (n, d) if n == d => {
                if center.index >= self.simplex_count() {
                    return Err(unknown);
                }
            }
            _ => return Err(unknown),
        }
        for m in &mut members {
            m.sort_unstable();
        }
        Ok(StarQueryResult { center, members })
    }

    /// The top simplices around an interior vertex of a surface in cyclic
    /// (counter-clockwise) order, starting at `start`.
    pub fn triangle_fan(&self, v: usize, start: usize) -> Vec<usize> {
        let mut fan = vec![start];
        let mut current = start;
        loop {
            let t = self.triangle(current);
            let corner = t.iter().position(|&x| x == v).expect("vertex in triangle");
            // The edge (v, previous vertex) continues counter-clockwise around v.
            let edge = self.simplex_facets[current][(corner + 2) % 3];
            match self.facets[edge].other(current) {
                Some(next) if next != start => {
                    fan.push(next);
                    current = next;
                }
                _ => break,
            }
        }
        fan
    }

    /// A copy with every simplex orientation reversed.
    pub fn reversed(&self) -> Self {
        let simplices = self
            .simplices
            .iter()
            .map(|s| {
                let mut s = s.clone();
                let last = s.len() - 1;
                s.swap(0, last);
                s
            })
            .collect();
        Self::assemble(
            self.dim,
            self.points.clone(),
            simplices,
            BuildOptions {
                repair_orientation: false,
            },
        )
        .expect("reversing a valid mesh keeps it valid")
    }

    /// A copy with the vertex positions replaced.
    pub fn with_points(&self, points: Vec<Vector3<f64>>) -> Result<Self, MeshError> {
        assert_eq!(points.len(), self.points.len());
        Self::assemble(
            self.dim,
            points,
            self.simplices.clone(),
            BuildOptions {
                repair_orientation: false,
            },
        )
    }
}

fn facet_keys(simplex: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let n = simplex.len();
    (0..n).map(move |i| {
        if n == 2 {
            vec![simplex[i]]
        } else {
            let (a, b) = (simplex[i], simplex[(i + 1) % n]);
            vec![a.min(b), a.max(b)]
        }
    })
}

/// Orientation a simplex induces on one of its facets: `+1` or `-1`.
fn induced_sign(simplex: &[usize], facet: &[usize]) -> i8 {
    match (simplex, facet) {
        ([_, end], [v]) => {
            if v == end {
                1
            } else {
                -1
            }
        }
        (tri, [a, b]) => {
            let i = tri.iter().position(|x| x == a).expect("facet vertex");
            if tri[(i + 1) % 3] == *b {
                1
            } else {
                -1
            }
        }
        _ => unreachable!("facet arity"),
    }
}

fn flip(simplex: &mut [usize]) {
    let last = simplex.len() - 1;
    simplex.swap(0, last);
}

fn orient(
    simplices: &mut [Vec<usize>],
    facets: &[Facet],
    simplex_facets: &[Vec<usize>],
    options: BuildOptions,
) -> Result<usize, MeshError> {
    let mut visited = vec![false; simplices.len()];
    let mut flipped = 0;
    let mut queue = VecDeque::new();
    for seed in 0..simplices.len() {
        if visited[seed] {
            continue;
        }
        visited[seed] = true;
        queue.push_back(seed);
        while let Some(s) = queue.pop_front() {
            for &f in &simplex_facets[s] {
                let Some(t) = facets[f].other(s) else {
                    continue;
                };
                let key = &facets[f].vertices;
                let consistent =
                    induced_sign(&simplices[s], key) == -induced_sign(&simplices[t], key);
                if visited[t] {
                    if !consistent {
                        return Err(if options.repair_orientation {
                            MeshError::Unorientable { simplex: t }
                        } else {
                            MeshError::InconsistentOrientation { first: s, second: t }
                        });
                    }
                    continue;
                }
                if !consistent {
                    if !options.repair_orientation {
                        return Err(MeshError::InconsistentOrientation { first: s, second: t });
                    }
                    flip(&mut simplices[t]);
                    flipped += 1;
                }
                visited[t] = true;
                queue.push_back(t);
            }
        }
    }
    Ok(flipped)
}

/// n-volume and longest edge of a simplex.
fn simplex_volume(points: &[Vector3<f64>], simplex: &[usize]) -> (f64, f64) {
    match simplex {
        [a, b] => {
            let l = (points[*b] - points[*a]).norm();
            (l, l)
        }
        [a, b, c] => {
            let (pa, pb, pc) = (points[*a], points[*b], points[*c]);
            let area = 0.5 * (pb - pa).cross(&(pc - pa)).norm();
            let longest = (pb - pa)
                .norm()
                .max((pc - pb).norm())
                .max((pa - pc).norm());
            (area, longest)
        }
        _ => (0.0, 0.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triangles() -> SimplicialMesh {
        SimplicialMesh::from_surface(
            &[[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.5, 1.0, 0.0], [0.5, -1.0, 0.0]],
            &[[0, 1, 2], [1, 0, 3]],
        )
        .unwrap()
    }

    #[test]
    fn two_triangles_have_one_hinge() {
        let mesh = two_triangles();
        assert_eq!(mesh.dim(), 2);
        assert_eq!(mesh.facet_count(), 5);
        assert_eq!(mesh.boundary_facet_count(), 4);
        let interior: Vec<_> = mesh.facets().iter().filter(|f| !f.is_boundary()).collect();
        assert_eq!(interior.len(), 1);
        assert_eq!(interior[0].vertices, vec![0, 1]);
    }

    #[test]
    fn closed_square_polyline() {
        let mesh = SimplicialMesh::from_curve(
            &[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]],
            &[[0, 1], [1, 2], [2, 3], [3, 0]],
        )
        .unwrap();
        assert_eq!(mesh.dim(), 1);
        assert_eq!(mesh.facet_count(), 4);
        assert!(mesh.is_closed());
        assert_eq!(mesh.euler_characteristic(), 0);
    }

    #[test]
    fn three_triangles_on_one_edge_is_non_manifold() {
        let err = SimplicialMesh::from_surface(
            &[
                [0.0, 0.0, 0.0],
                [1.0, 0.0, 0.0],
                [0.5, 1.0, 0.0],
                [0.5, -1.0, 0.0],
                [0.5, 0.0, 1.0],
            ],
            &[[0, 1, 2], [1, 0, 3], [0, 1, 4]],
        )
        .unwrap_err();
        assert!(matches!(err, MeshError::NonManifold { count: 3, .. }));
    }

    #[test]
    fn rejects_bad_indices_and_degenerate_simplices() {
        let pts = [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [2.0, 0.0, 0.0]];
        assert!(matches!(
            SimplicialMesh::from_surface(&pts, &[[0, 1, 5]]),
            Err(MeshError::IndexOutOfRange { index: 5, .. })
        ));
        assert!(matches!(
            SimplicialMesh::from_surface(&pts, &[[0, 1, 1]]),
            Err(MeshError::RepeatedVertex { .. })
        ));
        assert!(matches!(
            SimplicialMesh::from_surface(&pts, &[[0, 1, 2]]),
            Err(MeshError::DegenerateSimplex { .. })
        ));
    }

    #[test]
    fn orientation_is_repaired_from_simplex_zero() {
        let pts = [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.5, 1.0, 0.0], [0.5, -1.0, 0.0]];
        let mesh = SimplicialMesh::from_surface(&pts, &[[0, 1, 2], [0, 1, 3]]).unwrap();
        assert_eq!(mesh.repaired_orientations(), 1);
        assert_eq!(mesh.simplex(0), &[0, 1, 2]);
        let n0 = mesh.simplex_normal(0);
        let n1 = mesh.simplex_normal(1);
        assert!((n0 - n1).norm() < 1e-15);

        let strict = SimplicialMesh::with_options(
            pts.iter().map(|p| p.to_vec()).collect(),
            vec![vec![0, 1, 2], vec![0, 1, 3]],
            BuildOptions {
                repair_orientation: false,
            },
        );
        assert!(matches!(strict, Err(MeshError::InconsistentOrientation { .. })));
    }

    #[test]
    fn mobius_strip_is_unorientable() {
        // Five-triangle Möbius band.
        let mut pts = Vec::new();
        for i in 0..5 {
            let a = std::f64::consts::TAU * i as f64 / 5.0;
            let h = if i % 2 == 0 { 0.3 } else { -0.3 };
            pts.push([a.cos() * (1.0 + 0.1 * i as f64), a.sin(), h]);
        }
        let tris = [[0, 1, 2], [1, 2, 3], [2, 3, 4], [3, 4, 0], [4, 0, 1]];
        let err = SimplicialMesh::from_surface(&pts, &tris).unwrap_err();
        assert!(matches!(err, MeshError::Unorientable { .. }));
    }

    #[test]
    fn adjacency_is_symmetric() {
        let mesh = two_triangles();
        for (s, facets) in (0..mesh.simplex_count()).map(|s| (s, mesh.simplex_facets(s))) {
            for &f in facets {
                if let Some(t) = mesh.facet(f).other(s) {
                    assert!(mesh.simplex_facets(t).contains(&f));
                    assert_eq!(mesh.facet(f).other(t), Some(s));
                }
            }
        }
    }

    #[test]
    fn star_of_polyline_vertex() {
        let mesh = SimplicialMesh::from_curve(
            &[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]],
            &[[0, 1], [1, 2]],
        )
        .unwrap();
        let star = mesh.star(SimplexRef::vertex(1)).unwrap();
        assert_eq!(star.of_dim(1), &[0, 1]);
        assert!(mesh.star(SimplexRef::vertex(9)).is_err());
        assert!(mesh.star(SimplexRef { dim: 3, index: 0 }).is_err());
    }

    #[test]
    fn intrinsic_frame_is_isometric() {
        let mesh = SimplicialMesh::from_surface(
            &[[0.3, 0.1, 2.0], [1.2, -0.4, 2.5], [0.1, 1.0, 1.7]],
            &[[0, 1, 2]],
        )
        .unwrap();
        let q = mesh.intrinsic_triangle(0);
        let t = mesh.triangle(0);
        for i in 0..3 {
            let j = (i + 1) % 3;
            assert!(((q[j] - q[i]).norm() - mesh.distance(t[i], t[j])).abs() < 1e-14);
        }
        assert!(q[2].y > 0.0);
    }
}
