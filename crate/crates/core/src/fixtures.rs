//! Benchmark triangulations with known curvature: a regular polygon
//! approximating a circle, an area-matched icosphere and a triangulated
//! open cylinder.

use std::collections::HashMap;
use std::f64::consts::{PI, TAU};
use std::fmt;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::FixtureError;
use crate::mesh::SimplicialMesh;

/// How the cylinder's cross-section polygon relates to the radius `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CrossSection {
    /// Ring edges have the arc length `2πr/k` of the smooth circle.
    #[default]
    Arclength,
    /// Ring vertices lie on the circle of radius `r`.
    Inscribed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FixtureSpec {
    CirclePolygon {
        k: usize,
        r: f64,
    },
    Icosphere {
        r: f64,
        subdivisions: usize,
    },
    Cylinder {
        k: usize,
        r: f64,
        p: f64,
        rings: usize,
        cross_section: CrossSection,
    },
}

impl FixtureSpec {
    pub fn validate(&self) -> Result<(), FixtureError> {
        match *self {
            FixtureSpec::CirclePolygon { k, r } => {
                sides(k)?;
                positive("r", r)
            }
            FixtureSpec::Icosphere { r, .. } => positive("r", r),
            FixtureSpec::Cylinder { k, r, p, rings, .. } => {
                sides(k)?;
                positive("r", r)?;
                positive("p", p)?;
                if rings < 2 {
                    return Err(FixtureError::TooFewRings(rings));
                }
                Ok(())
            }
        }
    }

    pub fn build(&self) -> Result<SimplicialMesh, FixtureError> {
        match *self {
            FixtureSpec::CirclePolygon { k, r } => gen_circle(k, r),
            FixtureSpec::Icosphere { r, subdivisions } => gen_icosphere(r, subdivisions),
            FixtureSpec::Cylinder {
                k,
                r,
                p,
                rings,
                cross_section,
            } => gen_cylinder(k, r, p, rings, cross_section),
        }
    }

    pub fn radius(&self) -> f64 {
        match *self {
            FixtureSpec::CirclePolygon { r, .. }
            | FixtureSpec::Icosphere { r, .. }
            | FixtureSpec::Cylinder { r, .. } => r,
        }
    }
}

impl fmt::Display for FixtureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureSpec::CirclePolygon { k, r } => write!(f, "circle(k={k}, r={r})"),
            FixtureSpec::Icosphere { r, subdivisions } => {
                write!(f, "icosphere(r={r}, sub={subdivisions})")
            }
            FixtureSpec::Cylinder {
                k, r, p, rings, ..
            } => write!(f, "cylinder(k={k}, r={r}, p={p}, rings={rings})"),
        }
    }
}

fn sides(k: usize) -> Result<(), FixtureError> {
    if k < 3 {
        Err(FixtureError::TooFewSides(k))
    } else {
        Ok(())
    }
}

fn positive(name: &'static str, value: f64) -> Result<(), FixtureError> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(FixtureError::NonPositive { name, value })
    }
}

/// Regular counter-clockwise k-gon with perimeter `2πr`.
pub fn gen_circle(k: usize, r: f64) -> Result<SimplicialMesh, FixtureError> {
    sides(k)?;
    positive("r", r)?;
    let edge = TAU * r / k as f64;
    let circumradius = edge / (2.0 * (PI / k as f64).sin());
    let points: Vec<[f64; 2]> = (0..k)
        .map(|i| {
            let a = TAU * i as f64 / k as f64;
            [circumradius * a.cos(), circumradius * a.sin()]
        })
        .collect();
    let segments: Vec<[usize; 2]> = (0..k).map(|i| [i, (i + 1) % k]).collect();
    Ok(SimplicialMesh::from_curve(&points, &segments).expect("regular polygon is valid"))
}

/// Icosahedron, optionally midpoint-subdivided with vertices pushed onto the
/// sphere, rescaled so that the total area is `4πr²`. Outward oriented.
pub fn gen_icosphere(r: f64, subdivisions: usize) -> Result<SimplicialMesh, FixtureError> {
    positive("r", r)?;
    let (mut points, mut triangles) = icosahedron();
    for _ in 0..subdivisions {
        let mut midpoints: HashMap<(usize, usize), usize> = HashMap::new();
        let mut next = Vec::with_capacity(triangles.len() * 4);
        let mut midpoint = |a: usize, b: usize, points: &mut Vec<Vector3<f64>>| {
            *midpoints.entry((a.min(b), a.max(b))).or_insert_with(|| {
                points.push(((points[a] + points[b]) * 0.5).normalize());
                points.len() - 1
            })
        };
        for [a, b, c] in triangles {
            let ab = midpoint(a, b, &mut points);
            let bc = midpoint(b, c, &mut points);
            let ca = midpoint(c, a, &mut points);
            next.extend([[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]);
        }
        triangles = next;
    }
    let area: f64 = triangles
        .iter()
        .map(|&[a, b, c]| 0.5 * (points[b] - points[a]).cross(&(points[c] - points[a])).norm())
        .sum();
    let scale = (4.0 * PI * r * r / area).sqrt();
    let coords: Vec<[f64; 3]> = points
        .iter()
        .map(|p| {
            let q = p * scale;
            [q.x, q.y, q.z]
        })
        .collect();
    Ok(SimplicialMesh::from_surface(&coords, &triangles).expect("icosphere is valid"))
}

/// Unit-circumradius icosahedron with outward-oriented faces.
fn icosahedron() -> (Vec<Vector3<f64>>, Vec<[usize; 3]>) {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut points = Vec::with_capacity(12);
    for &s in &[-1.0, 1.0] {
        for &t in &[-phi, phi] {
            points.push(Vector3::new(0.0, s, t));
            points.push(Vector3::new(s, t, 0.0));
            points.push(Vector3::new(t, 0.0, s));
        }
    }
    for p in &mut points {
        *p = p.normalize();
    }
    // Faces are the triples of mutually adjacent vertices.
    let edge = points[1..]
        .iter()
        .map(|q| (q - points[0]).norm())
        .fold(f64::INFINITY, f64::min);
    let adjacent = |a: usize, b: usize| ((points[a] - points[b]).norm() - edge).abs() < 1e-9;
    let mut triangles = Vec::with_capacity(20);
    for a in 0..12 {
        for b in a + 1..12 {
            for c in b + 1..12 {
                if adjacent(a, b) && adjacent(b, c) && adjacent(a, c) {
                    let n = (points[b] - points[a]).cross(&(points[c] - points[a]));
                    if n.dot(&(points[a] + points[b] + points[c])) > 0.0 {
                        triangles.push([a, b, c]);
                    } else {
                        triangles.push([a, c, b]);
                    }
                }
            }
        }
    }
    debug_assert_eq!(triangles.len(), 20);
    (points, triangles)
}

/// Open cylinder along the z axis: `rings` k-gon cross-sections spaced `p`
/// apart, each rectangle split by a diagonal running in the same direction.
/// Outward oriented.
pub fn gen_cylinder(
    k: usize,
    r: f64,
    p: f64,
    rings: usize,
    cross_section: CrossSection,
) -> Result<SimplicialMesh, FixtureError> {
    FixtureSpec::Cylinder {
        k,
        r,
        p,
        rings,
        cross_section,
    }
    .validate()?;
    let radius = match cross_section {
        CrossSection::Arclength => TAU * r / k as f64 / (2.0 * (PI / k as f64).sin()),
        CrossSection::Inscribed => r,
    };
    let index = |i: usize, j: usize| j * k + i % k;
    let mut points = Vec::with_capacity(k * rings);
    for j in 0..rings {
        for i in 0..k {
            let a = TAU * i as f64 / k as f64;
            points.push([radius * a.cos(), radius * a.sin(), j as f64 * p]);
        }
    }
    let mut triangles = Vec::with_capacity(2 * k * (rings - 1));
    for j in 0..rings - 1 {
        for i in 0..k {
            let a = index(i, j);
            let b = index(i + 1, j);
            let c = index(i + 1, j + 1);
            let d = index(i, j + 1);
            triangles.push([a, b, c]);
            triangles.push([a, c, d]);
        }
    }
    Ok(SimplicialMesh::from_surface(&points, &triangles).expect("cylinder is valid"))
}

/// Flat `nx` by `ny` grid of squares in the z = 0 plane, each split along a
/// diagonal whose direction alternates in a checkerboard pattern.
pub fn flat_grid(nx: usize, ny: usize, spacing: f64) -> SimplicialMesh {
    let index = |i: usize, j: usize| j * (nx + 1) + i;
    let mut points = Vec::new();
    for j in 0..=ny {
        for i in 0..=nx {
            points.push([i as f64 * spacing, j as f64 * spacing, 0.0]);
        }
    }
    let mut triangles = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            let (a, b, c, d) = (index(i, j), index(i + 1, j), index(i + 1, j + 1), index(i, j + 1));
            if (i + j) % 2 == 0 {
                triangles.extend([[a, b, c], [a, c, d]]);
            } else {
                triangles.extend([[a, b, d], [b, c, d]]);
            }
        }
    }
    SimplicialMesh::from_surface(&points, &triangles).expect("grid is valid")
}
