//! Hinge regions: the part of the two endpoint cells swept by the geodesics
//! orthogonal to a hinge.
//!
//! The stars of both endpoints are developed isometrically into the plane of
//! the hinge, with the hinge running from the origin along the positive x
//! axis. The two triangles at the hinge are laid flat first; the rest of
//! each star is unrolled outward from them by rotations about shared edges,
//! always extending whichever side has covered the smaller angle so the cut
//! ends up opposite the hinge. Orthogonal geodesics then become the lines
//! `x = const` with `0 <= x <= |h|`. Hinges lying along the far side
//! `x = |h|` belong to the neighbouring region and are not listed.

use std::f64::consts::FRAC_PI_2;

use nalgebra::{Point2, Vector2};
use serde::{Deserialize, Serialize};

use crate::dual::DualTessellation;
use crate::error::CurvatureError;
use crate::hinge::Hinges;
use crate::mesh::SimplicialMesh;
use crate::polygon::{self, HalfPlane, Placement, Polygon};

/// Covered angles this far below a right angle still count as covering
/// the strip.
const COVER_TOLERANCE: f64 = 1e-12;

/// Another hinge crossing the region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionEntry {
    pub facet: usize,
    /// |h_i ∩ V_h|.
    pub overlap: f64,
    /// Angle between the strip direction and the normal of `facet`, in `[0, π/2]`.
    pub theta: f64,
    pub angle: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HingeRegion {
    pub facet: usize,
    pub vertices: [usize; 2],
    /// |h|.
    pub hinge_measure: f64,
    pub hinge_angle: f64,
    /// |V_h|.
    pub area: f64,
    pub entries: Vec<RegionEntry>,
    /// Clipped cell pieces in the unfolded plane.
    pub pieces: Vec<Polygon>,
    /// Angles covered on either side of the hinge at each endpoint.
    pub covered: [(f64, f64); 2],
}

impl HingeRegion {
    /// `|h| ε_h + Σ |h_i ∩ V_h| cos²θ_i ε_i`, the curvature integral over the region.
    pub fn integral(&self) -> f64 {
        self.hinge_measure * self.hinge_angle
            + self
                .entries
                .iter()
                .map(|e| e.overlap * e.theta.cos().powi(2) * e.angle)
                .sum::<f64>()
    }

    /// Average curvature orthogonal to the hinge.
    pub fn alpha(&self) -> f64 {
        self.integral() / self.area
    }
}

/// A triangle of an unrolled star and where it landed.
struct Unrolled {
    triangle: usize,
    placement: Placement,
}

pub fn build_hinge_region(
    mesh: &SimplicialMesh,
    hinges: &Hinges,
    dual: &DualTessellation,
    facet: usize,
) -> Result<HingeRegion, CurvatureError> {
    if mesh.dim() != 2 {
        return Err(CurvatureError::WrongDimension {
            expected: 2,
            found: mesh.dim(),
        });
    }
    let f = mesh
        .facets()
        .get(facet)
        .ok_or(CurvatureError::UnknownHinge { facet })?;
    let hinge = hinges
        .get(facet)
        .ok_or(CurvatureError::BoundaryHinge { facet })?;
    let (v1, v2) = (f.vertices[0], f.vertices[1]);
    for v in [v1, v2] {
        if mesh.is_boundary_vertex(v) {
            return Err(CurvatureError::BoundaryVertex { vertex: v });
        }
    }
    let (a, b) = hinge.simplices;
    let (upper, lower) = if contains_directed(mesh.triangle(a), v1, v2) {
        (a, b)
    } else {
        (b, a)
    };

    let length = hinge.measure;
    let origin = Point2::origin();
    let end = Point2::new(length, 0.0);
    let lay_flat = |t: usize| {
        let q = mesh.intrinsic_triangle(t);
        let tri = mesh.triangle(t);
        let i1 = local(tri, v1);
        let i2 = local(tri, v2);
        Placement::align(q[i1], q[i2], origin, end)
    };
    let upper_place = lay_flat(upper);
    let lower_place = lay_flat(lower);

    // `upper` holds v1 -> v2, so it comes first counter-clockwise around v1;
    // `lower` holds v2 -> v1 and comes first around v2.
    let (star1, cover1) = unroll(mesh, facet, v1, (upper, upper_place), (lower, lower_place))?;
    let (star2, cover2) = unroll(mesh, facet, v2, (lower, lower_place), (upper, upper_place))?;

    let strip = [
        HalfPlane::new(Vector2::new(-1.0, 0.0), 0.0),
        HalfPlane::new(Vector2::new(1.0, 0.0), length),
    ];

    let mut pieces = Vec::new();
    let mut area = 0.0;
    for (v, star) in [(v1, &star1), (v2, &star2)] {
        for u in star {
            let corner = local(mesh.triangle(u.triangle), v);
            let mapped: Polygon = dual
                .piece(u.triangle, corner)
                .iter()
                .map(|p| u.placement.apply(p))
                .collect();
            let clipped = polygon::clip_all(&mapped, &strip);
            let a = polygon::area(&clipped);
            if a > 0.0 {
                area += a;
                pieces.push(clipped);
            }
        }
    }

    let mut entries: Vec<RegionEntry> = Vec::new();
    let scale = length.max(f64::MIN_POSITIVE);
    for (v, star, cover) in [(v1, &star1, cover1), (v2, &star2, cover2)] {
        // Each spoke of v is seen from the two triangles on either side of
        // it. Both placements coincide except for the spoke along the cut,
        // which must then stay outside the strip.
        let mut seen: Vec<(usize, Point2<f64>, f64, Vector2<f64>)> = Vec::new();
        for u in star {
            let tri = mesh.triangle(u.triangle);
            let q = mesh.intrinsic_triangle(u.triangle);
            let corner = local(tri, v);
            let at = u.placement.apply(&q[corner]);
            for other in [(corner + 1) % 3, (corner + 2) % 3] {
                let spoke = mesh
                    .find_facet(&[v, tri[other]])
                    .expect("triangle edge is a facet");
                if spoke == facet {
                    continue;
                }
                let far = u.placement.apply(&q[other]);
                let mid = nalgebra::center(&at, &far);
                let on_far_side = (at.x - length).abs() <= 1e-12 * scale
                    && (mid.x - length).abs() <= 1e-12 * scale;
                let overlap = match polygon::clip_segment(at, mid, &strip) {
                    Some((t0, t1)) if !on_far_side => (t1 - t0).max(0.0) * (mid - at).norm(),
                    _ => 0.0,
                };
                match seen.iter_mut().find(|(s, ..)| *s == spoke) {
                    Some((_, previous_far, previous, _)) => {
                        let cut = (far - *previous_far).norm() > 1e-9 * scale;
                        if cut && previous.max(overlap) > 1e-12 * scale {
                            return Err(CurvatureError::UnfoldingCutCrossed {
                                facet,
                                vertex: v,
                                ccw: cover.0,
                                cw: cover.1,
                            });
                        }
                        *previous = previous.max(overlap);
                    }
                    None => seen.push((spoke, far, overlap, mid - at)),
                }
            }
        }
        for (spoke, _, overlap, d) in seen {
            if overlap <= 1e-12 * scale {
                continue;
            }
            let theta = d.y.abs().atan2(d.x.abs());
            let angle = hinges
                .angle(spoke)
                .ok_or(CurvatureError::BoundaryHinge { facet: spoke })?;
            entries.push(RegionEntry {
                facet: spoke,
                overlap,
                theta,
                angle,
            });
        }
    }
    entries.sort_by_key(|e| e.facet);

    Ok(HingeRegion {
        facet,
        vertices: [v1, v2],
        hinge_measure: length,
        hinge_angle: hinge.angle,
        area,
        entries,
        pieces,
        covered: [cover1, cover2],
    })
}

/// Average curvature orthogonal to a hinge. Point hinges of curves return the
/// mean curvature of their vertex.
pub fn alpha_hinge(
    mesh: &SimplicialMesh,
    hinges: &Hinges,
    dual: &DualTessellation,
    facet: usize,
) -> Result<f64, CurvatureError> {
    if mesh.dim() == 1 {
        let f = mesh
            .facets()
            .get(facet)
            .ok_or(CurvatureError::UnknownHinge { facet })?;
        if hinges.get(facet).is_none() {
            return Err(CurvatureError::BoundaryHinge { facet });
        }
        return super::mean_curvature(mesh, hinges, dual, f.vertices[0]);
    }
    Ok(build_hinge_region(mesh, hinges, dual, facet)?.alpha())
}

fn local(tri: [usize; 3], v: usize) -> usize {
    tri.iter().position(|&x| x == v).expect("vertex in triangle")
}

fn contains_directed(tri: [usize; 3], from: usize, to: usize) -> bool {
    (0..3).any(|i| tri[i] == from && tri[(i + 1) % 3] == to)
}

/// Unrolls the star of `v` starting from the two already placed triangles at
/// the hinge. `first` follows the hinge counter-clockwise around `v`, `last`
/// precedes it. Returns the placed triangles and the angles covered on the
/// counter-clockwise and clockwise sides.
fn unroll(
    mesh: &SimplicialMesh,
    facet: usize,
    v: usize,
    first: (usize, Placement),
    last: (usize, Placement),
) -> Result<(Vec<Unrolled>, (f64, f64)), CurvatureError> {
    let fan = mesh.triangle_fan(v, first.0);
    debug_assert_eq!(fan.last(), Some(&last.0));
    let m = fan.len();
    let angle_at = |t: usize| mesh.corner_angle(t, local(mesh.triangle(t), v));

    let mut placed: Vec<Option<Placement>> = vec![None; m];
    placed[0] = Some(first.1);
    placed[m - 1] = Some(last.1);
    let mut ccw = angle_at(fan[0]);
    let mut cw = angle_at(fan[m - 1]);
    let (mut i, mut j) = (0, m - 1);
    while i + 1 < j {
        if ccw <= cw {
            i += 1;
            placed[i] = Some(attach(mesh, v, fan[i], fan[i - 1], placed[i - 1].unwrap()));
            ccw += angle_at(fan[i]);
        } else {
            j -= 1;
            placed[j] = Some(attach(mesh, v, fan[j], fan[j + 1], placed[j + 1].unwrap()));
            cw += angle_at(fan[j]);
        }
    }
    if ccw < FRAC_PI_2 - COVER_TOLERANCE || cw < FRAC_PI_2 - COVER_TOLERANCE {
        return Err(CurvatureError::UnfoldingCutCrossed {
            facet,
            vertex: v,
            ccw,
            cw,
        });
    }
    let star = fan
        .into_iter()
        .zip(placed)
        .map(|(triangle, placement)| Unrolled {
            triangle,
            placement: placement.expect("every star triangle placed"),
        })
        .collect();
    Ok((star, (ccw, cw)))
}

/// Places `triangle` across the edge it shares with the placed `neighbor`
/// (the edge through `v`).
fn attach(
    mesh: &SimplicialMesh,
    v: usize,
    triangle: usize,
    neighbor: usize,
    neighbor_place: Placement,
) -> Placement {
    let tri = mesh.triangle(triangle);
    let ntri = mesh.triangle(neighbor);
    let w = *tri
        .iter()
        .find(|&&x| x != v && ntri.contains(&x))
        .expect("adjacent fan triangles share an edge through v");
    let nq = mesh.intrinsic_triangle(neighbor);
    let pv = neighbor_place.apply(&nq[local(ntri, v)]);
    let pw = neighbor_place.apply(&nq[local(ntri, w)]);
    let q = mesh.intrinsic_triangle(triangle);
    Placement::align(q[local(tri, v)], q[local(tri, w)], pv, pw)
}
