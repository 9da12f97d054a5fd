//! Small planar polygon toolkit used by the dual cells and the hinge
//! regions: signed area, half-plane clipping and segment clipping.

use nalgebra::{Point2, Vector2};

pub type Polygon = Vec<Point2<f64>>;

/// Signed area (positive for counter-clockwise vertex order).
pub fn signed_area(poly: &[Point2<f64>]) -> f64 {
    let n = poly.len();
    if n < 3 {
        return 0.0;
    }
    let mut twice = 0.0;
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        twice += p.x * q.y - q.x * p.y;
    }
    0.5 * twice
}

pub fn area(poly: &[Point2<f64>]) -> f64 {
    signed_area(poly).abs()
}

/// A closed half-plane `{x : <normal, x> <= offset}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlane {
    pub normal: Vector2<f64>,
    pub offset: f64,
}

impl HalfPlane {
    pub fn new(normal: Vector2<f64>, offset: f64) -> Self {
        Self { normal, offset }
    }

    /// Points at least as close to `a` as to `b`.
    pub fn closer_to(a: Point2<f64>, b: Point2<f64>) -> Self {
        let normal = b - a;
        let mid = nalgebra::center(&a, &b);
        Self::new(normal, normal.dot(&mid.coords))
    }

    /// Signed excess; non-positive inside.
    pub fn excess(&self, p: &Point2<f64>) -> f64 {
        self.normal.dot(&p.coords) - self.offset
    }
}

/// Sutherland–Hodgman clip of `poly` against a half-plane.
pub fn clip(poly: &[Point2<f64>], plane: &HalfPlane) -> Polygon {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        let dp = plane.excess(&p);
        let dq = plane.excess(&q);
        if dp <= 0.0 {
            out.push(p);
        }
        if (dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0) {
            let t = dp / (dp - dq);
            out.push(p + (q - p) * t);
        }
    }
    dedup(out)
}

pub fn clip_all(poly: &[Point2<f64>], planes: &[HalfPlane]) -> Polygon {
    let mut out = poly.to_vec();
    for plane in planes {
        if out.is_empty() {
            break;
        }
        out = clip(&out, plane);
    }
    out
}

/// Intersection of two convex polygons (`convex` must be counter-clockwise).
pub fn intersect_convex(poly: &[Point2<f64>], convex: &[Point2<f64>]) -> Polygon {
    let n = convex.len();
    let planes: Vec<_> = (0..n)
        .map(|i| {
            let a = convex[i];
            let b = convex[(i + 1) % n];
            let e = b - a;
            let normal = Vector2::new(e.y, -e.x);
            HalfPlane::new(normal, normal.dot(&a.coords))
        })
        .collect();
    clip_all(poly, &planes)
}

/// Parameter interval `[t0, t1]` of the segment `a + t (b - a)`, `t` in
/// `[0, 1]`, that lies inside every half-plane.
pub fn clip_segment(a: Point2<f64>, b: Point2<f64>, planes: &[HalfPlane]) -> Option<(f64, f64)> {
    let (mut t0, mut t1) = (0.0_f64, 1.0_f64);
    let d = b - a;
    for plane in planes {
        let start = plane.excess(&a);
        let rate = plane.normal.dot(&d);
        if rate == 0.0 {
            if start > 0.0 {
                return None;
            }
            continue;
        }
        let t = -start / rate;
        if rate > 0.0 {
            t1 = t1.min(t);
        } else {
            t0 = t0.max(t);
        }
        if t0 > t1 {
            return None;
        }
    }
    Some((t0, t1))
}

/// Removes consecutive duplicates (including the wrap-around pair).
fn dedup(mut poly: Polygon) -> Polygon {
    poly.dedup_by(|a, b| (*a - *b).norm_squared() == 0.0);
    while poly.len() > 1 && (poly[0] - poly[poly.len() - 1]).norm_squared() == 0.0 {
        poly.pop();
    }
    poly
}

/// Rigid motion of the plane: `x -> rotation * x + translation`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Placement {
    pub cos: f64,
    pub sin: f64,
    pub translation: Vector2<f64>,
}

impl Placement {
    /// The orientation-preserving motion taking `from_a -> to_a` and the
    /// direction of `from_b - from_a` onto that of `to_b - to_a`.
    pub fn align(
        from_a: Point2<f64>,
        from_b: Point2<f64>,
        to_a: Point2<f64>,
        to_b: Point2<f64>,
    ) -> Self {
        let u = (from_b - from_a).normalize();
        let w = (to_b - to_a).normalize();
        let cos = u.dot(&w);
        let sin = u.x * w.y - u.y * w.x;
        let rotated = Vector2::new(cos * from_a.x - sin * from_a.y, sin * from_a.x + cos * from_a.y);
        Self {
            cos,
            sin,
            translation: to_a.coords - rotated,
        }
    }

    pub fn apply(&self, p: &Point2<f64>) -> Point2<f64> {
        Point2::new(
            self.cos * p.x - self.sin * p.y + self.translation.x,
            self.sin * p.x + self.cos * p.y + self.translation.y,
        )
    }
}
