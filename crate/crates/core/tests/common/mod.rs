#![allow(dead_code)]

use hingecurv::{fixtures, SimplicialMesh};
use nalgebra::{Quaternion, UnitQuaternion, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seed for randomized checks, overridable with `HINGECURV_SEED`.
pub fn seed() -> u64 {
    std::env::var("HINGECURV_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0x5eed_c0de)
}

pub fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed() ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// A subdivided icosphere with every vertex pushed radially by up to
/// `amplitude` of the radius.
pub fn bumpy_sphere(rng: &mut impl Rng, subdivisions: usize, amplitude: f64) -> SimplicialMesh {
    let mesh = fixtures::gen_icosphere(1.0, subdivisions).unwrap();
    let points = mesh
        .points()
        .iter()
        .map(|p| p * (1.0 + amplitude * rng.gen_range(-1.0..1.0)))
        .collect();
    mesh.with_points(points).unwrap()
}

pub fn random_rotation(rng: &mut impl Rng) -> UnitQuaternion<f64> {
    loop {
        let q = Quaternion::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        if q.norm() > 0.1 {
            return UnitQuaternion::from_quaternion(q);
        }
    }
}

pub fn transformed(
    mesh: &SimplicialMesh,
    rotation: &UnitQuaternion<f64>,
    scale: f64,
    translation: &Vector3<f64>,
) -> SimplicialMesh {
    let points = mesh
        .points()
        .iter()
        .map(|p| rotation * (p * scale) + translation)
        .collect();
    mesh.with_points(points).unwrap()
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()) || (a - b).abs() <= 1e-13
}
