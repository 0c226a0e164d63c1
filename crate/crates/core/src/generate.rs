//! Seeded random inputs: convex polyhedra, polygons and refined metrics.
//!
//! Every generator takes an explicit seed and uses ChaCha8, so outputs are
//! reproducible across platforms.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::forward::{canonicalize_polyhedron, Polyhedron};
use crate::geom::Vec2;
use crate::mesh::Mesh;
use crate::{ConeMetric, Real, Result};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn unit_vector(rng: &mut impl Rng) -> [f64; 3] {
    loop {
        let p: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        if r > 0.1 && r <= 1.0 {
            return [p[0] / r, p[1] / r, p[2] / r];
        }
    }
}

/// `n` uniform points on the unit sphere; all of them are extreme.
pub fn sphere_points(n: usize, seed: u64) -> Vec<[f64; 3]> {
    let mut r = rng(seed);
    (0..n).map(|_| unit_vector(&mut r)).collect()
}

/// A convex polyhedron with exactly `n` vertices (n >= 4).
pub fn convex_polyhedron(n: usize, seed: u64) -> Result<Polyhedron> {
    canonicalize_polyhedron(&sphere_points(n, seed))
}

/// A random tetrahedron. When `flat` is set its height over the base is
/// at most 1e-3 of its diameter.
pub fn tetrahedron(seed: u64, flat: bool) -> Vec<[f64; 3]> {
    let mut r = rng(seed);
    loop {
        let mut p: Vec<[f64; 3]> = (0..4).map(|_| unit_vector(&mut r)).collect();
        if flat {
            for q in &mut p[..3] {
                q[2] = 0.0;
            }
            p[3][2] = r.gen_range(1e-5..1e-3);
        }
        let e = |a: [f64; 3], b: [f64; 3]| [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
        let (u, v, w) = (e(p[0], p[1]), e(p[0], p[2]), e(p[0], p[3]));
        let vol = u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) + u[2] * (v[0] * w[1] - v[1] * w[0]);
        let base = ((u[0] * v[1] - u[1] * v[0]).powi(2) + (u[1] * v[2] - u[2] * v[1]).powi(2) + (u[0] * v[2] - u[2] * v[0]).powi(2)).sqrt();
        if vol.abs() > 1e-9 && base > 0.2 {
            return p;
        }
    }
}

/// Corners of a convex polygon with `k` vertices, counter-clockwise,
/// inscribed in the unit circle.
pub fn convex_polygon(k: usize, seed: u64) -> Vec<[f64; 2]> {
    let mut r = rng(seed);
    loop {
        let mut a: Vec<f64> = (0..k).map(|_| r.gen_range(0.0..std::f64::consts::TAU)).collect();
        a.sort_by(f64::total_cmp);
        let gaps_ok = (0..k).all(|i| {
            let next = if i + 1 < k { a[i + 1] } else { a[0] + std::f64::consts::TAU };
            next - a[i] > 0.05 && next - a[i] < std::f64::consts::PI - 0.05
        });
        if gaps_ok {
            return a.iter().map(|t| [t.cos(), t.sin()]).collect();
        }
    }
}

/// A uniformly random permutation of `0..n`.
pub fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut rng(seed));
    p
}

/// Inserts `count` flat vertices at random points of edges and faces.
///
/// The result is the same surface with a finer triangulation; new
/// vertices get the indices after the existing ones.
pub fn with_flat_vertices<T: Real>(metric: &ConeMetric<T>, count: usize, seed: u64) -> Result<ConeMetric<T>> {
    let mut r = rng(seed);
    let mut mesh = Mesh::from_metric(metric);
    for _ in 0..count {
        let live: Vec<usize> = (0..mesh.next.len()).filter(|&h| mesh.alive[h]).collect();
        let h = live[r.gen_range(0..live.len())];
        if r.gen_bool(0.5) {
            mesh.split_edge(h, T::lit(r.gen_range(0.2..0.8)));
        } else {
            let [a, b, c] = mesh.layout(h);
            let (mut u, mut v): (f64, f64) = (r.gen_range(0.1..0.8), r.gen_range(0.1..0.8));
            if u + v > 0.9 {
                u = 0.9 - u.min(0.8);
                v = 0.9 - v.min(0.8);
            }
            let w = 1.0 - u - v;
            let p: Vec2<T> = a * T::lit(w) + b * T::lit(u) + c * T::lit(v);
            mesh.insert_in_face(h, p);
        }
    }
    Ok(mesh.compact()?.metric)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polyhedra_have_requested_size() {
        for seed in 0..20 {
            assert_eq!(convex_polyhedron(7, seed).unwrap().vertex_count(), 7);
        }
    }

    #[test]
    fn flat_insertion_keeps_curvature() {
        let m: ConeMetric<f64> = crate::iota(&convex_polyhedron(6, 3).unwrap()).unwrap();
        let fine = with_flat_vertices(&m, 10, 9).unwrap();
        assert_eq!(fine.vertex_count(), 16);
        assert_eq!(fine.essential_vertices(), (0..6).collect::<Vec<_>>());
        assert!((fine.area() - m.area()).abs() < 1e-12);
    }

    #[test]
    fn same_seed_same_output() {
        assert_eq!(convex_polygon(6, 4), convex_polygon(6, 4));
        assert_eq!(permutation(9, 1), permutation(9, 1));
    }
}
