//! From a convex polyhedron to the intrinsic metric of its surface.

use std::collections::BTreeMap;

use crate::builders::double_polygon_with;
use crate::hull::{convex_hull_3d, extreme_points, initial_simplex, nearly_coplanar, planar_hull};
use crate::{Config, ConeMetric, Error, Real, Result, Triangulation};

/// A convex polyhedron given by its extreme points.
///
/// When `degenerate` is set the points are coplanar and listed in convex
/// position around the polygon, counter-clockwise about some normal.
#[derive(Clone, Debug, PartialEq)]
pub struct Polyhedron {
    pub points: Vec<[f64; 3]>,
    pub degenerate: bool,
    /// Position of each kept point in the list it was built from.
    pub source_indices: Vec<usize>,
}

impl Polyhedron {
    pub fn vertex_count(&self) -> usize {
        self.points.len()
    }

    /// Outward facets as cycles of point indices. Empty for degenerate polyhedra.
    pub fn facets(&self) -> Result<Vec<Vec<usize>>> {
        if self.degenerate {
            return Ok(Vec::new());
        }
        convex_hull_3d(&self.points)
    }

    /// Euclidean surface area (twice the polygon area when degenerate).
    pub fn surface_area(&self) -> Result<f64> {
        let faces = if self.degenerate { vec![(0..self.points.len()).collect()] } else { self.facets()? };
        let mut total = 0.0;
        for f in faces {
            let p0 = self.points[f[0]];
            let mut n = [0.0; 3];
            for i in 1..f.len() - 1 {
                let a = sub(self.points[f[i]], p0);
                let b = sub(self.points[f[i + 1]], p0);
                let c = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
                for k in 0..3 {
                    n[k] += c[k];
                }
            }
            total += 0.5 * norm(n);
        }
        Ok(if self.degenerate { 2.0 * total } else { total })
    }
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn norm(a: [f64; 3]) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

/// Keeps the extreme points of the hull of `points`.
pub fn canonicalize_polyhedron(points: &[[f64; 3]]) -> Result<Polyhedron> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints);
    }
    if points.iter().flatten().any(|c| !c.is_finite()) {
        return Err(Error::DegenerateInput);
    }
    match initial_simplex(points) {
        Ok(_) if !nearly_coplanar(points) => {
            let keep = extreme_points(points)?;
            Ok(Polyhedron {
                points: keep.iter().map(|&i| points[i]).collect(),
                degenerate: false,
                source_indices: keep,
            })
        }
        Ok(_) | Err(Error::DegenerateInput) => {
            let keep = planar_hull(points)?;
            Ok(Polyhedron {
                points: keep.iter().map(|&i| points[i]).collect(),
                degenerate: true,
                source_indices: keep,
            })
        }
        Err(e) => Err(e),
    }
}

/// Surface metric of a polyhedron, with the default configuration.
pub fn iota<T: Real>(p: &Polyhedron) -> Result<ConeMetric<T>> {
    iota_with(p, Config::default())
}

pub fn iota_with<T: Real>(p: &Polyhedron, config: Config) -> Result<ConeMetric<T>> {
    if p.degenerate {
        return double_polygon_with(&plane_coordinates(&p.points), config);
    }
    let mut triangles = Vec::new();
    for f in p.facets()? {
        let s = (0..f.len()).min_by_key(|&i| f[i]).unwrap();
        let c: Vec<usize> = f[s..].iter().chain(&f[..s]).copied().collect();
        for i in 1..c.len() - 1 {
            triangles.push([c[0], c[i], c[i + 1]]);
        }
    }
    let tri = Triangulation::from_triangles(p.points.len(), triangles)?;
    let mut lengths = BTreeMap::new();
    for e in 0..tri.edge_count() {
        let (a, b) = tri.edge_vertices(e);
        lengths.insert((a.min(b), a.max(b)), T::lit(norm(sub(p.points[a], p.points[b]))));
    }
    ConeMetric::new_with(tri, &lengths, config)
}

/// Coordinates of coplanar points in an orthonormal frame of their plane.
fn plane_coordinates<T: Real>(points: &[[f64; 3]]) -> Vec<[T; 2]> {
    let o = points[0];
    let e1 = sub(points[1], o);
    let u = e1.map(|x| x / norm(e1));
    // Pick the point giving the best-conditioned normal.
    let mut n = [0.0; 3];
    for q in &points[2..] {
        let b = sub(*q, o);
        let c = [e1[1] * b[2] - e1[2] * b[1], e1[2] * b[0] - e1[0] * b[2], e1[0] * b[1] - e1[1] * b[0]];
        if norm(c) > norm(n) {
            n = c;
        }
    }
    let n = n.map(|x| x / norm(n));
    let v = [n[1] * u[2] - n[2] * u[1], n[2] * u[0] - n[0] * u[2], n[0] * u[1] - n[1] * u[0]];
    points
        .iter()
        .map(|p| {
            let d = sub(*p, o);
            let x = d[0] * u[0] + d[1] * u[1] + d[2] * u[2];
            let y = d[0] * v[0] + d[1] * v[1] + d[2] * v[2];
            [T::lit(x), T::lit(y)]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::double_polygon;
    use std::f64::consts::PI;

    fn cube() -> Vec<[f64; 3]> {
        let mut v = Vec::new();
        for x in [0.0, 1.0] {
            for y in [0.0, 1.0] {
                for z in [0.0, 1.0] {
                    v.push([x, y, z]);
                }
            }
        }
        v
    }

    #[test]
    fn centre_dropped() {
        let mut p = cube();
        p.push([0.5, 0.5, 0.5]);
        let poly = canonicalize_polyhedron(&p).unwrap();
        assert!(!poly.degenerate);
        assert_eq!(poly.source_indices, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn planar_and_small_inputs() {
        let sq = [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 1.0, 0.0]];
        let p = canonicalize_polyhedron(&sq).unwrap();
        assert!(p.degenerate);
        assert_eq!(p.vertex_count(), 4);
        let t = canonicalize_polyhedron(&sq[..3]).unwrap();
        assert!(t.degenerate && t.vertex_count() == 3);
        assert_eq!(canonicalize_polyhedron(&sq[..2]), Err(Error::TooFewPoints));
        let line = [[0.0, 0.0, 0.0], [1.0, 1.0, 1.0], [2.0, 2.0, 2.0], [3.0, 3.0, 3.0]];
        assert_eq!(canonicalize_polyhedron(&line), Err(Error::CollinearInput));
    }

    #[test]
    fn cube_surface() {
        let p = canonicalize_polyhedron(&cube()).unwrap();
        let m: ConeMetric<f64> = iota(&p).unwrap();
        assert_eq!(m.triangulation().face_count(), 12);
        let r = m.curvature_report();
        assert_eq!(r.essential_count(), 8);
        for s in r.angle_sums {
            assert!((s - 1.5 * PI).abs() < 1e-12);
        }
        assert!((m.area() - 6.0).abs() < 1e-12);
        assert!((p.surface_area().unwrap() - 6.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_square_is_doubled() {
        let sq = [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 1.0, 0.0]];
        let m: ConeMetric<f64> = iota(&canonicalize_polyhedron(&sq).unwrap()).unwrap();
        let d = double_polygon(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
        assert_eq!(m.triangulation().triangles(), d.triangulation().triangles());
        for (a, b) in m.lengths().iter().zip(d.lengths()) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
