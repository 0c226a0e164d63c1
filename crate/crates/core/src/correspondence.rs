//! The inverse map for four cone points, and isometry fingerprints.
//!
//! A metric with four cone points in the admissible class is the surface of
//! a tetrahedron, possibly flat. [`embed4`] finds it: it looks for an
//! essential triangulation whose six lengths are realizable in space, then
//! places the vertices in the gauge where the first vertex is the origin,
//! the second lies on the x axis and the third in the xy plane.

use std::collections::{HashSet, VecDeque};

use crate::geodesic::distance_matrix;
use crate::retriangulate::{edge_flip, retriangulate_essential, EssentialTriangulation};
use crate::{canonicalize_polyhedron, iota_with, ConeMetric, Error, Real, Result};

/// Vertex pairs in the order used for lengths and residuals.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Determinant of an `n x n` matrix by Gaussian elimination with partial
/// pivoting.
fn determinant<T: Real>(mut a: Vec<Vec<T>>) -> T {
    let n = a.len();
    let mut det = T::one();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().partial_cmp(&a[j][c].abs()).unwrap()).unwrap();
        if a[p][c] == T::zero() {
            return T::zero();
        }
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det = det * a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                let x = a[c][k];
                a[r][k] = a[r][k] - f * x;
            }
        }
    }
    det
}

/// Cayley–Menger determinant of four points with the given pairwise
/// distances (ordered as [`PAIRS`]). Equals 288 times the squared volume.
pub fn cayley_menger<T: Real>(d: &[T; 6]) -> T {
    let mut m = vec![vec![T::one(); 5]; 5];
    m[0][0] = T::zero();
    for i in 1..5 {
        m[i][i] = T::zero();
    }
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        let sq = d[k] * d[k];
        m[i + 1][j + 1] = sq;
        m[j + 1][i + 1] = sq;
    }
    determinant(m)
}

/// A tetrahedron realizing a four-cone-point metric.
#[derive(Clone, Debug)]
pub struct EmbeddingResult<T> {
    /// Metric vertex placed at each corner.
    pub vertices: [usize; 4],
    pub coords: [[T; 3]; 4],
    /// Edge lengths of the realized triangulation, ordered as [`PAIRS`].
    pub lengths: [T; 6],
    pub cayley_menger: T,
    /// Set when the tetrahedron is flat: the metric is a doubled quadrilateral.
    pub degenerate: bool,
    /// `|embedded length - metric length|` per pair.
    pub residuals: [T; 6],
    /// Number of triangulations visited by the flip search.
    pub visited: usize,
}

impl<T: Real> EmbeddingResult<T> {
    pub fn max_residual(&self) -> T {
        self.residuals.iter().fold(T::zero(), |m, &r| m.max(r))
    }

    pub fn coords_f64(&self) -> Vec<[f64; 3]> {
        self.coords.iter().map(|p| [p[0].f64(), p[1].f64(), p[2].f64()]).collect()
    }

    /// Six times the signed volume.
    pub fn signed_volume6(&self) -> T {
        let [a, b, c, d] = self.coords;
        let e = |p: [T; 3]| [p[0] - a[0], p[1] - a[1], p[2] - a[2]];
        let (u, v, w) = (e(b), e(c), e(d));
        u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) + u[2] * (v[0] * w[1] - v[1] * w[0])
    }
}

/// The six lengths of a triangulation on four vertices, when every pair is
/// joined by exactly one edge.
fn complete_lengths<T: Real>(et: &EssentialTriangulation<T>) -> Option<[T; 6]> {
    let m = et.metric();
    let tri = m.triangulation();
    let mut out = [None; 6];
    for e in 0..tri.edge_count() {
        let h = tri.edge_halfedges(e)[0];
        let (a, b) = (tri.tail(h), tri.head(h));
        let k = PAIRS.iter().position(|&p| p == (a.min(b), a.max(b)))?;
        if out[k].replace(m.length(e)).is_some() {
            return None;
        }
    }
    let mut d = [T::zero(); 6];
    for k in 0..6 {
        d[k] = out[k]?;
    }
    Some(d)
}

fn state_key<T: Real>(et: &EssentialTriangulation<T>) -> Vec<(usize, usize, u64)> {
    let m = et.metric();
    let tri = m.triangulation();
    let mut key: Vec<_> = (0..tri.edge_count())
        .map(|e| {
            let h = tri.edge_halfedges(e)[0];
            let (a, b) = (tri.tail(h), tri.head(h));
            (a.min(b), a.max(b), (m.length(e).f64() * 1e9).round() as u64)
        })
        .collect();
    key.sort_unstable();
    key
}

/// Coordinates in the gauge: origin, x axis, xy plane, upper half space.
fn place<T: Real>(d: &[T; 6], flat: bool) -> [[T; 3]; 4] {
    let sq = |k: usize| d[k] * d[k];
    let g = |i: usize, j: usize| {
        let (a, b) = (sq(i - 1), sq(j - 1));
        let ij = if i == j { T::zero() } else { sq(PAIRS.iter().position(|&p| p == (i, j)).unwrap()) };
        (a + b - ij) / T::two()
    };
    let z = T::zero();
    let x1 = g(1, 1).max(z).sqrt();
    let x2 = g(1, 2) / x1;
    let y2 = (g(2, 2) - x2 * x2).max(z).sqrt();
    let x3 = g(1, 3) / x1;
    let y3 = (g(2, 3) - x2 * x3) / y2;
    let z3 = if flat { z } else { (g(3, 3) - x3 * x3 - y3 * y3).max(z).sqrt() };
    [[z, z, z], [x1, z, z], [x2, y2, z], [x3, y3, z3]]
}

/// Realizes a metric with exactly four cone points as a tetrahedron.
pub fn embed4<T: Real>(metric: &ConeMetric<T>) -> Result<EmbeddingResult<T>> {
    let n = metric.essential_vertices().len();
    let psi = metric.is_in_psi();
    if !psi.admissible {
        let v = psi.offender.unwrap_or(0);
        return Err(Error::NotInPsi { vertex: v, angle: metric.angle_sum(v)?.f64() });
    }
    if n != 4 {
        return Err(Error::WrongVertexCount(n));
    }
    let config = *metric.config();
    let start = retriangulate_essential(metric)?;
    let diam = metric.max_length();
    let cm_tol = T::lit(1e-9) * diam.powi(6);

    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(state_key(&start));
    queue.push_back(start);
    let mut visited = 0;
    let (et, d, cm) = loop {
        let Some(et) = queue.pop_front() else {
            return Err(Error::FlipSearchExhausted(visited));
        };
        visited += 1;
        if let Some(d) = complete_lengths(&et) {
            let cm = cayley_menger(&d);
            if cm >= -cm_tol {
                break (et, d, cm);
            }
        }
        if visited >= config.flip_budget {
            return Err(Error::FlipSearchExhausted(visited));
        }
        for e in 0..et.metric().triangulation().edge_count() {
            if let Ok(next) = edge_flip(&et, e) {
                if seen.insert(state_key(&next)) {
                    queue.push_back(next);
                }
            }
        }
    };

    // The height is the square root of a cancelling difference, so rounding
    // alone leaves about 1e-8 of the diameter; anything below 1e-7 is flat.
    let lifted = place(&d, false);
    let degenerate = lifted[3][2] <= T::lit(1e-7) * diam;
    let coords = if degenerate { place(&d, true) } else { lifted };
    let mut residuals = [T::zero(); 6];
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        let (p, q) = (coords[i], coords[j]);
        let len = ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2) + (p[2] - q[2]).powi(2)).sqrt();
        residuals[k] = (len - d[k]).abs();
    }
    let map = et.vertex_map();
    let result = EmbeddingResult {
        vertices: [map[0], map[1], map[2], map[3]],
        coords,
        lengths: d,
        cayley_menger: cm,
        degenerate,
        residuals,
        visited,
    };
    let cap = T::lit(config.residual_cap) * diam;
    if result.max_residual() > cap {
        return Err(Error::VerificationFailed(format!(
            "edge residual {} exceeds {}",
            result.max_residual(),
            cap
        )));
    }
    if !degenerate {
        let v6 = result.signed_volume6();
        let vol = T::lit(8.0) * v6 * v6;
        if (vol - cm).abs() > T::lit(1e-6) * cm.abs() + cm_tol * T::lit(1e-3) {
            return Err(Error::VerificationFailed(format!("volume {} disagrees with determinant {}", vol, cm)));
        }
    }
    let poly = canonicalize_polyhedron(&result.coords_f64())?;
    let back: ConeMetric<T> = iota_with(&poly, config)?;
    let (fa, fb) = (fingerprint(&back)?, fingerprint(metric)?);
    if !fa.agrees(&fb, T::lit(config.fingerprint_tol)) {
        return Err(Error::VerificationFailed(format!(
            "fingerprints differ by {}",
            fa.discrepancy(&fb).map_or(f64::INFINITY, |x| x.f64())
        )));
    }
    Ok(result)
}

/// Isometry invariants of a metric.
#[derive(Clone, Debug, PartialEq)]
pub struct IsometryFingerprint<T> {
    /// Deficits of the essential vertices, ascending.
    pub deficits: Vec<T>,
    /// Geodesic distances between essential vertices, ascending.
    pub distances: Vec<T>,
    pub area: T,
}

impl<T: Real> IsometryFingerprint<T> {
    /// Largest difference between corresponding entries, or `None` when
    /// the vertex counts differ. Distances and area are taken relative to
    /// the larger surface's scale.
    pub fn discrepancy(&self, other: &Self) -> Option<T> {
        if self.deficits.len() != other.deficits.len() {
            return None;
        }
        let scale = self
            .distances
            .iter()
            .chain(&other.distances)
            .fold(T::one(), |m, &x| m.max(x));
        let mut worst = (self.area - other.area).abs() / (scale * scale);
        for (a, b) in self.deficits.iter().zip(&other.deficits) {
            worst = worst.max((*a - *b).abs());
        }
        for (a, b) in self.distances.iter().zip(&other.distances) {
            worst = worst.max((*a - *b).abs() / scale);
        }
        Some(worst)
    }

    pub fn agrees(&self, other: &Self, tol: T) -> bool {
        self.discrepancy(other).is_some_and(|d| d <= tol)
    }
}

pub fn fingerprint<T: Real>(metric: &ConeMetric<T>) -> Result<IsometryFingerprint<T>> {
    let report = metric.curvature_report();
    let mut deficits: Vec<T> = report.essential_vertices().iter().map(|&v| report.deficits[v]).collect();
    deficits.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let dm = distance_matrix(metric)?;
    let mut distances = Vec::new();
    for i in 0..dm.vertices.len() {
        for j in i + 1..dm.vertices.len() {
            distances.push(dm.distances[i][j]);
        }
    }
    distances.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(IsometryFingerprint { deficits, distances, area: metric.area() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The fingerprints differ: the metrics are certainly not isometric.
    Distinct,
    /// The fingerprints agree. Necessary for isometry, not a proof of it.
    Consistent,
}

/// Compares fingerprints with the tolerance of `a`'s configuration.
pub fn probably_isometric<T: Real>(a: &ConeMetric<T>, b: &ConeMetric<T>) -> Result<(Verdict, IsometryFingerprint<T>, IsometryFingerprint<T>)> {
    let (fa, fb) = (fingerprint(a)?, fingerprint(b)?);
    let verdict = if fa.agrees(&fb, T::lit(a.config().fingerprint_tol)) { Verdict::Consistent } else { Verdict::Distinct };
    Ok((verdict, fa, fb))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_of_small_matrices() {
        assert_eq!(determinant(vec![vec![2.0, 1.0], vec![1.0, 3.0]]), 5.0);
        assert_eq!(determinant(vec![vec![0.0, 1.0], vec![1.0, 0.0]]), -1.0);
        assert_eq!(determinant(vec![vec![1.0, 2.0], vec![2.0, 4.0]]), 0.0);
    }

    #[test]
    fn unit_regular_tetrahedron() {
        // Volume 1/(6√2), so 288 V² = 4.
        assert!((cayley_menger(&[1.0f64; 6]) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn gauge_is_lower_triangular() {
        let c = place(&[1.0f64; 6], false);
        assert_eq!((c[1][1], c[1][2], c[2][2]), (0.0, 0.0, 0.0));
        assert!(c[3][2] > 0.0);
    }
}
