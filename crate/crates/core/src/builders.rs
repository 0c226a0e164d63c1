//! Metrics glued from planar polygons, plus a few parametric presets.

use serde::{Deserialize, Serialize};

use crate::geom::Vec2;
use crate::{Config, ConeMetric, Error, Real, Result, Triangulation};

/// How the boundary of a single convex polygon is identified.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum GluingScheme<T> {
    /// Two copies glued along the whole boundary.
    Double,
    /// Pairs of equal-length boundary intervals, each given by arc length
    /// from vertex 0 along the (counter-clockwise) boundary. Intervals are
    /// glued with reversed direction.
    Pairs(Vec<SegmentPair<T>>),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SegmentPair<T> {
    pub first: [T; 2],
    pub second: [T; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolygonGluing<T> {
    pub polygon: Vec<[T; 2]>,
    pub scheme: GluingScheme<T>,
}

/// Checks strict convexity and returns the counter-clockwise vertex order.
fn convex_order<T: Real>(poly: &[[T; 2]]) -> Result<Vec<usize>> {
    let k = poly.len();
    if k < 3 {
        return Err(Error::DegeneratePolygon(format!("{k} vertices")));
    }
    let p: Vec<Vec2<T>> = poly.iter().map(|q| Vec2::new(q[0], q[1])).collect();
    if p.iter().any(|q| !q.x.is_finite() || !q.y.is_finite()) {
        return Err(Error::DegeneratePolygon("non-finite coordinate".into()));
    }
    let twice_area = (0..k).fold(T::zero(), |s, i| s + p[i].cross(p[(i + 1) % k]));
    let scale = p.iter().fold(T::zero(), |m, q| m.max(q.norm())).max(T::min_positive_value());
    if twice_area.abs() <= T::lit(1e-12) * scale * scale {
        return Err(Error::DegeneratePolygon("zero area".into()));
    }
    let ccw = twice_area > T::zero();
    let order: Vec<usize> = if ccw { (0..k).collect() } else { std::iter::once(0).chain((1..k).rev()).collect() };
    let mut turning = T::zero();
    for i in 0..k {
        let a = p[order[i]];
        let b = p[order[(i + 1) % k]];
        let c = p[order[(i + 2) % k]];
        let (e1, e2) = (b - a, c - b);
        if e1.norm() <= T::lit(1e-12) * scale {
            return Err(Error::DegeneratePolygon("repeated vertex".into()));
        }
        let cr = e1.cross(e2);
        if cr <= T::lit(1e-12) * e1.norm() * e2.norm() {
            return Err(Error::NonConvexPolygon);
        }
        turning = turning + cr.atan2(e1.dot(e2));
    }
    if (turning - T::tau()).abs() > T::lit(1e-9) {
        return Err(Error::NonConvexPolygon);
    }
    Ok(order)
}

/// Two copies of a convex polygon glued along their boundary.
///
/// Vertex `i` of the metric is polygon corner `i`. The top sheet is fanned
/// from the first corner and the bottom sheet from the second, so no
/// diagonal is repeated.
pub fn double_polygon<T: Real>(poly: &[[T; 2]]) -> Result<ConeMetric<T>> {
    double_polygon_with(poly, Config::default())
}

pub fn double_polygon_with<T: Real>(poly: &[[T; 2]], config: Config) -> Result<ConeMetric<T>> {
    let order = convex_order(poly)?;
    let k = order.len();
    let mut tris = Vec::with_capacity(2 * k - 4);
    for j in 1..k - 1 {
        tris.push([order[0], order[j], order[j + 1]]);
    }
    let r = |j: usize| order[(1 + j) % k];
    for j in 1..k - 1 {
        tris.push([r(0), r(j + 1), r(j)]);
    }
    let tri = Triangulation::from_triangles(k, tris)?;
    let dist = |a: usize, b: usize| {
        let (p, q) = (poly[a], poly[b]);
        (p[0] - q[0]).hypot(p[1] - q[1])
    };
    let lengths = (0..tri.edge_count())
        .map(|e| {
            let (a, b) = tri.edge_vertices(e);
            dist(a, b)
        })
        .collect();
    ConeMetric::from_edge_lengths(tri, lengths, config)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let n = self.0[c];
            self.0[c] = r;
            c = n;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi] = lo;
        }
    }
}

/// Glues a convex polygon according to `gluing`.
///
/// For interval pairings the interior is fanned from the centroid, which
/// becomes a flat vertex of the result, and boundary subdivision points are
/// kept as vertices.
pub fn glue_polygon<T: Real>(gluing: &PolygonGluing<T>) -> Result<ConeMetric<T>> {
    glue_polygon_with(gluing, Config::default())
}

pub fn glue_polygon_with<T: Real>(gluing: &PolygonGluing<T>, config: Config) -> Result<ConeMetric<T>> {
    let pairs = match &gluing.scheme {
        GluingScheme::Double => return double_polygon_with(&gluing.polygon, config),
        GluingScheme::Pairs(p) => p,
    };
    let order = convex_order(&gluing.polygon)?;
    if order[1] != 1 {
        return Err(Error::InvalidGluing("polygon must be counter-clockwise".into()));
    }
    let poly: Vec<Vec2<T>> = gluing.polygon.iter().map(|q| Vec2::new(q[0], q[1])).collect();
    let k = poly.len();
    let mut corners = vec![T::zero()];
    for i in 0..k {
        let l = (poly[(i + 1) % k] - poly[i]).norm();
        corners.push(corners[i] + l);
    }
    let perimeter = corners[k];
    let tol = T::lit(1e-9) * perimeter;

    // Interval checks.
    let mut intervals: Vec<[T; 2]> = Vec::new();
    for sp in pairs {
        for iv in [sp.first, sp.second] {
            if !(iv[0] >= -tol && iv[1] <= perimeter + tol && iv[1] - iv[0] > tol) {
                return Err(Error::InvalidGluing(format!(
                    "interval [{}, {}] is outside the boundary or empty",
                    iv[0], iv[1]
                )));
            }
            intervals.push(iv);
        }
        let (l1, l2) = (sp.first[1] - sp.first[0], sp.second[1] - sp.second[0]);
        if (l1 - l2).abs() > T::lit(1e-9) * l1.max(l2) {
            return Err(Error::MismatchedSegmentLengths(l1.f64(), l2.f64()));
        }
    }
    intervals.sort_by(|a, b| a[0].partial_cmp(&b[0]).unwrap());
    let mut cursor = T::zero();
    for iv in &intervals {
        if (iv[0] - cursor).abs() > tol {
            return Err(Error::InvalidGluing("intervals do not tile the boundary exactly once".into()));
        }
        cursor = iv[1];
    }
    if (cursor - perimeter).abs() > tol {
        return Err(Error::InvalidGluing("intervals do not cover the whole boundary".into()));
    }

    // Partner map x -> image, defined on the closed intervals.
    let partner = |x: T| -> Vec<T> {
        let mut out = Vec::new();
        for sp in pairs {
            for (a, b) in [(sp.first, sp.second), (sp.second, sp.first)] {
                if x >= a[0] - tol && x <= a[1] + tol {
                    out.push(b[1] - (x - a[0]));
                }
            }
        }
        out
    };
    let mut breaks: Vec<T> = corners[..k].to_vec();
    for iv in &intervals {
        breaks.push(iv[0]);
        breaks.push(iv[1]);
    }
    let snap = |mut v: Vec<T>| -> Vec<T> {
        for x in v.iter_mut() {
            if *x >= perimeter - tol {
                *x = T::zero();
            }
        }
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v.dedup_by(|a, b| (*a - *b).abs() <= tol);
        v
    };
    breaks = snap(breaks);
    for _ in 0..4 {
        let mut more = breaks.clone();
        for &x in &breaks {
            more.extend(partner(x));
        }
        let more = snap(more);
        if more.len() == breaks.len() {
            break;
        }
        breaks = more;
    }
    let n = breaks.len();
    let index_of = |x: T| -> Option<usize> {
        let x = if x >= perimeter - tol { T::zero() } else { x };
        breaks.iter().position(|&b| (b - x).abs() <= tol)
    };

    let point_at = |s: T| -> Vec2<T> {
        let i = (0..k).rfind(|&i| corners[i] <= s + tol).unwrap_or(0);
        let l = corners[i + 1] - corners[i];
        let t = ((s - corners[i]) / l).max(T::zero()).min(T::one());
        poly[i].lerp(poly[(i + 1) % k], t)
    };
    let pts: Vec<Vec2<T>> = breaks.iter().map(|&s| point_at(s)).collect();

    let mut uf = UnionFind((0..n).collect());
    let mut piece_partner = vec![usize::MAX; n];
    for j in 0..n {
        let (s0, s1) = (breaks[j], if j + 1 == n { perimeter } else { breaks[j + 1] });
        let mid = (s0 + s1) / T::two();
        let sp = pairs
            .iter()
            .flat_map(|sp| [(sp.first, sp.second), (sp.second, sp.first)])
            .find(|(a, _)| mid >= a[0] && mid <= a[1])
            .ok_or_else(|| Error::InvalidGluing("boundary piece not covered".into()))?;
        let img = |x: T| sp.1[1] - (x - sp.0[0]);
        let (k0, k1) = (index_of(img(s1)), index_of(img(s0)));
        let (Some(k0), Some(k1)) = (k0, k1) else {
            return Err(Error::InvalidGluing("partner point missing".into()));
        };
        if k0 == j {
            return Err(Error::InvalidGluing("a boundary piece is glued to itself".into()));
        }
        if (k0 + 1) % n != k1 {
            return Err(Error::InvalidGluing("partner piece is not a single boundary piece".into()));
        }
        piece_partner[j] = k0;
        uf.union(j, k1);
        uf.union((j + 1) % n, k0);
    }

    let mut class_id = vec![usize::MAX; n];
    let mut count = 0;
    for j in 0..n {
        let r = uf.find(j);
        if class_id[r] == usize::MAX {
            class_id[r] = count;
            count += 1;
        }
        class_id[j] = class_id[r];
    }
    let centre_id = count;
    let centroid = poly.iter().fold(Vec2::zero(), |a, &p| a + p) * (T::one() / T::lit(k as f64));

    let mut tris = Vec::with_capacity(n);
    let mut twin = vec![0usize; 3 * n];
    let mut hl = vec![T::zero(); 3 * n];
    for j in 0..n {
        let j1 = (j + 1) % n;
        tris.push([centre_id, class_id[j], class_id[j1]]);
        twin[3 * j + 2] = 3 * j1;
        twin[3 * j1] = 3 * j + 2;
        twin[3 * j + 1] = 3 * piece_partner[j] + 1;
        hl[3 * j] = (pts[j] - centroid).norm();
        hl[3 * j + 1] = (pts[j1] - pts[j]).norm();
        hl[3 * j + 2] = (pts[j1] - centroid).norm();
    }
    let tri = Triangulation::from_parts(count + 1, tris, twin).map_err(|e| match e {
        Error::NotSphere(m) | Error::NonManifold(m) => Error::NotSphereAfterGluing(m),
        other => other,
    })?;
    ConeMetric::from_halfedge_lengths(tri, &hl, config)
}

/// A 2×1 rectangle glued so that the result is a sphere with four cone
/// points: each long side is folded at its midpoint and the two short sides
/// are glued to each other.
pub fn rectangle_gluing<T: Real>() -> PolygonGluing<T> {
    let l = T::lit;
    let pair = |a: f64, b: f64, c: f64, d: f64| SegmentPair { first: [l(a), l(b)], second: [l(c), l(d)] };
    PolygonGluing {
        polygon: vec![[l(0.0), l(0.0)], [l(2.0), l(0.0)], [l(2.0), l(1.0)], [l(0.0), l(1.0)]],
        scheme: GluingScheme::Pairs(vec![
            pair(0.0, 1.0, 1.0, 2.0),
            pair(3.0, 4.0, 4.0, 5.0),
            pair(2.0, 3.0, 5.0, 6.0),
        ]),
    }
}

/// Bipyramid over a `k`-gon with all edges equal to `side`: vertices 0 and
/// 1 are the apexes (angle sum `kπ/3` each), vertices `2..k+2` the ring.
pub fn star_gluing<T: Real>(k: usize, side: T) -> Result<ConeMetric<T>> {
    if k < 3 {
        return Err(Error::InvalidGluing(format!("star gluing needs k >= 3, got {k}")));
    }
    let ring = |i: usize| 2 + i % k;
    let mut tris = Vec::with_capacity(2 * k);
    for i in 0..k {
        tris.push([0, ring(i), ring(i + 1)]);
        tris.push([1, ring(i + 1), ring(i)]);
    }
    let tri = Triangulation::from_triangles(k + 2, tris)?;
    let n = tri.edge_count();
    ConeMetric::from_edge_lengths(tri, vec![side; n], Config::default())
}
