//! Shared fixtures and independent reference computations for the
//! integration tests. Nothing here calls into the search code under test.
#![allow(dead_code)]

use std::collections::{BinaryHeap, HashMap};
use std::cmp::Reverse;

use alexandrov::{canonicalize_polyhedron, iota, ConeMetric};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn cube_points() -> Vec<[f64; 3]> {
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

pub fn cube() -> ConeMetric<f64> {
    iota(&canonicalize_polyhedron(&cube_points()).unwrap()).unwrap()
}

pub fn regular_tetrahedron() -> ConeMetric<f64> {
    let s = 1.0 / 8f64.sqrt();
    let p = [[s, s, s], [s, -s, -s], [-s, s, -s], [-s, -s, s]];
    iota(&canonicalize_polyhedron(&p).unwrap()).unwrap()
}

/// Points on the unit sphere, which are always in convex position.
pub fn sphere_points(n: usize, seed: u64) -> Vec<[f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| loop {
            let p: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
            let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
            if r > 0.1 && r < 1.0 {
                break [p[0] / r, p[1] / r, p[2] / r];
            }
        })
        .collect()
}

fn cross2(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn sub2(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn dist2(a: [f64; 2], b: [f64; 2]) -> f64 {
    let d = sub2(a, b);
    (d[0] * d[0] + d[1] * d[1]).sqrt()
}

/// Third point of a triangle above the directed segment `p -> q`.
fn apex(p: [f64; 2], q: [f64; 2], dp: f64, dq: f64) -> [f64; 2] {
    let l = dist2(p, q);
    let x = (dp * dp - dq * dq + l * l) / (2.0 * l);
    let y = (dp * dp - x * x).max(0.0).sqrt();
    let u = [(q[0] - p[0]) / l, (q[1] - p[1]) / l];
    [p[0] + x * u[0] - y * u[1], p[1] + x * u[1] + y * u[0]]
}

/// Shortest straight unfolding from `v` to `w` over every face sequence of
/// at most `depth` triangles. Each crossed edge must be crossed strictly
/// inside. Returns `None` when no sequence works.
pub fn unfolding_distance(m: &ConeMetric<f64>, v: usize, w: usize, depth: usize) -> Option<f64> {
    let t = m.triangulation();
    let mut best: Option<f64> = None;
    for h in 0..t.halfedge_count() {
        if t.tail(h) != v {
            continue;
        }
        // Face of h with v at the origin, head(h) on the x axis.
        let a = [0.0, 0.0];
        let b = [m.halfedge_length(h), 0.0];
        let c = apex(a, b, m.halfedge_length(t.prev(h)), m.halfedge_length(t.next(h)));
        let pos = vec![(h, a), (t.next(h), b), (t.prev(h), c)];
        explore(m, w, pos, None, Vec::new(), depth, &mut best);
    }
    best
}

fn explore(
    m: &ConeMetric<f64>,
    w: usize,
    face: Vec<(usize, [f64; 2])>,
    entry: Option<usize>,
    portals: Vec<([f64; 2], [f64; 2])>,
    depth: usize,
    best: &mut Option<f64>,
) {
    let t = m.triangulation();
    for &(h, p) in &face {
        if t.tail(h) == w && (p[0] != 0.0 || p[1] != 0.0) {
            let ok = portals.iter().all(|&(a, b)| {
                // Segment origin -> p against portal a -> b.
                let d = p;
                let e = sub2(b, a);
                let den = cross2(d, e);
                if den.abs() < 1e-15 {
                    return false;
                }
                let r = cross2(a, e) / den;
                let s = cross2(a, d) / den;
                r > 0.0 && r < 1.0 && s > 1e-9 && s < 1.0 - 1e-9
            });
            if ok {
                let l = (p[0] * p[0] + p[1] * p[1]).sqrt();
                if best.map_or(true, |b| l < b) {
                    *best = Some(l);
                }
            }
        }
    }
    if depth <= 1 {
        return;
    }
    for i in 0..3 {
        let (h, a) = face[i];
        if Some(h) == entry {
            continue;
        }
        let b = face[(i + 1) % 3].1;
        let g = t.twin(h);
        // g runs from head(h) to tail(h); its face lies on the other side.
        let c = apex(b, a, m.halfedge_length(t.prev(g)), m.halfedge_length(t.next(g)));
        let next = vec![(g, b), (t.next(g), a), (t.prev(g), c)];
        let mut p = portals.clone();
        p.push((a, b));
        explore(m, w, next, Some(g), p, depth - 1, best);
    }
}

/// Shortest path in a graph whose nodes are the vertices plus `k` points
/// per edge, joined by straight segments across each face. Always an upper
/// bound on the geodesic distance, within about `longest edge / k` of it.
pub fn steiner_distance(m: &ConeMetric<f64>, v: usize, w: usize, k: usize) -> f64 {
    let t = m.triangulation();
    // Node ids: vertices first, then (edge, j) points.
    let nv = t.vertex_count();
    let node = |e: usize, j: usize| nv + e * k + j;
    let mut adj: HashMap<usize, Vec<(usize, f64)>> = HashMap::new();
    for f in 0..t.face_count() {
        let h0 = 3 * f;
        let a = [0.0, 0.0];
        let b = [m.halfedge_length(h0), 0.0];
        let c = apex(a, b, m.halfedge_length(t.prev(h0)), m.halfedge_length(t.next(h0)));
        let corners = [a, b, c];
        let mut pts: Vec<(usize, [f64; 2])> = (0..3).map(|i| (t.tail(h0 + i), corners[i])).collect();
        for i in 0..3 {
            let h = h0 + i;
            let e = t.edge(h);
            let forward = t.edge_halfedges(e)[0] == h;
            let (p, q) = (corners[i], corners[(i + 1) % 3]);
            for j in 0..k {
                let s = (j + 1) as f64 / (k + 1) as f64;
                let s = if forward { s } else { 1.0 - s };
                pts.push((node(e, j), [p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])]));
            }
        }
        for x in 0..pts.len() {
            for y in x + 1..pts.len() {
                let d = dist2(pts[x].1, pts[y].1);
                adj.entry(pts[x].0).or_default().push((pts[y].0, d));
                adj.entry(pts[y].0).or_default().push((pts[x].0, d));
            }
        }
    }
    let mut dist: HashMap<usize, f64> = HashMap::new();
    let mut heap = BinaryHeap::new();
    dist.insert(v, 0.0);
    heap.push(Reverse((0u64, v)));
    while let Some(Reverse((bits, x))) = heap.pop() {
        let d = f64::from_bits(bits);
        if d > dist[&x] {
            continue;
        }
        if x == w {
            return d;
        }
        for &(y, l) in adj.get(&x).map(|v| v.as_slice()).unwrap_or(&[]) {
            let nd = d + l;
            if dist.get(&y).map_or(true, |&o| nd < o) {
                dist.insert(y, nd);
                heap.push(Reverse((nd.to_bits(), y)));
            }
        }
    }
    f64::INFINITY
}

/// Corner positions of face `f`, laid out from its first half-edge.
pub fn face_layout(m: &ConeMetric<f64>, f: usize) -> [[f64; 2]; 3] {
    let t = m.triangulation();
    let h = 3 * f;
    let a = [0.0, 0.0];
    let b = [m.halfedge_length(h), 0.0];
    let c = apex(a, b, m.halfedge_length(t.prev(h)), m.halfedge_length(t.next(h)));
    [a, b, c]
}

/// Pieces of a path inside each face it visits, in that face's layout.
pub fn face_segments(m: &ConeMetric<f64>, p: &alexandrov::GeodesicPath<f64>) -> Vec<(usize, [f64; 2], [f64; 2])> {
    let t = m.triangulation();
    let mut out = Vec::new();
    for leg in &p.legs {
        let corner_pos = |h: usize| {
            let f = h / 3;
            face_layout(m, f)[h % 3]
        };
        let crossing_pos = |f: usize, c: &alexandrov::Crossing<f64>| {
            let pts = face_layout(m, f);
            let i = (0..3).find(|&i| t.edge(3 * f + i) == c.edge).expect("crossed edge belongs to face");
            let h = 3 * f + i;
            let s = if t.edge_halfedges(c.edge)[0] == h { c.t } else { 1.0 - c.t };
            let (a, b) = (pts[i], pts[(i + 1) % 3]);
            [a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])]
        };
        let n = leg.faces.len();
        for (k, &f) in leg.faces.iter().enumerate() {
            let start = if k == 0 { corner_pos(leg.start_halfedge) } else { crossing_pos(f, &leg.crossings[k - 1]) };
            let end = if k + 1 == n { corner_pos(leg.end_halfedge) } else { crossing_pos(f, &leg.crossings[k]) };
            out.push((f, start, end));
        }
    }
    out
}

/// True when two segments meet at a point interior to both.
pub fn segments_cross(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> bool {
    let o = |p: [f64; 2], q: [f64; 2], r: [f64; 2]| cross2(sub2(q, p), sub2(r, p));
    let eps = 1e-9;
    let (d1, d2) = (o(a, b, c), o(a, b, d));
    let (d3, d4) = (o(c, d, a), o(c, d, b));
    d1 * d2 < -eps * eps && d3 * d4 < -eps * eps && d1.abs() > eps && d2.abs() > eps && d3.abs() > eps && d4.abs() > eps
}
