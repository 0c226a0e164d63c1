//! Exact shortest paths between vertices by unfolding.
//!
//! The search propagates windows: intervals of an edge that are lit by a
//! straight ray bundle from an unfolded source image. Windows are expanded
//! best-first by their distance lower bound. Parts of a window that are
//! beaten by a known path through an endpoint of its edge are trimmed, and
//! saddle vertices (angle sum above 2π) act as secondary sources. Flat
//! vertices need no special treatment because unfolding around them closes
//! up without holonomy.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::geom::Vec2;
use crate::mesh::{Mesh, TracedLeg, NONE};
use crate::{ConeMetric, Error, Real, Result, Triangulation};

/// Where a path crosses an edge; `t` runs from the smaller endpoint.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Crossing<T> {
    pub edge: usize,
    pub t: T,
}

/// A straight piece of a geodesic between two vertices, with no vertex in
/// its interior.
#[derive(Clone, Debug, PartialEq)]
pub struct GeodesicLeg<T> {
    pub from: usize,
    pub to: usize,
    /// Corner at `from` the leg starts into, and the angle measured inside it
    /// from that half-edge.
    pub start_halfedge: usize,
    pub start_angle: T,
    /// Corner at `to` the leg arrives through, with the angle of the
    /// backwards direction inside it.
    pub end_halfedge: usize,
    pub end_angle: T,
    /// Faces visited in order.
    pub faces: Vec<usize>,
    pub crossings: Vec<Crossing<T>>,
    pub length: T,
}

impl<T: Real> GeodesicLeg<T> {
    /// Endpoints of the leg unfolded into the plane of its first face, laid
    /// out with `start_halfedge` along the positive x axis.
    pub fn unfolded_endpoints(&self) -> [Vec2<T>; 2] {
        [Vec2::zero(), Vec2::polar(self.length, self.start_angle)]
    }

    pub fn reversed(&self) -> Self {
        let mut faces = self.faces.clone();
        faces.reverse();
        let mut crossings = self.crossings.clone();
        crossings.reverse();
        Self {
            from: self.to,
            to: self.from,
            start_halfedge: self.end_halfedge,
            start_angle: self.end_angle,
            end_halfedge: self.start_halfedge,
            end_angle: self.start_angle,
            faces,
            crossings,
            length: self.length,
        }
    }
}

/// A shortest path between two vertices. It only bends at saddle vertices;
/// legs also break at flat vertices it happens to pass through.
#[derive(Clone, Debug, PartialEq)]
pub struct GeodesicPath<T> {
    pub source: usize,
    pub target: usize,
    pub legs: Vec<GeodesicLeg<T>>,
    pub length: T,
}

impl<T: Real> GeodesicPath<T> {
    pub fn faces(&self) -> Vec<usize> {
        self.legs.iter().flat_map(|l| l.faces.iter().copied()).collect()
    }

    pub fn crossings(&self) -> Vec<Crossing<T>> {
        self.legs.iter().flat_map(|l| l.crossings.iter().copied()).collect()
    }

    /// Vertices met along the way, endpoints included.
    pub fn vertices(&self) -> Vec<usize> {
        let mut v = vec![self.source];
        v.extend(self.legs.iter().map(|l| l.to));
        v
    }

    pub fn reversed(&self) -> Self {
        Self {
            source: self.target,
            target: self.source,
            legs: self.legs.iter().rev().map(GeodesicLeg::reversed).collect(),
            length: self.length,
        }
    }
}

/// Pairwise distances between the essential vertices, listed in `vertices`.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix<T> {
    pub vertices: Vec<usize>,
    pub distances: Vec<Vec<T>>,
}

/// Rigid motion `x -> R x + t` with `R = [[c, -s], [s, c]]`.
#[derive(Clone, Copy, Debug)]
struct Motion<T> {
    c: T,
    s: T,
    t: Vec2<T>,
}

impl<T: Real> Motion<T> {
    fn apply(&self, p: Vec2<T>) -> Vec2<T> {
        Vec2::new(self.c * p.x - self.s * p.y, self.s * p.x + self.c * p.y) + self.t
    }

    fn then_inner(&self, inner: &Self) -> Self {
        Self {
            c: self.c * inner.c - self.s * inner.s,
            s: self.s * inner.c + self.c * inner.s,
            t: self.apply(inner.t),
        }
    }
}

#[derive(Clone, Debug)]
struct Window<T> {
    /// The window lies on this half-edge, about to enter its face.
    g: usize,
    a: T,
    b: T,
    /// Source image in the frame of `layout(g)`.
    s: Vec2<T>,
    sigma: T,
    src: usize,
    root: usize,
    parent: usize,
    /// Frame of `g` to frame of the root corner.
    to_root: Motion<T>,
}

/// A straight segment reaching a vertex.
#[derive(Clone, Debug)]
struct Hit<T> {
    vertex: usize,
    length: T,
    src: usize,
    root: usize,
    phi: T,
    leg: T,
    window: usize,
}

#[derive(Debug)]
struct Event<T> {
    key: T,
    kind: EventKind,
}

#[derive(Debug, PartialEq, Eq, Clone, Copy)]
enum EventKind {
    Window(usize),
    Activate(usize),
}

impl<T: Real> PartialEq for Event<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<T: Real> Eq for Event<T> {}
impl<T: Real> PartialOrd for Event<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Real> Ord for Event<T> {
    // Reversed: the heap pops the smallest key, then the earliest id.
    fn cmp(&self, other: &Self) -> Ordering {
        let id = |k: EventKind| match k {
            EventKind::Window(i) => (1, i),
            EventKind::Activate(v) => (0, v),
        };
        other.key.f64().total_cmp(&self.key.f64()).then_with(|| id(other.kind).cmp(&id(self.kind)))
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct SearchOptions<T> {
    /// Discard window parts beaten by a path through an edge endpoint.
    pub trim: bool,
    /// Let saddle vertices act as secondary sources.
    pub saddles: bool,
    /// Hard cap on path length, in addition to target bounds.
    pub max_length: Option<T>,
}

struct Search<'a, T: Real> {
    m: &'a Mesh<T>,
    source: usize,
    targets: Vec<usize>,
    opts: SearchOptions<T>,
    tol: T,
    budget: usize,
    windows: Vec<Window<T>>,
    heap: BinaryHeap<Event<T>>,
    /// Shortest known path length to each vertex.
    dist: Vec<T>,
    best: Vec<usize>,
    activated: Vec<bool>,
    hits: Vec<Hit<T>>,
    target_hits: Vec<Vec<usize>>,
}

fn graph_distances<T: Real>(m: &Mesh<T>, source: usize) -> Vec<T> {
    let n = m.out.len();
    let mut dist = vec![T::infinity(); n];
    let mut heap = BinaryHeap::new();
    dist[source] = T::zero();
    heap.push(Event { key: T::zero(), kind: EventKind::Activate(source) });
    while let Some(Event { key, kind: EventKind::Activate(v) }) = heap.pop() {
        if key > dist[v] {
            continue;
        }
        for h in m.outgoing(v) {
            let w = m.head(h);
            let d = key + m.len[h];
            if d < dist[w] {
                dist[w] = d;
                heap.push(Event { key: d, kind: EventKind::Activate(w) });
            }
        }
    }
    dist
}

fn segment_distance<T: Real>(s: Vec2<T>, a: T, b: T) -> T {
    if s.x < a {
        (s - Vec2::new(a, T::zero())).norm()
    } else if s.x > b {
        (s - Vec2::new(b, T::zero())).norm()
    } else {
        s.y.abs()
    }
}

/// x coordinate where the ray from `s` (below the axis) through `q` meets the axis.
fn intercept<T: Real>(s: Vec2<T>, q: Vec2<T>) -> T {
    if q.y == T::zero() {
        return q.x;
    }
    (s.x * q.y - q.x * s.y) / (q.y - s.y)
}

impl<'a, T: Real> Search<'a, T> {
    fn new(m: &'a Mesh<T>, source: usize, targets: Vec<usize>, opts: SearchOptions<T>) -> Self {
        let n = m.out.len();
        let scale = m.len.iter().fold(T::one(), |a, &b| a.max(b));
        let dist = if opts.trim { graph_distances(m, source) } else { vec![T::infinity(); n] };
        let target_hits = vec![Vec::new(); targets.len()];
        Self {
            m,
            source,
            targets,
            opts,
            tol: T::lit(1e-9) * scale,
            budget: m.config.geodesic_budget,
            windows: Vec::new(),
            heap: BinaryHeap::new(),
            dist,
            best: vec![NONE; n],
            activated: vec![false; n],
            hits: Vec::new(),
            target_hits,
        }
    }

    /// Length beyond which nothing is of interest any more.
    fn bound(&self) -> T {
        let mut b = T::zero();
        for &t in &self.targets {
            let d = if self.best[t] == NONE && self.opts.trim { self.dist[t] } else if self.best[t] == NONE { T::infinity() } else { self.hits[self.best[t]].length };
            b = b.max(d);
        }
        if let Some(cap) = self.opts.max_length {
            b = b.min(cap);
        }
        b
    }

    fn record(&mut self, hit: Hit<T>) {
        let v = hit.vertex;
        if v == self.source || (self.opts.max_length.is_some_and(|c| hit.length > c + self.tol)) {
            return;
        }
        let id = self.hits.len();
        let improves = self.best[v] == NONE || hit.length < self.hits[self.best[v]].length;
        let is_target = self.targets.iter().position(|&t| t == v);
        if !improves && is_target.is_none() {
            return;
        }
        let len = hit.length;
        self.hits.push(hit);
        if let Some(i) = is_target {
            self.target_hits[i].push(id);
        }
        if improves {
            self.best[v] = id;
            if len < self.dist[v] {
                self.dist[v] = len;
            }
            let saddle = self.m.theta[v] > T::tau() + T::lit(self.m.config.angle_eps);
            if self.opts.saddles && saddle && !self.activated[v] {
                self.heap.push(Event { key: len, kind: EventKind::Activate(v) });
            }
        }
    }

    fn push_window(&mut self, w: Window<T>) -> Result<()> {
        let lb = w.sigma + segment_distance(w.s, w.a, w.b);
        if lb > self.bound() + self.tol {
            return Ok(());
        }
        if self.windows.len() >= self.budget {
            return Err(Error::SearchBudgetExceeded(self.budget));
        }
        let id = self.windows.len();
        self.windows.push(w);
        self.heap.push(Event { key: lb, kind: EventKind::Window(id) });
        Ok(())
    }

    /// Emits edges and first windows around a (pseudo-)source.
    fn emanate(&mut self, p: usize, sigma: T) -> Result<()> {
        self.activated[p] = true;
        let m = self.m;
        let hs: Vec<usize> = m.outgoing(p).collect();
        for h in hs {
            let pts = m.layout(h);
            let corner = m.corner(h);
            let n = m.next[h];
            for (vertex, phi, leg) in [(m.head(h), T::zero(), m.len[h]), (m.tail[m.prev(h)], corner, m.len[m.prev(h)])] {
                self.record(Hit { vertex, length: sigma + leg, src: p, root: h, phi, leg, window: NONE });
            }
            let (a, b) = (pts[1], pts[2]);
            let l = m.len[n];
            let dir = (a - b) * (T::one() / (a - b).norm());
            let s = Vec2::new((pts[0] - b).dot(dir), dir.cross(pts[0] - b));
            let to_root = Motion { c: dir.x, s: dir.y, t: b };
            self.push_window(Window { g: m.twin[n], a: T::zero(), b: l, s, sigma, src: p, root: h, parent: NONE, to_root })?;
        }
        Ok(())
    }

    /// Splits [lo, hi] on edge `g` by comparison against going through its endpoints.
    fn trim(&self, g: usize, s: Vec2<T>, sigma: T, mut lo: T, mut hi: T) -> Option<(T, T)> {
        if !self.opts.trim {
            return Some((lo, hi));
        }
        let m = self.m;
        let l = m.len[g];
        let d0 = self.dist[m.tail[g]];
        let d1 = self.dist[m.head(g)];
        let f = |x: T| sigma + (s - Vec2::new(x, T::zero())).norm();
        // Worse than the tail vertex on an initial segment.
        if d0.is_finite() {
            let worse = |x: T| f(x) - x > d0 + self.tol;
            if worse(hi) {
                return None;
            }
            if worse(lo) {
                let (mut x0, mut x1) = (lo, hi);
                for _ in 0..60 {
                    let mid = (x0 + x1) / T::two();
                    if worse(mid) {
                        x0 = mid;
                    } else {
                        x1 = mid;
                    }
                }
                lo = x0;
            }
        }
        // Worse than the head vertex on a final segment.
        if d1.is_finite() {
            let worse = |x: T| f(x) + x > d1 + l + self.tol;
            if worse(lo) {
                return None;
            }
            if worse(hi) {
                let (mut x0, mut x1) = (lo, hi);
                for _ in 0..60 {
                    let mid = (x0 + x1) / T::two();
                    if worse(mid) {
                        x1 = mid;
                    } else {
                        x0 = mid;
                    }
                }
                hi = x1;
            }
        }
        (hi > lo).then_some((lo, hi))
    }

    fn propagate(&mut self, id: usize) -> Result<()> {
        let w = self.windows[id].clone();
        let m = self.m;
        let g = w.g;
        let l = m.len[g];
        let pts = m.layout(g);
        if w.s.y >= T::zero() {
            return Ok(());
        }
        let eps_x = T::lit(1e-10) * l;
        let xi = intercept(w.s, pts[2]);
        if xi >= w.a - eps_x && xi <= w.b + eps_x {
            let leg = (pts[2] - w.s).norm();
            let q = w.to_root.apply(pts[2]);
            let phi = q.y.atan2(q.x).max(T::zero()).min(m.corner(w.root));
            self.record(Hit { vertex: m.tail[m.prev(g)], length: w.sigma + leg, src: w.src, root: w.root, phi, leg, window: id });
        }
        let sides = [(m.next[g], pts[1], pts[2]), (m.prev(g), pts[2], pts[0])];
        for (side, a, b) in sides {
            let (xa, xb) = (intercept(w.s, a), intercept(w.s, b));
            let lo = w.a.max(xa.min(xb));
            let hi = w.b.min(xa.max(xb));
            if hi - lo <= T::lit(1e-12) * l {
                continue;
            }
            let n0 = w.s.x * a.y - a.x * w.s.y;
            let n1 = w.s.x * (b.y - a.y) - (b.x - a.x) * w.s.y;
            let d0 = a.y - w.s.y;
            let d1 = b.y - a.y;
            let u = |c: T| ((c * d0 - n0) / (n1 - c * d1)).max(T::zero()).min(T::one());
            let (u0, u1) = (u(lo), u(hi));
            let (ulo, uhi) = (u0.min(u1), u0.max(u1));
            let ls = m.len[side];
            let (ca, cb) = ((T::one() - uhi) * ls, (T::one() - ulo) * ls);
            let dir = (a - b) * (T::one() / (a - b).norm());
            let s = Vec2::new((w.s - b).dot(dir), dir.cross(w.s - b));
            let child_g = m.twin[side];
            let Some((ca, cb)) = self.trim(child_g, s, w.sigma, ca, cb) else { continue };
            let to_root = w.to_root.then_inner(&Motion { c: dir.x, s: dir.y, t: b });
            self.push_window(Window { g: child_g, a: ca, b: cb, s, sigma: w.sigma, src: w.src, root: w.root, parent: id, to_root })?;
        }
        Ok(())
    }

    fn run(&mut self) -> Result<()> {
        self.emanate(self.source, T::zero())?;
        while let Some(ev) = self.heap.pop() {
            if ev.key > self.bound() + self.tol {
                break;
            }
            match ev.kind {
                EventKind::Window(id) => self.propagate(id)?,
                EventKind::Activate(v) => {
                    if !self.activated[v] {
                        let sigma = self.hits[self.best[v]].length;
                        self.emanate(v, sigma)?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Faces of the leg of a hit, as the tie-breaking key.
    fn leg_faces(&self, hit: &Hit<T>) -> Vec<usize> {
        let mut faces = Vec::new();
        let mut w = hit.window;
        while w != NONE {
            faces.push(self.windows[w].g / 3);
            w = self.windows[w].parent;
        }
        faces.push(hit.root / 3);
        faces.reverse();
        faces
    }

    fn path_faces(&self, hit: &Hit<T>) -> Vec<usize> {
        let mut f = if hit.src == self.source { Vec::new() } else { self.path_faces(&self.hits[self.best[hit.src]]) };
        f.extend(self.leg_faces(hit));
        f
    }

    fn traced_legs(&self, hit: &Hit<T>) -> Result<Vec<TracedLeg<T>>> {
        let mut legs = if hit.src == self.source { Vec::new() } else { self.traced_legs(&self.hits[self.best[hit.src]])? };
        let traced = self.m.trace(hit.root, hit.phi, hit.leg)?;
        if traced.last().map(|l| l.to) != Some(hit.vertex) {
            return Err(Error::TraceFailed(format!("segment does not reach vertex {}", hit.vertex)));
        }
        legs.extend(traced);
        Ok(legs)
    }

    /// Picks the shortest candidate for target `i`, breaking near ties by face sequence.
    fn select(&self, i: usize, tri: &Triangulation) -> Result<GeodesicPath<T>> {
        let target = self.targets[i];
        let mut cands: Vec<(T, Vec<usize>, usize)> =
            self.target_hits[i].iter().map(|&h| (self.hits[h].length, self.path_faces(&self.hits[h]), h)).collect();
        cands.sort_by(|x, y| x.0.f64().total_cmp(&y.0.f64()));
        let mut last_err = None;
        let mut start = 0;
        while start < cands.len() {
            let min = cands[start].0;
            let mut end = start;
            while end < cands.len() && cands[end].0 <= min + self.tol {
                end += 1;
            }
            let mut group: Vec<&(T, Vec<usize>, usize)> = cands[start..end].iter().collect();
            group.sort_by(|x, y| x.1.cmp(&y.1));
            for c in group {
                match self.traced_legs(&self.hits[c.2]) {
                    Ok(legs) => return Ok(path_from_legs(tri, self.source, target, c.0, legs)),
                    Err(e) => last_err = Some(e),
                }
            }
            start = end;
        }
        Err(last_err.unwrap_or(Error::NumericallyAmbiguous(format!("no path from {} to {target} found", self.source))))
    }
}

/// Turns traced legs (on a mesh sharing half-edge ids with `tri`) into a path.
pub(crate) fn path_from_legs<T: Real>(tri: &Triangulation, source: usize, target: usize, length: T, legs: Vec<TracedLeg<T>>) -> GeodesicPath<T> {
    let legs = legs
        .into_iter()
        .map(|l| GeodesicLeg {
            from: l.from,
            to: l.to,
            start_halfedge: l.start_h,
            start_angle: l.phi,
            end_halfedge: l.end_h,
            end_angle: l.end_phi,
            faces: l.faces.iter().map(|h| h / 3).collect(),
            crossings: l
                .crossings
                .iter()
                .map(|&(h, t)| {
                    let e = tri.edge(h);
                    let forward = tri.edge_halfedges(e)[0] == h;
                    Crossing { edge: e, t: if forward { t } else { T::one() - t } }
                })
                .collect(),
            length: l.length,
        })
        .collect();
    GeodesicPath { source, target, legs, length }
}

fn check_vertex<T: Real>(metric: &ConeMetric<T>, v: usize) -> Result<()> {
    if v >= metric.vertex_count() {
        return Err(Error::VertexOutOfRange { vertex: v, count: metric.vertex_count() });
    }
    Ok(())
}

fn exact<T: Real>() -> SearchOptions<T> {
    SearchOptions { trim: true, saddles: true, max_length: None }
}

/// Shortest paths from `source` to each of `targets`.
fn search_paths<T: Real>(metric: &ConeMetric<T>, source: usize, targets: &[usize]) -> Result<Vec<GeodesicPath<T>>> {
    let mesh = Mesh::from_metric(metric);
    let mut s = Search::new(&mesh, source, targets.to_vec(), exact());
    s.run()?;
    let tri = metric.triangulation();
    (0..targets.len()).map(|i| s.select(i, tri)).collect()
}

/// A globally shortest path from `v` to `w`.
///
/// The search always runs from the smaller index, so the result for `(w, v)`
/// is exactly the reverse of the result for `(v, w)`. Among paths of equal
/// length (within 1e-9 of the longest edge) the one with the
/// lexicographically smallest face sequence wins.
pub fn shortest_geodesic<T: Real>(metric: &ConeMetric<T>, v: usize, w: usize) -> Result<GeodesicPath<T>> {
    check_vertex(metric, v)?;
    check_vertex(metric, w)?;
    if v == w {
        return Err(Error::SameEndpoints(v));
    }
    let (a, b) = (v.min(w), v.max(w));
    let path = search_paths(metric, a, &[b])?.pop().expect("one target");
    Ok(if v == a { path } else { path.reversed() })
}

/// Geodesic distances between all essential vertices.
pub fn distance_matrix<T: Real>(metric: &ConeMetric<T>) -> Result<DistanceMatrix<T>> {
    let vertices = metric.essential_vertices();
    distances_between(metric, &vertices)
}

/// Geodesic distances between the given vertices, computed from the smaller index of each pair.
pub fn distances_between<T: Real>(metric: &ConeMetric<T>, vertices: &[usize]) -> Result<DistanceMatrix<T>> {
    let n = vertices.len();
    let mut d = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        check_vertex(metric, vertices[i])?;
        let later: Vec<usize> = (0..n).filter(|&j| vertices[j] > vertices[i]).collect();
        if later.is_empty() {
            continue;
        }
        let targets: Vec<usize> = later.iter().map(|&j| vertices[j]).collect();
        let paths = search_paths(metric, vertices[i], &targets)?;
        for (&j, p) in later.iter().zip(paths) {
            d[i][j] = p.length;
            d[j][i] = p.length;
        }
    }
    Ok(DistanceMatrix { vertices: vertices.to_vec(), distances: d })
}

/// All straight segments from `source` to `target` of length at most
/// `max_length`, passing through no vertex other than flat ones.
pub(crate) fn straight_segments<T: Real>(
    mesh: &Mesh<T>,
    source: usize,
    target: usize,
    max_length: T,
) -> Result<Vec<Vec<TracedLeg<T>>>> {
    let opts = SearchOptions { trim: false, saddles: false, max_length: Some(max_length) };
    let mut s = Search::new(mesh, source, vec![target], opts);
    s.run()?;
    let mut out: Vec<(T, Vec<TracedLeg<T>>)> = Vec::new();
    let mut ids = s.target_hits[0].clone();
    ids.sort_by(|&x, &y| s.hits[x].length.f64().total_cmp(&s.hits[y].length.f64()));
    for id in ids {
        let hit = &s.hits[id];
        let Ok(legs) = s.traced_legs(hit) else { continue };
        let dir = mesh.sig[hit.root] + hit.phi;
        let dup = out.iter().any(|(d, l)| {
            let dd = (*d - dir).abs();
            let dd = dd.min(mesh.theta[source] - dd);
            dd < T::lit(1e-7) && (l.iter().fold(T::zero(), |a, x| a + x.length) - hit.leg).abs() < s.tol * T::lit(10.0)
        });
        if !dup {
            out.push((dir, legs));
        }
    }
    Ok(out.into_iter().map(|(_, l)| l).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::double_polygon;
    use crate::forward::{canonicalize_polyhedron, iota};

    fn cube() -> ConeMetric<f64> {
        let mut v = Vec::new();
        for x in [0.0, 1.0] {
            for y in [0.0, 1.0] {
                for z in [0.0, 1.0] {
                    v.push([x, y, z]);
                }
            }
        }
        iota(&canonicalize_polyhedron(&v).unwrap()).unwrap()
    }

    #[test]
    fn cube_edge_and_diagonal() {
        let m = cube();
        let p = shortest_geodesic(&m, 0, 1).unwrap();
        assert!((p.length - 1.0).abs() < 1e-12);
        let p = shortest_geodesic(&m, 0, 7).unwrap();
        assert!((p.length - 5f64.sqrt()).abs() < 1e-12, "{}", p.length);
        assert_eq!(p.legs.len(), 1);
        for c in p.crossings() {
            assert!(c.t > 1e-9 && c.t < 1.0 - 1e-9);
        }
    }

    #[test]
    fn reversal_is_exact() {
        let m = cube();
        let a = shortest_geodesic(&m, 2, 5).unwrap();
        let b = shortest_geodesic(&m, 5, 2).unwrap();
        assert_eq!(a, b.reversed());
    }

    #[test]
    fn doubled_square_distances() {
        let m = double_polygon(&[[0.0f64, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
        let d = distance_matrix(&m).unwrap();
        assert!((d.distances[0][1] - 1.0).abs() < 1e-12);
        assert!((d.distances[0][2] - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn same_endpoints_rejected() {
        assert_eq!(shortest_geodesic(&cube(), 3, 3), Err(Error::SameEndpoints(3)));
    }
}
