//! The lens move: slit a shortest geodesic between two cone points and glue
//! in two copies of a triangle, and its inverse.
//!
//! Gluing a lens with base angles α, β along a slit from `v` to `w` adds
//! 2α to the angle at `v`, 2β at `w`, and creates a new cone point of
//! angle 2γ. Total curvature is unchanged.

use std::collections::HashSet;

use crate::geodesic::{distances_between, shortest_geodesic, straight_segments};
use crate::geom::{self, Vec2};
use crate::mesh::{wrap, Mesh};
use crate::{ConeMetric, Error, Real, Result};

/// A triangle with base `base` and sides `a` (at the `v` end) and `b`
/// (at the `w` end). The degenerate case `a + b = base` is the empty lens.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LensPatch<T> {
    pub base: T,
    pub a: T,
    pub b: T,
}

impl<T: Real> LensPatch<T> {
    pub fn new(base: T, a: T, b: T) -> Result<Self> {
        let ok = |x: T| x.is_finite() && x > T::zero();
        if !(ok(base) && ok(a) && ok(b)) {
            return Err(Error::InvalidPatch("lengths must be positive and finite".into()));
        }
        let slack = T::lit(1e-12) * (base + a + b);
        if a + b < base - slack || a + base < b - slack || b + base < a - slack {
            return Err(Error::InvalidPatch(format!("({}, {}, {}) violates the triangle inequality", base, a, b)));
        }
        Ok(Self { base, a, b })
    }

    /// The patch with the given base angles; `α + β < π`.
    pub fn from_base_angles(base: T, alpha: T, beta: T) -> Result<Self> {
        if !(alpha > T::zero() && beta > T::zero() && alpha + beta < T::PI()) {
            return Err(Error::InvalidPatch("base angles must be positive with sum below π".into()));
        }
        let s = (alpha + beta).sin();
        Self::new(base, base * beta.sin() / s, base * alpha.sin() / s)
    }

    /// The empty lens on a base of the given length.
    pub fn degenerate(base: T) -> Result<Self> {
        Self::new(base, base / T::two(), base / T::two())
    }

    pub fn is_degenerate(&self) -> bool {
        self.a + self.b - self.base <= T::lit(1e-12) * self.base
    }

    /// Angle at the `v` end of the base.
    pub fn alpha(&self) -> T {
        if self.is_degenerate() {
            return T::zero();
        }
        geom::corner_angle(self.a, self.base, self.b)
    }

    /// Angle at the `w` end of the base.
    pub fn beta(&self) -> T {
        if self.is_degenerate() {
            return T::zero();
        }
        geom::corner_angle(self.b, self.base, self.a)
    }

    /// Angle at the apex.
    pub fn gamma(&self) -> T {
        if self.is_degenerate() {
            return T::PI();
        }
        geom::corner_angle(self.a, self.b, self.base)
    }

    /// Apex position with the base from the origin to `(base, 0)`.
    fn apex(&self) -> Vec2<T> {
        let l = self.base;
        let x = (self.a * self.a - self.b * self.b + l * l) / (T::two() * l);
        let y = (self.a * self.a - x * x).max(T::zero()).sqrt();
        Vec2::new(x, y)
    }
}

fn check_vertex<T: Real>(m: &ConeMetric<T>, v: usize) -> Result<()> {
    if v >= m.vertex_count() {
        return Err(Error::VertexOutOfRange { vertex: v, count: m.vertex_count() });
    }
    Ok(())
}

/// Cuts along the shortest geodesic from `v` to `w` and glues in `patch`.
///
/// Vertices keep their indices; a nondegenerate patch adds its apex as the
/// last vertex. A degenerate patch returns the input unchanged.
pub fn cut_and_patch<T: Real>(metric: &ConeMetric<T>, v: usize, w: usize, patch: &LensPatch<T>) -> Result<ConeMetric<T>> {
    check_vertex(metric, v)?;
    check_vertex(metric, w)?;
    if v == w {
        return Err(Error::SameEndpoints(v));
    }
    for x in [v, w] {
        if !metric.is_essential(x) {
            return Err(Error::NotEssential(x));
        }
    }
    let g = shortest_geodesic(metric, v, w)?;
    if (patch.base - g.length).abs() > T::lit(1e-9) * g.length.max(T::one()) {
        return Err(Error::PatchBaseMismatch { patch: patch.base.f64(), geodesic: g.length.f64() });
    }
    let eps = T::lit(metric.config().angle_eps);
    for (x, add) in [(v, patch.alpha()), (w, patch.beta())] {
        let angle = metric.angle_sum(x)? + T::two() * add;
        if angle > T::tau() + eps {
            return Err(Error::AdmissibilityViolated { vertex: x, angle: angle.f64() });
        }
    }
    if patch.is_degenerate() {
        return Ok(metric.clone());
    }
    let mut mesh = Mesh::from_metric(metric);
    let n0 = metric.vertex_count();
    let first = &g.legs[0];
    let sigma = mesh.sig[first.start_halfedge] + first.start_angle;
    let chain = mesh.insert_segment(v, sigma, g.length, w)?;
    let apex = glue_lens(&mut mesh, &chain, patch);
    mesh.remove_new_flat_vertices(n0, &[apex])?;
    Ok(mesh.compact()?.metric)
}

/// Opens the chain into a slit and glues the doubled triangle into it.
/// Returns the apex vertex.
fn glue_lens<T: Real>(mesh: &mut Mesh<T>, chain: &[usize], patch: &LensPatch<T>) -> usize {
    let m = chain.len();
    let right: Vec<usize> = chain.iter().map(|&c| mesh.twin[c]).collect();
    let mut q = vec![mesh.tail[chain[0]]];
    let mut s = vec![T::zero()];
    for &c in chain {
        q.push(mesh.head(c));
        s.push(*s.last().unwrap() + mesh.len[c]);
    }
    // Rescale positions so the chain spans the base exactly.
    let scale = patch.base / s[m];
    for x in &mut s {
        *x = *x * scale;
    }
    // Interior chain vertices get a second copy for the right side.
    let mut qr = q.clone();
    for i in 1..m {
        let (fwd, back) = (chain[i], right[i - 1]);
        let xr = mesh.push_vertex();
        let mut h = back;
        loop {
            mesh.tail[h] = xr;
            let nh = mesh.twin[mesh.prev(h)];
            if nh == fwd {
                break;
            }
            h = nh;
        }
        mesh.out[xr] = back;
        mesh.out[q[i]] = fwd;
        qr[i] = xr;
    }
    let p = mesh.push_vertex();
    let apex = patch.apex();
    let d = |i: usize| (apex - Vec2::new(s[i], T::zero())).norm();
    let mut left_faces = Vec::new();
    let mut right_faces = Vec::new();
    for i in 1..=m {
        let (x, y, z) = (mesh.push_halfedge(q[i]), mesh.push_halfedge(q[i - 1]), mesh.push_halfedge(p));
        mesh.link(x, y, z);
        let l = mesh.len[chain[i - 1]];
        mesh.pair(x, chain[i - 1], l);
        left_faces.push((y, z));
        let (x, y, z) = (mesh.push_halfedge(qr[i - 1]), mesh.push_halfedge(qr[i]), mesh.push_halfedge(p));
        mesh.link(x, y, z);
        let l = mesh.len[right[i - 1]];
        mesh.pair(x, right[i - 1], l);
        right_faces.push((y, z));
    }
    for i in 1..m {
        mesh.pair(left_faces[i - 1].1, left_faces[i].0, d(i));
        mesh.pair(right_faces[i - 1].0, right_faces[i].1, d(i));
    }
    mesh.pair(left_faces[0].0, right_faces[0].1, patch.a);
    mesh.pair(left_faces[m - 1].1, right_faces[m - 1].0, patch.b);
    mesh.out[p] = left_faces[0].1;
    let mut touched: Vec<usize> = q.iter().chain(&qr[1..m]).copied().collect();
    touched.push(p);
    for x in touched {
        mesh.reset_signposts(x);
    }
    p
}

/// Result of removing a lens.
#[derive(Clone, Debug)]
pub struct Excision<T> {
    pub metric: ConeMetric<T>,
    pub patch: LensPatch<T>,
    /// Indices of the base endpoints in `metric`. The apex is gone, so
    /// later vertices move down.
    pub v: usize,
    pub w: usize,
}

/// Finds a lens with apex `p` over the base endpoints `v`, `w`: two copies
/// of a flat triangle glued along the sides from `p`. Removes it and closes
/// the slit, so that `cut_and_patch(result, v, w, patch)` gives back the
/// input.
pub fn excise_lens<T: Real>(metric: &ConeMetric<T>, p: usize, v: usize, w: usize) -> Result<Excision<T>> {
    for x in [p, v, w] {
        check_vertex(metric, x)?;
    }
    if p == v || p == w || v == w || !metric.is_essential(p) {
        return Err(Error::NoLensFound(p));
    }
    let mesh = Mesh::from_metric(metric);
    let tol = T::lit(1e-9) * metric.max_length().max(T::one());
    let sides = |x: usize| -> Result<Vec<(T, T)>> {
        let d = shortest_geodesic(metric, p, x)?.length;
        let segs = straight_segments(&mesh, p, x, d + tol)?;
        Ok(segs
            .iter()
            .map(|legs| {
                let len = legs.iter().fold(T::zero(), |a, l| a + l.length);
                (wrap(mesh.sig[legs[0].start_h] + legs[0].phi, mesh.theta[p]), len)
            })
            .collect())
    };
    let to_v = sides(v)?;
    let to_w = sides(w)?;
    let theta = mesh.theta[p];
    let half = theta / T::two();
    for &(sv, a) in &to_v {
        for &(sw, b) in &to_w {
            let gap = wrap(sw - sv, theta);
            if (gap - half).abs() > T::lit(1e-7) {
                continue;
            }
            if let Ok(ex) = remove_lens(metric, &mesh, p, v, w, (sv, a), (sw, b)) {
                return Ok(ex);
            }
        }
    }
    Err(Error::NoLensFound(p))
}

fn remove_lens<T: Real>(
    metric: &ConeMetric<T>,
    mesh0: &Mesh<T>,
    p: usize,
    v: usize,
    w: usize,
    (sv, a): (T, T),
    (sw, b): (T, T),
) -> Result<Excision<T>> {
    let fail = || Error::NoLensFound(p);
    let n0 = metric.vertex_count();
    let gamma = mesh0.theta[p] / T::two();
    let base = (a * a + b * b - T::two() * a * b * gamma.cos()).max(T::zero()).sqrt();
    let alpha = geom::corner_angle(a, base, b);
    let patch = LensPatch::new(base, a, b)?;
    let mut mesh = mesh0.clone();
    let c1 = mesh.insert_segment(p, sv, a, v)?;
    let c2 = mesh.insert_segment(p, sw, b, w)?;
    let back_v = mesh.sig[mesh.twin[*c1.last().unwrap()]];
    let mut b1 = mesh.insert_segment(v, back_v - alpha, base, w)?;
    let mut b2 = mesh.insert_segment(v, back_v + alpha, base, w)?;

    // Common subdivision of the two bases.
    let positions = |mesh: &Mesh<T>, chain: &[usize]| {
        let mut acc = T::zero();
        let mut out = Vec::new();
        for &h in &chain[..chain.len() - 1] {
            acc = acc + mesh.len[h];
            out.push(acc);
        }
        out
    };
    let ptol = T::lit(1e-9) * base.max(T::one());
    for (from, into) in [(0usize, 1usize), (1, 0)] {
        let src = positions(&mesh, if from == 0 { &b1 } else { &b2 });
        for s in src {
            let chain = if into == 0 { &mut b1 } else { &mut b2 };
            let mut acc = T::zero();
            for i in 0..chain.len() {
                let h = chain[i];
                let l = mesh.len[h];
                if s > acc + ptol && s < acc + l - ptol {
                    let g = mesh.twin[h];
                    mesh.split_edge(h, (s - acc) / l);
                    let second = mesh.twin[g];
                    chain.insert(i + 1, second);
                    break;
                }
                acc = acc + l;
            }
        }
    }
    if b1.len() != b2.len() {
        return Err(fail());
    }

    // The two triangles, found by flooding from the apex.
    let boundary: HashSet<usize> = c1
        .iter()
        .chain(&c2)
        .chain(&b1)
        .chain(&b2)
        .flat_map(|&h| [h, mesh.twin[h]])
        .collect();
    let flood = |mesh: &Mesh<T>, start: usize| {
        let mut seen = HashSet::new();
        let mut stack = vec![start];
        let mut faces = Vec::new();
        while let Some(h) = stack.pop() {
            let key = h.min(mesh.next[h]).min(mesh.prev(h));
            if !seen.insert(key) {
                continue;
            }
            faces.push(key);
            for x in [h, mesh.next[h], mesh.prev(h)] {
                if !boundary.contains(&x) {
                    stack.push(mesh.twin[x]);
                }
            }
            if faces.len() > mesh.next.len() {
                break;
            }
        }
        faces
    };
    let (h1, _) = mesh.corner_at(p, sv + gamma / T::two());
    let (h2, _) = mesh.corner_at(p, sw + gamma / T::two());
    let r1 = flood(&mesh, h1);
    let r2 = flood(&mesh, h2);
    let area = |faces: &[usize]| {
        faces.iter().fold(T::zero(), |acc, &f| {
            acc + geom::triangle_area(mesh.len[f], mesh.len[mesh.next[f]], mesh.len[mesh.prev(f)])
        })
    };
    let expected = a * b * gamma.sin() / T::two();
    let atol = T::lit(1e-8) * expected.max(T::lit(1e-300)) + T::lit(1e-12);
    if (area(&r1) - expected).abs() > atol || (area(&r2) - expected).abs() > atol {
        return Err(fail());
    }
    let region: HashSet<usize> = r1.iter().chain(&r2).copied().collect();
    if region.len() != r1.len() + r2.len() {
        return Err(fail());
    }
    // Everything strictly inside the lens must be flat, except the apex.
    let rim: HashSet<usize> = b1.iter().chain(&b2).flat_map(|&h| [mesh.tail[h], mesh.head(h)]).collect();
    let mut inside = HashSet::new();
    for &f in &region {
        for x in [f, mesh.next[f], mesh.prev(f)] {
            let t = mesh.tail[x];
            if !rim.contains(&t) {
                inside.insert(t);
            }
        }
    }
    if inside.iter().any(|&x| x != p && !mesh.is_flat(x)) {
        return Err(fail());
    }

    // Cut the lens out and zip the two bases together.
    for &f in &region {
        for x in [f, mesh.next[f], mesh.prev(f)] {
            mesh.alive[x] = false;
        }
    }
    for &x in &inside {
        mesh.vert_alive[x] = false;
    }
    let mut merged = vec![v, w];
    for i in 0..b1.len() {
        let (o1, o2) = (mesh.twin[b1[i]], b2[i]);
        let l = mesh.len[o2];
        mesh.pair(o1, o2, l);
        if i + 1 < b1.len() {
            let (x1, x2) = (mesh.head(b1[i]), mesh.head(b2[i]));
            let (keep, drop) = if x2 < x1 { (x2, x1) } else { (x1, x2) };
            for h in 0..mesh.next.len() {
                if mesh.alive[h] && mesh.tail[h] == drop {
                    mesh.tail[h] = keep;
                }
            }
            mesh.vert_alive[drop] = false;
            merged.push(keep);
        }
    }
    mesh.repair_out(&merged);
    for &x in &merged {
        mesh.reset_signposts(x);
    }
    mesh.remove_new_flat_vertices(n0, &[])?;
    let c = mesh.compact()?;
    let index = |x: usize| c.new_to_old.iter().position(|&o| o == x).ok_or_else(fail);
    let (nv, nw) = (index(v)?, index(w)?);
    // The move is only invertible when the resealed base is shortest.
    let d = shortest_geodesic(&c.metric, nv, nw)?.length;
    if (d - base).abs() > T::lit(1e-9) * base.max(T::one()) {
        return Err(fail());
    }
    // With several shortest cuts the inverse move may pick another one, so
    // confirm that it rebuilds the input.
    let cuts = straight_segments(&Mesh::from_metric(&c.metric), nv, nw, base + T::lit(1e-9) * base.max(T::one()))?;
    if cuts.len() > 1 {
        let back = cut_and_patch(&c.metric, nv, nw, &patch)?;
        let ess = metric.essential_vertices();
        let mapped = ess
            .iter()
            .map(|&x| if x == p { Ok(back.vertex_count() - 1) } else { index(x) })
            .collect::<Result<Vec<_>>>()?;
        let (d0, d1) = (distances_between(metric, &ess)?, distances_between(&back, &mapped)?);
        let tol = T::lit(1e-8) * metric.max_length().max(T::one());
        let agree = d0.distances.iter().flatten().zip(d1.distances.iter().flatten()).all(|(x, y)| (*x - *y).abs() <= tol);
        if !agree {
            return Err(fail());
        }
    }
    Ok(Excision { v: nv, w: nw, metric: c.metric, patch })
}
