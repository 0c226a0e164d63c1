//! Mutable intrinsic triangulation used by retriangulation and surgery.
//!
//! Every half-edge carries an angular coordinate ("signpost") at its tail,
//! measured counter-clockwise from a per-vertex reference direction in
//! `[0, θ_v)`. Flips, splits and vertex removals keep the intrinsic geometry
//! and update signposts, so straight lines can be traced and directions
//! compared between triangulations of the same surface.

use crate::geom::{self, Vec2};
use crate::{Config, ConeMetric, Error, Real, Result, Triangulation};

pub(crate) const NONE: usize = usize::MAX;

#[derive(Clone, Debug)]
pub(crate) struct Mesh<T> {
    pub next: Vec<usize>,
    pub twin: Vec<usize>,
    pub tail: Vec<usize>,
    pub len: Vec<T>,
    pub sig: Vec<T>,
    pub alive: Vec<bool>,
    pub out: Vec<usize>,
    pub vert_alive: Vec<bool>,
    pub theta: Vec<T>,
    pub config: Config,
}

/// Result of converting a mesh back into a validated metric.
pub(crate) struct Compacted<T> {
    pub metric: ConeMetric<T>,
    /// New vertex index to mesh vertex index.
    pub new_to_old: Vec<usize>,
    /// Signpost of every half-edge of the new metric.
    pub sig: Vec<T>,
}

/// One straight piece of a traced line, between two vertices.
#[derive(Clone, Debug)]
pub(crate) struct TracedLeg<T> {
    pub from: usize,
    pub to: usize,
    pub start_h: usize,
    pub phi: T,
    pub end_h: usize,
    pub end_phi: T,
    /// Face (as a half-edge of it) entered at each step, starting with the first face.
    pub faces: Vec<usize>,
    /// Crossed half-edge (in the face being left) and parameter along it.
    pub crossings: Vec<(usize, T)>,
    pub length: T,
}

pub(crate) fn wrap<T: Real>(x: T, period: T) -> T {
    let r = x - (x / period).floor() * period;
    if r >= period || r < T::zero() {
        T::zero()
    } else {
        r
    }
}

impl<T: Real> Mesh<T> {
    pub fn from_metric(m: &ConeMetric<T>) -> Self {
        let t = m.triangulation();
        let nh = t.halfedge_count();
        let nv = t.vertex_count();
        let mut mesh = Self {
            next: (0..nh).map(|h| t.next(h)).collect(),
            twin: (0..nh).map(|h| t.twin(h)).collect(),
            tail: (0..nh).map(|h| t.tail(h)).collect(),
            len: (0..nh).map(|h| m.halfedge_length(h)).collect(),
            sig: vec![T::zero(); nh],
            alive: vec![true; nh],
            out: vec![NONE; nv],
            vert_alive: vec![true; nv],
            theta: vec![T::zero(); nv],
            config: *m.config(),
        };
        for v in 0..nv {
            mesh.out[v] = t.outgoing(v).next().expect("vertex has a corner");
            mesh.reset_signposts(v);
        }
        mesh
    }

    /// Like `from_metric`, but with signposts carried over from elsewhere.
    pub fn with_signposts(m: &ConeMetric<T>, sig: &[T]) -> Self {
        let mut mesh = Self::from_metric(m);
        mesh.sig.copy_from_slice(sig);
        mesh
    }

    /// Recomputes θ_v and lays out signposts starting from `out[v]`.
    pub fn reset_signposts(&mut self, v: usize) {
        let hs: Vec<usize> = self.outgoing(v).collect();
        let mut acc = T::zero();
        for h in hs {
            self.sig[h] = acc;
            acc = acc + self.corner(h);
        }
        self.theta[v] = acc;
    }

    #[inline]
    pub fn prev(&self, h: usize) -> usize {
        self.next[self.next[h]]
    }

    #[inline]
    pub fn head(&self, h: usize) -> usize {
        self.tail[self.next[h]]
    }

    pub fn corner(&self, h: usize) -> T {
        geom::corner_angle(self.len[h], self.len[self.prev(h)], self.len[self.next[h]])
    }

    /// Face of `h` with `tail(h)` at the origin and `head(h)` on the positive x axis.
    pub fn layout(&self, h: usize) -> [Vec2<T>; 3] {
        geom::layout(self.len[h], self.len[self.next[h]], self.len[self.prev(h)])
    }

    /// Outgoing half-edges of `v`, counter-clockwise from `out[v]`.
    pub fn outgoing(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let start = self.out[v];
        let mut cur = Some(start);
        let cap = self.next.len();
        std::iter::from_fn(move || {
            let h = cur?;
            let t = self.twin[self.prev(h)];
            cur = if t == start || t == NONE { None } else { Some(t) };
            Some(h)
        })
        .take(cap)
    }

    pub fn is_flat(&self, v: usize) -> bool {
        (self.theta[v] - T::tau()).abs() <= T::lit(self.config.angle_eps)
    }

    pub fn push_halfedge(&mut self, tail: usize) -> usize {
        self.next.push(NONE);
        self.twin.push(NONE);
        self.tail.push(tail);
        self.len.push(T::zero());
        self.sig.push(T::zero());
        self.alive.push(true);
        self.next.len() - 1
    }

    pub fn push_vertex(&mut self) -> usize {
        self.out.push(NONE);
        self.vert_alive.push(true);
        self.theta.push(T::tau());
        self.out.len() - 1
    }

    pub fn link(&mut self, a: usize, b: usize, c: usize) {
        self.next[a] = b;
        self.next[b] = c;
        self.next[c] = a;
    }

    pub fn pair(&mut self, a: usize, b: usize, l: T) {
        self.twin[a] = b;
        self.twin[b] = a;
        self.len[a] = l;
        self.len[b] = l;
    }

    pub fn set_sig(&mut self, h: usize, s: T) {
        let v = self.tail[h];
        self.sig[h] = wrap(s, self.theta[v]);
    }

    /// Splits the edge of `h` at parameter `t` from `tail(h)`; returns the new vertex.
    pub fn split_edge(&mut self, h: usize, t: T) -> usize {
        let g = self.twin[h];
        let (n, p) = (self.next[h], self.prev(h));
        let (gn, gp) = (self.next[g], self.prev(g));
        let (x, y, z, w) = (self.tail[h], self.tail[g], self.tail[p], self.tail[gp]);
        let l = self.len[h];
        let [_, _, pz] = self.layout(h);
        let [_, _, pw] = self.layout(g);
        let mz = (pz - Vec2::new(l * t, T::zero())).norm();
        let mw = (pw - Vec2::new(l * (T::one() - t), T::zero())).norm();

        let m = self.push_vertex();
        let a1 = self.push_halfedge(m);
        let b1 = self.push_halfedge(m);
        let c1 = self.push_halfedge(z);
        let a2 = self.push_halfedge(m);
        let b2 = self.push_halfedge(m);
        let c2 = self.push_halfedge(w);
        let _ = (x, y);

        self.link(h, a1, p);
        self.link(b1, n, c1);
        self.link(g, a2, gp);
        self.link(b2, gn, c2);
        self.pair(h, b2, l * t);
        self.pair(g, b1, l * (T::one() - t));
        self.pair(a1, c1, mz);
        self.pair(a2, c2, mw);
        self.out[m] = b1;

        let s_c1 = self.sig[p] + self.corner(p);
        self.set_sig(c1, s_c1);
        let s_c2 = self.sig[gp] + self.corner(gp);
        self.set_sig(c2, s_c2);
        self.reset_signposts(m);
        m
    }

    /// Inserts a vertex at `point`, given in the layout of `h`'s face.
    pub fn insert_in_face(&mut self, h: usize, point: Vec2<T>) -> usize {
        let (n, p) = (self.next[h], self.prev(h));
        let (a, b, c) = (self.tail[h], self.tail[n], self.tail[p]);
        let [pa, pb, pc] = self.layout(h);
        let m = self.push_vertex();
        let bm = self.push_halfedge(b);
        let ma = self.push_halfedge(m);
        let cm = self.push_halfedge(c);
        let mb = self.push_halfedge(m);
        let am = self.push_halfedge(a);
        let mc = self.push_halfedge(m);
        self.link(h, bm, ma);
        self.link(n, cm, mb);
        self.link(p, am, mc);
        self.pair(am, ma, (point - pa).norm());
        self.pair(bm, mb, (point - pb).norm());
        self.pair(cm, mc, (point - pc).norm());
        self.out[m] = ma;
        let s = self.sig[h] + self.corner(h);
        self.set_sig(am, s);
        let s = self.sig[n] + self.corner(n);
        self.set_sig(bm, s);
        let s = self.sig[p] + self.corner(p);
        self.set_sig(cm, s);
        self.reset_signposts(m);
        m
    }

    /// Convexity margin of the quadrilateral around the edge of `h`: the
    /// smaller of `π - angle` at the two endpoints of the edge.
    pub fn flip_margin(&self, h: usize) -> Option<T> {
        let g = self.twin[h];
        if g == NONE || self.next[h] == g || self.next[g] == h || self.prev(h) == g {
            return None;
        }
        if self.face_of(h) == self.face_of(g) {
            return None;
        }
        let at_u = self.corner(h) + self.corner(self.next[g]);
        let at_v = self.corner(g) + self.corner(self.next[h]);
        Some((T::PI() - at_u).min(T::PI() - at_v))
    }

    fn face_of(&self, h: usize) -> usize {
        h.min(self.next[h]).min(self.prev(h))
    }

    /// Flips the edge of `h` when its quadrilateral is strictly convex.
    pub fn flip(&mut self, h: usize) -> Result<()> {
        let tol = T::lit(1e-10);
        match self.flip_margin(h) {
            Some(m) if m > tol => {}
            _ => return Err(Error::NotFlippable(h)),
        }
        let g = self.twin[h];
        let (hn, hp) = (self.next[h], self.prev(h));
        let (gn, gp) = (self.next[g], self.prev(g));
        let (u, v, x, y) = (self.tail[h], self.tail[g], self.tail[hp], self.tail[gp]);
        let l = self.len[h];
        let [_, _, px] = self.layout(h);
        let py = geom::place_apex(Vec2::zero(), Vec2::new(l, T::zero()), self.len[gn], self.len[gp], false);
        let d = (px - py).norm();

        self.tail[h] = x;
        self.tail[g] = y;
        self.link(hp, gn, g);
        self.link(gp, hn, h);
        self.len[h] = d;
        self.len[g] = d;
        if self.out[u] == h {
            self.out[u] = gn;
        }
        if self.out[v] == g {
            self.out[v] = hn;
        }
        let s = self.sig[hp] + self.corner(hp);
        self.set_sig(h, s);
        let s = self.sig[gp] + self.corner(gp);
        self.set_sig(g, s);
        Ok(())
    }

    /// Removes a flat vertex and triangulates the hole by ear clipping.
    ///
    /// The star of a flat vertex unfolds to a planar polygon that is
    /// star-shaped around it, so ears always exist; collinear boundary
    /// points are never chosen as ear tips.
    pub fn remove_flat_vertex(&mut self, v: usize) -> Result<()> {
        if !self.is_flat(v) {
            return Err(Error::NumericallyAmbiguous(format!("vertex {v} is not flat")));
        }
        let spokes: Vec<usize> = self.outgoing(v).collect();
        if spokes.iter().any(|&h| self.head(h) == v) {
            return Err(Error::NumericallyAmbiguous(format!("flat vertex {v} carries a loop")));
        }
        let mut ring: Vec<(usize, Vec2<T>)> = Vec::with_capacity(spokes.len());
        let mut angle = T::zero();
        for &h in &spokes {
            ring.push((self.next[h], Vec2::polar(self.len[h], angle)));
            angle = angle + self.corner(h);
        }
        for &h in &spokes {
            let p = self.prev(h);
            self.alive[h] = false;
            self.alive[p] = false;
        }
        self.vert_alive[v] = false;
        let scale = ring.iter().fold(T::zero(), |m, r| m.max(r.1.norm()));
        let eps = T::lit(1e-12) * scale * scale;
        while ring.len() > 3 {
            let k = ring.len();
            let mut best: Option<(T, usize)> = None;
            for j in 0..k {
                let (a, b, c) = (ring[(j + k - 1) % k].1, ring[j].1, ring[(j + 1) % k].1);
                if (b - a).cross(c - b) <= eps {
                    continue;
                }
                let blocked = (0..k).filter(|&m| m != j && m != (j + 1) % k && m != (j + k - 1) % k).any(|m| {
                    let q = ring[m].1;
                    (b - a).cross(q - a) >= -eps && (c - b).cross(q - b) >= -eps && (a - c).cross(q - c) >= -eps
                });
                if blocked {
                    continue;
                }
                let quality = geom::corner_angle((c - a).norm(), (b - a).norm(), (c - b).norm())
                    .min(geom::corner_angle((b - c).norm(), (a - c).norm(), (a - b).norm()));
                if best.map_or(true, |(q, _)| quality > q) {
                    best = Some((quality, j));
                }
            }
            let (_, j) = best.ok_or_else(|| Error::NumericallyAmbiguous(format!("no ear around flat vertex {v}")))?;
            let i = (j + k - 1) % k;
            let l = (j + 1) % k;
            let (ri, rj) = (ring[i].0, ring[j].0);
            let (a, b, c) = (ring[i].1, ring[j].1, ring[l].1);
            let (ta, tc) = (self.tail[ri], self.tail[ring[l].0]);
            let d = self.push_halfedge(tc);
            let dt = self.push_halfedge(ta);
            self.pair(d, dt, (c - a).norm());
            self.link(ri, rj, d);
            let at_a = wrap((c - a).angle() - (b - a).angle(), T::tau());
            let at_c = wrap((b - c).angle() - (a - c).angle(), T::tau());
            let s = self.sig[ri] + at_a;
            self.set_sig(dt, s);
            let s = self.sig[self.twin[rj]] - at_c;
            self.set_sig(d, s);
            ring[i].0 = dt;
            ring.remove(j);
        }
        self.link(ring[0].0, ring[1].0, ring[2].0);
        for &(h, _) in &ring {
            let x = self.tail[h];
            if !self.alive[self.out[x]] {
                self.out[x] = h;
            }
        }
        // Ear tips lose the spoke their `out` may have pointed at.
        for x in 0..self.out.len() {
            if self.vert_alive[x] && self.out[x] != NONE && !self.alive[self.out[x]] {
                let h = self.twin[self.out[x]];
                self.out[x] = self.next[h];
            }
        }
        Ok(())
    }

    /// Corner of `v` containing the angular coordinate `sigma`, with the
    /// offset inside it.
    pub fn corner_at(&self, v: usize, sigma: T) -> (usize, T) {
        let theta = self.theta[v];
        let sigma = wrap(sigma, theta);
        let tol = T::lit(1e-12);
        let mut best: Option<(T, usize, T)> = None;
        for h in self.outgoing(v) {
            let phi = wrap(sigma - self.sig[h], theta);
            let c = self.corner(h);
            if phi <= c + tol {
                return (h, phi.min(c));
            }
            let miss = (phi - c).min(theta - phi);
            if best.map_or(true, |(b, _, _)| miss < b) {
                let clamped = if theta - phi < phi - c { T::zero() } else { c };
                best = Some((miss, h, clamped));
            }
        }
        let (_, h, phi) = best.expect("vertex has corners");
        (h, phi)
    }

    /// Traces a straight line from `tail(start_h)` at angle `phi` inside that
    /// corner for the given length. Flat vertices hit on the way split the
    /// line into legs; the line must end on a vertex.
    pub fn trace(&self, start_h: usize, phi: T, length: T) -> Result<Vec<TracedLeg<T>>> {
        let scale = length.max(T::one());
        let tol_len = T::lit(1e-9) * scale;
        let tol_t = T::lit(1e-10);
        let mut legs = Vec::new();
        let mut from = self.tail[start_h];
        let mut h0 = start_h;
        let mut p = Vec2::zero();
        let mut d = Vec2::polar(T::one(), phi);
        let mut entry: Option<usize> = None;
        let mut remaining = length;
        let mut leg = TracedLeg {
            from,
            to: NONE,
            start_h,
            phi,
            end_h: NONE,
            end_phi: T::zero(),
            faces: vec![start_h],
            crossings: Vec::new(),
            length: T::zero(),
        };
        let mut travelled = T::zero();
        for _ in 0..(4 * self.next.len() + 16) * 64 {
            let hs = [h0, self.next[h0], self.prev(h0)];
            let pts = self.layout(h0);
            // Exit candidates: sides not containing the current point.
            let mut exit: Option<(usize, T, T)> = None;
            for k in 0..3 {
                if Some(hs[k]) == entry {
                    continue;
                }
                if entry.is_none() && k != 1 {
                    continue;
                }
                if let Some((t, r)) = geom::line_param(p, d, pts[k], pts[(k + 1) % 3]) {
                    if r > tol_len * T::lit(1e-3) && t >= -tol_t && t <= T::one() + tol_t {
                        if exit.map_or(true, |(_, _, br)| r < br) {
                            exit = Some((k, t.max(T::zero()).min(T::one()), r));
                        }
                    }
                }
            }
            let (k, t, r) = exit.ok_or_else(|| Error::TraceFailed("no exit edge".into()))?;
            let end_here = remaining <= r + tol_len;
            let near = if t <= tol_t {
                Some(k)
            } else if t >= T::one() - tol_t {
                Some((k + 1) % 3)
            } else {
                None
            };
            if end_here || near.is_some() {
                let target_pt = p + d * remaining.min(r);
                // Closest corner of the face to the stopping point.
                let (ci, dist) = (0..3)
                    .map(|i| (i, (pts[i] - target_pt).norm()))
                    .fold((0, T::infinity()), |a, b| if b.1 < a.1 { b } else { a });
                let at_vertex = if let Some(c) = near { Some(c) } else if dist <= T::lit(1e-7) * scale { Some(ci) } else { None };
                let c = match at_vertex {
                    Some(c) => c,
                    None => return Err(Error::TraceFailed("line ends inside a face".into())),
                };
                let x = self.tail[hs[c]];
                let step = (pts[c] - p).norm();
                travelled = travelled + step;
                remaining = remaining - step;
                // Arrival direction at x, as an offset inside the corner hs[c].
                let back = (p - pts[c]).angle();
                let base = (pts[(c + 1) % 3] - pts[c]).angle();
                let psi = wrap(back - base, T::tau()).min(self.corner(hs[c]));
                leg.to = x;
                leg.end_h = hs[c];
                leg.end_phi = psi;
                leg.length = travelled;
                let done = remaining <= tol_len;
                legs.push(leg.clone());
                if done {
                    return Ok(legs);
                }
                if !self.is_flat(x) {
                    return Err(Error::TraceFailed(format!("line passes through cone point {x}")));
                }
                let sigma = self.sig[hs[c]] + psi + self.theta[x] / T::two();
                let (nh, nphi) = self.corner_at(x, sigma);
                from = x;
                h0 = nh;
                p = Vec2::zero();
                d = Vec2::polar(T::one(), nphi);
                entry = None;
                travelled = T::zero();
                leg = TracedLeg {
                    from,
                    to: NONE,
                    start_h: nh,
                    phi: nphi,
                    end_h: NONE,
                    end_phi: T::zero(),
                    faces: vec![nh],
                    crossings: Vec::new(),
                    length: T::zero(),
                };
                continue;
            }
            // Cross side k into the neighbouring face.
            let hc = hs[k];
            let ht = self.twin[hc];
            if ht == NONE {
                return Err(Error::TraceFailed("line leaves the surface".into()));
            }
            leg.crossings.push((hc, t));
            travelled = travelled + r;
            remaining = remaining - r;
            let e = pts[(k + 1) % 3] - pts[k];
            let u = e * (T::one() / e.norm());
            let along = d.dot(u);
            let normal = d.dot(u.perp());
            let l = self.len[ht];
            p = Vec2::new((T::one() - t) * l, T::zero());
            d = Vec2::new(-along, -normal);
            h0 = ht;
            entry = Some(ht);
            leg.faces.push(ht);
        }
        Err(Error::TraceFailed("trace did not terminate".into()))
    }

    /// Makes the straight segment from `start` in direction `sigma` an edge
    /// path, splitting every edge it crosses. Returns the chain of
    /// half-edges from `start` to `target`.
    pub fn insert_segment(&mut self, start: usize, sigma: T, length: T, target: usize) -> Result<Vec<usize>> {
        let tol = T::lit(1e-9) * length.max(T::one());
        let ang = T::lit(1e-10);
        let t_tol = T::lit(1e-9);
        let mut chain = Vec::new();
        let (mut c, mut sigma, mut remaining) = (start, sigma, length);
        for _ in 0..4 * self.next.len() + 16 {
            let (h, phi) = self.corner_at(c, sigma);
            let corner = self.corner(h);
            let mut along = if phi <= ang {
                Some(h)
            } else if phi >= corner - ang {
                Some(self.twin[self.prev(h)])
            } else {
                None
            };
            let mut split = None;
            if along.is_none() {
                let pts = self.layout(h);
                let (t, r) = geom::line_param(Vec2::zero(), Vec2::polar(T::one(), phi), pts[1], pts[2])
                    .ok_or_else(|| Error::TraceFailed("segment misses the opposite edge".into()))?;
                if t <= t_tol {
                    along = Some(h);
                } else if t >= T::one() - t_tol {
                    along = Some(self.twin[self.prev(h)]);
                } else if remaining <= r + tol {
                    return Err(Error::TraceFailed("segment ends inside a face".into()));
                } else {
                    split = Some((self.next[h], t));
                }
            }
            let step = match (along, split) {
                (Some(e), _) => e,
                (None, Some((e, t))) => {
                    let m = self.split_edge(e, t);
                    self.outgoing(c).find(|&x| self.head(x) == m).expect("split connects to the opposite corner")
                }
                _ => unreachable!(),
            };
            let l = self.len[step];
            if l > remaining + tol {
                return Err(Error::TraceFailed("segment ends inside an edge".into()));
            }
            chain.push(step);
            remaining = remaining - l;
            c = self.head(step);
            if remaining <= tol {
                if c != target {
                    return Err(Error::TraceFailed(format!("segment ends at {c}, not {target}")));
                }
                return Ok(chain);
            }
            if !self.is_flat(c) {
                return Err(Error::TraceFailed(format!("segment passes through cone point {c}")));
            }
            let back = self.twin[step];
            sigma = self.sig[back] + self.theta[c] / T::two();
        }
        Err(Error::TraceFailed("segment insertion did not terminate".into()))
    }

    /// Removes every live flat vertex with index at least `from`, except `keep`.
    pub fn remove_new_flat_vertices(&mut self, from: usize, keep: &[usize]) -> Result<()> {
        let mut pending: Vec<usize> =
            (from..self.out.len()).filter(|&x| self.vert_alive[x] && !keep.contains(&x)).collect();
        while !pending.is_empty() {
            let before = pending.len();
            let mut failed = Vec::new();
            let mut last_err = None;
            for x in pending {
                if let Err(e) = self.remove_flat_vertex(x) {
                    failed.push(x);
                    last_err = Some(e);
                }
            }
            if failed.len() == before {
                return Err(last_err.expect("at least one failure"));
            }
            pending = failed;
        }
        Ok(())
    }

    /// Points `out[x]` at some live outgoing half-edge of `x`.
    pub fn repair_out(&mut self, xs: &[usize]) {
        for &x in xs {
            if self.out[x] == NONE || !self.alive[self.out[x]] || self.tail[self.out[x]] != x {
                if let Some(h) = (0..self.next.len()).find(|&h| self.alive[h] && self.tail[h] == x) {
                    self.out[x] = h;
                }
            }
        }
    }

    /// Converts the live part of the mesh into a validated metric.
    pub fn compact(&self) -> Result<Compacted<T>> {
        let mut old_to_new = vec![NONE; self.out.len()];
        let mut new_to_old = Vec::new();
        for v in 0..self.out.len() {
            if self.vert_alive[v] {
                old_to_new[v] = new_to_old.len();
                new_to_old.push(v);
            }
        }
        let mut h_new = vec![NONE; self.next.len()];
        let mut order = Vec::new();
        let mut tris = Vec::new();
        for h in 0..self.next.len() {
            if !self.alive[h] || h_new[h] != NONE {
                continue;
            }
            let f = tris.len();
            let cyc = [h, self.next[h], self.prev(h)];
            let mut tri = [0; 3];
            for (i, &c) in cyc.iter().enumerate() {
                h_new[c] = 3 * f + i;
                order.push(c);
                let v = old_to_new[self.tail[c]];
                if v == NONE {
                    return Err(Error::NumericallyAmbiguous("face uses a removed vertex".into()));
                }
                tri[i] = v;
            }
            tris.push(tri);
        }
        let mut twin = vec![0; order.len()];
        for (i, &h) in order.iter().enumerate() {
            let t = self.twin[h];
            if t == NONE || h_new[t] == NONE {
                return Err(Error::NonManifold("open boundary left in mesh".into()));
            }
            twin[i] = h_new[t];
        }
        let hl: Vec<T> = order.iter().map(|&h| self.len[h]).collect();
        let sig: Vec<T> = order.iter().map(|&h| self.sig[h]).collect();
        let tri = Triangulation::from_parts(new_to_old.len(), tris, twin)?;
        let metric = ConeMetric::from_halfedge_lengths(tri, &hl, self.config)?;
        Ok(Compacted { metric, new_to_old, sig })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::uniform_metric;
    use std::f64::consts::PI;

    fn tetra() -> ConeMetric<f64> {
        let t = Triangulation::from_triangles(4, vec![[0, 2, 1], [0, 1, 3], [0, 3, 2], [1, 2, 3]]).unwrap();
        uniform_metric(t, 1.0).unwrap()
    }

    #[test]
    fn flip_of_rhombus_gives_sqrt3() {
        let mut m = Mesh::from_metric(&tetra());
        m.flip(0).unwrap();
        assert!((m.len[0] - 3f64.sqrt()).abs() < 1e-12);
        let c = m.compact().unwrap();
        for v in 0..4 {
            assert!((c.metric.angle_sum(v).unwrap() - PI).abs() < 1e-12);
        }
        assert!(!c.metric.triangulation().is_simplicial());
    }

    #[test]
    fn flip_twice_restores_length() {
        let mut m = Mesh::from_metric(&tetra());
        m.flip(0).unwrap();
        m.flip(0).unwrap();
        assert!((m.len[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn split_then_remove_is_identity() {
        let base = tetra();
        let mut m = Mesh::from_metric(&base);
        let v = m.split_edge(0, 0.3);
        assert!(m.is_flat(v));
        let w = m.insert_in_face(4, Vec2::new(0.4, 0.2));
        assert!(m.is_flat(w));
        m.remove_flat_vertex(v).unwrap();
        m.remove_flat_vertex(w).unwrap();
        let c = m.compact().unwrap();
        assert_eq!(c.metric.vertex_count(), 4);
        assert!((c.metric.area() - base.area()).abs() < 1e-12);
        for v in 0..4 {
            assert!((c.metric.angle_sum(v).unwrap() - PI).abs() < 1e-10);
        }
    }

    #[test]
    fn trace_along_tetrahedron_edge_and_across_face() {
        let m = Mesh::from_metric(&tetra());
        // Along the edge itself.
        let legs = m.trace(0, 0.0, 1.0).unwrap();
        assert_eq!(legs.len(), 1);
        assert_eq!(legs[0].to, m.head(0));
        // Bisector of a 60° corner reaches the far vertex of the adjacent face after crossing one edge.
        let legs = m.trace(0, PI / 6.0, 3f64.sqrt()).unwrap();
        assert_eq!(legs[0].crossings.len(), 1);
        assert!((legs[0].crossings[0].1 - 0.5).abs() < 1e-9);
    }
}
