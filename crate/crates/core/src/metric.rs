//! Cone metrics: a triangulated sphere with positive edge lengths in which
//! every face is a Euclidean triangle.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::geom::{self, Vec2};
use crate::{Config, Error, Real, Result, Triangulation};

#[derive(Clone, Debug, PartialEq)]
pub struct ConeMetric<T> {
    tri: Triangulation,
    lengths: Vec<T>,
    config: Config,
}

/// Angle sums, deficits and the essential flag for every vertex.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvatureReport<T> {
    pub angle_sums: Vec<T>,
    pub deficits: Vec<T>,
    pub essential: Vec<bool>,
}

impl<T: Real> CurvatureReport<T> {
    pub fn essential_count(&self) -> usize {
        self.essential.iter().filter(|&&e| e).count()
    }

    pub fn essential_vertices(&self) -> Vec<usize> {
        (0..self.essential.len()).filter(|&v| self.essential[v]).collect()
    }

    pub fn total_deficit(&self) -> T {
        self.deficits.iter().fold(T::zero(), |a, &d| a + d)
    }
}

/// Outcome of the admissibility test: every angle sum at most 2π.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PsiCheck {
    pub admissible: bool,
    pub offender: Option<usize>,
}

impl<T: Real> ConeMetric<T> {
    /// Validates a simplicial triangulation with lengths keyed by vertex pairs `(i, j)`, `i < j`.
    pub fn new(tri: Triangulation, lengths: &BTreeMap<(usize, usize), T>) -> Result<Self> {
        Self::new_with(tri, lengths, Config::default())
    }

    pub fn new_with(tri: Triangulation, lengths: &BTreeMap<(usize, usize), T>, config: Config) -> Result<Self> {
        if !tri.is_simplicial() {
            return Err(Error::NonSimplicial);
        }
        for &(i, j) in lengths.keys() {
            if i >= j || tri.edge_between(i, j).is_none() {
                return Err(Error::UnknownEdge(i, j));
            }
        }
        let mut per_edge = Vec::with_capacity(tri.edge_count());
        for e in 0..tri.edge_count() {
            let (a, b) = tri.edge_vertices(e);
            let l = *lengths.get(&(a, b)).ok_or(Error::MissingLength(a, b))?;
            per_edge.push(l);
        }
        Self::from_edge_lengths(tri, per_edge, config)
    }

    /// Validates lengths given per edge id.
    pub fn from_edge_lengths(tri: Triangulation, lengths: Vec<T>, config: Config) -> Result<Self> {
        config.check()?;
        if lengths.len() != tri.edge_count() {
            return Err(Error::InvalidConfig(format!(
                "expected {} edge lengths, got {}",
                tri.edge_count(),
                lengths.len()
            )));
        }
        for (e, &l) in lengths.iter().enumerate() {
            if !(l > T::zero() && l.is_finite()) {
                let (a, b) = tri.edge_vertices(e);
                return Err(Error::InvalidLength(a, b));
            }
        }
        let metric = Self { tri, lengths, config };
        metric.check_faces()?;
        let total = metric.curvature_report().total_deficit();
        let expected = T::lit(4.0) * T::PI();
        if (total - expected).abs().f64() > config.gauss_bonnet_tol {
            return Err(Error::GaussBonnet { total: total.f64() });
        }
        Ok(metric)
    }

    /// Builds from per-half-edge lengths (each edge read from its canonical half-edge).
    pub fn from_halfedge_lengths(tri: Triangulation, hl: &[T], config: Config) -> Result<Self> {
        let lengths = (0..tri.edge_count()).map(|e| hl[tri.edge_halfedges(e)[0]]).collect();
        Self::from_edge_lengths(tri, lengths, config)
    }

    fn check_faces(&self) -> Result<()> {
        let floor = T::lit(self.config.degeneracy_floor);
        for f in 0..self.tri.face_count() {
            let [a, b, c] = self.face_lengths(f);
            if !(a < b + c && b < c + a && c < a + b) {
                return Err(Error::TriangleInequalityViolation { face: f });
            }
            let m = a.max(b).max(c);
            if geom::triangle_area(a, b, c) < floor * m * m {
                return Err(Error::DegenerateFace { face: f });
            }
        }
        Ok(())
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.tri
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    /// Same metric under a different configuration (revalidated).
    pub fn with_config(&self, config: Config) -> Result<Self> {
        Self::from_edge_lengths(self.tri.clone(), self.lengths.clone(), config)
    }

    pub fn vertex_count(&self) -> usize {
        self.tri.vertex_count()
    }

    pub fn lengths(&self) -> &[T] {
        &self.lengths
    }

    pub fn length(&self, e: usize) -> T {
        self.lengths[e]
    }

    #[inline]
    pub fn halfedge_length(&self, h: usize) -> T {
        self.lengths[self.tri.edge(h)]
    }

    /// Side lengths of face `f` in corner order (`0->1`, `1->2`, `2->0`).
    pub fn face_lengths(&self, f: usize) -> [T; 3] {
        [
            self.halfedge_length(3 * f),
            self.halfedge_length(3 * f + 1),
            self.halfedge_length(3 * f + 2),
        ]
    }

    /// Lengths keyed by vertex pair, available for simplicial triangulations.
    pub fn keyed_lengths(&self) -> Result<BTreeMap<(usize, usize), T>> {
        if !self.tri.is_simplicial() {
            return Err(Error::NonSimplicial);
        }
        Ok((0..self.tri.edge_count()).map(|e| (self.tri.edge_vertices(e), self.lengths[e])).collect())
    }

    /// Interior angle at the tail of `h` inside the face of `h`.
    pub fn corner_angle(&self, h: usize) -> T {
        let a = self.halfedge_length(h);
        let b = self.halfedge_length(self.tri.prev(h));
        let c = self.halfedge_length(self.tri.next(h));
        geom::corner_angle(a, b, c)
    }

    /// Face of `h` laid out with `tail(h)` at the origin and `head(h)` on the positive x axis.
    pub fn layout(&self, h: usize) -> [Vec2<T>; 3] {
        geom::layout(
            self.halfedge_length(h),
            self.halfedge_length(self.tri.next(h)),
            self.halfedge_length(self.tri.prev(h)),
        )
    }

    pub fn angle_sum(&self, v: usize) -> Result<T> {
        if v >= self.vertex_count() {
            return Err(Error::VertexOutOfRange { vertex: v, count: self.vertex_count() });
        }
        Ok(self.tri.outgoing(v).fold(T::zero(), |s, h| s + self.corner_angle(h)))
    }

    pub fn angle_sums(&self) -> Vec<T> {
        let mut sums = vec![T::zero(); self.vertex_count()];
        for h in 0..self.tri.halfedge_count() {
            sums[self.tri.tail(h)] = sums[self.tri.tail(h)] + self.corner_angle(h);
        }
        sums
    }

    pub fn curvature_report(&self) -> CurvatureReport<T> {
        let angle_sums = self.angle_sums();
        let eps = T::lit(self.config.angle_eps);
        let deficits: Vec<T> = angle_sums.iter().map(|&a| T::tau() - a).collect();
        let essential = deficits.iter().map(|&d| d > eps).collect();
        CurvatureReport { angle_sums, deficits, essential }
    }

    pub fn essential_vertices(&self) -> Vec<usize> {
        self.curvature_report().essential_vertices()
    }

    pub fn is_essential(&self, v: usize) -> bool {
        self.angle_sum(v).map(|a| T::tau() - a > T::lit(self.config.angle_eps)).unwrap_or(false)
    }

    /// Admissibility: every angle sum is at most `2π + angle_eps`.
    pub fn is_in_psi(&self) -> PsiCheck {
        let bound = T::tau() + T::lit(self.config.angle_eps);
        let offender = self.angle_sums().iter().position(|&a| a > bound);
        PsiCheck { admissible: offender.is_none(), offender }
    }

    pub fn face_area(&self, f: usize) -> T {
        let [a, b, c] = self.face_lengths(f);
        geom::triangle_area(a, b, c)
    }

    pub fn area(&self) -> T {
        (0..self.tri.face_count()).fold(T::zero(), |s, f| s + self.face_area(f))
    }

    pub fn max_length(&self) -> T {
        self.lengths.iter().fold(T::zero(), |m, &l| m.max(l))
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        let tri = self.tri.relabeled(perm)?;
        let hl: Vec<T> = (0..self.tri.halfedge_count()).map(|h| self.halfedge_length(h)).collect();
        Self::from_halfedge_lengths(tri, &hl, self.config)
    }

    /// One round of midpoint subdivision; every new vertex is flat.
    pub fn midpoint_subdivided(&self) -> Result<Self> {
        let t = &self.tri;
        let nv = t.vertex_count();
        let nf = t.face_count();
        let mid = |h: usize| nv + t.edge(h);
        let mut tris = Vec::with_capacity(4 * nf);
        for f in 0..nf {
            let [a, b, c] = t.triangles()[f];
            let (m0, m1, m2) = (mid(3 * f), mid(3 * f + 1), mid(3 * f + 2));
            tris.push([a, m0, m2]);
            tris.push([m0, b, m1]);
            tris.push([m2, m1, c]);
            tris.push([m0, m1, m2]);
        }
        // Location of the first and second halves of an old half-edge.
        let halves = |h: usize| -> (usize, usize) {
            let f = h / 3;
            match h % 3 {
                0 => (12 * f, 12 * f + 3),
                1 => (12 * f + 4, 12 * f + 7),
                _ => (12 * f + 8, 12 * f + 2),
            }
        };
        let mut twin = vec![0usize; 12 * nf];
        let mut hl = vec![T::zero(); 12 * nf];
        for h in 0..t.halfedge_count() {
            let (first, second) = halves(h);
            let (_, tsecond) = halves(t.twin(h));
            twin[first] = tsecond;
            twin[tsecond] = first;
            let half = self.halfedge_length(h) / T::two();
            hl[first] = half;
            hl[second] = half;
        }
        for f in 0..nf {
            let [l0, l1, l2] = self.face_lengths(f);
            let b = 12 * f;
            for (x, y, l) in [(b + 1, b + 11, l1), (b + 5, b + 9, l2), (b + 6, b + 10, l0)] {
                twin[x] = y;
                twin[y] = x;
                hl[x] = l / T::two();
                hl[y] = l / T::two();
            }
        }
        let tri = Triangulation::from_parts(nv + t.edge_count(), tris, twin)?;
        Self::from_halfedge_lengths(tri, &hl, self.config)
    }

    /// Barycentric subdivision: every face is split into six around its
    /// centroid. All new vertices are flat.
    pub fn barycentric_subdivided(&self) -> Result<Self> {
        let t = &self.tri;
        let (nv, ne, nf) = (t.vertex_count(), t.edge_count(), t.face_count());
        let mut tris = Vec::with_capacity(6 * nf);
        let mut twin = vec![0usize; 18 * nf];
        let mut hl = vec![T::zero(); 18 * nf];
        for f in 0..nf {
            let corners = t.triangles()[f];
            let p = self.layout(3 * f);
            let g = (p[0] + p[1] + p[2]) * (T::one() / T::lit(3.0));
            let centre = nv + ne + f;
            for i in 0..3 {
                let m = nv + t.edge(3 * f + i);
                let q = (p[i] + p[(i + 1) % 3]) * (T::one() / T::two());
                tris.push([corners[i], m, centre]);
                tris.push([m, corners[(i + 1) % 3], centre]);
                // Spokes from the corner and from the midpoint to the centre.
                let (k0, k1) = (6 * f + 2 * i, 6 * f + 2 * i + 1);
                hl[3 * k0 + 1] = (q - g).norm();
                hl[3 * k0 + 2] = (p[i] - g).norm();
                hl[3 * k1 + 1] = (p[(i + 1) % 3] - g).norm();
                hl[3 * k1 + 2] = (q - g).norm();
            }
            for k in 0..6 {
                let a = 3 * (6 * f + k) + 1;
                let b = 3 * (6 * f + (k + 1) % 6) + 2;
                twin[a] = b;
                twin[b] = a;
            }
        }
        for h in 0..t.halfedge_count() {
            let (f, i) = (h / 3, h % 3);
            let (o, j) = (t.twin(h) / 3, t.twin(h) % 3);
            let first = 3 * (6 * f + 2 * i);
            let other_second = 3 * (6 * o + 2 * j + 1);
            twin[first] = other_second;
            twin[other_second] = first;
            let half = self.halfedge_length(h) / T::two();
            hl[first] = half;
            hl[3 * (6 * f + 2 * i + 1)] = half;
        }
        let tri = Triangulation::from_parts(nv + ne + nf, tris, twin)?;
        Self::from_halfedge_lengths(tri, &hl, self.config)
    }

    /// A simplicial triangulation of the same surface: one midpoint round
    /// when that suffices, otherwise two barycentric rounds, which always do.
    pub fn simplicial(&self) -> Result<Self> {
        if self.tri.is_simplicial() {
            return Ok(self.clone());
        }
        let m = self.midpoint_subdivided()?;
        if m.tri.is_simplicial() {
            return Ok(m);
        }
        let b = self.barycentric_subdivided()?.barycentric_subdivided()?;
        if b.tri.is_simplicial() {
            Ok(b)
        } else {
            Err(Error::NonSimplicial)
        }
    }
}

/// Equilateral-style helper: builds a metric where every edge has the same length.
pub fn uniform_metric<T: Real>(tri: Triangulation, length: T) -> Result<ConeMetric<T>> {
    let n = tri.edge_count();
    ConeMetric::from_edge_lengths(tri, vec![length; n], Config::default())
}
