//! Combinatorial closed surfaces built from triangles.
//!
//! Half-edge `h = 3 * f + i` runs from corner `i` to corner `i + 1` of face
//! `f`. Faces are counter-clockwise, so the face of `h` lies to its left.
//! Twins are explicit, which lets the same type describe gluings with
//! repeated edges between a vertex pair (as produced by polygon gluing or
//! intrinsic edge flips), while [`Triangulation::from_triangles`] covers the
//! common simplicial case.

use std::collections::{BTreeMap, VecDeque};

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    vertex_count: usize,
    triangles: Vec<[usize; 3]>,
    twin: Vec<usize>,
    edge_of: Vec<usize>,
    edges: Vec<[usize; 2]>,
    out: Vec<usize>,
}

impl Triangulation {
    /// Builds a triangulation whose edges are determined by vertex pairs.
    pub fn from_triangles(vertex_count: usize, triangles: Vec<[usize; 3]>) -> Result<Self> {
        check_indices(vertex_count, &triangles)?;
        let mut by_pair: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (f, t) in triangles.iter().enumerate() {
            if t[0] == t[1] || t[1] == t[2] || t[2] == t[0] {
                return Err(Error::NonManifold(format!("face {f} repeats a vertex")));
            }
            for i in 0..3 {
                let (a, b) = (t[i], t[(i + 1) % 3]);
                by_pair.entry((a.min(b), a.max(b))).or_default().push(3 * f + i);
            }
        }
        let mut twin = vec![usize::MAX; 3 * triangles.len()];
        for (&(a, b), hs) in &by_pair {
            if hs.len() != 2 {
                return Err(Error::NonManifold(format!(
                    "edge {a}-{b} is shared by {} triangles",
                    hs.len()
                )));
            }
            let tail = |h: usize| triangles[h / 3][h % 3];
            if tail(hs[0]) == tail(hs[1]) {
                return Err(Error::NonManifold(format!(
                    "inconsistent orientation across edge {a}-{b}"
                )));
            }
            twin[hs[0]] = hs[1];
            twin[hs[1]] = hs[0];
        }
        Self::from_parts(vertex_count, triangles, twin)
    }

    /// Builds a triangulation from faces and an explicit half-edge pairing.
    pub fn from_parts(vertex_count: usize, triangles: Vec<[usize; 3]>, twin: Vec<usize>) -> Result<Self> {
        check_indices(vertex_count, &triangles)?;
        let nh = 3 * triangles.len();
        if twin.len() != nh {
            return Err(Error::NonManifold("twin table has the wrong size".into()));
        }
        let tail = |h: usize| triangles[h / 3][h % 3];
        let head = |h: usize| triangles[h / 3][(h % 3 + 1) % 3];
        for h in 0..nh {
            let t = twin[h];
            if t >= nh || t == h || twin[t] != h {
                return Err(Error::NonManifold(format!("half-edge {h} has no valid twin")));
            }
            if tail(t) != head(h) || head(t) != tail(h) {
                return Err(Error::NonManifold(format!(
                    "half-edge {h} is glued with inconsistent orientation"
                )));
            }
        }

        let mut keyed: Vec<(usize, usize, usize)> = (0..nh)
            .filter(|&h| h < twin[h])
            .map(|h| {
                let (a, b) = (tail(h), head(h));
                (a.min(b), a.max(b), h)
            })
            .collect();
        keyed.sort_unstable();
        let mut edge_of = vec![0; nh];
        let mut edges = Vec::with_capacity(keyed.len());
        for (e, &(a, _, h)) in keyed.iter().enumerate() {
            // Canonical direction runs from the smaller endpoint.
            let (h0, h1) = if tail(h) == a { (h, twin[h]) } else { (twin[h], h) };
            edge_of[h0] = e;
            edge_of[h1] = e;
            edges.push([h0, h1]);
        }

        let mut out = vec![usize::MAX; vertex_count];
        let mut corners = vec![0usize; vertex_count];
        for h in 0..nh {
            let v = tail(h);
            corners[v] += 1;
            if out[v] == usize::MAX {
                out[v] = h;
            }
        }
        let tri = Self { vertex_count, triangles, twin, edge_of, edges, out };

        for v in 0..vertex_count {
            if corners[v] == 0 {
                return Err(Error::NonManifold(format!("vertex {v} is not used by any face")));
            }
            let cycle = tri.outgoing(v).count();
            if cycle != corners[v] {
                return Err(Error::NonManifold(format!(
                    "link of vertex {v} is not a single cycle ({cycle} of {} corners)",
                    corners[v]
                )));
            }
        }

        if !tri.is_connected() {
            return Err(Error::NotSphere("surface is disconnected".into()));
        }
        let chi = tri.euler_characteristic();
        if chi != 2 {
            return Err(Error::NotSphere(format!("Euler characteristic V - E + F = {chi}")));
        }
        Ok(tri)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn face_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn halfedge_count(&self) -> usize {
        self.twin.len()
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn twins(&self) -> &[usize] {
        &self.twin
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }

    #[inline]
    pub fn face(&self, h: usize) -> usize {
        h / 3
    }

    #[inline]
    pub fn next(&self, h: usize) -> usize {
        3 * (h / 3) + (h % 3 + 1) % 3
    }

    #[inline]
    pub fn prev(&self, h: usize) -> usize {
        3 * (h / 3) + (h % 3 + 2) % 3
    }

    #[inline]
    pub fn twin(&self, h: usize) -> usize {
        self.twin[h]
    }

    #[inline]
    pub fn tail(&self, h: usize) -> usize {
        self.triangles[h / 3][h % 3]
    }

    #[inline]
    pub fn head(&self, h: usize) -> usize {
        self.triangles[h / 3][(h % 3 + 1) % 3]
    }

    #[inline]
    pub fn edge(&self, h: usize) -> usize {
        self.edge_of[h]
    }

    /// The two half-edges of edge `e`; the first runs from the smaller endpoint.
    pub fn edge_halfedges(&self, e: usize) -> [usize; 2] {
        self.edges[e]
    }

    /// Endpoints of edge `e` in canonical order.
    pub fn edge_vertices(&self, e: usize) -> (usize, usize) {
        let h = self.edges[e][0];
        (self.tail(h), self.head(h))
    }

    /// Outgoing half-edges of `v` in counter-clockwise order.
    pub fn outgoing(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let start = self.out[v];
        let mut cur = Some(start);
        std::iter::from_fn(move || {
            let h = cur?;
            let n = self.twin[self.prev(h)];
            cur = if n == start { None } else { Some(n) };
            Some(h)
        })
        .take(self.twin.len())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.outgoing(v).count()
    }

    /// True when no edge is a loop and no vertex pair carries two edges.
    pub fn is_simplicial(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        (0..self.edges.len()).all(|e| {
            let (a, b) = self.edge_vertices(e);
            a != b && seen.insert((a, b))
        }) && self.triangles.iter().all(|t| t[0] != t[1] && t[1] != t[2] && t[0] != t[2])
    }

    /// The unique edge joining `a` and `b`, if exactly one exists.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        let mut found = None;
        for h in self.outgoing(a) {
            if self.head(h) == b {
                let e = self.edge(h);
                match found {
                    None => found = Some(e),
                    Some(f) if f == e => {}
                    Some(_) => return None,
                }
            }
        }
        found
    }

    fn is_connected(&self) -> bool {
        if self.triangles.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.triangles.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(f) = queue.pop_front() {
            for i in 0..3 {
                let g = self.twin[3 * f + i] / 3;
                if !seen[g] {
                    seen[g] = true;
                    count += 1;
                    queue.push_back(g);
                }
            }
        }
        count == self.triangles.len()
    }

    /// Applies a vertex relabeling `new = perm[old]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        let tris = self.triangles.iter().map(|t| [perm[t[0]], perm[t[1]], perm[t[2]]]).collect();
        Self::from_parts(self.vertex_count, tris, self.twin.clone())
    }
}

fn check_indices(vertex_count: usize, triangles: &[[usize; 3]]) -> Result<()> {
    if triangles.is_empty() {
        return Err(Error::NotSphere("no faces".into()));
    }
    for t in triangles {
        for &v in t {
            if v >= vertex_count {
                return Err(Error::VertexOutOfRange { vertex: v, count: vertex_count });
            }
        }
    }
    Ok(())
}
