//! Triangulations that use only the essential vertices of a metric.

use crate::geodesic::{path_from_legs, GeodesicPath};
use crate::mesh::Mesh;
use crate::{ConeMetric, Error, Real, Result};

/// The same surface triangulated on its essential vertices only.
///
/// Every edge is a straight segment of the source surface; `provenance`
/// gives it as a path there.
#[derive(Clone, Debug)]
pub struct EssentialTriangulation<T> {
    metric: ConeMetric<T>,
    vertex_map: Vec<usize>,
    source: ConeMetric<T>,
    /// Direction of every half-edge at its tail, in the angular coordinates
    /// of the source vertex.
    signposts: Vec<T>,
    provenance: Vec<GeodesicPath<T>>,
}

impl<T: Real> EssentialTriangulation<T> {
    pub fn metric(&self) -> &ConeMetric<T> {
        &self.metric
    }

    /// Source vertex of each vertex of `metric`.
    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn source(&self) -> &ConeMetric<T> {
        &self.source
    }

    /// The path in the source surface that edge `e` runs along.
    pub fn provenance(&self, e: usize) -> &GeodesicPath<T> {
        &self.provenance[e]
    }

    pub fn provenances(&self) -> &[GeodesicPath<T>] {
        &self.provenance
    }

    pub fn into_metric(self) -> ConeMetric<T> {
        self.metric
    }

    fn build(metric: ConeMetric<T>, vertex_map: Vec<usize>, source: ConeMetric<T>, signposts: Vec<T>) -> Result<Self> {
        let provenance = trace_edges(&metric, &vertex_map, &source, &signposts)?;
        Ok(Self { metric, vertex_map, source, signposts, provenance })
    }
}

fn trace_edges<T: Real>(
    metric: &ConeMetric<T>,
    vertex_map: &[usize],
    source: &ConeMetric<T>,
    signposts: &[T],
) -> Result<Vec<GeodesicPath<T>>> {
    let sm = Mesh::from_metric(source);
    let tri = metric.triangulation();
    (0..tri.edge_count())
        .map(|e| {
            let h = tri.edge_halfedges(e)[0];
            let (a, b) = (vertex_map[tri.tail(h)], vertex_map[tri.head(h)]);
            let (start, phi) = sm.corner_at(a, signposts[h]);
            let length = metric.length(e);
            let legs = sm.trace(start, phi, length)?;
            if legs.last().map(|l| l.to) != Some(b) {
                return Err(Error::TraceFailed(format!("edge {e} does not end at source vertex {b}")));
            }
            Ok(path_from_legs(source.triangulation(), a, b, length, legs))
        })
        .collect()
}

/// Removes every flat vertex by intrinsic edge flips.
///
/// The result has the essential vertices of `metric`, in increasing order,
/// and therefore `3n - 6` edges.
pub fn retriangulate_essential<T: Real>(metric: &ConeMetric<T>) -> Result<EssentialTriangulation<T>> {
    let psi = metric.is_in_psi();
    if !psi.admissible {
        let v = psi.offender.unwrap_or(0);
        return Err(Error::NotInPsi { vertex: v, angle: metric.angle_sum(v)?.f64() });
    }
    let n = metric.essential_vertices().len();
    if n < 3 {
        return Err(Error::TooFewEssentialVertices(n));
    }
    let mut mesh = Mesh::from_metric(metric);
    for v in 0..metric.vertex_count() {
        if !metric.is_essential(v) {
            mesh.remove_flat_vertex(v)?;
        }
    }
    let c = mesh.compact()?;
    EssentialTriangulation::build(c.metric, c.new_to_old, metric.clone(), c.sig)
}

/// Replaces edge `e` by the other diagonal of its unfolded quadrilateral.
pub fn edge_flip<T: Real>(et: &EssentialTriangulation<T>, e: usize) -> Result<EssentialTriangulation<T>> {
    let tri = et.metric.triangulation();
    if e >= tri.edge_count() {
        return Err(Error::NotFlippable(e));
    }
    let mut mesh = Mesh::with_signposts(&et.metric, &et.signposts);
    mesh.flip(tri.edge_halfedges(e)[0]).map_err(|_| Error::NotFlippable(e))?;
    let c = mesh.compact()?;
    EssentialTriangulation::build(c.metric, et.vertex_map.clone(), et.source.clone(), c.sig)
}
