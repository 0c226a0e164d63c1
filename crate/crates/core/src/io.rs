//! File formats: JSON metrics, polyhedra and gluings, OBJ meshes and SVG
//! nets.
//!
//! Every float is written with 17 significant digits, so parsing an emitted
//! file gives back the same doubles and emitting again gives the same bytes.

use std::collections::{BTreeMap, VecDeque};
use std::io::Write;

use serde::Deserialize;
use serde_json::ser::Formatter;
use serde_json::{json, Value};

use crate::builders::{GluingScheme, PolygonGluing, SegmentPair};
use crate::correspondence::{EmbeddingResult, IsometryFingerprint, PAIRS};
use crate::geom::{place_apex, Vec2};
use crate::{Config, ConeMetric, CurvatureReport, Error, GeodesicPath, Polyhedron, Real, Result, Triangulation};

/// Compact JSON with floats in `{:.16e}` form.
struct Digits17;

impl Formatter for Digits17 {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> std::io::Result<()> {
        w.write_all(num(value).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> std::io::Result<()> {
        self.write_f64(w, value as f64)
    }
}

/// A float with 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{:.16e}", x)
}

/// Serializes a JSON value with 17-digit floats and a trailing newline.
pub fn to_json_string(value: &Value) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Digits17);
    serde::Serialize::serialize(value, &mut ser).expect("writing to memory");
    out.push(b'\n');
    String::from_utf8(out).expect("JSON is UTF-8")
}

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MetricFile {
    vertex_count: usize,
    triangles: Vec<[usize; 3]>,
    lengths: BTreeMap<String, f64>,
}

fn parse_key(k: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("length key {k:?} is not of the form \"i-j\" with i < j"));
    let (a, b) = k.split_once('-').ok_or_else(bad)?;
    let (i, j) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
    if i >= j {
        return Err(bad());
    }
    Ok((i, j))
}

/// Parses and validates the JSON metric format.
pub fn parse_metric<T: Real>(text: &str) -> Result<ConeMetric<T>> {
    parse_metric_with(text, Config::default())
}

pub fn parse_metric_with<T: Real>(text: &str, config: Config) -> Result<ConeMetric<T>> {
    let f: MetricFile = serde_json::from_str(text).map_err(parse_err)?;
    let tri = Triangulation::from_triangles(f.vertex_count, f.triangles)?;
    let mut lengths = BTreeMap::new();
    for (k, v) in &f.lengths {
        lengths.insert(parse_key(k)?, T::lit(*v));
    }
    ConeMetric::new_with(tri, &lengths, config)
}

/// The JSON metric format. Triangulations with loops or repeated edges are
/// subdivided first, since lengths are keyed by vertex pair.
pub fn metric_json<T: Real>(metric: &ConeMetric<T>) -> Result<Value> {
    let m = metric.simplicial()?;
    let lengths: serde_json::Map<String, Value> =
        m.keyed_lengths()?.into_iter().map(|((i, j), l)| (format!("{i}-{j}"), json!(l.f64()))).collect();
    Ok(json!({
        "vertex_count": m.vertex_count(),
        "triangles": m.triangulation().triangles(),
        "lengths": lengths,
    }))
}

pub fn emit_metric<T: Real>(metric: &ConeMetric<T>) -> Result<String> {
    Ok(to_json_string(&metric_json(metric)?))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PointsFile {
    points: Vec<[f64; 3]>,
}

/// Parses the JSON polyhedron format (a list of points).
pub fn parse_points(text: &str) -> Result<Vec<[f64; 3]>> {
    let f: PointsFile = serde_json::from_str(text).map_err(parse_err)?;
    Ok(f.points)
}

pub fn emit_points(points: &[[f64; 3]]) -> String {
    to_json_string(&json!({ "points": points }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolygonFile {
    polygon: Vec<[f64; 2]>,
}

/// Parses `{"polygon": [[x, y], ...]}`.
pub fn parse_polygon(text: &str) -> Result<Vec<[f64; 2]>> {
    let f: PolygonFile = serde_json::from_str(text).map_err(parse_err)?;
    Ok(f.polygon)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GluingFile {
    polygon: Vec<[f64; 2]>,
    scheme: Value,
}

/// Parses the JSON gluing format: `"scheme"` is `"double"` or a list of
/// `[[a, b], [c, d]]` arc-length interval pairs.
pub fn parse_gluing(text: &str) -> Result<PolygonGluing<f64>> {
    let f: GluingFile = serde_json::from_str(text).map_err(parse_err)?;
    let scheme = match &f.scheme {
        Value::String(s) if s == "double" => GluingScheme::Double,
        Value::Array(_) => {
            let pairs: Vec<[[f64; 2]; 2]> = serde_json::from_value(f.scheme.clone()).map_err(parse_err)?;
            GluingScheme::Pairs(pairs.into_iter().map(|[first, second]| SegmentPair { first, second }).collect())
        }
        other => return Err(Error::Parse(format!("unknown gluing scheme {other}"))),
    };
    Ok(PolygonGluing { polygon: f.polygon, scheme })
}

pub fn emit_gluing(g: &PolygonGluing<f64>) -> String {
    let scheme = match &g.scheme {
        GluingScheme::Double => json!("double"),
        GluingScheme::Pairs(p) => json!(p.iter().map(|s| [s.first, s.second]).collect::<Vec<_>>()),
    };
    to_json_string(&json!({ "polygon": g.polygon, "scheme": scheme }))
}

pub fn report_json<T: Real>(metric: &ConeMetric<T>, r: &CurvatureReport<T>) -> Value {
    let f = |v: &[T]| v.iter().map(|x| x.f64()).collect::<Vec<_>>();
    json!({
        "vertex_count": metric.vertex_count(),
        "face_count": metric.triangulation().face_count(),
        "angle_sums": f(&r.angle_sums),
        "deficits": f(&r.deficits),
        "essential": r.essential_vertices(),
        "total_deficit": r.total_deficit().f64(),
        "area": metric.area().f64(),
        "in_psi": metric.is_in_psi().admissible,
    })
}

pub fn geodesic_json<T: Real>(p: &GeodesicPath<T>) -> Value {
    let legs: Vec<Value> = p
        .legs
        .iter()
        .map(|l| {
            json!({
                "from": l.from,
                "to": l.to,
                "start_halfedge": l.start_halfedge,
                "start_angle": l.start_angle.f64(),
                "end_halfedge": l.end_halfedge,
                "end_angle": l.end_angle.f64(),
                "faces": l.faces,
                "crossings": l.crossings.iter().map(|c| json!({"edge": c.edge, "t": c.t.f64()})).collect::<Vec<_>>(),
                "length": l.length.f64(),
            })
        })
        .collect();
    json!({ "source": p.source, "target": p.target, "length": p.length.f64(), "legs": legs })
}

pub fn embedding_json<T: Real>(r: &EmbeddingResult<T>) -> Value {
    json!({
        "vertices": r.vertices,
        "coords": r.coords_f64(),
        "lengths": r.lengths.iter().map(|x| x.f64()).collect::<Vec<_>>(),
        "pairs": PAIRS,
        "cayley_menger": r.cayley_menger.f64(),
        "degenerate": r.degenerate,
        "residuals": r.residuals.iter().map(|x| x.f64()).collect::<Vec<_>>(),
    })
}

pub fn fingerprint_json<T: Real>(f: &IsometryFingerprint<T>) -> Value {
    json!({
        "deficits": f.deficits.iter().map(|x| x.f64()).collect::<Vec<_>>(),
        "distances": f.distances.iter().map(|x| x.f64()).collect::<Vec<_>>(),
        "area": f.area.f64(),
    })
}

/// Wavefront OBJ with one-based face indices.
pub fn obj(points: &[[f64; 3]], faces: &[Vec<usize>]) -> String {
    let mut s = String::new();
    for p in points {
        s.push_str(&format!("v {} {} {}\n", num(p[0]), num(p[1]), num(p[2])));
    }
    for f in faces {
        let idx: Vec<String> = f.iter().map(|i| (i + 1).to_string()).collect();
        s.push_str(&format!("f {}\n", idx.join(" ")));
    }
    s
}

/// OBJ of a polyhedron's facets; a flat one gets both sides of its polygon.
pub fn polyhedron_obj(p: &Polyhedron) -> Result<String> {
    let faces = if p.degenerate {
        let top: Vec<usize> = (0..p.vertex_count()).collect();
        vec![top.clone(), top.into_iter().rev().collect()]
    } else {
        p.facets()?
    };
    Ok(obj(&p.points, &faces))
}

/// OBJ of an embedded tetrahedron: four triangles, outward when not flat.
pub fn tetrahedron_obj<T: Real>(r: &EmbeddingResult<T>) -> String {
    let c = r.coords_f64();
    let flip = r.signed_volume6() < T::zero();
    let mut faces = vec![vec![0, 2, 1], vec![0, 1, 3], vec![1, 2, 3], vec![0, 3, 2]];
    if flip {
        for f in &mut faces {
            f.swap(1, 2);
        }
    }
    obj(&c, &faces)
}

/// An SVG drawing with its scale and whether triangles overlap.
#[derive(Clone, Debug, PartialEq)]
pub struct SvgNet {
    pub svg: String,
    /// Drawing units per unit of length.
    pub scale: f64,
    /// Set when the unfolding overlaps itself; the drawing is still valid.
    pub overlap: bool,
    pub triangles: Vec<[Vec2<f64>; 3]>,
}

/// Lays out every face in the plane along a breadth-first spanning tree of
/// the dual graph.
pub fn unfold_net<T: Real>(metric: &ConeMetric<T>) -> Vec<[Vec2<f64>; 3]> {
    let tri = metric.triangulation();
    let nf = tri.face_count();
    let len = |h: usize| metric.halfedge_length(h).f64();
    let mut placed: Vec<Option<[Vec2<f64>; 3]>> = vec![None; nf];
    let l = metric.layout(0);
    placed[0] = Some([0, 1, 2].map(|i| Vec2::new(l[i].x.f64(), l[i].y.f64())));
    let mut queue = VecDeque::from([0usize]);
    while let Some(f) = queue.pop_front() {
        let pos = placed[f].unwrap();
        for i in 0..3 {
            let h = 3 * f + i;
            let t = tri.twin(h);
            let g = tri.face(t);
            if placed[g].is_some() {
                continue;
            }
            // `t` runs from the head of `h` to its tail.
            let (p, q) = (pos[(i + 1) % 3], pos[i]);
            let apex = place_apex(p, q, len(tri.prev(t)), len(tri.next(t)), true);
            let k = t % 3;
            let mut out = [Vec2::zero(); 3];
            out[k] = p;
            out[(k + 1) % 3] = q;
            out[(k + 2) % 3] = apex;
            placed[g] = Some(out);
            queue.push_back(g);
        }
    }
    placed.into_iter().map(|p| p.expect("sphere triangulations are connected")).collect()
}

fn interiors_overlap(a: &[Vec2<f64>; 3], b: &[Vec2<f64>; 3], tol: f64) -> bool {
    // Separating axis test on edge normals, with a margin for shared edges.
    for tri in [a, b] {
        for i in 0..3 {
            let n = (tri[(i + 1) % 3] - tri[i]).perp();
            let proj = |t: &[Vec2<f64>; 3]| {
                let v: Vec<f64> = t.iter().map(|p| p.dot(n)).collect();
                (v.iter().cloned().fold(f64::INFINITY, f64::min), v.iter().cloned().fold(f64::NEG_INFINITY, f64::max))
            };
            let ((a0, a1), (b0, b1)) = (proj(a), proj(b));
            if a1 <= b0 + tol * n.norm() || b1 <= a0 + tol * n.norm() {
                return false;
            }
        }
    }
    true
}

fn any_overlap(t: &[[Vec2<f64>; 3]]) -> bool {
    let scale = t.iter().flatten().fold(1.0f64, |m, p| m.max(p.norm()));
    (0..t.len()).any(|i| (i + 1..t.len()).any(|j| interiors_overlap(&t[i], &t[j], 1e-9 * scale)))
}

fn svg_document(triangles: &[[Vec2<f64>; 3]], segments: &[[Vec2<f64>; 2]]) -> SvgNet {
    let pts = triangles.iter().flatten().chain(segments.iter().flatten());
    let (mut lo, mut hi) = (Vec2::new(f64::INFINITY, f64::INFINITY), Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
    for p in pts {
        lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let extent = (hi.x - lo.x).max(hi.y - lo.y).max(f64::MIN_POSITIVE);
    let scale = 500.0 / extent;
    let margin = 10.0;
    let map = |p: Vec2<f64>| ((p.x - lo.x) * scale + margin, (hi.y - p.y) * scale + margin);
    let overlap = any_overlap(triangles);
    let (w, h) = ((hi.x - lo.x) * scale + 2.0 * margin, (hi.y - lo.y) * scale + 2.0 * margin);
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" data-scale=\"{}\" data-overlap=\"{}\">\n",
        num(w),
        num(h),
        num(scale),
        overlap
    );
    for t in triangles {
        let p: Vec<String> = t.iter().map(|&q| {
            let (x, y) = map(q);
            format!("{},{}", num(x), num(y))
        }).collect();
        s.push_str(&format!("<polygon points=\"{}\" fill=\"none\" stroke=\"black\"/>\n", p.join(" ")));
    }
    for seg in segments {
        let ((x1, y1), (x2, y2)) = (map(seg[0]), map(seg[1]));
        s.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"red\"/>\n",
            num(x1),
            num(y1),
            num(x2),
            num(y2)
        ));
    }
    s.push_str("</svg>\n");
    SvgNet { svg: s, scale, overlap, triangles: triangles.to_vec() }
}

/// SVG of the whole surface cut open along a spanning tree.
pub fn svg_net<T: Real>(metric: &ConeMetric<T>) -> SvgNet {
    svg_document(&unfold_net(metric), &[])
}

/// SVG of the faces a geodesic crosses, unfolded into one strip per leg with
/// the path drawn as a straight segment. Legs are placed side by side.
pub fn svg_geodesic<T: Real>(metric: &ConeMetric<T>, path: &GeodesicPath<T>) -> SvgNet {
    let tri = metric.triangulation();
    let len = |h: usize| metric.halfedge_length(h).f64();
    let mut triangles = Vec::new();
    let mut segments = Vec::new();
    let mut offset = 0.0;
    for leg in &path.legs {
        let h0 = leg.start_halfedge;
        let l = metric.layout(h0);
        let mut pos = [Vec2::zero(); 3];
        for i in 0..3 {
            pos[(h0 % 3 + i) % 3] = Vec2::new(l[i].x.f64() + offset, l[i].y.f64());
        }
        let mut strip = vec![pos];
        let mut f = tri.face(h0);
        for c in &leg.crossings {
            let i = (0..3).find(|&i| tri.edge(3 * f + i) == c.edge).expect("crossing lies on the current face");
            let h = 3 * f + i;
            let t = tri.twin(h);
            let (p, q) = (pos[(i + 1) % 3], pos[i]);
            let apex = place_apex(p, q, len(tri.prev(t)), len(tri.next(t)), true);
            let k = t % 3;
            pos = [Vec2::zero(); 3];
            pos[k] = p;
            pos[(k + 1) % 3] = q;
            pos[(k + 2) % 3] = apex;
            strip.push(pos);
            f = tri.face(t);
        }
        let [a, b] = leg.unfolded_endpoints();
        let (a, b) = (Vec2::new(a.x.f64() + offset, a.y.f64()), Vec2::new(b.x.f64() + offset, b.y.f64()));
        segments.push([a, b]);
        let right = strip.iter().flatten().fold(offset, |m, p| m.max(p.x));
        offset = right + 0.25 * leg.length.f64().max(1e-9);
        triangles.extend(strip);
    }
    svg_document(&triangles, &segments)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(num(1.0), "1.0000000000000000e0");
        assert_eq!(num(0.1).parse::<f64>().unwrap(), 0.1);
    }

    #[test]
    fn bad_keys() {
        assert!(parse_key("2-1").is_err());
        assert!(parse_key("a-b").is_err());
        assert_eq!(parse_key("0-12").unwrap(), (0, 12));
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = r#"{"vertex_count":4,"triangles":[],"lengths":{},"extra":1}"#;
        assert!(matches!(parse_metric::<f64>(text), Err(Error::Parse(_))));
        assert!(matches!(parse_points(r#"{"points":[],"x":0}"#), Err(Error::Parse(_))));
    }
}
