//! Incremental 3D convex hull with exact orientation predicates.
//!
//! Visibility decisions use adaptive-precision `orient3d`/`orient2d`, so the
//! combinatorics are exact for the given floating point inputs. Adjacent
//! triangles are merged into facets when the opposite vertex lies within
//! `1e-9 * diameter` of the plane.

use std::collections::HashMap;

use robust::{orient2d, orient3d, Coord, Coord3D};

use crate::{Error, Result};

fn c3(p: [f64; 3]) -> Coord3D<f64> {
    Coord3D { x: p[0], y: p[1], z: p[2] }
}

/// Positive when `d` lies on the inner side of the counter-clockwise (seen from outside) face `a b c`.
pub(crate) fn orient(a: [f64; 3], b: [f64; 3], c: [f64; 3], d: [f64; 3]) -> f64 {
    orient3d(c3(a), c3(b), c3(c), c3(d))
}

pub(crate) fn collinear(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> bool {
    let proj = |p: [f64; 3], i: usize, j: usize| Coord { x: p[i], y: p[j] };
    [(0, 1), (1, 2), (0, 2)]
        .iter()
        .all(|&(i, j)| orient2d(proj(a, i, j), proj(b, i, j), proj(c, i, j)) == 0.0)
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn diameter(points: &[[f64; 3]]) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let e = sub(points[i], points[j]);
            d = d.max(dot(e, e).sqrt());
        }
    }
    d
}

/// Finds four affinely independent points; `Err` distinguishes collinear and coplanar input.
pub(crate) fn initial_simplex(points: &[[f64; 3]]) -> Result<[usize; 4]> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints);
    }
    let i0 = 0;
    let i1 = (1..points.len()).find(|&i| points[i] != points[i0]).ok_or(Error::TooFewPoints)?;
    let i2 = (1..points.len())
        .find(|&i| !collinear(points[i0], points[i1], points[i]))
        .ok_or(Error::CollinearInput)?;
    let i3 = (1..points.len())
        .find(|&i| orient(points[i0], points[i1], points[i2], points[i]) != 0.0)
        .ok_or(Error::DegenerateInput)?;
    Ok([i0, i1, i2, i3])
}

/// True when every point lies within `1e-9 * diameter` of a common plane.
pub(crate) fn nearly_coplanar(points: &[[f64; 3]]) -> bool {
    let far = |from: [f64; 3]| {
        (0..points.len())
            .max_by(|&a, &b| {
                let (da, db) = (sub(points[a], from), sub(points[b], from));
                dot(da, da).total_cmp(&dot(db, db))
            })
            .unwrap_or(0)
    };
    let i0 = far(points[0]);
    let i1 = far(points[i0]);
    let e = sub(points[i1], points[i0]);
    let i2 = (0..points.len())
        .max_by(|&a, &b| {
            let (ca, cb) = (cross(e, sub(points[a], points[i0])), cross(e, sub(points[b], points[i0])));
            dot(ca, ca).total_cmp(&dot(cb, cb))
        })
        .unwrap_or(0);
    let n = cross(e, sub(points[i2], points[i0]));
    let nn = dot(n, n).sqrt();
    if nn == 0.0 {
        return true;
    }
    let tol = 1e-9 * diameter(points);
    points.iter().all(|&p| (dot(n, sub(p, points[i0])) / nn).abs() <= tol)
}

/// Triangulated hull: outward counter-clockwise triangles over input indices.
fn hull_triangles(points: &[[f64; 3]]) -> Result<Vec<[usize; 3]>> {
    let [a, mut b, mut c, d] = initial_simplex(points)?;
    if orient(points[a], points[b], points[c], points[d]) < 0.0 {
        std::mem::swap(&mut b, &mut c);
    }
    let mut faces: Vec<[usize; 3]> = vec![[a, b, c], [a, d, b], [b, d, c], [c, d, a]];
    let mut alive = vec![true; 4];
    let used = [a, b, c, d];
    for q in 0..points.len() {
        if used.contains(&q) {
            continue;
        }
        let pq = points[q];
        let visible: Vec<usize> = (0..faces.len())
            .filter(|&f| alive[f] && orient(points[faces[f][0]], points[faces[f][1]], points[faces[f][2]], pq) < 0.0)
            .collect();
        if visible.is_empty() {
            continue;
        }
        let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
        for &f in &visible {
            let t = faces[f];
            for i in 0..3 {
                directed.insert((t[i], t[(i + 1) % 3]), f);
            }
        }
        let mut horizon: Vec<(usize, usize)> = directed
            .keys()
            .filter(|&&(x, y)| !directed.contains_key(&(y, x)))
            .copied()
            .collect();
        horizon.sort_unstable();
        for &f in &visible {
            alive[f] = false;
        }
        for (x, y) in horizon {
            faces.push([x, y, q]);
            alive.push(true);
        }
    }
    Ok(faces.into_iter().zip(alive).filter(|(_, a)| *a).map(|(f, _)| f).collect())
}

/// Facets of the hull as outward counter-clockwise cycles over input
/// indices, keeping only extreme points. Fails with `DegenerateInput` when
/// all points are coplanar.
pub fn convex_hull_3d(points: &[[f64; 3]]) -> Result<Vec<Vec<usize>>> {
    if points.len() < 4 {
        return Err(if points.len() < 3 { Error::TooFewPoints } else { Error::DegenerateInput });
    }
    initial_simplex(points)?;
    if nearly_coplanar(points) {
        return Err(Error::DegenerateInput);
    }
    let tris = hull_triangles(points)?;
    let tol = 1e-9 * diameter(points);

    let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
    for (f, t) in tris.iter().enumerate() {
        for i in 0..3 {
            owner.insert((t[i], t[(i + 1) % 3]), f);
        }
    }
    let mut group: Vec<usize> = (0..tris.len()).collect();
    fn find(g: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while g[r] != r {
            r = g[r];
        }
        g[x] = r;
        r
    }
    for (f, t) in tris.iter().enumerate() {
        let (pa, pb, pc) = (points[t[0]], points[t[1]], points[t[2]]);
        let n = cross(sub(pb, pa), sub(pc, pa));
        let nn = dot(n, n).sqrt();
        for i in 0..3 {
            let g = owner[&(t[(i + 1) % 3], t[i])];
            let other = tris[g];
            let opp = other.iter().copied().find(|v| *v != t[i] && *v != t[(i + 1) % 3]).unwrap();
            let exact = orient(pa, pb, pc, points[opp]) == 0.0;
            let dist = dot(n, sub(points[opp], pa)).abs() / nn;
            if exact || dist <= tol {
                let (ra, rb) = (find(&mut group, f), find(&mut group, g));
                if ra != rb {
                    group[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let roots: Vec<usize> = (0..tris.len()).map(|f| find(&mut group, f)).collect();

    // A vertex is extreme when at least three distinct facets meet there.
    let mut facets_at: HashMap<usize, Vec<usize>> = HashMap::new();
    for (f, t) in tris.iter().enumerate() {
        for &v in t {
            let e = facets_at.entry(v).or_default();
            if !e.contains(&roots[f]) {
                e.push(roots[f]);
            }
        }
    }
    let extreme = |v: usize| facets_at.get(&v).is_some_and(|fs| fs.len() >= 3);

    let mut distinct: Vec<usize> = roots.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let mut facets = Vec::new();
    for r in distinct {
        let mut succ: HashMap<usize, usize> = HashMap::new();
        for (f, t) in tris.iter().enumerate() {
            if roots[f] != r {
                continue;
            }
            for i in 0..3 {
                let (x, y) = (t[i], t[(i + 1) % 3]);
                if roots[owner[&(y, x)]] != r {
                    succ.insert(x, y);
                }
            }
        }
        let start = *succ.keys().min().ok_or(Error::DegenerateInput)?;
        let mut cycle = vec![start];
        let mut cur = succ[&start];
        while cur != start {
            cycle.push(cur);
            cur = *succ.get(&cur).ok_or_else(|| Error::NumericallyAmbiguous("facet boundary is not a cycle".into()))?;
            if cycle.len() > succ.len() {
                return Err(Error::NumericallyAmbiguous("facet boundary is not a simple cycle".into()));
            }
        }
        cycle.retain(|&v| extreme(v));
        if cycle.len() >= 3 {
            let m = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap();
            cycle.rotate_left(m);
            facets.push(cycle);
        }
    }
    facets.sort();
    Ok(facets)
}

/// Indices of the extreme points of a non-coplanar point set, ascending.
pub(crate) fn extreme_points(points: &[[f64; 3]]) -> Result<Vec<usize>> {
    let facets = convex_hull_3d(points)?;
    let mut v: Vec<usize> = facets.into_iter().flatten().collect();
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

/// Strict convex hull of (nearly) coplanar points, as a cycle of input indices.
pub(crate) fn planar_hull(points: &[[f64; 3]]) -> Result<Vec<usize>> {
    let i0 = 0;
    let i1 = (1..points.len()).find(|&i| points[i] != points[i0]).ok_or(Error::TooFewPoints)?;
    let i2 = (1..points.len())
        .max_by(|&a, &b| {
            let ca = cross(sub(points[i1], points[i0]), sub(points[a], points[i0]));
            let cb = cross(sub(points[i1], points[i0]), sub(points[b], points[i0]));
            dot(ca, ca).total_cmp(&dot(cb, cb))
        })
        .ok_or(Error::CollinearInput)?;
    let n = cross(sub(points[i1], points[i0]), sub(points[i2], points[i0]));
    let drop = (0..3).max_by(|&a, &b| n[a].abs().partial_cmp(&n[b].abs()).unwrap()).unwrap();
    let (ax, ay) = match drop {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let p2 = |i: usize| Coord { x: points[i][ax], y: points[i][ay] };
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| {
        (points[a][ax], points[a][ay], a).partial_cmp(&(points[b][ax], points[b][ay], b)).unwrap()
    });
    idx.dedup_by(|a, b| points[*a] == points[*b]);
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2 && orient2d(p2(lower[lower.len() - 2]), p2(lower[lower.len() - 1]), p2(i)) <= 0.0 {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2 && orient2d(p2(upper[upper.len() - 2]), p2(upper[upper.len() - 1]), p2(i)) <= 0.0 {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    let m = (0..lower.len()).min_by_key(|&i| lower[i]).unwrap();
    lower.rotate_left(m);
    Ok(lower)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube() -> Vec<[f64; 3]> {
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

    #[test]
    fn cube_has_six_quads() {
        let f = convex_hull_3d(&cube()).unwrap();
        assert_eq!(f.len(), 6);
        assert!(f.iter().all(|c| c.len() == 4));
    }

    #[test]
    fn cube_with_centre_and_face_points() {
        let mut p = cube();
        p.push([0.5, 0.5, 0.5]);
        p.push([0.5, 0.5, 1.0]);
        p.push([0.5, 0.0, 0.0]);
        assert_eq!(extreme_points(&p).unwrap(), (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn generic_tetrahedron_and_octahedron() {
        let t = [[0.0, 0.0, 0.0], [1.0, 0.1, 0.0], [0.2, 1.0, 0.0], [0.3, 0.2, 1.0]];
        assert_eq!(convex_hull_3d(&t).unwrap().len(), 4);
        let o = [
            [1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, -1.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0],
        ];
        let f = convex_hull_3d(&o).unwrap();
        assert_eq!(f.len(), 8);
        assert!(f.iter().all(|c| c.len() == 3));
    }

    #[test]
    fn facets_are_outward() {
        let p = cube();
        let centre = [0.5, 0.5, 0.5];
        for f in convex_hull_3d(&p).unwrap() {
            assert!(orient(p[f[0]], p[f[1]], p[f[2]], centre) > 0.0);
        }
    }

    #[test]
    fn coplanar_input() {
        let sq = [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 1.0, 0.0], [0.5, 0.5, 0.0]];
        assert_eq!(convex_hull_3d(&sq), Err(Error::DegenerateInput));
        let h = planar_hull(&sq).unwrap();
        assert_eq!(h.len(), 4);
        assert!(!h.contains(&4));
    }
}
