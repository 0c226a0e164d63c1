mod common;

use std::f64::consts::PI;

use alexandrov::builders::double_polygon;
use alexandrov::generate::{convex_polyhedron, rng};
use alexandrov::{cut_and_patch, distance_matrix, excise_lens, iota, shortest_geodesic, ConeMetric, Error, LensPatch};
use common::*;
use proptest::prelude::*;
use rand::Rng;

fn square() -> ConeMetric<f64> {
    double_polygon(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap()
}

fn same_distances(x: &ConeMetric<f64>, y: &ConeMetric<f64>, tol: f64) -> bool {
    let (dx, dy) = (distance_matrix(x).unwrap(), distance_matrix(y).unwrap());
    dx.vertices == dy.vertices
        && dx.distances.iter().flatten().zip(dy.distances.iter().flatten()).all(|(a, b)| (a - b).abs() <= tol)
}

/// A random essential pair on a random polyhedron with a patch whose base
/// angles use at most `share` of each endpoint's deficit.
fn random_case(seed: u64, share: f64) -> (ConeMetric<f64>, usize, usize, LensPatch<f64>) {
    let mut r = rng(seed);
    let n = r.gen_range(4..9);
    let m: ConeMetric<f64> = iota(&convex_polyhedron(n, seed).unwrap()).unwrap();
    let v = r.gen_range(0..n);
    let w = (v + r.gen_range(1..n)) % n;
    let d = m.curvature_report().deficits;
    let l = shortest_geodesic(&m, v, w).unwrap().length;
    let alpha = (d[v] / 2.0 * share * r.gen_range(0.2..1.0)).min(0.45 * PI);
    let beta = (d[w] / 2.0 * share * r.gen_range(0.2..1.0)).min(0.45 * PI);
    (m.clone(), v, w, LensPatch::from_base_angles(l, alpha, beta).unwrap())
}

#[test]
fn square_corner_flattens() {
    let m = square();
    let patch = LensPatch::from_base_angles(1.0, PI / 2.0, PI / 4.0).unwrap();
    let out = cut_and_patch(&m, 0, 1, &patch).unwrap();
    let r = out.curvature_report();
    assert!(!r.essential[0]);
    assert!(r.angle_sums[4] < PI);
    assert_eq!(r.essential_count(), 4);
    assert!(out.is_in_psi().admissible);
    // Independent check: the apex angle is what remains of π in the triangle.
    assert!((r.angle_sums[4] - 2.0 * (PI - PI / 2.0 - PI / 4.0)).abs() < 1e-9);
}

#[test]
fn square_over_budget() {
    let patch = LensPatch::from_base_angles(1.0, 0.75 * PI, 0.1).unwrap();
    assert!(matches!(cut_and_patch(&square(), 0, 1, &patch), Err(Error::AdmissibilityViolated { .. })));
}

#[test]
fn square_round_trip() {
    let m = square();
    let patch = LensPatch::from_base_angles(1.0, PI / 2.0, PI / 4.0).unwrap();
    let out = cut_and_patch(&m, 0, 1, &patch).unwrap();
    let ex = excise_lens(&out, 4, 0, 1).unwrap();
    assert!(same_distances(&ex.metric, &m, 1e-8));
}

/// On the cube the shortest directions from a corner sit at multiples of
/// π/4 within its 3π/2 of angle, so the only half-angle pairs are an edge
/// and the diagonal of the face not containing that edge. Unfolding shows
/// both halves are flat (1, √2, 3π/4) triangles.
fn cube_digon(pts: &[[f64; 3]], p: usize, v: usize, w: usize) -> bool {
    let d = |i: usize, j: usize| (0..3).map(|k| (pts[i][k] - pts[j][k]).powi(2)).sum::<f64>();
    let (pv, pw, vw) = (d(p, v), d(p, w), d(v, w));
    let near = |x: f64, y: f64| (x - y).abs() < 1e-9;
    near(vw, 3.0) && ((near(pv, 1.0) && near(pw, 2.0)) || (near(pv, 2.0) && near(pw, 1.0)))
}

#[test]
fn cube_lenses_only_at_digons() {
    let c = cube();
    let pts = cube_points();
    let (mut digons, mut removed) = (0, 0);
    for p in 0..8 {
        for v in 0..8 {
            for w in 0..8 {
                if p == v || p == w || v == w {
                    continue;
                }
                let digon = cube_digon(&pts, p, v, w);
                digons += digon as usize;
                match excise_lens(&c, p, v, w) {
                    // A digon whose base is not the preferred shortest cut
                    // after resealing cannot be put back, so it may be refused.
                    Err(e) => assert_eq!(e, Error::NoLensFound(p)),
                    Ok(ex) => {
                        assert!(digon, "lens reported at {p} {v} {w}");
                        removed += 1;
                        let back = cut_and_patch(&ex.metric, ex.v, ex.w, &ex.patch).unwrap();
                        let n = ex.metric.vertex_count();
                        let mut perm: Vec<usize> = (0..n).map(|x| if x < p { x } else { x + 1 }).collect();
                        perm.push(p);
                        assert!(same_distances(&back.relabeled(&perm).unwrap(), &c, 1e-8));
                    }
                }
            }
        }
    }
    assert_eq!(digons, 48);
    assert!(removed > 0);
}

#[test]
fn flat_apex_has_no_lens() {
    let m = square().midpoint_subdivided().unwrap();
    for p in 4..m.vertex_count() {
        assert_eq!(excise_lens(&m, p, 0, 2).unwrap_err(), Error::NoLensFound(p));
    }
}

#[test]
fn flattening_keeps_essential_count() {
    for seed in 0..50 {
        let (m, v, w, _) = random_case(seed, 0.9);
        let d = m.curvature_report().deficits;
        let l = shortest_geodesic(&m, v, w).unwrap().length;
        let alpha = d[v] / 2.0;
        let beta = (d[w] / 4.0).min(0.9 * (PI - alpha));
        let patch = LensPatch::from_base_angles(l, alpha, beta).unwrap();
        let out = cut_and_patch(&m, v, w, &patch).unwrap();
        let r = out.curvature_report();
        assert_eq!(r.essential_count(), m.curvature_report().essential_count(), "seed {seed}");
        assert!(out.is_in_psi().admissible);
        assert!((r.total_deficit() - 4.0 * PI).abs() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn curvature_moves_as_expected(seed in 0u64..10_000) {
        let (m, v, w, patch) = random_case(seed, 0.9);
        let out = cut_and_patch(&m, v, w, &patch).unwrap();
        let before = m.curvature_report();
        let after = out.curvature_report();
        let n = m.vertex_count();
        prop_assert_eq!(out.vertex_count(), n + 1);
        prop_assert!((after.deficits[v] - (before.deficits[v] - 2.0 * patch.alpha())).abs() < 1e-9);
        prop_assert!((after.deficits[w] - (before.deficits[w] - 2.0 * patch.beta())).abs() < 1e-9);
        let apex = 2.0 * PI - 2.0 * (PI - patch.alpha() - patch.beta());
        prop_assert!((after.deficits[n] - apex).abs() < 1e-9);
        prop_assert!((after.total_deficit() - 4.0 * PI).abs() < 1e-9);
        prop_assert!((out.area() - m.area() - 2.0 * 0.5 * patch.a * patch.b * patch.gamma().sin()).abs() < 1e-9);
    }

    #[test]
    fn excise_undoes_patch(seed in 0u64..10_000) {
        let (m, v, w, patch) = random_case(seed, 0.9);
        let out = cut_and_patch(&m, v, w, &patch).unwrap();
        let ex = excise_lens(&out, m.vertex_count(), v, w).unwrap();
        prop_assert_eq!((ex.v, ex.w), (v, w));
        prop_assert!((ex.patch.a - patch.a).abs() < 1e-8 && (ex.patch.b - patch.b).abs() < 1e-8);
        prop_assert!(same_distances(&ex.metric, &m, 1e-8));
        let again = cut_and_patch(&ex.metric, v, w, &ex.patch).unwrap();
        prop_assert!(same_distances(&again, &out, 1e-8));
    }

    #[test]
    fn degenerate_patch_changes_nothing(seed in 0u64..10_000) {
        let (m, v, w, _) = random_case(seed, 0.5);
        let l = shortest_geodesic(&m, v, w).unwrap().length;
        let f = seed as f64 / 10_000.0 * 0.8 + 0.1;
        let out = cut_and_patch(&m, v, w, &LensPatch::new(l, f * l, (1.0 - f) * l).unwrap()).unwrap();
        prop_assert!(same_distances(&out, &m, 1e-8));
    }
}
