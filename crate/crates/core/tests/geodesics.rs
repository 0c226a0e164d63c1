mod common;

use alexandrov::builders::{double_polygon, star_gluing};
use alexandrov::{canonicalize_polyhedron, distance_matrix, iota, shortest_geodesic, ConeMetric};
use common::*;
use proptest::prelude::*;

#[test]
fn cube_all_pairs_match_unfolding() {
    let m = cube();
    for v in 0..8 {
        for w in v + 1..8 {
            let p = shortest_geodesic(&m, v, w).unwrap();
            let oracle = unfolding_distance(&m, v, w, 8).unwrap();
            assert!((p.length - oracle).abs() < 1e-9, "{v}-{w}: {} vs {oracle}", p.length);
        }
    }
    let d = distance_matrix(&m).unwrap();
    let all: Vec<f64> = d.distances.iter().flatten().copied().filter(|&x| x > 0.0).collect();
    let min = all.iter().copied().fold(f64::INFINITY, f64::min);
    let max = all.iter().copied().fold(0.0, f64::max);
    assert!((min - 1.0).abs() < 1e-12);
    assert!((max - 5f64.sqrt()).abs() < 1e-12);
}

#[test]
fn regular_tetrahedron_edges_are_shortest() {
    let d = distance_matrix(&regular_tetrahedron()).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            let expect = if i == j { 0.0 } else { 1.0 };
            assert!((d.distances[i][j] - expect).abs() < 1e-12);
        }
    }
}

#[test]
fn doubled_square_uses_both_sheets() {
    let m = double_polygon(&[[0.0f64, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
    for (v, w, expect) in [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 2f64.sqrt()), (1, 3, 2f64.sqrt())] {
        let oracle = unfolding_distance(&m, v, w, 6).unwrap();
        let p = shortest_geodesic(&m, v, w).unwrap();
        assert!((p.length - expect).abs() < 1e-12);
        assert!((oracle - expect).abs() < 1e-12);
    }
}

#[test]
fn path_unfolds_to_a_segment_and_avoids_cone_points() {
    let m = cube();
    let p = shortest_geodesic(&m, 0, 7).unwrap();
    let total: f64 = p.legs.iter().map(|l| l.length).sum();
    assert!((total - p.length).abs() < 1e-9 * p.length);
    for leg in &p.legs {
        let [a, b] = leg.unfolded_endpoints();
        assert!(((b - a).norm() - leg.length).abs() < 1e-9 * leg.length);
        assert_eq!(leg.faces.len(), leg.crossings.len() + 1);
        for c in &leg.crossings {
            assert!(c.t >= 1e-9 && c.t <= 1.0 - 1e-9);
        }
    }
    for v in &p.vertices()[1..p.vertices().len() - 1] {
        assert!(!m.is_essential(*v));
    }
}

#[test]
fn flat_vertices_do_not_change_distances() {
    let m = cube();
    let fine = m.midpoint_subdivided().unwrap();
    assert_eq!(fine.essential_vertices(), (0..8).collect::<Vec<_>>());
    let a = distance_matrix(&m).unwrap();
    let b = distance_matrix(&fine).unwrap();
    for i in 0..8 {
        for j in 0..8 {
            assert!((a.distances[i][j] - b.distances[i][j]).abs() < 1e-9);
        }
    }
    // The diagonal of a face passes through the midpoint vertex of the face diagonal.
    let p = shortest_geodesic(&fine, 0, 7).unwrap();
    assert!((p.length - 5f64.sqrt()).abs() < 1e-9);
}

#[test]
fn saddle_vertices_bend_paths() {
    // Apexes of a 7-fold star have angle 7π/3 > 2π.
    let m: ConeMetric<f64> = star_gluing(7, 1.0).unwrap();
    for (v, w) in [(2, 5), (2, 4), (0, 1), (3, 7)] {
        let p = shortest_geodesic(&m, v, w).unwrap();
        let upper = steiner_distance(&m, v, w, 12);
        assert!(p.length <= upper + 1e-9, "{v}-{w}: {} > {upper}", p.length);
        assert!(p.length >= upper - 0.02, "{v}-{w}: {} << {upper}", p.length);
    }
    // Ring vertices three apart: going over an apex costs 2.
    let p = shortest_geodesic(&m, 2, 5).unwrap();
    assert!((p.length - 2.0).abs() < 1e-9);
    assert!(p.vertices().contains(&0) || p.vertices().contains(&1));
}

fn assert_against_oracles(m: &ConeMetric<f64>, v: usize, w: usize) {
    let p = shortest_geodesic(m, v, w).unwrap();
    let upper = steiner_distance(m, v, w, 16);
    assert!(p.length <= upper + 1e-9, "{v}-{w}: {} > steiner {upper}", p.length);
    let max_edge = m.max_length();
    assert!(upper - p.length <= 0.03 * max_edge, "{v}-{w}: {} far below steiner {upper}", p.length);
    if let Some(u) = unfolding_distance(m, v, w, 7) {
        assert!(p.length <= u + 1e-9, "{v}-{w}: {} > unfolding {u}", p.length);
    }
    let back = shortest_geodesic(m, w, v).unwrap();
    assert_eq!(p.length, back.length);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_polyhedra_agree_with_oracles(seed in 0u64..1_000_000, n in 4usize..9) {
        let poly = canonicalize_polyhedron(&sphere_points(n, seed)).unwrap();
        let m: ConeMetric<f64> = iota(&poly).unwrap();
        let k = m.vertex_count();
        assert_against_oracles(&m, 0, k - 1);
        assert_against_oracles(&m, 1, k / 2);
    }

    #[test]
    fn distance_matrix_is_a_metric(seed in 0u64..1_000_000, n in 4usize..8) {
        let poly = canonicalize_polyhedron(&sphere_points(n, seed)).unwrap();
        let m: ConeMetric<f64> = iota(&poly).unwrap();
        let d = distance_matrix(&m).unwrap().distances;
        for i in 0..d.len() {
            prop_assert_eq!(d[i][i], 0.0);
            for j in 0..d.len() {
                prop_assert_eq!(d[i][j], d[j][i]);
                for k in 0..d.len() {
                    prop_assert!(d[i][k] <= d[i][j] + d[j][k] + 1e-9);
                }
            }
        }
    }
}
