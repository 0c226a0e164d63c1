mod common;

use alexandrov::builders::double_polygon;
use alexandrov::generate::{convex_polyhedron, with_flat_vertices};
use alexandrov::{distance_matrix, edge_flip, iota, retriangulate_essential, ConeMetric, Error};
use common::*;
use proptest::prelude::*;

#[test]
fn cube_has_three_n_minus_six_edges() {
    let et = retriangulate_essential(&cube()).unwrap();
    let t = et.metric().triangulation();
    assert_eq!((t.vertex_count(), t.edge_count(), t.face_count()), (8, 18, 12));
}

#[test]
fn doubled_square_has_six_edges() {
    let m = double_polygon(&[[0.0f64, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
    let t = retriangulate_essential(&m).unwrap().metric().triangulation().clone();
    assert_eq!((t.vertex_count(), t.edge_count(), t.face_count()), (4, 6, 4));
}

#[test]
fn essential_input_is_left_alone() {
    let m = cube();
    let et = retriangulate_essential(&m).unwrap();
    assert_eq!(et.metric().triangulation().triangles(), m.triangulation().triangles());
    assert_eq!(et.metric().lengths(), m.lengths());
}

#[test]
fn rectangle_gluing_retriangulates_to_four_vertices() {
    let m: ConeMetric<f64> = alexandrov::builders::glue_polygon(&alexandrov::builders::rectangle_gluing()).unwrap();
    let et = retriangulate_essential(&m).unwrap();
    assert_eq!(et.metric().vertex_count(), 4);
    assert_eq!(et.metric().triangulation().edge_count(), 6);
    assert!((et.metric().area() - 2.0).abs() < 1e-9);
}

#[test]
fn flipping_keeps_angles() {
    let m: ConeMetric<f64> = iota(&convex_polyhedron(7, 11).unwrap()).unwrap();
    let et = retriangulate_essential(&m).unwrap();
    let before = et.metric().angle_sums();
    let mut flipped = 0;
    for e in 0..et.metric().triangulation().edge_count() {
        match edge_flip(&et, e) {
            Ok(f) => {
                flipped += 1;
                for (a, b) in before.iter().zip(f.metric().angle_sums()) {
                    assert!((a - b).abs() < 1e-9);
                }
                let new_len: Vec<f64> = f.metric().lengths().to_vec();
                let fresh = (0..new_len.len()).find(|&i| et.metric().lengths().iter().all(|&l| (l - new_len[i]).abs() > 1e-12));
                let back = edge_flip(&f, fresh.unwrap()).unwrap();
                let mut x = back.metric().lengths().to_vec();
                let mut y = et.metric().lengths().to_vec();
                x.sort_by(f64::total_cmp);
                y.sort_by(f64::total_cmp);
                for (a, b) in x.iter().zip(&y) {
                    assert!((a - b).abs() < 1e-12);
                }
            }
            Err(err) => assert_eq!(err, Error::NotFlippable(e)),
        }
    }
    assert!(flipped > 0);
}

fn check_retriangulation(m: &ConeMetric<f64>) {
    let et = retriangulate_essential(m).unwrap();
    let n = m.essential_vertices().len();
    let t = et.metric().triangulation();
    assert_eq!(t.vertex_count(), n);
    assert_eq!(t.edge_count(), 3 * n - 6);
    assert_eq!(t.face_count(), 2 * n - 4);
    for (i, &v) in et.vertex_map().iter().enumerate() {
        let a = et.metric().angle_sum(i).unwrap();
        let b = m.angle_sum(v).unwrap();
        assert!((a - b).abs() < 1e-9, "angle at {v}: {a} vs {b}");
    }
    assert!((et.metric().area() - m.area()).abs() < 1e-9 * m.area());
    // Edges run along straight paths that avoid cone points and each other.
    let paths = et.provenances();
    let mut pieces = Vec::new();
    for (e, p) in paths.iter().enumerate() {
        assert!((p.length - et.metric().length(e)).abs() < 1e-9);
        let vs = p.vertices();
        for v in &vs[1..vs.len() - 1] {
            assert!(!m.is_essential(*v));
        }
        for s in face_segments(m, p) {
            pieces.push((e, s));
        }
    }
    for (i, (e1, (f1, a, b))) in pieces.iter().enumerate() {
        for (e2, (f2, c, d)) in &pieces[i + 1..] {
            if e1 != e2 && f1 == f2 {
                assert!(!segments_cross(*a, *b, *c, *d), "edges {e1} and {e2} cross in face {f1}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn flat_vertices_are_removed(seed in 0u64..1_000_000, n in 4usize..9, extra in 1usize..12) {
        let base: ConeMetric<f64> = iota(&convex_polyhedron(n, seed).unwrap()).unwrap();
        let m = with_flat_vertices(&base, extra, seed ^ 0x5eed).unwrap();
        check_retriangulation(&m);
    }

    #[test]
    fn lengths_determine_distances(seed in 0u64..1_000_000, n in 4usize..8) {
        let base: ConeMetric<f64> = iota(&convex_polyhedron(n, seed).unwrap()).unwrap();
        let m = with_flat_vertices(&base, 6, seed + 1).unwrap();
        let et = retriangulate_essential(&m).unwrap();
        // Rebuild from combinatorics and lengths alone.
        let rebuilt = ConeMetric::from_edge_lengths(
            et.metric().triangulation().clone(),
            et.metric().lengths().to_vec(),
            Default::default(),
        )
        .unwrap();
        let a = distance_matrix(&m).unwrap().distances;
        let b = distance_matrix(&rebuilt).unwrap().distances;
        for i in 0..a.len() {
            for j in 0..a.len() {
                prop_assert!((a[i][j] - b[i][j]).abs() < 1e-8);
            }
        }
    }
}
