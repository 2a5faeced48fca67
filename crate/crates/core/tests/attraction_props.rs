mod common;

use beacon_core::attraction::{attraction_path, attracts, SegmentMode};
use beacon_core::generators::random_x_monotone;
use beacon_core::polygon::EdgeKind;
use common::{oracle_agreement, polygon_and_points, random_interior_point, segment_inside};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distance_strictly_decreases(half in 2usize..12, seed in any::<u64>()) {
        let (poly, pts) = polygon_and_points(2 * half, seed, 8);
        for pair in pts.chunks(2) {
            let path = attraction_path(&poly, &pair[0], &pair[1]).unwrap();
            let d: Vec<_> = path.points().iter().map(|q| q.dist2(&pair[1])).collect();
            prop_assert!(d.windows(2).all(|w| w[1] < w[0]));
        }
    }

    #[test]
    fn reached_paths_bend_only_on_non_convex_edges(half in 2usize..12, seed in any::<u64>()) {
        let (poly, pts) = polygon_and_points(2 * half, seed, 16);
        for pair in pts.chunks(2) {
            let (p, b) = (&pair[0], &pair[1]);
            let path = attraction_path(&poly, p, b).unwrap();
            if !path.reached() {
                continue;
            }
            for seg in &path.segments {
                if let SegmentMode::Slide(i) = seg.mode {
                    let e = poly.edge(i);
                    prop_assert_ne!(e.kind, EdgeKind::Convex);
                    prop_assert!(!e.half_plane.contains(b));
                    prop_assert!(e.half_plane.contains(p));
                }
            }
        }
    }

    #[test]
    fn visible_points_are_attracted(half in 2usize..12, seed in any::<u64>()) {
        let (poly, pts) = polygon_and_points(2 * half, seed, 16);
        for pair in pts.chunks(2) {
            if segment_inside(&poly, &pair[0], &pair[1]) {
                prop_assert!(attracts(&poly, &pair[1], &pair[0]).unwrap());
            }
        }
        for v in poly.vertices() {
            for q in &pts[..2] {
                if segment_inside(&poly, v, q) {
                    prop_assert!(attracts(&poly, q, v).unwrap());
                }
            }
        }
    }

    #[test]
    fn xy_monotone_pairs_attract_both_ways(half in 2usize..10, seed in any::<u64>()) {
        let poly = random_x_monotone(2 * half, seed).unwrap();
        prop_assume!(!poly.has_reflex_edge());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts: Vec<_> = (0..10).map(|_| random_interior_point(&poly, &mut rng)).collect();
        for p in &pts {
            for q in pts.iter().chain(poly.vertices()) {
                prop_assert!(attracts(&poly, p, q).unwrap());
                prop_assert!(attracts(&poly, q, p).unwrap());
            }
        }
    }
}

#[test]
fn numeric_descent_agrees() {
    let (agree, tied, bad) = oracle_agreement(2000, 11);
    assert!(bad.is_empty(), "{} disagreements, first: {}", bad.len(), bad[0]);
    assert!(agree > 1900, "agree {agree}, tied {tied}");
}
