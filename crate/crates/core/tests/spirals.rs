use beacon_core::beacons::BeaconSet;
use beacon_core::generators::{coverage_spiral, greedy_cover_spiral, Spiral};
use beacon_core::geometry::Point;
use beacon_core::kernel::kernel;
use beacon_core::verify::{exhaust_necessity, verify_coverage, Necessity, NecessityMode, SamplePlan, Witness};

fn corners(s: &Spiral) -> Vec<Point> {
    s.decomposition.in_order().iter().flat_map(|r| r.corners()).collect()
}

/// Constraint-line pivots `v_{3i+1}` used by the greedy placement.
fn pivots(r: usize) -> Vec<usize> {
    (1..r.div_ceil(3)).filter(|i| 3 * i + 2 <= r).map(|i| 3 * i + 1).collect()
}

#[test]
fn greedy_placement_misses_only_its_pivots() {
    // Every greedy beacon near a pivot lies in the pivot's open exterior
    // quadrant, so the pivot itself is an ambiguous vertex for all of them.
    for r in 1..=15 {
        let s = coverage_spiral(r);
        let g = greedy_cover_spiral(&s).unwrap();
        let plan = SamplePlan { witness_limit: usize::MAX, ..SamplePlan::with_grid(48) };
        let rep = verify_coverage(&s.polygon, &g, &plan).unwrap();
        let mut missed: Vec<usize> = rep
            .witnesses
            .iter()
            .map(|w| match w {
                Witness::Uncovered { point, .. } => s.polygon.index_of(point).expect("witness is a vertex"),
                _ => unreachable!(),
            })
            .collect();
        missed.sort();
        assert_eq!(missed, pivots(r), "r = {r}");
    }
}

#[test]
fn seven_needs_three() {
    let s = coverage_spiral(7);
    let g = greedy_cover_spiral(&s).unwrap();
    assert_eq!(g.len(), 3);
    // two beacons at v2 and v6 leave a sliver beyond v4 uncovered
    let two = BeaconSet::from_points([s.spine[2].clone(), s.spine[6].clone()]);
    let rep = verify_coverage(&s.polygon, &two, &SamplePlan::with_grid(48)).unwrap();
    let Some(Witness::Uncovered { point, .. }) = rep.witnesses.first() else { panic!("expected a witness") };
    assert!(s.decomposition.c_rect(4).contains(point));
    assert_ne!(point, &s.spine[4]);
    let prefix = BeaconSet { beacons: g.beacons[..2].to_vec() };
    let rep = verify_coverage(&s.polygon, &prefix, &SamplePlan::with_grid(48)).unwrap();
    assert!(!rep.passed());
}

#[test]
fn seven_two_beacons_never_suffice() {
    let s = coverage_spiral(7);
    let mut cands: Vec<Point> = s.polygon.reflex_vertices().map(|k| s.polygon.vertex(k).clone()).collect();
    cands.extend(corners(&s));
    cands.sort();
    cands.dedup();
    let res = exhaust_necessity(&s.polygon, 2, &cands, &NecessityMode::Cover(SamplePlan::with_grid(32))).unwrap();
    assert!(matches!(res, Necessity::Pass { .. }), "{res:?}");
}

#[test]
fn seven_has_empty_kernel() {
    assert!(kernel(&coverage_spiral(7).polygon).is_empty());
}

#[test]
fn seven_cut_counts_at_v1() {
    use beacon_core::polygon::Cut;
    let p = coverage_spiral(7).polygon;
    assert_eq!(p.count_reflex_below(&Cut::just_below(1)).unwrap(), 6);
    assert_eq!(p.m_cut_class(&Cut::just_below(1)).unwrap(), 0);
    assert_eq!(p.count_reflex_below(&Cut::just_above(1)).unwrap(), 7);
    assert_eq!(p.m_cut_class(&Cut::just_above(1)).unwrap(), 1);
}

#[test]
fn four_is_not_monotone() {
    let m = coverage_spiral(4).polygon.monotonicity();
    assert!(!m.x_monotone && !m.y_monotone);
}

#[test]
fn routing_spirals_need_half_the_reflex_count() {
    use beacon_core::generators::routing_spiral;
    for r in 3..=5 {
        let s = routing_spiral(r).unwrap();
        let mut cands = corners(&s);
        cands.extend(SamplePlan { grid: 24, boost: 2, jitter: 0, seed: 0, witness_limit: 1 }.samples(&s.polygon));
        cands.sort();
        cands.dedup();
        let (p, q) = (s.p().clone(), s.q().clone());
        let mode = NecessityMode::Route(vec![(p.clone(), q.clone()), (q, p)]);
        let k = r.div_ceil(2);
        let res = exhaust_necessity(&s.polygon, k - 1, &cands, &mode).unwrap();
        assert!(matches!(res, Necessity::Pass { .. }), "r = {r}");
        let res = exhaust_necessity(&s.polygon, k, &cands, &mode).unwrap();
        assert!(matches!(res, Necessity::Counterexample(_)), "r = {r}");
    }
}
