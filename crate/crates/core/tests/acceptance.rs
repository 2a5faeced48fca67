//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use beacon_core::attraction::{attraction_path, attracts, SegmentMode};
use beacon_core::beacons::{BeaconSet, Provenance};
use beacon_core::generators::{
    bench_polygon, coverage_spiral, greedy_cover_spiral, random_rectilinear, random_x_monotone, routing_spiral, Spiral,
};
use beacon_core::geometry::{Orientation, Point};
use beacon_core::kernel::{kernel, kernel_region_oracle, same_kernel};
use beacon_core::placement::{cover, cover_monotone, route_beacons};
use beacon_core::polygon::{Cut, EdgeKind, RectPolygon};
use beacon_core::verify::{
    default_pairs, exhaust_necessity, verify_coverage, verify_routing, Necessity, NecessityMode, SamplePlan, Witness,
};
use common::{oracle_agreement, polygon_and_points, random_interior_point, segment_inside};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn median(mut xs: Vec<Duration>) -> Duration {
    xs.sort();
    xs[xs.len() / 2]
}

fn random_corpus(count: u64, max_n: usize, seed: u64) -> Vec<RectPolygon> {
    let sizes = (max_n - 4) / 2 + 1;
    (0..count).map(|s| random_rectilinear(4 + 2 * (s as usize % sizes), seed + s).unwrap()).collect()
}

fn monotone_corpus(count: u64, max_n: usize, seed: u64) -> Vec<RectPolygon> {
    let sizes = (max_n - 4) / 2 + 1;
    (0..count).map(|s| random_x_monotone(4 + 2 * (s as usize % sizes), seed + s).unwrap()).collect()
}

fn kernel_equivalence() -> Outcome {
    let start = Instant::now();
    let mut polys = random_corpus(300, 60, 1_000);
    polys.extend(monotone_corpus(200, 60, 2_000));
    polys.extend((0..=20).map(|r| coverage_spiral(r).polygon));
    polys.extend((3..=20).map(|r| routing_spiral(r).unwrap().polygon));
    let mismatches = polys.iter().filter(|p| !same_kernel(&kernel(p), &kernel_region_oracle(p))).count();
    let t = start.elapsed();
    outcome(
        mismatches == 0 && t < Duration::from_secs(60),
        format!("{} polygons, {mismatches} mismatches, {:.1}s (limit 60s)", polys.len(), t.as_secs_f64()),
    )
}

fn kernel_speed() -> Outcome {
    let p = bench_polygon(2000).unwrap();
    let time = |f: &dyn Fn()| {
        let s = Instant::now();
        f();
        s.elapsed()
    };
    let fast = median((0..5).map(|_| time(&|| drop(kernel(&p)))).collect());
    let slow = median((0..5).map(|_| time(&|| drop(kernel_region_oracle(&p)))).collect());
    let ratio = slow.as_secs_f64() / fast.as_secs_f64();
    outcome(
        ratio >= 20.0,
        format!("n = {}, kernel {:.2?}, oracle {:.2?}, speedup {ratio:.0}x (need 20x)", p.n(), fast, slow),
    )
}

fn coverage_tightness() -> Outcome {
    let start = Instant::now();
    let plan = SamplePlan { grid: 200, boost: 3, jitter: 0, seed: 3, witness_limit: 1 };
    let mut bad = Vec::new();
    for r in 1..=15 {
        let s = coverage_spiral(r);
        let b = cover(&s.polygon).unwrap();
        if b.len() != r.div_ceil(3) {
            bad.push(format!("r = {r}: {} beacons", b.len()));
        } else if !verify_coverage(&s.polygon, &b, &plan).unwrap().passed() {
            bad.push(format!("r = {r}: verification failed"));
        }
    }
    let s = coverage_spiral(7);
    let two = BeaconSet::from_points([s.spine[2].clone(), s.spine[6].clone()]);
    let rep = verify_coverage(&s.polygon, &two, &SamplePlan { witness_limit: usize::MAX, ..plan.clone() }).unwrap();
    let near_v4 = rep.witnesses.iter().any(|w| match w {
        Witness::Uncovered { point, .. } => near_vertex(&s, 4, point) && s.polygon.index_of(point).is_none(),
        _ => false,
    });
    if !near_v4 {
        bad.push(format!("r = 7 at v2, v6: no witness near v4 among {}", rep.witnesses.len()));
    }
    let t = start.elapsed();
    if t > Duration::from_secs(120) {
        bad.push(format!("took {:.1}s", t.as_secs_f64()));
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!("r = 1..15 tight, r = 7 with beacons at v2, v6 fails near v4, {:.1}s", t.as_secs_f64())
        } else {
            bad.join("; ")
        },
    )
}

/// Within one of the decomposition rectangles touching spine vertex `k`.
fn near_vertex(s: &Spiral, k: usize, p: &Point) -> bool {
    let v = &s.spine[k];
    s.decomposition.in_order().iter().any(|r| r.corners().contains(v) && r.contains(p))
}

fn reflex_provenance(p: &RectPolygon, b: &BeaconSet) -> bool {
    b.beacons.iter().all(|x| match x.provenance {
        Provenance::ReflexVertex(k) => p.is_reflex(k) && p.vertex(k) == &x.point,
        _ => false,
    })
}

fn coverage_upper_bound() -> Outcome {
    let mut bad = Vec::new();
    let plan = SamplePlan::with_grid(48);
    for (i, p) in random_corpus(200, 40, 3_000).iter().enumerate() {
        let b = cover(p).unwrap();
        let bound = p.r().div_ceil(3).max(1);
        if b.len() > bound {
            bad.push(format!("#{i}: {} > {bound}", b.len()));
        } else if p.r() >= 1 && !reflex_provenance(p, &b) {
            bad.push(format!("#{i}: beacon off a reflex vertex"));
        } else if !verify_coverage(p, &b, &plan).unwrap().passed() {
            bad.push(format!("#{i}: verification failed"));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "200 polygons, n <= 40".into() } else { bad.join("; ") })
}

fn monotone_coverage() -> Outcome {
    let mut bad = Vec::new();
    let plan = SamplePlan::with_grid(48);
    for (i, p) in monotone_corpus(100, 40, 4_000).iter().enumerate() {
        let b = cover_monotone(p).unwrap();
        if b.len() > p.r() / 4 + 1 {
            bad.push(format!("#{i}: {} beacons, r = {}", b.len(), p.r()));
        } else if !verify_coverage(p, &b, &plan).unwrap().passed() {
            bad.push(format!("#{i}: verification failed"));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "100 x-monotone polygons".into() } else { bad.join("; ") })
}

fn greedy_lemma() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for r in 4..=30 {
        let s = coverage_spiral(r);
        let g = greedy_cover_spiral(&s).unwrap();
        let k = g.len();
        for i in 2..k {
            checked += 1;
            if !s.decomposition.a[3 * i - 1].contains(&g.beacons[i - 1].point) {
                bad.push(format!("r = {r}, b{i}"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() { format!("{checked} middle beacons, r = 4..30") } else { bad.join("; ") },
    )
}

fn routing_upper_bound() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut pairs_checked = 0;
    let mut xy = 0;
    let mut polys = random_corpus(200, 32, 5_000);
    polys.extend(monotone_corpus(40, 32, 6_000).into_iter().filter(|p| !p.has_reflex_edge()));
    for (i, p) in polys.iter().enumerate() {
        let b = route_beacons(p).unwrap();
        if !p.has_reflex_edge() {
            xy += 1;
            if !b.is_empty() {
                bad.push(format!("#{i}: xy-monotone got {} beacons", b.len()));
            }
        }
        if b.len() > 3 * p.r() / 4 {
            bad.push(format!("#{i}: {} > {}", b.len(), 3 * p.r() / 4));
            continue;
        }
        let pairs = default_pairs(p, 100, i as u64);
        pairs_checked += pairs.len();
        if !verify_routing(p, &b, &pairs, 1).unwrap().passed() {
            bad.push(format!("#{i}: verification failed"));
        }
    }
    let t = start.elapsed();
    if t > Duration::from_secs(300) {
        bad.push(format!("took {:.1}s", t.as_secs_f64()));
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} polygons ({xy} xy-monotone), {pairs_checked} pairs, {:.1}s", polys.len(), t.as_secs_f64())
        } else {
            bad.join("; ")
        },
    )
}

fn routing_lower_bound() -> Outcome {
    let mut bad = Vec::new();
    for r in 3..=5 {
        let s = routing_spiral(r).unwrap();
        let mut cands: Vec<Point> = s.decomposition.in_order().iter().flat_map(|q| q.corners()).collect();
        cands.extend(SamplePlan { grid: 24, boost: 2, jitter: 0, seed: 0, witness_limit: 1 }.samples(&s.polygon));
        cands.sort();
        cands.dedup();
        let (p, q) = (s.p().clone(), s.q().clone());
        let mode = NecessityMode::Route(vec![(p.clone(), q.clone()), (q, p)]);
        match exhaust_necessity(&s.polygon, r.div_ceil(2) - 1, &cands, &mode).unwrap() {
            Necessity::Pass { .. } => {}
            Necessity::Counterexample(b) => bad.push(format!("r = {r}: {:?} routes", b.points())),
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "r = 3, 4, 5 on sampled candidates".into() } else { bad.join("; ") })
}

fn attraction_model() -> Outcome {
    let mut bad = Vec::new();
    for seed in 0..200u64 {
        let (poly, pts) = polygon_and_points(4 + 2 * (seed as usize % 11), 7_000 + seed, 16);
        for pair in pts.chunks(2) {
            let (p, b) = (&pair[0], &pair[1]);
            let path = attraction_path(&poly, p, b).unwrap();
            let d: Vec<_> = path.points().iter().map(|q| q.dist2(b)).collect();
            if !d.windows(2).all(|w| w[1] < w[0]) {
                bad.push(format!("distance not decreasing, seed {seed}"));
            }
            if path.reached() {
                for seg in &path.segments {
                    if let SegmentMode::Slide(i) = seg.mode {
                        if poly.edge(i).kind == EdgeKind::Convex {
                            bad.push(format!("slid on a convex edge, seed {seed}"));
                        }
                    }
                }
            }
            if segment_inside(&poly, p, b) && !attracts(&poly, b, p).unwrap() {
                bad.push(format!("visible but not attracted, seed {seed}"));
            }
        }
    }
    let (agree, tied, mismatches) = oracle_agreement(10_000, 8_000);
    if !mismatches.is_empty() {
        bad.push(format!("{} numeric disagreements, first {}", mismatches.len(), mismatches[0]));
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() { format!("{agree} triples agree, {tied} in the tie zone") } else { bad.join("; ") },
    )
}

fn structural_identities() -> Outcome {
    let mut bad = Vec::new();
    let mut polys = random_corpus(300, 60, 9_000);
    polys.extend(monotone_corpus(100, 60, 9_500));
    polys.extend((0..=20).map(|r| coverage_spiral(r).polygon));
    polys.extend((3..=20).map(|r| routing_spiral(r).unwrap().polygon));
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut cuts = 0;
    let mut tries = 0;
    while cuts < 1000 && tries < 10_000 {
        tries += 1;
        let p = &polys[rng.gen_range(0..polys.len())];
        if p.r() == 0 {
            continue;
        }
        let o = if rng.gen() { Orientation::Horizontal } else { Orientation::Vertical };
        let Ok((a, b)) = p.split(&Cut::through(random_interior_point(p, &mut rng), o)) else { continue };
        cuts += 1;
        if &a.area() + &b.area() != p.area() {
            bad.push(format!("area not conserved on {:?}", p.vertices()));
        }
        polys.push(a);
        polys.push(b);
    }
    if cuts < 1000 {
        bad.push(format!("only {cuts} cuts"));
    }
    let wrong = polys.iter().filter(|p| p.n() != 2 * p.r() + 4).count();
    if wrong > 0 {
        bad.push(format!("{wrong} polygons with n != 2r + 4"));
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() { format!("{} polygons, {cuts} cuts", polys.len()) } else { bad.join("; ") },
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("kernel equals oracle", kernel_equivalence),
        ("kernel speedup at n = 2000", kernel_speed),
        ("coverage tight on spirals", coverage_tightness),
        ("coverage upper bound", coverage_upper_bound),
        ("monotone coverage", monotone_coverage),
        ("greedy beacons in A(3i-1)", greedy_lemma),
        ("routing upper bound", routing_upper_bound),
        ("routing lower bound on spirals", routing_lower_bound),
        ("attraction model", attraction_model),
        ("structural identities", structural_identities),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.ok {
            failed += 1;
        }
        println!("[{}] {:>2} {name}: {}", if o.ok { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("acceptance: {}/10 passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
