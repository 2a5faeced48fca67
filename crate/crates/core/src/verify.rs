use std::collections::{BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::attraction::{attraction_path, AttractionPath};
use crate::beacons::BeaconSet;
use crate::geometry::{Axis, Point};
use crate::polygon::{PolygonError, RectPolygon};
use crate::scalar::Scalar;

pub const COVERAGE_DISCLAIMER: &str =
    "sampling check: a pass means no uncovered sample was found at this density, not a proof of coverage";

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error("{combinations} candidate subsets exceed the budget of {budget}")]
    BudgetExceeded { combinations: u128, budget: u128 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Which points to test. Every sample lies in the closed polygon.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplePlan {
    /// Cell-centre grid over the bounding box, `grid × grid`.
    pub grid: usize,
    /// `boost × boost` points inside every cell of the vertex-coordinate
    /// grid, so thin corridors are sampled regardless of `grid`.
    pub boost: usize,
    /// Uniform random points in the bounding box (kept when inside).
    pub jitter: usize,
    pub seed: u64,
    /// Stop after this many failing samples.
    pub witness_limit: usize,
}

impl Default for SamplePlan {
    fn default() -> Self {
        SamplePlan { grid: 64, boost: 2, jitter: 64, seed: 0, witness_limit: 1 }
    }
}

impl SamplePlan {
    pub fn with_grid(grid: usize) -> Self {
        SamplePlan { grid, ..Self::default() }
    }

    /// Half the smallest gap between distinct vertex coordinates.
    pub fn reflex_offset(poly: &RectPolygon) -> Scalar {
        let mut best: Option<Scalar> = None;
        for axis in [Axis::X, Axis::Y] {
            for w in poly.distinct_coords(axis).windows(2) {
                let gap = &w[1] - &w[0];
                if best.as_ref().is_none_or(|b| &gap < b) {
                    best = Some(gap);
                }
            }
        }
        best.expect("a polygon has two distinct coordinates per axis") / Scalar::from_int(2)
    }

    /// The sample set, sorted and without duplicates.
    pub fn samples(&self, poly: &RectPolygon) -> Vec<Point> {
        let mut out = BTreeSet::new();
        for (i, v) in poly.vertices().iter().enumerate() {
            out.insert(v.clone());
            out.insert(v.midpoint(poly.vertex(poly.next(i))));
        }
        let delta = Self::reflex_offset(poly);
        for k in poly.reflex_vertices() {
            let v = poly.vertex(k);
            for (sx, sy) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let p = Point::new(
                    v.x.clone() + &delta * &Scalar::from_int(sx),
                    v.y.clone() + &delta * &Scalar::from_int(sy),
                );
                if poly.contains(&p) {
                    out.insert(p);
                }
            }
        }
        let (lo, hi) = poly.bbox();
        let (w, h) = (&hi.x - &lo.x, &hi.y - &lo.y);
        if self.grid > 0 {
            let g = self.grid as i64;
            for i in 0..g {
                for j in 0..g {
                    let p = Point::new(
                        lo.x.clone() + &w * &Scalar::new(2 * i + 1, 2 * g),
                        lo.y.clone() + &h * &Scalar::new(2 * j + 1, 2 * g),
                    );
                    if poly.contains(&p) {
                        out.insert(p);
                    }
                }
            }
        }
        if self.boost > 0 {
            let xs = poly.distinct_coords(Axis::X);
            let ys = poly.distinct_coords(Axis::Y);
            let b = self.boost as i64;
            for cx in xs.windows(2) {
                for cy in ys.windows(2) {
                    let centre = Point::new(cx[0].midpoint(&cx[1]), cy[0].midpoint(&cy[1]));
                    if !poly.contains(&centre) {
                        continue;
                    }
                    let (cw, ch) = (&cx[1] - &cx[0], &cy[1] - &cy[0]);
                    for i in 0..b {
                        for j in 0..b {
                            out.insert(Point::new(
                                cx[0].clone() + &cw * &Scalar::new(2 * i + 1, 2 * b),
                                cy[0].clone() + &ch * &Scalar::new(2 * j + 1, 2 * b),
                            ));
                        }
                    }
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        const DEN: i64 = 1 << 20;
        for _ in 0..self.jitter {
            let p = Point::new(
                lo.x.clone() + &w * &Scalar::new(rng.gen_range(0..=DEN), DEN),
                lo.y.clone() + &h * &Scalar::new(rng.gen_range(0..=DEN), DEN),
            );
            if poly.contains(&p) {
                out.insert(p);
            }
        }
        out.into_iter().collect()
    }

    /// Candidate beacon positions: every vertex, the `extra` points (e.g.
    /// decomposition corners) that lie in the polygon, and the interior grid.
    pub fn candidates(&self, poly: &RectPolygon, extra: &[Point]) -> Vec<Point> {
        let mut out: BTreeSet<Point> = poly.vertices().iter().cloned().collect();
        out.extend(extra.iter().filter(|p| poly.contains(p)).cloned());
        let coarse = SamplePlan { boost: 0, jitter: 0, ..self.clone() };
        out.extend(coarse.samples(poly));
        out.into_iter().collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum Witness {
    /// A sample attracted by no beacon, with its path toward each beacon.
    Uncovered { point: Point, paths: Vec<AttractionPath> },
    /// A pair with no beacon chain; `direct` is the path from `s` toward `t`.
    Unroutable { s: Point, t: Point, direct: AttractionPath },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyStats {
    pub samples: usize,
    pub beacons: usize,
    /// Largest number of beacons on a shortest routing chain.
    pub max_chain: usize,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub stats: VerifyStats,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn check_beacons(poly: &RectPolygon, beacons: &[Point]) -> Result<(), VerifyError> {
    match beacons.iter().find(|b| !poly.contains(b)) {
        Some(b) => Err(VerifyError::InvalidArgument(format!("beacon {b} is outside the polygon"))),
        None => Ok(()),
    }
}

/// Every sample must be attracted by at least one beacon.
pub fn verify_coverage(
    poly: &RectPolygon,
    beacons: &BeaconSet,
    plan: &SamplePlan,
) -> Result<VerifyReport, VerifyError> {
    let bs = beacons.points();
    check_beacons(poly, &bs)?;
    let samples = plan.samples(poly);
    let mut witnesses = Vec::new();
    let mut tested = 0;
    for p in &samples {
        tested += 1;
        let mut paths = Vec::with_capacity(bs.len());
        let mut covered = false;
        for b in &bs {
            let path = attraction_path(poly, p, b)?;
            if path.reached() {
                covered = true;
                break;
            }
            paths.push(path);
        }
        if !covered {
            witnesses.push(Witness::Uncovered { point: p.clone(), paths });
            if witnesses.len() >= plan.witness_limit.max(1) {
                break;
            }
        }
    }
    Ok(VerifyReport {
        verdict: if witnesses.is_empty() { Verdict::Pass } else { Verdict::Fail },
        witnesses,
        stats: VerifyStats {
            samples: tested,
            beacons: bs.len(),
            max_chain: 0,
            note: format!(
                "grid {0}x{0}, cell boost {1}, {2} jitter; {COVERAGE_DISCLAIMER}",
                plan.grid, plan.boost, plan.jitter
            ),
        },
    })
}

/// Beacon-to-beacon attraction, shared by all pairs routed through the same
/// beacon set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttractionGraph {
    pub beacons: Vec<Point>,
    /// `succ[u]` lists the beacons `b` with `attracts(P, b, beacons[u])`.
    pub succ: Vec<Vec<usize>>,
}

impl AttractionGraph {
    pub fn new(poly: &RectPolygon, beacons: &[Point]) -> Result<Self, VerifyError> {
        let mut succ = vec![Vec::new(); beacons.len()];
        for (u, p) in beacons.iter().enumerate() {
            for (v, b) in beacons.iter().enumerate() {
                if u != v && attraction_path(poly, p, b)?.reached() {
                    succ[u].push(v);
                }
            }
        }
        Ok(AttractionGraph { beacons: beacons.to_vec(), succ })
    }

    /// Beacons that attract `p`.
    pub fn entries(&self, poly: &RectPolygon, p: &Point) -> Result<Vec<bool>, VerifyError> {
        self.beacons.iter().map(|b| Ok(attraction_path(poly, p, b)?.reached())).collect()
    }

    /// Beacons attracted by `t`, i.e. from which `t` is reached as a target.
    pub fn exits(&self, poly: &RectPolygon, t: &Point) -> Result<Vec<bool>, VerifyError> {
        self.beacons.iter().map(|b| Ok(attraction_path(poly, b, t)?.reached())).collect()
    }

    /// Fewest beacons on a chain from the `entries` to the `exits`, by
    /// breadth-first search.
    pub fn shortest_chain(&self, entries: &[bool], exits: &[bool]) -> Option<usize> {
        let mut dist = vec![usize::MAX; self.beacons.len()];
        let mut queue = VecDeque::new();
        for (i, &e) in entries.iter().enumerate() {
            if e {
                dist[i] = 1;
                queue.push_back(i);
            }
        }
        while let Some(u) = queue.pop_front() {
            if exits[u] {
                return Some(dist[u]);
            }
            for &v in &self.succ[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        None
    }
}

/// The default routing pairs: all ordered vertex pairs plus `random` seeded
/// pairs of interior points.
pub fn default_pairs(poly: &RectPolygon, random: usize, seed: u64) -> Vec<(Point, Point)> {
    let vs = poly.vertices();
    let mut out = Vec::new();
    for s in vs {
        for t in vs {
            if s != t {
                out.push((s.clone(), t.clone()));
            }
        }
    }
    let pts = random_interior_points(poly, 2 * random, seed);
    out.extend(pts.chunks(2).map(|c| (c[0].clone(), c[1].clone())));
    out
}

/// Area-weighted uniform points in the interior, with rational coordinates.
pub fn random_interior_points(poly: &RectPolygon, count: usize, seed: u64) -> Vec<Point> {
    let rects: Vec<(Point, Point)> = poly
        .slabs(crate::geometry::Orientation::Horizontal)
        .iter()
        .flat_map(|s| s.rects().collect::<Vec<_>>())
        .collect();
    let areas: Vec<f64> = rects.iter().map(|(a, b)| ((&b.x - &a.x) * (&b.y - &a.y)).to_f64()).collect();
    let total: f64 = areas.iter().sum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const DEN: i64 = 1 << 16;
    (0..count)
        .map(|_| {
            let mut pick = rng.gen::<f64>() * total;
            let mut idx = rects.len() - 1;
            for (i, a) in areas.iter().enumerate() {
                if pick < *a {
                    idx = i;
                    break;
                }
                pick -= a;
            }
            let (a, b) = &rects[idx];
            Point::new(
                a.x.clone() + &(&b.x - &a.x) * &Scalar::new(rng.gen_range(1..DEN), DEN),
                a.y.clone() + &(&b.y - &a.y) * &Scalar::new(rng.gen_range(1..DEN), DEN),
            )
        })
        .collect()
}

/// Every pair `(s, t)` must be routable: `s` reaches `t` directly, or through
/// a chain of beacons whose last one `t` attracts.
pub fn verify_routing(
    poly: &RectPolygon,
    beacons: &BeaconSet,
    pairs: &[(Point, Point)],
    witness_limit: usize,
) -> Result<VerifyReport, VerifyError> {
    let bs = beacons.points();
    check_beacons(poly, &bs)?;
    for (s, t) in pairs {
        if !poly.contains(s) || !poly.contains(t) {
            return Err(VerifyError::InvalidArgument(format!("pair ({s}, {t}) leaves the polygon")));
        }
    }
    let graph = AttractionGraph::new(poly, &bs)?;
    let mut entries = std::collections::HashMap::new();
    let mut exits = std::collections::HashMap::new();
    let mut witnesses = Vec::new();
    let mut max_chain = 0;
    let mut tested = 0;
    for (s, t) in pairs {
        tested += 1;
        let direct = attraction_path(poly, s, t)?;
        if direct.reached() {
            continue;
        }
        if !entries.contains_key(s) {
            entries.insert(s.clone(), graph.entries(poly, s)?);
        }
        if !exits.contains_key(t) {
            exits.insert(t.clone(), graph.exits(poly, t)?);
        }
        match graph.shortest_chain(&entries[s], &exits[t]) {
            Some(len) => max_chain = max_chain.max(len),
            None => {
                witnesses.push(Witness::Unroutable { s: s.clone(), t: t.clone(), direct });
                if witnesses.len() >= witness_limit.max(1) {
                    break;
                }
            }
        }
    }
    Ok(VerifyReport {
        verdict: if witnesses.is_empty() { Verdict::Pass } else { Verdict::Fail },
        witnesses,
        stats: VerifyStats { samples: tested, beacons: bs.len(), max_chain, note: format!("{} pairs", pairs.len()) },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NecessityMode {
    Cover(SamplePlan),
    Route(Vec<(Point, Point)>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Necessity {
    /// Every `k`-subset of the candidates fails.
    Pass {
        subsets: u128,
    },
    Counterexample(BeaconSet),
}

pub const EXHAUST_BUDGET: u128 = 1_000_000;

fn binomial(m: usize, k: usize) -> u128 {
    if k > m {
        return 0;
    }
    let k = k.min(m.saturating_sub(k));
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((m - i) as u128) / (i as u128 + 1))
}

/// Calls `f` on each `k`-subset of `0..m` in lexicographic order until it
/// returns true.
fn any_subset(m: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if k > m {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return true;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] < m - k + i) else {
            return false;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Checks that no `k` of the candidate positions suffice. A discretized
/// corroboration of a lower bound, not a proof.
pub fn exhaust_necessity(
    poly: &RectPolygon,
    k: usize,
    candidates: &[Point],
    mode: &NecessityMode,
) -> Result<Necessity, VerifyError> {
    if k == 0 {
        return Err(VerifyError::InvalidArgument("k must be at least 1".into()));
    }
    check_beacons(poly, candidates)?;
    let m = candidates.len();
    let subsets = binomial(m, k);
    if subsets > EXHAUST_BUDGET {
        return Err(VerifyError::BudgetExceeded { combinations: subsets, budget: EXHAUST_BUDGET });
    }
    let found = match mode {
        NecessityMode::Cover(plan) => {
            let samples = plan.samples(poly);
            let words = samples.len().div_ceil(64);
            let mut masks = vec![vec![0u64; words]; m];
            for (c, b) in candidates.iter().enumerate() {
                for (i, p) in samples.iter().enumerate() {
                    if attraction_path(poly, p, b)?.reached() {
                        masks[c][i / 64] |= 1 << (i % 64);
                    }
                }
            }
            let full: Vec<u64> = (0..words)
                .map(|w| if (w + 1) * 64 <= samples.len() { !0 } else { (1u64 << (samples.len() % 64)) - 1 })
                .collect();
            let mut hit = None;
            any_subset(m, k, |idx| {
                let ok = (0..words).all(|w| idx.iter().fold(0u64, |acc, &c| acc | masks[c][w]) == full[w]);
                if ok {
                    hit = Some(idx.to_vec());
                }
                ok
            });
            hit
        }
        NecessityMode::Route(pairs) => {
            // reach[u][v]: node u is attracted by node v; candidates first,
            // then the pair endpoints.
            let mut nodes: Vec<Point> = candidates.to_vec();
            for (s, t) in pairs {
                for p in [s, t] {
                    if !nodes.contains(p) {
                        nodes.push(p.clone());
                    }
                }
            }
            let mut reach = vec![vec![false; nodes.len()]; nodes.len()];
            for (u, p) in nodes.iter().enumerate() {
                for (v, b) in nodes.iter().enumerate() {
                    reach[u][v] = u == v || attraction_path(poly, p, b)?.reached();
                }
            }
            let pos = |p: &Point| nodes.iter().position(|q| q == p).expect("endpoint is a node");
            let pair_idx: Vec<(usize, usize)> = pairs.iter().map(|(s, t)| (pos(s), pos(t))).collect();
            let mut hit = None;
            any_subset(m, k, |idx| {
                let ok = pair_idx.iter().all(|&(s, t)| routable(&reach, idx, s, t));
                if ok {
                    hit = Some(idx.to_vec());
                }
                ok
            });
            hit
        }
    };
    Ok(match found {
        None => Necessity::Pass { subsets },
        Some(idx) => Necessity::Counterexample(BeaconSet::from_points(idx.iter().map(|&i| candidates[i].clone()))),
    })
}

fn routable(reach: &[Vec<bool>], beacons: &[usize], s: usize, t: usize) -> bool {
    if reach[s][t] {
        return true;
    }
    let mut seen = vec![false; beacons.len()];
    let mut stack: Vec<usize> = (0..beacons.len()).filter(|&i| reach[s][beacons[i]]).collect();
    for &i in &stack {
        seen[i] = true;
    }
    while let Some(i) = stack.pop() {
        let u = beacons[i];
        if reach[u][t] {
            return true;
        }
        for j in 0..beacons.len() {
            if !seen[j] && reach[u][beacons[j]] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    false
}
