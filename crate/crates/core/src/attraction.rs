//! The beacon attraction dynamic: straight pull toward the beacon, sliding
//! along blocking edges, continuation at vertices, and dead points.

use serde::{Deserialize, Serialize};

use crate::geometry::{Dir, Point};
use crate::polygon::{Location, PolygonError, RectPolygon};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SegmentMode {
    Free,
    /// Sliding along the edge starting at this vertex index.
    Slide(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub from: Point,
    pub to: Point,
    pub mode: SegmentMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeadReason {
    /// Stopped on an edge at the foot of the perpendicular from the beacon.
    PerpendicularFoot,
    /// At a vertex with no distance-decreasing continuation.
    StuckVertex,
    /// At a reflex vertex where both incident edges decrease the distance.
    AmbiguousVertex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Reached,
    DeadPoint { at: Point, reason: DeadReason },
}

/// Serialized as `{"outcome": "reached" | "dead", "dead_reason", "points", ...}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(into = "PathJson")]
pub struct AttractionPath {
    pub start: Point,
    pub beacon: Point,
    pub segments: Vec<Segment>,
    pub outcome: Outcome,
}

#[derive(Serialize)]
struct PathJson {
    outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    dead_reason: Option<DeadReason>,
    points: Vec<Point>,
    start: Point,
    beacon: Point,
    segments: Vec<Segment>,
}

impl From<AttractionPath> for PathJson {
    fn from(p: AttractionPath) -> Self {
        let points = p.points();
        let (outcome, dead_reason) = match p.outcome {
            Outcome::Reached => ("reached", None),
            Outcome::DeadPoint { reason, .. } => ("dead", Some(reason)),
        };
        PathJson { outcome, dead_reason, points, start: p.start, beacon: p.beacon, segments: p.segments }
    }
}

impl AttractionPath {
    pub fn reached(&self) -> bool {
        self.outcome == Outcome::Reached
    }

    pub fn end(&self) -> &Point {
        self.segments.last().map_or(&self.start, |s| &s.to)
    }

    /// Start point followed by every segment end.
    pub fn points(&self) -> Vec<Point> {
        let mut out = vec![self.start.clone()];
        out.extend(self.segments.iter().map(|s| s.to.clone()));
        out
    }
}

/// Where a moving point currently sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Place {
    Interior,
    Edge(usize),
    Vertex(usize),
}

enum Step {
    Move { to: Point, place: Place, mode: SegmentMode },
    Done(Outcome),
}

fn place_of(poly: &RectPolygon, p: &Point) -> Result<Place, PolygonError> {
    match poly.locate(p) {
        Location::Outside => Err(PolygonError::PointOutsidePolygon(p.clone())),
        Location::Interior => Ok(Place::Interior),
        Location::OnEdge(i) => Ok(Place::Edge(i)),
        Location::AtVertex(k) => Ok(Place::Vertex(k)),
    }
}

fn outward(poly: &RectPolygon, i: usize) -> Dir {
    poly.edge_dir(i).cw()
}

fn free_feasible(poly: &RectPolygon, place: Place, d: &Point) -> bool {
    match place {
        Place::Interior => true,
        Place::Edge(i) => outward(poly, i).dot_sign(d) <= 0,
        Place::Vertex(k) => poly.vertex_cone_contains(k, d),
    }
}

/// Where the straight segment `x -> b` first stops: at the first point
/// beyond which it would leave P, or at `b`.
fn free_stop(poly: &RectPolygon, x: &Point, b: &Point) -> (Point, Place) {
    let d = b.sub(x);
    let zero = Scalar::zero();
    let one = Scalar::one();
    let dd = d.norm2();
    let mut best: Option<(Scalar, Place)> = None;
    let mut offer = |t: Scalar, place: Place| {
        if best.as_ref().is_none_or(|(bt, _)| t < *bt) {
            best = Some((t, place));
        }
    };
    for i in 0..poly.n() {
        let w = poly.vertex(i);
        let rel = w.sub(x);
        if rel.cross(&d).is_zero() {
            let s = rel.dot(&d);
            if s > zero && s < dd && !poly.vertex_cone_contains(i, &d) {
                offer(&s / &dd, Place::Vertex(i));
            }
        }
        if outward(poly, i).dot_sign(&d) <= 0 {
            continue;
        }
        let (a, e) = poly.edge_endpoints(i);
        let (fixed, run) = if a.x == e.x { (&a.x, (&a.y, &e.y)) } else { (&a.y, (&a.x, &e.x)) };
        let (xf, df, xr, dr) = if a.x == e.x { (&x.x, &d.x, &x.y, &d.y) } else { (&x.y, &d.y, &x.x, &d.x) };
        let t = (fixed - xf) / df;
        if t <= zero || t >= one {
            continue;
        }
        let at = xr + &(&t * dr);
        let (lo, hi) = if run.0 < run.1 { run } else { (run.1, run.0) };
        if *lo < at && at < *hi {
            offer(t, Place::Edge(i));
        }
    }
    match best {
        Some((t, place)) => (x.lerp(b, &t), place),
        None => (b.clone(), Place::Interior),
    }
}

/// Slide from `x` along edge `i` in direction `dir` until the perpendicular
/// foot of `b` or the edge endpoint, whichever comes first.
fn slide(poly: &RectPolygon, i: usize, x: &Point, dir: Dir, b: &Point) -> Step {
    let forward = poly.edge_dir(i) == dir;
    let end_k = if forward { poly.next(i) } else { i };
    let end = poly.vertex(end_k);
    let foot = match dir {
        Dir::East | Dir::West => Point::new(b.x.clone(), x.y.clone()),
        Dir::North | Dir::South => Point::new(x.x.clone(), b.y.clone()),
    };
    let to_end = dir.dot_sign(&end.sub(&foot));
    let mode = SegmentMode::Slide(i);
    if to_end > 0 {
        Step::Move { to: foot, place: Place::Edge(i), mode }
    } else {
        Step::Move { to: end.clone(), place: Place::Vertex(end_k), mode }
    }
}

fn step(poly: &RectPolygon, x: &Point, place: Place, b: &Point) -> Step {
    if x == b {
        return Step::Done(Outcome::Reached);
    }
    let d = b.sub(x);
    if free_feasible(poly, place, &d) {
        let (to, place) = free_stop(poly, x, b);
        return Step::Move { to, place, mode: SegmentMode::Free };
    }
    let dead = |reason| Step::Done(Outcome::DeadPoint { at: x.clone(), reason });
    match place {
        Place::Interior => unreachable!("free motion is always feasible in the interior"),
        Place::Edge(i) => {
            let u = poly.edge_dir(i);
            match u.dot_sign(&d) {
                0 => dead(DeadReason::PerpendicularFoot),
                s => slide(poly, i, x, if s > 0 { u } else { u.reverse() }, b),
            }
        }
        Place::Vertex(k) => {
            let out = poly.edge_dir(k);
            let back = poly.edge_dir(poly.prev(k)).reverse();
            match (out.dot_sign(&d) > 0, back.dot_sign(&d) > 0) {
                (true, true) => dead(DeadReason::AmbiguousVertex),
                (true, false) => slide(poly, k, x, out, b),
                (false, true) => slide(poly, poly.prev(k), x, back, b),
                (false, false) => dead(DeadReason::StuckVertex),
            }
        }
    }
}

fn run(poly: &RectPolygon, p: &Point, b: &Point, mut record: impl FnMut(Segment)) -> Result<Outcome, PolygonError> {
    place_of(poly, b)?;
    let mut place = place_of(poly, p)?;
    let mut x = p.clone();
    // every segment ends at a new vertex, a foot, an edge hit, or b
    for _ in 0..4 * poly.n() + 8 {
        match step(poly, &x, place, b) {
            Step::Done(outcome) => return Ok(outcome),
            Step::Move { to, place: next, mode } => {
                debug_assert!(to.dist2(b) < x.dist2(b), "distance must decrease");
                record(Segment { from: x, to: to.clone(), mode });
                x = to;
                place = next;
            }
        }
    }
    panic!("attraction path from {p} to {b} did not terminate");
}

/// The `b`-attraction path of `p`.
pub fn attraction_path(poly: &RectPolygon, p: &Point, b: &Point) -> Result<AttractionPath, PolygonError> {
    let mut segments = Vec::new();
    let outcome = run(poly, p, b, |s| segments.push(s))?;
    Ok(AttractionPath { start: p.clone(), beacon: b.clone(), segments, outcome })
}

/// Whether a beacon at `b` attracts the point `p`.
pub fn attracts(poly: &RectPolygon, b: &Point, p: &Point) -> Result<bool, PolygonError> {
    Ok(run(poly, p, b, |_| {})? == Outcome::Reached)
}

/// Whether `q` is a dead point for a beacon at `b`.
pub fn is_dead_point(poly: &RectPolygon, q: &Point, b: &Point) -> Result<bool, PolygonError> {
    let place = place_of(poly, q)?;
    place_of(poly, b)?;
    Ok(matches!(step(poly, q, place, b), Step::Done(Outcome::DeadPoint { .. })))
}
