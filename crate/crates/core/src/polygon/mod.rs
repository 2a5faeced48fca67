//! Simple rectilinear polygons: validation, vertex and edge classification,
//! monotonicity, point location, and cuts.

mod cut;
mod slabs;

pub use cut::{BoundaryPoint, Chord, Cut, CutAnchor, CutOffset};
pub use slabs::{Interval, Slab};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Axis, Dir, Orientation, Point, Transform};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolygonError {
    #[error("polygon needs at least 4 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("edge {index} from {from} to {to} is not axis-parallel or has zero length")]
    NotRectilinear { index: usize, from: Point, to: Point },
    #[error("vertex {index} at {at} has a straight angle (collinear edges)")]
    Collinear { index: usize, at: Point },
    #[error("boundary is not simple: edges {first} and {second} intersect")]
    NotSimple { first: usize, second: usize },
    #[error(
        "general position violated: a cut connects reflex vertices {first} at {first_at} and {second} at {second_at}"
    )]
    GeneralPositionViolated { first: usize, first_at: Point, second: usize, second_at: Point },
    #[error("cut is not a chord of the polygon: {0}")]
    NotAChord(String),
    #[error("point {0} lies outside the polygon")]
    PointOutsidePolygon(Point),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexClass {
    Convex,
    Reflex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeKind {
    Convex,
    Reflex,
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Facing {
    Top,
    Bottom,
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    AtMost,
    AtLeast,
}

/// A closed axis-parallel half-plane `coord(axis) <= value` or `>= value`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HalfPlane {
    pub axis: Axis,
    pub value: Scalar,
    pub side: Side,
}

impl HalfPlane {
    pub fn contains(&self, p: &Point) -> bool {
        let c = p.coord(self.axis);
        match self.side {
            Side::AtMost => *c <= self.value,
            Side::AtLeast => *c >= self.value,
        }
    }
}

/// An edge of a polygon, identified by its starting vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeRef {
    pub index: usize,
    pub orientation: Orientation,
    pub kind: EdgeKind,
    /// Top/bottom/left/right for convex and reflex edges; decided by the
    /// direction in which the two adjacent edges leave this one.
    pub facing: Option<Facing>,
    /// Supporting half-plane: bounded by the edge's line, containing the
    /// interior locally at the edge.
    pub half_plane: HalfPlane,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monotonicity {
    pub x_monotone: bool,
    pub y_monotone: bool,
}

impl Monotonicity {
    pub fn xy(&self) -> bool {
        self.x_monotone && self.y_monotone
    }
}

/// Where a point sits relative to a polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Outside,
    Interior,
    /// In the relative interior of edge `i` (from vertex `i` to `i + 1`).
    OnEdge(usize),
    AtVertex(usize),
}

impl Location {
    pub fn is_inside(self) -> bool {
        !matches!(self, Location::Outside)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidateOptions {
    pub check_general_position: bool,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions { check_general_position: true }
    }
}

/// A simple rectilinear polygon with counterclockwise vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectPolygon {
    vertices: Vec<Point>,
    classes: Vec<VertexClass>,
    reflex_count: usize,
    reversed: bool,
}

fn signed_area2(pts: &[Point]) -> Scalar {
    let n = pts.len();
    (0..n).map(|i| pts[i].cross(&pts[(i + 1) % n])).sum()
}

/// Drops repeated points and straight-angle vertices. Used by the CLI's
/// `--merge-collinear` preprocessing and when assembling split pieces.
pub fn merge_collinear(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = Vec::with_capacity(points.len());
    for p in points {
        if pts.last() != Some(p) {
            pts.push(p.clone());
        }
    }
    while pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    loop {
        let n = pts.len();
        if n < 3 {
            return pts;
        }
        let mut removed = false;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let prev = &pts[(i + n - 1) % n];
            let cur = &pts[i];
            let next = &pts[(i + 1) % n];
            let a = cur.sub(prev);
            let b = next.sub(cur);
            if a.cross(&b).is_zero() && a.dot(&b).is_positive() {
                removed = true;
                continue;
            }
            if a.is_zero() {
                removed = true;
                continue;
            }
            out.push(cur.clone());
        }
        // a spike (reversal) is not collinear-merged; validation rejects it
        pts = out;
        if !removed {
            return pts;
        }
    }
}

fn segments_intersect(a0: &Point, a1: &Point, b0: &Point, b1: &Point) -> bool {
    let (ax0, ax1) = minmax(&a0.x, &a1.x);
    let (ay0, ay1) = minmax(&a0.y, &a1.y);
    let (bx0, bx1) = minmax(&b0.x, &b1.x);
    let (by0, by1) = minmax(&b0.y, &b1.y);
    ax0 <= bx1 && bx0 <= ax1 && ay0 <= by1 && by0 <= ay1
}

fn minmax<'a>(a: &'a Scalar, b: &'a Scalar) -> (&'a Scalar, &'a Scalar) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl RectPolygon {
    pub fn validate(points: Vec<Point>) -> Result<RectPolygon, PolygonError> {
        Self::validate_with(points, ValidateOptions::default())
    }

    pub fn validate_with(mut points: Vec<Point>, opts: ValidateOptions) -> Result<RectPolygon, PolygonError> {
        let n = points.len();
        if n < 4 {
            return Err(PolygonError::TooFewVertices(n));
        }
        for i in 0..n {
            let (a, b) = (&points[i], &points[(i + 1) % n]);
            if Dir::of(&b.sub(a)).is_none() {
                return Err(PolygonError::NotRectilinear { index: i, from: a.clone(), to: b.clone() });
            }
        }
        for i in 0..n {
            let prev = &points[(i + n - 1) % n];
            let cur = &points[i];
            let next = &points[(i + 1) % n];
            let d0 = Dir::of(&cur.sub(prev)).unwrap();
            let d1 = Dir::of(&next.sub(cur)).unwrap();
            if d0.orientation() == d1.orientation() {
                return Err(PolygonError::Collinear { index: i, at: cur.clone() });
            }
        }
        let mut reversed = false;
        if signed_area2(&points).is_negative() {
            points.reverse();
            reversed = true;
        }
        check_simple(&points)?;
        let mut poly = Self::from_ccw_unchecked(points);
        poly.reversed = reversed;
        if poly.vertices.len() != 2 * poly.reflex_count + 4 {
            // a non-simple winding would break the turning identity
            return Err(PolygonError::NotSimple { first: 0, second: 0 });
        }
        if opts.check_general_position {
            poly.check_general_position()?;
        }
        Ok(poly)
    }

    /// Builds a polygon from vertices already known to be a simple,
    /// counterclockwise, rectilinear cycle without straight angles.
    pub(crate) fn from_ccw_unchecked(vertices: Vec<Point>) -> RectPolygon {
        let n = vertices.len();
        let mut classes = Vec::with_capacity(n);
        let mut reflex_count = 0;
        for i in 0..n {
            let prev = &vertices[(i + n - 1) % n];
            let cur = &vertices[i];
            let next = &vertices[(i + 1) % n];
            let turn = cur.sub(prev).cross(&next.sub(cur));
            if turn.is_negative() {
                classes.push(VertexClass::Reflex);
                reflex_count += 1;
            } else {
                classes.push(VertexClass::Convex);
            }
        }
        debug_assert_eq!(n, 2 * reflex_count + 4, "turning identity for {vertices:?}");
        RectPolygon { vertices, classes, reflex_count, reversed: false }
    }

    /// Assembles a piece produced by cutting: merges collinear runs.
    pub(crate) fn from_piece(points: Vec<Point>) -> RectPolygon {
        let pts = merge_collinear(&points);
        Self::from_ccw_unchecked(pts)
    }

    fn check_general_position(&self) -> Result<(), PolygonError> {
        for k in self.reflex_vertices() {
            for o in [Orientation::Horizontal, Orientation::Vertical] {
                let chord = self
                    .vertex_cut_chord(k, o)
                    .map_err(|_| PolygonError::NotAChord(format!("no {o:?} cut at reflex vertex {k}")))?;
                let far = if chord.a.vertex() == Some(k) { &chord.b } else { &chord.a };
                if let Some(w) = far.vertex() {
                    return Err(PolygonError::GeneralPositionViolated {
                        first: k.min(w),
                        first_at: self.vertices[k.min(w)].clone(),
                        second: k.max(w),
                        second_at: self.vertices[k.max(w)].clone(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i % self.vertices.len()]
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn r(&self) -> usize {
        self.reflex_count
    }

    /// True when the input was clockwise and has been reversed.
    pub fn was_reversed(&self) -> bool {
        self.reversed
    }

    pub fn next(&self, i: usize) -> usize {
        (i + 1) % self.n()
    }

    pub fn prev(&self, i: usize) -> usize {
        (i + self.n() - 1) % self.n()
    }

    pub fn classify(&self, i: usize) -> VertexClass {
        self.classes[i]
    }

    pub fn is_reflex(&self, i: usize) -> bool {
        self.classes[i] == VertexClass::Reflex
    }

    pub fn reflex_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(move |&i| self.is_reflex(i))
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.vertices.iter().position(|v| v == p)
    }

    /// Direction of edge `i` (from vertex `i` to `i + 1`).
    pub fn edge_dir(&self, i: usize) -> Dir {
        Dir::of(&self.vertex(i + 1).sub(self.vertex(i))).expect("rectilinear edge")
    }

    pub fn edge_endpoints(&self, i: usize) -> (&Point, &Point) {
        (self.vertex(i), self.vertex(i + 1))
    }

    pub fn edge(&self, i: usize) -> EdgeRef {
        let j = self.next(i);
        let d = self.edge_dir(i);
        let kind = match (self.classes[i], self.classes[j]) {
            (VertexClass::Convex, VertexClass::Convex) => EdgeKind::Convex,
            (VertexClass::Reflex, VertexClass::Reflex) => EdgeKind::Reflex,
            _ => EdgeKind::Mixed,
        };
        // the adjacent edges leave this one in the direction of the next edge
        // at j, and in the reverse of the previous edge's direction at i
        let facing = match kind {
            EdgeKind::Mixed => None,
            _ => {
                let leave = self.edge_dir(j);
                Some(match leave {
                    Dir::South => Facing::Top,
                    Dir::North => Facing::Bottom,
                    Dir::East => Facing::Left,
                    Dir::West => Facing::Right,
                })
            }
        };
        // interior lies to the left of a counterclockwise edge
        let inward = d.ccw();
        let axis = d.orientation().fixed_axis();
        let side = match inward {
            Dir::North | Dir::East => Side::AtLeast,
            Dir::South | Dir::West => Side::AtMost,
        };
        EdgeRef {
            index: i,
            orientation: d.orientation(),
            kind,
            facing,
            half_plane: HalfPlane { axis, value: self.vertex(i).coord(axis).clone(), side },
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeRef> + '_ {
        (0..self.n()).map(move |i| self.edge(i))
    }

    pub fn reflex_edges(&self) -> impl Iterator<Item = EdgeRef> + '_ {
        self.edges().filter(|e| e.kind == EdgeKind::Reflex)
    }

    pub fn has_reflex_edge(&self) -> bool {
        (0..self.n()).any(|i| self.is_reflex(i) && self.is_reflex(self.next(i)))
    }

    /// Twice the signed area is computed internally; this returns the area.
    pub fn area(&self) -> Scalar {
        signed_area2(&self.vertices) / Scalar::from_int(2)
    }

    pub fn bbox(&self) -> (Point, Point) {
        let mut lo = self.vertices[0].clone();
        let mut hi = self.vertices[0].clone();
        for v in &self.vertices[1..] {
            if v.x < lo.x {
                lo.x = v.x.clone();
            }
            if v.y < lo.y {
                lo.y = v.y.clone();
            }
            if v.x > hi.x {
                hi.x = v.x.clone();
            }
            if v.y > hi.y {
                hi.y = v.y.clone();
            }
        }
        (lo, hi)
    }

    /// Sorted distinct coordinates of the vertices along `axis`.
    pub fn distinct_coords(&self, axis: Axis) -> Vec<Scalar> {
        let set: BTreeSet<Scalar> = self.vertices.iter().map(|v| v.coord(axis).clone()).collect();
        set.into_iter().collect()
    }

    /// x-monotone iff no vertical reflex edge; y-monotone iff no horizontal one.
    pub fn monotonicity(&self) -> Monotonicity {
        let mut m = Monotonicity { x_monotone: true, y_monotone: true };
        for e in self.reflex_edges() {
            match e.orientation {
                Orientation::Vertical => m.x_monotone = false,
                Orientation::Horizontal => m.y_monotone = false,
            }
        }
        m
    }

    pub fn locate(&self, p: &Point) -> Location {
        let n = self.n();
        let mut inside = false;
        for i in 0..n {
            let a = &self.vertices[i];
            let b = &self.vertices[(i + 1) % n];
            if a == p {
                return Location::AtVertex(i);
            }
            if a.x == b.x {
                let (lo, hi) = minmax(&a.y, &b.y);
                if p.x == a.x && *lo <= p.y && p.y <= *hi {
                    return if *b == *p { Location::AtVertex((i + 1) % n) } else { Location::OnEdge(i) };
                }
                if a.x > p.x && *lo <= p.y && p.y < *hi {
                    inside = !inside;
                }
            } else {
                let (lo, hi) = minmax(&a.x, &b.x);
                if p.y == a.y && *lo <= p.x && p.x <= *hi {
                    return if *b == *p { Location::AtVertex((i + 1) % n) } else { Location::OnEdge(i) };
                }
            }
        }
        if inside {
            Location::Interior
        } else {
            Location::Outside
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.locate(p).is_inside()
    }

    /// Whether a nonzero direction `d` points into the closed interior
    /// locally at vertex `k`.
    pub fn vertex_cone_contains(&self, k: usize, d: &Point) -> bool {
        let back = self.edge_dir(self.prev(k)).reverse();
        let fwd = self.edge_dir(k);
        let s1 = back.dot_sign(d);
        let s2 = fwd.dot_sign(d);
        match self.classes[k] {
            VertexClass::Convex => s1 >= 0 && s2 >= 0,
            // the exterior quadrant is spanned by the two edge directions
            VertexClass::Reflex => !(s1 > 0 && s2 > 0),
        }
    }

    /// Applies a lattice symmetry; reflections are re-oriented to stay
    /// counterclockwise.
    pub fn transform(&self, t: &Transform) -> RectPolygon {
        let mut pts: Vec<Point> = self.vertices.iter().map(|p| t.apply(p)).collect();
        if t.is_reflection() {
            pts.reverse();
        }
        Self::from_ccw_unchecked(pts)
    }

    /// The same polygon with its lexicographically smallest vertex first.
    pub fn canonical(&self) -> RectPolygon {
        let start = (0..self.n()).min_by(|&a, &b| self.vertices[a].cmp(&self.vertices[b])).unwrap_or(0);
        self.rotated_to(start)
    }

    /// Rotates the vertex list so that vertex `start` comes first.
    pub fn rotated_to(&self, start: usize) -> RectPolygon {
        let n = self.n();
        let pts = (0..n).map(|i| self.vertices[(start + i) % n].clone()).collect();
        Self::from_ccw_unchecked(pts)
    }
}

fn check_simple(points: &[Point]) -> Result<(), PolygonError> {
    let n = points.len();
    // sort edges by min x so only overlapping x-ranges are compared
    let mut order: Vec<(Scalar, Scalar, usize)> = (0..n)
        .map(|i| {
            let (a, b) = (&points[i], &points[(i + 1) % n]);
            let (lo, hi) = minmax(&a.x, &b.x);
            (lo.clone(), hi.clone(), i)
        })
        .collect();
    order.sort();
    for (k, (_, hi, i)) in order.iter().enumerate() {
        for (lo2, _, j) in &order[k + 1..] {
            if lo2 > hi {
                break;
            }
            let (i, j) = (*i.min(j), *i.max(j));
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let (a0, a1) = (&points[i], &points[(i + 1) % n]);
            let (b0, b1) = (&points[j], &points[(j + 1) % n]);
            if adjacent {
                // adjacent edges alternate orientation, so they can only
                // touch at the shared vertex unless one doubles back
                continue;
            }
            if segments_intersect(a0, a1, b0, b1) {
                return Err(PolygonError::NotSimple { first: i, second: j });
            }
        }
    }
    Ok(())
}
