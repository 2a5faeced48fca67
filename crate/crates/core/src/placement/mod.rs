//! Constructive beacon placements: coverage with at most `⌈r/3⌉` beacons at
//! reflex vertices, coverage of monotone polygons with `⌊r/4⌋ + 1`, and
//! routing with `⌊3r/4⌋`.

mod cover;
mod monotone;
mod route;

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{Point, Transform};
use crate::polygon::{Chord, PolygonError};

pub use cover::{cover, cover_base, cover_with_trace, find_safe_cut};
pub use monotone::cover_monotone;
pub use route::{find_xy_monotone_pocket, route_beacons, route_with_trace};

#[derive(Debug, Error)]
pub enum PlacementError {
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error("{0} reflex vertices; a single beacon handles at most 3")]
    TooManyReflexVertices(usize),
    #[error("polygon is neither x- nor y-monotone")]
    NotMonotone,
    #[error("polygon has no reflex edge")]
    NoReflexEdge,
    /// A state the case analysis rules out was reached.
    #[error("case analysis failed: {0}")]
    CaseAnalysis(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceCase {
    Base,
    SafeCut,
    /// Top reflex edge, one of the cuts below its endpoints a 0-cut.
    TopZeroTwo,
    /// Top reflex edge, both cuts 1-cuts, one side edge convex.
    TopConvexSide,
    TopSplitZero,
    TopSplitTwo,
    TopSplitAbove,
    BottomEmptyAbove,
    BottomOverlap,
    MonotoneBase,
    MonotoneSplit,
    RouteMonotone,
    RoutePocketReflex,
    RoutePocketConvex,
    /// The sweep below the convex pocket stopped at a horizontal reflex edge.
    RouteSweepHorizontal,
    /// The sweep stopped at the lower end of a vertical reflex edge.
    RouteSweepVertical,
    /// The sweep exhausted the far pocket without meeting a reflex edge.
    RouteSweepMonotone,
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceNode {
    pub id: usize,
    pub parent: Option<usize>,
    /// Reflex vertices of the subpolygon handled here.
    pub r: usize,
    pub case: TraceCase,
    /// Cuts made at this node, in the input's coordinates.
    pub cuts: Vec<(Point, Point)>,
    /// Beacons placed directly by this node, in the input's coordinates.
    pub beacons: Vec<Point>,
    pub children: Vec<usize>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct RecursionTrace {
    pub nodes: Vec<TraceNode>,
}

impl RecursionTrace {
    pub(crate) fn open(&mut self, parent: Option<usize>, r: usize, case: TraceCase) -> usize {
        let id = self.nodes.len();
        self.nodes.push(TraceNode { id, parent, r, case, cuts: Vec::new(), beacons: Vec::new(), children: Vec::new() });
        if let Some(p) = parent {
            self.nodes[p].children.push(id);
        }
        id
    }

    pub(crate) fn set_case(&mut self, id: usize, case: TraceCase) {
        self.nodes[id].case = case;
    }

    pub(crate) fn cut(&mut self, id: usize, frame: &Transform, chord: &Chord) {
        self.nodes[id].cuts.push((frame.apply(&chord.a.point), frame.apply(&chord.b.point)));
    }

    pub(crate) fn beacon(&mut self, id: usize, frame: &Transform, p: &Point) {
        self.nodes[id].beacons.push(frame.apply(p));
    }

    /// Children never have more reflex vertices than their parent, and the
    /// recursion shrinks `r` strictly unless a node only places beacons.
    pub fn check_progress(&self) -> bool {
        self.nodes.iter().all(|n| n.children.iter().all(|&c| self.nodes[c].r < n.r))
    }
}

pub(crate) fn ceil3(r: usize) -> usize {
    r.div_ceil(3)
}

/// Removes repeated points, keeping the first occurrence.
pub(crate) fn dedup_points(points: &mut Vec<Point>) {
    let mut seen = std::collections::HashSet::new();
    points.retain(|p| seen.insert(p.clone()));
}
