use serde::{Deserialize, Serialize};

use crate::geometry::{Point, Transform};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// At reflex vertex `index` of the polygon the set was computed for.
    ReflexVertex(usize),
    CutEndpoint,
    /// Infinitesimally above vertex `index`.
    JustAbove(usize),
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Beacon {
    pub point: Point,
    pub provenance: Provenance,
    /// Recursion-trace node that placed the beacon, when there is one.
    pub trace_node: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BeaconSet {
    pub beacons: Vec<Beacon>,
}

impl BeaconSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_points(points: impl IntoIterator<Item = Point>) -> Self {
        BeaconSet {
            beacons: points
                .into_iter()
                .map(|point| Beacon { point, provenance: Provenance::Other, trace_node: None })
                .collect(),
        }
    }

    pub fn push(&mut self, point: Point, provenance: Provenance, trace_node: Option<usize>) {
        self.beacons.push(Beacon { point, provenance, trace_node });
    }

    pub fn len(&self) -> usize {
        self.beacons.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beacons.is_empty()
    }

    pub fn points(&self) -> Vec<Point> {
        self.beacons.iter().map(|b| b.point.clone()).collect()
    }

    /// Drops beacons at a point already present, keeping the first.
    pub fn dedup(&mut self) {
        let mut seen = std::collections::HashSet::new();
        self.beacons.retain(|b| seen.insert(b.point.clone()));
    }

    pub fn extend(&mut self, other: BeaconSet) {
        self.beacons.extend(other.beacons);
    }

    /// Maps every point through `t`. Vertex indices in provenance tags are
    /// left alone; callers remap them when the polygon is re-indexed.
    pub fn transform(&self, t: &Transform) -> BeaconSet {
        BeaconSet { beacons: self.beacons.iter().map(|b| Beacon { point: t.apply(&b.point), ..b.clone() }).collect() }
    }
}
