//! JSON documents exchanged by the command-line tool. Coordinates are
//! rational strings such as `"7/2"`; decimals are accepted on input.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::beacons::{BeaconSet, Provenance};
use crate::geometry::Point;
use crate::kernel::{KernelRegion, ReflexRect};
use crate::polygon::{merge_collinear, PolygonError, RectPolygon};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error("{0}")]
    Invalid(String),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Json { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonDoc {
    pub vertices: Vec<Point>,
}

impl From<&RectPolygon> for PolygonDoc {
    fn from(p: &RectPolygon) -> Self {
        PolygonDoc { vertices: p.vertices().to_vec() }
    }
}

/// Parses and validates a polygon document. With `merge`, repeated and
/// collinear vertices are dropped first.
pub fn parse_polygon(text: &str, merge: bool) -> Result<RectPolygon, IoError> {
    let doc: PolygonDoc = serde_json::from_str(text)?;
    let pts = if merge { merge_collinear(&doc.vertices) } else { doc.vertices };
    Ok(RectPolygon::validate(pts)?)
}

pub fn polygon_json(p: &RectPolygon) -> String {
    serde_json::to_string(&PolygonDoc::from(p)).expect("polygon serializes")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Cover,
    Route,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BeaconDoc {
    pub beacons: Vec<Point>,
    pub mode: Mode,
    pub bound: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub provenance: Vec<Provenance>,
    /// The polygon the beacons were placed in, so that a placement can be
    /// piped straight into verification.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polygon: Option<PolygonDoc>,
}

impl BeaconDoc {
    pub fn new(set: &BeaconSet, mode: Mode, bound: usize) -> Self {
        BeaconDoc {
            beacons: set.points(),
            mode,
            bound,
            provenance: set.beacons.iter().map(|b| b.provenance).collect(),
            polygon: None,
        }
    }

    pub fn with_polygon(mut self, p: &RectPolygon) -> Self {
        self.polygon = Some(p.into());
        self
    }

    pub fn to_set(&self) -> BeaconSet {
        BeaconSet::from_points(self.beacons.clone())
    }
}

pub fn parse_beacons(text: &str) -> Result<BeaconDoc, IoError> {
    let doc: BeaconDoc = serde_json::from_str(text)?;
    if !doc.provenance.is_empty() && doc.provenance.len() != doc.beacons.len() {
        return Err(IoError::Invalid("provenance list does not match the beacon list".into()));
    }
    Ok(doc)
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum KernelShape {
    Region(PolygonDoc),
    Empty(&'static str),
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelDoc {
    pub kernel: KernelShape,
    pub degenerate: bool,
    pub reflex_rect: ReflexRect,
}

impl From<&KernelRegion> for KernelDoc {
    fn from(k: &KernelRegion) -> Self {
        KernelDoc {
            kernel: match &k.region {
                Some(p) => KernelShape::Region(p.into()),
                None => KernelShape::Empty("empty"),
            },
            degenerate: k.degenerate,
            reflex_rect: k.bounds.clone(),
        }
    }
}
