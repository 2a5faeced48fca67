use serde::{Deserialize, Serialize};

use super::RectPolygon;
use crate::geometry::{Orientation, Point};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub lo: Scalar,
    pub hi: Scalar,
}

impl Interval {
    pub fn contains(&self, v: &Scalar) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn len(&self) -> Scalar {
        &self.hi - &self.lo
    }
}

/// The polygon restricted to the open strip `lo < fixed < hi`, where no
/// vertex lies: a disjoint union of rectangles.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Slab {
    pub orientation: Orientation,
    pub lo: Scalar,
    pub hi: Scalar,
    pub intervals: Vec<Interval>,
}

impl Slab {
    /// Corners `(min, max)` of each rectangle of the slab.
    pub fn rects(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.intervals.iter().map(move |iv| match self.orientation {
            Orientation::Horizontal => {
                (Point::new(iv.lo.clone(), self.lo.clone()), Point::new(iv.hi.clone(), self.hi.clone()))
            }
            Orientation::Vertical => {
                (Point::new(self.lo.clone(), iv.lo.clone()), Point::new(self.hi.clone(), iv.hi.clone()))
            }
        })
    }
}

impl RectPolygon {
    /// Decomposition into strips between consecutive distinct vertex
    /// coordinates. Horizontal slabs are bounded by horizontal lines.
    pub fn slabs(&self, o: Orientation) -> Vec<Slab> {
        let coords = self.distinct_coords(o.fixed_axis());
        let run = o.running_axis();
        coords
            .windows(2)
            .map(|w| {
                let mid = w[0].midpoint(&w[1]);
                let intervals = self
                    .chords_on_free_line(o, &mid)
                    .into_iter()
                    .map(|c| Interval { lo: c.a.point.coord(run).clone(), hi: c.b.point.coord(run).clone() })
                    .collect();
                Slab { orientation: o, lo: w[0].clone(), hi: w[1].clone(), intervals }
            })
            .collect()
    }
}
