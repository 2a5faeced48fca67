use serde::{Deserialize, Serialize};

use crate::cells::Cells;
use crate::geometry::{Orientation, Point};
use crate::polygon::{Interval, RectPolygon};
use crate::scalar::Scalar;

/// A closed region given as a union of rectangles: horizontal slabs, each
/// with disjoint sorted x-intervals. Parts of measure zero are dropped, and
/// the canonical form (adjacent equal slabs merged) makes structural
/// equality coincide with equality of point sets up to measure zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RectRegion {
    slabs: Vec<RegionSlab>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
struct RegionSlab {
    y0: Scalar,
    y1: Scalar,
    xs: Vec<Interval>,
}

impl RectRegion {
    pub fn empty() -> RectRegion {
        RectRegion { slabs: Vec::new() }
    }

    pub fn from_polygon(poly: &RectPolygon) -> RectRegion {
        let slabs = poly
            .slabs(Orientation::Horizontal)
            .into_iter()
            .map(|s| RegionSlab { y0: s.lo, y1: s.hi, xs: s.intervals })
            .collect();
        let mut r = RectRegion { slabs };
        r.canonicalize();
        r
    }

    pub fn is_empty(&self) -> bool {
        self.slabs.is_empty()
    }

    pub fn area(&self) -> Scalar {
        self.slabs.iter().flat_map(|s| s.xs.iter().map(move |iv| iv.len() * (&s.y1 - &s.y0))).sum()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.slabs.iter().any(|s| s.y0 <= p.y && p.y <= s.y1 && s.xs.iter().any(|iv| iv.contains(&p.x)))
    }

    /// Corners `(min, max)` of the rectangles.
    pub fn rects(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.slabs.iter().flat_map(|s| {
            s.xs.iter()
                .map(move |iv| (Point::new(iv.lo.clone(), s.y0.clone()), Point::new(iv.hi.clone(), s.y1.clone())))
        })
    }

    fn split_at(&mut self, y: &Scalar) {
        if let Some(i) = self.slabs.iter().position(|s| s.y0 < *y && *y < s.y1) {
            let mut upper = self.slabs[i].clone();
            upper.y0 = y.clone();
            self.slabs[i].y1 = y.clone();
            self.slabs.insert(i + 1, upper);
        }
    }

    /// Removes the open quadrant `{sx·(x − ax) > 0, sy·(y − ay) > 0}`,
    /// where `sx` and `sy` are ±1.
    pub fn subtract_quadrant(&mut self, apex: &Point, sx: i32, sy: i32) {
        self.split_at(&apex.y);
        for s in &mut self.slabs {
            let inside = if sy > 0 { s.y0 >= apex.y } else { s.y1 <= apex.y };
            if !inside {
                continue;
            }
            s.xs =
                s.xs.drain(..)
                    .filter_map(|iv| {
                        let (lo, hi) = if sx > 0 {
                            (iv.lo.clone(), iv.hi.clone().min(apex.x.clone()))
                        } else {
                            (iv.lo.clone().max(apex.x.clone()), iv.hi.clone())
                        };
                        (lo < hi).then_some(Interval { lo, hi })
                    })
                    .collect();
        }
        self.canonicalize();
    }

    fn canonicalize(&mut self) {
        for s in &mut self.slabs {
            let mut merged: Vec<Interval> = Vec::with_capacity(s.xs.len());
            for iv in s.xs.drain(..).filter(|iv| iv.lo < iv.hi) {
                match merged.last_mut() {
                    Some(last) if last.hi >= iv.lo => last.hi = last.hi.clone().max(iv.hi),
                    _ => merged.push(iv),
                }
            }
            s.xs = merged;
        }
        let mut out: Vec<RegionSlab> = Vec::with_capacity(self.slabs.len());
        for s in self.slabs.drain(..).filter(|s| !s.xs.is_empty() && s.y0 < s.y1) {
            match out.last_mut() {
                Some(last) if last.y1 == s.y0 && last.xs == s.xs => last.y1 = s.y1,
                _ => out.push(s),
            }
        }
        self.slabs = out;
    }

    /// The region as a single polygon, or `None` when it is empty,
    /// disconnected, has a hole, or pinches at a point.
    pub fn to_polygon(&self) -> Option<RectPolygon> {
        if self.is_empty() {
            return None;
        }
        let mut xs: Vec<Scalar> =
            self.slabs.iter().flat_map(|s| s.xs.iter().flat_map(|iv| [iv.lo.clone(), iv.hi.clone()])).collect();
        xs.sort();
        xs.dedup();
        let mut ys: Vec<Scalar> = self.slabs.iter().flat_map(|s| [s.y0.clone(), s.y1.clone()]).collect();
        ys.sort();
        ys.dedup();
        let mut cells = Cells::new(xs.len() - 1, ys.len() - 1);
        for s in &self.slabs {
            let j0 = ys.binary_search(&s.y0).ok()?;
            let j1 = ys.binary_search(&s.y1).ok()?;
            for iv in &s.xs {
                let i0 = xs.binary_search(&iv.lo).ok()?;
                let i1 = xs.binary_search(&iv.hi).ok()?;
                for j in j0..j1 {
                    for i in i0..i1 {
                        cells.set(i, j, true);
                    }
                }
            }
        }
        if !(cells.connected() && cells.hole_free()) || cells.corners().is_none() {
            return None;
        }
        let pts = cells.boundary().into_iter().map(|(i, j)| Point::new(xs[i].clone(), ys[j].clone())).collect();
        RectPolygon::validate_with(pts, crate::polygon::ValidateOptions { check_general_position: false }).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::fixtures::*;

    #[test]
    fn round_trip_through_cells() {
        for p in [square(), l_shape(), u_shape()] {
            let r = RectRegion::from_polygon(&p);
            assert_eq!(r.area(), p.area());
            assert_eq!(r.to_polygon().unwrap().canonical(), p.canonical());
        }
    }

    #[test]
    fn quadrant_subtraction() {
        let mut r = RectRegion::from_polygon(&u_shape());
        // the exterior quadrants of the two reflex vertices
        r.subtract_quadrant(&Point::from_ints(2, 2), 1, 1);
        r.subtract_quadrant(&Point::from_ints(4, 2), -1, 1);
        let rect = RectPolygon::validate(pts(&[(0, 0), (6, 0), (6, 2), (0, 2)])).unwrap();
        assert_eq!(r, RectRegion::from_polygon(&rect));
        assert!(r.contains(&Point::from_ints(3, 2)));
        assert!(!r.contains(&Point::from_ints(1, 3)));
    }
}
