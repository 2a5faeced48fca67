//! The beacon kernel: the set of points from which one beacon attracts the
//! whole polygon.

mod region;

pub use region::RectRegion;

use serde::{Deserialize, Serialize};

use crate::geometry::{Axis, Dir, Point};
use crate::polygon::{merge_collinear, RectPolygon, Side};
use crate::scalar::Scalar;

/// Intersection of the supporting half-planes of all reflex edges, as
/// optional bounds; a missing bound is unbounded on that side.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReflexRect {
    pub x_min: Option<Scalar>,
    pub x_max: Option<Scalar>,
    pub y_min: Option<Scalar>,
    pub y_max: Option<Scalar>,
}

impl ReflexRect {
    pub fn contains(&self, p: &Point) -> bool {
        self.x_min.as_ref().is_none_or(|v| p.x >= *v)
            && self.x_max.as_ref().is_none_or(|v| p.x <= *v)
            && self.y_min.as_ref().is_none_or(|v| p.y >= *v)
            && self.y_max.as_ref().is_none_or(|v| p.y <= *v)
    }

    /// Opposite bounds that cross or touch: the rectangle has no interior.
    pub fn is_degenerate(&self) -> bool {
        let crossed = |lo: &Option<Scalar>, hi: &Option<Scalar>| matches!((lo, hi), (Some(a), Some(b)) if a >= b);
        crossed(&self.x_min, &self.x_max) || crossed(&self.y_min, &self.y_max)
    }

    pub fn is_unbounded(&self) -> bool {
        self.x_min.is_none() && self.x_max.is_none() && self.y_min.is_none() && self.y_max.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelRegion {
    /// `None` when the kernel has no interior.
    pub region: Option<RectPolygon>,
    pub bounds: ReflexRect,
    /// The clip left a nonempty set of measure zero (a segment or point).
    pub degenerate: bool,
}

impl KernelRegion {
    pub fn is_empty(&self) -> bool {
        self.region.is_none()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.region.as_ref().is_some_and(|r| r.contains(p))
    }
}

/// The closed 270° cone at a reflex vertex: the union of the two closed
/// half-planes through the apex orthogonal to its incident edges, each on
/// the side away from the edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    pub apex: Point,
    /// Directions along the two incident edges, leaving the apex.
    pub edges: (Dir, Dir),
}

impl Cone {
    pub fn at(poly: &RectPolygon, v: usize) -> Cone {
        let back = poly.edge_dir(poly.prev(v)).reverse();
        Cone { apex: poly.vertex(v).clone(), edges: (back, poly.edge_dir(v)) }
    }

    pub fn contains(&self, p: &Point) -> bool {
        let d = p.sub(&self.apex);
        self.edges.0.dot_sign(&d) <= 0 || self.edges.1.dot_sign(&d) <= 0
    }

    /// Signs `(sx, sy)` of the open complementary quadrant.
    fn complement_signs(&self) -> (i32, i32) {
        let (a, b) = (self.edges.0.unit(), self.edges.1.unit());
        (a.0 + b.0, a.1 + b.1)
    }
}

/// R(P): bounds read off the supporting half-plane of every reflex edge.
pub fn reflex_rect(poly: &RectPolygon) -> ReflexRect {
    let mut r = ReflexRect::default();
    for e in poly.reflex_edges() {
        let h = e.half_plane;
        let slot = match (h.axis, h.side) {
            (Axis::X, Side::AtLeast) => &mut r.x_min,
            (Axis::X, Side::AtMost) => &mut r.x_max,
            (Axis::Y, Side::AtLeast) => &mut r.y_min,
            (Axis::Y, Side::AtMost) => &mut r.y_max,
        };
        let tighter = match (&slot, h.side) {
            (None, _) => true,
            (Some(v), Side::AtLeast) => h.value > *v,
            (Some(v), Side::AtMost) => h.value < *v,
        };
        if tighter {
            *slot = Some(h.value);
        }
    }
    r
}

/// One pass of Sutherland–Hodgman against an axis-parallel half-plane.
fn clip(pts: &[Point], axis: Axis, value: &Scalar, side: Side) -> Vec<Point> {
    let inside = |p: &Point| match side {
        Side::AtLeast => p.coord(axis) >= value,
        Side::AtMost => p.coord(axis) <= value,
    };
    let crossing = |a: &Point, b: &Point| {
        let t = (value - a.coord(axis)) / (b.coord(axis) - a.coord(axis));
        let mut p = a.lerp(b, &t);
        // exact already; pin the clipped coordinate to avoid any drift in form
        match axis {
            Axis::X => p.x = value.clone(),
            Axis::Y => p.y = value.clone(),
        }
        p
    };
    let n = pts.len();
    let mut out = Vec::with_capacity(n + 4);
    for i in 0..n {
        let (cur, next) = (&pts[i], &pts[(i + 1) % n]);
        match (inside(cur), inside(next)) {
            (true, true) => out.push(next.clone()),
            (true, false) => out.push(crossing(cur, next)),
            (false, true) => {
                out.push(crossing(cur, next));
                out.push(next.clone());
            }
            (false, false) => {}
        }
    }
    out
}

/// Removes repeated points, straight angles, and zero-width spikes.
fn clean(pts: Vec<Point>) -> Vec<Point> {
    let mut pts = merge_collinear(&pts);
    loop {
        let n = pts.len();
        if n < 3 {
            return pts;
        }
        let spike = (0..n).find(|&i| {
            let a = pts[i].sub(&pts[(i + n - 1) % n]);
            let b = pts[(i + 1) % n].sub(&pts[i]);
            a.cross(&b).is_zero() && a.dot(&b).is_negative()
        });
        match spike {
            Some(i) => {
                pts.remove(i);
                pts = merge_collinear(&pts);
            }
            None => return pts,
        }
    }
}

/// K(P) = R(P) ∩ P, by at most four half-plane clips of the boundary.
pub fn kernel(poly: &RectPolygon) -> KernelRegion {
    let bounds = reflex_rect(poly);
    let mut pts: Vec<Point> = poly.vertices().to_vec();
    let sides = [
        (Axis::X, &bounds.x_min, Side::AtLeast),
        (Axis::X, &bounds.x_max, Side::AtMost),
        (Axis::Y, &bounds.y_min, Side::AtLeast),
        (Axis::Y, &bounds.y_max, Side::AtMost),
    ];
    for (axis, value, side) in sides {
        if let Some(v) = value {
            pts = clip(&pts, axis, v, side);
        }
    }
    let nonempty = !pts.is_empty();
    let pts = clean(pts);
    let region = if pts.len() >= 4 {
        let p = RectPolygon::from_piece(pts);
        (!p.area().is_zero()).then_some(p)
    } else {
        None
    };
    let degenerate = region.is_none() && nonempty;
    KernelRegion { region, bounds, degenerate }
}

/// Reference computation by Biro's characterization: P minus the open
/// complementary quadrant of the cone at every reflex vertex.
pub fn kernel_region_oracle(poly: &RectPolygon) -> RectRegion {
    let mut region = RectRegion::from_polygon(poly);
    for v in poly.reflex_vertices() {
        let cone = Cone::at(poly, v);
        let (sx, sy) = cone.complement_signs();
        region.subtract_quadrant(&cone.apex, sx, sy);
        if region.is_empty() {
            break;
        }
    }
    region
}

/// `kernel_region_oracle` packaged like `kernel`.
pub fn kernel_oracle(poly: &RectPolygon) -> KernelRegion {
    let region = kernel_region_oracle(poly);
    let bounds = reflex_rect(poly);
    let polygon = region.to_polygon();
    assert!(region.is_empty() || polygon.is_some(), "kernel of a simple polygon is a single polygon");
    KernelRegion { region: polygon, degenerate: false, bounds }
}

/// Exact set equality of the two kernels up to measure zero.
pub fn same_kernel(a: &KernelRegion, b: &RectRegion) -> bool {
    match &a.region {
        None => b.is_empty(),
        Some(p) => RectRegion::from_polygon(p) == *b,
    }
}
