//! Helpers shared by the integration tests: random points, an exact
//! visibility check, and a floating-point descent simulation that knows
//! nothing about the event-based attraction code.
#![allow(dead_code)]

use beacon_core::attraction::{attraction_path, Outcome};
use beacon_core::generators::random_rectilinear;
use beacon_core::geometry::{Orientation, Point};
use beacon_core::polygon::RectPolygon;
use beacon_core::scalar::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A uniformly random rational point strictly inside one of the slab
/// rectangles of `poly`, chosen with probability proportional to area.
pub fn random_interior_point<R: Rng>(poly: &RectPolygon, rng: &mut R) -> Point {
    let rects: Vec<(Point, Point)> =
        poly.slabs(Orientation::Horizontal).iter().flat_map(|s| s.rects().collect::<Vec<_>>()).collect();
    let weights: Vec<f64> = rects.iter().map(|(a, b)| ((&b.x - &a.x) * (&b.y - &a.y)).to_f64()).collect();
    let total: f64 = weights.iter().sum();
    let mut pick = rng.gen::<f64>() * total;
    let mut idx = rects.len() - 1;
    for (i, w) in weights.iter().enumerate() {
        if pick < *w {
            idx = i;
            break;
        }
        pick -= w;
    }
    let (a, b) = &rects[idx];
    let den = 1009i64;
    let fx = Scalar::new(rng.gen_range(1..den), den);
    let fy = Scalar::new(rng.gen_range(1..den), den);
    Point::new(&a.x + &(&(&b.x - &a.x) * &fx), &a.y + &(&(&b.y - &a.y) * &fy))
}

/// Whether the closed segment `pq` lies in the closed polygon, decided by
/// splitting it at every boundary contact and testing each piece's midpoint.
pub fn segment_inside(poly: &RectPolygon, p: &Point, q: &Point) -> bool {
    let d = q.sub(p);
    let mut ts = vec![Scalar::zero(), Scalar::one()];
    for i in 0..poly.n() {
        let (a, b) = poly.edge_endpoints(i);
        for w in [a, b] {
            let rel = w.sub(p);
            if rel.cross(&d).is_zero() && !d.is_zero() {
                ts.push(rel.dot(&d) / d.norm2());
            }
        }
        let vertical = a.x == b.x;
        let (c, dc, pc) = if vertical { (&a.x, &d.x, &p.x) } else { (&a.y, &d.y, &p.y) };
        if !dc.is_zero() {
            ts.push((c - pc) / dc);
        }
    }
    let (zero, one) = (Scalar::zero(), Scalar::one());
    let mut ts: Vec<Scalar> = ts.into_iter().filter(|t| *t >= zero && *t <= one).collect();
    ts.sort();
    ts.dedup();
    ts.iter().all(|t| poly.contains(&p.lerp(q, t)))
        && ts.windows(2).all(|w| poly.contains(&p.lerp(q, &w[0].midpoint(&w[1]))))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Descent {
    Reached,
    Stopped(f64, f64),
}

pub struct FloatPolygon {
    pts: Vec<(f64, f64)>,
    pub scale: f64,
}

fn seg_dist(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> ((f64, f64), f64) {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0);
    let c = (a.0 + t * dx, a.1 + t * dy);
    (c, ((p.0 - c.0).powi(2) + (p.1 - c.1).powi(2)).sqrt())
}

impl FloatPolygon {
    pub fn new(poly: &RectPolygon) -> Self {
        let pts: Vec<(f64, f64)> = poly.vertices().iter().map(|p| p.to_f64()).collect();
        let (lo, hi) = poly.bbox();
        let scale = (&hi.x - &lo.x).to_f64().max((&hi.y - &lo.y).to_f64());
        FloatPolygon { pts, scale }
    }

    fn edges(&self) -> impl Iterator<Item = ((f64, f64), (f64, f64))> + '_ {
        let n = self.pts.len();
        (0..n).map(move |i| (self.pts[i], self.pts[(i + 1) % n]))
    }

    fn inside_strict(&self, p: (f64, f64)) -> bool {
        let mut inside = false;
        for (a, b) in self.edges() {
            if a.0 == b.0 && a.0 > p.0 && a.1.min(b.1) <= p.1 && p.1 < a.1.max(b.1) {
                inside = !inside;
            }
        }
        inside
    }

    /// Nearest point of the closed polygon.
    fn project(&self, p: (f64, f64)) -> (f64, f64) {
        if self.inside_strict(p) {
            return p;
        }
        self.edges().map(|(a, b)| seg_dist(p, a, b)).min_by(|x, y| x.1.total_cmp(&y.1)).unwrap().0
    }

    /// Whether the float segment `xy` stays in the closed polygon: no edge
    /// crosses it transversally and its midpoint is inside or on the boundary.
    fn segment_ok(&self, x: (f64, f64), y: (f64, f64), touch: f64) -> bool {
        let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
        for (a, b) in self.edges() {
            let (d1, d2) = (cross(x, y, a), cross(x, y, b));
            let (d3, d4) = (cross(a, b, x), cross(a, b, y));
            let eps = touch * touch;
            if ((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps))
                && ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps))
            {
                return false;
            }
        }
        let m = ((x.0 + y.0) / 2.0, (x.1 + y.1) / 2.0);
        self.inside_strict(m) || self.edges().any(|(a, b)| seg_dist(m, a, b).1 <= touch)
    }

    fn snap(&self, x: (f64, f64), touch: f64) -> (f64, f64) {
        self.pts.iter().copied().find(|v| ((v.0 - x.0).powi(2) + (v.1 - x.1).powi(2)).sqrt() < touch).unwrap_or(x)
    }

    /// Projected descent on the distance to `b` with adaptive step length.
    pub fn descend(&self, p: (f64, f64), b: (f64, f64)) -> Descent {
        let dist = |x: (f64, f64)| ((x.0 - b.0).powi(2) + (x.1 - b.1).powi(2)).sqrt();
        let touch = 1e-7 * self.scale;
        let reach = 1e-7 * self.scale;
        let h_min = 1e-12 * self.scale;
        let mut x = p;
        let mut h = self.scale;
        for _ in 0..400_000 {
            let dx = dist(x);
            if dx < reach {
                return Descent::Reached;
            }
            h = h.min(dx);
            let dir = ((b.0 - x.0) / dx, (b.1 - x.1) / dx);
            let raw = (x.0 + h * dir.0, x.1 + h * dir.1);
            let y = self.project(raw);
            // a projected step must stay on an edge the point already touches
            let sliding =
                y == raw || self.edges().any(|(a, b)| seg_dist(x, a, b).1 <= touch && seg_dist(y, a, b).1 <= touch);
            if sliding && dist(y) < dx - 1e-15 * self.scale && self.segment_ok(x, y, touch) {
                x = self.snap(y, touch);
                h *= 2.0;
            } else {
                if h <= h_min {
                    return Descent::Stopped(x.0, x.1);
                }
                h /= 2.0;
            }
        }
        Descent::Stopped(x.0, x.1)
    }

    pub fn near_vertex(&self, p: (f64, f64), tol: f64) -> bool {
        self.pts.iter().any(|v| ((v.0 - p.0).powi(2) + (v.1 - p.1).powi(2)).sqrt() < tol)
    }
}

pub fn polygon_and_points(n: usize, seed: u64, count: usize) -> (RectPolygon, Vec<Point>) {
    let poly = random_rectilinear(n, seed).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let pts = (0..count).map(|_| random_interior_point(&poly, &mut rng)).collect();
    (poly, pts)
}

/// Runs `count` random triples and returns (agreements, excluded ties,
/// disagreements as descriptions).
pub fn oracle_agreement(count: usize, seed: u64) -> (usize, usize, Vec<String>) {
    let mut agree = 0;
    let mut tied = 0;
    let mut bad = Vec::new();
    let per_polygon = 10;
    for k in 0..count / per_polygon {
        let n = 4 + 2 * (k % 11);
        let (poly, pts) = polygon_and_points(n, seed.wrapping_add(k as u64), 2 * per_polygon);
        let fp = FloatPolygon::new(&poly);
        for pair in pts.chunks(2) {
            let (p, b) = (&pair[0], &pair[1]);
            let path = attraction_path(&poly, p, b).unwrap();
            let tie = match &path.outcome {
                Outcome::Reached => fp.near_vertex(b.to_f64(), 1e-3),
                Outcome::DeadPoint { at, .. } => fp.near_vertex(at.to_f64(), 1e-3),
            };
            if tie {
                tied += 1;
                continue;
            }
            let numeric = fp.descend(p.to_f64(), b.to_f64());
            if (numeric == Descent::Reached) == path.reached() {
                agree += 1;
            } else {
                bad.push(format!(
                    "n={n} poly={:?} p={p} b={b} exact={:?} numeric={numeric:?}",
                    poly.vertices(),
                    path.outcome
                ));
            }
        }
    }
    (agree, tied, bad)
}
