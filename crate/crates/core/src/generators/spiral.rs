use serde::{Deserialize, Serialize};

use super::GeneratorError;
use crate::beacons::{BeaconSet, Provenance};
use crate::geometry::{Axis, Dir, Point, Rect};
use crate::polygon::RectPolygon;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpiralKind {
    Coverage,
    Routing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpiralSpec {
    pub r: usize,
    pub kind: SpiralKind,
    pub rho: Scalar,
    pub eps: Scalar,
    /// `a_0 ..= a_r`: length of spine edge `v_i v_{i+1}`.
    pub spine_lengths: Vec<Scalar>,
    /// `w_0 ..= w_r`: width of the corridor along spine edge `i`.
    pub widths: Vec<Scalar>,
}

/// The rectangles `A_i`, `B_i` (halves of corridor `i`) and `C_i` (corner
/// square beyond reflex vertex `v_i`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpiralDecomposition {
    pub a: Vec<Rect>,
    pub b: Vec<Rect>,
    /// `c[i - 1]` is `C_i` for `i = 1 ..= r`.
    pub c: Vec<Rect>,
}

impl SpiralDecomposition {
    /// `C_i`, for `1 <= i <= r`.
    pub fn c_rect(&self, i: usize) -> &Rect {
        &self.c[i - 1]
    }

    /// All rectangles in spine order `A_0, B_0, C_1, A_1, B_1, ...`.
    pub fn in_order(&self) -> Vec<&Rect> {
        let mut out = vec![&self.a[0], &self.b[0]];
        for i in 1..self.a.len() {
            out.extend([&self.c[i - 1], &self.a[i], &self.b[i]]);
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct Spiral {
    pub spec: SpiralSpec,
    pub polygon: RectPolygon,
    /// Spine vertices `v_0 ..= v_{r+1}`; `v_i` is vertex `i` of `polygon`.
    pub spine: Vec<Point>,
    pub decomposition: SpiralDecomposition,
}

impl Spiral {
    /// Index of the first spine vertex: a convex end.
    pub fn p(&self) -> &Point {
        &self.spine[0]
    }

    /// The other convex end of the spine.
    pub fn q(&self) -> &Point {
        self.spine.last().expect("spine has two ends")
    }
}

/// The coverage edge-length sequence. Within each window
/// `a_{3j-2} .. a_{3j+2}` the lengths are `L, ρL, L, ρL, ρ²L` up to the
/// `ε` terms, so the even exponent steps at `j = 4, 7, ...`.
pub fn coverage_lengths(r: usize, rho: &Scalar, eps: &Scalar) -> Vec<Scalar> {
    (0..=r)
        .map(|i| {
            let j = (i / 2) as u32;
            let je = eps * &Scalar::from_int(j as i64);
            if i % 2 == 0 {
                if j == 0 {
                    Scalar::one()
                } else {
                    rho.pow(2 * ((j - 1) / 3) + 1) + je
                }
            } else if j <= 1 {
                Scalar::one() + je
            } else {
                rho.pow(2 * ((j + 1) / 3)) + je
            }
        })
        .collect()
}

/// Corridor widths `w_i = ε (r + 2 + i) / (2r + 8)`: increasing, distinct,
/// and below ε.
pub fn spiral_widths(r: usize, eps: &Scalar) -> Vec<Scalar> {
    (0..=r).map(|i| eps * &Scalar::new((r + 2 + i) as i64, (2 * r + 8) as i64)).collect()
}

fn left(d: Dir) -> Dir {
    d.ccw()
}

/// Builds the spiral whose spine starts at the origin heading east and turns
/// clockwise at every reflex vertex, with corridors on the left.
pub fn build_spiral(spec: SpiralSpec) -> Spiral {
    let r = spec.r;
    let a = &spec.spine_lengths;
    let w = &spec.widths;
    assert_eq!(a.len(), r + 1);
    assert_eq!(w.len(), r + 1);
    let mut spine = vec![Point::from_ints(0, 0)];
    let mut dirs = Vec::with_capacity(r + 1);
    let mut d = Dir::East;
    for i in 0..=r {
        dirs.push(d);
        let next = spine[i].add(&d.vector().scale(&a[i]));
        spine.push(next);
        d = d.cw();
    }
    let mut outer = Vec::with_capacity(r + 2);
    outer.push(spine[0].add(&left(dirs[0]).vector().scale(&w[0])));
    for i in 1..=r {
        let prev = dirs[i - 1];
        outer.push(spine[i].add(&left(prev).vector().scale(&w[i - 1])).add(&prev.vector().scale(&w[i])));
    }
    outer.push(spine[r + 1].add(&left(dirs[r]).vector().scale(&w[r])));

    let mut verts = spine.clone();
    verts.extend(outer.iter().rev().cloned());
    let polygon = RectPolygon::validate(verts).expect("spiral is a valid polygon");
    assert!(!polygon.was_reversed());

    let two = Scalar::from_int(2);
    let mut dec = SpiralDecomposition { a: Vec::new(), b: Vec::new(), c: Vec::new() };
    for i in 0..=r {
        let mid = spine[i].midpoint(&spine[i + 1]);
        let off = left(dirs[i]).vector().scale(&w[i]);
        dec.a.push(Rect::spanning(&spine[i], &mid.add(&off)));
        dec.b.push(Rect::spanning(&mid, &spine[i + 1].add(&off)));
        debug_assert_eq!(dec.a[i].area(), &(&a[i] / &two) * &w[i]);
    }
    for i in 1..=r {
        dec.c.push(Rect::spanning(&spine[i], &outer[i]));
    }
    Spiral { spec, polygon, spine, decomposition: dec }
}

/// A square spiral with small integer coordinates and `n` vertices: spine
/// lengths `4, 4, 8, 8, 12, ...` and unit corridors. Used for timing.
pub fn bench_polygon(n: usize) -> Result<RectPolygon, GeneratorError> {
    if n < 4 || n % 2 == 1 {
        return Err(GeneratorError::InvalidArgument(format!("vertex count {n} must be even and at least 4")));
    }
    let r = n / 2 - 2;
    let mut spine = vec![Point::from_ints(0, 0)];
    let mut outer = Vec::with_capacity(r + 2);
    let mut d = Dir::East;
    let mut prev = d;
    for i in 0..=r {
        let len = Scalar::from_int(4 * (i as i64 / 2 + 1));
        let next = spine[i].add(&d.vector().scale(&len));
        outer.push(if i == 0 {
            spine[0].add(&left(d).vector())
        } else {
            spine[i].add(&left(prev).vector()).add(&prev.vector())
        });
        spine.push(next);
        prev = d;
        d = d.cw();
    }
    outer.push(spine[r + 1].add(&left(prev).vector()));
    let mut verts = spine;
    verts.extend(outer.into_iter().rev());
    Ok(RectPolygon::validate(verts)?)
}

/// The spiral `P_r` of the coverage lower bound with `ρ = 3` and
/// `ε = 1/(4r+16)`.
pub fn coverage_spiral(r: usize) -> Spiral {
    let rho = Scalar::from_int(3);
    let eps = Scalar::new(1, 4 * r as i64 + 16);
    let spine_lengths = coverage_lengths(r, &rho, &eps);
    let widths = spiral_widths(r, &eps);
    build_spiral(SpiralSpec { r, kind: SpiralKind::Coverage, rho, eps, spine_lengths, widths })
}

/// The routing lower-bound spiral: spine lengths `3^i + iε`, so each corridor
/// is three times longer than the one before.
pub fn routing_spiral(r: usize) -> Result<Spiral, GeneratorError> {
    if r < 3 {
        return Err(GeneratorError::InvalidArgument(format!("routing spiral needs r >= 3, got {r}")));
    }
    let rho = Scalar::from_int(3);
    let eps = Scalar::new(1, 4 * r as i64 + 16);
    let spine_lengths = (0..=r).map(|i| rho.pow(i as u32) + &eps * &Scalar::from_int(i as i64)).collect();
    let widths = spiral_widths(r, &eps);
    Ok(build_spiral(SpiralSpec { r, kind: SpiralKind::Routing, rho, eps, spine_lengths, widths }))
}

/// Part of the line through `p` with direction `d` inside `rect`, as the
/// parameter range.
fn clip_line(p: &Point, d: &Point, rect: &Rect) -> Option<(Scalar, Scalar)> {
    let mut lo: Option<Scalar> = None;
    let mut hi: Option<Scalar> = None;
    for axis in [Axis::X, Axis::Y] {
        let (pc, dc) = (p.coord(axis), d.coord(axis));
        let (a, b) = (rect.lo.coord(axis), rect.hi.coord(axis));
        if dc.is_zero() {
            if pc < a || pc > b {
                return None;
            }
            continue;
        }
        let t1 = &(a - pc) / dc;
        let t2 = &(b - pc) / dc;
        let (t1, t2) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        lo = Some(match lo {
            Some(l) => l.max(t1),
            None => t1,
        });
        hi = Some(match hi {
            Some(h) => h.min(t2),
            None => t2,
        });
    }
    let (lo, hi) = (lo?, hi?);
    (lo <= hi).then_some((lo, hi))
}

impl Spiral {
    /// Corridor `i` as one rectangle: `A_i ∪ B_i`.
    pub fn corridor(&self, i: usize) -> Rect {
        self.decomposition.a[i].hull(&self.decomposition.b[i])
    }

    /// Direction of spine edge `i`.
    pub fn spine_dir(&self, i: usize) -> Point {
        self.spine[i + 1].sub(&self.spine[i])
    }
}

/// The greedy placement on a coverage spiral: `b_1` at `v_2`, then each
/// `b_{i+1}` pushed along the line through `b_i` and `v_{3i+1}` to the far
/// wall. Asserts that middle beacons land in `A_{3i-1}`.
pub fn greedy_cover_spiral(spiral: &Spiral) -> Result<BeaconSet, GeneratorError> {
    if spiral.spec.kind != SpiralKind::Coverage {
        return Err(GeneratorError::NotCoverageSpiral);
    }
    let r = spiral.spec.r;
    let mut out = BeaconSet::new();
    if r == 0 {
        out.push(spiral.spine[0].clone(), Provenance::Other, None);
        return Ok(out);
    }
    let k = r.div_ceil(3);
    let first = r.min(2);
    out.push(spiral.spine[first].clone(), Provenance::ReflexVertex(first), None);
    for i in 1..k {
        let pivot = &spiral.spine[3 * i + 1];
        let prev = out.beacons[i - 1].point.clone();
        let c = 3 * i + 2;
        let next = if c <= r {
            // b_{i+1} on the line through b_i and v_{3i+1}, as far along
            // corridor 3i+2 as the line reaches.
            let d = pivot.sub(&prev);
            let (t0, t1) = clip_line(&prev, &d, &spiral.corridor(c)).expect("constraint line meets the corridor");
            let along = spiral.spine_dir(c);
            let (p0, p1) = (prev.add(&d.scale(&t0)), prev.add(&d.scale(&t1)));
            let next = if p1.dot(&along) >= p0.dot(&along) { p1 } else { p0 };
            if i + 1 < k {
                assert!(spiral.decomposition.a[c].contains(&next), "greedy beacon {} outside A_{c}", i + 1);
            }
            next
        } else {
            spiral.spine[r].clone()
        };
        let prov = if c <= r { Provenance::Other } else { Provenance::ReflexVertex(r) };
        out.push(next, prov, None);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn greedy_beacon_counts() {
        for r in 0..=12 {
            let s = coverage_spiral(r);
            let g = greedy_cover_spiral(&s).unwrap();
            assert_eq!(g.len(), r.div_ceil(3).max(1));
        }
        let s = coverage_spiral(6);
        let g = greedy_cover_spiral(&s).unwrap();
        assert!(s.decomposition.a[5].contains(&g.beacons[1].point));
    }

    #[test]
    fn rho_constraint_holds() {
        for r in 0..40 {
            let s = coverage_spiral(r).spec;
            let bound = Scalar::from_int(2) + &(&Scalar::new(r as i64 + 4, 2) * &s.eps);
            assert!(s.rho > bound);
        }
    }

    #[test]
    fn lengths_follow_the_window_pattern() {
        let rho = Scalar::from_int(3);
        let a = coverage_lengths(40, &rho, &Scalar::zero());
        for j in 1..13 {
            let l = &a[3 * j - 2];
            assert_eq!(&a[3 * j], l);
            assert_eq!(a[3 * j - 1], l * &rho);
            assert_eq!(a[3 * j + 1], l * &rho);
            assert_eq!(a[3 * j + 2], &(l * &rho) * &rho);
        }
    }

    #[test]
    fn routing_spirals_build() {
        for r in 3..=20 {
            let s = routing_spiral(r).unwrap();
            assert_eq!(s.polygon.r(), r);
            assert_eq!(s.polygon.n(), 2 * r + 4);
        }
        assert!(routing_spiral(2).is_err());
    }

    #[test]
    fn zero_is_a_rectangle() {
        let s = coverage_spiral(0);
        assert_eq!((s.polygon.n(), s.polygon.r()), (4, 0));
        assert_eq!(s.spec.spine_lengths, vec![Scalar::one()]);
    }

    #[test]
    fn seven_has_the_expected_lengths() {
        let s = coverage_spiral(7);
        assert_eq!(s.polygon.n(), 18);
        let eps = Scalar::new(1, 44);
        let a = &s.spec.spine_lengths;
        assert_eq!(a[2], Scalar::from_int(3) + &eps);
        assert_eq!(a[4], Scalar::from_int(3) + &(&eps * &Scalar::from_int(2)));
        assert_eq!(a[5], Scalar::from_int(9) + &(&eps * &Scalar::from_int(2)));
        assert_eq!(a[6], Scalar::from_int(3) + &(&eps * &Scalar::from_int(3)));
        assert_eq!(a[7], Scalar::from_int(9) + &(&eps * &Scalar::from_int(3)));
        // exactly the interior spine vertices are reflex
        let reflex: Vec<usize> = s.polygon.reflex_vertices().collect();
        assert_eq!(reflex, (1..=7).collect::<Vec<_>>());
    }

    #[test]
    fn decomposition_tiles_the_spiral() {
        for r in 0..16 {
            let s = coverage_spiral(r);
            let rects = s.decomposition.in_order();
            assert_eq!(rects.len(), 3 * r + 2);
            let total: Scalar = rects.iter().map(|q| q.area()).sum();
            assert_eq!(total, s.polygon.area());
            for (i, c) in s.decomposition.c.iter().enumerate() {
                let w = &s.spec.widths;
                assert_eq!(c.area(), &w[i] * &w[i + 1]);
            }
        }
    }
}
