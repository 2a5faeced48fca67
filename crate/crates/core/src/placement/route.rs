use crate::attraction::attracts;
use crate::beacons::{BeaconSet, Provenance};
use crate::geometry::{Axis, Orientation, Point, Transform};
use crate::polygon::{Chord, EdgeKind, EdgeRef, Facing, RectPolygon};
use crate::scalar::Scalar;
use crate::verify::SamplePlan;

use super::{dedup_points, PlacementError, RecursionTrace, TraceCase};

fn fail(msg: impl Into<String>) -> PlacementError {
    PlacementError::CaseAnalysis(msg.into())
}

/// A reflex edge `e` and endpoint `v` whose pocket is xy-monotone, chosen
/// with the fewest pocket vertices.
pub fn find_xy_monotone_pocket(poly: &RectPolygon) -> Result<(EdgeRef, usize), PlacementError> {
    let mut best: Option<(usize, EdgeRef, usize, RectPolygon)> = None;
    for e in poly.reflex_edges() {
        for v in [e.index, poly.next(e.index)] {
            let pocket = poly.pocket(e.index, v)?;
            if best.as_ref().is_none_or(|(n, ..)| pocket.n() < *n) {
                best = Some((pocket.n(), e.clone(), v, pocket));
            }
        }
    }
    let (_, e, v, pocket) = best.ok_or(PlacementError::NoReflexEdge)?;
    if !pocket.monotonicity().xy() {
        return Err(fail("smallest pocket is not xy-monotone"));
    }
    Ok((e, v))
}

/// Beacons routing every pair of points of `poly`, at most `⌊3r/4⌋` of them.
pub fn route_beacons(poly: &RectPolygon) -> Result<BeaconSet, PlacementError> {
    route_with_trace(poly).map(|(b, _)| b)
}

pub fn route_with_trace(poly: &RectPolygon) -> Result<(BeaconSet, RecursionTrace), PlacementError> {
    let mut router = Router { trace: RecursionTrace::default(), delta: nudge(poly) };
    let placed = router.run(poly, Transform::IDENTITY, None)?;
    let mut set = BeaconSet::new();
    for (p, above) in placed {
        if set.points().contains(&p) {
            continue;
        }
        let prov = match above {
            Some(v) => Provenance::JustAbove(poly.index_of(&v).ok_or_else(|| fail("nudged beacon off a vertex"))?),
            None => Provenance::CutEndpoint,
        };
        let node = router.trace.nodes.iter().position(|n| n.beacons.contains(&p));
        set.push(p, prov, node);
    }
    if set.len() > 3 * poly.r() / 4 {
        return Err(fail(format!("{} routing beacons for r = {}", set.len(), poly.r())));
    }
    Ok((set, router.trace))
}

/// A quarter of the smallest gap between distinct coordinates.
fn nudge(poly: &RectPolygon) -> Scalar {
    [Axis::X, Axis::Y]
        .into_iter()
        .flat_map(|a| {
            let c = poly.distinct_coords(a);
            c.windows(2).map(|w| &w[1] - &w[0]).collect::<Vec<_>>()
        })
        .min()
        .unwrap_or_else(Scalar::one)
        / Scalar::from_int(4)
}

/// A beacon, and for a beacon nudged above a vertex that vertex.
type Placed = (Point, Option<Point>);

struct Router {
    trace: RecursionTrace,
    delta: Scalar,
}

enum Sweep {
    Horizontal(usize),
    Vertical(usize),
    Monotone,
}

fn other_end(ch: &Chord, p: &Point) -> Point {
    if &ch.a.point == p {
        ch.b.point.clone()
    } else {
        ch.a.point.clone()
    }
}

fn has_vertex(poly: &RectPolygon, p: &Point) -> bool {
    poly.index_of(p).is_some()
}

/// A symmetry taking `e` to a top reflex edge with `v` as its left endpoint.
fn normalizer(poly: &RectPolygon, e: &EdgeRef, v: usize) -> Transform {
    let w = if v == e.index { poly.next(e.index) } else { e.index };
    Transform::all()
        .into_iter()
        .find(|t| {
            let q = poly.transform(t);
            let (a, b) = (t.apply(poly.vertex(v)), t.apply(poly.vertex(w)));
            if a.y != b.y || a.x >= b.x {
                return false;
            }
            let ia = q.index_of(&a).expect("mapped vertex");
            let edge = if q.vertex(q.next(ia)) == &b { ia } else { q.prev(ia) };
            q.edge(edge).facing == Some(Facing::Top)
        })
        .expect("some symmetry normalizes a reflex edge")
}

impl Router {
    fn run(
        &mut self,
        poly: &RectPolygon,
        frame: Transform,
        parent: Option<usize>,
    ) -> Result<Vec<Placed>, PlacementError> {
        let r = poly.r();
        if !poly.has_reflex_edge() {
            self.trace.open(parent, r, TraceCase::RouteMonotone);
            return Ok(Vec::new());
        }
        let id = self.trace.open(parent, r, TraceCase::RoutePocketReflex);
        let (e, v) = find_xy_monotone_pocket(poly)?;
        let t = normalizer(poly, &e, v);
        let back = t.inverse();
        let q = poly.transform(&t);
        let vq = q.index_of(&t.apply(poly.vertex(v))).expect("mapped vertex");
        let out = self.normalized(&q, vq, frame.compose(&back), id)?;
        if out.len() > 3 * r / 4 {
            return Err(fail(format!("subpolygon with r = {r} received {} routing beacons", out.len())));
        }
        Ok(out.into_iter().map(|(p, a)| (back.apply(&p), a.map(|a| back.apply(&a)))).collect())
    }

    fn place(&mut self, id: usize, frame: &Transform, out: &mut Vec<Placed>, p: Point, above: Option<Point>) {
        self.trace.beacon(id, frame, &p);
        out.push((p, above));
    }

    fn recurse(
        &mut self,
        piece: &RectPolygon,
        frame: Transform,
        id: usize,
        out: &mut Vec<Placed>,
    ) -> Result<(), PlacementError> {
        out.extend(self.run(piece, frame, Some(id))?);
        Ok(())
    }

    /// `poly` has a top reflex edge from `v` to its right neighbour `v'` whose
    /// pocket at `v` is xy-monotone.
    fn normalized(
        &mut self,
        poly: &RectPolygon,
        v: usize,
        frame: Transform,
        id: usize,
    ) -> Result<Vec<Placed>, PlacementError> {
        let vp = if poly.vertex(poly.next(v)).y == poly.vertex(v).y { poly.next(v) } else { poly.prev(v) };
        let (pv, pvp) = (poly.vertex(v).clone(), poly.vertex(vp).clone());
        let cv = poly.vertex_cut_chord(v, Orientation::Horizontal)?;
        let p = other_end(&cv, &pv);
        let (x, y) = poly.split_chord(&cv);
        let (a, rest) = if has_vertex(&x, &pvp) { (y, x) } else { (x, y) };
        let k = rest.index_of(&pvp).expect("v' survives the first cut");
        let cvp = rest.vertex_cut_chord(k, Orientation::Horizontal)?;
        let q = other_end(&cvp, &pvp);
        let (x, y) = rest.split_chord(&cvp);
        let (b, c) = if has_vertex(&x, &p) { (x, y) } else { (y, x) };
        self.trace.cut(id, &frame, &cv);
        self.trace.cut(id, &frame, &cvp);

        let mut out = Vec::new();
        if a.r() >= 1 {
            self.place(id, &frame, &mut out, p, None);
            self.place(id, &frame, &mut out, q, None);
            self.recurse(&b, frame, id, &mut out)?;
            self.recurse(&c, frame, id, &mut out)?;
            return Ok(out);
        }

        self.trace.set_case(id, TraceCase::RoutePocketConvex);
        let b1 = Point::new(pvp.x.clone(), &pvp.y + &self.delta);
        self.check_mutual(poly, &b1, &a, "the rectangular pocket")?;
        self.place(id, &frame, &mut out, b1.clone(), Some(pvp.clone()));
        self.recurse(&b, frame, id, &mut out)?;
        if c.r() == 0 {
            self.check_mutual(poly, &b1, &c, "the far rectangular pocket")?;
            return Ok(out);
        }

        match sweep(&c, &pvp, &q)? {
            Sweep::Monotone => {
                self.trace.set_case(id, TraceCase::RouteSweepMonotone);
                self.place(id, &frame, &mut out, q, None);
            }
            Sweep::Horizontal(f) => {
                self.trace.set_case(id, TraceCase::RouteSweepHorizontal);
                let (w1, w2) = (c.vertex(f).clone(), c.vertex(f + 1).clone());
                let ch1 = c.vertex_cut_chord(f, Orientation::Horizontal)?;
                let (x, y) = c.split_chord(&ch1);
                let (keep, other) = if has_vertex(&x, &w2) { (x, y) } else { (y, x) };
                let k = keep.index_of(&w2).expect("far end of the reflex edge survives");
                let ch2 = keep.vertex_cut_chord(k, Orientation::Horizontal)?;
                let (s, u) = keep.split_chord(&ch2);
                self.trace.cut(id, &frame, &ch1);
                self.trace.cut(id, &frame, &ch2);
                let mut pieces = vec![other, s, u];
                let i1 = pieces.iter().position(|pc| has_vertex(pc, &q)).ok_or_else(|| fail("swept piece lost q"))?;
                let c1 = pieces.remove(i1);
                if !c1.monotonicity().xy() {
                    return Err(fail("swept piece is not xy-monotone"));
                }
                self.place(id, &frame, &mut out, other_end(&ch1, &w1), None);
                self.place(id, &frame, &mut out, other_end(&ch2, &w2), None);
                if c1.r() >= 2 {
                    self.place(id, &frame, &mut out, q, None);
                }
                for pc in &pieces {
                    self.recurse(pc, frame, id, &mut out)?;
                }
            }
            Sweep::Vertical(w) => {
                self.trace.set_case(id, TraceCase::RouteSweepVertical);
                let pw = c.vertex(w).clone();
                let ch = c.vertex_cut_chord(w, Orientation::Horizontal)?;
                self.trace.cut(id, &frame, &ch);
                let (x, y) = c.split_chord(&ch);
                let (c1, c2) = if has_vertex(&x, &q) { (x, y) } else { (y, x) };
                if !c1.monotonicity().xy() {
                    return Err(fail("swept piece is not xy-monotone"));
                }
                self.place(id, &frame, &mut out, other_end(&ch, &pw), None);
                self.place(id, &frame, &mut out, q, None);
                self.recurse(&c2, frame, id, &mut out)?;
            }
        }
        let mut pts: Vec<Point> = out.iter().map(|(p, _)| p.clone()).collect();
        dedup_points(&mut pts);
        if pts.len() != out.len() {
            return Err(fail("routing placed the same beacon twice"));
        }
        Ok(out)
    }

    /// The nudged beacon and every sampled point of `piece` attract each
    /// other inside `poly`.
    fn check_mutual(
        &self,
        poly: &RectPolygon,
        b1: &Point,
        piece: &RectPolygon,
        what: &str,
    ) -> Result<(), PlacementError> {
        let plan = SamplePlan { grid: 6, boost: 0, jitter: 4, ..SamplePlan::default() };
        for s in plan.samples(piece) {
            if !attracts(poly, b1, &s)? || !attracts(poly, &s, b1)? {
                return Err(fail(format!("beacon above v' and {what} do not attract each other at {s:?}")));
            }
        }
        Ok(())
    }
}

/// Sweeps the top chord of `c`, from `left` to `right`, downward while the
/// swept region stays xy-monotone.
fn sweep(c: &RectPolygon, left: &Point, right: &Point) -> Result<Sweep, PlacementError> {
    let (mut lo, mut hi) = (left.x.clone(), right.x.clone());
    let mut level = left.y.clone();
    let ys = c.distinct_coords(Axis::Y);
    loop {
        let in_range = |i: usize| {
            let p = c.vertex(i);
            p.x >= lo && p.x <= hi
        };
        let Some(next) =
            (0..c.n()).filter(|&i| in_range(i) && c.vertex(i).y < level).map(|i| c.vertex(i).y.clone()).max()
        else {
            return Ok(Sweep::Monotone);
        };
        let hit: Vec<usize> = (0..c.n()).filter(|&i| in_range(i) && c.vertex(i).y == next && c.is_reflex(i)).collect();
        for &h in &hit {
            let f = if c.edge_dir(h).orientation() == Orientation::Horizontal { h } else { c.prev(h) };
            if c.edge(f).kind == EdgeKind::Reflex {
                return Ok(Sweep::Horizontal(f));
            }
        }
        for &h in &hit {
            let g = if c.edge_dir(h).orientation() == Orientation::Vertical { h } else { c.prev(h) };
            let top = if g == h { c.next(h) } else { g };
            if c.edge(g).kind == EdgeKind::Reflex && c.vertex(top).y > next {
                return Ok(Sweep::Vertical(h));
            }
        }
        let Some(i) = ys.iter().position(|y| y == &next) else { unreachable!() };
        if i == 0 {
            return Ok(Sweep::Monotone);
        }
        let mid = ys[i - 1].midpoint(&next);
        let below: Vec<Chord> = c
            .chords_on_free_line(Orientation::Horizontal, &mid)
            .into_iter()
            .filter(|ch| ch.a.point.x <= hi && ch.b.point.x >= lo)
            .collect();
        match below.as_slice() {
            [] => return Ok(Sweep::Monotone),
            [ch] => {
                lo = ch.a.point.x.clone();
                hi = ch.b.point.x.clone();
                level = next;
            }
            _ => return Err(fail("sweep line split without meeting a reflex edge")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::fixtures::*;
    use crate::verify::{default_pairs, verify_routing};

    #[test]
    fn monotone_needs_nothing() {
        assert!(route_beacons(&square()).unwrap().is_empty());
        assert!(route_beacons(&l_shape()).unwrap().is_empty());
        assert!(matches!(find_xy_monotone_pocket(&square()), Err(PlacementError::NoReflexEdge)));
    }

    #[test]
    fn u_shape_pocket_is_a_rectangle() {
        let u = u_shape();
        let (e, v) = find_xy_monotone_pocket(&u).unwrap();
        assert_eq!(e.index, 4);
        assert!(v == 4 || v == 5);
        assert_eq!(u.pocket(e.index, v).unwrap().n(), 4);
    }

    #[test]
    fn u_shape_routes() {
        let u = u_shape();
        let b = route_beacons(&u).unwrap();
        assert!(b.len() <= 1);
        let report = verify_routing(&u, &b, &default_pairs(&u, 200, 3), 1).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn four_spiral_routes() {
        let s = crate::generators::routing_spiral(4).unwrap();
        let b = route_beacons(&s.polygon).unwrap();
        assert!(b.len() <= 3);
        assert!(verify_routing(&s.polygon, &b, &default_pairs(&s.polygon, 40, 1), 1).unwrap().passed());
    }
}
