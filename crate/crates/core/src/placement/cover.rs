use crate::beacons::{BeaconSet, Provenance};
use crate::geometry::{Orientation, Point, Transform};
use crate::kernel::kernel;
use crate::polygon::{Chord, Cut, EdgeKind, Facing, RectPolygon};

use super::{ceil3, dedup_points, PlacementError, RecursionTrace, TraceCase};

fn fail(msg: impl Into<String>) -> PlacementError {
    PlacementError::CaseAnalysis(msg.into())
}

/// One beacon for a polygon with at most three reflex vertices. The beacon
/// sits at a reflex vertex on the common reflex edge(s), or at the lowest
/// vertex of a rectangle.
pub fn cover_base(poly: &RectPolygon) -> Result<Point, PlacementError> {
    let r = poly.r();
    if r > 3 {
        return Err(PlacementError::TooManyReflexVertices(r));
    }
    if r == 0 {
        return Ok(poly.vertices().iter().min().cloned().expect("nonempty polygon"));
    }
    let edges: Vec<usize> = poly.reflex_edges().map(|e| e.index).collect();
    let v = match edges.as_slice() {
        [] => poly.reflex_vertices().next().expect("r >= 1"),
        [e] => *e,
        [e, f] => {
            if poly.next(*e) == *f {
                *f
            } else if poly.next(*f) == *e {
                *e
            } else {
                return Err(fail("two reflex edges without a common vertex"));
            }
        }
        _ => return Err(fail("three reflex vertices forming three reflex edges")),
    };
    Ok(poly.vertex(v).clone())
}

/// A normal cut splitting `poly` into two pieces with at least one reflex
/// vertex each and `⌈r⁻/3⌉ + ⌈r⁺/3⌉ = ⌈r/3⌉`.
pub fn find_safe_cut(poly: &RectPolygon) -> Option<Chord> {
    let r = poly.r();
    [Orientation::Horizontal, Orientation::Vertical].into_iter().flat_map(|o| poly.normal_cuts(o)).find(|ch| {
        let lo = poly.reflex_below_chord(ch);
        let hi = r - lo;
        lo >= 1 && hi >= 1 && ceil3(lo) + ceil3(hi) == ceil3(r)
    })
}

/// Covers `poly` with at most `max(1, ⌈r/3⌉)` beacons, each at a reflex
/// vertex when `r ≥ 1`.
pub fn cover(poly: &RectPolygon) -> Result<BeaconSet, PlacementError> {
    cover_with_trace(poly).map(|(b, _)| b)
}

pub fn cover_with_trace(poly: &RectPolygon) -> Result<(BeaconSet, RecursionTrace), PlacementError> {
    let mut c = Coverer { trace: RecursionTrace::default() };
    let mut points = c.run(poly, Transform::IDENTITY, None)?;
    dedup_points(&mut points);
    let mut set = BeaconSet::new();
    for p in points {
        let prov = match poly.index_of(&p) {
            Some(i) if poly.is_reflex(i) => Provenance::ReflexVertex(i),
            _ if poly.r() == 0 => Provenance::Other,
            _ => return Err(fail(format!("beacon {p:?} is not a reflex vertex"))),
        };
        let node = c.trace.nodes.iter().position(|n| n.beacons.contains(&p));
        set.push(p, prov, node);
    }
    if set.len() > ceil3(poly.r()).max(1) {
        return Err(fail(format!("{} beacons for r = {}", set.len(), poly.r())));
    }
    Ok((set, c.trace))
}

struct Coverer {
    trace: RecursionTrace,
}

/// The first reflex vertex met when sweeping the horizontal chord `c`
/// downward (or upward). The chord keeps its extent until it reaches a
/// vertex inside its closed `x`-range.
fn first_reflex_swept(poly: &RectPolygon, c: &Chord, down: bool) -> Option<usize> {
    let (lo, hi) = (&c.a.point.x, &c.b.point.x);
    let level = c.level();
    let hit = (0..poly.n())
        .filter(|&i| {
            let p = poly.vertex(i);
            &p.x >= lo && &p.x <= hi && if down { &p.y < level } else { &p.y > level }
        })
        .map(|i| poly.vertex(i).y.clone())
        .reduce(|a, b| if down { a.max(b) } else { a.min(b) })?;
    let at: Vec<usize> = (0..poly.n())
        .filter(|&i| {
            let p = poly.vertex(i);
            p.y == hit && &p.x >= lo && &p.x <= hi && poly.is_reflex(i)
        })
        .collect();
    at.iter().copied().find(|&i| horizontal_reflex_edge(poly, i).is_some()).or(at.first().copied())
}

/// The horizontal edge at `v`, if it is a reflex edge.
fn horizontal_reflex_edge(poly: &RectPolygon, v: usize) -> Option<usize> {
    let e = if poly.edge_dir(v).orientation() == Orientation::Horizontal { v } else { poly.prev(v) };
    (poly.edge(e).kind == EdgeKind::Reflex).then_some(e)
}

/// The vertical edge at `v`.
fn vertical_edge(poly: &RectPolygon, v: usize) -> usize {
    if poly.edge_dir(v).orientation() == Orientation::Vertical {
        v
    } else {
        poly.prev(v)
    }
}

fn is_reflex_edge(poly: &RectPolygon, e: usize) -> bool {
    poly.edge(e).kind == EdgeKind::Reflex
}

impl Coverer {
    fn check_bound(&self, r: usize, n: usize) -> Result<(), PlacementError> {
        if n > ceil3(r).max(1) {
            return Err(fail(format!("subpolygon with r = {r} received {n} beacons")));
        }
        Ok(())
    }

    /// Beacons for `poly`, in the coordinates of `poly`. `frame` maps them to
    /// the input's coordinates.
    fn run(
        &mut self,
        poly: &RectPolygon,
        frame: Transform,
        parent: Option<usize>,
    ) -> Result<Vec<Point>, PlacementError> {
        let r = poly.r();
        if r <= 3 {
            let id = self.trace.open(parent, r, TraceCase::Base);
            let b = cover_base(poly)?;
            self.trace.beacon(id, &frame, &b);
            return Ok(vec![b]);
        }
        if let Some(ch) = find_safe_cut(poly) {
            let id = self.trace.open(parent, r, TraceCase::SafeCut);
            self.trace.cut(id, &frame, &ch);
            let out = self.split(poly, &ch, frame, id)?;
            self.check_bound(r, out.len())?;
            return Ok(out);
        }
        let id = self.trace.open(parent, r, TraceCase::SafeCut);
        if one_cuts(poly).is_empty() {
            let t = Transform::ROT180;
            let q = poly.transform(&t);
            if one_cuts(&q).is_empty() {
                return Err(fail("no horizontal 1-cut with four reflex vertices below in either direction"));
            }
            let back = t.inverse();
            let out = self.no_safe_cut(&q, frame.compose(&back), id)?;
            return Ok(out.iter().map(|p| back.apply(p)).collect());
        }
        self.no_safe_cut(poly, frame, id)
    }

    fn split(
        &mut self,
        poly: &RectPolygon,
        ch: &Chord,
        frame: Transform,
        id: usize,
    ) -> Result<Vec<Point>, PlacementError> {
        let (lo, hi) = poly.split_chord(ch);
        let mut out = self.run(&lo, frame, Some(id))?;
        out.extend(self.run(&hi, frame, Some(id))?);
        dedup_points(&mut out);
        Ok(out)
    }

    fn no_safe_cut(&mut self, poly: &RectPolygon, frame: Transform, id: usize) -> Result<Vec<Point>, PlacementError> {
        let cuts = one_cuts(poly);
        let (c, _) = cuts.into_iter().min_by_key(|(_, k)| *k).expect("checked nonempty");
        self.trace.cut(id, &frame, &c);
        let v = first_reflex_swept(poly, &c, true).ok_or_else(|| fail("no reflex vertex below the cut"))?;
        let e = horizontal_reflex_edge(poly, v)
            .ok_or_else(|| fail("first reflex vertex below the minimal 1-cut is not on a horizontal reflex edge"))?;
        let out = match poly.edge(e).facing {
            Some(Facing::Top) => self.top_case(poly, &c, e, frame, id)?,
            Some(Facing::Bottom) => self.bottom_case(poly, e, v, frame, id)?,
            _ => return Err(fail("horizontal reflex edge without a vertical facing")),
        };
        self.check_bound(poly.r(), out.len())?;
        Ok(out)
    }

    fn top_case(
        &mut self,
        poly: &RectPolygon,
        c: &Chord,
        e: usize,
        frame: Transform,
        id: usize,
    ) -> Result<Vec<Point>, PlacementError> {
        let (a, b) = (e, poly.next(e));
        let (v1, v2) = if poly.vertex(a).x < poly.vertex(b).x { (a, b) } else { (b, a) };
        let r1 = poly.count_reflex_below(&Cut::just_below(v1))?;
        let r2 = poly.count_reflex_below(&Cut::just_below(v2))?;
        match (r1 % 3, r2 % 3) {
            (0, 2) | (2, 0) => {
                let vv = if r2 % 3 == 2 { v2 } else { v1 };
                self.trace.set_case(id, TraceCase::TopZeroTwo);
                let ch = poly.vertex_cut_chord(vv, Orientation::Horizontal)?;
                self.trace.cut(id, &frame, &ch);
                self.split(poly, &ch, frame, id)
            }
            (1, 1) => {
                if r1 != 1 || r2 != 1 {
                    return Err(fail(format!("1-cuts below the top reflex edge see {r1} and {r2} reflex vertices")));
                }
                let e1 = vertical_edge(poly, v1);
                let e2 = vertical_edge(poly, v2);
                let side = if !is_reflex_edge(poly, e1) {
                    Some(v2)
                } else if !is_reflex_edge(poly, e2) {
                    Some(v1)
                } else {
                    None
                };
                if let Some(bv) = side {
                    self.trace.set_case(id, TraceCase::TopConvexSide);
                    let (lo, hi) = poly.split_chord(c);
                    let bp = poly.vertex(bv).clone();
                    if !kernel(&lo).contains(&bp) {
                        return Err(fail("beacon on the top reflex edge does not guard the piece below the cut"));
                    }
                    self.trace.beacon(id, &frame, &bp);
                    let mut out = vec![bp];
                    out.extend(self.run(&hi, frame, Some(id))?);
                    dedup_points(&mut out);
                    return Ok(out);
                }
                self.top_split(poly, c, v1, v2, frame, id)
            }
            (m1, m2) => Err(fail(format!("cuts below the top reflex edge have classes ({m1}, {m2})"))),
        }
    }

    /// Both side edges of the top reflex edge are reflex: split by a vertical
    /// vertex cut.
    fn top_split(
        &mut self,
        poly: &RectPolygon,
        c: &Chord,
        v1: usize,
        v2: usize,
        frame: Transform,
        id: usize,
    ) -> Result<Vec<Point>, PlacementError> {
        let r = poly.r();
        let d1 = poly.vertex_cut_chord(v1, Orientation::Vertical)?;
        let d2 = poly.vertex_cut_chord(v2, Orientation::Vertical)?;
        let sides = |ch: &Chord| {
            let (p, q) = poly.split_chord(ch);
            (p.r(), q.r())
        };
        let s1 = sides(&d1);
        let s2 = sides(&d2);
        for (d, (p, q)) in [(&d1, s1), (&d2, s2)] {
            if p % 3 == 0 || q % 3 == 0 {
                self.trace.set_case(id, TraceCase::TopSplitZero);
                self.trace.cut(id, &frame, d);
                return self.split(poly, d, frame, id);
            }
        }
        let all = [s1.0, s1.1, s2.0, s2.1];
        if r % 3 == 2 && all.iter().all(|k| k % 3 == 2) {
            self.trace.set_case(id, TraceCase::TopSplitTwo);
            self.trace.cut(id, &frame, &d1);
            return self.split(poly, &d1, frame, id);
        }
        if !(r.is_multiple_of(3) && all.iter().all(|k| k % 3 == 1)) {
            return Err(fail(format!("vertical cuts at the top reflex edge give classes {all:?} with r = {r}")));
        }
        self.trace.set_case(id, TraceCase::TopSplitAbove);
        let w = first_reflex_swept(poly, c, false).ok_or_else(|| fail("no reflex vertex above the 1-cut"))?;
        let mut choices = vec![w];
        if let Some(f) = horizontal_reflex_edge(poly, w) {
            if poly.edge(f).facing == Some(Facing::Bottom) {
                choices.push(if f == w { poly.next(f) } else { f });
            }
        }
        let good = |k: usize| -> Result<bool, PlacementError> { Ok(poly.m_cut_class(&Cut::just_above(k))? != 1) };
        let mut pick = None;
        for &k in &choices {
            if good(k)? {
                pick = Some(k);
                break;
            }
        }
        let ws = pick.ok_or_else(|| fail("cut above the first reflex vertex over the 1-cut is a 1-cut"))?;
        let d = poly.vertex_cut_chord(ws, Orientation::Vertical)?;
        self.trace.cut(id, &frame, &d);
        self.split(poly, &d, frame, id)
    }

    fn bottom_case(
        &mut self,
        poly: &RectPolygon,
        e: usize,
        v: usize,
        frame: Transform,
        id: usize,
    ) -> Result<Vec<Point>, PlacementError> {
        let r = poly.r();
        let w = if v == e { poly.next(e) } else { e };
        let below = poly.count_reflex_below(&Cut::just_below(v))?;
        let upto = poly.count_reflex_below(&Cut::just_above(w))?;
        if r % 3 == 2 {
            return Err(fail("bottom reflex edge under the minimal 1-cut with r ≡ 2"));
        }
        if upto % 3 == 0 {
            if upto != r {
                return Err(fail("reflex vertices above a 0-cut over the bottom reflex edge"));
            }
            self.trace.set_case(id, TraceCase::BottomEmptyAbove);
            let cv = poly.vertex_cut_chord(v, Orientation::Horizontal)?;
            self.trace.cut(id, &frame, &cv);
            return self.split(poly, &cv, frame, id);
        }
        if (below % 3, upto % 3) != (1, 2) || below != 1 {
            return Err(fail(format!("bottom reflex edge with cut counts ({below}, {upto}) and r = {r}")));
        }
        self.trace.set_case(id, TraceCase::BottomOverlap);
        let cv = poly.vertex_cut_chord(v, Orientation::Horizontal)?;
        let dv = poly.vertex_cut_chord(v, Orientation::Vertical)?;
        self.trace.cut(id, &frame, &cv);
        self.trace.cut(id, &frame, &dv);
        let (lo, _) = poly.split_chord(&cv);
        let (dl, dr) = poly.split_chord(&dv);
        let far = poly.vertex(w);
        let away = if dl.vertices().contains(far) { dr } else { dl };
        let mut out = self.run(&lo, frame, Some(id))?;
        out.extend(self.run(&away, frame, Some(id))?);
        dedup_points(&mut out);
        Ok(out)
    }
}

/// Horizontal normal 1-cuts with at least four reflex vertices below, with
/// that count.
fn one_cuts(poly: &RectPolygon) -> Vec<(Chord, usize)> {
    poly.normal_cuts(Orientation::Horizontal)
        .into_iter()
        .filter_map(|ch| {
            let k = poly.reflex_below_chord(&ch);
            (k >= 4 && k % 3 == 1).then_some((ch, k))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::fixtures::*;

    #[test]
    fn base_cases() {
        assert_eq!(cover_base(&square()).unwrap(), Point::from_ints(0, 0));
        assert_eq!(cover_base(&l_shape()).unwrap(), Point::from_ints(2, 2));
        // a hooked notch: reflex edges meet at (5, 4)
        let stair = RectPolygon::validate(pts(&[
            (0, 0),
            (10, 0),
            (10, 10),
            (8, 10),
            (8, 4),
            (5, 4),
            (5, 7),
            (6, 7),
            (6, 12),
            (0, 12),
        ]))
        .unwrap();
        assert_eq!(stair.r(), 3);
        assert_eq!(cover_base(&stair).unwrap(), Point::from_ints(5, 4));
        assert!(kernel(&stair).contains(&Point::from_ints(5, 4)));
    }

    #[test]
    fn too_many_reflex_vertices() {
        let s = crate::generators::coverage_spiral(4);
        assert!(matches!(cover_base(&s.polygon), Err(PlacementError::TooManyReflexVertices(4))));
    }

    #[test]
    fn safe_cuts_satisfy_the_identity() {
        for r in 4..=9 {
            let p = crate::generators::coverage_spiral(r).polygon;
            if let Some(c) = find_safe_cut(&p) {
                let lo = p.reflex_below_chord(&c);
                assert!(lo >= 1 && r - lo >= 1);
                assert_eq!(ceil3(lo) + ceil3(r - lo), ceil3(r));
            }
        }
    }

    #[test]
    fn small_polygons() {
        assert_eq!(cover(&l_shape()).unwrap().points(), vec![Point::from_ints(2, 2)]);
        assert_eq!(cover(&u_shape()).unwrap().len(), 1);
        let (set, trace) = cover_with_trace(&crate::generators::coverage_spiral(7).polygon).unwrap();
        assert_eq!(set.len(), 3);
        assert!(trace.nodes.iter().all(|n| n.r <= 3 || !n.children.is_empty() || !n.beacons.is_empty()));
    }
}
