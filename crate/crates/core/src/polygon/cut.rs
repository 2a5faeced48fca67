use serde::{Deserialize, Serialize};

use super::{Location, PolygonError, RectPolygon};
use crate::geometry::{Axis, Dir, Orientation, Point};
use crate::scalar::Scalar;

/// Symbolic infinitesimal displacement of a cut from its anchor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CutOffset {
    None,
    /// Toward smaller coordinates: below a horizontal cut, left of a vertical one.
    JustBefore,
    /// Toward larger coordinates.
    JustAfter,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CutAnchor {
    Vertex(usize),
    Point(Point),
}

/// An axis-parallel cut described symbolically. `materialize` turns it into
/// a concrete chord with exact endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cut {
    pub anchor: CutAnchor,
    pub orientation: Orientation,
    pub offset: CutOffset,
}

impl Cut {
    /// The cut through reflex vertex `v` extending its incident edge of the
    /// given orientation.
    pub fn at_vertex(v: usize, orientation: Orientation) -> Cut {
        Cut { anchor: CutAnchor::Vertex(v), orientation, offset: CutOffset::None }
    }

    pub fn just_below(v: usize) -> Cut {
        Cut { anchor: CutAnchor::Vertex(v), orientation: Orientation::Horizontal, offset: CutOffset::JustBefore }
    }

    pub fn just_above(v: usize) -> Cut {
        Cut { anchor: CutAnchor::Vertex(v), orientation: Orientation::Horizontal, offset: CutOffset::JustAfter }
    }

    pub fn just_left(v: usize) -> Cut {
        Cut { anchor: CutAnchor::Vertex(v), orientation: Orientation::Vertical, offset: CutOffset::JustBefore }
    }

    pub fn just_right(v: usize) -> Cut {
        Cut { anchor: CutAnchor::Vertex(v), orientation: Orientation::Vertical, offset: CutOffset::JustAfter }
    }

    pub fn through(p: Point, orientation: Orientation) -> Cut {
        Cut { anchor: CutAnchor::Point(p), orientation, offset: CutOffset::None }
    }
}

/// A point on the polygon boundary together with its location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryPoint {
    pub point: Point,
    pub loc: Location,
}

impl BoundaryPoint {
    pub fn vertex(&self) -> Option<usize> {
        match self.loc {
            Location::AtVertex(k) => Some(k),
            _ => None,
        }
    }

    /// Index of the edge whose half-open span `[v_i, v_{i+1})` holds the point.
    fn slot(&self) -> usize {
        match self.loc {
            Location::AtVertex(k) | Location::OnEdge(k) => k,
            _ => unreachable!("boundary point off the boundary"),
        }
    }
}

/// A materialized cut: endpoints ordered by increasing running coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chord {
    pub orientation: Orientation,
    pub a: BoundaryPoint,
    pub b: BoundaryPoint,
}

impl Chord {
    fn new(orientation: Orientation, p: BoundaryPoint, q: BoundaryPoint) -> Chord {
        let axis = orientation.running_axis();
        if p.point.coord(axis) <= q.point.coord(axis) {
            Chord { orientation, a: p, b: q }
        } else {
            Chord { orientation, a: q, b: p }
        }
    }

    /// Constant coordinate of the chord's line.
    pub fn level(&self) -> &Scalar {
        self.a.point.coord(self.orientation.fixed_axis())
    }

    /// Not incident to any vertex of the polygon.
    pub fn is_normal(&self) -> bool {
        self.a.vertex().is_none() && self.b.vertex().is_none()
    }

    pub fn midpoint(&self) -> Point {
        self.a.point.midpoint(&self.b.point)
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        let fixed = self.orientation.fixed_axis();
        let run = self.orientation.running_axis();
        p.coord(fixed) == self.level()
            && self.a.point.coord(run) <= p.coord(run)
            && p.coord(run) <= self.b.point.coord(run)
    }
}

impl RectPolygon {
    /// First boundary point hit by the axis ray from `q` in direction `dir`,
    /// excluding `q` itself.
    pub(crate) fn axis_ray_hit(&self, q: &Point, dir: Dir) -> Option<BoundaryPoint> {
        let run = dir.orientation().running_axis();
        let fixed = run.other();
        let qr = q.coord(run);
        let qf = q.coord(fixed);
        let ahead = |c: &Scalar| match dir {
            Dir::East | Dir::North => c > qr,
            _ => c < qr,
        };
        let mut best: Option<(Scalar, BoundaryPoint)> = None;
        let mut offer = |c: &Scalar, bp: BoundaryPoint| {
            let d = (c - qr).abs();
            if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
                best = Some((d, bp));
            }
        };
        for i in 0..self.n() {
            let (a, b) = self.edge_endpoints(i);
            let e_dir = self.edge_dir(i);
            if e_dir.orientation() == dir.orientation() {
                // parallel: only collinear endpoints can be hit
                if a.coord(fixed) == qf {
                    for (k, v) in [(i, a), (self.next(i), b)] {
                        if ahead(v.coord(run)) {
                            offer(v.coord(run), BoundaryPoint { point: v.clone(), loc: Location::AtVertex(k) });
                        }
                    }
                }
                continue;
            }
            let c = a.coord(run);
            if !ahead(c) {
                continue;
            }
            let (lo, hi) = if a.coord(fixed) <= b.coord(fixed) { (a, b) } else { (b, a) };
            if lo.coord(fixed) <= qf && qf <= hi.coord(fixed) {
                let loc = if a.coord(fixed) == qf {
                    Location::AtVertex(i)
                } else if b.coord(fixed) == qf {
                    Location::AtVertex(self.next(i))
                } else {
                    Location::OnEdge(i)
                };
                let point = match run {
                    Axis::X => Point::new(c.clone(), qf.clone()),
                    Axis::Y => Point::new(qf.clone(), c.clone()),
                };
                offer(c, BoundaryPoint { point, loc });
            }
        }
        best.map(|(_, bp)| bp)
    }

    /// The cut at reflex vertex `k` obtained by extending its incident edge
    /// of orientation `o` through `k`.
    pub fn vertex_cut_chord(&self, k: usize, o: Orientation) -> Result<Chord, PolygonError> {
        if !self.is_reflex(k) {
            return Err(PolygonError::NotAChord(format!("vertex {k} is convex; it has no cut")));
        }
        let out = self.edge_dir(k);
        let along = if out.orientation() == o { out } else { self.edge_dir(self.prev(k)).reverse() };
        let start = BoundaryPoint { point: self.vertex(k).clone(), loc: Location::AtVertex(k) };
        let end = self
            .axis_ray_hit(self.vertex(k), along.reverse())
            .ok_or_else(|| PolygonError::NotAChord(format!("cut at vertex {k} does not end")))?;
        Ok(Chord::new(o, start, end))
    }

    fn offset_level(&self, base: &Scalar, axis: Axis, offset: CutOffset) -> Result<Scalar, PolygonError> {
        let coords = self.distinct_coords(axis);
        let neighbor = match offset {
            CutOffset::None => return Ok(base.clone()),
            CutOffset::JustBefore => coords.iter().rev().find(|c| *c < base),
            CutOffset::JustAfter => coords.iter().find(|c| *c > base),
        };
        neighbor
            .map(|c| c.midpoint(base))
            .ok_or_else(|| PolygonError::NotAChord(format!("no room beside coordinate {base}")))
    }

    /// The chord on a line avoiding vertex coordinates whose closure
    /// contains running coordinate `at`.
    fn chord_on_free_line(&self, o: Orientation, level: &Scalar, at: &Scalar) -> Result<Chord, PolygonError> {
        self.chords_on_free_line(o, level)
            .into_iter()
            .find(|c| {
                let run = o.running_axis();
                c.a.point.coord(run) <= at && at <= c.b.point.coord(run)
            })
            .ok_or_else(|| PolygonError::NotAChord(format!("line at {level} misses the anchor")))
    }

    /// All chords on the line `fixed = level`, which must avoid vertex
    /// coordinates, ordered by running coordinate.
    pub(crate) fn chords_on_free_line(&self, o: Orientation, level: &Scalar) -> Vec<Chord> {
        let fixed = o.fixed_axis();
        let run = o.running_axis();
        let mut hits: Vec<(Scalar, usize)> = Vec::new();
        for i in 0..self.n() {
            if self.edge_dir(i).orientation() == o {
                continue;
            }
            let (a, b) = self.edge_endpoints(i);
            let (lo, hi) = if a.coord(fixed) <= b.coord(fixed) { (a, b) } else { (b, a) };
            if lo.coord(fixed) < level && level < hi.coord(fixed) {
                hits.push((a.coord(run).clone(), i));
            }
        }
        hits.sort();
        hits.chunks(2)
            .filter(|pair| pair.len() == 2)
            .map(|pair| {
                let mk = |(c, i): &(Scalar, usize)| {
                    let point = match run {
                        Axis::X => Point::new(c.clone(), level.clone()),
                        Axis::Y => Point::new(level.clone(), c.clone()),
                    };
                    BoundaryPoint { point, loc: Location::OnEdge(*i) }
                };
                Chord::new(o, mk(&pair[0]), mk(&pair[1]))
            })
            .collect()
    }

    pub fn materialize(&self, cut: &Cut) -> Result<Chord, PolygonError> {
        let o = cut.orientation;
        let fixed = o.fixed_axis();
        let run = o.running_axis();
        match (&cut.anchor, cut.offset) {
            (CutAnchor::Vertex(k), CutOffset::None) => self.vertex_cut_chord(*k, o),
            (CutAnchor::Vertex(k), off) => {
                let v = self.vertex(*k);
                let level = self.offset_level(v.coord(fixed), fixed, off)?;
                self.chord_on_free_line(o, &level, v.coord(run))
            }
            (CutAnchor::Point(q), CutOffset::None) => self.chord_through_point(q, o),
            (CutAnchor::Point(q), off) => {
                let level = self.offset_level(q.coord(fixed), fixed, off)?;
                self.chord_on_free_line(o, &level, q.coord(run))
            }
        }
    }

    fn chord_through_point(&self, q: &Point, o: Orientation) -> Result<Chord, PolygonError> {
        let (fwd, back) = match o {
            Orientation::Horizontal => (Dir::East, Dir::West),
            Orientation::Vertical => (Dir::North, Dir::South),
        };
        let not_chord = || PolygonError::NotAChord(format!("no {o:?} chord through {q}"));
        match self.locate(q) {
            Location::Interior => {
                let a = self.axis_ray_hit(q, back).ok_or_else(not_chord)?;
                let b = self.axis_ray_hit(q, fwd).ok_or_else(not_chord)?;
                Ok(Chord::new(o, a, b))
            }
            Location::OnEdge(i) if self.edge_dir(i).orientation() != o => {
                let inward = self.edge_dir(i).ccw();
                let b = self.axis_ray_hit(q, inward).ok_or_else(not_chord)?;
                Ok(Chord::new(o, BoundaryPoint { point: q.clone(), loc: Location::OnEdge(i) }, b))
            }
            Location::AtVertex(k) if self.is_reflex(k) => self.vertex_cut_chord(k, o),
            _ => Err(not_chord()),
        }
    }

    /// The two boundary chains cut off by `chord`, each starting and ending
    /// at a chord endpoint, and whether the first one is on the minus side.
    fn chains(&self, chord: &Chord) -> (Vec<Point>, Vec<Point>, Vec<usize>, Vec<usize>, bool) {
        let n = self.n();
        let (sa, sb) = (chord.a.slot(), chord.b.slot());
        let walk = |from: usize, to: usize| -> Vec<usize> {
            let mut out = Vec::new();
            let mut i = (from + 1) % n;
            loop {
                out.push(i);
                if i == to {
                    break;
                }
                i = (i + 1) % n;
            }
            out
        };
        let idx1 = walk(sa, sb);
        let idx2 = walk(sb, sa);
        let mut c1 = vec![chord.a.point.clone()];
        c1.extend(idx1.iter().map(|&i| self.vertex(i).clone()));
        c1.push(chord.b.point.clone());
        let mut c2 = vec![chord.b.point.clone()];
        c2.extend(idx2.iter().map(|&i| self.vertex(i).clone()));
        c2.push(chord.a.point.clone());
        let fixed = chord.orientation.fixed_axis();
        let level = chord.level();
        let first_minus = c1
            .iter()
            .map(|p| p.coord(fixed))
            .find(|c| *c != level)
            .map(|c| c < level)
            .unwrap_or_else(|| c2.iter().map(|p| p.coord(fixed)).any(|c| c > level));
        (c1, c2, idx1, idx2, first_minus)
    }

    /// Splits along a chord into the piece below/left and the piece
    /// above/right.
    pub fn split_chord(&self, chord: &Chord) -> (RectPolygon, RectPolygon) {
        let (c1, c2, _, _, first_minus) = self.chains(chord);
        let p1 = RectPolygon::from_piece(c1);
        let p2 = RectPolygon::from_piece(c2);
        if first_minus {
            (p1, p2)
        } else {
            (p2, p1)
        }
    }

    pub fn split(&self, cut: &Cut) -> Result<(RectPolygon, RectPolygon), PolygonError> {
        Ok(self.split_chord(&self.materialize(cut)?))
    }

    /// Reflex vertices of this polygon strictly on the minus side of the
    /// chord (chord endpoints excluded).
    pub fn reflex_below_chord(&self, chord: &Chord) -> usize {
        let (_, _, idx1, idx2, first_minus) = self.chains(chord);
        let side = if first_minus { idx1 } else { idx2 };
        let ends = [chord.a.vertex(), chord.b.vertex()];
        side.iter().filter(|&&i| self.is_reflex(i) && !ends.contains(&Some(i))).count()
    }

    /// Reflex vertices strictly on the minus and on the plus side of the
    /// chord (chord endpoints excluded).
    pub fn reflex_sides(&self, chord: &Chord) -> (Vec<usize>, Vec<usize>) {
        let (_, _, idx1, idx2, first_minus) = self.chains(chord);
        let ends = [chord.a.vertex(), chord.b.vertex()];
        let pick = |side: &[usize]| -> Vec<usize> {
            side.iter().copied().filter(|&i| self.is_reflex(i) && !ends.contains(&Some(i))).collect()
        };
        if first_minus {
            (pick(&idx1), pick(&idx2))
        } else {
            (pick(&idx2), pick(&idx1))
        }
    }

    pub fn count_reflex_below(&self, cut: &Cut) -> Result<usize, PolygonError> {
        Ok(self.reflex_below_chord(&self.materialize(cut)?))
    }

    /// `m` such that the cut is an m-cut: reflex count below, modulo 3.
    pub fn m_cut_class(&self, cut: &Cut) -> Result<usize, PolygonError> {
        Ok(self.count_reflex_below(cut)? % 3)
    }

    /// The subpolygon cut off by extending reflex edge `e` through its
    /// endpoint `v` that does not contain `e`.
    pub fn pocket(&self, e: usize, v: usize) -> Result<RectPolygon, PolygonError> {
        let w = if v == e {
            self.next(e)
        } else if v == self.next(e) {
            e
        } else {
            return Err(PolygonError::NotAChord(format!("vertex {v} is not an endpoint of edge {e}")));
        };
        if !(self.is_reflex(v) && self.is_reflex(w)) {
            return Err(PolygonError::NotAChord(format!("edge {e} is not a reflex edge")));
        }
        let chord = self.vertex_cut_chord(v, self.edge_dir(e).orientation())?;
        let (lo, hi) = self.split_chord(&chord);
        let other = self.vertex(w);
        Ok(if lo.vertices().contains(other) { hi } else { lo })
    }

    /// One representative of every combinatorially distinct normal cut of
    /// the given orientation, ordered by level and then running coordinate.
    pub fn normal_cuts(&self, o: Orientation) -> Vec<Chord> {
        let coords = self.distinct_coords(o.fixed_axis());
        coords.windows(2).flat_map(|w| self.chords_on_free_line(o, &w[0].midpoint(&w[1]))).collect()
    }
}
