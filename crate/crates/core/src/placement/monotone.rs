use crate::beacons::{BeaconSet, Provenance};
use crate::geometry::{Orientation, Point, Transform};
use crate::kernel::kernel;
use crate::polygon::RectPolygon;

use super::{cover::cover_base, PlacementError};

/// Covers a monotone polygon with at most `⌊r/4⌋ + 1` beacons. A y-monotone
/// input is handled in a rotated frame.
pub fn cover_monotone(poly: &RectPolygon) -> Result<BeaconSet, PlacementError> {
    let m = poly.monotonicity();
    let t = if m.x_monotone {
        Transform::IDENTITY
    } else if m.y_monotone {
        Transform::ROT90
    } else {
        return Err(PlacementError::NotMonotone);
    };
    let q = poly.transform(&t);
    let back = t.inverse();
    let mut out = BeaconSet::new();
    for p in x_monotone(&q)? {
        let p = back.apply(&p);
        let prov = match poly.index_of(&p) {
            Some(i) if poly.is_reflex(i) => Provenance::ReflexVertex(i),
            _ => Provenance::Other,
        };
        out.push(p, prov, None);
    }
    if out.len() > poly.r() / 4 + 1 {
        return Err(PlacementError::CaseAnalysis(format!(
            "{} beacons for a monotone polygon with r = {}",
            out.len(),
            poly.r()
        )));
    }
    Ok(out)
}

fn x_monotone(poly: &RectPolygon) -> Result<Vec<Point>, PlacementError> {
    let mut edges: Vec<(Point, usize)> = poly
        .reflex_edges()
        .map(|e| {
            let (a, b) = (e.index, poly.next(e.index));
            let right = if poly.vertex(a).x > poly.vertex(b).x { a } else { b };
            (poly.vertex(right).clone(), right)
        })
        .collect();
    if edges.len() <= 1 {
        let b = match edges.first() {
            Some((p, _)) => p.clone(),
            None if poly.r() == 0 => cover_base(poly)?,
            None => poly.vertex(poly.reflex_vertices().next().expect("r >= 1")).clone(),
        };
        return Ok(vec![b]);
    }
    edges.sort();
    let (b1, _) = edges[0].clone();
    let (_, v2) = edges[1];
    let c = poly.vertex_cut_chord(v2, Orientation::Vertical)?;
    let (left, right) = poly.split_chord(&c);
    if !kernel(&left).contains(&b1) {
        return Err(PlacementError::CaseAnalysis("beacon on the first reflex edge misses the left piece".into()));
    }
    let mut out = vec![b1];
    out.extend(x_monotone(&right)?);
    Ok(out)
}
