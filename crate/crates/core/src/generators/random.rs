use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GeneratorError;
use crate::cells::Cells;
use crate::geometry::Point;
use crate::polygon::RectPolygon;
use crate::scalar::Scalar;

const ATTEMPTS: usize = 64;

/// Gives every horizontal edge its own y and every vertical edge its own x,
/// preserving the combinatorial shape.
fn spread_coordinates(pts: &[(i64, i64)], rng: &mut ChaCha8Rng) -> Vec<Point> {
    let n = pts.len();
    let scale = 2 * n as i64 + 2;
    let mut offsets: Vec<i64> = (-(n as i64)..=n as i64).collect();
    offsets.shuffle(rng);
    let mut next = offsets.into_iter();
    // edge i runs from pts[i] to pts[i+1]
    let mut xs = vec![0i64; n];
    let mut ys = vec![0i64; n];
    for i in 0..n {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        let off = next.next().expect("enough offsets");
        if a.1 == b.1 {
            ys[i] = a.1 * scale + off;
            ys[(i + 1) % n] = a.1 * scale + off;
        } else {
            xs[i] = a.0 * scale + off;
            xs[(i + 1) % n] = a.0 * scale + off;
        }
    }
    (0..n).map(|i| Point::new(Scalar::from_int(xs[i]), Scalar::from_int(ys[i]))).collect()
}

fn grow(n: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(i64, i64)>> {
    let k = n / 2 + 2;
    let mut cells = Cells::new(k, k);
    cells.set(k / 2, k / 2, true);
    let mut count = 4;
    let mut stalls = 0;
    while count != n {
        if stalls > 200 * n {
            return None;
        }
        let x = rng.gen_range(0..k);
        let y = rng.gen_range(0..k);
        let (xi, yi) = (x as isize, y as isize);
        let adjacent = [(1, 0), (-1, 0), (0, 1), (0, -1)].iter().any(|(dx, dy)| cells.get(xi + dx, yi + dy));
        if cells.get(xi, yi) || !adjacent {
            stalls += 1;
            continue;
        }
        cells.set(x, y, true);
        match cells.corners() {
            Some(c) if c <= n && cells.hole_free() => {
                count = c;
                stalls = 0;
            }
            _ => {
                cells.set(x, y, false);
                stalls += 1;
            }
        }
    }
    Some(cells.boundary().into_iter().map(|(x, y)| (x as i64, y as i64)).collect())
}

/// A random simple rectilinear polygon with exactly `n` vertices in general
/// position with pairwise distinct edge coordinates, deterministic per seed.
pub fn random_rectilinear(n: usize, seed: u64) -> Result<RectPolygon, GeneratorError> {
    if n < 4 || n % 2 == 1 {
        return Err(GeneratorError::InvalidArgument(format!("vertex count {n} must be even and at least 4")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let Some(grid) = grow(n, &mut rng) else { continue };
        let pts = spread_coordinates(&grid, &mut rng);
        if let Ok(p) = RectPolygon::validate(pts) {
            if p.n() == n {
                return Ok(p);
            }
        }
    }
    Err(GeneratorError::GenerationFailed { n, seed })
}

/// A random x-monotone rectilinear polygon with `n` vertices in general
/// position. Its upper and lower chains step at distinct abscissae.
pub fn random_x_monotone(n: usize, seed: u64) -> Result<RectPolygon, GeneratorError> {
    if n < 4 || n % 2 == 1 {
        return Err(GeneratorError::InvalidArgument(format!("vertex count {n} must be even and at least 4")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let steps = (n - 4) / 2;
    let span = 4 * n as i64 + 8;
    for _ in 0..ATTEMPTS {
        let (mut lo, mut hi) = (0i64, span);
        let mut used_y = std::collections::HashSet::from([lo, hi]);
        let mut fresh_y = |rng: &mut ChaCha8Rng, lo: i64, hi: i64| -> Option<i64> {
            (0..64).map(|_| rng.gen_range(lo..=hi)).find(|y| used_y.insert(*y))
        };
        let mut top = vec![(0i64, hi)];
        let mut bottom = vec![(0i64, lo)];
        let mut ok = true;
        for s in 1..=steps {
            let x = 10 * s as i64;
            if rng.gen_bool(0.5) {
                match fresh_y(&mut rng, lo + 1, lo + span) {
                    Some(y) => hi = y,
                    None => ok = false,
                }
                top.push((x, hi));
            } else {
                match fresh_y(&mut rng, hi - span, hi - 1) {
                    Some(y) => lo = y,
                    None => ok = false,
                }
                bottom.push((x, lo));
            }
        }
        if !ok {
            continue;
        }
        let right = 10 * (steps as i64 + 1);
        let mut pts = Vec::new();
        // lower chain left to right
        for (i, &(x, y)) in bottom.iter().enumerate() {
            if i > 0 {
                pts.push((x, bottom[i - 1].1));
            }
            pts.push((x, y));
        }
        pts.push((right, lo));
        pts.push((right, hi));
        for (i, &(x, y)) in top.iter().enumerate().rev() {
            pts.push((x, y));
            if i > 0 {
                pts.push((x, top[i - 1].1));
            }
        }
        let pts = pts.into_iter().map(|(x, y)| Point::from_ints(x, y)).collect();
        if let Ok(p) = RectPolygon::validate(pts) {
            debug_assert_eq!(p.n(), n);
            return Ok(p);
        }
    }
    Err(GeneratorError::GenerationFailed { n, seed })
}
