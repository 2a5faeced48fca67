//! Boolean cell grids and their boundary cycles. Used to grow random
//! polyominoes and to turn unions of rectangles back into polygons.

pub(crate) struct Cells {
    w: usize,
    h: usize,
    filled: Vec<bool>,
}

const STEPS: [(isize, isize); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

impl Cells {
    pub fn new(w: usize, h: usize) -> Cells {
        Cells { w, h, filled: vec![false; w * h] }
    }

    pub fn get(&self, x: isize, y: isize) -> bool {
        (0..self.w as isize).contains(&x)
            && (0..self.h as isize).contains(&y)
            && self.filled[y as usize * self.w + x as usize]
    }

    pub fn set(&mut self, x: usize, y: usize, v: bool) {
        self.filled[y * self.w + x] = v;
    }

    pub fn count(&self) -> usize {
        self.filled.iter().filter(|&&c| c).count()
    }

    /// Vertex count of the boundary, or `None` when two cells touch only
    /// diagonally.
    pub fn corners(&self) -> Option<usize> {
        let mut n = 0;
        for y in 0..=self.h as isize {
            for x in 0..=self.w as isize {
                let q = [self.get(x - 1, y - 1), self.get(x, y - 1), self.get(x - 1, y), self.get(x, y)];
                match q.iter().filter(|&&c| c).count() {
                    1 | 3 => n += 1,
                    2 if q[0] == q[3] => return None,
                    _ => {}
                }
            }
        }
        Some(n)
    }

    fn flood(&self, start: (isize, isize), want: bool, pad: isize) -> usize {
        let (w, h) = (self.w as isize + 2 * pad, self.h as isize + 2 * pad);
        let mut seen = vec![false; (w * h) as usize];
        let idx = |x: isize, y: isize| ((y + pad) * w + x + pad) as usize;
        let mut stack = vec![start];
        seen[idx(start.0, start.1)] = true;
        let mut reached = 0;
        while let Some((x, y)) = stack.pop() {
            reached += 1;
            for (dx, dy) in STEPS {
                let (nx, ny) = (x + dx, y + dy);
                if nx < -pad || ny < -pad || nx >= w - pad || ny >= h - pad || self.get(nx, ny) != want {
                    continue;
                }
                if !seen[idx(nx, ny)] {
                    seen[idx(nx, ny)] = true;
                    stack.push((nx, ny));
                }
            }
        }
        reached
    }

    /// Whether the empty cells all connect to the outside.
    pub fn hole_free(&self) -> bool {
        let side = (self.w + 2) * (self.h + 2);
        self.flood((-1, -1), false, 1) == side - self.count()
    }

    /// Whether the filled cells form one edge-connected component.
    pub fn connected(&self) -> bool {
        match self.filled.iter().position(|&c| c) {
            None => false,
            Some(i) => self.flood(((i % self.w) as isize, (i / self.w) as isize), true, 0) == self.count(),
        }
    }

    /// Corner points of the boundary in counterclockwise order, without
    /// straight-angle points. Requires a connected, hole-free, pinch-free set.
    pub fn boundary(&self) -> Vec<(usize, usize)> {
        let start = self.filled.iter().position(|&c| c).expect("nonempty");
        let (sx, sy) = ((start % self.w) as isize, (start / self.w) as isize);
        // cells on the left and right of the unit edge leaving (x, y) along d
        let left = |x: isize, y: isize, d: (isize, isize)| match d {
            (1, 0) => self.get(x, y),
            (0, 1) => self.get(x - 1, y),
            (-1, 0) => self.get(x - 1, y - 1),
            _ => self.get(x, y - 1),
        };
        let right = |x: isize, y: isize, d: (isize, isize)| match d {
            (1, 0) => self.get(x, y - 1),
            (0, 1) => self.get(x, y),
            (-1, 0) => self.get(x - 1, y),
            _ => self.get(x - 1, y - 1),
        };
        let mut pts = Vec::new();
        let (mut x, mut y, mut d) = (sx, sy, (1isize, 0isize));
        loop {
            pts.push((x, y));
            x += d.0;
            y += d.1;
            if (x, y) == (sx, sy) {
                break;
            }
            let turn_left = (-d.1, d.0);
            d = if left(x, y, turn_left) && !right(x, y, turn_left) {
                turn_left
            } else if left(x, y, d) && !right(x, y, d) {
                d
            } else {
                (d.1, -d.0)
            };
        }
        let n = pts.len();
        (0..n)
            .filter(|&i| {
                let (a, b, c) = (pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n]);
                !((a.0 == b.0 && b.0 == c.0) || (a.1 == b.1 && b.1 == c.1))
            })
            .map(|i| (pts[i].0 as usize, pts[i].1 as usize))
            .collect()
    }
}
