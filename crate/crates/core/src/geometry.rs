//! Points, axis-aligned directions, and the eight symmetries of the square
//! lattice used to normalize case analyses.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// Serialized as a two-element array `["x", "y"]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(Scalar, Scalar)", into = "(Scalar, Scalar)")]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
}

impl From<(Scalar, Scalar)> for Point {
    fn from((x, y): (Scalar, Scalar)) -> Self {
        Point { x, y }
    }
}

impl From<Point> for (Scalar, Scalar) {
    fn from(p: Point) -> Self {
        (p.x, p.y)
    }
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(Scalar::from_int(x), Scalar::from_int(y))
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point::new(&self.x - &other.x, &self.y - &other.y)
    }

    pub fn add(&self, other: &Point) -> Point {
        Point::new(&self.x + &other.x, &self.y + &other.y)
    }

    pub fn scale(&self, k: &Scalar) -> Point {
        Point::new(&self.x * k, &self.y * k)
    }

    pub fn dot(&self, other: &Point) -> Scalar {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn cross(&self, other: &Point) -> Scalar {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn norm2(&self) -> Scalar {
        self.dot(self)
    }

    pub fn dist2(&self, other: &Point) -> Scalar {
        self.sub(other).norm2()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn coord(&self, axis: Axis) -> &Scalar {
        match axis {
            Axis::X => &self.x,
            Axis::Y => &self.y,
        }
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        Point::new(self.x.midpoint(&other.x), self.y.midpoint(&other.y))
    }

    /// Point on the segment `self -> other` at parameter `t`.
    pub fn lerp(&self, other: &Point, t: &Scalar) -> Point {
        self.add(&other.sub(self).scale(t))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A closed axis-parallel rectangle given by opposite corners.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rect {
    pub lo: Point,
    pub hi: Point,
}

impl Rect {
    /// The rectangle spanned by two arbitrary opposite corners.
    /// Bounding box of both rectangles.
    pub fn hull(&self, other: &Rect) -> Rect {
        Rect {
            lo: Point::new(self.lo.x.clone().min(other.lo.x.clone()), self.lo.y.clone().min(other.lo.y.clone())),
            hi: Point::new(self.hi.x.clone().max(other.hi.x.clone()), self.hi.y.clone().max(other.hi.y.clone())),
        }
    }

    pub fn spanning(a: &Point, b: &Point) -> Rect {
        Rect {
            lo: Point::new(a.x.clone().min(b.x.clone()), a.y.clone().min(b.y.clone())),
            hi: Point::new(a.x.clone().max(b.x.clone()), a.y.clone().max(b.y.clone())),
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.lo.x <= p.x && p.x <= self.hi.x && self.lo.y <= p.y && p.y <= self.hi.y
    }

    pub fn area(&self) -> Scalar {
        (&self.hi.x - &self.lo.x) * (&self.hi.y - &self.lo.y)
    }

    pub fn center(&self) -> Point {
        self.lo.midpoint(&self.hi)
    }

    pub fn corners(&self) -> [Point; 4] {
        [
            self.lo.clone(),
            Point::new(self.hi.x.clone(), self.lo.y.clone()),
            self.hi.clone(),
            Point::new(self.lo.x.clone(), self.hi.y.clone()),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    pub fn other(self) -> Axis {
        match self {
            Axis::X => Axis::Y,
            Axis::Y => Axis::X,
        }
    }
}

/// Orientation of an edge or cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Horizontal,
    Vertical,
}

impl Orientation {
    /// The axis along which the coordinate is constant.
    pub fn fixed_axis(self) -> Axis {
        match self {
            Orientation::Horizontal => Axis::Y,
            Orientation::Vertical => Axis::X,
        }
    }

    /// The axis along which the segment extends.
    pub fn running_axis(self) -> Axis {
        self.fixed_axis().other()
    }

    pub fn other(self) -> Orientation {
        match self {
            Orientation::Horizontal => Orientation::Vertical,
            Orientation::Vertical => Orientation::Horizontal,
        }
    }
}

/// One of the four axis directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dir {
    East,
    North,
    West,
    South,
}

impl Dir {
    pub fn of(v: &Point) -> Option<Dir> {
        match (v.x.signum(), v.y.signum()) {
            (1, 0) => Some(Dir::East),
            (-1, 0) => Some(Dir::West),
            (0, 1) => Some(Dir::North),
            (0, -1) => Some(Dir::South),
            _ => None,
        }
    }

    pub fn unit(self) -> (i32, i32) {
        match self {
            Dir::East => (1, 0),
            Dir::North => (0, 1),
            Dir::West => (-1, 0),
            Dir::South => (0, -1),
        }
    }

    pub fn vector(self) -> Point {
        let (x, y) = self.unit();
        Point::from_ints(x as i64, y as i64)
    }

    pub fn reverse(self) -> Dir {
        match self {
            Dir::East => Dir::West,
            Dir::West => Dir::East,
            Dir::North => Dir::South,
            Dir::South => Dir::North,
        }
    }

    pub fn ccw(self) -> Dir {
        match self {
            Dir::East => Dir::North,
            Dir::North => Dir::West,
            Dir::West => Dir::South,
            Dir::South => Dir::East,
        }
    }

    pub fn cw(self) -> Dir {
        self.ccw().reverse()
    }

    pub fn orientation(self) -> Orientation {
        match self {
            Dir::East | Dir::West => Orientation::Horizontal,
            Dir::North | Dir::South => Orientation::Vertical,
        }
    }

    /// Sign of the dot product of this unit direction with `v`.
    pub fn dot_sign(self, v: &Point) -> i32 {
        match self {
            Dir::East => v.x.signum(),
            Dir::West => -v.x.signum(),
            Dir::North => v.y.signum(),
            Dir::South => -v.y.signum(),
        }
    }
}

/// An element of the dihedral group of the square, acting as the integer
/// matrix `[[a, b], [c, d]]` on column vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Transform {
    a: i8,
    b: i8,
    c: i8,
    d: i8,
}

impl Transform {
    pub const IDENTITY: Transform = Transform { a: 1, b: 0, c: 0, d: 1 };
    pub const ROT90: Transform = Transform { a: 0, b: -1, c: 1, d: 0 };
    pub const ROT180: Transform = Transform { a: -1, b: 0, c: 0, d: -1 };
    pub const ROT270: Transform = Transform { a: 0, b: 1, c: -1, d: 0 };
    /// `(x, y) -> (-x, y)`
    pub const MIRROR_X: Transform = Transform { a: -1, b: 0, c: 0, d: 1 };
    /// `(x, y) -> (x, -y)`
    pub const MIRROR_Y: Transform = Transform { a: 1, b: 0, c: 0, d: -1 };
    /// `(x, y) -> (y, x)`
    pub const SWAP: Transform = Transform { a: 0, b: 1, c: 1, d: 0 };
    /// `(x, y) -> (-y, -x)`
    pub const ANTI_SWAP: Transform = Transform { a: 0, b: -1, c: -1, d: 0 };

    pub fn all() -> [Transform; 8] {
        [
            Self::IDENTITY,
            Self::ROT90,
            Self::ROT180,
            Self::ROT270,
            Self::MIRROR_X,
            Self::MIRROR_Y,
            Self::SWAP,
            Self::ANTI_SWAP,
        ]
    }

    fn term(k: i8, v: &Scalar) -> Scalar {
        match k {
            0 => Scalar::zero(),
            1 => v.clone(),
            _ => -v,
        }
    }

    pub fn apply(&self, p: &Point) -> Point {
        Point::new(
            Self::term(self.a, &p.x) + Self::term(self.b, &p.y),
            Self::term(self.c, &p.x) + Self::term(self.d, &p.y),
        )
    }

    pub fn inverse(&self) -> Transform {
        // orthogonal: inverse is the transpose
        Transform { a: self.a, b: self.c, c: self.b, d: self.d }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Transform) -> Transform {
        Transform {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    pub fn is_reflection(&self) -> bool {
        (self.a * self.d - self.b * self.c) < 0
    }

    pub fn apply_dir(&self, d: Dir) -> Dir {
        Dir::of(&self.apply(&d.vector())).expect("axis direction maps to axis direction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transforms_form_a_group() {
        let p = Point::new(Scalar::new(3, 2), Scalar::from_int(-5));
        for t in Transform::all() {
            assert_eq!(t.inverse().apply(&t.apply(&p)), p);
            for u in Transform::all() {
                assert_eq!(t.compose(&u).apply(&p), t.apply(&u.apply(&p)));
                assert!(Transform::all().contains(&t.compose(&u)));
            }
        }
        assert_eq!(Transform::ROT90.compose(&Transform::ROT90), Transform::ROT180);
        assert!(Transform::MIRROR_X.is_reflection());
        assert!(!Transform::ROT270.is_reflection());
    }

    #[test]
    fn dirs_rotate() {
        assert_eq!(Dir::East.ccw(), Dir::North);
        assert_eq!(Dir::East.cw(), Dir::South);
        assert_eq!(Transform::ROT90.apply_dir(Dir::East), Dir::North);
    }
}
