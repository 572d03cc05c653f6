//! Points and edges of the square grid `Z x Z`.

use core::cmp::Ordering;
use core::ops::{Add, Neg, Sub};

/// A lattice point. Ordered right-lexicographically: by `y`, then `x`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point::new(x, y)
    }
}

/// `H` is the edge `{(a,b),(a+1,b)}`, `V` is `{(a,b),(a,b+1)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orient {
    H,
    V,
}

/// An undirected grid edge, stored by its lower-left endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId {
    pub base: Point,
    pub orient: Orient,
}

impl EdgeId {
    pub const fn h(x: i64, y: i64) -> Self {
        EdgeId {
            base: Point::new(x, y),
            orient: Orient::H,
        }
    }

    pub const fn v(x: i64, y: i64) -> Self {
        EdgeId {
            base: Point::new(x, y),
            orient: Orient::V,
        }
    }

    /// The canonical id of the edge between two adjacent points, if they are adjacent.
    pub fn between(p: Point, q: Point) -> Option<Self> {
        let (lo, hi) = if (p.x, p.y) <= (q.x, q.y) {
            (p, q)
        } else {
            (q, p)
        };
        match (hi.x - lo.x, hi.y - lo.y) {
            (1, 0) => Some(EdgeId {
                base: lo,
                orient: Orient::H,
            }),
            (0, 1) => Some(EdgeId {
                base: lo,
                orient: Orient::V,
            }),
            _ => None,
        }
    }

    pub fn endpoints(&self) -> (Point, Point) {
        let step = match self.orient {
            Orient::H => Point::new(1, 0),
            Orient::V => Point::new(0, 1),
        };
        (self.base, self.base + step)
    }

    pub fn translate(&self, by: Point) -> Self {
        EdgeId {
            base: self.base + by,
            orient: self.orient,
        }
    }
}

/// A closed rectangle of lattice points `[x0, x1] x [y0, y1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub x0: i64,
    pub y0: i64,
    pub x1: i64,
    pub y1: i64,
}

impl Window {
    pub fn new(x0: i64, y0: i64, x1: i64, y1: i64) -> Self {
        Window { x0, y0, x1, y1 }
    }

    pub fn contains(&self, p: Point) -> bool {
        (self.x0..=self.x1).contains(&p.x) && (self.y0..=self.y1).contains(&p.y)
    }

    /// Points in right-lexicographic order.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (self.y0..=self.y1).flat_map(move |y| (self.x0..=self.x1).map(move |x| Point::new(x, y)))
    }

    pub fn is_empty(&self) -> bool {
        self.x0 > self.x1 || self.y0 > self.y1
    }
}
