use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{GroupError, Letter, Word};
use crate::lattice::{EdgeId, Orient, Point};
use crate::ring::{Ring, Sparse};

/// Signed traversal counts of the edges of the square grid.
pub type Flow = Sparse<EdgeId>;

/// An element of the free metabelian group on `x, y`: the endpoint of a
/// path from the origin and its edge flow. Two words are equal in the group
/// iff these agree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MetabelianElement {
    pub ab: Point,
    pub flow: Flow,
}

fn translate(fl: &Flow, by: Point) -> Flow {
    fl.map_keys(|e| e.translate(by))
}

impl MetabelianElement {
    pub fn identity() -> Self {
        MetabelianElement {
            ab: Point::ORIGIN,
            flow: Flow::zero(Ring::Integers),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.ab == Point::ORIGIN && self.flow.is_zero()
    }

    /// `(a1, f1)(a2, f2) = (a1 + a2, f1 + a1.f2)`.
    pub fn mul(&self, other: &MetabelianElement) -> MetabelianElement {
        let mut out = self.clone();
        out.mul_assign(other);
        out
    }

    pub fn mul_assign(&mut self, other: &MetabelianElement) {
        for (e, v) in other.flow.iter() {
            self.flow.add_at(e.translate(self.ab), v.clone());
        }
        self.ab = self.ab + other.ab;
    }

    pub fn inverse(&self) -> MetabelianElement {
        MetabelianElement {
            ab: -self.ab,
            flow: translate(&self.flow, -self.ab).negate(),
        }
    }

    /// Whether the flow is the flow of some path from the origin to `ab`.
    pub fn is_consistent(&self) -> bool {
        let mut expected = Sparse::zero(Ring::Integers);
        expected.add_at(self.ab, BigInt::from(1));
        expected.add_at(Point::ORIGIN, BigInt::from(-1));
        vertex_boundary(&self.flow) == expected
    }
}

/// Net inflow at every vertex.
fn vertex_boundary(fl: &Flow) -> Sparse<Point> {
    let mut out = Sparse::zero(Ring::Integers);
    for (e, v) in fl.iter() {
        let (from, to) = e.endpoints();
        out.add_at(to, v.clone());
        out.add_at(from, -v);
    }
    out
}

/// Traces `w` from the origin, counting backward traversals negatively.
pub fn metabelian_eval(w: &Word) -> Result<MetabelianElement, GroupError> {
    let mut p = Point::ORIGIN;
    let mut flow = Flow::zero(Ring::Integers);
    let one = BigInt::from(1);
    for &l in w.letters() {
        match l {
            Letter::X => {
                flow.add_at(EdgeId::h(p.x, p.y), one.clone());
                p.x += 1;
            }
            Letter::XInv => {
                p.x -= 1;
                flow.add_at(EdgeId::h(p.x, p.y), -&one);
            }
            Letter::Y => {
                flow.add_at(EdgeId::v(p.x, p.y), one.clone());
                p.y += 1;
            }
            Letter::YInv => {
                p.y -= 1;
                flow.add_at(EdgeId::v(p.x, p.y), -&one);
            }
            other => return Err(GroupError::UnboundSymbol(other)),
        }
    }
    Ok(MetabelianElement { ab: p, flow })
}

/// The boundary of a 2-chain: cell `(a, b)` with coefficient `k` gives
/// `k` on its bottom and right edges and `-k` on its top and left edges.
pub fn boundary(cells: &Sparse<Point>) -> Flow {
    let mut out = Flow::zero(Ring::Integers);
    for (p, k) in cells.iter() {
        out.add_at(EdgeId::h(p.x, p.y), k.clone());
        out.add_at(EdgeId::v(p.x + 1, p.y), k.clone());
        out.add_at(EdgeId::h(p.x, p.y + 1), -k);
        out.add_at(EdgeId::v(p.x, p.y), -k);
    }
    out
}

/// The unique 2-chain with boundary `fl`:
/// `phi(a, b) = -sum_{j > b} fl(H(a, j))`.
pub fn cell_coefficients(fl: &Flow) -> Result<Sparse<Point>, GroupError> {
    if !vertex_boundary(fl).is_zero() {
        return Err(GroupError::NotACycle);
    }
    let mut cells = Sparse::zero(Ring::Integers);
    let mut columns: alloc::collections::BTreeMap<i64, Vec<(i64, &BigInt)>> = Default::default();
    for (e, v) in fl.iter() {
        if e.orient == Orient::H {
            columns.entry(e.base.x).or_default().push((e.base.y, v));
        }
    }
    for (a, mut col) in columns {
        col.sort_by_key(|&(j, _)| core::cmp::Reverse(j));
        let mut suffix = BigInt::zero();
        for w in 0..col.len() {
            let (j, v) = col[w];
            suffix -= v;
            let low = col.get(w + 1).map_or(j - 1, |&(next, _)| next);
            for b in low..j {
                cells.add_at(Point::new(a, b), suffix.clone());
            }
        }
    }
    if boundary(&cells) != *fl {
        return Err(GroupError::NotACycle);
    }
    Ok(cells)
}

/// Coordinates of a cycle in the cells `c + (a, b)` and, regrouped by
/// columns modulo `m`, over the free `Z[mZ x Z]`-module with bases
/// `{c + (i, 0)}` (old) and `{c + (i, 0) : i < m - 1} + {c'}` (new), where
/// `c'` is the sum of the `m` old basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellDecomposition {
    pub m: usize,
    pub cells: Sparse<Point>,
    /// `((a - i) / m, b), i` for cell `(a, b)` with `i = a mod m`.
    pub old: Sparse<(Point, usize)>,
    /// Index `i < m - 1` for `b_i`, index `m - 1` for `b'`.
    pub new: Sparse<(Point, usize)>,
}

/// Old coordinates `a_0..a_{m-1}` to new `b_0..b_{m-2}, b'`.
pub fn basis_change(a: &[BigInt]) -> Vec<BigInt> {
    let Some(last) = a.last() else {
        return Vec::new();
    };
    let mut b: Vec<BigInt> = a[..a.len() - 1].iter().map(|ai| ai - last).collect();
    b.push(last.clone());
    b
}

/// Inverse of [`basis_change`].
pub fn basis_restore(b: &[BigInt]) -> Vec<BigInt> {
    let Some(prime) = b.last() else {
        return Vec::new();
    };
    let mut a: Vec<BigInt> = b[..b.len() - 1].iter().map(|bi| bi + prime).collect();
    a.push(prime.clone());
    a
}

pub fn flow_decompose(fl: &Flow, m: usize) -> Result<CellDecomposition, GroupError> {
    assert!(m >= 1, "column period must be positive");
    let cells = cell_coefficients(fl)?;
    let mi = m as i64;
    let mut old = Sparse::zero(Ring::Integers);
    for (p, k) in cells.iter() {
        let i = p.x.rem_euclid(mi);
        old.add_at((Point::new(p.x.div_euclid(mi), p.y), i as usize), k.clone());
    }
    let mut new = Sparse::zero(Ring::Integers);
    let positions: alloc::collections::BTreeSet<Point> = old.keys().map(|(p, _)| *p).collect();
    for p in positions {
        let a: Vec<BigInt> = (0..m)
            .map(|i| old.get(&(p, i)).cloned().unwrap_or_default())
            .collect();
        for (i, v) in basis_change(&a).into_iter().enumerate() {
            new.add_at((p, i), v);
        }
    }
    Ok(CellDecomposition { m, cells, old, new })
}

/// A word over `x, y` evaluating to `(0, fl)`: the product over cells in
/// row-major order of `x^a y^b [x,y]^phi(a,b) y^-b x^-a`, freely reduced.
pub fn flow_to_word(fl: &Flow) -> Result<Word, GroupError> {
    let cells = cell_coefficients(fl)?;
    let comm = Word(alloc::vec![
        Letter::X,
        Letter::Y,
        Letter::XInv,
        Letter::YInv
    ]);
    let mut w = Word::new();
    for (p, k) in cells.iter() {
        let k = k.to_i64().expect("cell coefficients fit in i64");
        w.push_power(Letter::X, p.x);
        w.push_power(Letter::Y, p.y);
        let c = if k < 0 { comm.inverse() } else { comm.clone() };
        for _ in 0..k.unsigned_abs() {
            w.extend(&c);
        }
        w.push_power(Letter::Y, -p.y);
        w.push_power(Letter::X, -p.x);
    }
    Ok(w.free_reduce())
}
