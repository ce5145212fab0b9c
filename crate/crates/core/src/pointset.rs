//! Finite sets of lattice points.

use std::collections::BTreeSet;

use thiserror::Error;

pub type Point = Vec<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PointSetError {
    #[error("point {point:?} has length {len}, expected {dim}")]
    WrongLength {
        point: Point,
        len: usize,
        dim: usize,
    },
    #[error("direction vector is zero")]
    ZeroDirection,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

/// A finite set of integer vectors of a fixed length, kept in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    dim: usize,
    points: BTreeSet<Point>,
}

impl PointSet {
    pub fn new<I: IntoIterator<Item = Point>>(
        dim: usize,
        points: I,
    ) -> Result<Self, PointSetError> {
        let mut set = BTreeSet::new();
        for p in points {
            if p.len() != dim {
                return Err(PointSetError::WrongLength {
                    len: p.len(),
                    point: p,
                    dim,
                });
            }
            set.insert(p);
        }
        Ok(PointSet { dim, points: set })
    }

    pub fn empty(dim: usize) -> Self {
        PointSet {
            dim,
            points: BTreeSet::new(),
        }
    }

    pub fn origin(dim: usize) -> Self {
        PointSet {
            dim,
            points: BTreeSet::from([vec![0; dim]]),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.points.contains(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Point> {
        self.points.iter()
    }

    pub fn to_vec(&self) -> Vec<Point> {
        self.points.iter().cloned().collect()
    }

    pub fn insert(&mut self, p: Point) {
        assert_eq!(p.len(), self.dim);
        self.points.insert(p);
    }

    pub fn remove(&mut self, p: &[i64]) -> bool {
        self.points.remove(p)
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.points.is_subset(&other.points)
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        PointSet {
            dim: self.dim,
            points: self.points.union(&other.points).cloned().collect(),
        }
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        PointSet {
            dim: self.dim,
            points: self.points.difference(&other.points).cloned().collect(),
        }
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        PointSet {
            dim: self.dim,
            points: self.points.intersection(&other.points).cloned().collect(),
        }
    }

    pub fn translate(&self, v: &[i64]) -> PointSet {
        assert_eq!(v.len(), self.dim);
        PointSet {
            dim: self.dim,
            points: self.points.iter().map(|p| add(p, v)).collect(),
        }
    }

    /// `{a + b}` over all pairs.
    pub fn minkowski_sum(&self, other: &PointSet) -> PointSet {
        let mut out = BTreeSet::new();
        for a in &self.points {
            for b in &other.points {
                out.insert(add(a, b));
            }
        }
        PointSet {
            dim: self.dim,
            points: out,
        }
    }

    /// Point-set erosion `{x in Z^n : x + other ⊆ self}`, computed by definition.
    ///
    /// Eroding by the empty set is undefined here and returns the empty set.
    pub fn erode(&self, other: &PointSet) -> PointSet {
        let mut out = BTreeSet::new();
        let Some(anchor) = other.points.iter().next() else {
            return PointSet::empty(self.dim);
        };
        for a in &self.points {
            let x = sub(a, anchor);
            if other
                .points
                .iter()
                .all(|b| self.points.contains(&add(&x, b)))
            {
                out.insert(x);
            }
        }
        PointSet {
            dim: self.dim,
            points: out,
        }
    }

    /// `j`-fold erosion; `j = 0` returns a copy.
    pub fn erode_iter(&self, other: &PointSet, j: usize) -> PointSet {
        let mut cur = self.clone();
        for _ in 0..j {
            if cur.is_empty() {
                break;
            }
            cur = cur.erode(other);
        }
        cur
    }

    /// Points minimizing `<v, p>`.
    pub fn face(&self, v: &[i64]) -> Result<PointSet, PointSetError> {
        if v.iter().all(|&x| x == 0) {
            return Err(PointSetError::ZeroDirection);
        }
        let Some(min) = self.points.iter().map(|p| dot(v, p)).min() else {
            return Ok(PointSet::empty(self.dim));
        };
        Ok(PointSet {
            dim: self.dim,
            points: self
                .points
                .iter()
                .filter(|p| dot(v, p) == min)
                .cloned()
                .collect(),
        })
    }
}

pub fn add(a: &[i64], b: &[i64]) -> Point {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(pts: &[&[i64]]) -> PointSet {
        PointSet::new(pts[0].len(), pts.iter().map(|p| p.to_vec())).unwrap()
    }

    #[test]
    fn erosion_with_a_hole() {
        let a = ps(&[&[0], &[2]]);
        let b = ps(&[&[0], &[1]]);
        assert!(a.erode(&b).is_empty());
        let a = ps(&[&[0], &[1], &[2]]);
        assert_eq!(a.erode(&b), ps(&[&[0], &[1]]));
    }

    #[test]
    fn face_and_errors() {
        let sq = ps(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(sq.face(&[0, 1]).unwrap(), ps(&[&[0, 0], &[1, 0]]));
        assert_eq!(sq.face(&[0, 0]), Err(PointSetError::ZeroDirection));
        assert!(PointSet::new(2, vec![vec![1]]).is_err());
    }

    #[test]
    fn minkowski_then_erode_recovers() {
        let a = ps(&[&[0, 0], &[1, 0], &[0, 1]]);
        let b = ps(&[&[0, 0], &[2, 0], &[1, 1]]);
        let s = a.minkowski_sum(&b);
        assert!(a.is_subset(&s.erode(&b)));
    }
}
