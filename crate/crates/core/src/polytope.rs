//! Rational convex polytopes in H-representation.
//!
//! A polytope is the solution set of inequalities `x . a_i >= b_i` with
//! primitive integer normals `a_i` and rational offsets `b_i`. Vertices are
//! computed eagerly (every `n`-subset of facets is tried), which is exact and
//! fast for the small dimensions and facet counts used here.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::pointset::{dot, Point, PointSet};
use crate::rational::{
    ceil_i64, common_denominator, dot_int_rat, floor_i64, int, is_integer, rational_rank,
    solve_square, to_rational_point, Rational,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("dilation factor must be positive, got {0}")]
    NonPositiveFactor(String),
    #[error("polytope is unbounded")]
    Unbounded,
    #[error("polytope is empty")]
    Empty,
    #[error("direction vector is zero")]
    ZeroDirection,
    #[error("facet normal has wrong length or is zero")]
    BadNormal,
    #[error("operation needs dimension {expected}, got {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("origin is not contained in the polytope")]
    OriginOutside,
    #[error("origin is not in the interior of the polytope")]
    OriginNotInterior,
    #[error("point set cannot be enclosed by any dilate (a facet through the origin is violated)")]
    NotEnclosable,
    #[error("facet index {0} out of range")]
    InvalidFacet(usize),
    #[error("convex hull not supported for this input (dimension {0} or degenerate point set)")]
    UnsupportedHull(usize),
    #[error("input polytopes are not lattice polytopes")]
    NonLattice,
    #[error("integer overflow while converting coordinates")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, PolytopeError>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: Rational,
}

impl Facet {
    pub fn new(normal: Vec<i64>, offset: Rational) -> Self {
        Facet { normal, offset }
    }
}

#[derive(Clone, Debug)]
pub struct HPolytope {
    dim: usize,
    facets: Vec<Facet>,
    vertices: Vec<Vec<Rational>>,
    affine_dim: usize,
}

/// Geometric equality: same ambient dimension and same vertex set.
impl PartialEq for HPolytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl Eq for HPolytope {}

fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 && idx[0] == n - k {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Basis of the null space of a rational matrix (rows of length `n`).
fn rational_kernel(rows: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for j in 0..n {
            m[r][j] = &m[r][j] / &pivot;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in 0..n {
                    let delta = &factor * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); n];
            v[free] = int(1);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][free].clone();
            }
            v
        })
        .collect()
}

fn affine_dimension(points: &[Vec<Rational>]) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let diffs: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    rational_rank(&diffs)
}

impl HPolytope {
    /// Builds a polytope from raw inequalities `x . normal >= offset`.
    ///
    /// Normals are made primitive (offsets rescaled) and duplicate normals
    /// are merged keeping the larger offset. Facet order is otherwise kept,
    /// so facet indices stay meaningful to callers.
    pub fn new(dim: usize, facets: Vec<Facet>) -> Result<Self> {
        let mut merged: Vec<Facet> = Vec::with_capacity(facets.len());
        for Facet { normal, offset } in facets {
            if normal.len() != dim || normal.iter().all(|&x| x == 0) {
                return Err(PolytopeError::BadNormal);
            }
            let g = gcd_all(&normal);
            let normal: Vec<i64> = normal.iter().map(|&x| x / g).collect();
            let offset = offset / BigInt::from(g);
            match merged.iter_mut().find(|f| f.normal == normal) {
                Some(f) => {
                    if offset > f.offset {
                        f.offset = offset;
                    }
                }
                None => merged.push(Facet { normal, offset }),
            }
        }
        check_bounded(dim, &merged)?;
        let vertices = enumerate_vertices(dim, &merged);
        if vertices.is_empty() {
            return Err(PolytopeError::Empty);
        }
        let affine_dim = affine_dimension(&vertices);
        Ok(HPolytope {
            dim,
            facets: merged,
            vertices,
            affine_dim,
        })
    }

    /// Axis-parallel box `[lo, hi]^dim`.
    pub fn cube(dim: usize, lo: i64, hi: i64) -> Self {
        let mut facets = Vec::new();
        for j in 0..dim {
            let mut e = vec![0; dim];
            e[j] = 1;
            facets.push(Facet::new(e.clone(), int(lo)));
            e[j] = -1;
            facets.push(Facet::new(e, int(-hi)));
        }
        HPolytope::new(dim, facets).expect("box is a valid polytope")
    }

    /// `scale` times the standard simplex `{x >= 0, sum x <= 1}`.
    pub fn simplex(dim: usize, scale: i64) -> Self {
        let mut facets = Vec::new();
        for j in 0..dim {
            let mut e = vec![0; dim];
            e[j] = 1;
            facets.push(Facet::new(e, int(0)));
        }
        facets.push(Facet::new(vec![-1; dim], int(-scale)));
        HPolytope::new(dim, facets).expect("simplex is a valid polytope")
    }

    /// Convex hull of lattice points.
    pub fn from_points(points: &PointSet) -> Result<Self> {
        let pts: Vec<Vec<Rational>> = points.iter().map(|p| to_rational_point(p)).collect();
        convex_hull(points.dim(), &pts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_lower_dimensional(&self) -> bool {
        self.affine_dim < self.dim
    }

    pub fn is_segment(&self) -> bool {
        self.affine_dim == 1
    }

    pub fn has_integer_vertices(&self) -> bool {
        self.vertices.iter().all(|v| v.iter().all(is_integer))
    }

    /// Integer vertices, when all vertices are integral.
    pub fn integer_vertices(&self) -> Option<Vec<Point>> {
        self.vertices
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| {
                        if is_integer(x) {
                            x.to_integer().to_i64()
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.facets
            .iter()
            .all(|f| dot_int_rat(&f.normal, x) >= f.offset)
    }

    pub fn contains_lattice(&self, x: &[i64]) -> bool {
        self.contains(&to_rational_point(x))
    }

    pub fn contains_in_interior(&self, x: &[Rational]) -> bool {
        !self.is_lower_dimensional()
            && self
                .facets
                .iter()
                .all(|f| dot_int_rat(&f.normal, x) > f.offset)
    }

    pub fn origin_in_interior(&self) -> bool {
        self.contains_in_interior(&vec![Rational::zero(); self.dim])
    }

    pub fn contains_origin(&self) -> bool {
        self.contains(&vec![Rational::zero(); self.dim])
    }

    /// `min over x in X of a . x`.
    pub fn support(&self, a: &[i64]) -> Rational {
        self.vertices
            .iter()
            .map(|v| dot_int_rat(a, v))
            .min()
            .expect("polytopes have vertices")
    }

    /// Number of inequalities whose face has dimension `dim - 1`.
    pub fn facet_count(&self) -> usize {
        (0..self.facets.len())
            .filter(|&i| self.is_essential(i))
            .count()
    }

    /// Whether inequality `i` defines a genuine facet.
    pub fn is_essential(&self, i: usize) -> bool {
        if self.is_lower_dimensional() {
            return false;
        }
        let f = &self.facets[i];
        let on: Vec<Vec<Rational>> = self
            .vertices
            .iter()
            .filter(|v| dot_int_rat(&f.normal, v) == f.offset)
            .cloned()
            .collect();
        !on.is_empty() && affine_dimension(&on) == self.dim - 1
    }

    /// Every stored inequality is a genuine facet.
    pub fn is_irredundant(&self) -> bool {
        (0..self.facets.len()).all(|i| self.is_essential(i))
    }

    /// Canonical H-representation: tightened offsets, essential facets only
    /// (all inequalities for lower-dimensional polytopes), sorted by normal.
    pub fn normalized(&self) -> HPolytope {
        let mut facets: Vec<Facet> = (0..self.facets.len())
            .filter(|&i| self.is_lower_dimensional() || self.is_essential(i))
            .map(|i| {
                let n = self.facets[i].normal.clone();
                let off = self.support(&n);
                Facet::new(n, off)
            })
            .collect();
        facets.sort();
        HPolytope {
            dim: self.dim,
            facets,
            vertices: self.vertices.clone(),
            affine_dim: self.affine_dim,
        }
    }

    fn with_offsets(&self, offsets: Vec<Rational>) -> Result<HPolytope> {
        let facets = self
            .facets
            .iter()
            .zip(offsets)
            .map(|(f, b)| Facet::new(f.normal.clone(), b))
            .collect();
        HPolytope::new(self.dim, facets)
    }

    /// Homothety about the origin: `{x : x . a_i >= t b_i}`.
    pub fn dilate(&self, t: &Rational) -> Result<HPolytope> {
        if !t.is_positive() {
            return Err(PolytopeError::NonPositiveFactor(t.to_string()));
        }
        if !self.contains_origin() {
            return Err(PolytopeError::OriginOutside);
        }
        self.with_offsets(self.facets.iter().map(|f| &f.offset * t).collect())
    }

    /// Homothety with factor `t` about `center`.
    pub fn dilate_about(&self, center: &[Rational], t: &Rational) -> Result<HPolytope> {
        if !t.is_positive() {
            return Err(PolytopeError::NonPositiveFactor(t.to_string()));
        }
        self.with_offsets(
            self.facets
                .iter()
                .map(|f| {
                    let ac = dot_int_rat(&f.normal, center);
                    &ac + t * (&f.offset - &ac)
                })
                .collect(),
        )
    }

    pub fn translate(&self, v: &[Rational]) -> HPolytope {
        let facets: Vec<Facet> = self
            .facets
            .iter()
            .map(|f| Facet::new(f.normal.clone(), &f.offset + dot_int_rat(&f.normal, v)))
            .collect();
        let mut vertices: Vec<Vec<Rational>> = self
            .vertices
            .iter()
            .map(|p| p.iter().zip(v).map(|(a, b)| a + b).collect())
            .collect();
        vertices.sort();
        HPolytope {
            dim: self.dim,
            facets,
            vertices,
            affine_dim: self.affine_dim,
        }
    }

    /// Replaces the offset of facet `m`.
    pub fn with_facet_offset(&self, m: usize, offset: Rational) -> Result<HPolytope> {
        if m >= self.facets.len() {
            return Err(PolytopeError::InvalidFacet(m));
        }
        let mut offsets: Vec<Rational> = self.facets.iter().map(|f| f.offset.clone()).collect();
        offsets[m] = offset;
        self.with_offsets(offsets)
    }

    /// `{x : x + other ⊆ self}`; `None` when empty.
    pub fn erode(&self, other: &HPolytope) -> Result<Option<HPolytope>> {
        if self.dim != other.dim {
            return Err(PolytopeError::DimensionMismatch(self.dim, other.dim));
        }
        let offsets = self
            .facets
            .iter()
            .map(|f| &f.offset - other.support(&f.normal))
            .collect();
        match self.with_offsets(offsets) {
            Ok(p) => Ok(Some(p)),
            Err(PolytopeError::Empty) => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// `j`-fold erosion; emptiness propagates.
    pub fn erode_iter(&self, other: &HPolytope, j: usize) -> Result<Option<HPolytope>> {
        let mut cur = self.clone();
        for _ in 0..j {
            match cur.erode(other)? {
                Some(p) => cur = p,
                None => return Ok(None),
            }
        }
        Ok(Some(cur))
    }

    /// Convex hull of pairwise vertex sums.
    pub fn minkowski_sum(&self, other: &HPolytope) -> Result<HPolytope> {
        if self.dim != other.dim {
            return Err(PolytopeError::DimensionMismatch(self.dim, other.dim));
        }
        let mut sums = BTreeSet::new();
        for a in &self.vertices {
            for b in &other.vertices {
                sums.insert(
                    a.iter()
                        .zip(b)
                        .map(|(x, y)| x + y)
                        .collect::<Vec<Rational>>(),
                );
            }
        }
        convex_hull(self.dim, &sums.into_iter().collect::<Vec<_>>())
    }

    /// Whether `self ⊆ other` (vertex containment).
    pub fn is_subset_of(&self, other: &HPolytope) -> bool {
        self.vertices.iter().all(|v| other.contains(v))
    }

    /// Integer bounding box `[lo, hi]` of the polytope.
    pub fn bounding_box(&self) -> Result<(Point, Point)> {
        let mut lo = Vec::with_capacity(self.dim);
        let mut hi = Vec::with_capacity(self.dim);
        for j in 0..self.dim {
            let min = self.vertices.iter().map(|v| &v[j]).min().unwrap();
            let max = self.vertices.iter().map(|v| &v[j]).max().unwrap();
            lo.push(ceil_i64(min).map_err(|_| PolytopeError::Overflow)?);
            hi.push(floor_i64(max).map_err(|_| PolytopeError::Overflow)?);
        }
        Ok((lo, hi))
    }

    /// Exact enumeration of `X ∩ Z^n`.
    pub fn lattice_points(&self) -> PointSet {
        let mut out = PointSet::empty(self.dim);
        let Ok((lo, hi)) = self.bounding_box() else {
            return out;
        };
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return out;
        }
        let bounds: Vec<(Vec<i64>, i64)> = self
            .facets
            .iter()
            .map(|f| {
                (
                    f.normal.clone(),
                    ceil_i64(&f.offset).expect("offset fits in i64"),
                )
            })
            .collect();
        let mut x = lo.clone();
        loop {
            if bounds.iter().all(|(a, b)| dot(a, &x) >= *b) {
                out.insert(x.clone());
            }
            let mut j = 0;
            loop {
                if j == self.dim {
                    return out;
                }
                if x[j] < hi[j] {
                    x[j] += 1;
                    break;
                }
                x[j] = lo[j];
                j += 1;
            }
        }
    }

    /// Lattice points strictly inside the polytope.
    pub fn interior_lattice_points(&self) -> PointSet {
        let all = self.lattice_points();
        let mut out = PointSet::empty(self.dim);
        for p in all.iter() {
            if self.contains_in_interior(&to_rational_point(p)) {
                out.insert(p.clone());
            }
        }
        out
    }

    /// Lattice points of the face minimizing `v . x`.
    pub fn face(&self, v: &[i64]) -> Result<PointSet> {
        if v.len() != self.dim {
            return Err(PolytopeError::DimensionMismatch(self.dim, v.len()));
        }
        if v.iter().all(|&x| x == 0) {
            return Err(PolytopeError::ZeroDirection);
        }
        let min = self.support(v);
        let mut out = PointSet::empty(self.dim);
        for p in self.lattice_points().iter() {
            if dot_int_rat(v, &to_rational_point(p)) == min {
                out.insert(p.clone());
            }
        }
        Ok(out)
    }

    /// Exact area of a 2-dimensional polytope (zero when degenerate).
    pub fn area_2d(&self) -> Result<Rational> {
        if self.dim != 2 {
            return Err(PolytopeError::WrongDimension {
                expected: 2,
                found: self.dim,
            });
        }
        if self.affine_dim < 2 {
            return Ok(Rational::zero());
        }
        let ring = order_convex_polygon(&self.vertices);
        let mut twice = Rational::zero();
        for i in 0..ring.len() {
            let a = &ring[i];
            let b = &ring[(i + 1) % ring.len()];
            twice += &a[0] * &b[1] - &a[1] * &b[0];
        }
        Ok(twice.abs() / BigInt::from(2))
    }
}

/// Orders the vertices of a convex polygon counter-clockwise around the first one.
fn order_convex_polygon(vertices: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let v0 = vertices[0].clone();
    let mut rest: Vec<Vec<Rational>> = vertices[1..].to_vec();
    rest.sort_by(|a, b| {
        let ax = &a[0] - &v0[0];
        let ay = &a[1] - &v0[1];
        let bx = &b[0] - &v0[0];
        let by = &b[1] - &v0[1];
        let cross = &ax * &by - &ay * &bx;
        cross.cmp(&Rational::zero()).reverse()
    });
    let mut ring = vec![v0];
    ring.extend(rest);
    ring
}

fn check_bounded(dim: usize, facets: &[Facet]) -> Result<()> {
    let normals: Vec<Vec<Rational>> = facets
        .iter()
        .map(|f| to_rational_point(&f.normal))
        .collect();
    if rational_rank(&normals) < dim {
        return Err(PolytopeError::Unbounded);
    }
    // A nonzero pointed recession cone has an extreme ray cut out by n - 1 normals.
    for subset in subsets(facets.len(), dim - 1) {
        let rows: Vec<Vec<Rational>> = subset.iter().map(|&i| normals[i].clone()).collect();
        let kernel = rational_kernel(&rows, dim);
        if kernel.len() != 1 {
            continue;
        }
        let d = &kernel[0];
        let signs: Vec<Rational> = facets.iter().map(|f| dot_int_rat(&f.normal, d)).collect();
        let zero = Rational::zero();
        if signs.iter().all(|s| *s >= zero) || signs.iter().all(|s| *s <= zero) {
            return Err(PolytopeError::Unbounded);
        }
    }
    Ok(())
}

fn enumerate_vertices(dim: usize, facets: &[Facet]) -> Vec<Vec<Rational>> {
    let mut out = BTreeSet::new();
    for subset in subsets(facets.len(), dim) {
        let a: Vec<Vec<Rational>> = subset
            .iter()
            .map(|&i| to_rational_point(&facets[i].normal))
            .collect();
        let b: Vec<Rational> = subset.iter().map(|&i| facets[i].offset.clone()).collect();
        let Some(x) = solve_square(a, b) else {
            continue;
        };
        if facets
            .iter()
            .all(|f| dot_int_rat(&f.normal, &x) >= f.offset)
        {
            out.insert(x);
        }
    }
    out.into_iter().collect()
}

fn primitive_big(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v;
    }
    v.into_iter().map(|x| x / &g).collect()
}

fn to_i64_vec(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| x.to_i64().ok_or(PolytopeError::Overflow))
        .collect()
}

/// Convex hull of rational points for `dim <= 3`, returned in H-representation.
///
/// Segments and points are supported in dimensions 1 and 2; lower-dimensional
/// point sets in dimension 3 are rejected.
pub fn convex_hull(dim: usize, points: &[Vec<Rational>]) -> Result<HPolytope> {
    if points.is_empty() {
        return Err(PolytopeError::Empty);
    }
    let den = common_denominator(points.iter().flatten());
    let scaled: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| p.iter().map(|x| (x * &den).to_integer()).collect())
        .collect();
    let den_r = Rational::from_integer(den.clone());
    let mut facets: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
    let add_support =
        |normal: Vec<BigInt>, facets: &mut BTreeMap<Vec<i64>, Rational>| -> Result<()> {
            let normal = primitive_big(normal);
            let min = scaled
                .iter()
                .map(|p| p.iter().zip(&normal).map(|(a, b)| a * b).sum::<BigInt>())
                .min()
                .unwrap();
            let key = to_i64_vec(&normal)?;
            facets.insert(key, Rational::from_integer(min) / &den_r);
            Ok(())
        };
    let affine = affine_dimension(points);
    match dim {
        1 => {
            add_support(vec![BigInt::from(1)], &mut facets)?;
            add_support(vec![BigInt::from(-1)], &mut facets)?;
        }
        2 | 3 if affine < dim => {
            if dim == 3 && affine > 0 {
                return Err(PolytopeError::UnsupportedHull(dim));
            }
            if affine == 0 {
                for j in 0..dim {
                    let mut e = vec![BigInt::zero(); dim];
                    e[j] = BigInt::from(1);
                    add_support(e.clone(), &mut facets)?;
                    e[j] = BigInt::from(-1);
                    add_support(e, &mut facets)?;
                }
            } else {
                // collinear in the plane
                let p = &scaled[0];
                let q = scaled.iter().find(|q| *q != p).unwrap();
                let d = vec![&q[0] - &p[0], &q[1] - &p[1]];
                let n = vec![-d[1].clone(), d[0].clone()];
                add_support(n.clone(), &mut facets)?;
                add_support(n.into_iter().map(|x| -x).collect(), &mut facets)?;
                add_support(d.clone(), &mut facets)?;
                add_support(d.into_iter().map(|x| -x).collect(), &mut facets)?;
            }
        }
        2 => {
            for i in 0..scaled.len() {
                for j in 0..scaled.len() {
                    if i == j {
                        continue;
                    }
                    let (p, q) = (&scaled[i], &scaled[j]);
                    let n = vec![-(&q[1] - &p[1]), &q[0] - &p[0]];
                    if n.iter().all(|x| x.is_zero()) {
                        continue;
                    }
                    let pn: BigInt = p.iter().zip(&n).map(|(a, b)| a * b).sum();
                    if scaled
                        .iter()
                        .all(|r| r.iter().zip(&n).map(|(a, b)| a * b).sum::<BigInt>() >= pn)
                    {
                        add_support(n, &mut facets)?;
                    }
                }
            }
        }
        3 => {
            let m = scaled.len();
            for i in 0..m {
                for j in i + 1..m {
                    for k in j + 1..m {
                        let u: Vec<BigInt> =
                            (0..3).map(|c| &scaled[j][c] - &scaled[i][c]).collect();
                        let w: Vec<BigInt> =
                            (0..3).map(|c| &scaled[k][c] - &scaled[i][c]).collect();
                        let n = vec![
                            &u[1] * &w[2] - &u[2] * &w[1],
                            &u[2] * &w[0] - &u[0] * &w[2],
                            &u[0] * &w[1] - &u[1] * &w[0],
                        ];
                        if n.iter().all(|x| x.is_zero()) {
                            continue;
                        }
                        let pn: BigInt = scaled[i].iter().zip(&n).map(|(a, b)| a * b).sum();
                        let mut above = true;
                        let mut below = true;
                        for r in &scaled {
                            let v: BigInt = r.iter().zip(&n).map(|(a, b)| a * b).sum();
                            if v < pn {
                                above = false;
                            }
                            if v > pn {
                                below = false;
                            }
                            if !above && !below {
                                break;
                            }
                        }
                        if above {
                            add_support(n.clone(), &mut facets)?;
                        }
                        if below {
                            add_support(n.into_iter().map(|x| -x).collect(), &mut facets)?;
                        }
                    }
                }
            }
        }
        _ => return Err(PolytopeError::UnsupportedHull(dim)),
    }
    let facets = facets.into_iter().map(|(n, b)| Facet::new(n, b)).collect();
    HPolytope::new(dim, facets)
}

/// Generic root count `area(A+B) - area(A) - area(B)` of two planar polytopes.
pub fn bernstein_number_2d(a: &HPolytope, b: &HPolytope) -> Result<i64> {
    for p in [a, b] {
        if p.dim() != 2 {
            return Err(PolytopeError::WrongDimension {
                expected: 2,
                found: p.dim(),
            });
        }
    }
    let mixed = a.minkowski_sum(b)?.area_2d()? - a.area_2d()? - b.area_2d()?;
    if !is_integer(&mixed) {
        return Err(PolytopeError::NonLattice);
    }
    mixed.to_integer().to_i64().ok_or(PolytopeError::Overflow)
}

/// Least `s >= 0` with every point in `s B`, dilating about the origin.
///
/// The origin must lie in `B` (possibly on its boundary). Facets through the
/// origin do not scale; a point violating one of them can never be enclosed.
pub fn min_enclosing_factor<'a, I>(points: I, b: &HPolytope) -> Result<Rational>
where
    I: IntoIterator<Item = &'a Vec<Rational>>,
{
    if !b.contains_origin() {
        return Err(PolytopeError::OriginOutside);
    }
    let mut s = Rational::zero();
    for p in points {
        if p.len() != b.dim() {
            return Err(PolytopeError::DimensionMismatch(b.dim(), p.len()));
        }
        for f in b.facets() {
            let ap = dot_int_rat(&f.normal, p);
            if f.offset.is_zero() {
                if ap.is_negative() {
                    return Err(PolytopeError::NotEnclosable);
                }
            } else {
                let need = &ap / &f.offset;
                if need > s {
                    s = need;
                }
            }
        }
    }
    Ok(s)
}

/// [`min_enclosing_factor`] for a lattice point set.
pub fn min_enclosing_factor_points(a: &PointSet, b: &HPolytope) -> Result<Rational> {
    let pts: Vec<Vec<Rational>> = a.iter().map(|p| to_rational_point(p)).collect();
    min_enclosing_factor(pts.iter(), b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn square() -> HPolytope {
        HPolytope::cube(2, -1, 1)
    }

    #[test]
    fn subsets_enumeration() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(subsets(3, 3), vec![vec![0, 1, 2]]);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn dilate_examples() {
        assert_eq!(square().dilate(&int(2)).unwrap(), HPolytope::cube(2, -2, 2));
        assert_eq!(square().dilate(&int(1)).unwrap(), square());
        assert!(matches!(
            square().dilate(&int(0)),
            Err(PolytopeError::NonPositiveFactor(_))
        ));
        let centered = HPolytope::simplex(2, 1).translate(&[rat(-1, 3), rat(-1, 3)]);
        let scaled = centered.dilate(&int(3)).unwrap();
        let expected: Vec<Vec<Rational>> = centered
            .vertices()
            .iter()
            .map(|v| v.iter().map(|x| x * BigInt::from(3)).collect())
            .collect();
        assert_eq!(scaled.vertices(), expected.as_slice());
    }

    #[test]
    fn erode_examples() {
        let big = HPolytope::cube(2, 0, 2);
        let unit = HPolytope::cube(2, 0, 1);
        assert_eq!(big.erode(&unit).unwrap().unwrap(), unit);
        let e = HPolytope::simplex(2, 1);
        let e3 = HPolytope::simplex(2, 3);
        assert_eq!(e3.erode(&e).unwrap().unwrap(), HPolytope::simplex(2, 2));
        assert!(e.erode(&HPolytope::simplex(2, 2)).unwrap().is_none());
        assert!(HPolytope::simplex(3, 1).erode(&e).is_err());
    }

    #[test]
    fn erode_iter_examples() {
        let e = HPolytope::simplex(2, 1);
        assert_eq!(
            HPolytope::simplex(2, 3).erode_iter(&e, 2).unwrap().unwrap(),
            e
        );
        let point = HPolytope::simplex(2, 2).erode_iter(&e, 2).unwrap().unwrap();
        assert!(point.is_lower_dimensional());
        assert_eq!(point.vertices(), &[vec![int(0), int(0)]]);
        assert!(HPolytope::simplex(2, 2)
            .erode_iter(&e, 3)
            .unwrap()
            .is_none());
    }

    #[test]
    fn minkowski_examples() {
        let seg = HPolytope::cube(1, 0, 1);
        assert_eq!(seg.minkowski_sum(&seg).unwrap(), HPolytope::cube(1, 0, 2));
        let e = HPolytope::simplex(2, 1);
        assert_eq!(e.minkowski_sum(&e).unwrap(), HPolytope::simplex(2, 2));
        let x = HPolytope::new(
            2,
            vec![
                Facet::new(vec![1, 0], int(0)),
                Facet::new(vec![0, 1], int(0)),
                Facet::new(vec![-1, -2], int(-5)),
            ],
        )
        .unwrap();
        let b = HPolytope::cube(2, 0, 1);
        let inner = x.erode(&b).unwrap().unwrap();
        assert!(b.minkowski_sum(&inner).unwrap().is_subset_of(&x));
    }

    #[test]
    fn vertices_examples() {
        assert_eq!(square().vertices().len(), 4);
        let e = HPolytope::simplex(2, 1);
        assert_eq!(
            e.vertices(),
            &[
                vec![int(0), int(0)],
                vec![int(0), int(1)],
                vec![int(1), int(0)]
            ]
        );
        let pyramid = square_pyramid();
        assert_eq!(pyramid.vertices().len(), 5);
        assert!(pyramid.is_irredundant());
    }

    pub(crate) fn square_pyramid() -> HPolytope {
        let pts = PointSet::new(
            3,
            vec![
                vec![-1, -1, -1],
                vec![1, -1, -1],
                vec![-1, 1, -1],
                vec![1, 1, -1],
                vec![0, 0, 1],
            ],
        )
        .unwrap();
        HPolytope::from_points(&pts).unwrap()
    }

    #[test]
    fn lattice_point_examples() {
        assert_eq!(HPolytope::simplex(2, 2).lattice_points().len(), 6);
        assert_eq!(square().lattice_points().len(), 9);
        assert_eq!(square_pyramid().lattice_points().len(), 11);
    }

    #[test]
    fn face_examples() {
        let unit = HPolytope::cube(2, 0, 1);
        assert_eq!(
            unit.face(&[0, 1]).unwrap(),
            PointSet::new(2, vec![vec![0, 0], vec![1, 0]]).unwrap()
        );
        assert_eq!(
            HPolytope::simplex(2, 1).face(&[1, 1]).unwrap(),
            PointSet::origin(2)
        );
        assert_eq!(unit.face(&[0, 0]), Err(PolytopeError::ZeroDirection));
    }

    #[test]
    fn bernstein_examples() {
        let e = HPolytope::simplex(2, 1);
        let sq = HPolytope::cube(2, 0, 1);
        assert_eq!(bernstein_number_2d(&e, &e).unwrap(), 1);
        assert_eq!(bernstein_number_2d(&sq, &sq).unwrap(), 2);
        assert_eq!(
            bernstein_number_2d(&HPolytope::simplex(2, 2), &HPolytope::simplex(2, 3)).unwrap(),
            6
        );
        assert!(bernstein_number_2d(&HPolytope::cube(1, 0, 1), &e).is_err());
    }

    #[test]
    fn enclosing_factor_examples() {
        let e = HPolytope::simplex(2, 1);
        let a = HPolytope::simplex(2, 2).lattice_points();
        assert_eq!(min_enclosing_factor_points(&a, &e).unwrap(), int(2));
        assert_eq!(
            min_enclosing_factor_points(&PointSet::origin(2), &e).unwrap(),
            int(0)
        );
        let mut a = HPolytope::simplex(2, 3).lattice_points();
        a.insert(vec![3, 3]);
        assert_eq!(min_enclosing_factor_points(&a, &e).unwrap(), int(6));
        let mut bad = PointSet::origin(2);
        bad.insert(vec![-1, 0]);
        assert_eq!(
            min_enclosing_factor_points(&bad, &e),
            Err(PolytopeError::NotEnclosable)
        );
        let shifted = e.translate(&[int(1), int(1)]);
        assert_eq!(
            min_enclosing_factor_points(&bad, &shifted),
            Err(PolytopeError::OriginOutside)
        );
    }

    #[test]
    fn unbounded_and_empty_inputs() {
        let half = HPolytope::new(
            2,
            vec![
                Facet::new(vec![1, 0], int(0)),
                Facet::new(vec![0, 1], int(0)),
            ],
        );
        assert_eq!(half.unwrap_err(), PolytopeError::Unbounded);
        let strip = HPolytope::new(
            2,
            vec![
                Facet::new(vec![1, 0], int(0)),
                Facet::new(vec![-1, 0], int(-1)),
                Facet::new(vec![1, 1], int(0)),
            ],
        );
        assert_eq!(strip.unwrap_err(), PolytopeError::Unbounded);
        let empty = HPolytope::new(
            1,
            vec![Facet::new(vec![1], int(2)), Facet::new(vec![-1], int(-1))],
        );
        assert_eq!(empty.unwrap_err(), PolytopeError::Empty);
    }

    #[test]
    fn normals_are_made_primitive_and_merged() {
        let p = HPolytope::new(
            1,
            vec![
                Facet::new(vec![2], int(-2)),
                Facet::new(vec![1], int(0)),
                Facet::new(vec![-3], int(-6)),
            ],
        )
        .unwrap();
        assert_eq!(p.facets().len(), 2);
        assert_eq!(p.facets()[0], Facet::new(vec![1], int(0)));
        assert_eq!(p.facets()[1], Facet::new(vec![-1], int(-2)));
    }

    #[test]
    fn hull_roundtrip_preserves_support() {
        let p = square_pyramid();
        let rebuilt = convex_hull(3, p.vertices()).unwrap();
        for f in p.facets() {
            assert_eq!(rebuilt.support(&f.normal), p.support(&f.normal));
        }
        assert_eq!(rebuilt, p);
    }
}
