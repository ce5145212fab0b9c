//! Plane curves: branch expansions at smooth points, the Taylor-coefficient
//! matrix of a monomial map along a branch, and osculating polynomials.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::field::{FieldElem, PrimeField};
use crate::linalg::Matrix;
use crate::membership::{MembershipError, MembershipProblem};
use crate::pointset::{Point, PointSet};
use crate::polytope::{bernstein_number_2d, HPolytope, PolytopeError};
use crate::sparsepoly::{seeded_rng, PolyError, SparsePoly};

/// Largest modulus for which the point search scans the whole field.
pub const MAX_SCAN_PRIME: u64 = 65521;

/// Resamples allowed for a point or a random kernel element.
pub const MAX_RESAMPLES: u64 = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OsculateError {
    #[error("curves must live in the plane, got dimension {0}")]
    NotPlanar(usize),
    #[error("modulus {0} is too large to scan")]
    FieldTooLarge(u64),
    #[error("no smooth torus point found on the curve")]
    NoSmoothPointFound,
    #[error("cannot lift a branch: the point is not a smooth point with nonzero y-derivative")]
    LiftFailure,
    #[error("point is not flag-generic")]
    NotFlagGeneric,
    #[error("multiplicity {i} is out of reach (at most {max})")]
    MultiplicityUnreachable { i: usize, max: usize },
    #[error("series order {order} is below the {needed} rows requested")]
    SeriesTooShort { order: usize, needed: usize },
    #[error("the mixed area of conv A and the Newton polygon is zero")]
    ZeroMixedArea,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Membership(#[from] MembershipError),
}

pub type Result<T> = std::result::Result<T, OsculateError>;

/// Truncated power series in `z`; `coeffs[j]` is the coefficient of `z^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    field: PrimeField,
    coeffs: Vec<FieldElem>,
}

impl Series {
    pub fn new(field: PrimeField, mut coeffs: Vec<FieldElem>, order: usize) -> Self {
        coeffs.resize(order, field.zero());
        Series { field, coeffs }
    }

    pub fn constant(field: PrimeField, c: FieldElem, order: usize) -> Self {
        Self::new(field, vec![c], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Series) -> Series {
        let f = self.field;
        Series {
            field: f,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f.add(*a, *b))
                .collect(),
        }
    }

    pub fn scale(&self, s: FieldElem) -> Series {
        let f = self.field;
        Series {
            field: f,
            coeffs: self.coeffs.iter().map(|a| f.mul(*a, s)).collect(),
        }
    }

    pub fn mul(&self, other: &Series) -> Series {
        let f = self.field;
        let n = self.order();
        let mut out = vec![f.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(*a, *b));
            }
        }
        Series {
            field: f,
            coeffs: out,
        }
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inverse(&self) -> Option<Series> {
        let f = self.field;
        let c0 = self.coeffs[0];
        if c0.is_zero() {
            return None;
        }
        let inv0 = f.inv(c0);
        let n = self.order();
        let mut out = vec![f.zero(); n];
        out[0] = inv0;
        for k in 1..n {
            let mut s = f.zero();
            for j in 1..=k {
                s = f.add(s, f.mul(self.coeffs[j], out[k - j]));
            }
            out[k] = f.neg(f.mul(s, inv0));
        }
        Some(Series {
            field: f,
            coeffs: out,
        })
    }

    pub fn pow_signed(&self, e: i64) -> Option<Series> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Series::constant(self.field, self.field.one(), self.order());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Some(acc)
    }
}

/// Local parametrization `z -> (x0 + z, y(z))` of `f = 0` near a smooth point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchSeries {
    pub center: (FieldElem, FieldElem),
    pub y: Series,
}

impl BranchSeries {
    pub fn field(&self) -> PrimeField {
        self.y.field
    }

    pub fn order(&self) -> usize {
        self.y.order()
    }

    pub fn x(&self) -> Series {
        let f = self.field();
        Series::new(f, vec![self.center.0, f.one()], self.order())
    }

    /// Expansion of `x^a y^b` along the branch; `None` for a negative power
    /// of a coordinate that vanishes at the center.
    pub fn monomial(&self, exp: &[i64]) -> Option<Series> {
        Some(
            self.x()
                .pow_signed(exp[0])?
                .mul(&self.y.pow_signed(exp[1])?),
        )
    }

    /// Expansion of `g` along the branch.
    pub fn substitute(&self, g: &SparsePoly) -> Option<Series> {
        let f = self.field();
        g.terms().iter().try_fold(
            Series::constant(f, f.zero(), self.order()),
            |acc, (e, c)| Some(acc.add(&self.monomial(e)?.scale(*c))),
        )
    }
}

/// Order of vanishing along a branch, capped by the series precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Multiplicity {
    Exact(usize),
    AtLeast(usize),
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Exact(m) => write!(f, "{m}"),
            Multiplicity::AtLeast(n) => write!(f, ">={n}"),
        }
    }
}

/// Taylor coefficients of the monomials of `A` along a branch; row `j` holds
/// the `z^j` coefficients, one column per exponent in lexicographic order.
#[derive(Clone, Debug)]
pub struct CoeffMatrix {
    pub matrix: Matrix,
    pub cols: Vec<Point>,
}

impl CoeffMatrix {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Kernel of the first `i` rows, as polynomials on `A`.
    pub fn kernel_of_top(&self, i: usize) -> Vec<SparsePoly> {
        let field = self.matrix.field();
        let basis = if i == 0 {
            let id = Matrix::identity(field, self.cols.len());
            (0..id.rows()).map(|r| id.row(r).to_vec()).collect()
        } else {
            self.matrix.top_rows(i).kernel_basis()
        };
        basis.into_iter().map(|v| self.poly_from(&v)).collect()
    }

    pub fn poly_from(&self, v: &[FieldElem]) -> SparsePoly {
        let field = self.matrix.field();
        SparsePoly::from_field_terms(field, 2, self.cols.iter().cloned().zip(v.iter().copied()))
    }
}

fn check_planar(f: &SparsePoly) -> Result<()> {
    if f.dim() != 2 {
        return Err(OsculateError::NotPlanar(f.dim()));
    }
    Ok(())
}

/// A torus point on `f = 0` with `df/dy != 0`. The `x` scan starts at a
/// seeded offset and wraps around; for each `x` the `y` values are scanned in
/// increasing order.
pub fn find_smooth_point(f: &SparsePoly, seed: u64) -> Result<(FieldElem, FieldElem)> {
    check_planar(f)?;
    let field = f.field();
    let p = field.modulus();
    if p > MAX_SCAN_PRIME {
        return Err(OsculateError::FieldTooLarge(p));
    }
    if f.is_zero() {
        return Err(OsculateError::NoSmoothPointFound);
    }
    let fy = f.derivative(1);
    let lo = f.terms().keys().map(|e| e[1]).min().unwrap();
    let hi = f.terms().keys().map(|e| e[1]).max().unwrap();
    let start = seeded_rng(seed, p).gen_range(0..p - 1);
    for off in 0..p - 1 {
        let x = field.elem(1 + (start + off) % (p - 1));
        // f(x, y) * y^-lo as an ordinary polynomial in y
        let mut uni = vec![field.zero(); (hi - lo + 1) as usize];
        for (e, c) in f.terms() {
            let k = (e[1] - lo) as usize;
            uni[k] = field.add(uni[k], field.mul(*c, field.pow_signed(x, e[0])));
        }
        if uni.iter().all(|c| c.is_zero()) {
            continue;
        }
        for yv in 1..p {
            let y = field.elem(yv);
            let val = uni
                .iter()
                .rev()
                .fold(field.zero(), |acc, c| field.add(field.mul(acc, y), *c));
            if val.is_zero() && !fy.eval(&[x, y])?.is_zero() {
                return Ok((x, y));
            }
        }
    }
    Err(OsculateError::NoSmoothPointFound)
}

/// Lifts `y(z)` with `f(x0 + z, y(z)) = 0 mod z^order`, one coefficient at a time.
pub fn branch_series(
    f: &SparsePoly,
    pt: (FieldElem, FieldElem),
    order: usize,
) -> Result<BranchSeries> {
    check_planar(f)?;
    let field = f.field();
    let (_, y0) = pt;
    let at_center = BranchSeries {
        center: pt,
        y: Series::constant(field, y0, 1),
    };
    let value = at_center.substitute(f).ok_or(OsculateError::LiftFailure)?;
    let d = at_center
        .substitute(&f.derivative(1))
        .ok_or(OsculateError::LiftFailure)?;
    if order < 1 || !value.coeffs()[0].is_zero() || d.coeffs()[0].is_zero() {
        return Err(OsculateError::LiftFailure);
    }
    let dinv = field.inv(d.coeffs()[0]);
    let mut coeffs = vec![y0];
    for j in 1..order {
        let partial = BranchSeries {
            center: pt,
            y: Series::new(field, coeffs.clone(), j + 1),
        };
        let r = partial.substitute(f).expect("center checked").coeffs()[j];
        coeffs.push(field.neg(field.mul(r, dinv)));
    }
    let branch = BranchSeries {
        center: pt,
        y: Series::new(field, coeffs, order),
    };
    if branch
        .substitute(f)
        .expect("center checked")
        .valuation()
        .is_some()
    {
        return Err(OsculateError::LiftFailure);
    }
    Ok(branch)
}

/// The first `rows` Taylor coefficients of every monomial of `A` along the branch.
pub fn coeff_matrix(a: &PointSet, branch: &BranchSeries, rows: usize) -> Result<CoeffMatrix> {
    if a.dim() != 2 {
        return Err(OsculateError::NotPlanar(a.dim()));
    }
    if rows > branch.order() {
        return Err(OsculateError::SeriesTooShort {
            order: branch.order(),
            needed: rows,
        });
    }
    let field = branch.field();
    let cols = a.to_vec();
    let series = cols
        .iter()
        .map(|e| branch.monomial(e))
        .collect::<Option<Vec<Series>>>()
        .ok_or(OsculateError::LiftFailure)?;
    let data = (0..rows)
        .map(|j| series.iter().map(|s| s.coeffs()[j]).collect())
        .collect();
    Ok(CoeffMatrix {
        matrix: Matrix::from_rows(field, data, cols.len()),
        cols,
    })
}

/// Order of vanishing of `g` along the branch. `g` must not have negative
/// powers of a coordinate that vanishes at the center.
pub fn multiplicity(g: &SparsePoly, branch: &BranchSeries) -> Multiplicity {
    let s = branch
        .substitute(g)
        .expect("g is defined at the branch center");
    match s.valuation() {
        Some(m) => Multiplicity::Exact(m),
        None => Multiplicity::AtLeast(branch.order()),
    }
}

/// Default series order `|A| + 5`.
pub fn default_order(a: &PointSet) -> usize {
    a.len() + 5
}

/// Requires a positive mixed area of `conv A` and the Newton polygon of `f`.
pub fn check_mixed_area(a: &PointSet, f: &SparsePoly) -> Result<i64> {
    check_planar(f)?;
    let mv = bernstein_number_2d(
        &HPolytope::from_points(a)?,
        &HPolytope::from_points(&f.support())?,
    )?;
    if mv <= 0 {
        return Err(OsculateError::ZeroMixedArea);
    }
    Ok(mv)
}

/// Whether the first `rank` rows of the matrix are independent.
pub fn is_flag_generic(m: &CoeffMatrix) -> bool {
    let r = m.rank();
    m.matrix.top_rows(r).rank() == r
}

/// A random element of `C^A` meeting the branch with multiplicity exactly `i`.
pub fn osculating_poly(
    a: &PointSet,
    f: &SparsePoly,
    pt: (FieldElem, FieldElem),
    i: usize,
    seed: u64,
) -> Result<SparsePoly> {
    let branch = branch_series(f, pt, default_order(a))?;
    let m = coeff_matrix(a, &branch, branch.order())?;
    osculating_on_branch(&m, &branch, i, seed)
}

fn osculating_on_branch(
    m: &CoeffMatrix,
    branch: &BranchSeries,
    i: usize,
    seed: u64,
) -> Result<SparsePoly> {
    let r = m.rank();
    if i + 1 > r {
        return Err(OsculateError::MultiplicityUnreachable {
            i,
            max: r.saturating_sub(1),
        });
    }
    if !is_flag_generic(m) {
        return Err(OsculateError::NotFlagGeneric);
    }
    let field = branch.field();
    let kernel = m.kernel_of_top(i);
    let mut rng = seeded_rng(seed ^ i as u64, field.modulus());
    for _ in 0..MAX_RESAMPLES {
        let g = kernel.iter().fold(SparsePoly::zero(field, 2), |acc, v| {
            let c = field.elem(rng.gen_range(1..field.modulus()));
            acc.add(&v.scale(c)).expect("same field and dimension")
        });
        if multiplicity(&g, branch) == Multiplicity::Exact(i) {
            return Ok(g);
        }
    }
    Err(OsculateError::NotFlagGeneric)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagEntry {
    pub i: usize,
    pub achieved: Multiplicity,
    pub kernel_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OsculationReport {
    pub point: (FieldElem, FieldElem),
    pub order: usize,
    pub rank: usize,
    /// Dimension of the projective span of the curve under the monomial map.
    pub hull_dim: usize,
    /// `dim V_A` from the membership solver with one generator.
    pub dim_v: usize,
    pub mixed_area: i64,
    pub flags: Vec<FlagEntry>,
    pub point_attempts: u64,
}

impl OsculationReport {
    /// `rank = |A| - dim V`.
    pub fn rank_matches(&self, a_len: usize) -> bool {
        self.rank + self.dim_v == a_len
    }

    /// Every flag entry reached its target and the kernels drop by one per row.
    pub fn flags_exact(&self, a_len: usize) -> bool {
        self.flags
            .iter()
            .all(|e| e.achieved == Multiplicity::Exact(e.i) && e.kernel_dim == a_len - e.i)
    }
}

/// `dim V_A` for the single generator `f`, with multipliers on `A ⊖ supp f`.
pub fn membership_dim_single(a: &PointSet, f: &SparsePoly) -> Result<usize> {
    let c = a.erode(&f.support());
    let problem = MembershipProblem::new(a.clone(), vec![c], vec![f.clone()])?;
    Ok(problem.solve().dim_v)
}

/// Finds a flag-generic point (resampling up to [`MAX_RESAMPLES`] times) and
/// builds osculating polynomials of every multiplicity below the rank.
pub fn osculation_report(a: &PointSet, f: &SparsePoly, seed: u64) -> Result<OsculationReport> {
    let mixed_area = check_mixed_area(a, f)?;
    let dim_v = membership_dim_single(a, f)?;
    let order = default_order(a);
    for attempt in 0..MAX_RESAMPLES {
        let point_seed = seed.wrapping_add(attempt.wrapping_mul(0xD1B5_4A32_D192_ED03));
        let pt = find_smooth_point(f, point_seed)?;
        let branch = branch_series(f, pt, order)?;
        let m = coeff_matrix(a, &branch, order)?;
        if !is_flag_generic(&m) {
            continue;
        }
        let rank = m.rank();
        let mut flags = Vec::new();
        let mut ok = true;
        for i in 0..rank {
            match osculating_on_branch(&m, &branch, i, seed) {
                Ok(g) => flags.push(FlagEntry {
                    i,
                    achieved: multiplicity(&g, &branch),
                    kernel_dim: m.kernel_of_top(i).len(),
                }),
                Err(OsculateError::NotFlagGeneric) => {
                    ok = false;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if !ok {
            continue;
        }
        return Ok(OsculationReport {
            point: pt,
            order,
            rank,
            hull_dim: rank.saturating_sub(1),
            dim_v,
            mixed_area,
            flags,
            point_attempts: attempt + 1,
        });
    }
    Err(OsculateError::NotFlagGeneric)
}
