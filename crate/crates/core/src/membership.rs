//! The membership solver.
//!
//! For generators `f_1..f_k` and multiplier supports `C_1..C_k`, the map
//! `phi(c_1..c_k) = sum c_i f_i` is linear in the multiplier coefficients.
//! `W` is the subspace of tuples whose image is supported in `A`; it is cut
//! out by the constraint matrix `Omega` (one row per product monomial outside
//! `A`). The membership space is `V = phi(W)` and `dim V = dim W - dim ker phi`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::chain::NormalChain;
use crate::field::{FieldElem, PrimeField, DEFAULT_PRIME, SECOND_PRIME};
use crate::linalg::{Matrix, Solution};
use crate::pointset::{add, sub, Point, PointSet};
use crate::polytope::{min_enclosing_factor_points, HPolytope, PolytopeError};
use crate::rational::{int, to_rational_point, Rational};
use crate::sparsepoly::{random_system, PolyError, SparsePoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MembershipError {
    #[error("a membership problem needs at least one generator")]
    NoGenerators,
    #[error("{supports} multiplier supports for {generators} generators")]
    LengthMismatch { supports: usize, generators: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("generators live over different fields")]
    FieldMismatch,
    #[error("target polynomial has exponents outside A")]
    SupportOutsideA,
    #[error("non-generic sample: dimensions disagree across primes/seeds ({0})")]
    GenericityFailure(String),
    #[error("the body B is a segment")]
    SegmentBody,
    #[error("k = {k} is outside the supported range 1 <= k <= n - 1 (n = {n}); pass the override flag to run anyway")]
    OutsideHypotheses { k: usize, n: usize },
    #[error("bad modulus {0}")]
    BadModulus(u64),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

pub type Result<T> = std::result::Result<T, MembershipError>;

/// `A`, multiplier supports `C_i` and generators `f_i`.
#[derive(Clone, Debug)]
pub struct MembershipProblem {
    pub a: PointSet,
    pub c: Vec<PointSet>,
    pub f: Vec<SparsePoly>,
}

/// `Omega` together with its row and column labels.
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub matrix: Matrix,
    pub rows: Vec<Point>,
    pub cols: Vec<(usize, Point)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipResult {
    pub dim_w: usize,
    pub dim_ker: usize,
    pub dim_v: usize,
    pub basis: Vec<SparsePoly>,
    pub omega_rows: usize,
    pub omega_cols: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    /// Canonical particular solution plus the dimension of the solution coset.
    Member {
        multipliers: Vec<SparsePoly>,
        kernel_dim: usize,
    },
    NotAMember,
}

impl MembershipProblem {
    pub fn new(a: PointSet, c: Vec<PointSet>, f: Vec<SparsePoly>) -> Result<Self> {
        if f.is_empty() {
            return Err(MembershipError::NoGenerators);
        }
        if c.len() != f.len() {
            return Err(MembershipError::LengthMismatch {
                supports: c.len(),
                generators: f.len(),
            });
        }
        let dim = a.dim();
        for d in c.iter().map(|s| s.dim()).chain(f.iter().map(|g| g.dim())) {
            if d != dim {
                return Err(MembershipError::DimensionMismatch(dim, d));
            }
        }
        if f.iter().any(|g| g.field() != f[0].field()) {
            return Err(MembershipError::FieldMismatch);
        }
        Ok(MembershipProblem { a, c, f })
    }

    pub fn k(&self) -> usize {
        self.f.len()
    }

    pub fn field(&self) -> PrimeField {
        self.f[0].field()
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// Column labels `(i, c)`, generator-major, supports in lexicographic order.
    pub fn columns(&self) -> Vec<(usize, Point)> {
        self.c
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().map(move |p| (i, p.clone())))
            .collect()
    }

    /// `⋃ (C_i + supp f_i)`.
    pub fn product_monomials(&self) -> BTreeSet<Point> {
        let mut out = BTreeSet::new();
        for (ci, fi) in self.c.iter().zip(&self.f) {
            for c in ci.iter() {
                for e in fi.terms().keys() {
                    out.insert(add(c, e));
                }
            }
        }
        out
    }

    fn matrix_on_rows(&self, rows: &[Point]) -> Matrix {
        let index: BTreeMap<&Point, usize> = rows.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let cols = self.columns();
        let mut m = Matrix::zeros(self.field(), rows.len(), cols.len());
        for (j, (i, c)) in cols.iter().enumerate() {
            for (e, coeff) in self.f[*i].terms() {
                if let Some(&r) = index.get(&add(c, e)) {
                    m.set(r, j, *coeff);
                }
            }
        }
        m
    }

    /// `Omega`: rows are product monomials outside `A` in lexicographic order.
    pub fn constraint_system(&self) -> ConstraintSystem {
        let rows: Vec<Point> = self
            .product_monomials()
            .into_iter()
            .filter(|e| !self.a.contains(e))
            .collect();
        ConstraintSystem {
            matrix: self.matrix_on_rows(&rows),
            rows,
            cols: self.columns(),
        }
    }

    /// The full system `sum c_i f_i = 0` over every product monomial.
    pub fn full_system(&self) -> ConstraintSystem {
        let rows: Vec<Point> = self.product_monomials().into_iter().collect();
        ConstraintSystem {
            matrix: self.matrix_on_rows(&rows),
            rows,
            cols: self.columns(),
        }
    }

    /// Splits a coefficient vector over [`MembershipProblem::columns`] into a multiplier tuple.
    pub fn tuple_from_vector(&self, v: &[FieldElem]) -> Vec<SparsePoly> {
        let field = self.field();
        let mut out: Vec<SparsePoly> = (0..self.k())
            .map(|_| SparsePoly::zero(field, self.dim()))
            .collect();
        for ((i, c), x) in self.columns().into_iter().zip(v) {
            if !x.is_zero() {
                out[i].add_term(c, *x);
            }
        }
        out
    }

    /// `sum c_i f_i`.
    pub fn image(&self, tuple: &[SparsePoly]) -> SparsePoly {
        let mut acc = SparsePoly::zero(self.field(), self.dim());
        for (c, f) in tuple.iter().zip(&self.f) {
            acc = acc.add(&c.mul(f).expect("compatible")).expect("compatible");
        }
        acc
    }

    /// Basis of `W` as multiplier tuples.
    pub fn solution_space_w(&self) -> Vec<Vec<SparsePoly>> {
        self.constraint_system()
            .matrix
            .kernel_basis()
            .iter()
            .map(|v| self.tuple_from_vector(v))
            .collect()
    }

    /// Basis of `ker phi` as multiplier tuples.
    pub fn syzygy_kernel(&self) -> Vec<Vec<SparsePoly>> {
        self.full_system()
            .matrix
            .kernel_basis()
            .iter()
            .map(|v| self.tuple_from_vector(v))
            .collect()
    }

    pub fn syzygy_kernel_dim(&self) -> usize {
        let m = self.full_system().matrix;
        m.cols() - m.rank()
    }

    /// Dimensions of `W`, `ker phi`, `V` and a canonical basis of `V`.
    ///
    /// The basis is the reduced row echelon form of the images of a `W`-basis,
    /// written over the points of `A` in lexicographic order.
    pub fn solve(&self) -> MembershipResult {
        let omega = self.constraint_system();
        let w_basis = omega.matrix.kernel_basis();
        let dim_ker = self.syzygy_kernel_dim();
        let field = self.field();
        let a_points = self.a.to_vec();
        let index: BTreeMap<&Point, usize> =
            a_points.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let images: Vec<Vec<FieldElem>> = w_basis
            .iter()
            .map(|v| {
                let g = self.image(&self.tuple_from_vector(v));
                let mut row = vec![field.zero(); a_points.len()];
                for (e, c) in g.terms() {
                    row[index[e]] = *c;
                }
                row
            })
            .collect();
        let ech = Matrix::from_rows(field, images, a_points.len()).echelon();
        let basis: Vec<SparsePoly> = (0..ech.pivots.len())
            .map(|r| {
                SparsePoly::from_field_terms(
                    field,
                    self.dim(),
                    ech.reduced
                        .row(r)
                        .iter()
                        .zip(&a_points)
                        .filter(|(c, _)| !c.is_zero())
                        .map(|(c, p)| (p.clone(), *c)),
                )
            })
            .collect();
        let dim_v = basis.len();
        assert_eq!(dim_v + dim_ker, w_basis.len(), "ker phi must lie inside W");
        MembershipResult {
            dim_w: w_basis.len(),
            dim_ker,
            dim_v,
            basis,
            omega_rows: omega.matrix.rows(),
            omega_cols: omega.matrix.cols(),
        }
    }

    /// Solves `sum c_i f_i = g` with `supp c_i ⊆ C_i`.
    pub fn decompose(&self, g: &SparsePoly) -> Result<Decomposition> {
        if g.dim() != self.dim() {
            return Err(MembershipError::DimensionMismatch(self.dim(), g.dim()));
        }
        if g.field() != self.field() {
            return Err(MembershipError::FieldMismatch);
        }
        if g.terms().keys().any(|e| !self.a.contains(e)) {
            return Err(MembershipError::SupportOutsideA);
        }
        let mut rows = self.product_monomials();
        rows.extend(g.terms().keys().cloned());
        let rows: Vec<Point> = rows.into_iter().collect();
        let m = self.matrix_on_rows(&rows);
        let rhs: Vec<FieldElem> = rows.iter().map(|e| g.coeff(e)).collect();
        Ok(match m.solve(&rhs) {
            Solution::Consistent { particular, kernel } => Decomposition::Member {
                multipliers: self.tuple_from_vector(&particular),
                kernel_dim: kernel.len(),
            },
            Solution::Infeasible => Decomposition::NotAMember,
        })
    }
}

/// Solves `mu * f = c` with `supp mu ⊆ s`; `None` when no such `mu` exists.
pub fn divide_with_support(c: &SparsePoly, f: &SparsePoly, s: &PointSet) -> Option<SparsePoly> {
    let a = c.support();
    let p = MembershipProblem::new(a, vec![s.clone()], vec![f.clone()]).ok()?;
    match p.decompose(c).ok()? {
        Decomposition::Member { multipliers, .. } => Some(multipliers.into_iter().next().unwrap()),
        Decomposition::NotAMember => None,
    }
}

/// Checks that a two-generator syzygy `(c_1, c_2)` equals `mu (f_2, -f_1)`
/// for some `mu` supported in `C_1 ⊖ supp f_2`.
pub fn is_koszul_multiple(
    tuple: &[SparsePoly],
    f1: &SparsePoly,
    f2: &SparsePoly,
    c1: &PointSet,
) -> bool {
    let [t1, t2] = tuple else {
        return false;
    };
    let s = c1.erode(&f2.support());
    match divide_with_support(t1, f2, &s) {
        Some(mu) => mu.mul(f1).map(|p| p.neg() == *t2).unwrap_or(false),
        None => false,
    }
}

/// Primes and seeds of the agreement protocol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Protocol {
    pub primes: Vec<u64>,
    pub seeds: Vec<u64>,
}

impl Default for Protocol {
    fn default() -> Self {
        Protocol {
            primes: vec![DEFAULT_PRIME, SECOND_PRIME],
            seeds: vec![1, 2],
        }
    }
}

impl Protocol {
    pub fn single(prime: u64, seed: u64) -> Self {
        Protocol {
            primes: vec![prime],
            seeds: vec![seed],
        }
    }

    /// Same primes, seeds moved deterministically for retry number `attempt`.
    pub fn reseeded(&self, attempt: u64) -> Self {
        Protocol {
            primes: self.primes.clone(),
            seeds: self
                .seeds
                .iter()
                .map(|s| s.wrapping_add(attempt.wrapping_mul(0xD1B5_4A32_D192_ED03)))
                .collect(),
        }
    }

    /// Runs `run` for every (prime, seed) pair and requires all results to agree.
    ///
    /// Returns the result of the first pair.
    pub fn agree<T, F>(&self, mut run: F) -> Result<T>
    where
        T: PartialEq + fmt::Debug,
        F: FnMut(PrimeField, u64) -> Result<T>,
    {
        let mut first: Option<(u64, u64, T)> = None;
        for &p in &self.primes {
            let field = PrimeField::new(p).map_err(|_| MembershipError::BadModulus(p))?;
            for &s in &self.seeds {
                let value = run(field, s)?;
                match &first {
                    None => first = Some((p, s, value)),
                    Some((p0, s0, v0)) => {
                        if *v0 != value {
                            return Err(MembershipError::GenericityFailure(format!(
                                "p={p0} seed={s0} gave {v0:?}, p={p} seed={s} gave {value:?}"
                            )));
                        }
                    }
                }
            }
        }
        first
            .map(|(_, _, v)| v)
            .ok_or(MembershipError::GenericityFailure(
                "no primes or seeds".into(),
            ))
    }

    /// [`Protocol::agree`], retrying with fresh seeds after a genericity failure.
    pub fn agree_with_retries<T, F>(&self, attempts: u64, mut run: F) -> Result<T>
    where
        T: PartialEq + fmt::Debug,
        F: FnMut(PrimeField, u64) -> Result<T>,
    {
        let mut last = None;
        for attempt in 0..attempts.max(1) {
            match self.reseeded(attempt).agree(&mut run) {
                Err(e @ MembershipError::GenericityFailure(_)) => last = Some(e),
                other => return other,
            }
        }
        Err(last.unwrap())
    }
}

/// A membership instance with generic generators sampled on given supports.
#[derive(Clone, Debug)]
pub struct SystemSpec {
    pub a: PointSet,
    pub c: Vec<PointSet>,
    pub generators: Vec<PointSet>,
}

impl SystemSpec {
    /// `k` generators on `Z(B)` with common multiplier support `c`.
    pub fn uniform(a: PointSet, c: PointSet, b: PointSet, k: usize) -> Self {
        SystemSpec {
            a,
            c: vec![c; k],
            generators: vec![b; k],
        }
    }

    pub fn sample(&self, field: PrimeField, seed: u64) -> Result<MembershipProblem> {
        let f = random_system(field, &self.generators, seed)?;
        MembershipProblem::new(self.a.clone(), self.c.clone(), f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipReport {
    pub dim_w: usize,
    pub dim_ker: usize,
    pub dim_v: usize,
    /// Basis computed at the first prime and seed.
    pub basis: Vec<SparsePoly>,
    pub omega_rows: usize,
    pub omega_cols: usize,
    pub primes: Vec<u64>,
    pub seeds: Vec<u64>,
}

/// Runs the solver under the agreement protocol.
pub fn membership_dim(spec: &SystemSpec, protocol: &Protocol) -> Result<MembershipReport> {
    let mut first: Option<MembershipResult> = None;
    let dims = protocol.agree(|field, seed| {
        let r = spec.sample(field, seed)?.solve();
        let dims = (r.dim_w, r.dim_ker, r.dim_v, r.omega_rows, r.omega_cols);
        if first.is_none() {
            first = Some(r);
        }
        Ok(dims)
    })?;
    let r = first.expect("protocol ran at least once");
    debug_assert_eq!(dims.2, r.dim_v);
    Ok(MembershipReport {
        dim_w: r.dim_w,
        dim_ker: r.dim_ker,
        dim_v: r.dim_v,
        basis: r.basis,
        omega_rows: r.omega_rows,
        omega_cols: r.omega_cols,
        primes: protocol.primes.clone(),
        seeds: protocol.seeds.clone(),
    })
}

/// Multiplier supports predicted to be a foundation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Foundation {
    /// Least `s` with `A + shift_a ⊆ s (B + shift_b)`.
    pub enclosing: Rational,
    pub t: Rational,
    pub shift_a: Point,
    pub shift_b: Point,
    /// Supports in the caller's coordinates.
    pub supports: Vec<PointSet>,
    pub within_hypotheses: bool,
}

/// Translation bringing the origin into `B`: an interior lattice point if
/// one exists, else the smallest vertex.
fn origin_shift(b: &HPolytope) -> Result<Point> {
    if b.contains_origin() {
        return Ok(vec![0; b.dim()]);
    }
    if let Some(p) = b.interior_lattice_points().iter().next() {
        return Ok(p.iter().map(|x| -x).collect());
    }
    let verts = b.integer_vertices().ok_or(PolytopeError::NonLattice)?;
    Ok(verts[0].iter().map(|x| -x).collect())
}

/// Computes `t = max(0, s - 1)` where `s` is the least dilation of `B` holding
/// an integer translate of `A`, and returns `k` copies of `Z(tB)`.
pub fn foundation_supports(
    a: &PointSet,
    b: &HPolytope,
    k: usize,
    allow_outside: bool,
) -> Result<Foundation> {
    if a.dim() != b.dim() {
        return Err(MembershipError::DimensionMismatch(b.dim(), a.dim()));
    }
    if !b.has_integer_vertices() {
        return Err(PolytopeError::NonLattice.into());
    }
    if b.is_segment() {
        return Err(MembershipError::SegmentBody);
    }
    let n = b.dim();
    let within = k >= 1 && k < n;
    if !within && !allow_outside {
        return Err(MembershipError::OutsideHypotheses { k, n });
    }
    let shift_b = origin_shift(b)?;
    let body = b.translate(&to_rational_point(&shift_b));
    let radius = a
        .iter()
        .chain(body.integer_vertices().unwrap().iter())
        .flat_map(|p| p.iter().map(|x| x.abs()))
        .max()
        .unwrap_or(0)
        + 1;
    let mut best: Option<(Rational, Point)> = None;
    let mut consider = |v: Point| {
        if let Ok(s) = min_enclosing_factor_points(&a.translate(&v), &body) {
            if best.as_ref().map_or(true, |(bs, _)| s < *bs) {
                best = Some((s, v));
            }
        }
    };
    consider(vec![0; n]);
    let mut v = vec![-radius; n];
    loop {
        consider(v.clone());
        let mut j = 0;
        loop {
            if j == n {
                break;
            }
            if v[j] < radius {
                v[j] += 1;
                break;
            }
            v[j] = -radius;
            j += 1;
        }
        if j == n {
            break;
        }
    }
    let (enclosing, shift_a) =
        best.ok_or(MembershipError::Polytope(PolytopeError::NotEnclosable))?;
    let t = if enclosing > int(1) {
        &enclosing - int(1)
    } else {
        Rational::zero()
    };
    let base = if t.is_positive() {
        body.dilate(&t)?.lattice_points()
    } else {
        PointSet::origin(n)
    };
    let back = sub(&shift_b, &shift_a);
    let support = base.translate(&back);
    Ok(Foundation {
        enclosing,
        t,
        shift_a,
        shift_b,
        supports: vec![support; k],
        within_hypotheses: within,
    })
}

/// `|Z(slab) ⊖ face(Z(B), alpha)|`, the per-step bound on the growth of `dim W`.
pub fn face_step_bound(slab: &PointSet, b: &PointSet, alpha: &[i64]) -> Result<usize> {
    let face = b.face(alpha).map_err(|_| PolytopeError::ZeroDirection)?;
    Ok(slab.erode(&face).len())
}

/// Dimensions of `V_A` along a chain, from the first term `C_I` with
/// `A ⊆ Z(C_I + B)` to the end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizationReport {
    pub first_index: Option<usize>,
    pub dims: Vec<usize>,
    /// Positions (relative to `first_index`) where the dimension grows.
    pub increases: Vec<usize>,
    pub primes: Vec<u64>,
    pub seeds: Vec<u64>,
}

impl StabilizationReport {
    pub fn is_constant(&self) -> bool {
        self.first_index.is_some() && self.dims.windows(2).all(|w| w[0] == w[1])
    }
}

/// Solves with `k` copies of `Z(C_i)` for every chain term from the first
/// one whose sum with `B` covers `A`. Generators live on `Z(B)` of the chain base.
pub fn stabilization_check(
    a: &PointSet,
    k: usize,
    chain: &NormalChain,
    protocol: &Protocol,
) -> Result<StabilizationReport> {
    let b = &chain.base;
    if a.dim() != b.dim() {
        return Err(MembershipError::DimensionMismatch(b.dim(), a.dim()));
    }
    let zb = b.lattice_points();
    let mut first = None;
    for (i, term) in chain.terms.iter().enumerate() {
        if a.is_subset(&term.minkowski_sum(b)?.lattice_points()) {
            first = Some(i);
            break;
        }
    }
    let mut dims = Vec::new();
    if let Some(start) = first {
        for term in &chain.terms[start..] {
            let spec = SystemSpec::uniform(a.clone(), term.lattice_points(), zb.clone(), k);
            dims.push(membership_dim(&spec, protocol)?.dim_v);
        }
    }
    let increases = dims
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[1] > w[0])
        .map(|(i, _)| i + 1)
        .collect();
    Ok(StabilizationReport {
        first_index: first,
        dims,
        increases,
        primes: protocol.primes.clone(),
        seeds: protocol.seeds.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DEFAULT_PRIME;
    use crate::polytope::HPolytope;

    fn fp() -> PrimeField {
        PrimeField::new(DEFAULT_PRIME).unwrap()
    }

    fn pts1(v: &[i64]) -> PointSet {
        PointSet::new(1, v.iter().map(|&x| vec![x])).unwrap()
    }

    fn one_plus_x() -> SparsePoly {
        SparsePoly::from_terms(fp(), 1, vec![(vec![0], 1), (vec![1], 1)]).unwrap()
    }

    #[test]
    fn omega_for_degree_one_target() {
        let p = MembershipProblem::new(pts1(&[0, 1]), vec![pts1(&[0, 1, 2])], vec![one_plus_x()])
            .unwrap();
        let sys = p.constraint_system();
        assert_eq!(sys.rows, vec![vec![2], vec![3]]);
        let expected = Matrix::from_i64_rows(fp(), &[vec![0, 1, 1], vec![0, 0, 1]]);
        assert_eq!(sys.matrix, expected);
    }

    #[test]
    fn unconstrained_when_a_covers_products() {
        let p = MembershipProblem::new(
            pts1(&[0, 1, 2, 3]),
            vec![pts1(&[0, 1, 2])],
            vec![one_plus_x()],
        )
        .unwrap();
        assert_eq!(p.constraint_system().matrix.rows(), 0);
        assert_eq!(p.solve().dim_w, 3);
    }

    #[test]
    fn hole_in_target() {
        let p =
            MembershipProblem::new(pts1(&[0, 2]), vec![pts1(&[0, 1])], vec![one_plus_x()]).unwrap();
        let r = p.solve();
        assert_eq!((r.dim_w, r.dim_ker, r.dim_v), (1, 0, 1));
        let f = fp();
        let expected = SparsePoly::from_terms(f, 1, vec![(vec![0], 1), (vec![2], -1)]).unwrap();
        assert_eq!(r.basis, vec![expected]);
    }

    #[test]
    fn empty_multiplier_support() {
        let p = MembershipProblem::new(pts1(&[0]), vec![PointSet::empty(1)], vec![one_plus_x()])
            .unwrap();
        assert!(p.solution_space_w().is_empty());
    }

    #[test]
    fn decompose_generator_itself() {
        let spec = SystemSpec::uniform(
            HPolytope::simplex(2, 1).lattice_points(),
            PointSet::origin(2),
            HPolytope::simplex(2, 1).lattice_points(),
            2,
        );
        let p = spec.sample(fp(), 3).unwrap();
        match p.decompose(&p.f[0]).unwrap() {
            Decomposition::Member { multipliers, .. } => {
                assert_eq!(multipliers[0], SparsePoly::constant(fp(), 2, fp().one()));
                assert!(multipliers[1].is_zero());
            }
            Decomposition::NotAMember => panic!("f_1 is a member"),
        }
        let outside = SparsePoly::monomial(fp(), vec![5, 5], fp().one());
        assert_eq!(p.decompose(&outside), Err(MembershipError::SupportOutsideA));
    }

    #[test]
    fn foundation_examples() {
        let b = HPolytope::cube(3, 0, 1);
        let f = foundation_supports(&b.lattice_points(), &b, 2, false).unwrap();
        assert_eq!(f.t, int(0));
        assert_eq!(f.supports, vec![PointSet::origin(3); 2]);
        let a = HPolytope::cube(3, 0, 3).lattice_points();
        let f = foundation_supports(&a, &b, 1, false).unwrap();
        assert_eq!(f.t, int(2));
        assert_eq!(f.supports[0], HPolytope::cube(3, 0, 2).lattice_points());
        let seg = HPolytope::new(
            2,
            vec![
                crate::polytope::Facet::new(vec![1, 0], int(0)),
                crate::polytope::Facet::new(vec![-1, 0], int(-1)),
                crate::polytope::Facet::new(vec![0, 1], int(0)),
                crate::polytope::Facet::new(vec![0, -1], int(0)),
            ],
        )
        .unwrap();
        assert_eq!(
            foundation_supports(&PointSet::origin(2), &seg, 1, false),
            Err(MembershipError::SegmentBody)
        );
        assert!(matches!(
            foundation_supports(&a, &b, 3, false),
            Err(MembershipError::OutsideHypotheses { .. })
        ));
        assert!(
            !foundation_supports(&a, &b, 3, true)
                .unwrap()
                .within_hypotheses
        );
    }

    #[test]
    fn protocol_detects_disagreement() {
        let proto = Protocol::default();
        let mut calls = 0;
        let r = proto.agree(|_, _| {
            calls += 1;
            Ok(calls)
        });
        assert!(matches!(r, Err(MembershipError::GenericityFailure(_))));
        assert_eq!(proto.agree(|f, _| Ok(f.modulus() > 2)).unwrap(), true);
    }

    #[test]
    fn face_step_bound_empty_slab() {
        let b = HPolytope::cube(2, -1, 1).lattice_points();
        assert_eq!(
            face_step_bound(&PointSet::empty(2), &b, &[1, 0]).unwrap(),
            0
        );
    }
}
