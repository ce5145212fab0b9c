//! Normal chains: nested polytopes grown from a lattice polytope `B` by
//! shifting one facet at a time, returning to a homothetic copy of `B`
//! after every round of `L` shifts.
//!
//! Homotheties are taken about a rational center `O` in the interior of `B`
//! (the origin when it is interior). With centered offsets
//! `beta_i = b_i - a_i . O < 0`, the term `t B` is `{x . a_i >= a_i . O + t beta_i}`.
//! Every candidate step is validated by exact enumeration; the shift
//! parameter is halved until all checks pass.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::pointset::PointSet;
use crate::polytope::{subsets, Facet, HPolytope, PolytopeError};
use crate::rational::{dot_int_rat, int, to_rational_point, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("base polytope must have integer vertices")]
    NotLattice,
    #[error("base polytope is a segment")]
    SegmentBody,
    #[error("base polytope is not full-dimensional")]
    LowerDimensional,
    #[error("homothety center is not in the interior of the base")]
    CenterNotInterior,
    #[error("target factor must exceed the starting factor")]
    BadTarget,
    #[error("shift parameter fell below the floor while building the chain at factor {0}")]
    ChainStalled(String),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

pub type Result<T> = std::result::Result<T, ChainError>;

/// Order in which facets are shifted within a round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FacetOrder {
    Ascending,
    /// Ascending values of a generic linear form on the dual vertices.
    Psi,
    Explicit(Vec<usize>),
}

/// How the dilation factor grows from round to round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Spacing {
    /// `t -> t (1 + tau)`, `tau` halved per round until the round validates.
    Geometric,
    /// `t -> t + gap` with one gap for the whole chain; halved and restarted on failure.
    Equidistant,
}

#[derive(Clone, Debug)]
pub struct ChainConfig {
    pub t_max: Rational,
    pub order: FacetOrder,
    pub spacing: Spacing,
    pub tau_floor: Rational,
    /// Homothety center; defaults to the origin when interior, else the vertex barycenter.
    pub center: Option<Vec<Rational>>,
}

impl ChainConfig {
    pub fn new(t_max: Rational) -> Self {
        ChainConfig {
            t_max,
            order: FacetOrder::Ascending,
            spacing: Spacing::Geometric,
            tau_floor: Rational::new(BigInt::one(), BigInt::one() << 40),
            center: None,
        }
    }
}

/// Metadata of the inclusion `terms[i] ⊂ terms[i + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    /// Shifted facet; `None` for a pure homothety.
    pub facet: Option<usize>,
    pub tau: Rational,
    /// Homothety factors bracketing both terms.
    pub bracket: (Rational, Rational),
}

#[derive(Clone, Debug)]
pub struct NormalChain {
    pub base: HPolytope,
    pub center: Vec<Rational>,
    pub terms: Vec<HPolytope>,
    pub steps: Vec<ChainStep>,
    pub epsilon0: Rational,
    pub order: Vec<usize>,
}

/// One boolean per checked condition of a chain inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepValidation {
    pub facet_count: bool,
    /// `next = B + (next ⊖ B)`.
    pub decomposition: bool,
    /// New lattice points lie on one level set of the shifted facet normal.
    pub coplanar: bool,
    /// `prev ⊆ next` and only the shifted facet moved.
    pub single_shift: bool,
}

impl StepValidation {
    pub fn passed(&self) -> bool {
        self.facet_count && self.decomposition && self.coplanar && self.single_shift
    }
}

/// Centered offsets `beta_i = b_i - a_i . O`.
fn centered_offsets(b: &HPolytope, center: &[Rational]) -> Vec<Rational> {
    b.facets()
        .iter()
        .map(|f| &f.offset - dot_int_rat(&f.normal, center))
        .collect()
}

/// `max_i a_i . (q - O) / beta_i`; at most 1 exactly on `B`.
fn gauge(b: &HPolytope, beta: &[Rational], center: &[Rational], q: &[Rational]) -> Rational {
    b.facets()
        .iter()
        .zip(beta)
        .map(|(f, be)| (dot_int_rat(&f.normal, q) - dot_int_rat(&f.normal, center)) / be)
        .max()
        .expect("polytope has facets")
}

/// Polytope with facet `i` at centered factor `factors[i]`.
fn scaled_term(
    b: &HPolytope,
    center: &[Rational],
    beta: &[Rational],
    factors: &[Rational],
) -> Result<HPolytope> {
    let facets = b
        .facets()
        .iter()
        .zip(beta)
        .zip(factors)
        .map(|((f, be), s)| Facet::new(f.normal.clone(), dot_int_rat(&f.normal, center) + s * be))
        .collect();
    Ok(HPolytope::new(b.dim(), facets)?)
}

/// Checks the base requirements and returns its canonical form and center.
fn prepare_base(
    b: &HPolytope,
    center: Option<&Vec<Rational>>,
) -> Result<(HPolytope, Vec<Rational>)> {
    if b.is_lower_dimensional() {
        return Err(if b.is_segment() {
            ChainError::SegmentBody
        } else {
            ChainError::LowerDimensional
        });
    }
    if !b.has_integer_vertices() {
        return Err(ChainError::NotLattice);
    }
    let base = b.normalized();
    let center = match center {
        Some(c) => c.clone(),
        None => default_center(&base),
    };
    if !base.contains_in_interior(&center) {
        return Err(ChainError::CenterNotInterior);
    }
    Ok((base, center))
}

/// The origin when interior, otherwise the barycenter of the vertices.
pub fn default_center(b: &HPolytope) -> Vec<Rational> {
    let origin = vec![Rational::zero(); b.dim()];
    if b.contains_in_interior(&origin) {
        return origin;
    }
    let n = BigInt::from(b.vertices().len());
    (0..b.dim())
        .map(|j| b.vertices().iter().map(|v| v[j].clone()).sum::<Rational>() / &n)
        .collect()
}

/// `(eps0, t_crit)`: `t_crit` is the least gauge of a lattice point of `2B`
/// outside `B` (2 if there is none), and `eps0 = (1 + t_crit) / 2`.
pub fn epsilon0(b: &HPolytope, center: &[Rational]) -> Result<(Rational, Rational)> {
    if !b.contains_in_interior(center) {
        return Err(ChainError::CenterNotInterior);
    }
    let beta = centered_offsets(b, center);
    let two = int(2);
    let doubled = b.dilate_about(center, &two)?;
    let mut t_crit = two.clone();
    for q in doubled.lattice_points().iter() {
        let q = to_rational_point(q);
        if b.contains(&q) {
            continue;
        }
        let g = gauge(b, &beta, center, &q);
        if g < t_crit {
            t_crit = g;
        }
    }
    let eps0 = (int(1) + &t_crit) / BigInt::from(2);
    Ok((eps0, t_crit))
}

/// Replaces the offset of facet `m` by `(1 + tau) b_m` (homothety about the origin).
pub fn shift_facet(x: &HPolytope, m: usize, tau: &Rational) -> Result<HPolytope> {
    let f = x.facets().get(m).ok_or(PolytopeError::InvalidFacet(m))?;
    let offset = &f.offset * (int(1) + tau);
    Ok(x.with_facet_offset(m, offset)?)
}

/// [`shift_facet`] with the homothety about `center`.
pub fn shift_facet_about(
    x: &HPolytope,
    center: &[Rational],
    m: usize,
    tau: &Rational,
) -> Result<HPolytope> {
    let f = x.facets().get(m).ok_or(PolytopeError::InvalidFacet(m))?;
    let ac = dot_int_rat(&f.normal, center);
    let offset = &ac + (&f.offset - &ac) * (int(1) + tau);
    Ok(x.with_facet_offset(m, offset)?)
}

/// Every vertex of `x` is a vertex of `b` plus a point of `x ⊖ b`.
pub fn decomposes(b: &HPolytope, x: &HPolytope) -> Result<bool> {
    let Some(e) = x.erode(b)? else {
        return Ok(false);
    };
    Ok(x.vertices().iter().all(|v| {
        b.vertices().iter().any(|w| {
            let d: Vec<Rational> = v.iter().zip(w).map(|(p, q)| p - q).collect();
            e.contains(&d)
        })
    }))
}

/// Validates one inclusion `prev ⊂ next` that moves facet `m` (or none).
pub fn validate_step(
    base: &HPolytope,
    prev: &HPolytope,
    next: &HPolytope,
    m: Option<usize>,
) -> Result<StepValidation> {
    let l = base.facet_count();
    let facet_count = next.facet_count() == l && next.facets().len() == l;
    let decomposition = decomposes(base, next)?;
    let new = next.lattice_points().difference(&prev.lattice_points());
    let coplanar = match m {
        Some(m) => {
            let normal = &next.facets()[m].normal;
            new.iter()
                .map(|p| crate::pointset::dot(normal, p))
                .collect::<BTreeSet<i64>>()
                .len()
                <= 1
        }
        None => new.is_empty(),
    };
    let same_shape = prev.facets().len() == next.facets().len()
        && prev
            .facets()
            .iter()
            .zip(next.facets())
            .enumerate()
            .all(|(i, (p, q))| {
                p.normal == q.normal && (m.is_none() || Some(i) == m || p.offset == q.offset)
            });
    let single_shift = same_shape && prev.is_subset_of(next);
    Ok(StepValidation {
        facet_count,
        decomposition,
        coplanar,
        single_shift,
    })
}

/// Facet indices sorted by a generic linear form on the dual vertices `a_i / (-beta_i)`.
pub fn psi_order(b: &HPolytope, center: &[Rational]) -> Vec<usize> {
    let beta = centered_offsets(b, center);
    let dual: Vec<Vec<Rational>> = b
        .facets()
        .iter()
        .zip(&beta)
        .map(|(f, be)| f.normal.iter().map(|&a| int(a) / -be).collect())
        .collect();
    for m in 2i64.. {
        let psi: Vec<i64> = (0..b.dim()).map(|j| m.pow(j as u32)).collect();
        let values: Vec<Rational> = dual.iter().map(|d| dot_int_rat(&psi, d)).collect();
        let distinct: BTreeSet<&Rational> = values.iter().collect();
        if distinct.len() == values.len() {
            let mut order: Vec<usize> = (0..values.len()).collect();
            order.sort_by(|&i, &j| values[i].cmp(&values[j]));
            return order;
        }
    }
    unreachable!()
}

/// Pairs of facets meeting in a face of codimension 2.
pub fn facet_adjacency(b: &HPolytope) -> Vec<(usize, usize)> {
    let n = b.dim();
    let mut out = Vec::new();
    for pair in subsets(b.facets().len(), 2) {
        let (i, j) = (pair[0], pair[1]);
        let on: Vec<Vec<Rational>> = b
            .vertices()
            .iter()
            .filter(|v| {
                [i, j]
                    .iter()
                    .all(|&k| dot_int_rat(&b.facets()[k].normal, v) == b.facets()[k].offset)
            })
            .cloned()
            .collect();
        if on.is_empty() {
            continue;
        }
        let first = on[0].clone();
        let diffs: Vec<Vec<Rational>> = on[1..]
            .iter()
            .map(|p| p.iter().zip(&first).map(|(a, c)| a - c).collect())
            .collect();
        if crate::rational::rational_rank(&diffs) + 2 == n {
            out.push((i, j));
        }
    }
    out
}

/// Positions in `order` whose facet has every neighbour shifted earlier.
pub fn surrounded_positions(b: &HPolytope, order: &[usize]) -> Vec<usize> {
    let adj = facet_adjacency(b);
    let pos: Vec<usize> = {
        let mut p = vec![0; order.len()];
        for (k, &f) in order.iter().enumerate() {
            p[f] = k;
        }
        p
    };
    order
        .iter()
        .enumerate()
        .filter(|(k, &f)| {
            adj.iter()
                .filter_map(|&(i, j)| {
                    if i == f {
                        Some(j)
                    } else if j == f {
                        Some(i)
                    } else {
                        None
                    }
                })
                .all(|g| pos[g] < *k)
        })
        .map(|(k, _)| k)
        .collect()
}

fn resolve_order(order: &FacetOrder, base: &HPolytope, center: &[Rational]) -> Vec<usize> {
    match order {
        FacetOrder::Ascending => (0..base.facets().len()).collect(),
        FacetOrder::Psi => psi_order(base, center),
        FacetOrder::Explicit(v) => v.clone(),
    }
}

struct Round {
    terms: Vec<HPolytope>,
    steps: Vec<ChainStep>,
}

/// Shifts the facets in `order` one at a time from factor `t_cur` to `t_next`.
#[allow(clippy::too_many_arguments)]
fn try_round(
    base: &HPolytope,
    center: &[Rational],
    beta: &[Rational],
    order: &[usize],
    start: &HPolytope,
    t_cur: &Rational,
    t_next: &Rational,
    require_decomposition: bool,
) -> Result<Option<Round>> {
    let tau = t_next / t_cur - int(1);
    let mut factors = vec![t_cur.clone(); beta.len()];
    let mut prev = start.clone();
    let mut round = Round {
        terms: Vec::new(),
        steps: Vec::new(),
    };
    for &m in order {
        factors[m] = t_next.clone();
        let next = match scaled_term(base, center, beta, &factors) {
            Ok(p) => p,
            Err(ChainError::Polytope(PolytopeError::Empty)) => return Ok(None),
            Err(e) => return Err(e),
        };
        let v = validate_step(base, &prev, &next, Some(m))?;
        let ok = v.facet_count
            && v.coplanar
            && v.single_shift
            && (v.decomposition || !require_decomposition);
        if !ok {
            return Ok(None);
        }
        round.steps.push(ChainStep {
            facet: Some(m),
            tau: tau.clone(),
            bracket: (t_cur.clone(), t_next.clone()),
        });
        round.terms.push(next.clone());
        prev = next;
    }
    Ok(Some(round))
}

/// Builds a validated normal chain of `b` whose last factor is at least `t_max`.
pub fn build_normal_chain(b: &HPolytope, cfg: &ChainConfig) -> Result<NormalChain> {
    let (base, center) = prepare_base(b, cfg.center.as_ref())?;
    if cfg.t_max <= int(1) {
        return Err(ChainError::BadTarget);
    }
    let (eps0, _) = epsilon0(&base, &center)?;
    let beta = centered_offsets(&base, &center);
    let order = resolve_order(&cfg.order, &base, &center);
    let mut gap = &eps0 - int(1);
    'restart: loop {
        let first = base.dilate_about(&center, &eps0)?;
        let mut chain = NormalChain {
            base: base.clone(),
            center: center.clone(),
            terms: vec![base.clone(), first.clone()],
            steps: vec![ChainStep {
                facet: None,
                tau: &eps0 - int(1),
                bracket: (int(1), eps0.clone()),
            }],
            epsilon0: eps0.clone(),
            order: order.clone(),
        };
        let mut t = eps0.clone();
        while t < cfg.t_max {
            let mut tau = &eps0 - int(1);
            loop {
                let t_next = match cfg.spacing {
                    Spacing::Geometric => &t * (int(1) + &tau),
                    Spacing::Equidistant => &t + &gap,
                };
                let start = chain.terms.last().unwrap().clone();
                if let Some(round) =
                    try_round(&base, &center, &beta, &order, &start, &t, &t_next, true)?
                {
                    chain.terms.extend(round.terms);
                    chain.steps.extend(round.steps);
                    t = t_next;
                    break;
                }
                match cfg.spacing {
                    Spacing::Geometric => {
                        tau /= BigInt::from(2);
                        if tau < cfg.tau_floor {
                            return Err(ChainError::ChainStalled(t.to_string()));
                        }
                    }
                    Spacing::Equidistant => {
                        gap /= BigInt::from(2);
                        if gap < cfg.tau_floor {
                            return Err(ChainError::ChainStalled(t.to_string()));
                        }
                        continue 'restart;
                    }
                }
            }
        }
        return Ok(chain);
    }
}

impl NormalChain {
    pub fn facet_count(&self) -> usize {
        self.base.facets().len()
    }

    /// Homothety factor of the last term.
    pub fn last_factor(&self) -> Rational {
        self.steps
            .last()
            .map(|s| s.bracket.1.clone())
            .unwrap_or_else(|| int(1))
    }

    /// `t B` about the chain center.
    pub fn dilation(&self, t: &Rational) -> Result<HPolytope> {
        Ok(self.base.dilate_about(&self.center, t)?)
    }

    /// Bracket of term `i`: the closest homothetic terms around it.
    pub fn bracket_of(&self, i: usize) -> (Rational, Rational) {
        if i == 0 {
            return (int(1), self.epsilon0.clone());
        }
        self.steps[i - 1].bracket.clone()
    }

    /// Lattice points of `terms[i + 1]` not in `terms[i]`.
    pub fn slab(&self, i: usize) -> PointSet {
        self.terms[i + 1]
            .lattice_points()
            .difference(&self.terms[i].lattice_points())
    }
}

/// Chain-level findings besides the per-step checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub steps: Vec<StepValidation>,
    /// `Z(eps0 B) = Z(B)`.
    pub first_term: bool,
    /// Every `L`-th term after the first is a pure dilation of the base.
    pub periodic_dilations: bool,
    /// Every term lies between the homotheties of its bracket.
    pub brackets: bool,
    pub reaches: bool,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.first_term
            && self.periodic_dilations
            && self.brackets
            && self.reaches
            && self.steps.iter().all(|s| s.passed())
    }
}

/// Re-validates every condition of a chain from scratch.
pub fn validate_chain(chain: &NormalChain, t_max: &Rational) -> Result<ChainReport> {
    let mut steps = Vec::new();
    for (i, s) in chain.steps.iter().enumerate() {
        steps.push(validate_step(
            &chain.base,
            &chain.terms[i],
            &chain.terms[i + 1],
            s.facet,
        )?);
    }
    let first_term = chain.terms[1].lattice_points() == chain.base.lattice_points();
    let l = chain.facet_count();
    let mut periodic = true;
    let mut k = 1;
    while k < chain.terms.len() {
        let t = chain.bracket_of(k).1;
        periodic &= chain.terms[k] == chain.dilation(&t)?;
        k += l;
    }
    let mut brackets = true;
    for (i, term) in chain.terms.iter().enumerate().skip(1) {
        let (t1, t2) = chain.bracket_of(i);
        brackets &=
            chain.dilation(&t1)?.is_subset_of(term) && term.is_subset_of(&chain.dilation(&t2)?);
    }
    Ok(ChainReport {
        steps,
        first_term,
        periodic_dilations: periodic,
        brackets,
        reaches: chain.last_factor() >= *t_max,
    })
}

/// Lattice identities relating chain steps and erosions by the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErosionIdentities {
    /// `Z(X_i ⊖ B) ⊆ Z(X_{i+1} ⊖ B)`.
    pub monotone: bool,
    /// `Z(X_{i+1} ⊖ B) = Z(X_{i+1}) ⊖ Z(B)`.
    pub lattice_erosion: bool,
    /// `Z(X_{i+1} ⊖ B) \ Z(X_i ⊖ B) = (Z(X_{i+1}) \ Z(X_i)) ⊖ Z(B(alpha))`.
    pub slab: bool,
}

impl ErosionIdentities {
    pub fn passed(&self) -> bool {
        self.monotone && self.lattice_erosion && self.slab
    }
}

fn eroded_points(x: &HPolytope, b: &HPolytope) -> Result<PointSet> {
    Ok(match x.erode(b)? {
        Some(e) => e.lattice_points(),
        None => PointSet::empty(x.dim()),
    })
}

/// Checks the erosion identities on every facet-shift step of a chain.
pub fn check_erosion_identities(chain: &NormalChain) -> Result<Vec<ErosionIdentities>> {
    let b = &chain.base;
    let zb = b.lattice_points();
    let mut out = Vec::new();
    for (i, s) in chain.steps.iter().enumerate() {
        let (prev, next) = (&chain.terms[i], &chain.terms[i + 1]);
        let e_prev = eroded_points(prev, b)?;
        let e_next = eroded_points(next, b)?;
        let monotone = e_prev.is_subset(&e_next);
        let lattice_erosion = e_next == next.lattice_points().erode(&zb);
        let slab = match s.facet {
            Some(m) => {
                let alpha = &b.facets()[m].normal;
                let face = b.face(alpha)?;
                let lhs = e_next.difference(&e_prev);
                let rhs = chain.slab(i).erode(&face);
                lhs == rhs
            }
            None => e_next.difference(&e_prev).is_empty() == chain.slab(i).is_empty(),
        };
        out.push(ErosionIdentities {
            monotone,
            lattice_erosion,
            slab,
        });
    }
    Ok(out)
}

/// Erodes consecutive terms with `t_1 >= 1 + eps0` by the base and validates
/// the eroded inclusions as chain steps.
pub fn eroded_steps_valid(chain: &NormalChain) -> Result<Vec<(usize, StepValidation)>> {
    let threshold = int(1) + &chain.epsilon0;
    let mut out = Vec::new();
    for (i, s) in chain.steps.iter().enumerate() {
        if s.bracket.0 < threshold {
            continue;
        }
        let (Some(p), Some(n)) = (
            chain.terms[i].erode(&chain.base)?,
            chain.terms[i + 1].erode(&chain.base)?,
        ) else {
            continue;
        };
        out.push((i, validate_step(&chain.base, &p, &n, s.facet)?));
    }
    Ok(out)
}

/// Descending fragment `B ⊃ ... ⊃ eps_{-1} B` shifting facets in `psi` order.
#[derive(Clone, Debug)]
pub struct NegativeChain {
    pub base: HPolytope,
    pub center: Vec<Rational>,
    pub epsilon_minus1: Rational,
    /// Terms from `B` down to `eps_{-1} B`.
    pub terms: Vec<HPolytope>,
    /// `steps[i]` un-shifts one facet going from `terms[i]` to `terms[i + 1]`.
    pub steps: Vec<ChainStep>,
    pub order: Vec<usize>,
    /// Positions in `order` of facets whose neighbours were all shifted before them.
    pub surrounded: Vec<usize>,
}

/// `eps_{-1} = (g + 1) / 2` where `g` is the largest gauge of an interior lattice point.
pub fn epsilon_minus1(b: &HPolytope, center: &[Rational]) -> Rational {
    let beta = centered_offsets(b, center);
    let g = b
        .interior_lattice_points()
        .iter()
        .map(|q| gauge(b, &beta, center, &to_rational_point(q)))
        .max()
        .unwrap_or_else(Rational::zero);
    let g = if g.is_negative() { Rational::zero() } else { g };
    (g + int(1)) / BigInt::from(2)
}

pub fn negative_chain(
    b: &HPolytope,
    center: Option<&Vec<Rational>>,
    tau_floor: &Rational,
) -> Result<NegativeChain> {
    let (base, center) = prepare_base(b, center)?;
    let beta = centered_offsets(&base, &center);
    let em1 = epsilon_minus1(&base, &center);
    let order = psi_order(&base, &center);
    let mut terms = vec![base.dilate_about(&center, &em1)?];
    let mut steps = Vec::new();
    let mut t = em1.clone();
    let one = int(1);
    while t < one {
        let mut tau = &one / &t - int(1);
        loop {
            let mut t_next = &t * (int(1) + &tau);
            if t_next > one {
                t_next = one.clone();
            }
            let start = terms.last().unwrap().clone();
            if let Some(round) =
                try_round(&base, &center, &beta, &order, &start, &t, &t_next, false)?
            {
                terms.extend(round.terms);
                steps.extend(round.steps);
                t = t_next;
                break;
            }
            tau /= BigInt::from(2);
            if tau < *tau_floor {
                return Err(ChainError::ChainStalled(t.to_string()));
            }
        }
    }
    terms.reverse();
    steps.reverse();
    let surrounded = surrounded_positions(&base, &order);
    Ok(NegativeChain {
        base,
        center,
        epsilon_minus1: em1,
        terms,
        steps,
        order,
        surrounded,
    })
}

/// Outcome of eroding a chain term `j` times by the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ErosionClass {
    ChainElement,
    Empty,
    /// Same lattice points as the base (moved by the center offset).
    LatticeEqualsB,
    /// Lattice points strictly inside the base.
    StrictlyInterior,
    /// Fits none of the four cases.
    Unclassified,
}

/// Classifies `term ⊖^j B` for a chain term with bracket `(t1, t2)`.
///
/// With center `O`, `(t B) ⊖^j B = (t - j) B - j O`, so the reference body
/// for the lattice comparisons is `B - j O`.
pub fn classify_erosion(
    chain: &NormalChain,
    term: &HPolytope,
    bracket: &(Rational, Rational),
    j: usize,
) -> Result<ErosionClass> {
    let b = &chain.base;
    let Some(e) = term.erode_iter(b, j)? else {
        return Ok(ErosionClass::Empty);
    };
    let jr = int(j as i64);
    if &bracket.0 - &jr >= chain.epsilon0
        && !e.is_lower_dimensional()
        && e.facet_count() == chain.facet_count()
        && decomposes(b, &e)?
    {
        return Ok(ErosionClass::ChainElement);
    }
    let shift: Vec<Rational> = chain.center.iter().map(|c| -(c * &jr)).collect();
    let reference = b.translate(&shift);
    let z = e.lattice_points();
    if z == reference.lattice_points() {
        return Ok(ErosionClass::LatticeEqualsB);
    }
    if z.iter()
        .all(|p| reference.contains_in_interior(&to_rational_point(p)))
    {
        return Ok(ErosionClass::StrictlyInterior);
    }
    Ok(ErosionClass::Unclassified)
}

/// `(t B)` bracket factor for a lattice point set: the least `t` with the set in `t B`.
pub fn gauge_of_points(b: &HPolytope, center: &[Rational], points: &PointSet) -> Rational {
    let beta = centered_offsets(b, center);
    points
        .iter()
        .map(|q| gauge(b, &beta, center, &to_rational_point(q)))
        .max()
        .unwrap_or_else(Rational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn square() -> HPolytope {
        HPolytope::cube(2, -1, 1)
    }

    fn origin2() -> Vec<Rational> {
        vec![int(0), int(0)]
    }

    #[test]
    fn epsilon0_of_square() {
        let (eps, t) = epsilon0(&square(), &origin2()).unwrap();
        assert_eq!(t, int(2));
        assert_eq!(eps, rat(3, 2));
    }

    #[test]
    fn epsilon0_keeps_lattice_points() {
        let e2 = HPolytope::simplex(2, 2);
        let c = default_center(&e2);
        let (eps, t) = epsilon0(&e2, &c).unwrap();
        assert!(eps > int(1) && eps < t);
        assert_eq!(
            e2.dilate_about(&c, &eps).unwrap().lattice_points(),
            e2.lattice_points()
        );
    }

    #[test]
    fn shift_examples() {
        let s = shift_facet(&square(), 0, &rat(1, 2)).unwrap();
        let expected = HPolytope::new(
            2,
            vec![
                Facet::new(vec![1, 0], rat(-3, 2)),
                Facet::new(vec![-1, 0], int(-1)),
                Facet::new(vec![0, 1], int(-1)),
                Facet::new(vec![0, -1], int(-1)),
            ],
        )
        .unwrap();
        assert_eq!(s, expected);
        assert_eq!(shift_facet(&square(), 0, &int(0)).unwrap(), square());
        assert!(shift_facet(&square(), 9, &int(1)).is_err());
    }

    #[test]
    fn oversized_shift_breaks_facet_count() {
        // square with the corner at (-1, -1) cut off
        let pts = PointSet::new(
            2,
            vec![
                vec![-1, 0],
                vec![0, -1],
                vec![1, -1],
                vec![1, 1],
                vec![-1, 1],
            ],
        )
        .unwrap();
        let base = HPolytope::from_points(&pts).unwrap().normalized();
        let m = base
            .facets()
            .iter()
            .position(|f| f.normal == vec![1, 1])
            .unwrap();
        let small = shift_facet(&base, m, &rat(1, 2)).unwrap();
        assert!(
            validate_step(&base, &base, &small, Some(m))
                .unwrap()
                .facet_count
        );
        let next = shift_facet(&base, m, &int(2)).unwrap();
        let v = validate_step(&base, &base, &next, Some(m)).unwrap();
        assert!(!v.facet_count);
    }

    #[test]
    fn homothety_step_validates() {
        let b = square();
        let next = b.dilate(&rat(3, 2)).unwrap();
        let v = validate_step(&b, &b, &next, None).unwrap();
        assert!(v.passed());
    }

    #[test]
    fn square_chain() {
        let chain = build_normal_chain(&square(), &ChainConfig::new(int(3))).unwrap();
        assert_eq!(chain.facet_count(), 4);
        let report = validate_chain(&chain, &int(3)).unwrap();
        assert!(report.passed(), "{report:?}");
        assert!(check_erosion_identities(&chain)
            .unwrap()
            .iter()
            .all(|r| r.passed()));
        let last = chain.terms.last().unwrap();
        assert!(chain.dilation(&int(3)).unwrap().is_subset_of(last));
    }

    #[test]
    fn equidistant_chain_has_constant_gap() {
        let mut cfg = ChainConfig::new(int(3));
        cfg.spacing = Spacing::Equidistant;
        let chain = build_normal_chain(&square(), &cfg).unwrap();
        let l = chain.facet_count();
        let factors: Vec<Rational> = (0..)
            .map(|r| 1 + r * l)
            .take_while(|&k| k < chain.terms.len())
            .map(|k| chain.bracket_of(k).1)
            .collect();
        let gaps: BTreeSet<Rational> = factors.windows(2).map(|w| &w[1] - &w[0]).collect();
        assert_eq!(gaps.len(), 1);
    }

    #[test]
    fn negative_chain_of_square() {
        let neg = negative_chain(&square(), None, &ChainConfig::new(int(2)).tau_floor).unwrap();
        assert!(neg.epsilon_minus1 < int(1));
        let inner = neg.terms.last().unwrap();
        assert_eq!(inner.lattice_points(), PointSet::origin(2));
        assert_eq!(neg.terms[0], square());
        assert_eq!(neg.surrounded, vec![neg.order.len() - 1]);
        for t in &neg.terms {
            assert_eq!(t.facet_count(), 4);
        }
    }

    #[test]
    fn classify_examples() {
        let chain = build_normal_chain(&square(), &ChainConfig::new(int(4))).unwrap();
        let three = square().dilate(&int(3)).unwrap();
        assert_eq!(
            classify_erosion(&chain, &three, &(int(3), int(3)), 1).unwrap(),
            ErosionClass::ChainElement
        );
        let small = square().dilate(&rat(3, 2)).unwrap();
        assert_eq!(
            classify_erosion(&chain, &small, &(int(1), rat(3, 2)), 2).unwrap(),
            ErosionClass::Empty
        );
        let near_two = shift_facet(&square().dilate(&int(2)).unwrap(), 0, &rat(1, 8)).unwrap();
        assert_eq!(
            classify_erosion(&chain, &near_two, &(int(2), rat(9, 4)), 1).unwrap(),
            ErosionClass::LatticeEqualsB
        );
    }

    #[test]
    fn psi_order_is_a_permutation() {
        let b = square();
        let mut o = psi_order(&b, &origin2());
        o.sort();
        assert_eq!(o, vec![0, 1, 2, 3]);
        assert_eq!(facet_adjacency(&b).len(), 4);
    }
}
