//! Sparse Laurent polynomials over a prime field.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::{FieldElem, PrimeField};
use crate::pointset::{add, Point, PointSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("cannot sample a polynomial on an empty support")]
    EmptySupport,
    #[error("evaluation point has a zero coordinate")]
    ZeroCoordinate,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("polynomials live over different fields")]
    FieldMismatch,
}

/// A Laurent polynomial with coefficients in `F_p`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    field: PrimeField,
    dim: usize,
    terms: BTreeMap<Point, FieldElem>,
}

/// Deterministic RNG for a `(seed, prime)` pair.
pub fn seeded_rng(seed: u64, prime: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ prime)
}

impl SparsePoly {
    pub fn zero(field: PrimeField, dim: usize) -> Self {
        SparsePoly {
            field,
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: PrimeField, dim: usize, c: FieldElem) -> Self {
        Self::monomial(field, vec![0; dim], c)
    }

    pub fn monomial(field: PrimeField, exp: Point, c: FieldElem) -> Self {
        let mut p = Self::zero(field, exp.len());
        p.add_term(exp, c);
        p
    }

    /// Builds a polynomial from `(exponent, integer coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I>(field: PrimeField, dim: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Point, i64)>,
    {
        let mut p = Self::zero(field, dim);
        for (exp, c) in terms {
            if exp.len() != dim {
                return Err(PolyError::DimensionMismatch(dim, exp.len()));
            }
            p.add_term(exp, field.from_i64(c));
        }
        Ok(p)
    }

    pub fn from_field_terms<I>(field: PrimeField, dim: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Point, FieldElem)>,
    {
        let mut p = Self::zero(field, dim);
        for (exp, c) in terms {
            p.add_term(exp, c);
        }
        p
    }

    /// Adds `c * x^exp` in place.
    pub fn add_term(&mut self, exp: Point, c: FieldElem) {
        assert_eq!(exp.len(), self.dim);
        let f = self.field;
        let entry = self.terms.entry(exp).or_insert(FieldElem::ZERO);
        *entry = f.add(*entry, c);
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<Point, FieldElem> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[i64]) -> FieldElem {
        self.terms.get(exp).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn support(&self) -> PointSet {
        PointSet::new(self.dim, self.terms.keys().cloned())
            .expect("exponents have the right length")
    }

    /// Keeps only the terms with exponents in `s`.
    pub fn restrict(&self, s: &PointSet) -> SparsePoly {
        SparsePoly {
            field: self.field,
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| s.contains(e))
                .map(|(e, c)| (e.clone(), *c))
                .collect(),
        }
    }

    /// Multiplies by the monomial `x^v`.
    pub fn shift(&self, v: &[i64]) -> SparsePoly {
        SparsePoly {
            field: self.field,
            dim: self.dim,
            terms: self.terms.iter().map(|(e, c)| (add(e, v), *c)).collect(),
        }
    }

    pub fn scale(&self, s: FieldElem) -> SparsePoly {
        if s.is_zero() {
            return Self::zero(self.field, self.dim);
        }
        SparsePoly {
            field: self.field,
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), self.field.mul(*c, s)))
                .collect(),
        }
    }

    pub fn neg(&self) -> SparsePoly {
        self.scale(self.field.neg(self.field.one()))
    }

    fn check_compatible(&self, other: &SparsePoly) -> Result<(), PolyError> {
        if self.field != other.field {
            return Err(PolyError::FieldMismatch);
        }
        if self.dim != other.dim {
            return Err(PolyError::DimensionMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    pub fn add(&self, other: &SparsePoly) -> Result<SparsePoly, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), *c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SparsePoly) -> Result<SparsePoly, PolyError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &SparsePoly) -> Result<SparsePoly, PolyError> {
        self.check_compatible(other)?;
        let f = self.field;
        let mut acc: BTreeMap<Point, FieldElem> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = acc.entry(add(ea, eb)).or_insert(FieldElem::ZERO);
                *e = f.add(*e, f.mul(*ca, *cb));
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(SparsePoly {
            field: f,
            dim: self.dim,
            terms: acc,
        })
    }

    /// Partial derivative in variable `var` (Laurent exponents allowed).
    pub fn derivative(&self, var: usize) -> SparsePoly {
        let f = self.field;
        let mut out = Self::zero(f, self.dim);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[var] -= 1;
            out.add_term(d, f.mul(*c, f.from_i64(e[var])));
        }
        out
    }

    /// Evaluates at a torus point (all coordinates nonzero).
    pub fn eval(&self, x: &[FieldElem]) -> Result<FieldElem, PolyError> {
        if x.len() != self.dim {
            return Err(PolyError::DimensionMismatch(self.dim, x.len()));
        }
        if x.iter().any(|v| v.is_zero()) {
            return Err(PolyError::ZeroCoordinate);
        }
        let f = self.field;
        Ok(self.terms.iter().fold(f.zero(), |acc, (e, c)| {
            let m = e
                .iter()
                .zip(x)
                .fold(*c, |m, (&k, &xi)| f.mul(m, f.pow_signed(xi, k)));
            f.add(acc, m)
        }))
    }

    /// Coefficients uniform on `F_p^*` at every point of `support`.
    pub fn random_generic<R: Rng>(
        field: PrimeField,
        support: &PointSet,
        rng: &mut R,
    ) -> Result<SparsePoly, PolyError> {
        if support.is_empty() {
            return Err(PolyError::EmptySupport);
        }
        let terms = support
            .iter()
            .map(|e| (e.clone(), field.elem(rng.gen_range(1..field.modulus()))))
            .collect();
        Ok(SparsePoly {
            field,
            dim: support.dim(),
            terms,
        })
    }

    /// [`SparsePoly::random_generic`] with a fresh RNG derived from `(seed, prime)`.
    pub fn random_generic_seeded(
        field: PrimeField,
        support: &PointSet,
        seed: u64,
    ) -> Result<SparsePoly, PolyError> {
        let mut rng = seeded_rng(seed, field.modulus());
        Self::random_generic(field, support, &mut rng)
    }
}

/// Samples one generic polynomial per support, sequentially from one RNG stream.
pub fn random_system(
    field: PrimeField,
    supports: &[PointSet],
    seed: u64,
) -> Result<Vec<SparsePoly>, PolyError> {
    let mut rng = seeded_rng(seed, field.modulus());
    supports
        .iter()
        .map(|s| SparsePoly::random_generic(field, s, &mut rng))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DEFAULT_PRIME;

    fn fp() -> PrimeField {
        PrimeField::new(DEFAULT_PRIME).unwrap()
    }

    fn poly(terms: &[(&[i64], i64)]) -> SparsePoly {
        let dim = terms[0].0.len();
        SparsePoly::from_terms(fp(), dim, terms.iter().map(|(e, c)| (e.to_vec(), *c))).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let a = poly(&[(&[0], 1), (&[1], 1)]);
        let b = poly(&[(&[0], 1), (&[1], -1)]);
        assert_eq!(a.mul(&b).unwrap(), poly(&[(&[0], 1), (&[2], -1)]));
        assert!(a.add(&a.neg()).unwrap().is_zero());
        let g = poly(&[(&[2, 1], 3), (&[0, -1], 1), (&[1, 0], 5)]);
        assert_eq!(g.derivative(1), poly(&[(&[2, 0], 3), (&[0, -2], -1)]));
    }

    #[test]
    fn restrict_examples() {
        let f = poly(&[(&[0], 1), (&[1], 1)]);
        assert_eq!(f.restrict(&f.support()), f);
        let s = PointSet::new(1, vec![vec![0], vec![2]]).unwrap();
        assert_eq!(f.restrict(&s), poly(&[(&[0], 1)]));
    }

    #[test]
    fn eval_rejects_zero_coordinates() {
        let f = poly(&[(&[-1, 2], 3)]);
        let field = fp();
        assert_eq!(
            f.eval(&[field.zero(), field.one()]),
            Err(PolyError::ZeroCoordinate)
        );
        let two = field.elem(2);
        // 3 * 2^-1 * 2^2 = 6
        assert_eq!(f.eval(&[two, two]).unwrap(), field.elem(6));
    }

    #[test]
    fn sampling_is_reproducible() {
        let field = fp();
        let s = PointSet::new(2, vec![vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        let a = SparsePoly::random_generic_seeded(field, &s, 5).unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(a, SparsePoly::random_generic_seeded(field, &s, 5).unwrap());
        assert_ne!(a, SparsePoly::random_generic_seeded(field, &s, 6).unwrap());
        assert_eq!(
            SparsePoly::random_generic_seeded(field, &PointSet::empty(2), 1),
            Err(PolyError::EmptySupport)
        );
    }
}
