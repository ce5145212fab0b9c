//! Dense exact linear algebra over a prime field.
//!
//! Elimination pivots on the first nonzero entry of each column, scanning
//! columns left to right, so every result depends only on the input matrix.

use crate::field::{FieldElem, PrimeField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

/// Outcome of [`Matrix::solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    /// A particular solution (free variables set to zero) plus a kernel basis.
    Consistent {
        particular: Vec<FieldElem>,
        kernel: Vec<Vec<FieldElem>>,
    },
    Infeasible,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![FieldElem::ZERO; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from integer rows, reducing entries mod p.
    pub fn from_i64_rows(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, field.from_i64(v));
            }
        }
        m
    }

    pub fn from_rows(field: PrimeField, rows: Vec<Vec<FieldElem>>, cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Matrix {
            field,
            rows: nrows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// The submatrix made of the first `n` rows.
    pub fn top_rows(&self, n: usize) -> Matrix {
        let n = n.min(self.rows);
        Matrix {
            field: self.field,
            rows: n,
            cols: self.cols,
            data: self.data[..n * self.cols].to_vec(),
        }
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Gauss-Jordan elimination to reduced row echelon form.
    pub fn echelon(&self) -> Echelon {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c));
            for j in c..m.cols {
                let v = m.get(r, j);
                m.set(r, j, f.mul(v, inv));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElem>> {
        let ech = self.echelon();
        kernel_from_echelon(&ech, self.cols)
    }

    /// Solves `self * x = b`.
    pub fn solve(&self, b: &[FieldElem]) -> Solution {
        assert_eq!(
            b.len(),
            self.rows,
            "right-hand side length must equal row count"
        );
        let f = self.field;
        let mut aug = Matrix::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let ech = aug.echelon();
        if ech.pivots.last() == Some(&self.cols) {
            return Solution::Infeasible;
        }
        let mut particular = vec![f.zero(); self.cols];
        for (r, &c) in ech.pivots.iter().enumerate() {
            particular[c] = ech.reduced.get(r, self.cols);
        }
        // Kernel of the coefficient part: the augmented column is never a pivot here.
        let mut coeff = Matrix::zeros(f, ech.reduced.rows, self.cols);
        for i in 0..ech.reduced.rows {
            for j in 0..self.cols {
                coeff.set(i, j, ech.reduced.get(i, j));
            }
        }
        let kernel = kernel_from_echelon(
            &Echelon {
                reduced: coeff,
                pivots: ech.pivots.clone(),
            },
            self.cols,
        );
        Solution::Consistent { particular, kernel }
    }
}

fn kernel_from_echelon(ech: &Echelon, cols: usize) -> Vec<Vec<FieldElem>> {
    let f = ech.reduced.field;
    let mut is_pivot = vec![false; cols];
    for &c in &ech.pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![f.zero(); cols];
            v[free] = f.one();
            for (r, &pc) in ech.pivots.iter().enumerate() {
                v[pc] = f.neg(ech.reduced.get(r, free));
            }
            v
        })
        .collect()
}

/// Rank of a list of vectors (rows).
pub fn rank_of_vectors(field: PrimeField, vectors: &[Vec<FieldElem>], len: usize) -> usize {
    Matrix::from_rows(field, vectors.to_vec(), len).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DEFAULT_PRIME;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fp() -> PrimeField {
        PrimeField::new(DEFAULT_PRIME).unwrap()
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
        let f = fp();
        let data: Vec<Vec<FieldElem>> = (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| f.elem(rng.gen_range(0..f.modulus())))
                    .collect()
            })
            .collect();
        Matrix::from_rows(f, data, cols)
    }

    #[test]
    fn rank_examples() {
        let f = fp();
        assert_eq!(Matrix::zeros(f, 3, 3).rank(), 0);
        assert_eq!(Matrix::identity(f, 4).rank(), 4);

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let first: Vec<FieldElem> = (0..50)
            .map(|_| f.elem(rng.gen_range(1..f.modulus())))
            .collect();
        let m = Matrix::from_rows(f, vec![first; 50], 50);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        let f = fp();
        assert!(Matrix::identity(f, 3).kernel_basis().is_empty());
        assert_eq!(Matrix::zeros(f, 2, 5).kernel_basis().len(), 5);
        let k = Matrix::from_i64_rows(f, &[vec![1, 1]]).kernel_basis();
        assert_eq!(k.len(), 1);
        // proportional to (1, p-1)
        assert_eq!(f.mul(k[0][0], f.elem(f.modulus() - 1)), k[0][1]);
    }

    #[test]
    fn solve_examples() {
        let f = fp();
        let b: Vec<FieldElem> = [3, 5, 7].iter().map(|&v| f.elem(v)).collect();
        match Matrix::identity(f, 3).solve(&b) {
            Solution::Consistent { particular, kernel } => {
                assert_eq!(particular, b);
                assert!(kernel.is_empty());
            }
            Solution::Infeasible => panic!("identity system is consistent"),
        }
        match Matrix::from_i64_rows(f, &[vec![1, 1]]).solve(&[f.zero()]) {
            Solution::Consistent { particular, kernel } => {
                assert_eq!(particular, vec![f.zero(), f.zero()]);
                assert_eq!(kernel.len(), 1);
            }
            Solution::Infeasible => panic!(),
        }
        let stacked = Matrix::from_i64_rows(f, &[vec![1], vec![1]]);
        assert_eq!(stacked.solve(&[f.zero(), f.one()]), Solution::Infeasible);
    }

    #[test]
    fn rank_nullity_and_kernel_vectors_vanish() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (r, c) in [(4, 7), (7, 4), (6, 6), (1, 9)] {
            let mut m = random_matrix(&mut rng, r, c);
            // force a dependency
            if r > 2 {
                let f = m.field();
                for j in 0..c {
                    let v = f.add(m.get(0, j), m.get(1, j));
                    m.set(2, j, v);
                }
            }
            let k = m.kernel_basis();
            assert_eq!(m.rank() + k.len(), c);
            for v in &k {
                assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn rank_invariant_under_row_permutation_and_scaling() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = fp();
        let m = random_matrix(&mut rng, 5, 8);
        let base = m.rank();
        let mut rows: Vec<Vec<FieldElem>> = (0..5).map(|i| m.row(i).to_vec()).collect();
        rows.reverse();
        for r in rows.iter_mut() {
            let s = f.elem(rng.gen_range(1..f.modulus()));
            for x in r.iter_mut() {
                *x = f.mul(*x, s);
            }
        }
        assert_eq!(Matrix::from_rows(f, rows, 8).rank(), base);
        assert_eq!(m.rank(), base, "repeated runs agree");
    }
}
