//! Arbitrary-precision rationals and a few conversions used by the polytope code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RationalError {
    #[error("cannot parse rational `{0}`")]
    Parse(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("value {0} does not fit in i64")]
    Overflow(String),
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational, RationalError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| RationalError::Parse(s.to_string()))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| RationalError::Parse(s.to_string()))?;
    if d.is_zero() {
        return Err(RationalError::ZeroDenominator(s.to_string()));
    }
    Ok(Rational::new(n, d))
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn floor_i64(r: &Rational) -> Result<i64, RationalError> {
    r.floor()
        .to_integer()
        .to_i64()
        .ok_or_else(|| RationalError::Overflow(r.to_string()))
}

pub fn ceil_i64(r: &Rational) -> Result<i64, RationalError> {
    r.ceil()
        .to_integer()
        .to_i64()
        .ok_or_else(|| RationalError::Overflow(r.to_string()))
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn dot_int_rat(a: &[i64], x: &[Rational]) -> Rational {
    a.iter().zip(x).fold(Rational::zero(), |acc, (&ai, xi)| {
        acc + xi * BigInt::from(ai)
    })
}

pub fn to_rational_point(p: &[i64]) -> Vec<Rational> {
    p.iter().map(|&v| int(v)).collect()
}

/// Least common multiple of the denominators of a family of rationals.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a Rational>>(values: I) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Rank of a rational matrix given by rows.
pub fn rational_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let factor = &m[i][c] / &pivot;
                for j in c..cols {
                    let delta = &factor * &m[rank][j];
                    m[i][j] -= delta;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Solves a square rational system; `None` when singular.
pub fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        b.swap(c, p);
        let pivot = a[c][c].clone();
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let factor = &a[i][c] / &pivot;
                for j in c..n {
                    let delta = &factor * &a[c][j];
                    a[i][j] -= delta;
                }
                let delta = &factor * &b[c];
                b[i] -= delta;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), int(-4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&rat(-3, 2)), "-3/2");
        assert_eq!(format_rational(&int(5)), "5");
    }

    #[test]
    fn floor_ceil() {
        assert_eq!(floor_i64(&rat(-3, 2)).unwrap(), -2);
        assert_eq!(ceil_i64(&rat(-3, 2)).unwrap(), -1);
        assert_eq!(ceil_i64(&int(4)).unwrap(), 4);
    }

    #[test]
    fn square_solve() {
        let a = vec![vec![int(1), int(1)], vec![int(1), int(-1)]];
        let x = solve_square(a, vec![int(3), int(1)]).unwrap();
        assert_eq!(x, vec![int(2), int(1)]);
        assert!(solve_square(
            vec![vec![int(1), int(1)], vec![int(2), int(2)]],
            vec![int(0), int(0)]
        )
        .is_none());
        assert_eq!(
            rational_rank(&[vec![int(1), int(2)], vec![int(2), int(4)]]),
            1
        );
    }
}
