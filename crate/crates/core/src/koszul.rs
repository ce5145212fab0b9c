//! Kernel dimension of `phi^C` for `k` copies of one body, predicted from
//! the Koszul complex and checked against a direct rank computation.

use std::fmt;

use crate::membership::{Protocol, Result, SystemSpec};
use crate::pointset::PointSet;

/// Which closed form agrees with the direct rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KoszulReading {
    /// `sum_{j=1}^{k-1} (-1)^{j+1} C(k, j+1) |C ⊖^j B|`.
    Corrected,
    /// `sum_{j=1}^{k-2} (-1)^j C(k, k-j-1) |C ⊖^j B|`.
    AsPrinted,
    Both,
    Neither,
}

impl fmt::Display for KoszulReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            KoszulReading::Corrected => "corrected",
            KoszulReading::AsPrinted => "as-printed",
            KoszulReading::Both => "both",
            KoszulReading::Neither => "neither",
        };
        f.write_str(s)
    }
}

pub fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn eroded_sizes(c: &PointSet, b: &PointSet, upto: usize) -> Vec<i64> {
    let mut sizes = vec![c.len() as i64];
    let mut cur = c.clone();
    for _ in 0..upto {
        cur = cur.erode(b);
        sizes.push(cur.len() as i64);
    }
    sizes
}

/// Alternating sum over the truncated Koszul complex (sign-corrected form).
pub fn koszul_formula(c: &PointSet, b: &PointSet, k: usize) -> i64 {
    if k < 2 {
        return 0;
    }
    let sizes = eroded_sizes(c, b, k - 1);
    (1..k)
        .map(|j| {
            let sign = if j % 2 == 1 { 1 } else { -1 };
            sign * binomial(k, j + 1) * sizes[j]
        })
        .sum()
}

/// The same sum with the summation range, binomial and sign read literally
/// from the printed display.
pub fn koszul_formula_as_printed(c: &PointSet, b: &PointSet, k: usize) -> i64 {
    if k < 3 {
        return 0;
    }
    let sizes = eroded_sizes(c, b, k - 2);
    (1..=k - 2)
        .map(|j| {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * binomial(k, k - j - 1) * sizes[j]
        })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulReport {
    pub k: usize,
    pub formula: i64,
    pub formula_as_printed: i64,
    pub oracle: usize,
    pub confirmed: KoszulReading,
    pub primes: Vec<u64>,
    pub seeds: Vec<u64>,
}

impl KoszulReport {
    pub fn formula_matches(&self) -> bool {
        self.formula == self.oracle as i64
    }
}

/// Direct `dim ker phi^C` for `k` generic generators on `b`, all multipliers on `c`,
/// compared with both closed forms.
pub fn koszul_kernel_dim(
    c: &PointSet,
    b: &PointSet,
    k: usize,
    protocol: &Protocol,
) -> Result<KoszulReport> {
    let spec = SystemSpec::uniform(c.clone(), c.clone(), b.clone(), k);
    let oracle = protocol.agree(|field, seed| Ok(spec.sample(field, seed)?.syzygy_kernel_dim()))?;
    let formula = koszul_formula(c, b, k);
    let printed = koszul_formula_as_printed(c, b, k);
    let oracle_i = oracle as i64;
    let confirmed = match (formula == oracle_i, printed == oracle_i) {
        (true, true) => KoszulReading::Both,
        (true, false) => KoszulReading::Corrected,
        (false, true) => KoszulReading::AsPrinted,
        (false, false) => KoszulReading::Neither,
    };
    Ok(KoszulReport {
        k,
        formula,
        formula_as_printed: printed,
        oracle,
        confirmed,
        primes: protocol.primes.clone(),
        seeds: protocol.seeds.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::HPolytope;

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(3, 3), 1);
        assert_eq!(binomial(2, 3), 0);
    }

    #[test]
    fn formula_values() {
        let e = HPolytope::simplex(2, 1).lattice_points();
        let c = HPolytope::simplex(2, 2).lattice_points();
        assert_eq!(koszul_formula(&c, &e, 2), 3);
        assert_eq!(koszul_formula(&e, &e, 2), 1);
        let b4 = HPolytope::simplex(4, 1).lattice_points();
        let c4 = HPolytope::simplex(4, 2).lattice_points();
        assert_eq!(koszul_formula(&c4, &b4, 3), 14);
        assert_eq!(koszul_formula_as_printed(&c4, &b4, 3), -15);
    }

    #[test]
    fn two_generators_match_direct_rank() {
        let e = HPolytope::simplex(2, 1).lattice_points();
        let c = HPolytope::simplex(2, 2).lattice_points();
        let r = koszul_kernel_dim(&c, &e, 2, &Protocol::default()).unwrap();
        assert_eq!(r.oracle, 3);
        assert!(r.formula_matches());
    }
}
