//! Closed-form Turán numbers for paths, single cycles, and disjoint unions of
//! cycles, in exact integer arithmetic.
//!
//! Every evaluator returns the formula value together with a flag telling
//! whether the uniformity meets the hypothesis under which the formula is
//! known to be the Turán number. The known results also need `n` to be
//! sufficiently large; that threshold is never quantified, so the flag only
//! covers `k` (and `t >= 1` for paths). The exact-search module probes where
//! small `n` breaks the formulas.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("at least one cycle length is required")]
    NoLengths,
    #[error("cycle lengths must be at least 3, got {0}")]
    CycleTooShort(usize),
    #[error("uniformity must be at least 2, got {0}")]
    Uniformity(usize),
    #[error("path length {0} is outside the closed form (needs length >= 2)")]
    UnsupportedPathLength(usize),
    #[error("number of copies must be at least 1")]
    NoCopies,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CycleVariant {
    Minimal,
    Linear,
}

impl CycleVariant {
    /// Smallest uniformity for which the formula is a theorem.
    pub fn min_uniformity(self) -> usize {
        match self {
            CycleVariant::Minimal => 4,
            CycleVariant::Linear => 5,
        }
    }
}

impl std::fmt::Display for CycleVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CycleVariant::Minimal => "minimal",
            CycleVariant::Linear => "linear",
        })
    }
}

impl std::str::FromStr for CycleVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "minimal" => Ok(CycleVariant::Minimal),
            "linear" => Ok(CycleVariant::Linear),
            other => Err(format!("unknown cycle variant `{other}` (expected minimal or linear)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaParams {
    pub n: usize,
    pub k: usize,
    pub lengths: Vec<usize>,
    pub variant: CycleVariant,
}

impl FormulaParams {
    pub fn new(n: usize, k: usize, lengths: Vec<usize>, variant: CycleVariant) -> Result<Self, FormulaError> {
        if k < 2 {
            return Err(FormulaError::Uniformity(k));
        }
        if lengths.is_empty() {
            return Err(FormulaError::NoLengths);
        }
        if let Some(&l) = lengths.iter().find(|&&l| l < 3) {
            return Err(FormulaError::CycleTooShort(l));
        }
        Ok(FormulaParams { n, k, lengths, variant })
    }

    pub fn derived(&self) -> DerivedParams {
        let all_even = self.lengths.iter().all(|l| l % 2 == 0);
        let t = compute_t(&self.lengths);
        DerivedParams {
            t,
            all_even,
            extra: even_correction(self.n, self.k, t, all_even, self.variant),
        }
    }
}

/// `t`, parity, and the even-case correction term (`I` for minimal cycles,
/// `J` for linear ones).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedParams {
    pub t: usize,
    pub all_even: bool,
    pub extra: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub value: BigUint,
    pub t: usize,
    /// Even-case correction included in `value` (0 when not applicable).
    pub extra: BigUint,
    pub within_hypothesis: bool,
}

/// `C(a, b)`, zero whenever `b < 0` or `b > a` (including negative `a`).
pub fn binom(a: i64, b: i64) -> BigUint {
    if b < 0 || a < 0 || b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigUint::one();
    for i in 1..=b {
        acc *= BigUint::from((a - b + i) as u64);
        acc /= BigUint::from(i as u64);
    }
    acc
}

fn c(a: usize, b: usize) -> BigUint {
    binom(a as i64, b as i64)
}

/// `C(n, k) - C(n - t, k)`, with `C(negative, k) = 0`.
fn meeting_count(n: usize, k: usize, t: usize) -> BigUint {
    c(n, k) - binom(n as i64 - t as i64, k as i64)
}

/// `sum_{i=1..t} C(n - i, k - 1)`: the number of k-sets meeting a fixed t-set.
pub fn meeting_sum(n: usize, k: usize, t: usize) -> BigUint {
    (1..=t)
        .map(|i| binom(n as i64 - i as i64, k as i64 - 1))
        .fold(BigUint::zero(), |acc, x| acc + x)
}

/// `sum_i floor((l_i + 1) / 2) - 1`.
pub fn compute_t(lengths: &[usize]) -> usize {
    lengths.iter().map(|l| (l + 1) / 2).sum::<usize>() - 1
}

fn even_correction(n: usize, k: usize, t: usize, all_even: bool, variant: CycleVariant) -> BigUint {
    match (all_even, variant) {
        (false, _) => BigUint::zero(),
        (true, CycleVariant::Minimal) => BigUint::one(),
        (true, CycleVariant::Linear) => binom(n as i64 - t as i64 - 2, k as i64 - 2),
    }
}

pub fn family_turan(params: &FormulaParams) -> Evaluation {
    let d = params.derived();
    Evaluation {
        value: meeting_count(params.n, params.k, d.t) + &d.extra,
        t: d.t,
        extra: d.extra,
        within_hypothesis: params.k >= params.variant.min_uniformity(),
    }
}

/// Disjoint minimal cycles: `C(n,k) - C(n-t,k) + I`.
pub fn minimal_family_turan(n: usize, k: usize, lengths: &[usize]) -> Result<Evaluation, FormulaError> {
    Ok(family_turan(&FormulaParams::new(n, k, lengths.to_vec(), CycleVariant::Minimal)?))
}

/// Disjoint linear cycles: `C(n,k) - C(n-t,k) + J`.
pub fn linear_family_turan(n: usize, k: usize, lengths: &[usize]) -> Result<Evaluation, FormulaError> {
    Ok(family_turan(&FormulaParams::new(n, k, lengths.to_vec(), CycleVariant::Linear)?))
}

/// Single cycle of length `l = 2t+1` or `2t+2`, evaluated from the
/// single-cycle statements rather than the family formula.
pub fn single_cycle_turan(n: usize, k: usize, length: usize, variant: CycleVariant) -> Result<Evaluation, FormulaError> {
    if k < 2 {
        return Err(FormulaError::Uniformity(k));
    }
    if length < 3 {
        return Err(FormulaError::CycleTooShort(length));
    }
    let t = (length - 1) / 2;
    let extra = if length % 2 == 1 {
        BigUint::zero()
    } else {
        match variant {
            CycleVariant::Minimal => BigUint::one(),
            CycleVariant::Linear => binom(n as i64 - t as i64 - 2, k as i64 - 2),
        }
    };
    Ok(Evaluation {
        value: meeting_count(n, k, t) + &extra,
        t,
        extra,
        within_hypothesis: k >= variant.min_uniformity(),
    })
}

/// Linear path of length `l = 2t+1` (sum form) or `2t+2` (plus
/// `C(n-t-2, k-2)`). Length 1 has no closed form here.
pub fn linear_path_turan(n: usize, k: usize, length: usize) -> Result<Evaluation, FormulaError> {
    if k < 2 {
        return Err(FormulaError::Uniformity(k));
    }
    if length < 2 {
        return Err(FormulaError::UnsupportedPathLength(length));
    }
    let t = (length - 1) / 2;
    let extra = if length % 2 == 0 {
        binom(n as i64 - t as i64 - 2, k as i64 - 2)
    } else {
        BigUint::zero()
    };
    Ok(Evaluation {
        value: meeting_sum(n, k, t) + &extra,
        t,
        extra,
        within_hypothesis: k >= 3 && t >= 1,
    })
}

/// Bound on k-uniform hypergraphs with no two edges meeting in exactly one
/// vertex: `C(n, k-2)`. Meaningful for `k >= 3`.
pub fn kmw_bound(n: usize, k: usize) -> BigUint {
    binom(n as i64, k as i64 - 2)
}

/// `r` disjoint copies of one cycle length, with `t = r*floor((l+1)/2) - 1`.
pub fn r_copies_turan(
    n: usize,
    k: usize,
    length: usize,
    copies: usize,
    variant: CycleVariant,
) -> Result<Evaluation, FormulaError> {
    if k < 2 {
        return Err(FormulaError::Uniformity(k));
    }
    if length < 3 {
        return Err(FormulaError::CycleTooShort(length));
    }
    if copies == 0 {
        return Err(FormulaError::NoCopies);
    }
    let t = copies * ((length + 1) / 2) - 1;
    let extra = even_correction(n, k, t, length % 2 == 0, variant);
    Ok(Evaluation {
        value: meeting_count(n, k, t) + &extra,
        t,
        extra,
        within_hypothesis: k >= variant.min_uniformity(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(10, 4), big(210));
        assert_eq!(binom(5, 0), big(1));
        assert_eq!(binom(4, 5), big(0));
        assert_eq!(binom(4, -1), big(0));
        assert_eq!(binom(-3, 2), big(0));
        assert_eq!(binom(0, 0), big(1));
        // beyond u64
        assert_eq!(binom(100, 50).to_string(), "100891344545564193334812497256");
    }

    #[test]
    fn t_values() {
        assert_eq!(compute_t(&[3]), 1);
        assert_eq!(compute_t(&[3, 3]), 3);
        assert_eq!(compute_t(&[5, 4]), 4);
    }

    #[test]
    fn minimal_family_values() {
        assert_eq!(minimal_family_turan(10, 4, &[3]).unwrap().value, big(84));
        assert_eq!(minimal_family_turan(12, 4, &[4]).unwrap().value, big(166));
        assert_eq!(minimal_family_turan(14, 4, &[3, 3]).unwrap().value, big(671));
    }

    #[test]
    fn linear_family_values() {
        assert_eq!(linear_family_turan(12, 5, &[3]).unwrap().value, big(330));
        let e = linear_family_turan(12, 5, &[4]).unwrap();
        assert_eq!((e.value, e.extra), (big(414), big(84)));
        assert_eq!(linear_family_turan(13, 5, &[3, 3]).unwrap().value, big(1035));
    }

    #[test]
    fn hypothesis_flags() {
        assert!(minimal_family_turan(10, 4, &[3]).unwrap().within_hypothesis);
        assert!(!minimal_family_turan(10, 3, &[3]).unwrap().within_hypothesis);
        assert!(!linear_family_turan(10, 4, &[3]).unwrap().within_hypothesis);
        assert!(linear_family_turan(10, 5, &[3]).unwrap().within_hypothesis);
    }

    #[test]
    fn path_values() {
        assert_eq!(linear_path_turan(10, 3, 3).unwrap().value, big(36));
        assert_eq!(linear_path_turan(10, 3, 4).unwrap().value, big(43));
        assert_eq!(linear_path_turan(9, 4, 3).unwrap().value, big(56));
        assert!(matches!(linear_path_turan(10, 3, 1), Err(FormulaError::UnsupportedPathLength(1))));
        assert!(!linear_path_turan(10, 3, 2).unwrap().within_hypothesis);
    }

    #[test]
    fn single_cycle_values() {
        assert_eq!(single_cycle_turan(10, 4, 3, CycleVariant::Minimal).unwrap().value, big(84));
        assert_eq!(single_cycle_turan(12, 5, 4, CycleVariant::Linear).unwrap().value, big(414));
        assert_eq!(single_cycle_turan(12, 4, 4, CycleVariant::Minimal).unwrap().value, big(166));
    }

    #[test]
    fn kmw_values() {
        assert_eq!(kmw_bound(6, 3), big(6));
        assert_eq!(kmw_bound(10, 4), big(45));
        for n in 1..20 {
            assert_eq!(kmw_bound(n, 3), big(n as u64));
        }
    }

    #[test]
    fn copies_values() {
        assert_eq!(r_copies_turan(14, 4, 3, 2, CycleVariant::Minimal).unwrap().value, big(671));
        assert_eq!(r_copies_turan(13, 5, 3, 2, CycleVariant::Linear).unwrap().value, big(1035));
        assert_eq!(
            r_copies_turan(15, 4, 5, 1, CycleVariant::Minimal).unwrap(),
            single_cycle_turan(15, 4, 5, CycleVariant::Minimal).unwrap()
        );
    }

    #[test]
    fn small_n_does_not_underflow() {
        let e = linear_family_turan(3, 5, &[4, 4]).unwrap();
        assert_eq!(e.value, big(0));
        assert_eq!(minimal_family_turan(5, 4, &[3]).unwrap().value, big(4));
    }

    #[test]
    fn invalid_params() {
        assert_eq!(minimal_family_turan(10, 4, &[]).unwrap_err(), FormulaError::NoLengths);
        assert_eq!(minimal_family_turan(10, 4, &[2]).unwrap_err(), FormulaError::CycleTooShort(2));
        assert_eq!(minimal_family_turan(10, 1, &[3]).unwrap_err(), FormulaError::Uniformity(1));
    }
}
