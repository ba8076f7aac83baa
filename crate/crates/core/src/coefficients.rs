//! Closed forms for refined path counts.
//!
//! For `ℓ ≤ 0` the vector `T_{ℓ,r} = (Tev_{g_floor + j, ℓ, r})_{j ≥ 0}`
//! expands as `Σ_s c^s_{ℓ,r} E_s`, where `c^s_{ℓ,r}` is the number of paths
//! in `P(ℓ, r)` of index `s`. This module computes those coefficients, the
//! axis-meeting counts `d(k; 0, 1, u′, 1)` and the first entry past the floor
//! `T_{ℓ,1}[1]` without enumerating anything.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primitives::{binom, catalan, e_entry, exact_div, BigCount};

/// `c^s_{ℓ,r}`, the number of paths in `P(ℓ, r)` with index `s`.
///
/// `ℓ = 0` gives `δ(s = r)` and `(ℓ, r) = (−1, 1)` gives `δ(s = 3)`. Every
/// other case uses the three-term formula on `3 ≤ s ≤ r − ℓ + 1`:
///
/// ```text
/// (s−2)(s+r−4)/(|ℓ|−2+r) · C(m, |ℓ|+2−s) + C(m, |ℓ|−1) − C(m, |ℓ|+r−2),   m = 2|ℓ|+r−s−1
/// ```
///
/// including `ℓ = −1, r ≥ 2`.
pub fn c_coeff(ell: i64, r: i64, s: i64) -> Result<BigCount> {
    if ell > 0 {
        return Err(Error::PositiveEll(ell));
    }
    if r < 1 {
        return Err(Error::NonPositiveR(r));
    }
    if ell == 0 {
        return Ok(BigCount::from(u64::from(s == r)));
    }
    if ell == -1 && r == 1 {
        return Ok(BigCount::from(u64::from(s == 3)));
    }
    if s < 3 || s > r - ell + 1 {
        return Ok(BigCount::zero());
    }
    let a = -ell;
    let m = 2 * a + r - s - 1;
    let numerator = BigInt::from((s - 2) * (s + r - 4)) * binom(m, a + 2 - s);
    let mut value = exact_div(
        &numerator,
        &BigInt::from(a - 2 + r),
        "expansion coefficient",
    )?;
    value += binom(m, a - 1);
    value -= binom(m, a + r - 2);
    BigCount::from_signed(value, "expansion coefficient")
}

/// `T_{ℓ,r}` written as nonnegative integer coefficients on the `E_s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expansion {
    pub ell: i64,
    pub r: i64,
    /// `s ↦ c^s`, zeros omitted.
    pub coeffs: BTreeMap<i64, BigCount>,
}

impl Expansion {
    /// Builds an expansion from an index histogram of enumerated paths.
    pub fn from_histogram(ell: i64, r: i64, hist: &BTreeMap<usize, u64>) -> Self {
        let coeffs = hist
            .iter()
            .filter(|(_, &c)| c > 0)
            .map(|(&s, &c)| (s as i64, BigCount::from(c)))
            .collect();
        Expansion { ell, r, coeffs }
    }

    /// `Σ_s c^s`, which is `|P(ℓ, r)|`.
    pub fn total(&self) -> BigCount {
        self.coeffs.values().cloned().sum()
    }

    /// `Σ_s c^s E_s[j]`, i.e. `Tev_{g_floor + j, ℓ, r}` (0 when `j < 0`).
    pub fn evaluate(&self, j: i64) -> Result<BigCount> {
        let mut acc = BigCount::zero();
        for (&s, c) in &self.coeffs {
            acc += &(c * &e_entry(s, j)?);
        }
        Ok(acc)
    }
}

/// Renders as `28E3 + 32E4 + E7`: ascending `s`, unit coefficients bare.
impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (s, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *c != 1u64 {
                write!(f, "{c}")?;
            }
            write!(f, "E{s}")?;
        }
        Ok(())
    }
}

pub fn expand(ell: i64, r: i64) -> Result<Expansion> {
    let mut coeffs = BTreeMap::new();
    for s in 1..=r - ell + 1 {
        let c = c_coeff(ell, r, s)?;
        if !c.is_zero() {
            coeffs.insert(s, c);
        }
    }
    Ok(Expansion { ell, r, coeffs })
}

/// `d(k; 0, 1, u′, 1) = C(−2u′−k, −u′−k+1) · (k−1) / (−u′)`.
pub fn d_closed_axis(k: i64, u2: i64) -> Result<BigCount> {
    if k < 2 {
        return Err(Error::AxisMeetings(k));
    }
    if u2 >= 0 {
        return Err(Error::NonNegativeEll(u2));
    }
    let numerator = binom(-2 * u2 - k, -u2 - k + 1) * (k - 1);
    let value = exact_div(&numerator, &BigInt::from(-u2), "axis-meeting count")?;
    BigCount::from_signed(value, "axis-meeting count")
}

/// `T_{ℓ,1}[1] = Tev_{g_floor+1, ℓ, 1}` for `ℓ < 0`, with `a = |ℓ|`:
///
/// ```text
/// |P(ℓ,1)| + 3/(2a+1) · C(2a+1, a−1)
///          + 4(2a−1)(2a+1)(C(2a−2, a−1) − C(2a−2, a)) / ((a+1)(a+2))
/// ```
///
/// The middle term sums the return steps over `P(ℓ, 1)` and the last sums
/// the visits to `ℓ = 0`.
pub fn t_ell1_j1(ell: i64) -> Result<BigCount> {
    if ell >= 0 {
        return Err(Error::NonNegativeEll(ell));
    }
    let a = -ell;
    let paths = catalan(a)?.to_bigint();
    let returns = exact_div(
        &(binom(2 * a + 1, a - 1) * 3),
        &BigInt::from(2 * a + 1),
        "return-step sum",
    )?;
    let vertical = exact_div(
        &((binom(2 * a - 2, a - 1) - binom(2 * a - 2, a)) * (4 * (2 * a - 1) * (2 * a + 1))),
        &BigInt::from((a + 1) * (a + 2)),
        "vertical-axis visit sum",
    )?;
    let total = paths + returns + vertical;
    debug_assert!(!total.is_zero());
    BigCount::from_signed(total, "T_{l,1}[1]")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_paths::{count_paths_by_index, d_count, enumerate_paths, path_stats};

    fn c(ell: i64, r: i64, s: i64) -> u64 {
        c_coeff(ell, r, s).unwrap().to_u64().unwrap()
    }

    #[test]
    fn coefficient_spot_values() {
        assert_eq!((c(-3, 1, 4), c(-3, 1, 5)), (2, 3));
        assert_eq!(c(-1, 2, 3), 2);
        assert_eq!([4, 5, 6].map(|s| c(-4, 1, s)), [4, 6, 4]);
        assert_eq!(c(-1, 1, 3), 1);
        assert_eq!(c(-1, 1, 4), 0);
        assert_eq!(c(0, 3, 3), 1);
        assert_eq!(c(0, 3, 2), 0);
    }

    #[test]
    fn r_equals_one_display_formula() {
        // c^s_{ℓ,1} = (s−2)(s−3)/(|ℓ|−1) · C(2|ℓ|−s, |ℓ|+2−s) for ℓ < −1
        for a in 2..=10i64 {
            for s in 3..=a + 2 {
                let num = BigInt::from((s - 2) * (s - 3)) * binom(2 * a - s, a + 2 - s);
                let expected = exact_div(&num, &BigInt::from(a - 1), "test").unwrap();
                assert_eq!(c_coeff(-a, 1, s).unwrap().to_bigint(), expected);
            }
        }
    }

    #[test]
    fn expansions() {
        assert_eq!(expand(-2, 3).unwrap().to_string(), "4E3 + 4E4 + E5");
        assert_eq!(expand(0, 5).unwrap().to_string(), "E5");
        assert_eq!(
            expand(-5, 2).unwrap().to_string(),
            "28E3 + 42E4 + 36E5 + 20E6 + 6E7"
        );
        assert_eq!(expand(-1, 1).unwrap().to_string(), "E3");
    }

    #[test]
    fn coefficients_match_enumeration() {
        for ell in -6..=0 {
            for r in 1..=6 {
                let hist = count_paths_by_index(ell, r).unwrap();
                for s in -1..=r - ell + 3 {
                    let brute = hist.get(&(s.max(0) as usize)).copied().unwrap_or(0);
                    let brute = if s < 0 { 0 } else { brute };
                    assert_eq!(c(ell, r, s), brute, "ell={ell} r={r} s={s}");
                }
                let exp = expand(ell, r).unwrap();
                assert_eq!(exp, Expansion::from_histogram(ell, r, &hist));
                assert_eq!(exp.total(), enumerate_paths(ell, r).unwrap().len() as u64);
            }
        }
    }

    #[test]
    fn support_bounds() {
        for ell in -7..=0 {
            for r in 1..=7 {
                for s in -2..=r - ell + 5 {
                    let v = c_coeff(ell, r, s).unwrap();
                    if s > r - ell + 1 || (ell < 0 && s < 3) {
                        assert!(v.is_zero(), "ell={ell} r={r} s={s}");
                    }
                }
            }
        }
    }

    #[test]
    fn axis_closed_form() {
        assert_eq!(d_closed_axis(2, -3).unwrap(), 2u64);
        assert_eq!(d_closed_axis(4, -3).unwrap(), 1u64);
        let total: BigCount = (2..=4).map(|k| d_closed_axis(k, -3).unwrap()).sum();
        assert_eq!(total, 5u64);
        for u2 in -8..=-1 {
            for k in 2..=-u2 + 1 {
                assert_eq!(d_closed_axis(k, u2).unwrap(), d_count(k, 0, 1, u2, 1));
            }
        }
        assert_eq!(d_closed_axis(1, -3), Err(Error::AxisMeetings(1)));
        assert_eq!(d_closed_axis(2, 0), Err(Error::NonNegativeEll(0)));
    }

    #[test]
    fn first_entry_past_floor() {
        assert_eq!(t_ell1_j1(-1).unwrap(), 4u64);
        assert_eq!(t_ell1_j1(-2).unwrap(), 10u64);
        assert_eq!(t_ell1_j1(-3).unwrap(), 28u64);
        assert_eq!(t_ell1_j1(0), Err(Error::NonNegativeEll(0)));
    }

    #[test]
    fn return_step_sum_matches_enumeration() {
        for a in 1..=9i64 {
            let paths = enumerate_paths(-a, 1).unwrap();
            let returns: usize = paths.iter().map(|p| path_stats(p).returns).sum();
            let closed = exact_div(
                &(binom(2 * a + 1, a - 1) * 3),
                &BigInt::from(2 * a + 1),
                "test",
            )
            .unwrap();
            assert_eq!(closed, BigInt::from(returns), "a={a}");
        }
    }

    #[test]
    fn coefficient_rejects_positive_ell() {
        assert_eq!(c_coeff(1, 1, 1), Err(Error::PositiveEll(1)));
        assert_eq!(c_coeff(-1, 0, 1), Err(Error::NonPositiveR(0)));
    }
}
