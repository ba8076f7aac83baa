//! Closed binomial formulas for the Tevelev degrees.
//!
//! For a valid triple,
//!
//! ```text
//! r = 1:  2^g − 2 Σ_{i=0}^{−ℓ−2} C(g,i) + (−ℓ−2) C(g,−ℓ−1) + ℓ C(g,−ℓ)
//! r > 1:  2^g − 2 Σ_{i=0}^{−ℓ−2} C(g,i) + (−ℓ+r−3) C(g,−ℓ−1) + (ℓ−1) C(g,−ℓ)
//!             − Σ_{i=−ℓ+1}^{r−ℓ−2} C(g,i)
//! ```
//!
//! Sums whose lower bound exceeds the upper bound are empty.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::primitives::{binom, is_valid, BigCount, TevParams};

/// `Tev_{g,ℓ,r}` from the master formula, 0 outside the valid domain.
pub fn tev_closed(p: TevParams) -> Result<BigCount> {
    p.check()?;
    if !is_valid(&p) {
        return Ok(BigCount::zero());
    }
    BigCount::from_signed(master_formula(p.g, p.ell, p.r), "master formula")
}

/// The master formula evaluated verbatim with no validity gate, in signed
/// arithmetic. Only meaningful for `g ≥ 0`, `r ≥ 1`.
pub fn master_formula(g: i64, ell: i64, r: i64) -> BigInt {
    let mut value = BigInt::one() << (g as u64);
    value -= 2 * binom_sum(g, 0, -ell - 2);
    if r == 1 {
        value += (-ell - 2) * binom(g, -ell - 1);
        value += ell * binom(g, -ell);
    } else {
        value += (-ell + r - 3) * binom(g, -ell - 1);
        value += (ell - 1) * binom(g, -ell);
        value -= binom_sum(g, -ell + 1, r - ell - 2);
    }
    value
}

/// `Σ_{i=lo}^{hi} C(n, i)`, empty when `lo > hi`.
fn binom_sum(n: i64, lo: i64, hi: i64) -> BigInt {
    (lo.max(0)..=hi.min(n)).map(|i| binom(n, i)).sum()
}

/// The `ℓ ≥ 0` specialization: `2^g` when `ℓ ≥ r`, otherwise the `ℓ = 0`
/// formula at the shifted fiber size `r − ℓ`, i.e.
/// `2^g − Σ_{i=0}^{r−ℓ−2} C(g, i)`.
pub fn tev_nonneg_ell(p: TevParams) -> Result<BigCount> {
    p.check()?;
    if p.ell < 0 {
        return Err(Error::NegativeEll(p.ell));
    }
    if !is_valid(&p) {
        return Ok(BigCount::zero());
    }
    let mut value = BigInt::one() << (p.g as u64);
    if p.ell < p.r {
        value -= binom_sum(p.g, 0, p.r - p.ell - 2);
    }
    BigCount::from_signed(value, "nonnegative-ell formula")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primitives::catalan;
    use crate::recursion::{tev_recursive, MemoTable};

    fn closed(g: i64, ell: i64, r: i64) -> BigCount {
        tev_closed(TevParams { g, ell, r }).unwrap()
    }

    #[test]
    fn spot_values() {
        assert_eq!(closed(5, -2, 1), 10u64);
        assert_eq!(master_formula(5, -2, 1), BigInt::from(32 - 2 - 20));
        assert_eq!(closed(0, 2, 1), 1u64);
        assert_eq!(closed(6, -3, 1), 5u64);
        assert_eq!(closed(1, -1, 1), 0u64);
    }

    #[test]
    fn nonneg_ell_spot_values() {
        let f = |g, ell, r| tev_nonneg_ell(TevParams { g, ell, r }).unwrap();
        assert_eq!(f(4, 3, 2), 16u64);
        assert_eq!(f(3, 0, 2), 7u64);
        assert_eq!(f(2, 0, 3), 1u64);
        assert_eq!(
            tev_nonneg_ell(TevParams {
                g: 2,
                ell: -1,
                r: 1
            }),
            Err(Error::NegativeEll(-1))
        );
    }

    #[test]
    fn rejects_bad_arguments() {
        assert_eq!(
            tev_closed(TevParams {
                g: -2,
                ell: 0,
                r: 1
            }),
            Err(Error::NegativeGenus(-2))
        );
        assert_eq!(
            tev_closed(TevParams { g: 2, ell: 0, r: 0 }),
            Err(Error::NonPositiveR(0))
        );
    }

    #[test]
    fn agrees_with_recursion() {
        let memo = MemoTable::new();
        for g in 0..=20 {
            for ell in -8..=8 {
                for r in 1..=10 {
                    let p = TevParams { g, ell, r };
                    assert_eq!(
                        tev_closed(p).unwrap(),
                        tev_recursive(p, &memo).unwrap(),
                        "{p}"
                    );
                }
            }
        }
    }

    #[test]
    fn nonneg_ell_specialization_consistency() {
        for g in 0..=20 {
            for ell in 0..=8 {
                for r in 1..=10 {
                    let p = TevParams { g, ell, r };
                    assert_eq!(tev_nonneg_ell(p).unwrap(), tev_closed(p).unwrap(), "{p}");
                }
            }
        }
    }

    #[test]
    fn raw_formula_vanishes_on_invalid_nonneg_ell() {
        // For ℓ ≥ 0 the unguarded formula already gives 0 off the valid domain.
        for g in 0..=14 {
            for ell in 0..=6 {
                for r in 1..=12 {
                    let p = TevParams { g, ell, r };
                    if !is_valid(&p) {
                        assert_eq!(master_formula(g, ell, r), BigInt::from(0), "{p}");
                    }
                }
            }
        }
    }

    #[test]
    fn raw_formula_does_not_vanish_below_floor_for_negative_ell() {
        assert_eq!(master_formula(0, -2, 1), BigInt::from(-1));
        assert_eq!(master_formula(0, -1, 3), BigInt::from(2));
        assert_eq!(closed(0, -2, 1), 0u64);
        assert_eq!(closed(0, -1, 3), 0u64);
    }

    #[test]
    fn tevelev_theorem() {
        for g in 0..=30 {
            for ell in 0..=8 {
                assert_eq!(closed(g, ell, 1), BigCount::pow2(g as u64));
            }
        }
    }

    #[test]
    fn full_fiber_is_one() {
        for g in 0..=20 {
            for ell in 0..=6 {
                let p = TevParams {
                    g,
                    ell,
                    r: g + 1 + ell,
                };
                if is_valid(&p) {
                    assert_eq!(tev_closed(p).unwrap(), 1u64, "{p}");
                }
            }
        }
    }

    #[test]
    fn castelnuovo_counts() {
        for m in 1..=12 {
            assert_eq!(closed(2 * m, -m, 1), catalan(m).unwrap());
        }
    }

    #[test]
    fn large_genus_exceeds_u64() {
        let v = closed(100, 0, 1);
        assert_eq!(v, BigCount::pow2(100));
        assert!(v.to_u64().is_none());
    }
}
