//! Tevelev degrees from the boundary recursion
//!
//! ```text
//! Tev_{g,ℓ,r} = Tev_{g−1,ℓ,max(1,r−1)} + Tev_{g−1,ℓ+1,r+1}
//! ```
//!
//! with `Tev_{0,ℓ,r} = 1` on the valid genus-0 triples and every invalid
//! triple defined to be 0. This route shares nothing with the closed forms
//! except [`is_valid`], which makes it the reference oracle for them.

use dashmap::DashMap;

use crate::error::Result;
use crate::primitives::{is_valid, BigCount, TevParams};

/// Memoized recursion values keyed on the full triple.
///
/// Safe to share between threads. Two threads may compute the same key
/// concurrently; the first insert wins and both values are equal anyway.
#[derive(Debug, Default)]
pub struct MemoTable {
    entries: DashMap<TevParams, BigCount>,
}

impl MemoTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, p: &TevParams) -> Option<BigCount> {
        self.entries.get(p).map(|v| v.value().clone())
    }

    /// Stores `value` unless the key is already present; returns the stored
    /// value either way.
    pub fn insert_if_absent(&self, p: TevParams, value: BigCount) -> BigCount {
        self.entries.entry(p).or_insert(value).value().clone()
    }
}

/// Evaluates `Tev_{g,ℓ,r}` by recursion on `g`. Rejects `g < 0` or `r < 1`.
pub fn tev_recursive(p: TevParams, memo: &MemoTable) -> Result<BigCount> {
    p.check()?;
    Ok(eval(p, memo))
}

fn eval(p: TevParams, memo: &MemoTable) -> BigCount {
    if !is_valid(&p) {
        return BigCount::zero();
    }
    if p.g == 0 {
        return BigCount::one();
    }
    if let Some(v) = memo.get(&p) {
        return v;
    }
    let lower_r = TevParams {
        g: p.g - 1,
        ell: p.ell,
        r: (p.r - 1).max(1),
    };
    let raised_ell = TevParams {
        g: p.g - 1,
        ell: p.ell + 1,
        r: p.r + 1,
    };
    let value = eval(lower_r, memo) + eval(raised_ell, memo);
    memo.insert_if_absent(p, value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn tev(g: i64, ell: i64, r: i64) -> BigCount {
        tev_recursive(TevParams { g, ell, r }, &MemoTable::new()).unwrap()
    }

    #[test]
    fn spot_values() {
        assert_eq!(tev(3, 0, 1), 8u64);
        assert_eq!(tev(4, -2, 1), 2u64);
        assert_eq!(tev(1, -1, 1), 0u64);
        assert_eq!(tev(6, -3, 1), 5u64);
        assert_eq!(tev(5, -2, 1), 10u64);
    }

    #[test]
    fn genus_zero_base_case() {
        for ell in -3..=5 {
            for r in 1..=8 {
                let expected = u64::from(ell >= 0 && r <= ell + 1);
                assert_eq!(tev(0, ell, r), expected, "ell={ell} r={r}");
            }
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let memo = MemoTable::new();
        let bad_g = TevParams {
            g: -1,
            ell: 0,
            r: 1,
        };
        assert_eq!(tev_recursive(bad_g, &memo), Err(Error::NegativeGenus(-1)));
        let bad_r = TevParams { g: 1, ell: 0, r: 0 };
        assert_eq!(tev_recursive(bad_r, &memo), Err(Error::NonPositiveR(0)));
    }

    #[test]
    fn memo_entries_are_stable() {
        let memo = MemoTable::new();
        let p = TevParams {
            g: 12,
            ell: -3,
            r: 2,
        };
        let first = tev_recursive(p, &memo).unwrap();
        assert!(!memo.is_empty());
        assert_eq!(memo.get(&p), Some(first.clone()));
        assert_eq!(tev_recursive(p, &memo).unwrap(), first);
        // every stored entry equals a fresh evaluation
        let keys: Vec<TevParams> = memo.entries.iter().map(|e| *e.key()).collect();
        for k in keys {
            assert_eq!(
                memo.get(&k).unwrap(),
                tev_recursive(k, &MemoTable::new()).unwrap()
            );
        }
    }

    #[test]
    fn support_starts_at_genus_floor() {
        let memo = MemoTable::new();
        for ell in -6..=6 {
            for r in 1..=6 {
                let floor = r - 2 * ell - 1;
                for g in 0..=20 {
                    let p = TevParams { g, ell, r };
                    let v = tev_recursive(p, &memo).unwrap();
                    assert_eq!(v.is_zero(), !is_valid(&p), "{p}");
                    if g < floor {
                        assert!(v.is_zero(), "{p}");
                    }
                }
            }
        }
    }

    #[test]
    fn shared_memo_across_threads() {
        let memo = MemoTable::new();
        let results: Vec<BigCount> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..4)
                .map(|_| {
                    s.spawn(|| {
                        tev_recursive(
                            TevParams {
                                g: 20,
                                ell: -4,
                                r: 3,
                            },
                            &memo,
                        )
                        .unwrap()
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        assert!(results.windows(2).all(|w| w[0] == w[1]));
    }
}
