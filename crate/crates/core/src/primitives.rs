//! Exact-arithmetic primitives shared by every evaluation route: the
//! parameter triple, the non-negative count type, binomials, the `E_s`
//! vectors and Catalan numbers.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A parameter triple `(g, ℓ, r)` naming one Tevelev degree.
///
/// `g` is the genus, `ell` shifts the degree `d = g + 1 + ℓ`, and `r` is the
/// number of markings constrained to a common fiber.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TevParams {
    pub g: i64,
    pub ell: i64,
    pub r: i64,
}

impl TevParams {
    /// Builds a triple, rejecting `g < 0` and `r < 1`.
    pub fn new(g: i64, ell: i64, r: i64) -> Result<Self> {
        let p = TevParams { g, ell, r };
        p.check()?;
        Ok(p)
    }

    pub(crate) fn check(&self) -> Result<()> {
        if self.g < 0 {
            return Err(Error::NegativeGenus(self.g));
        }
        if self.r < 1 {
            return Err(Error::NonPositiveR(self.r));
        }
        Ok(())
    }

    /// Degree of the covers, `g + 1 + ℓ`.
    pub fn degree(&self) -> i64 {
        self.g + 1 + self.ell
    }

    /// Number of marked points, `g + 3 + 2ℓ`.
    pub fn markings(&self) -> i64 {
        self.g + 3 + 2 * self.ell
    }

    /// Smallest genus for which `(ℓ, r)` is valid, `r − 2ℓ − 1`.
    pub fn genus_floor(&self) -> i64 {
        genus_floor(self.ell, self.r)
    }

    pub fn is_valid(&self) -> bool {
        is_valid(self)
    }
}

impl fmt::Display for TevParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(g={}, ell={}, r={})", self.g, self.ell, self.r)
    }
}

pub fn genus_floor(ell: i64, r: i64) -> i64 {
    r - 2 * ell - 1
}

/// `1 ≤ r ≤ g + 1 + ℓ` and `g ≥ r − 2ℓ − 1`. Outside this domain the degree
/// is zero by definition.
pub fn is_valid(p: &TevParams) -> bool {
    p.g >= 0 && 1 <= p.r && p.r <= p.degree() && p.g >= p.genus_floor()
}

/// An exact non-negative integer: a degree, a path count or an `E_s` entry.
///
/// Serialized as a decimal string so JSON consumers never lose precision.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn zero() -> Self {
        BigCount(BigUint::zero())
    }

    pub fn one() -> Self {
        BigCount(BigUint::one())
    }

    pub fn pow2(exp: u64) -> Self {
        BigCount(BigUint::one() << exp)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn to_bigint(&self) -> BigInt {
        BigInt::from(self.0.clone())
    }

    /// Converts a signed intermediate into a count. `context` names the
    /// computation for the error message if the value is negative.
    pub fn from_signed(value: BigInt, context: &'static str) -> Result<Self> {
        match value.sign() {
            Sign::Minus => Err(Error::NegativeCount {
                context,
                value: value.to_string(),
            }),
            _ => Ok(BigCount(value.magnitude().clone())),
        }
    }

    /// Narrows to `u64`, if it fits.
    pub fn to_u64(&self) -> Option<u64> {
        u64::try_from(&self.0).ok()
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl PartialEq<u64> for BigCount {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl std::ops::Add for BigCount {
    type Output = BigCount;
    fn add(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 + rhs.0)
    }
}

impl<'a> std::ops::Add<&'a BigCount> for BigCount {
    type Output = BigCount;
    fn add(self, rhs: &'a BigCount) -> BigCount {
        BigCount(self.0 + &rhs.0)
    }
}

impl std::ops::AddAssign<&BigCount> for BigCount {
    fn add_assign(&mut self, rhs: &BigCount) {
        self.0 += &rhs.0;
    }
}

impl<'a> std::ops::Mul<&'a BigCount> for &'a BigCount {
    type Output = BigCount;
    fn mul(self, rhs: &'a BigCount) -> BigCount {
        BigCount(&self.0 * &rhs.0)
    }
}

impl std::iter::Sum for BigCount {
    fn sum<I: Iterator<Item = BigCount>>(iter: I) -> Self {
        iter.fold(BigCount::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for BigCount {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        BigUint::from_str(s).map(BigCount)
    }
}

impl Serialize for BigCount {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for BigCount {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Binomial coefficient with the zero extension: `C(n, k) = 0` whenever
/// `k < 0`, `k > n` or `n < 0`. Every formula in the crate relies on this.
pub fn binom(n: i64, k: i64) -> BigInt {
    BigInt::from(binom_unsigned(n, k))
}

pub(crate) fn binom_unsigned(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc * (n - i) is divisible by i + 1 since acc = C(n, i) at this point
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `E_s[j] = 2^{s+j−1} − Σ_{i=0}^{s−2} C(s+j−1, i)` for `j ≥ 0`, and `0` for
/// `j < 0`.
pub fn e_entry(s: i64, j: i64) -> Result<BigCount> {
    if s < 1 {
        return Err(Error::VectorIndex(s));
    }
    if j < 0 {
        return Ok(BigCount::zero());
    }
    let n = s + j - 1;
    let mut value = BigInt::one() << (n as u64);
    for i in 0..=s - 2 {
        value -= binom(n, i);
    }
    BigCount::from_signed(value, "E_s entry")
}

/// The `m`-th Catalan number `C(2m, m) / (m + 1)`.
pub fn catalan(m: i64) -> Result<BigCount> {
    if m < 0 {
        return Err(Error::NegativeCatalan(m));
    }
    let q = exact_div(&binom(2 * m, m), &BigInt::from(m + 1), "Catalan number")?;
    BigCount::from_signed(q, "Catalan number")
}

/// Division that must leave no remainder; a remainder means a formula was
/// transcribed wrong, so it is reported rather than rounded.
pub(crate) fn exact_div(num: &BigInt, den: &BigInt, context: &'static str) -> Result<BigInt> {
    let (q, rem) = num.div_rem(den);
    if !rem.is_zero() || den.is_zero() {
        return Err(Error::Integrality {
            context,
            numerator: num.to_string(),
            denominator: den.to_string(),
        });
    }
    Ok(q)
}
