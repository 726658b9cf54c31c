//! Arbitrary-precision counting primitives.
//!
//! Everything downstream funnels through [`binomial`] with the vanishing
//! convention: `C(a, b) = 0` whenever `b < 0`, `b > a`, or `a < 0`. The
//! closed Betti formulas rely on that convention to gate themselves to zero
//! exactly where their nonzero-conditions fail, so no caller branches on
//! feasibility before evaluating.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// An exact nonnegative count.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Count(BigUint);

impl Count {
    pub fn zero() -> Self {
        Count(BigUint::zero())
    }

    pub fn one() -> Self {
        Count(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }
}

impl From<u64> for Count {
    fn from(v: u64) -> Self {
        Count(BigUint::from(v))
    }
}

impl From<usize> for Count {
    fn from(v: usize) -> Self {
        Count(BigUint::from(v))
    }
}

impl From<BigUint> for Count {
    fn from(v: BigUint) -> Self {
        Count(v)
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Count {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(Count(BigUint::from_str(s)?))
    }
}

impl Add for Count {
    type Output = Count;

    fn add(self, rhs: Count) -> Count {
        Count(self.0 + rhs.0)
    }
}

impl AddAssign for Count {
    fn add_assign(&mut self, rhs: Count) {
        self.0 += rhs.0;
    }
}

impl Mul for Count {
    type Output = Count;

    fn mul(self, rhs: Count) -> Count {
        Count(self.0 * rhs.0)
    }
}

impl Mul<u64> for Count {
    type Output = Count;

    fn mul(self, rhs: u64) -> Count {
        Count(self.0 * rhs)
    }
}

impl Sum for Count {
    fn sum<I: Iterator<Item = Count>>(iter: I) -> Count {
        iter.fold(Count::zero(), |acc, c| acc + c)
    }
}

/// Binomial coefficient `C(a, b)` with the vanishing convention.
///
/// Returns `C(a, b)` for `0 <= b <= a` and zero for `b < 0`, `b > a`, or
/// `a < 0`. Exact at any size.
pub fn binomial(a: i64, b: i64) -> Count {
    if b < 0 || a < 0 || b > a {
        return Count::zero();
    }
    // Multiplicative form; the division is exact at every step because
    // C(a, i+1) = C(a, i) * (a - i) / (i + 1) is an integer.
    let b = b.min(a - b);
    let mut acc = BigUint::one();
    for i in 0..b {
        acc *= BigUint::from((a - i) as u64);
        acc /= BigUint::from((i + 1) as u64);
    }
    Count(acc)
}

/// Number of ways to choose `m` facets among `k` consecutive facets so that
/// any two chosen facets have at least `t` unchosen facets between them.
///
/// Equivalently, the number of induced subcollections composed of `m` runs
/// of length one inside a run of `k` facets. Equals `C(k - (m-1)t, m)`;
/// the vanishing convention returns zero for infeasible inputs. Requires
/// `t >= 1`.
pub fn line_run_count(k: usize, m: usize, t: usize) -> Count {
    debug_assert!(t >= 1);
    let a = k as i64 - (m as i64 - 1) * t as i64;
    binomial(a, m as i64)
}

/// Number of induced subcollections of the path complex of an `n`-cycle that
/// are composed of `m` runs of length one. Requires `t >= 2`, `n >= 1`.
///
/// Computed division-free as `t*C(n-mt-1, m-1) + C(n-mt, m)`, which equals
/// `n/(n-mt) * C(n-mt, m)` whenever the latter is defined; the divisibility
/// behind that identity is a tested invariant rather than a runtime
/// assertion. Zero when `n <= mt` (except `m = 0`, which counts the empty
/// subcollection).
pub fn cycle_run_count(n: usize, m: usize, t: usize) -> Count {
    debug_assert!(t >= 2);
    debug_assert!(n >= 1);
    let n = n as i64;
    let m = m as i64;
    let t = t as i64;
    binomial(n - m * t - 1, m - 1) * (t as u64) + binomial(n - m * t, m)
}
