//! Small exact-arithmetic helpers shared by the counting code.

use std::ops::{AddAssign, SubAssign};

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Arbitrary-precision nonnegative integer used for every count.
pub type BigNat = BigUint;

/// `C(n, 2)`, the number of boxes strictly above the diagonal of an `n`-column staircase.
pub fn choose2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// `2^e` as a [`BigNat`].
pub fn pow2(e: u64) -> BigNat {
    BigNat::one() << e
}

/// Exact binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigNat {
    if k > n {
        return BigNat::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigNat::one();
    for t in 0..k {
        acc *= n - t;
        acc /= t + 1;
    }
    acc
}

/// `Σ_{i=lo}^{hi} C(n, i)`; empty ranges sum to zero.
pub fn binomial_sum(n: u64, lo: u64, hi: u64) -> BigNat {
    if lo > hi {
        return BigNat::zero();
    }
    let hi = hi.min(n);
    if lo > hi {
        return BigNat::zero();
    }
    // Upper tails are summed from the short side and complemented from 2^n.
    match (lo, hi == n) {
        (0, true) => pow2(n),
        (lo, true) if lo <= n / 2 => pow2(n) - running_sum(n, 0, lo - 1),
        _ => running_sum(n, lo, hi),
    }
}

fn running_sum(n: u64, lo: u64, hi: u64) -> BigNat {
    let mut term = binomial(n, lo);
    let mut total = term.clone();
    for i in lo..hi {
        term = term * (n - i) / (i + 1);
        total += &term;
    }
    total
}

/// `n!` as a [`BigNat`].
pub fn factorial(n: u64) -> BigNat {
    (1..=n).fold(BigNat::one(), |acc, t| acc * t)
}

/// Serde adapter writing [`BigNat`] as a decimal string.
pub mod decimal {
    use super::BigNat;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigNat, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(value)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BigNat, D::Error> {
        let text = String::deserialize(de)?;
        text.parse()
            .map_err(|_| D::Error::custom(format!("not a decimal integer: {text:?}")))
    }
}

/// Counter type for the dynamic programs: machine words when a proven bound
/// allows it, [`BigNat`] otherwise.
pub(crate) trait Tally:
    Clone + Zero + One + for<'a> AddAssign<&'a Self> + for<'a> SubAssign<&'a Self>
{
    fn into_big(self) -> BigNat;
}

impl Tally for u128 {
    fn into_big(self) -> BigNat {
        BigNat::from(self)
    }
}

impl Tally for BigNat {
    fn into_big(self) -> BigNat {
        self
    }
}
