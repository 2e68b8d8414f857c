//! Multiplicities of quadratic strongly stable sets.
//!
//! The multiplicity of `k[W]` for a degree-two strongly stable set equals the
//! number of maximal NE-paths in its shifted diagram: lattice paths taking
//! unit steps up or right, from a diagonal box to the top-right box `(1, n)`.
//! Three independent routes are provided:
//!
//! * [`path_count`], a dynamic program over the boxes;
//! * [`lex_multiplicity`] / [`revlex_multiplicity`], closed forms for the two
//!   segment shapes;
//! * [`subpartition_count`], counting sub-diagrams cut out by the paths.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, binomial_sum, choose2, pow2, BigNat, Tally};
use crate::error::{Error, Result};
use crate::partition::StrictPartition;

/// A size `u` in the window `C(n,2) < u <= C(n+1,2)`, in both coordinates
/// `u = C(n,2) + r` (`0 < r <= n`) and `u = C(n+1,2) - s` (`0 <= s < n`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SegmentSpec {
    pub n: u32,
    pub u: u64,
    pub r: u32,
    pub s: u32,
}

impl SegmentSpec {
    pub fn new(n: u32, u: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::range("n must be at least 1"));
        }
        let lo = choose2(u64::from(n));
        let hi = choose2(u64::from(n) + 1);
        if u <= lo || u > hi {
            return Err(Error::range(format!(
                "u = {u} is outside the window ({lo}, {hi}] for n = {n}"
            )));
        }
        Ok(SegmentSpec {
            n,
            u,
            r: (u - lo) as u32,
            s: (hi - u) as u32,
        })
    }

    /// Window position with `u = C(n,2) + r`.
    pub fn from_r(n: u32, r: u32) -> Result<Self> {
        SegmentSpec::new(n, choose2(u64::from(n)) + u64::from(r))
    }

    /// Picks the unique `n` whose window contains `u`.
    pub fn for_size(u: u64) -> Result<Self> {
        if u == 0 {
            return Err(Error::range("u must be positive"));
        }
        let mut n = ((2.0 * u as f64).sqrt() as u64).max(1);
        while choose2(n + 1) < u {
            n += 1;
        }
        while n > 1 && choose2(n) >= u {
            n -= 1;
        }
        let n = u32::try_from(n).map_err(|_| Error::range("u too large"))?;
        SegmentSpec::new(n, u)
    }
}

/// The `u` largest quadratic monomials in Lex order: rows filled top-down.
pub fn lex_segment(spec: SegmentSpec) -> StrictPartition {
    let mut left = spec.u;
    let mut parts = Vec::new();
    for len in (1..=spec.n).rev() {
        if left == 0 {
            break;
        }
        let take = left.min(u64::from(len));
        parts.push(take as u32);
        left -= take;
    }
    StrictPartition::from_parts_unchecked(parts)
}

/// The `u` largest quadratic monomials in RevLex order: columns filled
/// left to right, giving `(n, …, n-r+1, n-r-1, …, 1)` with the part `n - r` missing.
pub fn revlex_segment(spec: SegmentSpec) -> StrictPartition {
    let skip = spec.n - spec.r;
    let parts = (1..=spec.n).rev().filter(|&p| p != skip).collect();
    StrictPartition::from_parts_unchecked(parts)
}

/// Number of maximal NE-paths starting at each diagonal box, rows `1..=m`.
pub fn diagonal_path_counts(p: &StrictPartition) -> Vec<BigNat> {
    // Every count is at most 2^(n-1).
    if p.n() <= 128 {
        diagonal_counts_with::<u128>(p)
            .into_iter()
            .map(Tally::into_big)
            .collect()
    } else {
        diagonal_counts_with::<BigNat>(p)
    }
}

/// Multiplicity `e(L)`: the number of maximal NE-paths in the diagram.
pub fn path_count(p: &StrictPartition) -> BigNat {
    if p.n() <= 128 {
        diagonal_counts_with::<u128>(p)
            .into_iter()
            .sum::<u128>()
            .into()
    } else {
        diagonal_counts_with::<BigNat>(p).into_iter().sum()
    }
}

// N(i,j) = N(i-1,j) + N(i,j+1), N(1,n) = 1; columns right to left, rows top
// to bottom within a column.
fn diagonal_counts_with<T: Tally>(p: &StrictPartition) -> Vec<T> {
    let n = p.n() as usize;
    let heights = p.column_heights();
    let mut diagonal = vec![T::zero(); p.rows() as usize];
    let mut right: Vec<T> = Vec::new();
    for col in (0..n).rev() {
        let height = heights[col] as usize;
        let mut current: Vec<T> = Vec::with_capacity(height);
        for row in 0..height {
            let mut value = match (row, col + 1 == n) {
                (0, true) => T::one(),
                _ => T::zero(),
            };
            if row > 0 {
                let above = current[row - 1].clone();
                value += &above;
            }
            if let Some(r) = right.get(row) {
                value += r;
            }
            current.push(value);
        }
        if height == col + 1 {
            diagonal[col] = current[col].clone();
        }
        right = current;
    }
    diagonal
}

/// Closed form for `e(RevLex(u))`: `2^(n-1) - 2^(n-r-1)` for `r < n`, else `2^(n-1)`.
pub fn revlex_multiplicity(spec: SegmentSpec) -> BigNat {
    let n = u64::from(spec.n);
    let r = u64::from(spec.r);
    if r < n {
        pow2(n - 1) - pow2(n - r - 1)
    } else {
        pow2(n - 1)
    }
}

/// Largest `k` with `st(x_{n-k} x_n) ⊇ Lex(u)`, i.e. `C(k+1,2) <= s`.
pub fn lex_principal_index(spec: SegmentSpec) -> u32 {
    let s = u64::from(spec.s);
    (0..spec.n)
        .rev()
        .find(|&k| choose2(u64::from(k) + 1) <= s)
        .unwrap_or(0)
}

/// Closed form for `e(Lex(u))`.
///
/// With `k` from [`lex_principal_index`], `st(x_{n-k} x_n)` has
/// `C(n+1,2) - C(k+1,2)` boxes and `Σ_{i=k}^{n-1} C(n-1,i)` paths. When that
/// set is larger than `Lex(u)` by `j` boxes, the `C(n-k+j-2, j-1)` paths through
/// the first missing box of its last row are subtracted. `u = C(n+1,2)` gives
/// `k = 0` and `2^(n-1)`.
pub fn lex_multiplicity(spec: SegmentSpec) -> BigNat {
    let n = u64::from(spec.n);
    let k = u64::from(lex_principal_index(spec));
    let principal = binomial_sum(n - 1, k, n - 1);
    let j = u64::from(spec.s) - choose2(k + 1);
    if j == 0 {
        principal
    } else {
        principal - binomial(n - k + j - 2, j - 1)
    }
}

/// Counts sequences `μ2 > μ3 > … > μt >= 1` (`t` up to the row count, possibly
/// empty) with `μi <= λi`; these are the sub-diagrams left of each maximal path.
pub fn subpartition_count(p: &StrictPartition) -> BigNat {
    let n = p.n() as usize;
    let parts = p.parts();
    // ways[v] = number of admissible tails for the rows below, given the
    // previous part equals v. Rows past the last one only allow the empty tail.
    let mut ways = vec![BigNat::one(); n + 1];
    for &limit in parts[1..].iter().rev() {
        let limit = limit as usize;
        // prefix[v] = Σ_{x=1}^{v} ways[x]
        let mut prefix = vec![BigNat::zero(); n + 1];
        for v in 1..=n {
            prefix[v] = &prefix[v - 1] + &ways[v];
        }
        let mut next = vec![BigNat::zero(); n + 1];
        for (prev, slot) in next.iter_mut().enumerate() {
            let top = limit.min(prev.saturating_sub(1));
            *slot = BigNat::one() + &prefix[top];
        }
        ways = next;
    }
    ways[n].clone()
}

/// The two diagrams in `e(L) = e(L') + e(L'')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowColumnSplit {
    /// `L'`: the top row removed. `None` when no box remains under the corner
    /// `(1, n)`, so that no maximal path of `L` ends with an up step.
    pub without_top_row: Option<StrictPartition>,
    /// `L''`: the last column removed. `None` only for the one-box diagram.
    pub without_last_column: Option<StrictPartition>,
}

impl RowColumnSplit {
    /// `e(L') + e(L'')`, with an absent `L'` contributing zero. The one-box
    /// diagram has a single path with no last step and gives 1.
    pub fn path_sum(&self) -> BigNat {
        if self.without_last_column.is_none() {
            return BigNat::one();
        }
        [&self.without_top_row, &self.without_last_column]
            .into_iter()
            .flatten()
            .map(path_count)
            .sum()
    }
}

/// Splits maximal paths by their last step: up (through `L'`) or right (through `L''`).
pub fn decompose_row_column(p: &StrictPartition) -> RowColumnSplit {
    let n = p.n();
    let parts = p.parts();
    let without_top_row = match parts.get(1) {
        Some(&second) if second + 1 == n => {
            Some(StrictPartition::from_parts_unchecked(parts[1..].to_vec()))
        }
        _ => None,
    };
    let last_height = *p.column_heights().last().expect("n >= 1") as usize;
    let trimmed: Vec<u32> = parts
        .iter()
        .enumerate()
        .map(|(i, &len)| if i < last_height { len - 1 } else { len })
        .filter(|&len| len > 0)
        .collect();
    let without_last_column =
        (!trimmed.is_empty()).then(|| StrictPartition::from_parts_unchecked(trimmed));
    RowColumnSplit {
        without_top_row,
        without_last_column,
    }
}

/// The diagrams in `e(L') = 2 e(L'')` for a diagram with more than one strongly
/// stable generator: `L'` cuts the last row down to its diagonal box and `L''`
/// removes the diagonal of `L'` (re-indexed). `None` for a single generator.
pub fn diagonal_strip(p: &StrictPartition) -> Option<(StrictPartition, StrictPartition)> {
    if p.generators().len() < 2 {
        return None;
    }
    let parts = p.parts();
    let m = parts.len();
    let mut truncated = parts.to_vec();
    truncated[m - 1] = 1;
    let stripped: Vec<u32> = truncated[..m - 1].iter().map(|&len| len - 1).collect();
    Some((
        StrictPartition::from_parts_unchecked(truncated),
        StrictPartition::from_parts_unchecked(stripped),
    ))
}

/// Exact evaluation of the binomial-sum inequality
/// `Σ_{i=k}^{m} C(m,i) > 2^k Σ_{i=k-1}^{m-k} C(m-k,i)` with `m = C(k+1,2) + s`,
/// together with the two sufficient conditions stated for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomSumCheck {
    pub k: u32,
    pub s: u64,
    pub m: u64,
    pub lhs: BigNat,
    pub rhs: BigNat,
    pub inequality_holds: bool,
    /// `(k-1)(2^k - 3k/2) - 1`.
    pub hypothesis_bound: BigRational,
    /// `hypothesis_bound > s`.
    pub hypothesis_holds: bool,
    /// `(k-1)(2^k - 3k/2 - 1)`, the variant evaluated for `k = 9`.
    pub variant_bound: BigRational,
    /// `variant_bound > s`.
    pub variant_hypothesis_holds: bool,
}

pub fn binomsum_inequality_check(k: u32, s: u64) -> Result<BinomSumCheck> {
    if k < 3 {
        return Err(Error::range(format!("k = {k}; need k >= 3")));
    }
    let kk = u64::from(k);
    let m = choose2(kk + 1) + s;
    let lhs = binomial_sum(m, kk, m);
    let rhs = pow2(kk) * binomial_sum(m - kk, kk - 1, m - kk);
    let inequality_holds = lhs > rhs;

    // Twice each bound is an integer: (k-1)(2^(k+1) - 3k) - 2 and (k-1)(2^(k+1) - 3k - 2).
    let two_pow = BigInt::from(pow2(kk + 1));
    let km1 = BigInt::from(kk - 1);
    let three_k = BigInt::from(3 * kk);
    let twice_hypothesis = &km1 * (&two_pow - &three_k) - BigInt::from(2);
    let twice_variant = &km1 * (&two_pow - &three_k - BigInt::from(2));
    let twice_s = BigInt::from(2 * s);
    let two = BigInt::from(2);
    Ok(BinomSumCheck {
        k,
        s,
        m,
        inequality_holds,
        hypothesis_holds: twice_hypothesis > twice_s,
        variant_hypothesis_holds: twice_variant > twice_s,
        hypothesis_bound: BigRational::new(twice_hypothesis, two.clone()),
        variant_bound: BigRational::new(twice_variant, two),
        lhs,
        rhs,
    })
}
