//! Hilbert functions of subalgebras generated by strongly stable sets.
//!
//! Here `HF(k[W], i)` is the number of distinct `i`-fold products of members
//! of `W`, with the generators themselves in slot `i = 1`.
//!
//! For degree two the algebra has the Hilbert function of the Stanley–Reisner
//! ring of the order complex of the box poset (a box lies below every box
//! weakly north-east of it). With `c_k` the number of `k`-element chains,
//! `HF(i) = Σ_k c_k C(i-1, k-1)` for every `i >= 1`. For any degree the
//! product sets can also be built outright, which [`hf_bruteforce`] does.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashSet;

use crate::arith::{binomial, factorial, BigNat, Tally};
use crate::error::{Error, Result};
use crate::monomial::StableSet;
use crate::partition::StrictPartition;

/// Chain counts `(c_1, …, c_D)` of the box poset; `c_k` counts `k`-element chains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FVector {
    pub counts: Vec<BigNat>,
}

impl FVector {
    /// Size of the longest chain.
    pub fn max_chain(&self) -> usize {
        self.counts.len()
    }

    /// `c_k`, zero outside `1..=D`.
    pub fn chains(&self, k: usize) -> BigNat {
        k.checked_sub(1)
            .and_then(|i| self.counts.get(i))
            .cloned()
            .unwrap_or_default()
    }
}

pub fn chain_f_vector(p: &StrictPartition) -> FVector {
    // Chain counts are bounded by e(L) 2^n <= 2^(2n-1).
    let counts = if p.n() <= 64 {
        chain_counts_with::<u128>(p)
            .into_iter()
            .map(Tally::into_big)
            .collect()
    } else {
        chain_counts_with::<BigNat>(p)
    };
    FVector { counts }
}

fn chain_counts_with<T: Tally>(p: &StrictPartition) -> Vec<T> {
    let n = p.n() as usize;
    let rows = p.rows() as usize;
    // grid[r][c] with 0-based row r and column c; `ends[r]` is one past the last column.
    let ends: Vec<usize> = p
        .parts()
        .iter()
        .enumerate()
        .map(|(r, &len)| r + len as usize)
        .collect();
    let mut totals = Vec::with_capacity(n);
    // ending[r][c] = chains of the current size whose north-east-most box is (r, c)
    let mut ending: Vec<Vec<T>> = (0..rows)
        .map(|r| {
            (0..ends[r])
                .map(|c| if c >= r { T::one() } else { T::zero() })
                .collect()
        })
        .collect();
    for size in 1..=n {
        let mut total = T::zero();
        for row in &ending {
            for v in row {
                total += v;
            }
        }
        if total.is_zero() {
            break;
        }
        totals.push(total);
        if size == n {
            break;
        }
        // below[r][c] = Σ ending over boxes (r'', c'') with r'' >= r, c'' <= c,
        // accumulated bottom row first, columns left to right.
        let mut below: Vec<Vec<T>> = vec![Vec::new(); rows];
        for r in (0..rows).rev() {
            let mut row_acc = T::zero();
            let mut acc_row = Vec::with_capacity(ends[r]);
            for (c, here) in ending[r].iter().enumerate() {
                if c >= r {
                    row_acc += here;
                }
                let mut v = row_acc.clone();
                if let Some(lower) = below.get(r + 1).and_then(|b| b.get(c)) {
                    v += lower;
                } else if r + 1 < rows && c >= ends[r + 1] && ends[r + 1] > 0 {
                    // the region below keeps its total past the end of the shorter row
                    v += &below[r + 1][ends[r + 1] - 1];
                }
                acc_row.push(v);
            }
            below[r] = acc_row;
        }
        for r in 0..rows {
            for c in r..ends[r] {
                let mut v = below[r][c].clone();
                v -= &ending[r][c];
                ending[r][c] = v;
            }
        }
    }
    totals
}

/// `HF(i)` from chain counts: `1` at `i = 0`, else `Σ_k c_k C(i-1, k-1)`.
pub fn hf_from_fvector(f: &FVector, i: u64) -> BigNat {
    if i == 0 {
        return BigNat::one();
    }
    f.counts
        .iter()
        .enumerate()
        .map(|(idx, c)| c * binomial(i - 1, idx as u64))
        .sum()
}

/// Hilbert polynomial with rational coefficients, stored as integer numerators
/// over the common denominator `(n-1)!`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertPolynomial {
    /// Numerators of the coefficients of `i^0, i^1, …`.
    pub numerators: Vec<BigInt>,
    pub denominator: BigNat,
}

impl HilbertPolynomial {
    pub fn degree(&self) -> usize {
        self.numerators.len().saturating_sub(1)
    }

    /// Reduced coefficients, ascending degree.
    pub fn coeffs(&self) -> Vec<BigRational> {
        let den = BigInt::from(self.denominator.clone());
        self.numerators
            .iter()
            .map(|num| BigRational::new(num.clone(), den.clone()))
            .collect()
    }

    /// Leading coefficient times `(degree)!`.
    pub fn multiplicity(&self) -> BigRational {
        let lead = self.coeffs().pop().unwrap_or_default();
        lead * BigRational::from_integer(BigInt::from(factorial(self.degree() as u64)))
    }

    pub fn eval(&self, i: i64) -> BigRational {
        let x = BigInt::from(i);
        let mut acc = BigInt::zero();
        for num in self.numerators.iter().rev() {
            acc = acc * &x + num;
        }
        BigRational::new(acc, BigInt::from(self.denominator.clone()))
    }
}

pub fn hilbert_polynomial(p: &StrictPartition) -> HilbertPolynomial {
    hilbert_polynomial_from_fvector(&chain_f_vector(p), p.n())
}

/// Expands `Σ_k c_k C(i-1, k-1)` in powers of `i`, scaled by `(n-1)!`.
pub fn hilbert_polynomial_from_fvector(f: &FVector, n: u32) -> HilbertPolynomial {
    let n = n as usize;
    let denominator = factorial(n as u64 - 1);
    let mut numerators = vec![BigInt::zero(); n];
    // falling[k] holds Π_{t=1}^{k}(i - t) ascending; starts at the constant 1.
    let mut falling = vec![BigInt::one()];
    for (idx, c) in f.counts.iter().enumerate() {
        // (n-1)! / idx! is exact.
        let scale = BigInt::from(&denominator / factorial(idx as u64)) * BigInt::from(c.clone());
        for (deg, coeff) in falling.iter().enumerate() {
            numerators[deg] += &scale * coeff;
        }
        // multiply by (i - (idx + 1))
        let t = BigInt::from(idx as u64 + 1);
        let mut next = vec![BigInt::zero(); falling.len() + 1];
        for (deg, coeff) in falling.iter().enumerate() {
            next[deg + 1] += coeff;
            next[deg] -= coeff * &t;
        }
        falling = next;
    }
    HilbertPolynomial {
        numerators,
        denominator,
    }
}

/// Exact Hilbert function values `HF(0), HF(1), …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HfTable {
    pub values: Vec<BigNat>,
}

impl HfTable {
    pub fn get(&self, i: usize) -> Option<&BigNat> {
        self.values.get(i)
    }

    pub fn max_arg(&self) -> usize {
        self.values.len().saturating_sub(1)
    }
}

/// Degree-two Hilbert function through `i_max` via chain counts.
pub fn hf_table_from_fvector(f: &FVector, i_max: u64) -> HfTable {
    HfTable {
        values: (0..=i_max).map(|i| hf_from_fvector(f, i)).collect(),
    }
}

/// Limits for the product-set computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteLimits {
    /// Upper bound on estimated memory for one product set.
    pub memory_cap: u64,
    /// Largest `i` a stabilisation search may reach.
    pub max_power: u32,
}

impl Default for BruteLimits {
    fn default() -> Self {
        BruteLimits {
            memory_cap: 2 << 30,
            max_power: 40,
        }
    }
}

// Packed key plus hash-set overhead, with slack for per-thread partial sets.
const BYTES_PER_PRODUCT: u64 = 48;

/// Incremental product sets `S_1 = W`, `S_{i+1} = S_i · W`, with exponents
/// packed into one `u128` per monomial so that multiplication is addition.
struct ProductSets {
    generators: Vec<u128>,
    current: Vec<u128>,
    power: u32,
    n: u32,
    d: u32,
    max_power: u32,
    memory_cap: u64,
}

impl ProductSets {
    fn new(w: &StableSet, max_power: u32, memory_cap: u64) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::validation("Hilbert function of an empty set"));
        }
        let n = w.n().max(1);
        let d = w.degree();
        let top = u64::from(d) * u64::from(max_power);
        let bits = 64 - top.leading_zeros();
        if u64::from(bits) * u64::from(n) > 128 {
            return Err(Error::Resource(format!(
                "degree {top} in {n} variables does not fit packed exponents; lower the power"
            )));
        }
        let pack = |exps: &[u32]| {
            exps.iter().enumerate().fold(0u128, |acc, (v, &e)| {
                acc | (u128::from(e) << (v as u32 * bits))
            })
        };
        let generators: Vec<u128> = w.members().map(|m| pack(m.exponents())).collect();
        Ok(ProductSets {
            current: generators.clone(),
            generators,
            power: 1,
            n,
            d,
            max_power,
            memory_cap,
        })
    }

    fn len(&self) -> usize {
        self.current.len()
    }

    fn advance(&mut self) -> Result<()> {
        let power = self.power + 1;
        if power > self.max_power {
            return Err(Error::Resource(format!(
                "power {power} exceeds the configured maximum {}",
                self.max_power
            )));
        }
        let degree = u64::from(self.d) * u64::from(power);
        let all_monomials = binomial(u64::from(self.n) + degree - 1, degree)
            .to_u64()
            .unwrap_or(u64::MAX);
        let products = (self.current.len() as u64).saturating_mul(self.generators.len() as u64);
        let estimate = products
            .min(all_monomials)
            .saturating_mul(BYTES_PER_PRODUCT);
        if estimate > self.memory_cap {
            return Err(Error::Resource(format!(
                "product set at i = {power} needs about {estimate} bytes, cap is {}; reached i = {}",
                self.memory_cap, self.power
            )));
        }
        let gens = &self.generators;
        let merged = self
            .current
            .par_chunks(4096)
            .map(|chunk| {
                let mut local = FxHashSet::default();
                local.reserve(chunk.len() * 2);
                for &m in chunk {
                    for &g in gens {
                        local.insert(m + g);
                    }
                }
                local
            })
            .reduce(FxHashSet::default, |a, b| {
                let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
                big.extend(small);
                big
            });
        self.current = merged.into_iter().collect();
        self.power = power;
        Ok(())
    }
}

/// `HF(W, i)` for `0 <= i <= i_max` by building every product set.
pub fn hf_bruteforce(w: &StableSet, i_max: u32, memory_cap: u64) -> Result<HfTable> {
    if i_max < 1 {
        return Err(Error::validation("i_max must be at least 1"));
    }
    let mut sets = ProductSets::new(w, i_max, memory_cap)?;
    let mut values = vec![BigNat::one(), BigNat::from(sets.len())];
    for _ in 1..i_max {
        sets.advance()?;
        values.push(BigNat::from(sets.len()));
    }
    Ok(HfTable { values })
}

/// Outcome of [`multiplicity_bruteforce`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteMultiplicity {
    pub e: BigNat,
    /// First `i` of the window of equal `(n-1)`-th differences.
    pub stabilized_at: u32,
    /// Hilbert function values computed along the way, from `i = 0`.
    pub hf: HfTable,
}

/// Multiplicity as the eventually constant `(n-1)`-th difference of the
/// Hilbert function, `n` being the number of variables used.
///
/// Stops once `guard` consecutive differences agree; running out of power or
/// memory first is an [`Error::Inconclusive`].
pub fn multiplicity_bruteforce(
    w: &StableSet,
    guard: u32,
    limits: BruteLimits,
) -> Result<BruteMultiplicity> {
    let guard = guard.max(1) as usize;
    let order = w.variables_used().saturating_sub(1) as usize;
    let mut sets = ProductSets::new(w, limits.max_power, limits.memory_cap)?;
    let mut values: Vec<BigInt> = vec![BigInt::from(sets.len())];
    loop {
        if values.len() >= order + guard {
            let diffs = nth_differences(&values, order);
            let tail = &diffs[diffs.len() - guard..];
            if tail.iter().all(|d| d == &tail[0]) {
                let start = diffs.len() - guard + 1;
                let e = tail[0].clone();
                if e.sign() != Sign::Plus {
                    return Err(Error::Inconclusive(format!(
                        "differences settled at non-positive value {e}"
                    )));
                }
                let mut hf = vec![BigNat::one()];
                hf.extend(
                    values
                        .iter()
                        .map(|v| v.abs().to_biguint().expect("nonnegative")),
                );
                return Ok(BruteMultiplicity {
                    e: e.to_biguint().expect("positive"),
                    stabilized_at: start as u32,
                    hf: HfTable { values: hf },
                });
            }
        }
        if let Err(err) = sets.advance() {
            return Err(Error::Inconclusive(format!(
                "no {guard} equal order-{order} differences through i = {}: {err}",
                values.len()
            )));
        }
        values.push(BigInt::from(sets.len()));
    }
}

/// Iterated forward differences; the result has `values.len() - order` entries.
fn nth_differences(values: &[BigInt], order: usize) -> Vec<BigInt> {
    let mut seq = values.to_vec();
    for _ in 0..order {
        seq = seq.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    seq
}
