//! Exhaustive and closed-form checks that a Lex or RevLex segment minimises
//! the Hilbert function among quadratic strongly stable sets of a given size.
//!
//! Minimal here is asymptotic: the smallest multiplicity wins, and equal
//! multiplicities are compared by their Hilbert polynomials, coefficient by
//! coefficient from the top degree down.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{choose2, decimal, BigNat};
use crate::enumerate::{enumerate_degree2, incremental_generate};
use crate::error::{Error, Result};
use crate::hilbert::{chain_f_vector, hf_bruteforce, hf_from_fvector, hilbert_polynomial};
use crate::monomial::partition_to_stable_set;
use crate::multiplicity::{
    decompose_row_column, diagonal_path_counts, diagonal_strip, lex_multiplicity, lex_segment,
    path_count, revlex_multiplicity, revlex_segment, subpartition_count, SegmentSpec,
};
use crate::partition::StrictPartition;

/// Default largest `n` for exhaustive runs.
pub const DEFAULT_EXHAUSTIVE_CAP: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Classification {
    Lex,
    Revlex,
    TieLexRevlex,
    UniqueSingleSet,
    /// A minimal set that is neither segment: a counterexample.
    Other,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Lex => "LEX",
            Classification::Revlex => "REVLEX",
            Classification::TieLexRevlex => "TIE_LEX_REVLEX",
            Classification::UniqueSingleSet => "UNIQUE_SINGLE_SET",
            Classification::Other => "OTHER",
        })
    }
}

/// Outcome of the exhaustive search at one `(n, u)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub n: u32,
    pub u: u64,
    pub r: u32,
    /// Number of strongly stable sets of size `u` in `n` variables.
    pub candidates: usize,
    #[serde(with = "decimal")]
    pub e_min: BigNat,
    /// Every set of multiplicity `e_min`.
    pub e_winners: Vec<StrictPartition>,
    /// The sets with minimal Hilbert function; equal to `e_winners` unless the
    /// Hilbert polynomials had to break a multiplicity tie.
    pub winners: Vec<StrictPartition>,
    /// Whether the Hilbert-polynomial comparison was used.
    pub refined_by_polynomial: bool,
    pub classification: Classification,
    #[serde(with = "decimal")]
    pub e_lex: BigNat,
    #[serde(with = "decimal")]
    pub e_revlex: BigNat,
    /// Closed forms agreed with the path count of the segment diagrams.
    pub closed_forms_agree: bool,
}

impl VerdictRecord {
    pub fn is_counterexample(&self) -> bool {
        self.classification == Classification::Other
    }
}

/// Compares Hilbert polynomials by asymptotic size.
fn polynomial_order(a: &StrictPartition, b: &StrictPartition) -> Ordering {
    let pa = hilbert_polynomial(a);
    let pb = hilbert_polynomial(b);
    // Same n, hence the same denominator.
    pa.numerators.iter().rev().cmp(pb.numerators.iter().rev())
}

/// Exhaustive verdict for one size `u` in the window of `n`.
pub fn verdict(spec: SegmentSpec) -> VerdictRecord {
    let candidates: Vec<StrictPartition> = enumerate_degree2(spec.n, spec.u)
        .expect("spec lies in the window")
        .collect();
    let scored: Vec<(StrictPartition, BigNat)> = candidates
        .into_iter()
        .map(|p| {
            let e = path_count(&p);
            (p, e)
        })
        .collect();
    let e_min = scored
        .iter()
        .map(|(_, e)| e)
        .min()
        .cloned()
        .expect("window is never empty");
    let e_winners: Vec<StrictPartition> = scored
        .iter()
        .filter(|(_, e)| *e == e_min)
        .map(|(p, _)| p.clone())
        .collect();

    let refined_by_polynomial = e_winners.len() > 1;
    let winners = if refined_by_polynomial {
        let best = e_winners
            .iter()
            .min_by(|a, b| polynomial_order(a, b))
            .expect("nonempty")
            .clone();
        e_winners
            .iter()
            .filter(|p| polynomial_order(p, &best) == Ordering::Equal)
            .cloned()
            .collect()
    } else {
        e_winners.clone()
    };

    let lex = lex_segment(spec);
    let revlex = revlex_segment(spec);
    let e_lex = lex_multiplicity(spec);
    let e_revlex = revlex_multiplicity(spec);
    let closed_forms_agree = e_lex == path_count(&lex) && e_revlex == path_count(&revlex);

    let classification = if scored.len() == 1 {
        Classification::UniqueSingleSet
    } else {
        let has_lex = winners.contains(&lex);
        let has_revlex = winners.contains(&revlex);
        let only_segments = winners.iter().all(|w| *w == lex || *w == revlex);
        match (only_segments, has_lex, has_revlex) {
            (false, _, _) => Classification::Other,
            (true, true, true) if lex != revlex => Classification::TieLexRevlex,
            (true, true, _) => Classification::Lex,
            (true, false, true) => Classification::Revlex,
            (true, false, false) => Classification::Other,
        }
    };

    VerdictRecord {
        n: spec.n,
        u: spec.u,
        r: spec.r,
        candidates: scored.len(),
        e_min,
        e_winners,
        winners,
        refined_by_polynomial,
        classification,
        e_lex,
        e_revlex,
        closed_forms_agree,
    }
}

/// Verdicts for every `u` in `(C(n,2), C(n+1,2)]`, sharded by `u`.
pub fn verify_conjecture(n: u32, exhaustive_cap: u32) -> Result<Vec<VerdictRecord>> {
    if n == 0 {
        return Err(Error::range("n must be at least 1"));
    }
    if n > exhaustive_cap {
        return Err(Error::Resource(format!(
            "n = {n} exceeds the exhaustive cap {exhaustive_cap}; raise the cap or use \
             shift-table for closed-form comparisons"
        )));
    }
    Ok((1..=n)
        .into_par_iter()
        .map(|r| verdict(SegmentSpec::from_r(n, r).expect("r in 1..=n")))
        .collect())
}

/// Which segment has the smaller multiplicity at one size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SegmentWinner {
    Lex,
    Revlex,
    Tie,
}

impl SegmentWinner {
    pub fn letter(self) -> char {
        match self {
            SegmentWinner::Lex => 'L',
            SegmentWinner::Revlex => 'R',
            SegmentWinner::Tie => '=',
        }
    }
}

pub fn segment_winner(spec: SegmentSpec) -> SegmentWinner {
    match lex_multiplicity(spec).cmp(&revlex_multiplicity(spec)) {
        Ordering::Less => SegmentWinner::Lex,
        Ordering::Greater => SegmentWinner::Revlex,
        Ordering::Equal => SegmentWinner::Tie,
    }
}

/// Closed-form Lex/RevLex comparison across `r = 1..=n` for one `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftRow {
    pub n: u32,
    /// Values of `r` where the winner differs from the previous non-tied winner.
    pub boundaries: Vec<u32>,
    /// Values of `r` with equal multiplicities.
    pub ties: Vec<u32>,
    pub first: Option<SegmentWinner>,
    pub last: Option<SegmentWinner>,
    /// One letter per `r`: `R`, `L` or `=`.
    pub pattern: String,
}

impl ShiftRow {
    pub fn flips(&self) -> usize {
        self.boundaries.len()
    }

    /// More than three changes between Lex and RevLex.
    pub fn violates_flip_bound(&self) -> bool {
        self.flips() > 3
    }

    /// Winner at `r`, 1-based.
    pub fn winner_at(&self, r: u32) -> Option<SegmentWinner> {
        let letter = self.pattern.as_bytes().get(r.checked_sub(1)? as usize)?;
        Some(match letter {
            b'L' => SegmentWinner::Lex,
            b'R' => SegmentWinner::Revlex,
            _ => SegmentWinner::Tie,
        })
    }
}

pub fn shift_row(n: u32) -> ShiftRow {
    let winners: Vec<SegmentWinner> = (1..=n)
        .map(|r| segment_winner(SegmentSpec::from_r(n, r).expect("r in 1..=n")))
        .collect();
    let mut boundaries = Vec::new();
    let mut ties = Vec::new();
    let mut previous: Option<SegmentWinner> = None;
    for (idx, &w) in winners.iter().enumerate() {
        let r = idx as u32 + 1;
        if w == SegmentWinner::Tie {
            ties.push(r);
            continue;
        }
        if previous.is_some_and(|p| p != w) {
            boundaries.push(r);
        }
        previous = Some(w);
    }
    let decided = || winners.iter().copied().filter(|&w| w != SegmentWinner::Tie);
    ShiftRow {
        n,
        boundaries,
        ties,
        first: decided().next(),
        last: decided().next_back(),
        pattern: winners.iter().map(|w| w.letter()).collect(),
    }
}

/// Shift rows for `4 <= n <= n_max`, computed in parallel.
pub fn shift_table(n_max: u32) -> Result<Vec<ShiftRow>> {
    if n_max < 4 {
        return Err(Error::range(format!("n_max = {n_max}; need n_max >= 4")));
    }
    Ok((4..=n_max).into_par_iter().map(shift_row).collect())
}

/// Result of comparing two partitions in dominance order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dominance {
    Less,
    Greater,
    Equal,
    Incomparable,
}

/// Prefix-sum comparison of two partitions of the same number.
pub fn dominance_compare(a: &StrictPartition, b: &StrictPartition) -> Result<Dominance> {
    if a.u() != b.u() {
        return Err(Error::validation(format!(
            "dominance needs equal sizes, got {} and {}",
            a.u(),
            b.u()
        )));
    }
    let len = a.parts().len().max(b.parts().len());
    let (mut sa, mut sb) = (0u64, 0u64);
    let (mut below, mut above) = (false, false);
    for k in 0..len {
        sa += u64::from(a.parts().get(k).copied().unwrap_or(0));
        sb += u64::from(b.parts().get(k).copied().unwrap_or(0));
        match sa.cmp(&sb) {
            Ordering::Less => below = true,
            Ordering::Greater => above = true,
            Ordering::Equal => {}
        }
    }
    Ok(match (below, above) {
        (false, false) => Dominance::Equal,
        (true, false) => Dominance::Less,
        (false, true) => Dominance::Greater,
        (true, true) => Dominance::Incomparable,
    })
}

/// Which sets attain the smallest `HF(i)` for one `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRow {
    pub i: u64,
    #[serde(with = "decimal")]
    pub min_value: BigNat,
    pub winners: Vec<StrictPartition>,
}

/// Per-`i` minimisers of the Hilbert function among all sets of size `u`.
pub fn minimality_witness(
    n: u32,
    u: u64,
    i_range: &[u64],
    exhaustive_cap: u32,
) -> Result<Vec<WitnessRow>> {
    if n > exhaustive_cap {
        return Err(Error::Resource(format!(
            "n = {n} exceeds the exhaustive cap {exhaustive_cap}"
        )));
    }
    let sets: Vec<(StrictPartition, _)> = enumerate_degree2(n, u)?
        .map(|p| {
            let f = chain_f_vector(&p);
            (p, f)
        })
        .collect();
    Ok(i_range
        .iter()
        .map(|&i| {
            let values: Vec<BigNat> = sets.iter().map(|(_, f)| hf_from_fvector(f, i)).collect();
            let min_value = values.iter().min().cloned().expect("nonempty window");
            let winners = sets
                .iter()
                .zip(&values)
                .filter(|(_, v)| **v == min_value)
                .map(|((p, _), _)| p.clone())
                .collect();
            WitnessRow {
                i,
                min_value,
                winners,
            }
        })
        .collect())
}

/// `true` when the two segment multiplicities coincide but the segments differ.
pub fn is_segment_tie(spec: SegmentSpec) -> bool {
    lex_segment(spec) != revlex_segment(spec) && lex_multiplicity(spec) == revlex_multiplicity(spec)
}

/// Sizes `u <= C(n_max+1, 2)` where distinct segments tie on multiplicity.
pub fn segment_ties_up_to(n_max: u32) -> Vec<u64> {
    (1..=n_max)
        .flat_map(|n| (1..=n).map(move |r| SegmentSpec::from_r(n, r).expect("window")))
        .filter(|&spec| is_segment_tie(spec))
        .map(|spec| spec.u)
        .collect()
}

/// Lower end of the window for `n`.
pub fn window_start(n: u32) -> u64 {
    choose2(u64::from(n)) + 1
}

/// Outcome of one cross-method consistency check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
}

impl OracleCheck {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn run_check<I, F>(name: &str, items: I, ok: F) -> OracleCheck
where
    I: IntoIterator,
    F: Fn(I::Item) -> bool,
{
    let (mut cases, mut failures) = (0, 0);
    for item in items {
        cases += 1;
        if !ok(item) {
            failures += 1;
        }
    }
    OracleCheck {
        name: name.to_owned(),
        cases,
        failures,
    }
}

/// Compares every independent method against the others on all diagrams with
/// at most `n_max` columns. Product-set tables are limited to `n <= 8`,
/// `i <= 4`.
pub fn cross_check(n_max: u32, memory_cap: u64) -> Result<Vec<OracleCheck>> {
    if n_max == 0 {
        return Err(Error::range("n_max must be at least 1"));
    }
    let diagrams: Vec<StrictPartition> = (1..=n_max)
        .flat_map(|n| {
            (window_start(n)..=choose2(u64::from(n) + 1))
                .flat_map(move |u| enumerate_degree2(n, u).expect("window"))
        })
        .collect();
    let specs: Vec<SegmentSpec> = (1..=n_max)
        .flat_map(|n| (1..=n).map(move |r| SegmentSpec::from_r(n, r).expect("window")))
        .collect();

    let mut checks = vec![
        run_check("path_count = subpartition_count", &diagrams, |p| {
            path_count(p) == subpartition_count(p)
        }),
        run_check("closed forms = path_count of segments", &specs, |&spec| {
            lex_multiplicity(spec) == path_count(&lex_segment(spec))
                && revlex_multiplicity(spec) == path_count(&revlex_segment(spec))
        }),
        run_check("row/column split", &diagrams, |p| {
            decompose_row_column(p).path_sum() == path_count(p)
        }),
        run_check("diagonal strip", &diagrams, |p| match diagonal_strip(p) {
            Some((wide, narrow)) => path_count(&wide) == path_count(&narrow) * 2u32,
            None => true,
        }),
        run_check("RevLex <= p <= Lex in dominance order", &diagrams, |p| {
            let spec = SegmentSpec::new(p.n(), p.u()).expect("window");
            let le = |d| matches!(d, Ok(Dominance::Less | Dominance::Equal));
            le(dominance_compare(&revlex_segment(spec), p))
                && le(dominance_compare(p, &lex_segment(spec)))
        }),
        run_check("c_n of the chain counts = path_count", &diagrams, |p| {
            chain_f_vector(p).chains(p.n() as usize) == path_count(p)
        }),
    ];

    let mut incremental: Vec<StrictPartition> = Vec::new();
    let mut incremental_ok = true;
    for diag in incremental_generate(1, n_max)? {
        incremental_ok &= diag.diag_counts == diagonal_path_counts(&diag.partition);
        incremental.push(diag.partition);
    }
    incremental.sort();
    let mut sorted = diagrams.clone();
    sorted.sort();
    checks.push(OracleCheck {
        name: "incremental generation = direct enumeration".to_owned(),
        cases: incremental.len() as u64,
        failures: u64::from(!(incremental_ok && incremental == sorted)),
    });

    let small: Vec<&StrictPartition> = diagrams.iter().filter(|p| p.n() <= 8).collect();
    let mut brute = OracleCheck {
        name: "product sets = chain-count Hilbert function".to_owned(),
        cases: 0,
        failures: 0,
    };
    for p in small {
        let table = hf_bruteforce(&partition_to_stable_set(p), 4, memory_cap)?;
        let f = chain_f_vector(p);
        brute.cases += 1;
        if (0..=4u64).any(|i| table.get(i as usize) != Some(&hf_from_fvector(&f, i))) {
            brute.failures += 1;
        }
    }
    checks.push(brute);
    Ok(checks)
}
