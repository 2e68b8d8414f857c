//! Enumeration of strongly stable sets.
//!
//! * [`enumerate_degree2`] lists the strict partitions of `u` with largest part
//!   `n` directly, in lexicographically decreasing order of parts.
//! * [`incremental_generate`] grows every diagram column by column, carrying
//!   the number of maximal NE-paths from each diagonal box along.
//! * [`enumerate_degree_d`] walks order ideals of the Borel poset of degree-`d`
//!   monomials by reverse search.
//!
//! The first two never share code so that each checks the other.

use std::collections::BTreeSet;

use crate::arith::{choose2, BigNat};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, StableSet};
use crate::partition::StrictPartition;

fn triangular(k: u64) -> u64 {
    k * (k + 1) / 2
}

/// Iterator over the strict partitions of `u` with largest part `n`.
#[derive(Debug, Clone)]
pub struct Degree2Partitions {
    n: u32,
    tail: Vec<u32>,
    left: u64,
    started: bool,
    done: bool,
}

/// Every strongly stable quadratic set of size `u` using exactly `n` variables,
/// as partitions in lexicographically decreasing order of parts.
///
/// Requires `C(n,2) < u <= C(n+1,2)`.
pub fn enumerate_degree2(n: u32, u: u64) -> Result<Degree2Partitions> {
    if n == 0 || u <= choose2(u64::from(n)) || u > choose2(u64::from(n) + 1) {
        return Err(Error::range(format!(
            "u = {u} is outside the window ({}, {}] for n = {n}",
            choose2(u64::from(n)),
            choose2(u64::from(n) + 1)
        )));
    }
    Ok(Degree2Partitions {
        n,
        tail: Vec::new(),
        left: u - u64::from(n),
        started: false,
        done: false,
    })
}

impl Degree2Partitions {
    fn bound(&self) -> u32 {
        self.tail.last().copied().unwrap_or(self.n)
    }

    /// Greedily appends the largest admissible parts. Always completes from a
    /// feasible state, i.e. one with `T(bound - 1) >= left`.
    fn descend(&mut self) {
        while self.left > 0 {
            let part = (self.bound() - 1).min(self.left as u32);
            self.tail.push(part);
            self.left -= u64::from(part);
        }
    }

    /// Lowers the deepest part that can still be lowered, then refills greedily.
    fn advance(&mut self) -> bool {
        while let Some(part) = self.tail.pop() {
            self.left += u64::from(part);
            let lower = part - 1;
            if lower >= 1 && triangular(u64::from(lower)) >= self.left {
                self.tail.push(lower);
                self.left -= u64::from(lower);
                self.descend();
                return true;
            }
        }
        false
    }
}

impl Iterator for Degree2Partitions {
    type Item = StrictPartition;

    fn next(&mut self) -> Option<StrictPartition> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.descend();
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        let mut parts = Vec::with_capacity(self.tail.len() + 1);
        parts.push(self.n);
        parts.extend_from_slice(&self.tail);
        Some(StrictPartition::from_parts_unchecked(parts))
    }
}

/// A diagram with the number of maximal NE-paths leaving each diagonal box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalAnnotatedDiagram {
    pub partition: StrictPartition,
    /// Entry `i` belongs to the diagonal box of row `i + 1`.
    pub diag_counts: Vec<BigNat>,
}

impl DiagonalAnnotatedDiagram {
    pub fn multiplicity(&self) -> BigNat {
        self.diag_counts.iter().sum()
    }
}

/// Column-by-column generation of all diagrams.
///
/// Passes run for `N = 1, 2, …, n_to`; after the pass for `N` the frontier
/// holds exactly the diagrams with `N` columns and more than `C(N,2)` boxes,
/// which are yielded when `N >= n_from`. Within a pass the order is the
/// parent order, each parent contributing its widened child before the child
/// with an extra one-box row.
#[derive(Debug, Clone)]
pub struct IncrementalDiagrams {
    frontier: Vec<DiagonalAnnotatedDiagram>,
    columns: u32,
    n_from: u32,
    n_to: u32,
    pos: usize,
}

pub fn incremental_generate(n_from: u32, n_to: u32) -> Result<IncrementalDiagrams> {
    if n_from == 0 || n_from > n_to {
        return Err(Error::range(format!(
            "need 1 <= n_from <= n_to, got n_from = {n_from}, n_to = {n_to}"
        )));
    }
    let seed = DiagonalAnnotatedDiagram {
        partition: StrictPartition::from_parts_unchecked(vec![1]),
        diag_counts: vec![BigNat::from(1u32)],
    };
    let mut gen = IncrementalDiagrams {
        frontier: vec![seed],
        columns: 1,
        n_from,
        n_to,
        pos: 0,
    };
    while gen.columns < n_from {
        gen.step();
    }
    Ok(gen)
}

impl IncrementalDiagrams {
    fn step(&mut self) {
        let columns = self.columns + 1;
        let keep_above = choose2(u64::from(columns));
        let mut next = Vec::with_capacity(self.frontier.len() * 2);
        for parent in &self.frontier {
            // Step 1: one more box at the left of every row. The new diagonal box
            // of row i sees the old diagonal of row i - 1 above and of row i to
            // its right; row 1 only goes right, giving 1.
            let widened: Vec<u32> = parent.partition.parts().iter().map(|p| p + 1).collect();
            let old = &parent.diag_counts;
            let mut counts = Vec::with_capacity(old.len() + 1);
            counts.push(BigNat::from(1u32));
            for i in 1..old.len() {
                counts.push(&old[i - 1] + &old[i]);
            }
            // Step 2: a new one-box row, whose only move is up.
            let mut extended = widened.clone();
            extended.push(1);
            let mut extended_counts = counts.clone();
            extended_counts.push(old[old.len() - 1].clone());

            for (parts, diag_counts) in [(widened, counts), (extended, extended_counts)] {
                // Step 3: drop diagrams that no longer need all the columns.
                let size: u64 = parts.iter().map(|&p| u64::from(p)).sum();
                if size > keep_above {
                    next.push(DiagonalAnnotatedDiagram {
                        partition: StrictPartition::from_parts_unchecked(parts),
                        diag_counts,
                    });
                }
            }
        }
        self.frontier = next;
        self.columns = columns;
        self.pos = 0;
    }
}

impl Iterator for IncrementalDiagrams {
    type Item = DiagonalAnnotatedDiagram;

    fn next(&mut self) -> Option<DiagonalAnnotatedDiagram> {
        loop {
            if let Some(item) = self.frontier.get(self.pos) {
                self.pos += 1;
                debug_assert!(self.columns >= self.n_from);
                return Some(item.clone());
            }
            if self.columns >= self.n_to {
                return None;
            }
            self.step();
        }
    }
}

/// All degree-`d` monomials in `n` variables, largest (`x1^d`) first.
pub fn monomials_of_degree(n: u32, d: u32) -> Vec<Monomial> {
    fn fill(exps: &mut Vec<u32>, var: usize, left: u32, out: &mut Vec<Monomial>) {
        if var + 1 == exps.len() {
            exps[var] = left;
            out.push(Monomial::from_exponents(exps.clone()));
            exps[var] = 0;
            return;
        }
        for e in (0..=left).rev() {
            exps[var] = e;
            fill(exps, var + 1, left - e, out);
        }
        exps[var] = 0;
    }
    let mut out = Vec::new();
    if n > 0 {
        fill(&mut vec![0; n as usize], 0, d, &mut out);
    }
    out
}

/// Cover relations of a finite poset whose index order is a linear extension:
/// every entry of `below[e]` is smaller than `e`.
#[derive(Debug, Clone)]
struct CoverPoset {
    below: Vec<Vec<usize>>,
    above: Vec<Vec<usize>>,
}

impl CoverPoset {
    fn dual(&self) -> CoverPoset {
        let last = self.below.len().saturating_sub(1);
        let flip = |v: &Vec<usize>| v.iter().map(|&x| last - x).collect::<Vec<_>>();
        CoverPoset {
            below: self.above.iter().rev().map(flip).collect(),
            above: self.below.iter().rev().map(flip).collect(),
        }
    }
}

/// Reverse-search traversal of order ideals of bounded size.
///
/// The parent of a nonempty ideal `J` is `J` minus its maximal element of
/// largest index, so each ideal is reached exactly once, from the empty ideal.
#[derive(Debug, Clone)]
struct IdealSearch {
    poset: CoverPoset,
    target: usize,
    forbidden: Option<usize>,
    in_set: Vec<bool>,
    missing_below: Vec<usize>,
    present_above: Vec<usize>,
    size: usize,
    // (element added to reach the node, its pending children)
    stack: Vec<(Option<usize>, Vec<usize>)>,
    fresh: bool,
}

impl IdealSearch {
    fn new(poset: CoverPoset, target: usize, forbidden: Option<usize>) -> Self {
        let total = poset.below.len();
        let missing_below = poset.below.iter().map(Vec::len).collect();
        let mut search = IdealSearch {
            poset,
            target,
            forbidden,
            in_set: vec![false; total],
            missing_below,
            present_above: vec![0; total],
            size: 0,
            stack: Vec::new(),
            fresh: true,
        };
        if target <= total {
            let children = search.children();
            search.stack.push((None, children));
        }
        search
    }

    fn children(&self) -> Vec<usize> {
        if self.size >= self.target {
            return Vec::new();
        }
        let maximal: Vec<usize> = (0..self.in_set.len())
            .filter(|&x| self.in_set[x] && self.present_above[x] == 0)
            .collect();
        let mut out: Vec<usize> = (0..self.in_set.len())
            .filter(|&m| !self.in_set[m] && self.missing_below[m] == 0)
            .filter(|&m| Some(m) != self.forbidden)
            .filter(|&m| {
                let covered = &self.poset.below[m];
                maximal
                    .iter()
                    .filter(|x| !covered.contains(x))
                    .all(|&x| x < m)
            })
            .collect();
        // Popped from the back: visit children in increasing index order.
        out.reverse();
        out
    }

    fn add(&mut self, m: usize) {
        self.in_set[m] = true;
        self.size += 1;
        for &a in &self.poset.above[m] {
            self.missing_below[a] -= 1;
        }
        for &b in &self.poset.below[m] {
            self.present_above[b] += 1;
        }
    }

    fn remove(&mut self, m: usize) {
        self.in_set[m] = false;
        self.size -= 1;
        for &a in &self.poset.above[m] {
            self.missing_below[a] += 1;
        }
        for &b in &self.poset.below[m] {
            self.present_above[b] -= 1;
        }
    }

    /// Advances to the next ideal of exactly `target` elements.
    fn next_ideal(&mut self) -> Option<&[bool]> {
        if self.fresh {
            self.fresh = false;
            if self.target == 0 && !self.stack.is_empty() {
                return Some(&self.in_set);
            }
        }
        loop {
            let (_, pending) = self.stack.last_mut()?;
            match pending.pop() {
                Some(m) => {
                    self.add(m);
                    let children = self.children();
                    self.stack.push((Some(m), children));
                    if self.size == self.target {
                        return Some(&self.in_set);
                    }
                }
                None => {
                    if let (Some(m), _) = self.stack.pop().expect("nonempty") {
                        self.remove(m);
                    }
                }
            }
        }
    }
}

/// Iterator over strongly stable sets produced by [`enumerate_degree_d`].
#[derive(Debug, Clone)]
pub struct StableSets {
    n: u32,
    d: u32,
    monomials: Vec<Monomial>,
    search: IdealSearch,
    complement: bool,
    // Index that must be present in direct mode; the dual search forbids it instead.
    witness: Option<usize>,
}

impl Iterator for StableSets {
    type Item = StableSet;

    fn next(&mut self) -> Option<StableSet> {
        let total = self.monomials.len();
        let complement = self.complement;
        let chosen = loop {
            let chosen = self.search.next_ideal()?;
            if self.witness.is_none_or(|w| chosen[w]) {
                break chosen;
            }
        };
        let members: BTreeSet<Monomial> = (0..total)
            .filter(|&i| {
                if complement {
                    !chosen[total - 1 - i]
                } else {
                    chosen[i]
                }
            })
            .map(|i| self.monomials[i].clone())
            .collect();
        Some(StableSet::from_closed_unchecked(self.n, self.d, members))
    }
}

/// Every strongly stable set of `u` degree-`d` monomials in `n` variables that
/// uses `x_n`, each exactly once.
///
/// Sets are order ideals of the Borel poset on degree-`d` monomials. When `u`
/// exceeds half the monomials the complementary filters are searched instead.
/// The order is the deterministic reverse-search order. Infeasible `u` gives an
/// empty iterator.
pub fn enumerate_degree_d(n: u32, d: u32, u: u64) -> Result<StableSets> {
    if n == 0 || d == 0 {
        return Err(Error::range(format!(
            "need n >= 1 and d >= 1, got n = {n}, d = {d}"
        )));
    }
    let monomials = monomials_of_degree(n, d);
    let index = |m: &Monomial| {
        monomials
            .binary_search_by(|probe| m.cmp(probe))
            .expect("monomial of the right degree")
    };
    let below = monomials
        .iter()
        .map(|m| m.borel_moves().map(|b| index(&b)).collect())
        .collect();
    let above = monomials
        .iter()
        .map(|m| m.inverse_borel_moves().map(|a| index(&a)).collect())
        .collect();
    let poset = CoverPoset { below, above };
    let total = monomials.len();
    // x1^(d-1) x_n lies below every monomial divisible by x_n.
    let mut vars = vec![1; d as usize - 1];
    vars.push(n);
    let witness = index(&Monomial::from_variables(&vars, n).expect("valid variables"));
    let (search, complement) = if u > total as u64 {
        (IdealSearch::new(poset, total + 1, None), false)
    } else if 2 * u > total as u64 {
        let target = total - u as usize;
        let dual = poset.dual();
        (
            IdealSearch::new(dual, target, Some(total - 1 - witness)),
            true,
        )
    } else {
        (IdealSearch::new(poset, u as usize, None), false)
    };
    Ok(StableSets {
        n,
        d,
        monomials,
        search,
        complement,
        witness: (!complement).then_some(witness),
    })
}
