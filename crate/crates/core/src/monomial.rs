//! Monomials as dense exponent vectors and strongly stable (Borel-closed) sets.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::partition::{Cell, StrictPartition};

/// Monomial `x_1^{a_1} ⋯ x_n^{a_n}` stored as its exponent vector.
///
/// The derived order compares exponent vectors lexicographically, so a larger
/// monomial has higher powers of the low-index variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// Product of the 1-based variables listed, e.g. `[3, 5, 6]` for `x3*x5*x6`.
    pub fn from_variables(vars: &[u32], n: u32) -> Result<Self> {
        let mut exps = vec![0u32; n as usize];
        for &v in vars {
            if v == 0 || v > n {
                return Err(Error::validation(format!("variable x{v} outside x1..x{n}")));
            }
            exps[v as usize - 1] += 1;
        }
        Ok(Monomial { exps })
    }

    /// Parses `"x3*x5*x6"`; powers may be written `x1^2` or `x1*x1`.
    pub fn parse(text: &str, n: u32) -> Result<Self> {
        let mut vars = Vec::new();
        for factor in text.split('*') {
            let factor = factor.trim();
            let body = factor
                .strip_prefix('x')
                .ok_or_else(|| Error::validation(format!("bad factor {factor:?} in {text:?}")))?;
            let (var, pow) = match body.split_once('^') {
                Some((v, p)) => (v, p),
                None => (body, "1"),
            };
            let var: u32 = var
                .parse()
                .map_err(|_| Error::validation(format!("bad variable in {factor:?}")))?;
            let pow: u32 = pow
                .parse()
                .map_err(|_| Error::validation(format!("bad exponent in {factor:?}")))?;
            vars.extend(std::iter::repeat_n(var, pow as usize));
        }
        Monomial::from_variables(&vars, n)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn n_vars(&self) -> u32 {
        self.exps.len() as u32
    }

    /// Largest 1-based index of a variable dividing the monomial.
    pub fn max_variable(&self) -> Option<u32> {
        self.exps.iter().rposition(|&e| e > 0).map(|i| i as u32 + 1)
    }

    /// 1-based variable indices with multiplicity, ascending.
    pub fn variables(&self) -> Vec<u32> {
        self.exps
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i as u32 + 1, e as usize))
            .collect()
    }

    /// Elementary Borel moves `x_i -> x_{i-1}`.
    pub(crate) fn borel_moves(&self) -> impl Iterator<Item = Monomial> + '_ {
        (1..self.exps.len()).filter(|&i| self.exps[i] > 0).map(|i| {
            let mut exps = self.exps.clone();
            exps[i] -= 1;
            exps[i - 1] += 1;
            Monomial { exps }
        })
    }

    /// Inverse elementary moves `x_i -> x_{i+1}`.
    pub(crate) fn inverse_borel_moves(&self) -> impl Iterator<Item = Monomial> + '_ {
        (0..self.exps.len().saturating_sub(1))
            .filter(|&i| self.exps[i] > 0)
            .map(|i| {
                let mut exps = self.exps.clone();
                exps[i] -= 1;
                exps[i + 1] += 1;
                Monomial { exps }
            })
    }

    /// Same monomial viewed in `n` variables; callers ensure no used variable is dropped.
    fn widened(&self, n: u32) -> Monomial {
        let mut exps = self.exps.clone();
        exps.resize(n as usize, 0);
        Monomial { exps }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// A strongly stable set of degree-`d` monomials in `n` variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StableSet {
    n: u32,
    d: u32,
    members: BTreeSet<Monomial>,
}

impl StableSet {
    /// Validates degrees, arity and Borel closure.
    pub fn new(n: u32, d: u32, members: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let members: BTreeSet<Monomial> = members.into_iter().collect();
        for m in &members {
            if m.n_vars() != n {
                return Err(Error::validation(format!("{m} is not in {n} variables")));
            }
            if m.degree() != d {
                return Err(Error::validation(format!("{m} does not have degree {d}")));
            }
        }
        let set = StableSet { n, d, members };
        if let Some((m, missing)) = set.closure_violation() {
            return Err(Error::validation(format!(
                "not strongly stable: {m} is present but {missing} is not"
            )));
        }
        Ok(set)
    }

    pub(crate) fn from_closed_unchecked(n: u32, d: u32, members: BTreeSet<Monomial>) -> Self {
        StableSet { n, d, members }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.members.contains(m)
    }

    /// Members from the largest (`x1^d`) down.
    pub fn members(&self) -> impl DoubleEndedIterator<Item = &Monomial> + '_ {
        self.members.iter().rev()
    }

    /// Number of variables actually occurring in some member.
    pub fn variables_used(&self) -> u32 {
        self.members
            .iter()
            .filter_map(Monomial::max_variable)
            .max()
            .unwrap_or(0)
    }

    /// Minimal strongly stable generators: members not reachable by a Borel
    /// move from another member.
    pub fn generators(&self) -> Vec<Monomial> {
        self.members()
            .filter(|m| {
                m.inverse_borel_moves()
                    .all(|up| !self.members.contains(&up))
            })
            .cloned()
            .collect()
    }

    pub fn is_borel_closed(&self) -> bool {
        self.closure_violation().is_none()
    }

    fn closure_violation(&self) -> Option<(Monomial, Monomial)> {
        self.members.iter().find_map(|m| {
            m.borel_moves()
                .find(|moved| !self.members.contains(moved))
                .map(|moved| (m.clone(), moved))
        })
    }
}

/// Smallest strongly stable set in `n` variables containing `generators`.
pub fn borel_closure(generators: &[Monomial], n: u32) -> Result<StableSet> {
    let first = generators
        .first()
        .ok_or_else(|| Error::validation("borel_closure needs at least one generator"))?;
    let d = first.degree();
    if d == 0 {
        return Err(Error::validation("generators must have degree >= 1"));
    }
    let mut members = BTreeSet::new();
    let mut frontier = Vec::new();
    for g in generators {
        if g.degree() != d {
            return Err(Error::validation(format!(
                "inconsistent degrees: {g} has degree {}, expected {d}",
                g.degree()
            )));
        }
        if g.max_variable().unwrap_or(0) > n {
            return Err(Error::validation(format!(
                "{g} uses more than {n} variables"
            )));
        }
        let g = g.widened(n);
        if members.insert(g.clone()) {
            frontier.push(g);
        }
    }
    while let Some(m) = frontier.pop() {
        for moved in m.borel_moves() {
            if members.insert(moved.clone()) {
                frontier.push(moved);
            }
        }
    }
    Ok(StableSet::from_closed_unchecked(n, d, members))
}

/// The quadratic monomial set of a shifted diagram, box `(i, j)` ↦ `x_i x_j`.
pub fn partition_to_stable_set(p: &StrictPartition) -> StableSet {
    let n = p.n();
    let members = p
        .cells()
        .map(|c| Monomial::from_variables(&[c.row, c.col], n).expect("cells lie inside n columns"))
        .collect();
    StableSet::from_closed_unchecked(n, 2, members)
}

/// Reads a degree-two strongly stable set back as its row-length partition.
pub fn stable_set_to_partition(w: &StableSet) -> Result<StrictPartition> {
    if w.degree() != 2 {
        return Err(Error::UnsupportedDegree(w.degree()));
    }
    if w.is_empty() {
        return Err(Error::validation("empty set has no diagram"));
    }
    let mut rows = vec![0u32; w.n() as usize];
    for m in &w.members {
        let vars = m.variables();
        let cell = Cell::new(vars[0], vars[1])?;
        rows[cell.row as usize - 1] += 1;
    }
    while rows.last() == Some(&0) {
        rows.pop();
    }
    StrictPartition::from_rows(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(text: &str, n: u32) -> Monomial {
        Monomial::parse(text, n).unwrap()
    }

    #[test]
    fn figure_one_closure() {
        let w = borel_closure(&[mono("x2*x6", 6), mono("x3*x4", 6)], 6).unwrap();
        let listed = [
            "x1^2", "x1*x2", "x1*x3", "x1*x4", "x1*x5", "x1*x6", "x2^2", "x2*x3", "x2*x4", "x2*x5",
            "x2*x6", "x3^2", "x3*x4",
        ];
        assert_eq!(w.len(), 13);
        for m in listed {
            assert!(w.contains(&mono(m, 6)), "{m}");
        }
        assert_eq!(stable_set_to_partition(&w).unwrap().parts(), &[6, 5, 2]);
        assert_eq!(w.generators(), vec![mono("x2*x6", 6), mono("x3*x4", 6)]);
    }

    #[test]
    fn pure_power_of_first_variable_is_closed() {
        for n in 1..5 {
            let w = borel_closure(&[mono("x1^3", n)], n).unwrap();
            assert_eq!(w.len(), 1);
        }
    }

    #[test]
    fn degree_three_principal_set() {
        let w = borel_closure(&[mono("x3*x5*x6", 6)], 6).unwrap();
        assert_eq!(w.len(), 43);
        assert!(w.is_borel_closed());
        assert_eq!(w.variables_used(), 6);
    }

    #[test]
    fn rejects_mixed_degrees() {
        let err = borel_closure(&[mono("x1*x2", 3), mono("x1*x2*x3", 3)], 3).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn full_diagram_for_two_variables() {
        let p = StrictPartition::from_rows(&[2, 1]).unwrap();
        let w = partition_to_stable_set(&p);
        let shown: Vec<String> = w.members().map(ToString::to_string).collect();
        assert_eq!(shown, ["x1^2", "x1*x2", "x2^2"]);
    }

    #[test]
    fn inverse_direction_needs_degree_two() {
        let w = borel_closure(&[mono("x1*x2*x2", 2)], 2).unwrap();
        assert_eq!(
            stable_set_to_partition(&w).unwrap_err(),
            Error::UnsupportedDegree(3)
        );
    }

    #[test]
    fn parse_and_display() {
        let m = mono("x3*x5*x6", 6);
        assert_eq!(m.to_string(), "x3*x5*x6");
        assert_eq!(mono("x1*x1", 2).to_string(), "x1^2");
        assert!(Monomial::parse("y1", 2).is_err());
        assert!(Monomial::parse("x3", 2).is_err());
    }

    #[test]
    fn new_rejects_unstable_sets() {
        let err = StableSet::new(2, 2, [mono("x2^2", 2)]).unwrap_err();
        assert!(err.to_string().contains("not strongly stable"), "{err}");
    }
}
