//! Brute-force class counting, position-set characterizations, and class
//! size statistics.
//!
//! The oracle enumerates every Lukasiewicz path of a given length, encodes
//! its signature to bytes and counts distinct encodings. The sweep is split
//! by first step and the partitions run on the rayon pool; per-partition
//! sets are merged by union, so counts do not depend on scheduling.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::paths::{first_steps, for_each_path_starting_with, PathFamily, Step};
use crate::patterns::{encode_signature, PatternRelation};

pub const DEFAULT_ORACLE_BOUND: usize = 13;

/// Largest length handled by subset enumeration in
/// [`count_valid_position_sets`]; longer lengths use the recurrences.
pub const SUBSET_ENUMERATION_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("length {n} exceeds the oracle bound {bound}")]
    ResourceLimit { n: usize, bound: usize },
    #[error("relation {0} has no position-set characterization")]
    UnsupportedPattern(PatternRelation),
    #[error("invalid position set for {pattern} at length {n}: {reason}")]
    InvalidPositionSet {
        n: usize,
        pattern: PatternRelation,
        reason: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMethod {
    Oracle,
    Characterization,
    Canonical,
}

impl CountMethod {
    pub fn name(self) -> &'static str {
        match self {
            CountMethod::Oracle => "oracle",
            CountMethod::Characterization => "characterization",
            CountMethod::Canonical => "canonical",
        }
    }
}

impl fmt::Display for CountMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CountMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "oracle" => Ok(CountMethod::Oracle),
            "characterization" => Ok(CountMethod::Characterization),
            "canonical" => Ok(CountMethod::Canonical),
            _ => Err(format!("unknown count method `{s}`")),
        }
    }
}

/// Number of classes of one relation at one length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCount {
    pub n: usize,
    pub relation: PatternRelation,
    pub method: CountMethod,
    pub count: u64,
}

impl ClassCount {
    pub const CSV_HEADER: &'static str = "n,relation,method,count";

    pub fn csv_row(&self) -> String {
        format!("{},{},{},{}", self.n, self.relation, self.method, self.count)
    }
}

/// Exhaustive class counter with a configurable length bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    bound: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            bound: DEFAULT_ORACLE_BOUND,
        }
    }
}

impl Oracle {
    pub fn with_bound(bound: usize) -> Oracle {
        Oracle { bound }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    fn check(&self, n: usize) -> Result<(), QuotientError> {
        if n > self.bound {
            Err(QuotientError::ResourceLimit {
                n,
                bound: self.bound,
            })
        } else {
            Ok(())
        }
    }

    pub fn count_classes(&self, n: usize, r: PatternRelation) -> Result<ClassCount, QuotientError> {
        Ok(self.count_classes_many(n, &[r])?.remove(0))
    }

    /// One sweep over the length-`n` paths for several relations at once.
    pub fn count_classes_many(
        &self,
        n: usize,
        relations: &[PatternRelation],
    ) -> Result<Vec<ClassCount>, QuotientError> {
        self.check(n)?;
        let sets = sweep(n, PathFamily::Lukasiewicz, relations, |_| true);
        Ok(relations
            .iter()
            .zip(sets)
            .map(|(&relation, set)| ClassCount {
                n,
                relation,
                method: CountMethod::Oracle,
                count: set.len() as u64,
            })
            .collect())
    }

    /// Class count restricted to paths accepted by `filter`, e.g. the paths
    /// starting with `U` and ending with `D`.
    pub fn count_classes_where<P>(
        &self,
        n: usize,
        r: PatternRelation,
        filter: P,
    ) -> Result<u64, QuotientError>
    where
        P: Fn(&[Step]) -> bool + Sync,
    {
        self.check(n)?;
        Ok(sweep(n, PathFamily::Lukasiewicz, &[r], filter)[0].len() as u64)
    }

    /// Number of distinct signatures among the Motzkin paths of length `n`.
    pub fn count_motzkin_classes(&self, n: usize, r: PatternRelation) -> Result<u64, QuotientError> {
        self.check(n)?;
        Ok(sweep(n, PathFamily::Motzkin, &[r], |_| true)[0].len() as u64)
    }

    /// Maps class size to the number of classes of that size.
    pub fn class_size_histogram(
        &self,
        n: usize,
        r: PatternRelation,
    ) -> Result<BTreeMap<usize, usize>, QuotientError> {
        self.check(n)?;
        let partitions: Vec<HashMap<Vec<u8>, usize>> = first_steps_or_empty(n)
            .into_par_iter()
            .map(|first| {
                let mut sizes: HashMap<Vec<u8>, usize> = HashMap::new();
                let mut buf = Vec::new();
                visit_partition(n, PathFamily::Lukasiewicz, first, |steps| {
                    buf.clear();
                    encode_signature(steps, r, &mut buf);
                    *sizes.entry(buf.clone()).or_default() += 1;
                });
                sizes
            })
            .collect();
        let mut merged: HashMap<Vec<u8>, usize> = HashMap::new();
        for part in partitions {
            for (k, v) in part {
                *merged.entry(k).or_default() += v;
            }
        }
        let mut hist = BTreeMap::new();
        for size in merged.into_values() {
            *hist.entry(size).or_default() += 1;
        }
        Ok(hist)
    }
}

/// `None` stands for the single empty path.
fn first_steps_or_empty(n: usize) -> Vec<Option<Step>> {
    if n == 0 {
        vec![None]
    } else {
        first_steps(n, PathFamily::Lukasiewicz)
            .into_iter()
            .map(Some)
            .collect()
    }
}

fn visit_partition<F: FnMut(&[Step])>(n: usize, family: PathFamily, first: Option<Step>, mut f: F) {
    match first {
        None => f(&[]),
        Some(s) => for_each_path_starting_with(n, family, s, f),
    }
}

fn sweep<P>(
    n: usize,
    family: PathFamily,
    relations: &[PatternRelation],
    filter: P,
) -> Vec<HashSet<Vec<u8>>>
where
    P: Fn(&[Step]) -> bool + Sync,
{
    let firsts: Vec<Option<Step>> = if n == 0 {
        vec![None]
    } else {
        first_steps(n, family).into_iter().map(Some).collect()
    };
    let partitions: Vec<Vec<HashSet<Vec<u8>>>> = firsts
        .into_par_iter()
        .map(|first| {
            let mut sets = vec![HashSet::new(); relations.len()];
            let mut buf = Vec::new();
            visit_partition(n, family, first, |steps| {
                if !filter(steps) {
                    return;
                }
                for (set, &r) in sets.iter_mut().zip(relations) {
                    buf.clear();
                    encode_signature(steps, r, &mut buf);
                    if !set.contains(&buf) {
                        set.insert(buf.clone());
                    }
                }
            });
            sets
        })
        .collect();
    let mut merged = vec![HashSet::new(); relations.len()];
    for part in partitions {
        for (acc, set) in merged.iter_mut().zip(part) {
            acc.extend(set);
        }
    }
    merged
}

pub fn count_classes_oracle(n: usize, r: PatternRelation) -> Result<ClassCount, QuotientError> {
    Oracle::default().count_classes(n, r)
}

pub fn class_size_histogram(
    n: usize,
    r: PatternRelation,
) -> Result<BTreeMap<usize, usize>, QuotientError> {
    Oracle::default().class_size_histogram(n, r)
}

/// The relations whose possible occurrence sets have a closed description.
pub const CHARACTERIZED: [PatternRelation; 5] = [
    PatternRelation::F,
    PatternRelation::D,
    PatternRelation::FD,
    PatternRelation::DF,
    PatternRelation::DD,
];

/// A set of occurrence positions that some path of length `n` realizes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositionSet {
    n: usize,
    pattern: PatternRelation,
    positions: Vec<usize>,
}

impl PositionSet {
    pub fn new(
        n: usize,
        pattern: PatternRelation,
        positions: Vec<usize>,
    ) -> Result<PositionSet, QuotientError> {
        check_position_set(n, pattern, &positions)?;
        Ok(PositionSet {
            n,
            pattern,
            positions,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pattern(&self) -> PatternRelation {
        self.pattern
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }
}

/// Checks the characterization of possible occurrence sets:
/// * `F`: any subset of `[1, n]` except those of size `n - 1`;
/// * `D`: subsets of `[2, n]`;
/// * `FD`, `DF`: subsets of `[2, n - 1]` without two adjacent positions;
/// * `DD`: subsets of `[2, n - 1]` without two positions at distance 2.
pub fn check_position_set(
    n: usize,
    pattern: PatternRelation,
    positions: &[usize],
) -> Result<(), QuotientError> {
    let invalid = |reason: String| QuotientError::InvalidPositionSet { n, pattern, reason };
    if !CHARACTERIZED.contains(&pattern) {
        return Err(QuotientError::UnsupportedPattern(pattern));
    }
    if let Some(w) = positions.windows(2).find(|w| w[0] >= w[1]) {
        return Err(invalid(format!("positions {} and {} are not increasing", w[0], w[1])));
    }
    let (lo, hi) = match pattern {
        PatternRelation::F => (1, n),
        PatternRelation::D => (2, n),
        _ => (2, n.saturating_sub(1)),
    };
    if let Some(&p) = positions.iter().find(|&&p| p < lo || p > hi) {
        return Err(invalid(format!("position {p} outside [{lo}, {hi}]")));
    }
    match pattern {
        PatternRelation::F if n >= 1 && positions.len() == n - 1 => {
            Err(invalid(format!("exactly {} flats cannot occur", n - 1)))
        }
        PatternRelation::FD | PatternRelation::DF => {
            match positions.windows(2).find(|w| w[1] - w[0] == 1) {
                Some(w) => Err(invalid(format!("adjacent positions {} and {}", w[0], w[1]))),
                None => Ok(()),
            }
        }
        PatternRelation::DD => match positions.windows(2).find(|w| w[1] - w[0] == 2) {
            Some(w) => Err(invalid(format!("positions {} and {} at distance 2", w[0], w[1]))),
            None => Ok(()),
        },
        _ => Ok(()),
    }
}

/// Number of valid occurrence sets of `pattern` at length `n`, which is the
/// number of classes. Up to [`SUBSET_ENUMERATION_LIMIT`] every subset of
/// `[1, n]` is tested against the characterization; above it the count
/// comes from [`count_position_sets_by_recurrence`].
pub fn count_valid_position_sets(
    n: usize,
    pattern: PatternRelation,
) -> Result<ClassCount, QuotientError> {
    if !CHARACTERIZED.contains(&pattern) {
        return Err(QuotientError::UnsupportedPattern(pattern));
    }
    let count = if n <= SUBSET_ENUMERATION_LIMIT {
        count_position_sets_by_enumeration(n, pattern)?
    } else {
        count_position_sets_by_recurrence(n, pattern)?
    };
    Ok(ClassCount {
        n,
        relation: pattern,
        method: CountMethod::Characterization,
        count,
    })
}

pub fn count_position_sets_by_enumeration(
    n: usize,
    pattern: PatternRelation,
) -> Result<u64, QuotientError> {
    if !CHARACTERIZED.contains(&pattern) {
        return Err(QuotientError::UnsupportedPattern(pattern));
    }
    assert!(n < 64, "subset enumeration needs n < 64");
    let mut positions = Vec::with_capacity(n);
    let mut count = 0;
    for mask in 0u64..(1u64 << n) {
        positions.clear();
        positions.extend((0..n).filter(|b| mask >> b & 1 == 1).map(|b| b + 1));
        if check_position_set(n, pattern, &positions).is_ok() {
            count += 1;
        }
    }
    Ok(count)
}

/// Counts valid position sets without listing them: binomial sums for `F`
/// and `D`, and a last-chosen-position recurrence for the gap-constrained
/// patterns.
pub fn count_position_sets_by_recurrence(
    n: usize,
    pattern: PatternRelation,
) -> Result<u64, QuotientError> {
    let binomial_row = |m: usize| -> Vec<u64> {
        let mut row = vec![1u64];
        for _ in 0..m {
            let mut next = vec![1u64; row.len() + 1];
            for i in 1..row.len() {
                next[i] = row[i - 1] + row[i];
            }
            row = next;
        }
        row
    };
    match pattern {
        PatternRelation::F => {
            let row = binomial_row(n);
            Ok(row
                .iter()
                .enumerate()
                .filter(|&(size, _)| n == 0 || size != n - 1)
                .map(|(_, c)| c)
                .sum())
        }
        PatternRelation::D => Ok(binomial_row(n.saturating_sub(1)).iter().sum()),
        PatternRelation::FD | PatternRelation::DF => Ok(gapped_subsets(n, 1)),
        PatternRelation::DD => Ok(gapped_subsets(n, 2)),
        other => Err(QuotientError::UnsupportedPattern(other)),
    }
}

/// Subsets of `[2, n - 1]` with no two elements at distance `forbidden`.
/// `ending[p]` counts the valid non-empty sets whose largest element is `p`.
fn gapped_subsets(n: usize, forbidden: usize) -> u64 {
    if n < 3 {
        return 1;
    }
    let (lo, hi) = (2, n - 1);
    let mut ending = vec![0u64; n + 1];
    for p in lo..=hi {
        ending[p] = 1 + (lo..p)
            .filter(|&q| p - q != forbidden)
            .map(|q| ending[q])
            .sum::<u64>();
    }
    1 + ending.iter().sum::<u64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::enumerate_paths;
    use crate::patterns::occurrences;

    #[test]
    fn small_counts() {
        let o = Oracle::default();
        assert_eq!(o.count_classes(4, PatternRelation::FF).unwrap().count, 5);
        for r in PatternRelation::ALL {
            assert_eq!(o.count_classes(1, r).unwrap().count, 1);
            assert_eq!(o.count_classes(0, r).unwrap().count, 1);
        }
    }

    #[test]
    fn bound_enforced() {
        let o = Oracle::with_bound(5);
        assert_eq!(
            o.count_classes(6, PatternRelation::U),
            Err(QuotientError::ResourceLimit { n: 6, bound: 5 })
        );
        assert!(o.class_size_histogram(6, PatternRelation::U).is_err());
    }

    #[test]
    fn histograms() {
        let o = Oracle::default();
        assert_eq!(
            o.class_size_histogram(1, PatternRelation::F).unwrap(),
            BTreeMap::from([(1, 1)])
        );
        assert_eq!(
            o.class_size_histogram(2, PatternRelation::FF).unwrap(),
            BTreeMap::from([(1, 2)])
        );
        let h = o.class_size_histogram(4, PatternRelation::D).unwrap();
        assert_eq!(h.values().sum::<usize>(), 8);
        assert_eq!(h.iter().map(|(s, m)| s * m).sum::<usize>(), 14);
    }

    #[test]
    fn position_set_examples() {
        assert_eq!(count_valid_position_sets(4, PatternRelation::F).unwrap().count, 12);
        assert_eq!(count_valid_position_sets(5, PatternRelation::D).unwrap().count, 16);
        assert_eq!(count_valid_position_sets(5, PatternRelation::DD).unwrap().count, 7);
        assert_eq!(
            count_valid_position_sets(5, PatternRelation::UU),
            Err(QuotientError::UnsupportedPattern(PatternRelation::UU))
        );
    }

    #[test]
    fn characterization_rejections() {
        assert!(PositionSet::new(3, PatternRelation::F, vec![1, 2]).is_err());
        assert!(PositionSet::new(3, PatternRelation::F, vec![1, 2, 3]).is_ok());
        assert!(PositionSet::new(4, PatternRelation::D, vec![1]).is_err());
        assert!(PositionSet::new(6, PatternRelation::FD, vec![2, 3]).is_err());
        assert!(PositionSet::new(6, PatternRelation::DF, vec![2, 5]).is_ok());
        assert!(PositionSet::new(6, PatternRelation::DF, vec![2, 6]).is_err());
        assert!(PositionSet::new(8, PatternRelation::DD, vec![2, 4]).is_err());
        assert!(PositionSet::new(8, PatternRelation::DD, vec![2, 3, 4]).is_ok());
        assert!(PositionSet::new(8, PatternRelation::DD, vec![3, 2]).is_err());
    }

    #[test]
    fn enumeration_matches_recurrence() {
        for pattern in CHARACTERIZED {
            for n in 0..=16 {
                assert_eq!(
                    count_position_sets_by_enumeration(n, pattern).unwrap(),
                    count_position_sets_by_recurrence(n, pattern).unwrap(),
                    "{pattern} n={n}"
                );
            }
        }
    }

    #[test]
    fn realized_sets_satisfy_characterization() {
        for n in 0..=9 {
            for p in enumerate_paths(n, PathFamily::Lukasiewicz) {
                for pattern in CHARACTERIZED {
                    let pos = occurrences(&p, pattern).positions();
                    assert!(check_position_set(n, pattern, &pos).is_ok(), "{p} {pattern}");
                }
            }
        }
    }

    #[test]
    fn csv_row_format() {
        let c = ClassCount {
            n: 4,
            relation: PatternRelation::FF,
            method: CountMethod::Oracle,
            count: 5,
        };
        assert_eq!(c.csv_row(), "4,FF,oracle,5");
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, r#"{"n":4,"relation":"FF","method":"oracle","count":5}"#);
        assert_eq!(serde_json::from_str::<ClassCount>(&json).unwrap(), c);
    }
}
