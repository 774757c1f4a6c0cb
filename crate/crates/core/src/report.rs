//! Printed reference counts and method-by-method verification reports.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::patterns::PatternRelation;
use crate::quotient::{Oracle, QuotientError};
use crate::series::{expand, Series, SeriesError, SeriesTag};

const TABLE1_CSV: &str = include_str!("../data/table1.csv");

/// One printed row: `values[i]` is the class count at length `first_n + i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceRow {
    pub relation: PatternRelation,
    pub first_n: usize,
    pub values: Vec<u64>,
}

impl ReferenceRow {
    pub fn value_at(&self, n: usize) -> Option<u64> {
        n.checked_sub(self.first_n)
            .and_then(|i| self.values.get(i))
            .copied()
    }

    /// The lengths covered by the row.
    pub fn lengths(&self) -> std::ops::Range<usize> {
        self.first_n..self.first_n + self.values.len()
    }
}

fn parse_table(text: &str) -> Vec<ReferenceRow> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .skip(1)
        .map(|line| {
            let mut fields = line.splitn(3, ',');
            let mut next = || fields.next().expect("three fields per row");
            let relation = next().parse().expect("known relation");
            let first_n = next().parse().expect("numeric first_n");
            let values = next()
                .split_whitespace()
                .map(|v| v.parse().expect("numeric value"))
                .collect();
            ReferenceRow {
                relation,
                first_n,
                values,
            }
        })
        .collect()
}

/// The vendored table of class counts, one row per relation.
pub fn reference_table() -> &'static [ReferenceRow] {
    static TABLE: OnceLock<Vec<ReferenceRow>> = OnceLock::new();
    TABLE.get_or_init(|| parse_table(TABLE1_CSV))
}

pub fn reference_row(r: PatternRelation) -> &'static ReferenceRow {
    reference_table()
        .iter()
        .find(|row| row.relation == r)
        .expect("every relation has a reference row")
}

fn as_string<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn as_opt_string<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationRow {
    pub n: usize,
    pub tag: SeriesTag,
    /// `oracle`, `closed`, `recurrence` or `fixpoint`.
    pub method: String,
    #[serde(serialize_with = "as_string")]
    pub value: BigInt,
    #[serde(serialize_with = "as_opt_string")]
    pub reference: Option<BigInt>,
    /// Where the reference comes from: `table` or a series method name.
    pub reference_source: String,
    pub pass: bool,
}

impl VerificationRow {
    pub const CSV_HEADER: &'static str = "n,tag,method,value,reference,reference_source,pass";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.n,
            self.tag,
            self.method,
            self.value,
            self.reference.as_ref().map(|r| r.to_string()).unwrap_or_default(),
            self.reference_source,
            self.pass
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub rows: Vec<VerificationRow>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerificationRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.rows.extend(other.rows);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(VerificationRow::CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.csv_row());
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
}

/// Series values for every method defining `tag`, through degree `max_n`.
fn series_values(tag: SeriesTag, max_n: usize) -> Result<Vec<(String, Vec<BigInt>)>, SeriesError> {
    tag.methods()
        .into_iter()
        .map(|m| {
            let s: Series = expand(tag, m, max_n)?;
            Ok((m.name().to_string(), s.to_integers()?))
        })
        .collect()
}

fn push_rows(
    report: &mut VerificationReport,
    tag: SeriesTag,
    n: usize,
    values: &[(String, BigInt)],
) {
    let printed = match tag {
        SeriesTag::Relation(r) => reference_row(r).value_at(n).map(BigInt::from),
        SeriesTag::Set(_) => None,
    };
    // Without a printed value the first series method is the reference.
    let (reference, source) = match printed {
        Some(v) => (Some(v), "table".to_string()),
        None => match values.iter().find(|(m, _)| m != "oracle") {
            Some((m, v)) => (Some(v.clone()), m.clone()),
            None => (None, String::new()),
        },
    };
    for (method, value) in values {
        report.rows.push(VerificationRow {
            n,
            tag,
            method: method.clone(),
            value: value.clone(),
            pass: reference.as_ref().is_none_or(|r| r == value),
            reference: reference.clone(),
            reference_source: source.clone(),
        });
    }
}

/// Compares, for each `n <= max_n`, every series method for `tag` and the
/// oracle (relations only, within its bound) against the printed value, or
/// against the first series method where nothing is printed.
pub fn compare(tag: SeriesTag, max_n: usize, oracle: &Oracle) -> Result<VerificationReport, ReportError> {
    let series = series_values(tag, max_n)?;
    let mut report = VerificationReport::default();
    for n in 0..=max_n {
        let mut values: Vec<(String, BigInt)> = Vec::new();
        if let SeriesTag::Relation(r) = tag {
            if n <= oracle.bound() {
                values.push(("oracle".into(), oracle.count_classes(n, r)?.count.into()));
            }
        }
        values.extend(series.iter().map(|(m, v)| (m.clone(), v[n].clone())));
        push_rows(&mut report, tag, n, &values);
    }
    Ok(report)
}

/// [`compare`] for several relations, sharing one oracle sweep per length.
/// `progress` is called before each length.
pub fn verify_relations(
    relations: &[PatternRelation],
    max_n: usize,
    oracle: &Oracle,
    mut progress: impl FnMut(usize),
) -> Result<VerificationReport, ReportError> {
    let mut series: HashMap<PatternRelation, Vec<(String, Vec<BigInt>)>> = HashMap::new();
    for &r in relations {
        series.insert(r, series_values(SeriesTag::Relation(r), max_n)?);
    }
    let mut per_relation: HashMap<PatternRelation, VerificationReport> = HashMap::new();
    for n in 0..=max_n {
        progress(n);
        let counts = if n <= oracle.bound() {
            Some(oracle.count_classes_many(n, relations)?)
        } else {
            None
        };
        for (i, &r) in relations.iter().enumerate() {
            let mut values: Vec<(String, BigInt)> = Vec::new();
            if let Some(c) = &counts {
                values.push(("oracle".into(), c[i].count.into()));
            }
            values.extend(series[&r].iter().map(|(m, v)| (m.clone(), v[n].clone())));
            push_rows(per_relation.entry(r).or_default(), SeriesTag::Relation(r), n, &values);
        }
    }
    let mut report = VerificationReport::default();
    for r in relations {
        if let Some(rep) = per_relation.remove(r) {
            report.extend(rep);
        }
    }
    Ok(report)
}
