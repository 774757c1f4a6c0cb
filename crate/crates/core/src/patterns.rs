//! Pattern occurrences and the signatures that define the 17 relations.
//!
//! In the fixed relations `U` means a rise of exactly one. The family
//! relations (`Uk`, `UkD`, `UkF`, `FUk`, `DUk`) match an up step of any size
//! and record that size next to the position, so two paths are equivalent
//! only when the positions agree for every `k` at once.
//!
//! Positions are 1-based and overlapping occurrences are all reported.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::paths::{Path, Step};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("paths have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PatternRelation {
    U,
    UU,
    UD,
    UF,
    DU,
    FU,
    F,
    D,
    FD,
    DF,
    DD,
    FF,
    Uk,
    UkD,
    UkF,
    FUk,
    DUk,
}

impl PatternRelation {
    /// Table order.
    pub const ALL: [PatternRelation; 17] = [
        PatternRelation::U,
        PatternRelation::UU,
        PatternRelation::UD,
        PatternRelation::UF,
        PatternRelation::FU,
        PatternRelation::DU,
        PatternRelation::F,
        PatternRelation::D,
        PatternRelation::FD,
        PatternRelation::DF,
        PatternRelation::DD,
        PatternRelation::Uk,
        PatternRelation::FF,
        PatternRelation::FUk,
        PatternRelation::UkF,
        PatternRelation::UkD,
        PatternRelation::DUk,
    ];

    pub fn name(self) -> &'static str {
        use PatternRelation::*;
        match self {
            U => "U",
            UU => "UU",
            UD => "UD",
            UF => "UF",
            DU => "DU",
            FU => "FU",
            F => "F",
            D => "D",
            FD => "FD",
            DF => "DF",
            DD => "DD",
            FF => "FF",
            Uk => "Uk",
            UkD => "UkD",
            UkF => "UkF",
            FUk => "FUk",
            DUk => "DUk",
        }
    }

    pub fn is_family(self) -> bool {
        use PatternRelation::*;
        matches!(self, Uk | UkD | UkF | FUk | DUk)
    }

    pub fn pattern_len(self) -> usize {
        use PatternRelation::*;
        match self {
            U | F | D | Uk => 1,
            _ => 2,
        }
    }

    /// Whether the pattern occurs at 0-based index `i`. For family relations
    /// the payload is the size of the matched up step, otherwise it is 0.
    #[inline]
    pub fn match_at(self, steps: &[Step], i: usize) -> Option<u32> {
        use PatternRelation::*;
        let a = *steps.get(i)?;
        let next = || steps.get(i + 1).copied();
        let hit = |b: bool| b.then_some(0);
        match self {
            U => hit(a == Step::U),
            F => hit(a == Step::F),
            D => hit(a == Step::D),
            Uk => a.up_size(),
            _ => {
                let b = next()?;
                match self {
                    UU => hit(a == Step::U && b == Step::U),
                    UD => hit(a == Step::U && b == Step::D),
                    UF => hit(a == Step::U && b == Step::F),
                    DU => hit(a == Step::D && b == Step::U),
                    FU => hit(a == Step::F && b == Step::U),
                    FD => hit(a == Step::F && b == Step::D),
                    DF => hit(a == Step::D && b == Step::F),
                    DD => hit(a == Step::D && b == Step::D),
                    FF => hit(a == Step::F && b == Step::F),
                    UkD => a.up_size().filter(|_| b == Step::D),
                    UkF => a.up_size().filter(|_| b == Step::F),
                    FUk => b.up_size().filter(|_| a == Step::F),
                    DUk => b.up_size().filter(|_| a == Step::D),
                    U | F | D | Uk => unreachable!(),
                }
            }
        }
    }
}

impl fmt::Display for PatternRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PatternRelation {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PatternRelation::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| PatternError::UnknownRelation(s.to_string()))
    }
}

/// Occurrence fingerprint of a path under one relation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Signature {
    /// Strictly increasing 1-based positions.
    Positions(Vec<usize>),
    /// Strictly increasing 1-based positions with the up-step size there.
    Weighted(Vec<(usize, u32)>),
}

impl Signature {
    pub fn positions(&self) -> Vec<usize> {
        match self {
            Signature::Positions(p) => p.clone(),
            Signature::Weighted(w) => w.iter().map(|&(i, _)| i).collect(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Signature::Positions(p) => p.len(),
            Signature::Weighted(w) => w.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn occurrences(p: &Path, r: PatternRelation) -> Signature {
    occurrences_in(p.steps(), r)
}

pub fn occurrences_in(steps: &[Step], r: PatternRelation) -> Signature {
    let hits = (0..steps.len()).filter_map(|i| r.match_at(steps, i).map(|k| (i + 1, k)));
    if r.is_family() {
        Signature::Weighted(hits.collect())
    } else {
        Signature::Positions(hits.map(|(i, _)| i).collect())
    }
}

/// Counts occurrences without building a signature.
pub fn count_occurrences(steps: &[Step], r: PatternRelation) -> usize {
    (0..steps.len()).filter(|&i| r.match_at(steps, i).is_some()).count()
}

pub fn equivalent(p: &Path, q: &Path, r: PatternRelation) -> Result<bool, PatternError> {
    if p.len() != q.len() {
        return Err(PatternError::LengthMismatch(p.len(), q.len()));
    }
    Ok(occurrences(p, r) == occurrences(q, r))
}

/// Appends a byte encoding of the signature to `buf`. Two step sequences of
/// the same length produce equal encodings iff their signatures are equal.
pub fn encode_signature(steps: &[Step], r: PatternRelation, buf: &mut Vec<u8>) {
    for i in 0..steps.len() {
        if let Some(k) = r.match_at(steps, i) {
            buf.extend_from_slice(&(i as u32).to_le_bytes());
            if r.is_family() {
                buf.extend_from_slice(&k.to_le_bytes());
            }
        }
    }
}
