//! Steps, paths and path families.
//!
//! A path is stored as the sequence of its step rises: `D = -1`, `F = 0`,
//! `U = U1 = +1` and `Uk = +k`. Validation checks the family alphabet, that
//! no prefix dips below the x-axis, and that the path ends on the axis.
//!
//! The text form used everywhere (CLI, golden tests, error messages) is a
//! whitespace-free token string over `D`, `F`, `U` and `U<k>` with `k >= 2`,
//! e.g. `U5DDFFDU2DDDDU2FU2DDDD`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    /// 1-based position of the first step ending below the x-axis.
    #[error("path goes below the x-axis at step {0}")]
    PrefixBelowAxis(usize),
    #[error("path ends at ordinate {0} instead of 0")]
    NonzeroEndHeight(i64),
    /// 1-based position of the first step not allowed in the family.
    #[error("step {0} is outside the path family")]
    StepOutsideFamily(usize),
    #[error("cannot parse path at byte {offset}: {reason}")]
    Parse { offset: usize, reason: String },
}

/// A single step, identified by its rise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step(i32);

impl Step {
    pub const D: Step = Step(-1);
    pub const F: Step = Step(0);
    pub const U: Step = Step(1);

    /// Returns `None` for rises below `-1`.
    pub fn new(rise: i32) -> Option<Step> {
        (rise >= -1).then_some(Step(rise))
    }

    /// The up step `U_k`. `up(0)` is the flat step.
    pub fn up(k: u32) -> Step {
        Step(i32::try_from(k).expect("up step rise overflows i32"))
    }

    #[inline]
    pub fn rise(self) -> i32 {
        self.0
    }

    #[inline]
    pub fn is_down(self) -> bool {
        self.0 == -1
    }

    #[inline]
    pub fn is_flat(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_up(self) -> bool {
        self.0 >= 1
    }

    /// `k` for an up step `U_k`.
    #[inline]
    pub fn up_size(self) -> Option<u32> {
        self.is_up().then_some(self.0 as u32)
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            -1 => f.write_str("D"),
            0 => f.write_str("F"),
            1 => f.write_str("U"),
            k => write!(f, "U{k}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PathFamily {
    Lukasiewicz,
    Motzkin,
    Dyck,
}

impl PathFamily {
    pub fn allows(self, step: Step) -> bool {
        match self {
            PathFamily::Lukasiewicz => step.rise() >= -1,
            PathFamily::Motzkin => (-1..=1).contains(&step.rise()),
            PathFamily::Dyck => step.rise() == 1 || step.rise() == -1,
        }
    }

    /// Rises tried in lexicographic order; Lukasiewicz is open-ended and is
    /// capped by the caller.
    fn max_rise(self) -> i32 {
        match self {
            PathFamily::Lukasiewicz => i32::MAX,
            PathFamily::Motzkin | PathFamily::Dyck => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PathFamily::Lukasiewicz => "Lukasiewicz",
            PathFamily::Motzkin => "Motzkin",
            PathFamily::Dyck => "Dyck",
        }
    }
}

impl FromStr for PathFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Lukasiewicz" | "lukasiewicz" | "L" => Ok(PathFamily::Lukasiewicz),
            "Motzkin" | "motzkin" | "M" => Ok(PathFamily::Motzkin),
            "Dyck" | "dyck" => Ok(PathFamily::Dyck),
            _ => Err(format!("unknown path family `{s}`")),
        }
    }
}

/// The canonical subsets of Lukasiewicz paths used as class representatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SubsetTag {
    /// No flat step at positive height.
    B,
    /// No flat step at all.
    Bbar,
    /// `B`, and every up step is immediately followed by a down step.
    C,
    /// `C` without flats.
    Cbar,
    /// Every up step is immediately followed by a flat, and every flat at
    /// positive height is the second step of such a `UkF`.
    E,
    /// `E` without flats on the x-axis.
    Ebar,
    /// `{ε, F}` plus the paths with at most one up step in which every flat
    /// belongs to an `FF` occurrence.
    Fset,
}

impl SubsetTag {
    pub const ALL: [SubsetTag; 7] = [
        SubsetTag::B,
        SubsetTag::Bbar,
        SubsetTag::C,
        SubsetTag::Cbar,
        SubsetTag::E,
        SubsetTag::Ebar,
        SubsetTag::Fset,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SubsetTag::B => "B",
            SubsetTag::Bbar => "Bbar",
            SubsetTag::C => "C",
            SubsetTag::Cbar => "Cbar",
            SubsetTag::E => "E",
            SubsetTag::Ebar => "Ebar",
            SubsetTag::Fset => "Fset",
        }
    }
}

impl FromStr for SubsetTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SubsetTag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown subset `{s}`"))
    }
}

/// A Lukasiewicz path. Construction always validates, so every `Path` value
/// starts and ends on the x-axis and never goes below it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Path {
    steps: Vec<Step>,
}

impl Path {
    pub fn empty() -> Path {
        Path { steps: Vec::new() }
    }

    /// `F^n`.
    pub fn flats(n: usize) -> Path {
        Path { steps: vec![Step::F; n] }
    }

    pub fn new(steps: Vec<Step>) -> Result<Path, PathError> {
        check_steps(&steps, PathFamily::Lukasiewicz)?;
        Ok(Path { steps })
    }

    /// Callers guarantee the steps form a valid path; checked in debug builds.
    pub(crate) fn from_steps_unchecked(steps: Vec<Step>) -> Path {
        debug_assert!(
            check_steps(&steps, PathFamily::Lukasiewicz).is_ok(),
            "invalid path built internally: {}",
            DisplaySteps(&steps)
        );
        Path { steps }
    }

    pub fn from_rises(rises: &[i32]) -> Result<Path, PathError> {
        validate(rises, PathFamily::Lukasiewicz)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn rises(&self) -> Vec<i32> {
        self.steps.iter().map(|s| s.rise()).collect()
    }

    /// Ordinates of the `n + 1` points of the path.
    pub fn ordinates(&self) -> Vec<i64> {
        ordinates(&self.steps)
    }

    pub fn concat(&self, other: &Path) -> Path {
        let mut steps = Vec::with_capacity(self.len() + other.len());
        steps.extend_from_slice(&self.steps);
        steps.extend_from_slice(&other.steps);
        Path { steps }
    }

    pub fn belongs_to(&self, family: PathFamily) -> bool {
        self.steps.iter().all(|&s| family.allows(s))
    }

    pub fn in_subset(&self, tag: SubsetTag) -> bool {
        in_subset(self, tag)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        DisplaySteps(&self.steps).fmt(f)
    }
}

/// Formats a raw step slice in the path text grammar.
pub struct DisplaySteps<'a>(pub &'a [Step]);

impl fmt::Display for DisplaySteps<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|s| s.fmt(f))
    }
}

impl FromStr for Path {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Path::new(parse_steps(s)?)
    }
}

impl Serialize for Path {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Path {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses the token grammar without checking path validity.
pub fn parse_steps(s: &str) -> Result<Vec<Step>, PathError> {
    let bytes = s.as_bytes();
    let mut steps = Vec::with_capacity(bytes.len());
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'D' => {
                steps.push(Step::D);
                i += 1;
            }
            b'F' => {
                steps.push(Step::F);
                i += 1;
            }
            b'U' => {
                let start = i + 1;
                let mut end = start;
                while end < bytes.len() && bytes[end].is_ascii_digit() {
                    end += 1;
                }
                if end == start {
                    steps.push(Step::U);
                } else {
                    let k: u32 = s[start..end].parse().map_err(|_| PathError::Parse {
                        offset: start,
                        reason: "up step size out of range".into(),
                    })?;
                    if k < 2 {
                        return Err(PathError::Parse {
                            offset: start,
                            reason: format!("`U{k}` is not allowed, write `U` for U1"),
                        });
                    }
                    steps.push(Step::up(k));
                }
                i = end;
            }
            other => {
                return Err(PathError::Parse {
                    offset: i,
                    reason: format!("unexpected character {:?}", other as char),
                })
            }
        }
    }
    Ok(steps)
}

/// Validates a rise sequence against a family.
pub fn validate(rises: &[i32], family: PathFamily) -> Result<Path, PathError> {
    let steps = rises
        .iter()
        .enumerate()
        .map(|(i, &r)| Step::new(r).ok_or(PathError::StepOutsideFamily(i + 1)))
        .collect::<Result<Vec<_>, _>>()?;
    check_steps(&steps, family)?;
    Ok(Path { steps })
}

fn check_steps(steps: &[Step], family: PathFamily) -> Result<(), PathError> {
    let mut height: i64 = 0;
    for (i, &s) in steps.iter().enumerate() {
        if !family.allows(s) {
            return Err(PathError::StepOutsideFamily(i + 1));
        }
        height += i64::from(s.rise());
        if height < 0 {
            return Err(PathError::PrefixBelowAxis(i + 1));
        }
    }
    if height != 0 {
        return Err(PathError::NonzeroEndHeight(height));
    }
    Ok(())
}

pub(crate) fn ordinates(steps: &[Step]) -> Vec<i64> {
    let mut out = Vec::with_capacity(steps.len() + 1);
    let mut h = 0i64;
    out.push(h);
    for s in steps {
        h += i64::from(s.rise());
        out.push(h);
    }
    out
}

/// All paths of length `n` in `family`, in lexicographic order of rises.
pub fn enumerate_paths(n: usize, family: PathFamily) -> Vec<Path> {
    let mut out = Vec::new();
    for_each_path(n, family, |steps| out.push(Path { steps: steps.to_vec() }));
    out
}

/// Visits every path of length `n` without allocating a `Path` per visit.
pub fn for_each_path<F: FnMut(&[Step])>(n: usize, family: PathFamily, mut visit: F) {
    let mut buf = Vec::with_capacity(n);
    walk(&mut buf, n, 0, family, &mut visit);
}

/// The admissible first steps of length-`n` paths; enumeration can be split
/// into one independent partition per entry.
pub fn first_steps(n: usize, family: PathFamily) -> Vec<Step> {
    if n == 0 {
        return Vec::new();
    }
    admissible(0, n, family).map(Step).collect()
}

/// Visits the paths of length `n` whose first step is `first`, in order.
pub fn for_each_path_starting_with<F: FnMut(&[Step])>(
    n: usize,
    family: PathFamily,
    first: Step,
    mut visit: F,
) {
    if n == 0 || !admissible(0, n, family).any(|r| r == first.rise()) {
        return;
    }
    let mut buf = Vec::with_capacity(n);
    buf.push(first);
    walk(&mut buf, n - 1, i64::from(first.rise()), family, &mut visit);
}

/// Rises allowed at `height` with `remaining` steps left (this one included):
/// the next ordinate must stay in `0..=remaining - 1`.
fn admissible(height: i64, remaining: usize, family: PathFamily) -> impl Iterator<Item = i32> {
    let lo: i64 = if height == 0 { 0 } else { -1 };
    let hi = (remaining as i64 - 1 - height).min(i64::from(family.max_rise()));
    (lo..=hi)
        .map(|r| r as i32)
        .filter(move |&r| family.allows(Step(r)))
}

fn walk<F: FnMut(&[Step])>(
    buf: &mut Vec<Step>,
    remaining: usize,
    height: i64,
    family: PathFamily,
    visit: &mut F,
) {
    if remaining == 0 {
        if height == 0 {
            visit(buf);
        }
        return;
    }
    for r in admissible(height, remaining, family) {
        buf.push(Step(r));
        walk(buf, remaining - 1, height + i64::from(r), family, visit);
        buf.pop();
    }
}

/// Membership in one of the canonical subsets.
pub fn in_subset(p: &Path, tag: SubsetTag) -> bool {
    steps_in_subset(p.steps(), tag)
}

pub(crate) fn steps_in_subset(steps: &[Step], tag: SubsetTag) -> bool {
    let heights = ordinates(steps);
    // A flat keeps its ordinate, so heights[i] is its height.
    let flat_heights = || {
        steps
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_flat())
            .map(|(i, _)| (i, heights[i]))
    };
    let no_raised_flats = || flat_heights().all(|(_, h)| h == 0);
    let ups_followed_by = |next: Step| {
        steps
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_up())
            .all(|(i, _)| steps.get(i + 1) == Some(&next))
    };
    match tag {
        SubsetTag::B => no_raised_flats(),
        SubsetTag::Bbar => flat_heights().next().is_none(),
        SubsetTag::C => no_raised_flats() && ups_followed_by(Step::D),
        SubsetTag::Cbar => flat_heights().next().is_none() && ups_followed_by(Step::D),
        SubsetTag::E | SubsetTag::Ebar => {
            let flats_ok = flat_heights().all(|(i, h)| {
                let after_up = i > 0 && steps[i - 1].is_up();
                if tag == SubsetTag::Ebar && h == 0 {
                    return false;
                }
                h == 0 || after_up
            });
            ups_followed_by(Step::F) && flats_ok
        }
        SubsetTag::Fset => {
            if steps.is_empty() || steps == [Step::F] {
                return true;
            }
            let ups = steps.iter().filter(|s| s.is_up()).count();
            let flats_paired = steps.iter().enumerate().filter(|(_, s)| s.is_flat()).all(|(i, _)| {
                (i > 0 && steps[i - 1].is_flat()) || steps.get(i + 1).is_some_and(|s| s.is_flat())
            });
            ups <= 1 && flats_paired
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Path {
        s.parse().unwrap()
    }

    #[test]
    fn empty_is_valid() {
        assert_eq!(validate(&[], PathFamily::Lukasiewicz).unwrap(), Path::empty());
        assert_eq!(Path::empty().to_string(), "");
    }

    #[test]
    fn figure_one_path_c() {
        let rises = [5, -1, -1, 0, 0, -1, 2, -1, -1, -1, -1, 2, 0, 2, -1, -1, -1, -1];
        let c = validate(&rises, PathFamily::Lukasiewicz).unwrap();
        assert_eq!(c.to_string(), "U5DDFFDU2DDDDU2FU2DDDD");
        assert_eq!(p("U5DDFFDU2DDDDU2FU2DDDD"), c);
        assert_eq!(
            validate(&rises, PathFamily::Motzkin),
            Err(PathError::StepOutsideFamily(1))
        );
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            validate(&[-1, 1], PathFamily::Lukasiewicz),
            Err(PathError::PrefixBelowAxis(1))
        );
        assert_eq!(
            validate(&[1, 0], PathFamily::Lukasiewicz),
            Err(PathError::NonzeroEndHeight(1))
        );
        assert_eq!(
            validate(&[1, -2, 1], PathFamily::Lukasiewicz),
            Err(PathError::StepOutsideFamily(2))
        );
        assert_eq!(
            validate(&[0, 1, -1], PathFamily::Dyck),
            Err(PathError::StepOutsideFamily(1))
        );
        assert!("UX".parse::<Path>().is_err());
        assert!("U1D".parse::<Path>().is_err());
        assert_eq!("DU".parse::<Path>(), Err(PathError::PrefixBelowAxis(1)));
    }

    #[test]
    fn length_three_in_order() {
        let all: Vec<String> = enumerate_paths(3, PathFamily::Lukasiewicz)
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(all, ["FFF", "FUD", "UDF", "UFD", "U2DD"]);
    }

    #[test]
    fn zero_length() {
        for fam in [PathFamily::Lukasiewicz, PathFamily::Motzkin, PathFamily::Dyck] {
            assert_eq!(enumerate_paths(0, fam), vec![Path::empty()]);
        }
    }

    #[test]
    fn motzkin_four() {
        assert_eq!(enumerate_paths(4, PathFamily::Motzkin).len(), 9);
        assert_eq!(enumerate_paths(4, PathFamily::Dyck).len(), 2);
        assert_eq!(enumerate_paths(5, PathFamily::Dyck).len(), 0);
    }

    #[test]
    fn partitions_cover_enumeration() {
        for n in 0..9 {
            let mut parts = Vec::new();
            for first in first_steps(n, PathFamily::Lukasiewicz) {
                for_each_path_starting_with(n, PathFamily::Lukasiewicz, first, |s| {
                    parts.push(s.to_vec())
                });
            }
            let whole: Vec<Vec<Step>> = enumerate_paths(n, PathFamily::Lukasiewicz)
                .into_iter()
                .map(|p| p.steps)
                .collect();
            if n > 0 {
                assert_eq!(parts, whole);
            }
        }
    }

    #[test]
    fn subset_examples() {
        assert!(p("U3DDDFUD").in_subset(SubsetTag::B));
        assert!(!p("U3FDDDUD").in_subset(SubsetTag::B));
        assert!(p("U3DDDFUD").in_subset(SubsetTag::C));
        assert!(!p("U3FDDDUD").in_subset(SubsetTag::C));
        assert!(!p("U3DDDFUFD").in_subset(SubsetTag::E));
        assert!(p("U3FDDDFUFD").in_subset(SubsetTag::E));
        // U3FDDFDUD has a U followed by D and a flat at height 1 that does not
        // follow an up step, so it violates both clauses of E.
        assert!(!p("U3FDDFDUD").in_subset(SubsetTag::E));
        assert!(!p("FFU3FFDDFDFFF").in_subset(SubsetTag::Fset));
        assert!(p("FFU3DFFDDFF").in_subset(SubsetTag::Fset));
        assert!(p("F").in_subset(SubsetTag::Fset));
        assert!(Path::empty().in_subset(SubsetTag::Fset));
        assert!(!p("FUD").in_subset(SubsetTag::Fset));
        assert!(p("UFD").in_subset(SubsetTag::Ebar));
        assert!(!p("FUFD").in_subset(SubsetTag::Ebar));
        assert!(p("U2DD").in_subset(SubsetTag::Bbar));
        assert!(p("U2DD").in_subset(SubsetTag::C));
        assert!(!p("UUDD").in_subset(SubsetTag::C));
        assert!(p("U2DUDD").in_subset(SubsetTag::Cbar));
    }
}
