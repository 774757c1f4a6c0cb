//! Paths realizing a prescribed occurrence set of `F`, `D`, `FD`, `DF` or
//! `DD`.

use crate::paths::{Path, Step};
use crate::patterns::PatternRelation;
use crate::quotient::check_position_set;

use super::CanonicalError;

fn flats(out: &mut Vec<Step>, count: usize) {
    out.extend(std::iter::repeat_n(Step::F, count));
}

/// Inserts flats at `positions` into the scaffold `U2DD(UD)^k` (odd number
/// of remaining steps) or `(UD)^k` (even).
pub fn witness_f(n: usize, positions: &[usize]) -> Result<Path, CanonicalError> {
    check_position_set(n, PatternRelation::F, positions)?;
    let m = n - positions.len();
    let mut scaffold = Vec::with_capacity(m);
    if m % 2 == 1 {
        scaffold.extend([Step::up(2), Step::D, Step::D]);
    }
    while scaffold.len() < m {
        scaffold.extend([Step::U, Step::D]);
    }
    let mut rest = scaffold.into_iter();
    let mut wanted = positions.iter().peekable();
    let out = (1..=n)
        .map(|i| {
            if wanted.peek() == Some(&&i) {
                wanted.next();
                Step::F
            } else {
                rest.next().expect("scaffold length matches")
            }
        })
        .collect();
    Ok(Path::from_steps_unchecked(out))
}

/// `U_l F^{i1-2} prod D F^{i(j+1)-ij-1}` with `i(l+1) = n + 1`.
pub fn witness_d(n: usize, positions: &[usize]) -> Result<Path, CanonicalError> {
    check_position_set(n, PatternRelation::D, positions)?;
    witness_runs(n, positions, &[Step::D])
}

/// `U_l F^{i1-2} prod alpha F^{i(j+1)-ij-2}` with `i(l+1) = n + 1`.
pub fn witness_adj(
    n: usize,
    positions: &[usize],
    pattern: PatternRelation,
) -> Result<Path, CanonicalError> {
    let alpha = match pattern {
        PatternRelation::FD => [Step::F, Step::D],
        PatternRelation::DF => [Step::D, Step::F],
        other => return Err(CanonicalError::UnsupportedPattern(other)),
    };
    check_position_set(n, pattern, positions)?;
    witness_runs(n, positions, &alpha)
}

fn witness_runs(n: usize, positions: &[usize], unit: &[Step]) -> Result<Path, CanonicalError> {
    let Some(&first) = positions.first() else {
        return Ok(Path::flats(n));
    };
    let mut out = Vec::with_capacity(n);
    out.push(Step::up(positions.len() as u32));
    flats(&mut out, first - 2);
    for (j, &i) in positions.iter().enumerate() {
        let next = positions.get(j + 1).copied().unwrap_or(n + 1);
        out.extend_from_slice(unit);
        flats(&mut out, next - i - unit.len());
    }
    Ok(Path::from_steps_unchecked(out))
}

/// Puts a down step on every position covered by a `DD` occurrence, an up
/// step balancing them at position 1, and flats elsewhere.
pub fn witness_dd(n: usize, positions: &[usize]) -> Result<Path, CanonicalError> {
    check_position_set(n, PatternRelation::DD, positions)?;
    if positions.is_empty() {
        return Ok(Path::flats(n));
    }
    let mut out = vec![Step::F; n];
    for &i in positions {
        out[i - 1] = Step::D;
        out[i] = Step::D;
    }
    let downs = out.iter().filter(|s| s.is_down()).count();
    out[0] = Step::up(downs as u32);
    Ok(Path::from_steps_unchecked(out))
}

/// Dispatches on the pattern.
pub fn witness(
    pattern: PatternRelation,
    n: usize,
    positions: &[usize],
) -> Result<Path, CanonicalError> {
    match pattern {
        PatternRelation::F => witness_f(n, positions),
        PatternRelation::D => witness_d(n, positions),
        PatternRelation::FD | PatternRelation::DF => witness_adj(n, positions, pattern),
        PatternRelation::DD => witness_dd(n, positions),
        other => Err(CanonicalError::UnsupportedPattern(other)),
    }
}
