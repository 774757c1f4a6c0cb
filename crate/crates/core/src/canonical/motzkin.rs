//! Motzkin representatives for the relations `U`, `UU`, `UD`, `DU`, `FU`
//! and `UF`.

use crate::paths::{Path, Step};
use crate::patterns::PatternRelation;

use super::decompose::{first_block, Block};
use super::{push_greedy, CanonicalError};

/// Replaces every block opened by `U_k`, `k >= 2`, with flats, keeping
/// `U1` blocks. Positions of `U`, `UU` and `UD` are unchanged.
pub fn phi(p: &Path) -> Path {
    let mut out = Vec::with_capacity(p.len());
    phi_into(p.steps(), &mut out);
    Path::from_steps_unchecked(out)
}

fn phi_into(mut steps: &[Step], out: &mut Vec<Step>) {
    while let Some(block) = first_block(steps) {
        match block {
            Block::Flat { rest } => {
                out.push(Step::F);
                steps = rest;
            }
            Block::Up { k: 1, parts, rest } => {
                out.push(Step::U);
                phi_into(parts[0], out);
                out.push(Step::D);
                steps = rest;
            }
            Block::Up { parts, rest, .. } => {
                for part in parts {
                    out.push(Step::F);
                    phi_into(part, out);
                }
                out.push(Step::F);
                steps = rest;
            }
        }
    }
}

/// Maximal runs of a two-step pattern: `(start, repetitions)` with 0-based
/// starts. Occurrences two apart belong to the same run.
fn runs(steps: &[Step], alpha: PatternRelation) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for i in 0..steps.len() {
        if alpha.match_at(steps, i).is_none() {
            continue;
        }
        match out.last_mut() {
            Some((start, a)) if *start + 2 * *a == i => *a += 1,
            _ => out.push((i, 1)),
        }
    }
    out
}

/// Builds `U F^{b0-1} (DU)^{a1} F^{b1} ... (DU)^{ar} D F^{br-1}` from the
/// maximal `DU` runs of `p`, or `F^n` when `p` has no `DU`.
pub fn motzkinize_du(p: &Path) -> Result<Path, CanonicalError> {
    let steps = p.steps();
    let n = steps.len();
    let blocks = runs(steps, PatternRelation::DU);
    if blocks.is_empty() {
        return Ok(Path::flats(n));
    }
    let r = blocks.len();
    let end = |i: usize| blocks[i].0 + 2 * blocks[i].1;
    let b0 = blocks[0].0;
    let br = n - end(r - 1);
    if b0 == 0 {
        return Err(CanonicalError::EmptyOuterBlock { block: 0 });
    }
    if br == 0 {
        return Err(CanonicalError::EmptyOuterBlock { block: r });
    }
    let mut out = Vec::with_capacity(n);
    out.push(Step::U);
    out.extend(std::iter::repeat_n(Step::F, b0 - 1));
    for (i, &(_, a)) in blocks.iter().enumerate() {
        for _ in 0..a {
            out.extend([Step::D, Step::U]);
        }
        if i + 1 < r {
            out.extend(std::iter::repeat_n(Step::F, blocks[i + 1].0 - end(i)));
        }
    }
    out.push(Step::D);
    out.extend(std::iter::repeat_n(Step::F, br - 1));
    Ok(Path::from_steps_unchecked(out))
}

/// Builds `F^{b0} prod alpha^{ai} D^{ci} F^{bi-ci}` for `alpha` in `{FU, UF}`,
/// with `ci` the largest number of downs the current height allows.
pub fn motzkinize_runs(p: &Path, alpha: PatternRelation) -> Result<Path, CanonicalError> {
    let pair = match alpha {
        PatternRelation::FU => [Step::F, Step::U],
        PatternRelation::UF => [Step::U, Step::F],
        other => return Err(CanonicalError::UnsupportedPattern(other)),
    };
    let steps = p.steps();
    let n = steps.len();
    let blocks = runs(steps, alpha);
    let mut out = Vec::with_capacity(n);
    let b0 = blocks.first().map_or(n, |b| b.0);
    out.extend(std::iter::repeat_n(Step::F, b0));
    let mut height = 0;
    for (i, &(start, a)) in blocks.iter().enumerate() {
        for _ in 0..a {
            out.extend(pair);
        }
        height += a;
        let end = start + 2 * a;
        let next = blocks.get(i + 1).map_or(n, |b| b.0);
        push_greedy(&mut out, &mut height, next - end);
    }
    Path::new(out).map_err(CanonicalError::Construction)
}
