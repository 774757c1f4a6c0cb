//! Projections onto the canonical subsets `B`, `C`, `E` and `Fset`.
//!
//! `B`, `C` and `E` share one construction: keep the occurrences of the
//! relation's pattern where they are, and fill each gap with as many down
//! steps as the current height allows, then flats.

use crate::paths::{Path, Step};
use crate::patterns::{occurrences, PatternRelation};

use super::{push_greedy, CanonicalError};

/// Rebuilds the greedy representative from a family signature: at each
/// 1-based position `(i, k)` place `U_k` followed by `second` (if any), and
/// fill the gaps greedily. Returns `None` if the positions overlap or the
/// result does not end on the x-axis.
pub(crate) fn rebuild_greedy(
    n: usize,
    signature: &[(usize, u32)],
    second: Option<Step>,
) -> Option<Path> {
    let width = 1 + usize::from(second.is_some());
    let mut out = Vec::with_capacity(n);
    let mut height = 0usize;
    let mut cursor = 0usize;
    for (idx, &(pos, k)) in signature.iter().enumerate() {
        let start = pos.checked_sub(1)?;
        let gap = start.checked_sub(cursor)?;
        if idx == 0 {
            out.extend(std::iter::repeat_n(Step::F, gap));
        } else {
            push_greedy(&mut out, &mut height, gap);
        }
        if k == 0 {
            return None;
        }
        out.push(Step::up(k));
        height += k as usize;
        if let Some(s) = second {
            out.push(s);
            height = height.checked_add_signed(s.rise() as isize)?;
        }
        cursor = start + width;
    }
    let tail = n.checked_sub(cursor)?;
    if signature.is_empty() {
        out.extend(std::iter::repeat_n(Step::F, tail));
    } else {
        push_greedy(&mut out, &mut height, tail);
    }
    (height == 0).then(|| Path::from_steps_unchecked(out))
}

fn weighted(p: &Path, r: PatternRelation) -> Vec<(usize, u32)> {
    match occurrences(p, r) {
        crate::patterns::Signature::Weighted(w) => w,
        crate::patterns::Signature::Positions(_) => unreachable!("{r} is a family relation"),
    }
}

/// The member of `B` with the same up steps at the same positions.
pub fn to_b(p: &Path) -> Path {
    rebuild_greedy(p.len(), &weighted(p, PatternRelation::Uk), None)
        .expect("greedy fill of a realizable up-step signature")
}

/// The member of `C` with the same `U_kD` signature.
pub fn to_c(p: &Path) -> Path {
    rebuild_greedy(p.len(), &weighted(p, PatternRelation::UkD), Some(Step::D))
        .expect("greedy fill of a realizable UkD signature")
}

/// The member of `E` with the same `U_kF` signature.
pub fn to_e(p: &Path) -> Path {
    rebuild_greedy(p.len(), &weighted(p, PatternRelation::UkF), Some(Step::F))
        .expect("greedy fill of a realizable UkF signature")
}

/// The member of `E` of length `n` whose `U_kF` signature is `signature`,
/// if one exists.
pub fn e_from_signature(n: usize, signature: &[(usize, u32)]) -> Option<Path> {
    rebuild_greedy(n, signature, Some(Step::F))
}

/// The member of `Fset` with the same `FF` signature.
///
/// Runs of at least two flats stay in place. Every other stretch becomes a
/// run of downs, except the first non-empty one, which becomes `U_b D^{m-1}`
/// with `b` the total number of downs.
pub fn to_f(p: &Path) -> Result<Path, CanonicalError> {
    let steps = p.steps();
    let n = steps.len();
    if steps.iter().all(|s| s.is_flat()) {
        return Ok(p.clone());
    }
    // Alternating segments: (is_flat_run, length).
    let mut segments: Vec<(bool, usize)> = Vec::new();
    let mut i = 0;
    while i < n {
        let run = steps[i..].iter().take_while(|s| s.is_flat()).count();
        let (is_run, len) = if run >= 2 {
            (true, run)
        } else {
            let mut j = i;
            while j < n {
                let flats = steps[j..].iter().take_while(|s| s.is_flat()).count();
                if flats >= 2 {
                    break;
                }
                j += flats.max(1);
            }
            (false, j - i)
        };
        segments.push((is_run, len));
        i += len;
    }
    let downs: usize = segments.iter().filter(|s| !s.0).map(|s| s.1).sum::<usize>() - 1;
    if downs == 0 {
        return Err(CanonicalError::NoDownSteps);
    }
    let mut out = Vec::with_capacity(n);
    let mut opened = false;
    for (is_run, len) in segments {
        if is_run {
            out.extend(std::iter::repeat_n(Step::F, len));
        } else if !opened {
            out.push(Step::up(downs as u32));
            out.extend(std::iter::repeat_n(Step::D, len - 1));
            opened = true;
        } else {
            out.extend(std::iter::repeat_n(Step::D, len));
        }
    }
    Ok(Path::from_steps_unchecked(out))
}
