//! First-return decomposition: a non-empty path is either `F L'` or
//! `U_k L_1 D L_2 D ... L_k D L'` with every `L_j` and `L'` a path.

use crate::paths::Step;

pub(crate) enum Block<'a> {
    Flat {
        rest: &'a [Step],
    },
    Up {
        k: u32,
        parts: Vec<&'a [Step]>,
        rest: &'a [Step],
    },
}

/// Splits off the first block of a valid step sequence.
pub(crate) fn first_block(steps: &[Step]) -> Option<Block<'_>> {
    let first = *steps.first()?;
    let Some(k) = first.up_size() else {
        debug_assert!(first.is_flat(), "path cannot start with a down step");
        return Some(Block::Flat { rest: &steps[1..] });
    };
    // Heights are relative to the start of the block. L_j sits at level
    // k - j + 1 and ends at the first down step leaving that level.
    let mut parts = Vec::with_capacity(k as usize);
    let mut height = i64::from(k);
    let mut start = 1;
    let mut i = 1;
    while parts.len() < k as usize {
        let s = steps[i];
        if s.is_down() && height == i64::from(k) - parts.len() as i64 {
            parts.push(&steps[start..i]);
            start = i + 1;
        }
        height += i64::from(s.rise());
        i += 1;
    }
    Some(Block::Up {
        k,
        parts,
        rest: &steps[start..],
    })
}
