//! The maps `psi`, `xi` and `theta`.

use crate::paths::{Path, Step};

use super::decompose::{first_block, Block};

/// `psi(F L) = F psi(L)` and
/// `psi(U_k L_1 D ... L_k D L) = U psi(L_1) F psi(L_2) F ... psi(L_k) D psi(L)`.
pub fn psi(p: &Path) -> Path {
    let mut out = Vec::with_capacity(p.len());
    psi_into(p.steps(), &mut out);
    Path::from_steps_unchecked(out)
}

fn psi_into(mut steps: &[Step], out: &mut Vec<Step>) {
    while let Some(block) = first_block(steps) {
        match block {
            Block::Flat { rest } => {
                out.push(Step::F);
                steps = rest;
            }
            Block::Up { parts, rest, .. } => {
                out.push(Step::U);
                for (j, part) in parts.into_iter().enumerate() {
                    if j > 0 {
                        out.push(Step::F);
                    }
                    psi_into(part, out);
                }
                out.push(Step::D);
                steps = rest;
            }
        }
    }
}

/// Swaps every `U_kF` to `FU_k`. Occurrences of `U_kF` never overlap, so a
/// single left-to-right pass rewrites all of them.
pub fn xi(p: &Path) -> Path {
    Path::from_steps_unchecked(swap_pairs(p.steps(), Step::F))
}

/// Swaps every `U_kD` to `DU_k` and wraps the result as `U ... D`.
pub fn theta(p: &Path) -> Path {
    let mut out = Vec::with_capacity(p.len() + 2);
    out.push(Step::U);
    out.extend(swap_pairs(p.steps(), Step::D));
    out.push(Step::D);
    Path::from_steps_unchecked(out)
}

fn swap_pairs(steps: &[Step], second: Step) -> Vec<Step> {
    let mut out = steps.to_vec();
    let mut i = 0;
    while i + 1 < out.len() {
        if out[i].is_up() && out[i + 1] == second {
            out.swap(i, i + 1);
            i += 2;
        } else {
            i += 1;
        }
    }
    out
}
