//! Constructive maps: Motzkin representatives, projections onto canonical
//! subsets, witness paths for position sets, and the maps `psi`, `xi` and
//! `theta`.

mod bijections;
mod decompose;
mod motzkin;
mod projections;
mod witness;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::paths::{
    first_steps, for_each_path, for_each_path_starting_with, Path, PathError, PathFamily, Step,
    SubsetTag,
};
use crate::patterns::{occurrences, PatternRelation, Signature};
use crate::quotient::{ClassCount, CountMethod, Oracle, QuotientError, DEFAULT_ORACLE_BOUND};

pub use bijections::{psi, theta, xi};
pub use motzkin::{motzkinize_du, motzkinize_runs, phi};
pub use projections::{e_from_signature, to_b, to_c, to_e, to_f};
pub use witness::{witness, witness_adj, witness_d, witness_dd, witness_f};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonicalError {
    #[error(transparent)]
    Position(#[from] QuotientError),
    #[error("relation {0} is not handled by this construction")]
    UnsupportedPattern(PatternRelation),
    /// The `DU` block decomposition found an empty outer part.
    #[error("DU decomposition has an empty outer part K{block}")]
    EmptyOuterBlock { block: usize },
    #[error("FF projection found no down step to balance")]
    NoDownSteps,
    #[error("construction produced an invalid path: {0}")]
    Construction(PathError),
    #[error("map `{0}` needs a pattern argument")]
    MissingPattern(MapName),
    #[error("no path of length {n} has the requested signature")]
    NotRealizable { n: usize },
}

/// Appends `D^c F^(b - c)` with `c = min(b, height)` and lowers `height`.
pub(crate) fn push_greedy(out: &mut Vec<Step>, height: &mut usize, b: usize) {
    let c = b.min(*height);
    out.extend(std::iter::repeat_n(Step::D, c));
    out.extend(std::iter::repeat_n(Step::F, b - c));
    *height -= c;
}

/// Names of the maps exposed on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapName {
    Phi,
    Du,
    Runs,
    ToB,
    ToC,
    ToE,
    ToF,
    Psi,
    Xi,
    Theta,
}

impl MapName {
    pub const ALL: [MapName; 10] = [
        MapName::Phi,
        MapName::Du,
        MapName::Runs,
        MapName::ToB,
        MapName::ToC,
        MapName::ToE,
        MapName::ToF,
        MapName::Psi,
        MapName::Xi,
        MapName::Theta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MapName::Phi => "phi",
            MapName::Du => "du",
            MapName::Runs => "runs",
            MapName::ToB => "toB",
            MapName::ToC => "toC",
            MapName::ToE => "toE",
            MapName::ToF => "toF",
            MapName::Psi => "psi",
            MapName::Xi => "xi",
            MapName::Theta => "theta",
        }
    }

    /// Relations whose signature the map preserves.
    pub fn preserved_relations(self) -> &'static [PatternRelation] {
        use PatternRelation as R;
        match self {
            MapName::Phi => &[R::U, R::UU, R::UD],
            MapName::Du => &[R::DU],
            MapName::Runs => &[R::FU, R::UF],
            MapName::ToB => &[R::Uk],
            MapName::ToC => &[R::UkD],
            MapName::ToE => &[R::UkF],
            MapName::ToF => &[R::FF],
            MapName::Psi | MapName::Xi | MapName::Theta => &[],
        }
    }

    /// Applies the map. `runs` needs `pattern` to be `FU` or `UF`; the
    /// other maps ignore it.
    pub fn apply(self, p: &Path, pattern: Option<PatternRelation>) -> Result<Path, CanonicalError> {
        match self {
            MapName::Phi => Ok(phi(p)),
            MapName::Du => motzkinize_du(p),
            MapName::Runs => {
                motzkinize_runs(p, pattern.ok_or(CanonicalError::MissingPattern(self))?)
            }
            MapName::ToB => Ok(to_b(p)),
            MapName::ToC => Ok(to_c(p)),
            MapName::ToE => Ok(to_e(p)),
            MapName::ToF => to_f(p),
            MapName::Psi => Ok(psi(p)),
            MapName::Xi => Ok(xi(p)),
            MapName::Theta => Ok(theta(p)),
        }
    }
}

impl fmt::Display for MapName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MapName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MapName::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown map `{s}`"))
    }
}

/// Where a class representative is taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Subset(SubsetTag),
    /// `xi` applied to a member of `E`.
    XiOfE,
    /// A Motzkin path in the class.
    Motzkin,
    /// Built directly from the occurrence positions.
    Witness,
    /// The lexicographically least path in the class.
    LeastMember,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Subset(tag) => f.write_str(tag.name()),
            Target::XiOfE => f.write_str("xi(E)"),
            Target::Motzkin => f.write_str("Motzkin"),
            Target::Witness => f.write_str("witness"),
            Target::LeastMember => f.write_str("least"),
        }
    }
}

impl Serialize for Target {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A representative that depends only on the class of its source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalForm {
    pub path: Path,
    pub relation: PatternRelation,
    pub subset: Target,
}

/// The canonical representative of the class of `p` under `r`.
///
/// Relations whose representative needs a search over paths of length
/// `|p|` (`U`, `UU`, `UD` over Motzkin paths, `DUk` over all paths) fail
/// with `ResourceLimit` beyond `search_bound`.
pub fn representative(
    p: &Path,
    r: PatternRelation,
    search_bound: usize,
) -> Result<CanonicalForm, CanonicalError> {
    use PatternRelation as R;
    let n = p.len();
    let (path, subset) = match r {
        R::U | R::UU | R::UD => (
            least_member(p, r, PathFamily::Motzkin, search_bound)?,
            Target::Motzkin,
        ),
        R::DU => (motzkinize_du(p)?, Target::Motzkin),
        R::UF | R::FU => (motzkinize_runs(p, r)?, Target::Motzkin),
        R::F | R::D | R::FD | R::DF | R::DD => {
            (witness(r, n, &occurrences(p, r).positions())?, Target::Witness)
        }
        R::Uk => (to_b(p), Target::Subset(SubsetTag::B)),
        R::UkD => (to_c(p), Target::Subset(SubsetTag::C)),
        R::UkF => (to_e(p), Target::Subset(SubsetTag::E)),
        R::FUk => {
            let Signature::Weighted(sig) = occurrences(p, R::FUk) else {
                unreachable!("FUk is a family relation")
            };
            let e = e_from_signature(n, &sig).ok_or(CanonicalError::NotRealizable { n })?;
            (xi(&e), Target::XiOfE)
        }
        R::FF => (to_f(p)?, Target::Subset(SubsetTag::Fset)),
        R::DUk => (
            least_member(p, r, PathFamily::Lukasiewicz, search_bound)?,
            Target::LeastMember,
        ),
    };
    Ok(CanonicalForm {
        path,
        relation: r,
        subset,
    })
}

/// Same as [`representative`] with the default search bound.
pub fn canonical_form(p: &Path, r: PatternRelation) -> Result<CanonicalForm, CanonicalError> {
    representative(p, r, DEFAULT_ORACLE_BOUND)
}

fn least_member(
    p: &Path,
    r: PatternRelation,
    family: PathFamily,
    bound: usize,
) -> Result<Path, CanonicalError> {
    let n = p.len();
    if n > bound {
        return Err(QuotientError::ResourceLimit { n, bound }.into());
    }
    let target = occurrences(p, r);
    let mut found: Option<Vec<Step>> = None;
    for_each_path(n, family, |steps| {
        if found.is_none() && crate::patterns::occurrences_in(steps, r) == target {
            found = Some(steps.to_vec());
        }
    });
    found
        .map(Path::from_steps_unchecked)
        .ok_or(CanonicalError::NotRealizable { n })
}

/// Number of distinct images of `map` over the Lukasiewicz paths of length
/// `n`, computed in parallel by first step.
pub fn distinct_images<M>(n: usize, oracle: &Oracle, map: M) -> Result<usize, CanonicalError>
where
    M: Fn(&Path) -> Result<Path, CanonicalError> + Sync,
{
    if n > oracle.bound() {
        return Err(QuotientError::ResourceLimit {
            n,
            bound: oracle.bound(),
        }
        .into());
    }
    if n == 0 {
        return Ok(1);
    }
    let parts: Vec<Result<HashSet<Path>, CanonicalError>> = first_steps(n, PathFamily::Lukasiewicz)
        .into_par_iter()
        .map(|first| {
            let mut images = HashSet::new();
            let mut err = None;
            for_each_path_starting_with(n, PathFamily::Lukasiewicz, first, |steps| {
                if err.is_some() {
                    return;
                }
                match map(&Path::from_steps_unchecked(steps.to_vec())) {
                    Ok(img) => {
                        images.insert(img);
                    }
                    Err(e) => err = Some(e),
                }
            });
            err.map_or(Ok(images), Err)
        })
        .collect();
    let mut all = HashSet::new();
    for part in parts {
        all.extend(part?);
    }
    Ok(all.len())
}

/// Class count obtained from representatives rather than signatures.
///
/// For `U`, `UU` and `UD` this counts the classes met by Motzkin paths,
/// which equals the full count. For `DUk` the representative is the least
/// class member, so the count coincides with the oracle by construction.
/// Every other relation counts distinct outputs of its construction.
pub fn count_classes_canonical(
    n: usize,
    r: PatternRelation,
    oracle: &Oracle,
) -> Result<ClassCount, CanonicalError> {
    use PatternRelation as R;
    let count = match r {
        R::U | R::UU | R::UD => oracle.count_motzkin_classes(n, r)?,
        R::DUk => oracle.count_classes(n, r)?.count,
        _ => distinct_images(n, oracle, |p| Ok(representative(p, r, 0)?.path))? as u64,
    };
    Ok(ClassCount {
        n,
        relation: r,
        method: CountMethod::Canonical,
        count,
    })
}
