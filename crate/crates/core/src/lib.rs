//! Pattern-position equivalence classes of Lukasiewicz paths.
//!
//! Two paths of the same length are equivalent under a pattern when the
//! pattern occurs at the same positions in both. This crate enumerates
//! paths, counts classes by brute force, builds canonical representatives
//! and witness paths, and expands the generating functions of the class
//! counts as exact power series.

pub mod canonical;
pub mod paths;
pub mod patterns;
pub mod quotient;
pub mod report;
pub mod series;

pub use canonical::{CanonicalError, CanonicalForm, MapName, Target};
pub use paths::{enumerate_paths, Path, PathError, PathFamily, Step, SubsetTag};
pub use patterns::{equivalent, occurrences, PatternError, PatternRelation, Signature};
pub use quotient::{ClassCount, CountMethod, Oracle, PositionSet, QuotientError};
pub use report::{compare, VerificationReport, VerificationRow};
pub use series::{Series, SeriesError, SeriesMethod, SeriesTag, SetTag};
