//! Exact HOMFLY-PT computation for oriented link diagrams, with checkers
//! for the coefficient identities relating a link to its sublinks.

pub mod braid;
pub mod catalog;
pub mod combinatorics;
pub mod laurent;
pub mod link;
pub mod lm;
pub mod random;
pub mod report;
pub mod skein;

pub use braid::BraidWord;
pub use catalog::{CatalogEntry, CATALOG};
pub use laurent::{BivarLaurent, LaurentError, Rational, UnivarLaurentT};
pub use link::{ComponentSubset, Crossing, LinkDiagram, LinkError, Passage, Role, Sign};
pub use lm::{FValue, LmError, SublinkTable};
pub use random::BraidSampler;
pub use report::{ReportContext, VerificationReport};
pub use skein::{CoeffTable, SkeinEngine, SkeinError};
