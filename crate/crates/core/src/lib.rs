//! Computations in free-by-cyclic groups `F_n ⋊_φ ℤ`: normal forms,
//! twisted conjugacy, centralizers as finitely generated subgroups and as
//! rational sets, conjugator cosets, and conjugacy constrained to
//! context-free subsets.
//!
//! Bounded searches return [`Decision`]; a `Yes` always carries a checked
//! certificate and a `No` is only ever reported from an exact argument.

pub mod automorphism;
pub mod brinkmann;
pub mod centralizer;
pub mod cfl;
pub mod decision;
pub mod error;
pub mod fbc;
pub mod oracle;
pub mod presentation;
pub mod ratlang;
pub mod stallings;
pub mod twisted;
pub mod word;

pub use automorphism::Automorphism;
pub use centralizer::{centralize, conjugators, member, CentralizerResult, Conjugators, Membership, Status};
pub use cfl::{bar_hillel, constrained_conjugacy, Cfg};
pub use decision::{Budget, Decision, Exhausted};
pub use error::{Error, Result};
pub use fbc::{FbcElement, GroupPresentation};
pub use presentation::parse_presentation;
pub use ratlang::{build_centralizer_nfa, GroupNfa, Symbol};
pub use stallings::SubgroupGraph;
pub use word::{Alphabet, Letter, Word};
