pub mod budget;
pub mod elemset;
pub mod error;
pub mod group;
mod snf;
pub mod subgroup;

pub use budget::{Budget, SearchStats};
pub use elemset::ElementSet;
pub use error::{Error, Result};
pub use group::{Element, Group};
pub use subgroup::{QuotientMap, Subgroup};
pub mod sequence;
pub mod setpartition;
pub use sequence::GroupSequence;
pub use setpartition::SetPartition;
pub mod sums;
pub mod weights;
pub use weights::WeightSet;
pub mod invariants;
mod search;
pub mod symmetry;
pub use invariants::{InvariantKind, InvariantResult, InvariantTable, SearchOptions};
pub mod lemmas;
pub mod theorem;
pub use lemmas::{LemmaId, LemmaReport, Verdict};
pub use theorem::{DecompositionWitness, Lab, TheoremInstance};
