//! Drivers that reproduce the construction tables, plus partition files.

pub mod gold;
pub mod format;
pub mod recipe;
pub mod theorem;

pub use format::{import_verified, parse, serialize, Imported, PartitionData};
pub use recipe::{BuildContext, GeneratorSet, Recipe};
pub use theorem::{corollary_counts, lemma3_chains, theorem_table, RowPlan, RowStatus, TheoremRow, TheoremTable};
