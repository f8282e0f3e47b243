//! Bass's contracted-functor calculus.
//!
//! Iterating the fundamental theorem expresses `K_q` of a Laurent polynomial
//! ring as a noncommutative polynomial in the operators `I`, `N₊`, `N₋`, `L`
//! applied to `K_q(R)`. Words are kept as provenance; their values depend
//! only on letter counts.

mod evaluate;
mod sequences;
mod symbol;
mod table;
mod word;

pub use evaluate::{add_resolved, conjectural_rewrite, evaluate};
pub use sequences::{
    four_term_check, four_term_check_with, wang_pieces, Extension, FourTermMaps, FourTermReport,
    WangPieces, FOUR_TERM_SPOTS,
};
pub use symbol::{FormalGradedGroup, GradedSymbol, SymbolKind, Term, Twist};
pub use table::{Entry, Resolution, RingTable};
pub use word::{expand_power, word_value, words, FtBase, Letter, OpPolynomial, OpWord};

use thiserror::Error;

use crate::abelian::AbelianError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContractedError {
    #[error("negative power {0}")]
    NegativePower(i64),
    #[error("the conjectural rewrite needs a height bound of at least 1")]
    MissingHeight,
    #[error("ring table has no concrete entry for {0}")]
    MissingEntry(String),
    #[error("regular table cannot carry a nonzero NK entry in degree {0}")]
    RegularConflict(i64),
    #[error("no map supplied in degree {0}")]
    MissingDegree(i64),
    #[error("map in degree {0} is not an automorphism")]
    NotAutomorphism(i64),
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}
