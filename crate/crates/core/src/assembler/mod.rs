//! Materialized decompositions of `K_q R[ℤⁿ]` and of the relative term over
//! the maximal cyclic subgroups, with per-summand provenance, plus the
//! counting self-checks.

mod decompose;
mod dihedral;
mod report;
mod verify;

pub use decompose::{
    decompose_laurent, decompose_relative_vc, iterated_nk, kregular_check, KRegularVerdict,
    WordTrace,
};
pub use dihedral::{dihedral_report, CoinvariantCheck, DihedralReport, Identification};
pub use report::{DecompositionReport, Provenance, Sign, Summand};
pub use verify::{
    ft_oracle_compare, verify_fold_counting, verify_fold_counting_with, FiberCheck,
    FoldCountingReport, OracleComparison, SymbolDiff, MAX_ORACLE_DIM,
};

use thiserror::Error;

use crate::cellular::CellularError;
use crate::contracted::ContractedError;
use crate::lattice::LatticeError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssemblerError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(
        "N^{0}K for n >= 2 rests on an unproven decomposition over M+; pass --assume-conjecture to use it"
    )]
    ConjectureRequired(usize),
    #[error("ring table does not say whether NK vanishes in degrees {0:?}")]
    InsufficientTable(Vec<i64>),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Contracted(#[from] ContractedError),
    #[error(transparent)]
    Cellular(#[from] CellularError),
}
