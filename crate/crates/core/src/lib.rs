//! Exact decompositions of K-groups of Laurent polynomial rings over `ℤⁿ`.
//!
//! The crate is layered bottom-up:
//!
//! * [`abelian`]: integer matrices, Smith/Hermite normal forms, presented
//!   abelian groups, homology of short complexes.
//! * [`lattice`]: maximal cyclic subgroups of `ℤⁿ` as primitive vectors.
//! * [`contracted`]: words in the operators `I, N₊, N₋, L`, ring tables and
//!   their evaluation, the four-term and Wang sequences.
//! * [`cellular`]: chain complexes, torus homology, mapping tori and the
//!   homology of `ℤ/2` with coefficients.
//! * [`assembler`]: decomposition reports with provenance and the
//!   self-checks that compare closed forms against brute-force expansion.

pub mod abelian;
pub mod assembler;
pub mod cellular;
pub mod contracted;
pub mod lattice;

pub use abelian::{FGAbelianGroup, Homomorphism, IntMatrix, PresentedAbelianGroup};
pub use assembler::DecompositionReport;
pub use contracted::{GradedSymbol, OpWord, RingTable};
pub use lattice::PrimitiveVector;

/// `binom(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
