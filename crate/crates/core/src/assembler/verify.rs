//! Self-checks: the fold-map counting identity and the comparison of the
//! closed-form decomposition against the iterated fundamental theorem.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::decompose::decompose_laurent;
use super::AssemblerError;
use crate::binomial;
use crate::contracted::{evaluate, expand_power, FormalGradedGroup, FtBase, GradedSymbol, RingTable};
use crate::lattice::{enumerate_subgroups, fold_to_positive, LatticeError, PrimitiveVector, SubgroupFilter};
use crate::FGAbelianGroup;

/// Largest `n` the exponential oracle is run for (`4ⁿ` words).
pub const MAX_ORACLE_DIM: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberCheck {
    pub positive: PrimitiveVector,
    pub fiber: Vec<PrimitiveVector>,
    /// `(symbol, 2ⁿ·binom(n−1, i), |fiber|·2·binom(n−1, i))`
    pub counts: Vec<(GradedSymbol, u64, u64)>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldCountingReport {
    pub n: usize,
    pub q: i64,
    pub height: u64,
    pub fibers: Vec<FiberCheck>,
    /// Subgroups whose image is not in `M₊` at this height.
    pub strays: Vec<PrimitiveVector>,
    pub passed: bool,
}

/// Checks `2ⁿ NⁿK_q ≅ ⊕_{C ∈ M_{≠0}} ⊕_i 2·binom(n−1,i) NK_{q−i}` against the
/// conjectural `M₊` form through the `2^{n−1}`-to-1 fold map, fiber by fiber.
///
/// The fold preserves the max-norm, so every fiber over `M₊` at height `H`
/// lies entirely inside the height-`H` window.
pub fn verify_fold_counting(n: usize, q: i64, height: u64) -> Result<FoldCountingReport, AssemblerError> {
    verify_fold_counting_with(n, q, height, fold_to_positive)
}

/// [`verify_fold_counting`] with a caller-supplied fold map.
pub fn verify_fold_counting_with<F>(
    n: usize,
    q: i64,
    height: u64,
    fold: F,
) -> Result<FoldCountingReport, AssemblerError>
where
    F: Fn(&PrimitiveVector) -> Result<PrimitiveVector, LatticeError>,
{
    if n < 2 || height == 0 {
        return Err(AssemblerError::InvalidArgument(
            "fold counting needs n >= 2 and height >= 1".into(),
        ));
    }
    let positive = enumerate_subgroups(n, height, SubgroupFilter::Positive);
    let targets: BTreeSet<&PrimitiveVector> = positive.iter().collect();
    let mut fibers: BTreeMap<PrimitiveVector, Vec<PrimitiveVector>> = BTreeMap::new();
    let mut strays = Vec::new();
    for c in enumerate_subgroups(n, height, SubgroupFilter::Nonzero) {
        match fold(&c) {
            Ok(p) if targets.contains(&p) => fibers.entry(p).or_default().push(c),
            _ => strays.push(c),
        }
    }

    let two_n = 1u64 << n;
    let checks: Vec<FiberCheck> = positive
        .into_iter()
        .map(|p| {
            let fiber = fibers.remove(&p).unwrap_or_default();
            let counts: Vec<_> = (0..n as u64)
                .map(|i| {
                    let b = binomial(n as u64 - 1, i);
                    (GradedSymbol::nk(q - i as i64), two_n * b, fiber.len() as u64 * 2 * b)
                })
                .collect();
            let ok = counts.iter().all(|&(_, l, r)| l == r);
            FiberCheck {
                positive: p,
                fiber,
                counts,
                ok,
            }
        })
        .collect();
    let passed = strays.is_empty() && checks.iter().all(|c| c.ok);
    Ok(FoldCountingReport {
        n,
        q,
        height,
        fibers: checks,
        strays,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolDiff {
    pub symbol: GradedSymbol,
    pub oracle: u64,
    pub closed: u64,
    pub oracle_group: Option<FGAbelianGroup>,
    pub closed_group: Option<FGAbelianGroup>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleComparison {
    /// `(I+2N+L)ⁿ K_q R` evaluated word by word.
    pub oracle: FormalGradedGroup,
    /// The closed-form decomposition, flattened to multiplicities.
    pub closed: FormalGradedGroup,
    pub diff: Vec<SymbolDiff>,
}

impl OracleComparison {
    pub fn passed(&self) -> bool {
        self.diff.is_empty()
    }
}

/// Compares the iterated one-variable fundamental theorem with the closed
/// form, symbol by symbol, at the same height window.
pub fn ft_oracle_compare(
    n: usize,
    q: i64,
    table: &RingTable,
    assume_conjecture: bool,
    height: u64,
) -> Result<OracleComparison, AssemblerError> {
    if n > MAX_ORACLE_DIM {
        return Err(AssemblerError::InvalidArgument(format!(
            "oracle limited to n <= {MAX_ORACLE_DIM}"
        )));
    }
    if n >= 2 && !assume_conjecture && !table.is_regular() {
        return Err(AssemblerError::ConjectureRequired(n));
    }
    let poly = expand_power(FtBase::Laurent, n as i64)?;
    let oracle = evaluate(&poly, q, table, assume_conjecture, Some(height))?;
    let closed = decompose_laurent(n, q, table, height)?.to_formal();

    let symbols: BTreeSet<GradedSymbol> = oracle
        .multiplicities()
        .into_keys()
        .chain(closed.multiplicities().into_keys())
        .collect();
    let diff = symbols
        .into_iter()
        .filter_map(|s| {
            let d = SymbolDiff {
                symbol: s,
                oracle: oracle.multiplicity(&s),
                closed: closed.multiplicity(&s),
                oracle_group: oracle.resolved(&s).cloned(),
                closed_group: closed.resolved(&s).cloned(),
            };
            (d.oracle != d.closed || d.oracle_group != d.closed_group).then_some(d)
        })
        .collect();
    Ok(OracleComparison {
        oracle,
        closed,
        diff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fold_counting_examples() {
        let r = verify_fold_counting(2, 0, 3).unwrap();
        assert!(r.passed);
        assert!(r.fibers.iter().all(|f| f.fiber.len() == 2));
        for f in &r.fibers {
            for &(_, l, rhs) in &f.counts {
                assert_eq!((l, rhs), (4, 4));
            }
        }
        let r = verify_fold_counting(3, 0, 3).unwrap();
        assert!(r.passed);
        assert!(r.fibers.iter().all(|f| f.fiber.len() == 4));
    }

    #[test]
    fn corrupted_fold_fails() {
        let r = verify_fold_counting_with(2, 0, 3, |c| Ok(c.clone())).unwrap();
        assert!(!r.passed);
        assert!(!r.strays.is_empty());
        let bad = r.fibers.iter().find(|f| !f.ok).unwrap();
        assert_eq!(bad.fiber.len(), 1);
    }

    #[test]
    fn oracle_examples() {
        let c = ft_oracle_compare(1, 0, &RingTable::symbolic(), false, 1).unwrap();
        assert!(c.passed());
        assert_eq!(c.oracle.multiplicity(&GradedSymbol::nk(0)), 2);

        let c = ft_oracle_compare(2, 0, &RingTable::regular(), false, 1).unwrap();
        assert!(c.passed());
        assert_eq!(c.closed.multiplicities().len(), 3);

        let c = ft_oracle_compare(2, 0, &RingTable::symbolic(), true, 3).unwrap();
        assert!(c.passed(), "{:?}", c.diff);
        assert!(c.oracle.conjectural);

        assert_eq!(
            ft_oracle_compare(2, 0, &RingTable::symbolic(), false, 3).unwrap_err(),
            AssemblerError::ConjectureRequired(2)
        );
    }
}
