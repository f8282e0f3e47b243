use super::symbol::{FormalGradedGroup, GradedSymbol, SymbolKind};
use super::table::{Resolution, RingTable};
use super::word::{word_value, OpPolynomial};
use super::ContractedError;
use crate::binomial;
use crate::lattice::{enumerate_subgroups, SubgroupFilter};

/// Adds `mult` copies of `symbol`, resolved against `table`; zero entries
/// are dropped.
pub fn add_resolved(
    out: &mut FormalGradedGroup,
    table: &RingTable,
    symbol: GradedSymbol,
    mult: u64,
) {
    match table.resolve(&symbol) {
        Resolution::Zero => {}
        Resolution::Group(g) => out.add(symbol, mult, Some(g)),
        Resolution::Symbolic => out.add(symbol, mult, None),
    }
}

/// Conjectural rewrite `NᵐK_d ≅ ⊕_{C ∈ M₊(ℤᵐ)} ⊕_i binom(m−1, i)·NK_{d−i}`,
/// with `M₊` truncated at `height`. Returns `(symbol, multiplicity)` pairs.
pub fn conjectural_rewrite(m: u32, degree: i64, height: u64) -> Vec<(GradedSymbol, u64)> {
    let count = enumerate_subgroups(m as usize, height, SubgroupFilter::Positive).len() as u64;
    (0..m)
        .map(|i| {
            (
                GradedSymbol::nk(degree - i64::from(i)),
                count * binomial(u64::from(m) - 1, u64::from(i)),
            )
        })
        .collect()
}

/// Sums `word_value` over the polynomial at degree `q`, resolving symbols
/// against `table`.
///
/// With `assume_conjecture`, every `NᵐK` with `m ≥ 2` is first rewritten
/// through [`conjectural_rewrite`] at `height`, and the result is flagged
/// as conjectural and truncated.
pub fn evaluate(
    p: &OpPolynomial,
    q: i64,
    table: &RingTable,
    assume_conjecture: bool,
    height: Option<u64>,
) -> Result<FormalGradedGroup, ContractedError> {
    let height = match (assume_conjecture, height) {
        (true, None | Some(0)) => return Err(ContractedError::MissingHeight),
        (_, h) => h,
    };
    let mut out = FormalGradedGroup::default();
    for (w, mult) in p.terms() {
        let s = word_value(w, q);
        match (s.kind, assume_conjecture) {
            (SymbolKind::Nil(m), true) if m >= 2 => {
                let h = height.expect("checked above");
                for (sym, k) in conjectural_rewrite(m, s.degree, h) {
                    add_resolved(&mut out, table, sym, k * mult);
                }
                out.conjectural = true;
                out.truncated_at = Some(h);
            }
            _ => add_resolved(&mut out, table, s, mult),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contracted::{expand_power, FtBase};

    #[test]
    fn evaluation_examples() {
        let p = expand_power(FtBase::Laurent, 1).unwrap();
        let g = evaluate(&p, 0, &RingTable::regular(), false, None).unwrap();
        assert_eq!(
            g.multiplicities().into_iter().collect::<Vec<_>>(),
            vec![(GradedSymbol::k(-1), 1), (GradedSymbol::k(0), 1)]
        );

        let g = evaluate(&p, 0, &RingTable::symbolic(), false, None).unwrap();
        assert_eq!(g.multiplicity(&GradedSymbol::k(0)), 1);
        assert_eq!(g.multiplicity(&GradedSymbol::k(-1)), 1);
        assert_eq!(g.multiplicity(&GradedSymbol::nk(0)), 2);
        assert_eq!(g.multiplicities().len(), 3);

        let p = expand_power(FtBase::Poly, 2).unwrap();
        let g = evaluate(&p, 0, &RingTable::symbolic(), false, None).unwrap();
        assert_eq!(g.multiplicity(&GradedSymbol::k(0)), 1);
        assert_eq!(g.multiplicity(&GradedSymbol::nk(0)), 2);
        assert_eq!(g.multiplicity(&GradedSymbol::nil(2, 0)), 1);
        assert!(!g.conjectural);
    }

    #[test]
    fn conjecture_requires_height() {
        let p = expand_power(FtBase::Poly, 2).unwrap();
        assert_eq!(
            evaluate(&p, 0, &RingTable::symbolic(), true, None),
            Err(ContractedError::MissingHeight)
        );
    }

    #[test]
    fn conjectural_rewrite_of_n_squared() {
        // (I+N)²: N²K_q becomes one NK_q and one NK_{q-1} per C in M₊(ℤ², 2).
        let p = expand_power(FtBase::Poly, 2).unwrap();
        let g = evaluate(&p, 0, &RingTable::symbolic(), true, Some(2)).unwrap();
        assert!(g.conjectural);
        assert_eq!(g.truncated_at, Some(2));
        assert_eq!(g.multiplicity(&GradedSymbol::nk(0)), 2 + 3);
        assert_eq!(g.multiplicity(&GradedSymbol::nk(-1)), 3);
        assert_eq!(g.multiplicity(&GradedSymbol::nil(2, 0)), 0);
    }
}
