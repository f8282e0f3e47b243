use serde::{Deserialize, Serialize};

use super::report::{DecompositionReport, Provenance, Sign, Summand};
use super::AssemblerError;
use crate::contracted::{
    expand_power, word_value, words, Entry, FtBase, GradedSymbol, Letter, OpWord, Resolution,
    RingTable,
};
use crate::lattice::{canonical_primitive, complete_to_basis, enumerate_subgroups, SubgroupFilter};

fn resolved(table: &RingTable, s: &GradedSymbol) -> Option<Option<crate::FGAbelianGroup>> {
    match table.resolve(s) {
        Resolution::Zero => None,
        Resolution::Group(g) => Some(Some(g)),
        Resolution::Symbolic => Some(None),
    }
}

/// `NK_{q−i}` vanishes for every `0 ≤ i < n`.
fn nil_window_vanishes(table: &RingTable, n: usize, q: i64) -> bool {
    (0..n as i64).all(|i| table.resolve(&GradedSymbol::nk(q - i)) == Resolution::Zero)
}

/// `(i, NK_{q−i}, resolved)` for the degrees whose Nil group is not zero.
fn live_nil_degrees(
    table: &RingTable,
    n: usize,
    q: i64,
) -> Vec<(usize, GradedSymbol, Option<crate::FGAbelianGroup>)> {
    (0..n)
        .filter_map(|i| {
            let symbol = GradedSymbol::nk(q - i as i64);
            resolved(table, &symbol).map(|g| (i, symbol, g))
        })
        .collect()
}

/// Words of length `len` in `I, L` with exactly `ls` letters `L`.
fn free_words(len: usize, ls: usize) -> impl Iterator<Item = OpWord> {
    words(FtBase::Free.alphabet(), len)
        .into_iter()
        .filter(move |w| w.l_count() == ls)
}

fn nil_summands(
    n: usize,
    q: i64,
    table: &RingTable,
    height: u64,
    out: &mut Vec<Summand>,
) -> Result<(), AssemblerError> {
    let live = live_nil_degrees(table, n, q);
    if live.is_empty() {
        return Ok(());
    }
    for c in enumerate_subgroups(n, height, SubgroupFilter::All) {
        let basis = complete_to_basis(c.coords())?;
        for (i, symbol, group) in &live {
            let (i, symbol) = (*i, *symbol);
            for f in free_words(n - 1, i) {
                for (sign, letter) in [(Sign::Plus, Letter::NPlus), (Sign::Minus, Letter::NMinus)] {
                    out.push(Summand {
                        provenance: Provenance::Nil {
                            subgroup: c.clone(),
                            word: f.concat(&OpWord::new(vec![letter])),
                            sign,
                            basis: basis.clone(),
                        },
                        symbol,
                        resolved: group.clone(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// The relative term: for every maximal cyclic `C ⊂ ℤⁿ` of height at most
/// `height`, `⊕_i 2·binom(n−1, i) NK_{q−i}`.
pub fn decompose_relative_vc(
    n: usize,
    q: i64,
    table: &RingTable,
    height: u64,
) -> Result<DecompositionReport, AssemblerError> {
    if n == 0 {
        return Err(AssemblerError::InvalidArgument("relative term needs n >= 1".into()));
    }
    let mut summands = Vec::new();
    nil_summands(n, q, table, height, &mut summands)?;
    let exact = nil_window_vanishes(table, n, q);
    Ok(DecompositionReport {
        target: format!("relative term of K_q R[Z^{n}] over the maximal cyclic subgroups"),
        n,
        q,
        table: table.name().to_string(),
        summands,
        truncated_at: (!exact).then_some(height),
        conjectural: false,
        exact,
    })
}

/// `K_q R[ℤⁿ] ≅ (I+L)ⁿ K_q R ⊕ ⊕_C β_C*((I+L)ⁿ⁻¹(N₊+N₋) K_q R)`.
pub fn decompose_laurent(
    n: usize,
    q: i64,
    table: &RingTable,
    height: u64,
) -> Result<DecompositionReport, AssemblerError> {
    let mut summands = Vec::new();
    for w in words(FtBase::Free.alphabet(), n) {
        let symbol = word_value(&w, q);
        if let Some(group) = resolved(table, &symbol) {
            summands.push(Summand {
                provenance: Provenance::K { word: w },
                symbol,
                resolved: group,
            });
        }
    }
    if n > 0 {
        nil_summands(n, q, table, height, &mut summands)?;
    }
    let exact = n == 0 || nil_window_vanishes(table, n, q);
    Ok(DecompositionReport {
        target: format!("K_q R[Z^{n}]"),
        n,
        q,
        table: table.name().to_string(),
        summands,
        truncated_at: (!exact).then_some(height),
        conjectural: false,
        exact,
    })
}

/// `NⁿK_q R`. For `n ≥ 2` this uses the conjectural decomposition over `M₊`
/// and is refused unless `assume_conjecture` is set.
pub fn iterated_nk(
    n: usize,
    q: i64,
    table: &RingTable,
    assume_conjecture: bool,
    height: u64,
) -> Result<DecompositionReport, AssemblerError> {
    if n == 0 {
        return Err(AssemblerError::InvalidArgument("iterated Nil needs n >= 1".into()));
    }
    if n >= 2 && !assume_conjecture {
        return Err(AssemblerError::ConjectureRequired(n));
    }
    let mut summands = Vec::new();
    let live = live_nil_degrees(table, n, q);
    let subgroups = if live.is_empty() {
        Vec::new()
    } else if n == 1 {
        vec![canonical_primitive(&[1])?]
    } else {
        enumerate_subgroups(n, height, SubgroupFilter::Positive)
    };
    for c in subgroups {
        let basis = complete_to_basis(c.coords())?;
        for (i, symbol, group) in &live {
            let (i, symbol) = (*i, *symbol);
            for f in free_words(n - 1, i) {
                summands.push(Summand {
                    provenance: Provenance::Nil {
                        subgroup: c.clone(),
                        word: f.concat(&OpWord::new(vec![Letter::NPlus])),
                        sign: Sign::Plus,
                        basis: basis.clone(),
                    },
                    symbol,
                    resolved: group.clone(),
                });
            }
        }
    }
    let exact = n == 1 || nil_window_vanishes(table, n, q);
    Ok(DecompositionReport {
        target: format!("N^{n}K_q R"),
        n,
        q,
        table: table.name().to_string(),
        summands,
        truncated_at: (!exact).then_some(height),
        conjectural: n >= 2,
        exact,
    })
}

/// One `N`-containing word of `(I+N)ⁿ` and what kills it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordTrace {
    pub word: OpWord,
    pub symbol: GradedSymbol,
    /// Degrees `j` whose `NK_j` the symbol is built from.
    pub needs: Vec<i64>,
    pub killed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KRegularVerdict {
    pub n: usize,
    pub q: i64,
    pub holds: bool,
    pub statement: String,
    pub offending_degrees: Vec<i64>,
    /// The verdict follows from the vanishing of `((I+2N+L)ⁿ − (I+L)ⁿ) K_q R`
    /// and needs no conjecture.
    pub verdict_unconditional: bool,
    pub trace: Vec<WordTrace>,
    /// The per-word degree windows come from the conjectural `NᵐK` rewrite.
    pub trace_heuristic: bool,
}

/// If `NK_j R = 0` for `q−n+1 ≤ j ≤ q`, then `K_q R[t₁,…,tₙ] = K_q R`.
pub fn kregular_check(n: usize, q: i64, table: &RingTable) -> Result<KRegularVerdict, AssemblerError> {
    let window: Vec<i64> = (0..n as i64).map(|i| q - i).collect();
    let missing: Vec<i64> = window
        .iter()
        .copied()
        .filter(|&j| table.nk_entry(j).is_none())
        .collect();
    if !missing.is_empty() {
        return Err(AssemblerError::InsufficientTable(missing));
    }
    let is_zero = |j: i64| table.nk_entry(j).as_ref().is_some_and(Entry::is_zero);
    let offending: Vec<i64> = window.iter().copied().filter(|&j| !is_zero(j)).collect();
    let holds = offending.is_empty();

    let mut trace = Vec::new();
    for (w, _) in expand_power(FtBase::Poly, n as i64)?.terms() {
        if w.nil_count() == 0 {
            continue;
        }
        let symbol = word_value(w, q);
        let needs: Vec<i64> = (0..w.nil_count() as i64).map(|i| q - i).collect();
        let killed = needs.iter().all(|&j| is_zero(j));
        trace.push(WordTrace {
            word: w.clone(),
            symbol,
            needs,
            killed,
        });
    }

    let vars: Vec<String> = (1..=n).map(|i| format!("t_{i}")).collect();
    let statement = if holds {
        format!("K_{{{q}}}R[{}] = K_{{{q}}}R", vars.join(","))
    } else {
        format!(
            "hypothesis not satisfied: NK_j R is not known to vanish for j in {offending:?}"
        )
    };
    Ok(KRegularVerdict {
        n,
        q,
        holds,
        statement,
        offending_degrees: offending,
        verdict_unconditional: true,
        trace,
        trace_heuristic: true,
    })
}
