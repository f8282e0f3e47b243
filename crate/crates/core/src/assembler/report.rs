use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abelian::FGAbelianGroup;
use crate::contracted::{FormalGradedGroup, GradedSymbol, OpWord};
use crate::lattice::{PrimitiveVector, UnimodularMatrix};

/// Which of `N₊`, `N₋` a Nil summand came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Where a summand sits inside the decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "part", rename_all = "snake_case")]
pub enum Provenance {
    /// A summand `f·K_q R` of `(I+L)ⁿ K_q R`.
    K { word: OpWord },
    /// A summand `β_C*(f·N±K_q R)` attached to the maximal cyclic subgroup
    /// `subgroup`. `word` is `f` followed by the `N±` letter; `basis` is
    /// `β_C`, whose first column generates `subgroup`.
    Nil {
        subgroup: PrimitiveVector,
        word: OpWord,
        sign: Sign,
        basis: UnimodularMatrix,
    },
}

impl Provenance {
    pub fn subgroup(&self) -> Option<&PrimitiveVector> {
        match self {
            Provenance::K { .. } => None,
            Provenance::Nil { subgroup, .. } => Some(subgroup),
        }
    }

    pub fn word(&self) -> &OpWord {
        match self {
            Provenance::K { word } | Provenance::Nil { word, .. } => word,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub provenance: Provenance,
    pub symbol: GradedSymbol,
    pub resolved: Option<FGAbelianGroup>,
}

/// A direct-sum decomposition, one record per summand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub target: String,
    pub n: usize,
    pub q: i64,
    pub table: String,
    pub summands: Vec<Summand>,
    /// Height bound of the subgroup enumeration, when the answer is a window
    /// into an infinite sum.
    pub truncated_at: Option<u64>,
    pub conjectural: bool,
    pub exact: bool,
}

impl DecompositionReport {
    pub fn multiplicities(&self) -> BTreeMap<GradedSymbol, u64> {
        let mut out = BTreeMap::new();
        for s in &self.summands {
            *out.entry(s.symbol).or_default() += 1;
        }
        out
    }

    pub fn k_part(&self) -> impl Iterator<Item = &Summand> {
        self.summands
            .iter()
            .filter(|s| matches!(s.provenance, Provenance::K { .. }))
    }

    pub fn nil_part(&self) -> impl Iterator<Item = &Summand> {
        self.summands
            .iter()
            .filter(|s| matches!(s.provenance, Provenance::Nil { .. }))
    }

    pub fn k_multiplicities(&self) -> BTreeMap<GradedSymbol, u64> {
        count(self.k_part())
    }

    pub fn nil_multiplicities(&self) -> BTreeMap<GradedSymbol, u64> {
        count(self.nil_part())
    }

    /// Nil multiplicities grouped by subgroup, in enumeration order.
    pub fn per_subgroup(&self) -> Vec<(PrimitiveVector, BTreeMap<GradedSymbol, u64>)> {
        let mut out: Vec<(PrimitiveVector, BTreeMap<GradedSymbol, u64>)> = Vec::new();
        for s in self.nil_part() {
            let c = s.provenance.subgroup().expect("nil summands carry a subgroup");
            match out.last_mut() {
                Some((last, m)) if last == c => *m.entry(s.symbol).or_default() += 1,
                _ => {
                    let mut m = BTreeMap::new();
                    m.insert(s.symbol, 1);
                    out.push((c.clone(), m));
                }
            }
        }
        out
    }

    /// Provenance invariants: K summands never carry a subgroup, Nil
    /// summands always do, and every `β_C` has first column generating `C`.
    pub fn provenance_is_complete(&self) -> bool {
        self.summands.iter().all(|s| match &s.provenance {
            Provenance::K { word } => word.nil_count() == 0 && s.symbol.is_k(),
            Provenance::Nil {
                subgroup, basis, word, ..
            } => {
                !s.symbol.is_k()
                    && word.nil_count() == 1
                    && basis.first_column() == subgroup.coords()
                    && basis.matrix().is_unimodular()
            }
        })
    }

    pub fn to_formal(&self) -> FormalGradedGroup {
        let mut g = FormalGradedGroup::default();
        for s in &self.summands {
            g.add(s.symbol, 1, s.resolved.clone());
        }
        g.conjectural = self.conjectural;
        g.truncated_at = self.truncated_at;
        g
    }

    /// Direct sum of all summands, if every one is resolved.
    pub fn resolved_total(&self) -> Option<FGAbelianGroup> {
        self.summands.iter().try_fold(FGAbelianGroup::trivial(), |acc, s| {
            Some(acc.direct_sum(s.resolved.as_ref()?))
        })
    }
}

fn count<'a>(it: impl Iterator<Item = &'a Summand>) -> BTreeMap<GradedSymbol, u64> {
    let mut out = BTreeMap::new();
    for s in it {
        *out.entry(s.symbol).or_default() += 1;
    }
    out
}
