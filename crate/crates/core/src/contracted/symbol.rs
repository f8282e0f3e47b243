use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ContractedError;
use crate::abelian::FGAbelianGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Twist {
    Alpha,
    AlphaInv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolKind {
    K,
    /// `NᵐK`; `Nil(1)` is `NK`.
    Nil(u32),
    /// Farrell's twisted `NK(A, α)` or `NK(A, α⁻¹)`.
    TwistedNil(Twist),
}

impl SymbolKind {
    fn prefix(self) -> String {
        match self {
            SymbolKind::K => "K".into(),
            SymbolKind::Nil(1) => "NK".into(),
            SymbolKind::Nil(m) => format!("N^{m}K"),
            SymbolKind::TwistedNil(_) => "NK".into(),
        }
    }

    fn suffix(self) -> &'static str {
        match self {
            SymbolKind::TwistedNil(Twist::Alpha) => "(alpha)",
            SymbolKind::TwistedNil(Twist::AlphaInv) => "(alpha^-1)",
            _ => "",
        }
    }
}

impl fmt::Display for SymbolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.prefix(), self.suffix())
    }
}

impl FromStr for SymbolKind {
    type Err = ContractedError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "K" => SymbolKind::K,
            "NK" => SymbolKind::Nil(1),
            "NK(alpha)" => SymbolKind::TwistedNil(Twist::Alpha),
            "NK(alpha^-1)" => SymbolKind::TwistedNil(Twist::AlphaInv),
            _ => {
                let m = s
                    .strip_prefix("N^")
                    .and_then(|r| r.strip_suffix('K'))
                    .and_then(|m| m.parse::<u32>().ok())
                    .filter(|&m| m >= 1)
                    .ok_or_else(|| ContractedError::Parse(format!("unknown symbol kind `{s}`")))?;
                SymbolKind::Nil(m)
            }
        })
    }
}

/// A graded symbol such as `K_{q−2}` or `N²K_{q−1}`, with absolute degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSymbol", into = "RawSymbol")]
pub struct GradedSymbol {
    pub kind: SymbolKind,
    pub degree: i64,
}

#[derive(Serialize, Deserialize)]
struct RawSymbol {
    kind: String,
    degree: i64,
}

impl TryFrom<RawSymbol> for GradedSymbol {
    type Error = ContractedError;

    fn try_from(raw: RawSymbol) -> Result<Self, Self::Error> {
        Ok(GradedSymbol {
            kind: raw.kind.parse()?,
            degree: raw.degree,
        })
    }
}

impl From<GradedSymbol> for RawSymbol {
    fn from(s: GradedSymbol) -> Self {
        RawSymbol {
            kind: s.kind.to_string(),
            degree: s.degree,
        }
    }
}

impl GradedSymbol {
    pub fn k(degree: i64) -> Self {
        GradedSymbol {
            kind: SymbolKind::K,
            degree,
        }
    }

    pub fn nk(degree: i64) -> Self {
        Self::nil(1, degree)
    }

    pub fn nil(m: u32, degree: i64) -> Self {
        GradedSymbol {
            kind: SymbolKind::Nil(m),
            degree,
        }
    }

    pub fn twisted(twist: Twist, degree: i64) -> Self {
        GradedSymbol {
            kind: SymbolKind::TwistedNil(twist),
            degree,
        }
    }

    pub fn is_k(&self) -> bool {
        self.kind == SymbolKind::K
    }

    /// Renders the degree relative to `q`, e.g. `N^2K_{q-1}`.
    pub fn relative(&self, q: i64) -> String {
        let off = self.degree - q;
        let deg = match off {
            0 => "q".to_string(),
            o if o < 0 => format!("q{o}"),
            o => format!("q+{o}"),
        };
        format!("{}_{{{deg}}}{}", self.kind.prefix(), self.kind.suffix())
    }
}

impl fmt::Display for GradedSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{{{}}}{}", self.kind.prefix(), self.degree, self.kind.suffix())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub multiplicity: u64,
    /// The concrete group one copy of the symbol stands for, when known.
    pub resolved: Option<FGAbelianGroup>,
}

/// A formal direct sum `⊕ mᵢ·Sᵢ` of graded symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalGradedGroup {
    terms: BTreeMap<GradedSymbol, Term>,
    /// Produced with the conjectural `NᵐK` rewrite.
    pub conjectural: bool,
    /// Height at which the set of maximal cyclic subgroups was truncated.
    pub truncated_at: Option<u64>,
}

impl FormalGradedGroup {
    pub fn add(&mut self, symbol: GradedSymbol, multiplicity: u64, resolved: Option<FGAbelianGroup>) {
        if multiplicity == 0 {
            return;
        }
        let t = self.terms.entry(symbol).or_insert(Term {
            multiplicity: 0,
            resolved: resolved.clone(),
        });
        t.multiplicity += multiplicity;
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GradedSymbol, &Term)> {
        self.terms.iter()
    }

    pub fn multiplicity(&self, s: &GradedSymbol) -> u64 {
        self.terms.get(s).map_or(0, |t| t.multiplicity)
    }

    pub fn multiplicities(&self) -> BTreeMap<GradedSymbol, u64> {
        self.terms.iter().map(|(s, t)| (*s, t.multiplicity)).collect()
    }

    pub fn resolved(&self, s: &GradedSymbol) -> Option<&FGAbelianGroup> {
        self.terms.get(s).and_then(|t| t.resolved.as_ref())
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The whole sum as a concrete group, if every symbol is resolved.
    pub fn total(&self) -> Option<FGAbelianGroup> {
        let mut acc = FGAbelianGroup::trivial();
        for t in self.terms.values() {
            acc = acc.direct_sum(&t.resolved.as_ref()?.power(t.multiplicity as usize));
        }
        Some(acc)
    }
}

impl fmt::Display for FormalGradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(s, t)| format!("{}:{}", s, t.multiplicity))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_round_trip() {
        for k in [
            SymbolKind::K,
            SymbolKind::Nil(1),
            SymbolKind::Nil(3),
            SymbolKind::TwistedNil(Twist::Alpha),
            SymbolKind::TwistedNil(Twist::AlphaInv),
        ] {
            assert_eq!(k.to_string().parse::<SymbolKind>().unwrap(), k);
        }
        assert!("N^0K".parse::<SymbolKind>().is_err());
    }

    #[test]
    fn relative_rendering() {
        assert_eq!(GradedSymbol::k(-2).relative(0), "K_{q-2}");
        assert_eq!(GradedSymbol::nil(2, 3).relative(3), "N^2K_{q}");
        assert_eq!(GradedSymbol::nk(-1).to_string(), "NK_{-1}");
    }

    #[test]
    fn total_requires_resolution() {
        let mut g = FormalGradedGroup::default();
        g.add(GradedSymbol::k(0), 2, Some(FGAbelianGroup::free(1)));
        assert_eq!(g.total(), Some(FGAbelianGroup::free(2)));
        g.add(GradedSymbol::nk(0), 1, None);
        assert_eq!(g.total(), None);
    }
}
