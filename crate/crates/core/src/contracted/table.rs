use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::symbol::{GradedSymbol, SymbolKind};
use super::ContractedError;
use crate::abelian::FGAbelianGroup;

/// What a ring table knows about one `K_j(R)` or `NK_j(R)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Entry {
    Concrete(FGAbelianGroup),
    Symbol,
    Zero,
}

impl Entry {
    pub fn is_zero(&self) -> bool {
        match self {
            Entry::Zero => true,
            Entry::Concrete(g) => g.is_trivial(),
            Entry::Symbol => false,
        }
    }

    /// The concrete group, if known (`Zero` is the trivial group).
    pub fn group(&self) -> Option<FGAbelianGroup> {
        match self {
            Entry::Concrete(g) => Some(g.clone()),
            Entry::Zero => Some(FGAbelianGroup::trivial()),
            Entry::Symbol => None,
        }
    }
}

/// How a symbol evaluates against a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Resolution {
    Zero,
    Group(FGAbelianGroup),
    Symbolic,
}

/// Partial knowledge of `K_j(R)` and `NK_j(R)` for a fixed ring `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingTable {
    name: String,
    regular: bool,
    k: BTreeMap<i64, Entry>,
    nk: BTreeMap<i64, Entry>,
    default: Option<Entry>,
}

impl RingTable {
    /// A table with no entries and no default.
    pub fn new(name: impl Into<String>) -> Self {
        RingTable {
            name: name.into(),
            regular: false,
            k: BTreeMap::new(),
            nk: BTreeMap::new(),
            default: None,
        }
    }

    /// Every group is a formal symbol.
    pub fn symbolic() -> Self {
        Self::new("symbolic").with_default(Entry::Symbol)
    }

    /// All `NK_j` vanish; `K_j` are symbols.
    pub fn regular() -> Self {
        let mut t = Self::symbolic();
        t.name = "regular".into();
        t.regular = true;
        t
    }

    pub fn with_default(mut self, e: Entry) -> Self {
        self.default = Some(e);
        self
    }

    pub fn with_k(mut self, j: i64, e: Entry) -> Self {
        self.k.insert(j, e);
        self
    }

    pub fn with_nk(mut self, j: i64, e: Entry) -> Result<Self, ContractedError> {
        if self.regular && !e.is_zero() {
            return Err(ContractedError::RegularConflict(j));
        }
        self.nk.insert(j, e);
        Ok(self)
    }

    /// Sets the regular flag; fails if a nonzero `NK` entry is present.
    pub fn into_regular(mut self) -> Result<Self, ContractedError> {
        if let Some((&j, _)) = self.nk.iter().find(|(_, e)| !e.is_zero()) {
            return Err(ContractedError::RegularConflict(j));
        }
        self.regular = true;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_regular(&self) -> bool {
        self.regular
    }

    pub fn k_entry(&self, j: i64) -> Option<Entry> {
        self.k.get(&j).or(self.default.as_ref()).cloned()
    }

    pub fn nk_entry(&self, j: i64) -> Option<Entry> {
        if self.regular {
            return Some(Entry::Zero);
        }
        self.nk.get(&j).or(self.default.as_ref()).cloned()
    }

    fn nk_is_zero(&self, j: i64) -> bool {
        self.nk_entry(j).is_some_and(|e| e.is_zero())
    }

    pub fn resolve(&self, s: &GradedSymbol) -> Resolution {
        let from_entry = |e: Option<Entry>| match e {
            Some(e) if e.is_zero() => Resolution::Zero,
            Some(Entry::Concrete(g)) => Resolution::Group(g),
            _ => Resolution::Symbolic,
        };
        match s.kind {
            SymbolKind::K => from_entry(self.k_entry(s.degree)),
            SymbolKind::Nil(1) => from_entry(self.nk_entry(s.degree)),
            // NᵐK_d vanishes once NK_{d}, …, NK_{d−m+1} all do.
            SymbolKind::Nil(m) => {
                if (0..i64::from(m)).all(|i| self.nk_is_zero(s.degree - i)) {
                    Resolution::Zero
                } else {
                    Resolution::Symbolic
                }
            }
            SymbolKind::TwistedNil(_) => Resolution::Symbolic,
        }
    }
}
