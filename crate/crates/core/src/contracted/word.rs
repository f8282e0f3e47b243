use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::symbol::{GradedSymbol, SymbolKind};
use super::ContractedError;

/// One operator letter. `N₊` and `N₋` come from `t ↦ t` and `t ↦ t⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    I,
    NPlus,
    NMinus,
    L,
}

impl Letter {
    pub fn is_nil(self) -> bool {
        matches!(self, Letter::NPlus | Letter::NMinus)
    }

    fn as_str(self) -> &'static str {
        match self {
            Letter::I => "I",
            Letter::NPlus => "N+",
            Letter::NMinus => "N-",
            Letter::L => "L",
        }
    }
}

/// A noncommutative monomial in `I, N₊, N₋, L`.
///
/// Its value only depends on how many `N` and `L` letters it has; the
/// order of letters is kept as provenance.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct OpWord(Vec<Letter>);

impl OpWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        OpWord(letters)
    }

    pub fn empty() -> Self {
        OpWord(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn nil_count(&self) -> usize {
        self.0.iter().filter(|l| l.is_nil()).count()
    }

    pub fn l_count(&self) -> usize {
        self.0.iter().filter(|&&l| l == Letter::L).count()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &OpWord) -> OpWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        OpWord(v)
    }
}

impl fmt::Display for OpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(l.as_str())?;
        }
        Ok(())
    }
}

impl FromStr for OpWord {
    type Err = ContractedError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        let mut chars = s.chars();
        while let Some(c) = chars.next() {
            letters.push(match c {
                'I' => Letter::I,
                'L' => Letter::L,
                'N' => match chars.next() {
                    Some('+') => Letter::NPlus,
                    Some('-') => Letter::NMinus,
                    _ => return Err(ContractedError::Parse(format!("bad N letter in `{s}`"))),
                },
                _ => return Err(ContractedError::Parse(format!("unknown letter `{c}` in `{s}`"))),
            });
        }
        Ok(OpWord(letters))
    }
}

impl TryFrom<String> for OpWord {
    type Error = ContractedError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<OpWord> for String {
    fn from(w: OpWord) -> Self {
        w.to_string()
    }
}

/// Finitely supported sum of words with positive multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OpPolynomial {
    terms: BTreeMap<OpWord, u64>,
}

impl OpPolynomial {
    pub fn add_word(&mut self, w: OpWord, mult: u64) {
        if mult > 0 {
            *self.terms.entry(w).or_default() += mult;
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OpWord, u64)> {
        self.terms.iter().map(|(w, &m)| (w, m))
    }

    pub fn multiplicity(&self, w: &OpWord) -> u64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    /// Sum of multiplicities.
    pub fn word_count(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// The bases whose `n`-th powers appear in the fundamental theorem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FtBase {
    /// `I + N₊ + N₋ + L`, i.e. `I + 2N + L`
    Laurent,
    /// `I + N₊`
    Poly,
    /// `I + L`
    Free,
    /// `N₊ + N₋`
    NilOnly,
}

impl FtBase {
    pub fn alphabet(self) -> &'static [Letter] {
        match self {
            FtBase::Laurent => &[Letter::I, Letter::NPlus, Letter::NMinus, Letter::L],
            FtBase::Poly => &[Letter::I, Letter::NPlus],
            FtBase::Free => &[Letter::I, Letter::L],
            FtBase::NilOnly => &[Letter::NPlus, Letter::NMinus],
        }
    }
}

/// Expands `base^n` into all words of length `n` over the base's alphabet.
pub fn expand_power(base: FtBase, n: i64) -> Result<OpPolynomial, ContractedError> {
    if n < 0 {
        return Err(ContractedError::NegativePower(n));
    }
    let mut poly = OpPolynomial::default();
    for w in words(base.alphabet(), n as usize) {
        poly.add_word(w, 1);
    }
    Ok(poly)
}

/// All words of length `n` over `alphabet`, lexicographic.
pub fn words(alphabet: &[Letter], n: usize) -> Vec<OpWord> {
    let mut out = vec![OpWord::empty()];
    for _ in 0..n {
        out = out
            .iter()
            .flat_map(|w| {
                alphabet.iter().map(move |&l| {
                    let mut v = w.0.clone();
                    v.push(l);
                    OpWord(v)
                })
            })
            .collect();
    }
    out
}

/// `a` N-letters and `b` L-letters evaluate to `K_{q−b}` when `a = 0`
/// and to `NᵃK_{q−b}` otherwise (`N` and `L` commute).
pub fn word_value(w: &OpWord, q: i64) -> GradedSymbol {
    let a = w.nil_count();
    let degree = q - w.l_count() as i64;
    let kind = if a == 0 {
        SymbolKind::K
    } else {
        SymbolKind::Nil(a as u32)
    };
    GradedSymbol { kind, degree }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> OpWord {
        s.parse().unwrap()
    }

    #[test]
    fn expansion_examples() {
        let p = expand_power(FtBase::Laurent, 1).unwrap();
        let got: Vec<String> = p.terms().map(|(w, _)| w.to_string()).collect();
        assert_eq!(got, vec!["I", "N+", "N-", "L"]);
        assert!(p.terms().all(|(_, m)| m == 1));

        let p = expand_power(FtBase::Free, 3).unwrap();
        let one_l: Vec<String> = p
            .terms()
            .filter(|(w, _)| w.l_count() == 1)
            .map(|(w, _)| w.to_string())
            .collect();
        assert_eq!(one_l, vec!["IIL", "ILI", "LII"]);

        for base in [FtBase::Laurent, FtBase::Poly, FtBase::Free, FtBase::NilOnly] {
            let p = expand_power(base, 0).unwrap();
            assert_eq!(p.multiplicity(&OpWord::empty()), 1);
            assert_eq!(p.word_count(), 1);
        }
        assert_eq!(
            expand_power(FtBase::Poly, -1),
            Err(ContractedError::NegativePower(-1))
        );
    }

    #[test]
    fn word_count_is_alphabet_power() {
        for n in 0..=5 {
            assert_eq!(expand_power(FtBase::Laurent, n).unwrap().word_count(), 4u64.pow(n as u32));
            assert_eq!(expand_power(FtBase::NilOnly, n).unwrap().word_count(), 2u64.pow(n as u32));
        }
    }

    #[test]
    fn value_examples() {
        assert_eq!(word_value(&w("LIL"), 5), GradedSymbol::k(3));
        assert_eq!(word_value(&w("N+"), 5), GradedSymbol::nk(5));
        assert_eq!(word_value(&w("LN+N-"), 5), GradedSymbol::nil(2, 4));
        assert_eq!(word_value(&OpWord::empty(), 0), GradedSymbol::k(0));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("IX".parse::<OpWord>().is_err());
        assert!("N".parse::<OpWord>().is_err());
        assert_eq!(w("IN-L").to_string(), "IN-L");
    }
}
