use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::snf::snf;
use super::AbelianError;

/// A finitely generated abelian group `ℤ^r ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k` in
/// invariant-factor form: every `dᵢ ≥ 2` and `dᵢ | dᵢ₊₁`.
///
/// Two values are equal exactly when the groups are isomorphic.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawGroup", into = "RawGroup")]
pub struct FGAbelianGroup {
    free_rank: usize,
    torsion: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawGroup {
    rank: usize,
    torsion: Vec<u64>,
}

impl TryFrom<RawGroup> for FGAbelianGroup {
    type Error = AbelianError;

    fn try_from(raw: RawGroup) -> Result<Self, Self::Error> {
        FGAbelianGroup::new(raw.rank, raw.torsion)
    }
}

impl From<FGAbelianGroup> for RawGroup {
    fn from(g: FGAbelianGroup) -> Self {
        RawGroup {
            rank: g.free_rank,
            torsion: g.torsion,
        }
    }
}

impl FGAbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Result<Self, AbelianError> {
        if let Some(&d) = torsion.iter().find(|&&d| d < 2) {
            return Err(AbelianError::InvalidTorsion(format!(
                "invariant factor {d} is below 2"
            )));
        }
        if let Some(w) = torsion.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(AbelianError::InvalidTorsion(format!(
                "{} does not divide {}",
                w[0], w[1]
            )));
        }
        Ok(FGAbelianGroup { free_rank, torsion })
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `ℤ/n`; `n = 1` gives the trivial group and `n = 0` gives `ℤ`.
    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => Self::free(1),
            1 => Self::trivial(),
            _ => FGAbelianGroup {
                free_rank: 0,
                torsion: vec![n],
            },
        }
    }

    /// Canonical form of `ℤ^r ⊕ ⊕ ℤ/aᵢ` for arbitrary cyclic orders `aᵢ ≥ 1`.
    pub fn from_cyclic_orders(free_rank: usize, orders: &[u64]) -> Self {
        let parts = orders.iter().flat_map(|&a| prime_powers(a)).collect::<Vec<_>>();
        Self::from_primary(free_rank, &parts)
    }

    /// Assembles invariant factors from prime-power cyclic summands `(p, e)`.
    pub fn from_primary(free_rank: usize, parts: &[(u64, u32)]) -> Self {
        let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &(p, e) in parts.iter().filter(|&&(_, e)| e > 0) {
            by_prime.entry(p).or_default().push(e);
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut torsion = vec![1u64; len];
        for (p, mut exps) in by_prime {
            exps.sort_unstable_by(|a, b| b.cmp(a));
            // Largest powers go into the largest invariant factors.
            for (slot, e) in exps.into_iter().enumerate() {
                torsion[len - 1 - slot] *= p.pow(e);
            }
        }
        FGAbelianGroup { free_rank, torsion }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    /// Prime-power cyclic summands `(p, e)`, sorted.
    pub fn primary_parts(&self) -> Vec<(u64, u32)> {
        let mut parts: Vec<_> = self.torsion.iter().flat_map(|&d| prime_powers(d)).collect();
        parts.sort_unstable();
        parts
    }

    pub fn direct_sum(&self, other: &FGAbelianGroup) -> Self {
        let mut parts = self.primary_parts();
        parts.extend(other.primary_parts());
        Self::from_primary(self.free_rank + other.free_rank, &parts)
    }

    /// `G^k`, the direct sum of `k` copies.
    pub fn power(&self, k: usize) -> Self {
        let parts: Vec<_> = self
            .primary_parts()
            .into_iter()
            .flat_map(|p| std::iter::repeat_n(p, k))
            .collect();
        Self::from_primary(self.free_rank * k, &parts)
    }

    pub fn sum_all<'a>(groups: impl IntoIterator<Item = &'a FGAbelianGroup>) -> Self {
        groups
            .into_iter()
            .fold(Self::trivial(), |acc, g| acc.direct_sum(g))
    }

    /// Standard presentation: free generators first, then one generator per
    /// invariant factor with relation `dᵢ·e`.
    pub fn presentation(&self) -> PresentedAbelianGroup {
        let g = self.free_rank + self.torsion.len();
        let mut rel = IntMatrix::zeros(g, self.torsion.len());
        for (k, &d) in self.torsion.iter().enumerate() {
            rel.set(self.free_rank + k, k, d as i64);
        }
        PresentedAbelianGroup {
            generators: g,
            relations: rel,
        }
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// Parses the `Display` notation, e.g. `"0"`, `"Z^2 + Z/4"`, `"Z/2+Z/3"`.
impl FromStr for FGAbelianGroup {
    type Err = AbelianError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AbelianError::Parse(format!("cannot read group `{s}`"));
        let s = s.trim();
        if s == "0" {
            return Ok(Self::trivial());
        }
        let mut rank = 0usize;
        let mut orders = Vec::new();
        for term in s.split('+').map(str::trim) {
            if term == "Z" {
                rank += 1;
            } else if let Some(r) = term.strip_prefix("Z^") {
                rank += r.parse::<usize>().map_err(|_| bad())?;
            } else if let Some(d) = term.strip_prefix("Z/") {
                let d = d.parse::<u64>().map_err(|_| bad())?;
                if d == 0 {
                    return Err(bad());
                }
                orders.push(d);
            } else {
                return Err(bad());
            }
        }
        Ok(Self::from_cyclic_orders(rank, &orders))
    }
}

fn prime_powers(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// An abelian group given as `ℤ^g / (column span of relations)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PresentedAbelianGroup {
    generators: usize,
    relations: IntMatrix,
}

impl PresentedAbelianGroup {
    pub fn new(generators: usize, relations: IntMatrix) -> Result<Self, AbelianError> {
        if relations.rows() != generators {
            return Err(AbelianError::Shape(format!(
                "relation matrix has {} rows for {generators} generators",
                relations.rows()
            )));
        }
        Ok(PresentedAbelianGroup {
            generators,
            relations,
        })
    }

    /// `ℤ^g` with no relations.
    pub fn free(generators: usize) -> Self {
        PresentedAbelianGroup {
            generators,
            relations: IntMatrix::zeros(generators, 0),
        }
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn direct_sum(&self, other: &PresentedAbelianGroup) -> Self {
        PresentedAbelianGroup {
            generators: self.generators + other.generators,
            relations: IntMatrix::block_diag(&[&self.relations, &other.relations]),
        }
    }

    pub fn sum_all(parts: &[&PresentedAbelianGroup]) -> Self {
        parts
            .iter()
            .fold(Self::zero(), |acc, g| acc.direct_sum(g))
    }

    /// `G^k`.
    pub fn power(&self, k: usize) -> Self {
        Self::sum_all(&vec![self; k])
    }

    pub fn canonical(&self) -> Result<FGAbelianGroup, AbelianError> {
        canonical_group(self)
    }
}

/// Invariant-factor form of a presented group via Smith normal form.
pub fn canonical_group(p: &PresentedAbelianGroup) -> Result<FGAbelianGroup, AbelianError> {
    let s = snf(&p.relations)?;
    let factors = s.invariant_factors();
    let torsion = factors
        .iter()
        .filter(|&&d| d > 1)
        .map(|&d| d as u64)
        .collect();
    Ok(FGAbelianGroup {
        free_rank: p.generators - factors.len(),
        torsion,
    })
}

/// Returns `H` with `H ⊕ H ≅ G`.
pub fn halve_group(g: &FGAbelianGroup) -> Result<FGAbelianGroup, AbelianError> {
    if !g.free_rank.is_multiple_of(2) {
        return Err(AbelianError::NotHalvable(format!(
            "free rank {} is odd",
            g.free_rank
        )));
    }
    let mut counts: BTreeMap<(u64, u32), usize> = BTreeMap::new();
    for part in g.primary_parts() {
        *counts.entry(part).or_default() += 1;
    }
    let mut half = Vec::new();
    for (&(p, e), &m) in &counts {
        if m % 2 != 0 {
            return Err(AbelianError::NotHalvable(format!(
                "Z/{} occurs {m} times in the primary decomposition",
                p.pow(e)
            )));
        }
        half.extend(std::iter::repeat_n((p, e), m / 2));
    }
    Ok(FGAbelianGroup::from_primary(g.free_rank / 2, &half))
}
