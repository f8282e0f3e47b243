//! Chain complexes of free abelian groups and the homology computations the
//! decompositions rest on: torus homology with coefficients, algebraic
//! mapping tori, and homology of `ℤ/2` with twisted coefficients.

use thiserror::Error;

use crate::abelian::{
    homology_at, AbelianError, FGAbelianGroup, Homomorphism, IntMatrix, PresentedAbelianGroup,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CellularError {
    #[error("invalid chain complex: {0}")]
    InvalidComplex(String),
    #[error("not a chain map: {0}")]
    NotAChainMap(String),
    #[error("coefficient module has no involution")]
    MissingInvolution,
    #[error("coefficient self-map is not an involution")]
    NotAnInvolution,
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}

/// `C_0 ← C_1 ← … ← C_top`, each `C_i = ℤ^{rank_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    /// `boundaries[i]` is `d_{i+1}: C_{i+1} → C_i`.
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self, CellularError> {
        if ranks.is_empty() && boundaries.is_empty() {
            return Ok(ChainComplex { ranks, boundaries });
        }
        if boundaries.len() + 1 != ranks.len() {
            return Err(CellularError::InvalidComplex(format!(
                "{} boundary maps for {} chain groups",
                boundaries.len(),
                ranks.len()
            )));
        }
        for (i, d) in boundaries.iter().enumerate() {
            if d.shape() != (ranks[i], ranks[i + 1]) {
                return Err(CellularError::InvalidComplex(format!(
                    "d_{} has shape {:?}, expected {:?}",
                    i + 1,
                    d.shape(),
                    (ranks[i], ranks[i + 1])
                )));
            }
        }
        for i in 1..boundaries.len() {
            if !boundaries[i - 1].mul(&boundaries[i])?.is_zero() {
                return Err(CellularError::InvalidComplex(format!(
                    "d_{} ∘ d_{} is nonzero",
                    i,
                    i + 1
                )));
            }
        }
        Ok(ChainComplex { ranks, boundaries })
    }

    /// A single `ℤ` in degree 0.
    pub fn point() -> Self {
        ChainComplex {
            ranks: vec![1],
            boundaries: Vec::new(),
        }
    }

    /// The two-cell circle: `ℤ ←0− ℤ`.
    pub fn circle() -> Self {
        ChainComplex {
            ranks: vec![1, 1],
            boundaries: vec![IntMatrix::zeros(1, 1)],
        }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks.get(i).copied().unwrap_or(0)
    }

    /// Number of chain groups (top degree + 1).
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    /// `d_i: C_i → C_{i−1}`, a zero matrix outside the stored range.
    pub fn boundary(&self, i: usize) -> IntMatrix {
        if i >= 1 && i <= self.boundaries.len() {
            self.boundaries[i - 1].clone()
        } else {
            let src = self.rank(i);
            let tgt = if i == 0 { 0 } else { self.rank(i - 1) };
            IntMatrix::zeros(tgt, src)
        }
    }

    /// `(C ⊗ D)_n = ⊕_{i+j=n} C_i ⊗ D_j` with `d(x⊗y) = dx⊗y + (−1)^i x⊗dy`.
    pub fn tensor(&self, other: &ChainComplex) -> Result<Self, CellularError> {
        if self.is_empty() || other.is_empty() {
            return ChainComplex::new(Vec::new(), Vec::new());
        }
        let top = self.len() + other.len() - 2;
        // blocks[n] lists (i, j, offset) for i + j = n
        let mut blocks: Vec<Vec<(usize, usize, usize)>> = Vec::new();
        let mut ranks = Vec::new();
        for n in 0..=top {
            let mut off = 0;
            let mut b = Vec::new();
            for i in 0..=n {
                let j = n - i;
                if i < self.len() && j < other.len() {
                    b.push((i, j, off));
                    off += self.rank(i) * other.rank(j);
                }
            }
            blocks.push(b);
            ranks.push(off);
        }
        let mut boundaries = Vec::new();
        for n in 1..=top {
            let mut d = IntMatrix::zeros(ranks[n - 1], ranks[n]);
            let find = |i: usize, j: usize| blocks[n - 1].iter().find(|b| b.0 == i && b.1 == j).map(|b| b.2);
            for &(i, j, col0) in &blocks[n] {
                if i >= 1 {
                    if let Some(row0) = find(i - 1, j) {
                        let part = self.boundary(i).kron(&IntMatrix::identity(other.rank(j)))?;
                        place(&mut d, row0, col0, &part);
                    }
                }
                if j >= 1 {
                    if let Some(row0) = find(i, j - 1) {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        let part = IntMatrix::identity(self.rank(i))
                            .kron(&other.boundary(j))?
                            .scale(sign)?;
                        place(&mut d, row0, col0, &part);
                    }
                }
            }
            boundaries.push(d);
        }
        ChainComplex::new(ranks, boundaries)
    }
}

fn place(m: &mut IntMatrix, r0: usize, c0: usize, block: &IntMatrix) {
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            m.set(r0 + i, c0 + j, block.get(i, j));
        }
    }
}

/// Cellular chains of the `k`-torus as the `k`-fold tensor power of the
/// circle; `C_i` has rank `binom(k, i)`.
pub fn torus_complex(k: usize) -> ChainComplex {
    let mut c = ChainComplex::point();
    for _ in 0..k {
        c = c
            .tensor(&ChainComplex::circle())
            .expect("tensor of valid complexes is valid");
    }
    c
}

/// Homology of `C ⊗ M`, one group per degree `0..C.len()`.
pub fn homology_with_coefficients(
    c: &ChainComplex,
    m: &PresentedAbelianGroup,
) -> Result<Vec<FGAbelianGroup>, CellularError> {
    let g = m.generators();
    let groups: Vec<PresentedAbelianGroup> = (0..=c.len()).map(|i| m.power(c.rank(i))).collect();
    let zero = PresentedAbelianGroup::zero();
    // maps[i] = d_i ⊗ 1 : C_i ⊗ M → C_{i−1} ⊗ M
    let map = |i: usize| -> Result<Homomorphism, CellularError> {
        if i == 0 {
            return Ok(Homomorphism::zero(&groups[0], &zero));
        }
        let mat = c.boundary(i).kron(&IntMatrix::identity(g))?;
        Ok(Homomorphism::new(groups[i].clone(), groups[i - 1].clone(), mat)?)
    };
    (0..c.len())
        .map(|i| Ok(homology_at(&map(i + 1)?, &map(i)?)?))
        .collect()
}

pub fn homology(c: &ChainComplex) -> Result<Vec<FGAbelianGroup>, CellularError> {
    homology_with_coefficients(c, &PresentedAbelianGroup::free(1))
}

/// Degreewise self-map `f_i: C_i → C_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub components: Vec<IntMatrix>,
}

impl ChainMap {
    pub fn identity(c: &ChainComplex) -> Self {
        ChainMap {
            components: c.ranks().iter().map(|&r| IntMatrix::identity(r)).collect(),
        }
    }

    fn component(&self, i: usize, rank: usize) -> IntMatrix {
        self.components
            .get(i)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(rank, rank))
    }

    pub fn check(&self, c: &ChainComplex) -> Result<(), CellularError> {
        if self.components.len() != c.len() {
            return Err(CellularError::NotAChainMap(format!(
                "{} components for {} chain groups",
                self.components.len(),
                c.len()
            )));
        }
        for (i, f) in self.components.iter().enumerate() {
            if f.shape() != (c.rank(i), c.rank(i)) {
                return Err(CellularError::NotAChainMap(format!("f_{i} has wrong shape")));
            }
        }
        for i in 1..c.len() {
            let d = c.boundary(i);
            if self.components[i - 1].mul(&d)? != d.mul(&self.components[i])? {
                return Err(CellularError::NotAChainMap(format!(
                    "f_{} d_{i} differs from d_{i} f_{i}",
                    i - 1
                )));
            }
        }
        Ok(())
    }
}

/// The algebraic mapping torus: the cone of `1 − f`,
/// `T_n = C_{n−1} ⊕ C_n`, `d(y, x) = (−dy, (1−f)y + dx)`.
pub fn mapping_torus(c: &ChainComplex, f: &ChainMap) -> Result<ChainComplex, CellularError> {
    f.check(c)?;
    if c.is_empty() {
        return Ok(c.clone());
    }
    let len = c.len() + 1;
    let phi = |i: usize| -> Result<IntMatrix, CellularError> {
        let r = c.rank(i);
        Ok(IntMatrix::identity(r).sub(&f.component(i, r))?)
    };
    let ranks: Vec<usize> = (0..len)
        .map(|n| if n == 0 { 0 } else { c.rank(n - 1) } + c.rank(n))
        .collect();
    let mut boundaries = Vec::new();
    for n in 1..len {
        // rows: C_{n−2} ⊕ C_{n−1}; cols: C_{n−1} ⊕ C_n
        let below = if n >= 2 { c.rank(n - 2) } else { 0 };
        let mut d = IntMatrix::zeros(ranks[n - 1], ranks[n]);
        if n >= 2 {
            place(&mut d, 0, 0, &c.boundary(n - 1).neg()?);
        }
        place(&mut d, below, 0, &phi(n - 1)?);
        place(&mut d, below, c.rank(n - 1), &c.boundary(n));
        boundaries.push(d);
    }
    ChainComplex::new(ranks, boundaries)
}

pub fn mapping_torus_homology(
    c: &ChainComplex,
    f: &ChainMap,
) -> Result<Vec<FGAbelianGroup>, CellularError> {
    homology(&mapping_torus(c, f)?)
}

/// An abelian group, optionally with an action of `ℤ/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientModule {
    group: PresentedAbelianGroup,
    involution: Option<Homomorphism>,
}

impl CoefficientModule {
    pub fn new(
        group: PresentedAbelianGroup,
        involution: Option<Homomorphism>,
    ) -> Result<Self, CellularError> {
        if let Some(t) = &involution {
            if t.source() != &group || t.target() != &group {
                return Err(CellularError::NotAnInvolution);
            }
            if !t.then(t)?.agrees_with(&Homomorphism::identity(&group))? {
                return Err(CellularError::NotAnInvolution);
            }
        }
        Ok(CoefficientModule { group, involution })
    }

    pub fn plain(group: PresentedAbelianGroup) -> Self {
        CoefficientModule {
            group,
            involution: None,
        }
    }

    pub fn trivial_action(group: PresentedAbelianGroup) -> Self {
        let t = Homomorphism::identity(&group);
        CoefficientModule {
            group,
            involution: Some(t),
        }
    }

    /// `G ⊕ G` with the involution swapping the summands.
    pub fn swap(g: &PresentedAbelianGroup) -> Self {
        let n = g.generators();
        let group = g.direct_sum(g);
        let mut m = IntMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            m.set(i, n + i, 1);
            m.set(n + i, i, 1);
        }
        let t = Homomorphism::new(group.clone(), group.clone(), m)
            .expect("swap respects block-diagonal relations");
        CoefficientModule {
            group,
            involution: Some(t),
        }
    }

    pub fn group(&self) -> &PresentedAbelianGroup {
        &self.group
    }

    pub fn involution(&self) -> Option<&Homomorphism> {
        self.involution.as_ref()
    }
}

/// `H_i(ℤ/2; M)` for `0 ≤ i ≤ top`, from the periodic resolution
/// `… → ℤ[ℤ/2] −(1+t)→ ℤ[ℤ/2] −(1−t)→ ℤ[ℤ/2] → ℤ`.
pub fn z2_homology(
    m: &CoefficientModule,
    top: usize,
) -> Result<Vec<FGAbelianGroup>, CellularError> {
    let t = m.involution().ok_or(CellularError::MissingInvolution)?;
    let id = Homomorphism::identity(m.group());
    let one_minus_t = id.sub(t)?;
    let one_plus_t = id.add(t)?;
    let to_zero = Homomorphism::zero(m.group(), &PresentedAbelianGroup::zero());
    // d_i for i ≥ 1: odd → 1 − t, even → 1 + t
    let d = |i: usize| match i {
        0 => &to_zero,
        i if i % 2 == 1 => &one_minus_t,
        _ => &one_plus_t,
    };
    (0..=top)
        .map(|i| Ok(homology_at(d(i + 1), d(i))?))
        .collect()
}
