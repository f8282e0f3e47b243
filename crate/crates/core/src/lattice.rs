//! Maximal cyclic subgroups of `ℤⁿ`.
//!
//! A maximal (saturated) infinite cyclic subgroup is generated by a primitive
//! vector, unique up to sign. [`PrimitiveVector`] fixes the sign by making
//! the first nonzero coordinate positive.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{AbelianError, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("the zero vector generates no infinite cyclic subgroup")]
    ZeroVector,
    #[error("vector {0:?} is not primitive")]
    NotPrimitive(Vec<i64>),
    #[error("vector {0:?} has a zero coordinate")]
    ZeroCoordinate(Vec<i64>),
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error(transparent)]
    Arithmetic(#[from] AbelianError),
}

/// Canonical generator of a maximal cyclic subgroup of `ℤⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct PrimitiveVector(Vec<i64>);

impl PrimitiveVector {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn max_norm(&self) -> u64 {
        self.0.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }

    /// Every coordinate nonzero (membership in `M_{≠0}`).
    pub fn all_nonzero(&self) -> bool {
        self.0.iter().all(|&x| x != 0)
    }

    /// Some generator has all coordinates positive (membership in `M₊`).
    /// With the sign normalization this is just positivity of `self`.
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&x| x > 0)
    }

    /// Indices of the nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] != 0).collect()
    }
}

impl TryFrom<Vec<i64>> for PrimitiveVector {
    type Error = LatticeError;

    /// Accepts only vectors that are already canonical.
    fn try_from(v: Vec<i64>) -> Result<Self, Self::Error> {
        let c = canonical_primitive(&v)?;
        if c.0 != v {
            return Err(LatticeError::NotPrimitive(v));
        }
        Ok(c)
    }
}

impl From<PrimitiveVector> for Vec<i64> {
    fn from(v: PrimitiveVector) -> Self {
        v.0
    }
}

impl fmt::Display for PrimitiveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn gcd_all(v: &[i64]) -> u64 {
    v.iter().fold(0u64, |g, &x| g.gcd(&x.unsigned_abs()))
}

/// Divides out the content and normalizes the sign.
pub fn canonical_primitive(v: &[i64]) -> Result<PrimitiveVector, LatticeError> {
    let g = gcd_all(v);
    if g == 0 {
        return Err(LatticeError::ZeroVector);
    }
    let g = i64::try_from(g).map_err(|_| AbelianError::Overflow)?;
    let mut out: Vec<i64> = v.iter().map(|&x| x / g).collect();
    if out.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        for x in &mut out {
            *x = -*x;
        }
    }
    Ok(PrimitiveVector(out))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubgroupFilter {
    All,
    /// Every coordinate nonzero.
    Nonzero,
    /// Generated by a vector with all coordinates positive.
    Positive,
}

impl SubgroupFilter {
    pub fn accepts(self, v: &PrimitiveVector) -> bool {
        match self {
            SubgroupFilter::All => true,
            SubgroupFilter::Nonzero => v.all_nonzero(),
            SubgroupFilter::Positive => v.is_positive(),
        }
    }
}

/// All canonical generators with max-norm at most `height` passing `filter`,
/// in lexicographic order of coordinates.
pub fn enumerate_subgroups(n: usize, height: u64, filter: SubgroupFilter) -> Vec<PrimitiveVector> {
    let h = height as i64;
    if n == 0 || h == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    // Odometer over [-h, h]^n; the first coordinate of a canonical vector is
    // never negative, which halves the scan.
    let mut v = vec![-h; n];
    v[0] = 0;
    loop {
        let first_nonzero = v.iter().find(|&&x| x != 0);
        if first_nonzero.is_some_and(|&x| x > 0) && gcd_all(&v) == 1 {
            let p = PrimitiveVector(v.clone());
            if filter.accepts(&p) {
                out.push(p);
            }
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if v[i] < h {
                v[i] += 1;
                break;
            }
            v[i] = if i == 0 { 0 } else { -h };
        }
    }
}

/// `⟨(x₁,…,xₙ)⟩ ↦ ⟨(|x₁|,…,|xₙ|)⟩` on subgroups with all coordinates nonzero.
pub fn fold_to_positive(c: &PrimitiveVector) -> Result<PrimitiveVector, LatticeError> {
    if !c.all_nonzero() {
        return Err(LatticeError::ZeroCoordinate(c.0.clone()));
    }
    let abs: Vec<i64> = c.0.iter().map(|x| x.abs()).collect();
    canonical_primitive(&abs)
}

/// Square integer matrix with determinant ±1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct UnimodularMatrix(IntMatrix);

impl UnimodularMatrix {
    pub fn new(m: IntMatrix) -> Result<Self, LatticeError> {
        if !m.is_unimodular() {
            return Err(LatticeError::NotUnimodular);
        }
        Ok(UnimodularMatrix(m))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn first_column(&self) -> Vec<i64> {
        self.0.column(0)
    }
}

impl TryFrom<Vec<Vec<i64>>> for UnimodularMatrix {
    type Error = String;

    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self, Self::Error> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err("basis matrix must be square".into());
        }
        UnimodularMatrix::new(IntMatrix::from_rows(&rows)).map_err(|e| e.to_string())
    }
}

impl From<UnimodularMatrix> for Vec<Vec<i64>> {
    fn from(m: UnimodularMatrix) -> Self {
        m.0.to_rows()
    }
}

/// Completes a primitive vector `v` to a basis of `ℤⁿ`: the result has
/// first column `v` and determinant ±1.
///
/// Recursive construction: write `v = (v₁, d·w)` with `w` primitive in
/// `ℤⁿ⁻¹`, complete `w` to `B'`, and pick `x·v₁ + y·d = 1` with
/// `0 ≤ x < d`. The columns `(v₁, d·w)`, `(−y, x·w)`, `(0, B'ⱼ)` for `j ≥ 2`
/// then form a basis.
pub fn complete_to_basis(v: &[i64]) -> Result<UnimodularMatrix, LatticeError> {
    if gcd_all(v) != 1 {
        return Err(if v.iter().all(|&x| x == 0) {
            LatticeError::ZeroVector
        } else {
            LatticeError::NotPrimitive(v.to_vec())
        });
    }
    let m = complete_rec(v)?;
    debug_assert!(m.is_unimodular());
    Ok(UnimodularMatrix(m))
}

fn complete_rec(v: &[i64]) -> Result<IntMatrix, LatticeError> {
    let n = v.len();
    if n == 1 {
        return Ok(IntMatrix::from_rows(&[[v[0]]]));
    }
    let (v1, rest) = (v[0], &v[1..]);
    let d = gcd_all(rest);
    let mut out = IntMatrix::zeros(n, n);
    if d == 0 {
        // v = (±1, 0, …, 0)
        out.set(0, 0, v1);
        for i in 1..n {
            out.set(i, i, 1);
        }
        return Ok(out);
    }
    let d = d as i64;
    let w: Vec<i64> = rest.iter().map(|&x| x / d).collect();
    let sub = complete_rec(&w)?;

    // x ≡ v₁⁻¹ (mod d), 0 ≤ x < d
    let x = if d == 1 {
        0
    } else {
        let e = v1.rem_euclid(d).extended_gcd(&d);
        e.x.rem_euclid(d)
    };
    let y = (1 - i128::from(x) * i128::from(v1)) / i128::from(d);
    let y = i64::try_from(y).map_err(|_| AbelianError::Overflow)?;

    out.set(0, 0, v1);
    out.set(0, 1, -y);
    for i in 1..n {
        out.set(i, 0, v[i]);
        out.set(i, 1, x.checked_mul(w[i - 1]).ok_or(AbelianError::Overflow)?);
        for j in 2..n {
            out.set(i, j, sub.get(i - 1, j - 1));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(v: &[i64]) -> PrimitiveVector {
        canonical_primitive(v).unwrap()
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(pv(&[-2, 4]).coords(), &[1, -2]);
        assert_eq!(pv(&[1, 0, 0]).coords(), &[1, 0, 0]);
        assert_eq!(pv(&[6, 10, 15]).coords(), &[6, 10, 15]);
        assert_eq!(pv(&[0, -3, 6]).coords(), &[0, 1, -2]);
        assert_eq!(canonical_primitive(&[0, 0]), Err(LatticeError::ZeroVector));
    }

    #[test]
    fn enumerate_examples() {
        let all = enumerate_subgroups(2, 1, SubgroupFilter::All);
        let coords: Vec<&[i64]> = all.iter().map(|p| p.coords()).collect();
        assert_eq!(coords, vec![&[0, 1][..], &[1, -1], &[1, 0], &[1, 1]]);

        assert_eq!(enumerate_subgroups(1, 5, SubgroupFilter::All), vec![pv(&[1])]);

        let pos = enumerate_subgroups(2, 2, SubgroupFilter::Positive);
        assert_eq!(pos, vec![pv(&[1, 1]), pv(&[1, 2]), pv(&[2, 1])]);
    }

    #[test]
    fn enumerate_matches_brute_force() {
        for n in 1..=3 {
            for h in 1..=3i64 {
                let mut brute = std::collections::BTreeSet::new();
                let side = (2 * h + 1) as usize;
                for idx in 0..side.pow(n as u32) {
                    let mut v = Vec::new();
                    let mut k = idx;
                    for _ in 0..n {
                        v.push((k % side) as i64 - h);
                        k /= side;
                    }
                    if let Ok(p) = canonical_primitive(&v) {
                        brute.insert(p);
                    }
                }
                let got = enumerate_subgroups(n, h as u64, SubgroupFilter::All);
                assert_eq!(got, brute.into_iter().collect::<Vec<_>>(), "n={n} h={h}");
            }
        }
    }

    #[test]
    fn fold_examples() {
        assert_eq!(fold_to_positive(&pv(&[1, -2])).unwrap(), pv(&[1, 2]));
        assert_eq!(fold_to_positive(&pv(&[1, 1, 1])).unwrap(), pv(&[1, 1, 1]));
        assert!(matches!(
            fold_to_positive(&pv(&[1, 0])),
            Err(LatticeError::ZeroCoordinate(_))
        ));
        let fiber: Vec<_> = enumerate_subgroups(2, 2, SubgroupFilter::Nonzero)
            .into_iter()
            .filter(|c| fold_to_positive(c).unwrap() == pv(&[1, 2]))
            .collect();
        assert_eq!(fiber, vec![pv(&[1, -2]), pv(&[1, 2])]);
    }

    #[test]
    fn basis_completion_examples() {
        assert_eq!(
            complete_to_basis(&[2, 3]).unwrap().matrix(),
            &IntMatrix::from_rows(&[[2, 1], [3, 2]])
        );
        assert!(complete_to_basis(&[1, 0, 0, 0]).unwrap().matrix().is_identity());
        let b = complete_to_basis(&[3, 4, 5]).unwrap();
        assert_eq!(b.first_column(), vec![3, 4, 5]);
        assert!(b.matrix().determinant().unwrap().abs() == 1);
        assert!(matches!(
            complete_to_basis(&[2, 4]),
            Err(LatticeError::NotPrimitive(_))
        ));
        assert_eq!(complete_to_basis(&[0, 0]), Err(LatticeError::ZeroVector));
    }

    #[test]
    fn basis_completion_handles_negative_and_zero_leads() {
        for v in [[0, 1], [-1, 0], [0, -1], [-3, 7], [5, -2]] {
            let b = complete_to_basis(&v).unwrap();
            assert_eq!(b.first_column(), v.to_vec());
        }
        let b = complete_to_basis(&[0, 0, -1]).unwrap();
        assert_eq!(b.first_column(), vec![0, 0, -1]);
    }
}
