//! Bass's four-term sequence and the graded pieces of the Wang sequence,
//! built as explicit maps of presented groups.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::table::RingTable;
use super::ContractedError;
use crate::abelian::{
    is_exact, ExactnessReport, FGAbelianGroup, Homomorphism, IntMatrix, PresentedAbelianGroup,
};

/// Labels of the four interior spots, in order.
pub const FOUR_TERM_SPOTS: [&str; 4] = [
    "K(R)",
    "K(R[t]) + K(R[t^-1])",
    "K(R[t,t^-1])",
    "LK(R)",
];

/// Which maps to put into the four-term sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FourTermMaps {
    Canonical,
    /// The `N₊` component of the difference map replaced by zero.
    ZeroedPlusNil,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourTermReport {
    pub exactness: ExactnessReport,
    /// `projection ∘ section = id` on `LK(R)`.
    pub splits: bool,
}

impl FourTermReport {
    pub fn passed(&self) -> bool {
        self.exactness.is_exact() && self.splits
    }

    pub fn failures(&self) -> Vec<(&'static str, &FGAbelianGroup)> {
        self.exactness
            .failures()
            .into_iter()
            .map(|(i, g)| (FOUR_TERM_SPOTS[i], g))
            .collect()
    }
}

/// Places identity-like blocks into a block matrix.
fn block_matrix(rows: &[usize], cols: &[usize], blocks: &[(usize, usize, IntMatrix)]) -> IntMatrix {
    let offset = |sizes: &[usize], k: usize| sizes[..k].iter().sum::<usize>();
    let mut m = IntMatrix::zeros(rows.iter().sum(), cols.iter().sum());
    for (bi, bj, b) in blocks {
        let (r0, c0) = (offset(rows, *bi), offset(cols, *bj));
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                m.set(r0 + i, c0 + j, b.get(i, j));
            }
        }
    }
    m
}

fn concrete(table: &RingTable, j: i64, nil: bool) -> Result<FGAbelianGroup, ContractedError> {
    let entry = if nil { table.nk_entry(j) } else { table.k_entry(j) };
    entry
        .and_then(|e| e.group())
        .ok_or_else(|| ContractedError::MissingEntry(if nil { format!("NK_{{{j}}}") } else { format!("K_{{{j}}}") }))
}

/// Builds `0 → K → K[t] ⊕ K[t⁻¹] → K[t,t⁻¹] → LK → 0` from the table's
/// `K_q`, `NK_q`, `K_{q−1}` and checks exactness at every spot.
pub fn four_term_check(q: i64, table: &RingTable) -> Result<FourTermReport, ContractedError> {
    four_term_check_with(q, table, FourTermMaps::Canonical)
}

pub fn four_term_check_with(
    q: i64,
    table: &RingTable,
    maps: FourTermMaps,
) -> Result<FourTermReport, ContractedError> {
    let k = concrete(table, q, false)?.presentation();
    let nk = concrete(table, q, true)?.presentation();
    let lk = concrete(table, q - 1, false)?.presentation();
    let (a, n, b) = (k.generators(), nk.generators(), lk.generators());
    let id = IntMatrix::identity;
    let minus_id = |s: usize| id(s).neg();

    let poly = k.direct_sum(&nk);
    let spot2 = poly.direct_sum(&poly);
    let laurent = PresentedAbelianGroup::sum_all(&[&k, &nk, &nk, &lk]);
    let zero = PresentedAbelianGroup::zero();

    let diagonal = Homomorphism::new(
        k.clone(),
        spot2.clone(),
        block_matrix(&[a, n, a, n], &[a], &[(0, 0, id(a)), (2, 0, id(a))]),
    )?;
    let plus_block = match maps {
        FourTermMaps::Canonical => id(n),
        FourTermMaps::ZeroedPlusNil => IntMatrix::zeros(n, n),
    };
    let difference = Homomorphism::new(
        spot2.clone(),
        laurent.clone(),
        block_matrix(
            &[a, n, n, b],
            &[a, n, a, n],
            &[
                (0, 0, id(a)),
                (0, 2, minus_id(a)?),
                (1, 1, plus_block),
                (2, 3, minus_id(n)?),
            ],
        ),
    )?;
    let projection = Homomorphism::new(
        laurent.clone(),
        lk.clone(),
        block_matrix(&[b], &[a, n, n, b], &[(0, 3, id(b))]),
    )?;
    let section = Homomorphism::new(
        lk.clone(),
        laurent.clone(),
        block_matrix(&[a, n, n, b], &[b], &[(3, 0, id(b))]),
    )?;

    let seq = [
        Homomorphism::zero(&zero, &k),
        diagonal,
        difference,
        projection.clone(),
        Homomorphism::zero(&lk, &zero),
    ];
    let exactness = is_exact(&seq)?;
    let splits = section
        .then(&projection)?
        .agrees_with(&Homomorphism::identity(&lk))?;
    Ok(FourTermReport { exactness, splits })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Extension {
    /// The quotient piece is free, so `H_q` is the direct sum of the pieces.
    Split,
    /// Not determined by the pieces alone.
    Undetermined,
}

/// The two graded pieces of `H_q` in the Wang sequence:
/// `0 → coker(1−α)_q → H_q → ker(1−α)_{q−1} → 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WangPieces {
    pub cokernel: FGAbelianGroup,
    pub kernel: FGAbelianGroup,
    pub extension: Extension,
}

/// `alpha` maps each degree to an automorphism of the group in that degree.
pub fn wang_pieces(
    alpha: &BTreeMap<i64, Homomorphism>,
    q: i64,
) -> Result<WangPieces, ContractedError> {
    let one_minus = |j: i64| -> Result<Homomorphism, ContractedError> {
        let a = alpha.get(&j).ok_or(ContractedError::MissingDegree(j))?;
        if a.source() != a.target() || !a.is_isomorphism()? {
            return Err(ContractedError::NotAutomorphism(j));
        }
        Ok(Homomorphism::identity(a.source()).sub(a)?)
    };
    let cokernel = one_minus(q)?.cokernel()?;
    let kernel = one_minus(q - 1)?.kernel()?;
    let extension = if kernel.is_free() {
        Extension::Split
    } else {
        Extension::Undetermined
    };
    Ok(WangPieces {
        cokernel,
        kernel,
        extension,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contracted::table::Entry;

    fn table(kq: FGAbelianGroup, kq1: FGAbelianGroup, nkq: FGAbelianGroup) -> RingTable {
        RingTable::new("t")
            .with_k(0, Entry::Concrete(kq))
            .with_k(-1, Entry::Concrete(kq1))
            .with_nk(0, Entry::Concrete(nkq))
            .unwrap()
    }

    #[test]
    fn regular_case_exact() {
        let t = table(FGAbelianGroup::free(1), FGAbelianGroup::free(1), FGAbelianGroup::trivial());
        let r = four_term_check(0, &t).unwrap();
        assert!(r.passed());
        assert_eq!(r.exactness.spots.len(), 4);
    }

    #[test]
    fn torsion_case_exact() {
        let t = table(FGAbelianGroup::cyclic(2), FGAbelianGroup::free(1), FGAbelianGroup::cyclic(3));
        assert!(four_term_check(0, &t).unwrap().passed());
    }

    #[test]
    fn zeroed_nil_component_is_located() {
        let t = table(FGAbelianGroup::cyclic(2), FGAbelianGroup::free(1), FGAbelianGroup::cyclic(3));
        let r = four_term_check_with(0, &t, FourTermMaps::ZeroedPlusNil).unwrap();
        assert!(!r.passed());
        assert!(r.splits);
        let z3 = FGAbelianGroup::cyclic(3);
        assert_eq!(
            r.failures(),
            vec![("K(R[t]) + K(R[t^-1])", &z3), ("K(R[t,t^-1])", &z3)]
        );
    }

    #[test]
    fn missing_entries_named() {
        let t = RingTable::new("empty").with_k(0, Entry::Zero);
        let err = four_term_check(0, &t).unwrap_err();
        assert_eq!(err, ContractedError::MissingEntry("NK_{0}".into()));
        let err = four_term_check(0, &RingTable::symbolic()).unwrap_err();
        assert_eq!(err, ContractedError::MissingEntry("K_{0}".into()));
    }

    fn z() -> PresentedAbelianGroup {
        PresentedAbelianGroup::free(1)
    }

    #[test]
    fn wang_examples() {
        let mut alpha = BTreeMap::new();
        alpha.insert(0, Homomorphism::identity(&z()));
        alpha.insert(-1, Homomorphism::identity(&z()));
        let w = wang_pieces(&alpha, 0).unwrap();
        assert_eq!((w.cokernel, w.kernel), (FGAbelianGroup::free(1), FGAbelianGroup::free(1)));
        assert_eq!(w.extension, Extension::Split);

        let mut alpha = BTreeMap::new();
        alpha.insert(0, Homomorphism::scalar(&z(), -1).unwrap());
        alpha.insert(-1, Homomorphism::identity(&PresentedAbelianGroup::zero()));
        let w = wang_pieces(&alpha, 0).unwrap();
        assert_eq!((w.cokernel, w.kernel), (FGAbelianGroup::cyclic(2), FGAbelianGroup::trivial()));

        let swap = Homomorphism::new(
            PresentedAbelianGroup::free(2),
            PresentedAbelianGroup::free(2),
            IntMatrix::from_rows(&[[0, 1], [1, 0]]),
        )
        .unwrap();
        let mut alpha = BTreeMap::new();
        alpha.insert(0, swap.clone());
        alpha.insert(-1, swap);
        let w = wang_pieces(&alpha, 0).unwrap();
        assert_eq!((w.cokernel, w.kernel), (FGAbelianGroup::free(1), FGAbelianGroup::free(1)));
    }

    #[test]
    fn wang_rejects_non_automorphism() {
        let mut alpha = BTreeMap::new();
        alpha.insert(0, Homomorphism::scalar(&z(), 2).unwrap());
        alpha.insert(-1, Homomorphism::identity(&z()));
        assert_eq!(wang_pieces(&alpha, 0), Err(ContractedError::NotAutomorphism(0)));
        alpha.remove(&-1);
        alpha.insert(0, Homomorphism::identity(&z()));
        assert_eq!(wang_pieces(&alpha, 0), Err(ContractedError::MissingDegree(-1)));
    }
}
