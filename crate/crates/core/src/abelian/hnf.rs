//! Row-style Hermite normal form and the lattice queries built on it.

use super::matrix::{self, IntMatrix};
use super::AbelianError;

/// `U·A = H`, `H` in row echelon form with positive pivots and the entries
/// above each pivot reduced into `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    /// Pivot column of each nonzero row of `h`, in row order.
    pub pivots: Vec<usize>,
}

impl Hnf {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

struct Workspace {
    h: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
}

impl Workspace {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.h.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn row_op(&mut self, dst: usize, k: i64, src: usize) -> Result<(), AbelianError> {
        self.h.row_sub_mul(dst, k, src)?;
        self.u.row_sub_mul(dst, k, src)?;
        self.u_inv.col_sub_mul(src, matrix::neg(k)?, dst)
    }

    fn negate_row(&mut self, i: usize) -> Result<(), AbelianError> {
        self.h.negate_row(i)?;
        self.u.negate_row(i)?;
        self.u_inv.negate_col(i)
    }
}

pub fn hnf(a: &IntMatrix) -> Result<Hnf, AbelianError> {
    let (m, n) = a.shape();
    let mut w = Workspace {
        h: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
    };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        // Euclid down column c until a single nonzero entry remains at row r.
        loop {
            let best = (r..m)
                .filter(|&i| w.h.get(i, c) != 0)
                .min_by_key(|&i| w.h.get(i, c).unsigned_abs());
            let Some(p) = best else { break };
            w.swap_rows(r, p);
            let pivot = w.h.get(r, c);
            let mut residue = false;
            for i in r + 1..m {
                w.row_op(i, w.h.get(i, c) / pivot, r)?;
                residue |= w.h.get(i, c) != 0;
            }
            if !residue {
                break;
            }
        }
        if w.h.get(r, c) == 0 {
            continue;
        }
        if w.h.get(r, c) < 0 {
            w.negate_row(r)?;
        }
        let pivot = w.h.get(r, c);
        for i in 0..r {
            w.row_op(i, w.h.get(i, c).div_euclid(pivot), r)?;
        }
        pivots.push(c);
        r += 1;
    }
    reduce_transform(&mut w, r)?;
    Ok(Hnf {
        h: w.h,
        u: w.u,
        u_inv: w.u_inv,
        pivots,
    })
}

/// Rows `rank..` of `U` span the left kernel of `A`, so adding them to other
/// rows leaves `H` alone. Put them in echelon form and reduce every row of
/// `U` against them, which keeps `U` from carrying the elimination's growth.
fn reduce_transform(w: &mut Workspace, rank: usize) -> Result<(), AbelianError> {
    let m = w.u.rows();
    let mut r = rank;
    let mut kernel_pivots = Vec::new();
    for c in 0..m {
        if r == m {
            break;
        }
        loop {
            let best = (r..m)
                .filter(|&i| w.u.get(i, c) != 0)
                .min_by_key(|&i| w.u.get(i, c).unsigned_abs());
            let Some(p) = best else { break };
            w.swap_rows(r, p);
            let pivot = w.u.get(r, c);
            let mut residue = false;
            for i in r + 1..m {
                w.row_op(i, w.u.get(i, c) / pivot, r)?;
                residue |= w.u.get(i, c) != 0;
            }
            if !residue {
                break;
            }
        }
        if w.u.get(r, c) == 0 {
            continue;
        }
        if w.u.get(r, c) < 0 {
            w.negate_row(r)?;
        }
        kernel_pivots.push((r, c));
        r += 1;
    }
    for &(p, c) in &kernel_pivots {
        let pivot = w.u.get(p, c);
        for i in 0..p {
            w.row_op(i, w.u.get(i, c).div_euclid(pivot), p)?;
        }
    }
    Ok(())
}

/// Integer solution `x` of `A·x = b`, if `b` lies in the column lattice of `A`.
pub fn solve_in_column_span(a: &IntMatrix, b: &[i64]) -> Result<Option<Vec<i64>>, AbelianError> {
    if b.len() != a.rows() {
        return Err(AbelianError::Shape(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            a.rows()
        )));
    }
    // Rows of Aᵀ span the column lattice of A: U·Aᵀ = H.
    let form = hnf(&a.transpose())?;
    let mut rest = b.to_vec();
    let mut coeffs = vec![0i64; a.cols()];
    for (r, &c) in form.pivots.iter().enumerate() {
        if rest[..c].iter().any(|&x| x != 0) {
            return Ok(None);
        }
        let pivot = form.h.get(r, c);
        if rest[c] % pivot != 0 {
            return Ok(None);
        }
        let k = rest[c] / pivot;
        coeffs[r] = k;
        for (j, x) in rest.iter_mut().enumerate().skip(c) {
            *x = matrix::sub_mul(*x, k, form.h.get(r, j))?;
        }
    }
    if rest.iter().any(|&x| x != 0) {
        return Ok(None);
    }
    // bᵀ = cᵀ·U·Aᵀ, so x = Uᵀ·c.
    Ok(Some(form.u.transpose().mul_vec(&coeffs)?))
}

pub fn in_column_span(a: &IntMatrix, b: &[i64]) -> Result<bool, AbelianError> {
    Ok(solve_in_column_span(a, b)?.is_some())
}

/// Basis of `{x ∈ ℤⁿ : A·x = 0}` as the columns of the returned matrix.
/// The basis is saturated: it spans the full integer kernel.
pub fn integer_kernel(a: &IntMatrix) -> Result<IntMatrix, AbelianError> {
    let form = hnf(&a.transpose())?;
    let rank = form.rank();
    let kernel_rows: Vec<Vec<i64>> = (rank..a.cols()).map(|i| form.u.row(i).to_vec()).collect();
    Ok(IntMatrix::from_columns(a.cols(), &kernel_rows))
}

/// A ℤ-basis (as columns, full column rank) of the column lattice of `A`.
pub fn column_basis(a: &IntMatrix) -> Result<IntMatrix, AbelianError> {
    let form = hnf(&a.transpose())?;
    let rows: Vec<Vec<i64>> = (0..form.rank()).map(|i| form.h.row(i).to_vec()).collect();
    Ok(IntMatrix::from_columns(a.rows(), &rows))
}
