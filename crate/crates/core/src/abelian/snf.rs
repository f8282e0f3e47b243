//! Smith normal form with explicit transforms.
//!
//! Every step is a multiplication by an explicit unimodular matrix whose
//! inverse is known, so `A = U·D·V` holds exactly and `U⁻¹`, `V⁻¹` are
//! tracked alongside.

use num_integer::Integer;

use super::hnf::hnf;
use super::matrix::{self, IntMatrix};
use super::AbelianError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|&&x| x != 0).count()
    }

    /// Diagonal of `D`, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<i64> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d.get(i, i)).collect()
    }

    /// Nonzero diagonal entries, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<i64> {
        self.diagonal().into_iter().filter(|&x| x != 0).collect()
    }
}

/// Running factorization `A = U·D·V`, with both inverses kept in step.
struct Workspace {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Workspace {
    /// `D ← L·D`, so `U ← U·L⁻¹`.
    fn left(&mut self, l: &IntMatrix, l_inv: &IntMatrix) -> Result<(), AbelianError> {
        self.d = l.mul(&self.d)?;
        self.u = self.u.mul(l_inv)?;
        self.u_inv = l.mul(&self.u_inv)?;
        Ok(())
    }

    /// `D ← D·R`, so `V ← R⁻¹·V`.
    fn right(&mut self, r: &IntMatrix, r_inv: &IntMatrix) -> Result<(), AbelianError> {
        self.d = self.d.mul(r)?;
        self.v = r_inv.mul(&self.v)?;
        self.v_inv = self.v_inv.mul(r)?;
        Ok(())
    }

    /// Replaces the diagonal pair `(a, b)` at `i < j` by `(gcd, lcm)`.
    fn gcd_lcm(&mut self, i: usize, j: usize) -> Result<(), AbelianError> {
        let (a, b) = (self.d.get(i, i), self.d.get(j, j));
        let e = a.extended_gcd(&b);
        let (g, x, y) = (e.gcd, e.x, e.y);
        let (a, b) = (a / g, b / g);
        let (m, n) = self.d.shape();
        // L = [[x, y], [−b, a]], R = [[1, −y·b], [1, x·a]] on the (i, j)
        // block, both of determinant x·a + y·b = 1.
        let mut l = IntMatrix::identity(m);
        let mut l_inv = IntMatrix::identity(m);
        l.set(i, i, x);
        l.set(i, j, y);
        l.set(j, i, -b);
        l.set(j, j, a);
        l_inv.set(i, i, a);
        l_inv.set(i, j, -y);
        l_inv.set(j, i, b);
        l_inv.set(j, j, x);
        let r01 = matrix::neg(matrix::mul(y, b)?)?;
        let r11 = matrix::mul(x, a)?;
        let mut r = IntMatrix::identity(n);
        let mut r_inv = IntMatrix::identity(n);
        r.set(i, j, r01);
        r.set(j, i, 1);
        r.set(j, j, r11);
        r_inv.set(i, i, r11);
        r_inv.set(i, j, matrix::neg(r01)?);
        r_inv.set(j, i, -1);
        self.left(&l, &l_inv)?;
        self.right(&r, &r_inv)
    }
}

/// Alternates row and column Hermite forms until `D` is diagonal. At least
/// one pass always runs, so the diagonal ends up nonnegative with its zeros
/// last.
fn diagonalize(w: &mut Workspace) -> Result<(), AbelianError> {
    let mut rows_next = true;
    loop {
        if rows_next {
            let f = hnf(&w.d)?;
            w.d = f.h;
            w.u = w.u.mul(&f.u_inv)?;
            w.u_inv = f.u.mul(&w.u_inv)?;
        } else {
            // U·Dᵀ = H gives D·Uᵀ = Hᵀ.
            let f = hnf(&w.d.transpose())?;
            w.right(&f.u.transpose(), &f.u_inv.transpose())?;
        }
        rows_next = !rows_next;
        if w.d.is_diagonal() {
            return Ok(());
        }
    }
}

/// Smith normal form `A = U·D·V`.
///
/// Alternates row and column Hermite forms until the matrix is diagonal,
/// then fixes divisibility pairwise with explicit `2×2` gcd/lcm transforms.
/// The Hermite steps reduce entries above their pivots, which keeps the
/// transforms far smaller than plain pivot-and-eliminate does.
pub fn snf(a: &IntMatrix) -> Result<Snf, AbelianError> {
    let (m, n) = a.shape();
    let mut w = Workspace {
        d: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };

    diagonalize(&mut w)?;
    let r = (0..m.min(n)).take_while(|&i| w.d.get(i, i) != 0).count();
    for i in 0..r {
        for j in i + 1..r {
            if w.d.get(j, j) % w.d.get(i, i) != 0 {
                w.gcd_lcm(i, j)?;
            }
        }
    }

    Ok(Snf {
        u: w.u,
        d: w.d,
        v: w.v,
        u_inv: w.u_inv,
        v_inv: w.v_inv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_factorization(a: &IntMatrix, s: &Snf) {
        assert_eq!(&s.u.mul(&s.d).unwrap().mul(&s.v).unwrap(), a);
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
        assert!(s.u.mul(&s.u_inv).unwrap().is_identity());
        assert!(s.v.mul(&s.v_inv).unwrap().is_identity());
        assert!(s.d.is_diagonal());
        let diag = s.diagonal();
        assert!(diag.iter().all(|&x| x >= 0));
        for w in diag.windows(2) {
            assert!(w[1] == 0 || (w[0] != 0 && w[1] % w[0] == 0), "{diag:?}");
        }
    }

    #[test]
    fn two_by_two_example() {
        let a = IntMatrix::from_rows(&[[2, 4], [6, 8]]);
        let s = snf(&a).unwrap();
        check_factorization(&a, &s);
        assert_eq!(s.d, IntMatrix::from_rows(&[[2, 0], [0, 4]]));
    }

    #[test]
    fn identity_is_fixed() {
        let a = IntMatrix::identity(3);
        let s = snf(&a).unwrap();
        assert_eq!(s.d, a);
        check_factorization(&a, &s);
    }

    #[test]
    fn zero_matrix() {
        let a = IntMatrix::zeros(2, 3);
        let s = snf(&a).unwrap();
        assert!(s.d.is_zero());
        assert_eq!(s.rank(), 0);
        check_factorization(&a, &s);
    }

    #[test]
    fn divisibility_fixup_needed() {
        // diag(2,3) is diagonal but not in Smith form; expect diag(1,6).
        let a = IntMatrix::from_rows(&[[2, 0], [0, 3]]);
        let s = snf(&a).unwrap();
        check_factorization(&a, &s);
        assert_eq!(s.diagonal(), vec![1, 6]);
    }

    #[test]
    fn rectangular_and_empty() {
        let a = IntMatrix::from_rows(&[[0, 4, 6, 0]]);
        let s = snf(&a).unwrap();
        check_factorization(&a, &s);
        assert_eq!(s.diagonal(), vec![2]);

        let e = IntMatrix::zeros(3, 0);
        let s = snf(&e).unwrap();
        assert_eq!(s.rank(), 0);
        assert_eq!(s.u.shape(), (3, 3));
    }

    #[test]
    fn diagonal_inputs_are_normalized() {
        for (a, want) in [
            (IntMatrix::from_rows(&[[0, 0], [0, 3]]), vec![3, 0]),
            (IntMatrix::from_rows(&[[-2, 0], [0, 4]]), vec![2, 4]),
            (IntMatrix::from_rows(&[[4, 0, 0], [0, 0, 0], [0, 0, -6]]), vec![2, 12, 0]),
        ] {
            let s = snf(&a).unwrap();
            check_factorization(&a, &s);
            assert_eq!(s.diagonal(), want);
        }
    }

    #[test]
    fn overflow_surfaces_as_error() {
        let m = i64::MAX;
        let a = IntMatrix::from_rows(&[[m, 1], [1, m]]);
        assert_eq!(snf(&a), Err(AbelianError::Overflow));
    }
}
