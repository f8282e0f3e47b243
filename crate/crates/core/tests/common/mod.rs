//! Oracles and generators shared by the integration tests. Nothing here calls
//! into the normal-form code it is used to check.

#![allow(dead_code)]

use kdecomp_core::cellular::ChainComplex;
use kdecomp_core::contracted::{Entry, RingTable};
use kdecomp_core::{FGAbelianGroup, IntMatrix};
use num_integer::Integer;
use rand::Rng;

pub fn gcd(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

/// Determinant by cofactor expansion. Only for small matrices.
pub fn det_cofactor(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        _ => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det_cofactor(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinantal divisors: `d_k` is the gcd of all
/// `k × k` minors and the `k`-th invariant factor is `d_k / d_{k−1}`.
pub fn invariant_factors_by_minors(a: &IntMatrix) -> Vec<i64> {
    let (m, n) = a.shape();
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=m.min(n) {
        let mut g = 0i128;
        for rows in subsets(m, k) {
            for cols in subsets(n, k) {
                let minor: Vec<Vec<i128>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| i128::from(a.get(i, j))).collect())
                    .collect();
                g = gcd(g, det_cofactor(&minor));
            }
        }
        if g == 0 {
            break;
        }
        out.push(i64::try_from(g / prev).unwrap());
        prev = g;
    }
    out
}

/// `(unimodular P, P⁻¹)` built from random elementary operations.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> (IntMatrix, IntMatrix) {
    let mut p = IntMatrix::identity(n);
    let mut p_inv = IntMatrix::identity(n);
    if n < 2 {
        if n == 1 && rng.gen_bool(0.5) {
            p = p.neg().unwrap();
            p_inv = p_inv.neg().unwrap();
        }
        return (p, p_inv);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let k = rng.gen_range(-2..=2i64);
        // E = I + k·e_ij, E⁻¹ = I − k·e_ij
        let mut e = IntMatrix::identity(n);
        e.set(i, j, k);
        let mut e_inv = IntMatrix::identity(n);
        e_inv.set(i, j, -k);
        p = e.mul(&p).unwrap();
        p_inv = p_inv.mul(&e_inv).unwrap();
    }
    (p, p_inv)
}

pub fn random_matrix<R: Rng>(rng: &mut R, max_dim: usize, bound: i64) -> IntMatrix {
    let rows = rng.gen_range(1..=max_dim);
    let cols = rng.gen_range(1..=max_dim);
    let data = (0..rows * cols).map(|_| rng.gen_range(-bound..=bound)).collect();
    IntMatrix::new(rows, cols, data).unwrap()
}

pub fn random_group<R: Rng>(rng: &mut R, max_rank: usize, max_order: u64) -> FGAbelianGroup {
    let rank = rng.gen_range(0..=max_rank);
    let orders: Vec<u64> = (0..rng.gen_range(0..=2))
        .map(|_| rng.gen_range(2..=max_order))
        .collect();
    FGAbelianGroup::from_cyclic_orders(rank, &orders)
}

/// A random free chain complex of length `len` together with its homology,
/// built as a sum of elementary pieces `ℤ` (free) and `ℤ −k→ ℤ` (torsion `ℤ/k`
/// or, for `k = ±1`, acyclic), scrambled by random changes of basis.
pub fn random_complex<R: Rng>(rng: &mut R, len: usize) -> (ChainComplex, Vec<FGAbelianGroup>) {
    let mut ranks = vec![0usize; len];
    let mut free = vec![0usize; len];
    let mut torsion: Vec<Vec<u64>> = vec![Vec::new(); len];
    // (degree of target, k)
    let mut pieces = Vec::new();
    for i in 0..len {
        let f = rng.gen_range(0..=1);
        free[i] += f;
        ranks[i] += f;
        if i + 1 < len {
            for _ in 0..rng.gen_range(0..=2) {
                let k: i64 = rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 };
                pieces.push((i, k));
                ranks[i] += 1;
                ranks[i + 1] += 1;
                if k.abs() > 1 {
                    torsion[i].push(k.unsigned_abs());
                }
            }
        }
    }
    let mut d: Vec<IntMatrix> = (1..len).map(|i| IntMatrix::zeros(ranks[i - 1], ranks[i])).collect();
    let mut next = free.clone();
    for (i, k) in pieces {
        let (r, c) = (next[i], next[i + 1]);
        d[i].set(r, c, k);
        next[i] += 1;
        next[i + 1] += 1;
    }
    let bases: Vec<(IntMatrix, IntMatrix)> = ranks.iter().map(|&r| random_unimodular(rng, r, 6)).collect();
    let boundaries: Vec<IntMatrix> = (1..len)
        .map(|i| bases[i - 1].0.mul(&d[i - 1]).unwrap().mul(&bases[i].1).unwrap())
        .collect();
    let homology = (0..len)
        .map(|i| FGAbelianGroup::from_cyclic_orders(free[i], &torsion[i]))
        .collect();
    (ChainComplex::new(ranks, boundaries).unwrap(), homology)
}

/// Concrete `K_q`, `NK_q`, `K_{q−1}` with random groups, symbols elsewhere.
pub fn random_concrete_table<R: Rng>(rng: &mut R, q: i64) -> RingTable {
    RingTable::new("random")
        .with_default(Entry::Symbol)
        .with_k(q, Entry::Concrete(random_group(rng, 2, 9)))
        .with_k(q - 1, Entry::Concrete(random_group(rng, 2, 9)))
        .with_nk(q, Entry::Concrete(random_group(rng, 2, 9)))
        .unwrap()
}

/// Mixes concrete groups, zeros and symbols over the degree window used by
/// `n ≤ 3` decompositions at `q`.
pub fn mixed_table<R: Rng>(rng: &mut R, q: i64) -> RingTable {
    let mut t = RingTable::new("mixed").with_default(Entry::Symbol);
    let pick = |rng: &mut R| match rng.gen_range(0..3) {
        0 => Entry::Zero,
        1 => Entry::Symbol,
        _ => Entry::Concrete(random_group(rng, 1, 6)),
    };
    for j in q - 4..=q {
        let e = pick(rng);
        t = t.with_k(j, e);
        let e = pick(rng);
        t = t.with_nk(j, e).unwrap();
    }
    t
}

/// All primitive vectors of `ℤⁿ` with max-norm at most `h`, up to sign, by
/// exhaustive scan of the box.
pub fn brute_force_subgroup_count(n: usize, h: i64) -> usize {
    let side = (2 * h + 1) as usize;
    let total = side.pow(n as u32);
    let mut count = 0;
    for idx in 0..total {
        let mut rest = idx;
        let v: Vec<i64> = (0..n)
            .map(|_| {
                let c = (rest % side) as i64 - h;
                rest /= side;
                c
            })
            .collect();
        let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
        if g == 1 {
            count += 1;
        }
    }
    count / 2
}
