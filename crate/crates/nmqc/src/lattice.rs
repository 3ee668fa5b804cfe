//! Integer linear algebra over arbitrary-precision integers: Hermite-form
//! row reduction with unimodular tracking, left-kernel lattice bases, and
//! exact integer / rational linear solves.
//!
//! This is the engine behind the feasibility decision: solvability of
//! `A u = b + 2 t` with rational `u` and integer `t` reduces to parity and
//! lattice-membership tests on the left kernel of `A`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// Row Hermite reduction: returns `(h, u, rank)` with `u * m = h`, `u`
/// unimodular and `h` in row echelon form with positive pivots.
pub fn row_hermite(m: &IntMatrix) -> (IntMatrix, IntMatrix, usize) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut h = m.clone();
    let mut u: IntMatrix = (0..rows)
        .map(|i| (0..rows).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // gcd elimination below the pivot row
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                if !h[i][c].is_zero() {
                    let better = match best {
                        None => true,
                        Some(b) => h[i][c].abs() < h[b][c].abs(),
                    };
                    if better {
                        best = Some(i);
                    }
                }
            }
            let p = match best {
                None => break,
                Some(p) => p,
            };
            h.swap(r, p);
            u.swap(r, p);
            if h[r][c].is_negative() {
                for v in h[r].iter_mut() {
                    *v = -&*v;
                }
                for v in u[r].iter_mut() {
                    *v = -&*v;
                }
            }
            let mut done = true;
            let pivot = h[r][c].clone();
            for i in (r + 1)..rows {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&pivot);
                if !q.is_zero() {
                    for k in 0..cols {
                        let s = &q * &h[r][k];
                        h[i][k] -= s;
                    }
                    for k in 0..rows {
                        let s = &q * &u[r][k];
                        u[i][k] -= s;
                    }
                }
                if !h[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[r][c].is_zero() {
            continue;
        }
        // reduce entries above the pivot into [0, pivot)
        let pivot = h[r][c].clone();
        for i in 0..r {
            let q = h[i][c].div_floor(&pivot);
            if !q.is_zero() {
                for k in 0..cols {
                    let s = &q * &h[r][k];
                    h[i][k] -= s;
                }
                for k in 0..rows {
                    let s = &q * &u[r][k];
                    u[i][k] -= s;
                }
            }
        }
        r += 1;
    }
    (h, u, r)
}

/// Integer basis of the left-kernel lattice `{ r : r A = 0 }`.
///
/// The rows of the returned matrix generate the full lattice, not merely a
/// finite-index sublattice, because the transform is unimodular.
pub fn left_kernel_basis(a: &IntMatrix) -> IntMatrix {
    let rows = a.len();
    if rows == 0 {
        return Vec::new();
    }
    let (h, u, rank) = row_hermite(a);
    debug_assert!(h.iter().skip(rank).all(|row| row.iter().all(Zero::is_zero)));
    u.into_iter().skip(rank).collect()
}

/// Solve `sum_j z_j rows[j] = y` over the integers, i.e. membership of `y`
/// in the lattice generated by the rows. Returns the coefficient vector.
pub fn solve_row_lattice(rows: &IntMatrix, y: &[BigInt]) -> Option<Vec<BigInt>> {
    let k = rows.len();
    if k == 0 {
        return if y.iter().all(Zero::is_zero) { Some(Vec::new()) } else { None };
    }
    let cols = rows[0].len();
    debug_assert_eq!(y.len(), cols);
    let (h, u, rank) = row_hermite(rows);
    // forward substitution against echelon rows of h: v * h = residual-free
    let mut residual: Vec<BigInt> = y.to_vec();
    let mut v = vec![BigInt::zero(); k];
    for i in 0..rank {
        let p = h[i].iter().position(|e| !e.is_zero()).expect("nonzero row within rank");
        let (q, rem) = residual[p].div_rem(&h[i][p]);
        if !rem.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for c in 0..cols {
                let s = &q * &h[i][c];
                residual[c] -= s;
            }
        }
        v[i] = q;
    }
    if residual.iter().any(|e| !e.is_zero()) {
        return None;
    }
    // z = v * u
    let mut z = vec![BigInt::zero(); k];
    for i in 0..rank {
        if v[i].is_zero() {
            continue;
        }
        for j in 0..k {
            let s = &v[i] * &u[i][j];
            z[j] += s;
        }
    }
    Some(z)
}

/// Solve `A u = b` over the rationals by Gaussian elimination. Returns one
/// particular solution, or `None` when the system is inconsistent.
pub fn solve_rational(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            row.iter()
                .map(|e| BigRational::from_integer(e.clone()))
                .chain(std::iter::once(BigRational::from_integer(rhs.clone())))
                .collect()
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let p = match (r..rows).find(|&i| !m[i][c].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for k in c..=cols {
            m[r][k] = &m[r][k] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for k in c..=cols {
                    let s = &factor * &m[r][k];
                    m[i][k] -= s;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    // inconsistent if a zero row has a nonzero rhs
    for row in m.iter().skip(r) {
        if !row[cols].is_zero() {
            return None;
        }
    }
    let mut u = vec![BigRational::zero(); cols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        u[c] = m[i][cols].clone();
    }
    Some(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    fn iv(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hermite_transform_identity() {
        let m = im(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let (h, u, rank) = row_hermite(&m);
        assert_eq!(rank, 3);
        // u * m == h
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = BigInt::zero();
                for k in 0..3 {
                    acc += &u[i][k] * &m[k][j];
                }
                assert_eq!(acc, h[i][j]);
            }
        }
        // echelon with positive pivots
        assert!(h[0][0] > BigInt::zero());
    }

    #[test]
    fn left_kernel_of_binary_matrix() {
        // A for the AND game with two sites: rows indexed by x, cols by site
        let a = im(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]);
        let kern = left_kernel_basis(&a);
        assert_eq!(kern.len(), 2);
        for r in &kern {
            for j in 0..2 {
                let mut acc = BigInt::zero();
                for i in 0..4 {
                    acc += &r[i] * &a[i][j];
                }
                assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn row_lattice_membership() {
        let rows = im(&[&[2, 0], &[0, 3]]);
        assert!(solve_row_lattice(&rows, &iv(&[4, -3])).is_some());
        assert!(solve_row_lattice(&rows, &iv(&[1, 0])).is_none());
        let z = solve_row_lattice(&rows, &iv(&[6, 9])).unwrap();
        assert_eq!(z, iv(&[3, 3]));
    }

    #[test]
    fn rational_solve() {
        let a = im(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]);
        let b = iv(&[0, 0, 1]);
        let u = solve_rational(&a, &b).unwrap();
        for (row, rhs) in a.iter().zip(&b) {
            let mut acc = BigRational::zero();
            for (e, x) in row.iter().zip(&u) {
                acc += BigRational::from_integer(e.clone()) * x;
            }
            assert_eq!(acc, BigRational::from_integer(rhs.clone()));
        }
        let bad = im(&[&[1, 0], &[1, 0]]);
        assert!(solve_rational(&bad, &iv(&[0, 1])).is_none());
    }
}
