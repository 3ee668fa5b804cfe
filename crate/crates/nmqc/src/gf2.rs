//! Dense GF(2) matrices with rows stored as bit masks.

use crate::bitstring::BitString;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>, // one mask per row, bit k = column k
}

impl Gf2Matrix {
    pub fn new(rows: Vec<Vec<u8>>, cols: usize) -> Result<Self> {
        if cols == 0 || cols > 63 {
            return Err(Error::InvalidArgument(format!("column count {cols} out of supported range 1..=63")));
        }
        let mut data = Vec::with_capacity(rows.len());
        for r in &rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row has {} entries, expected {cols}",
                    r.len()
                )));
            }
            let mut mask = 0u64;
            for (k, &b) in r.iter().enumerate() {
                if b > 1 {
                    return Err(Error::InvalidArgument("matrix entries must be 0 or 1".into()));
                }
                mask |= (b as u64) << k;
            }
            data.push(mask);
        }
        Ok(Gf2Matrix { rows: rows.len(), cols, data })
    }

    pub fn from_row_masks(data: Vec<u64>, cols: usize) -> Self {
        debug_assert!(cols >= 1 && cols <= 63);
        debug_assert!(data.iter().all(|&m| m < (1u64 << cols)));
        Gf2Matrix { rows: data.len(), cols, data }
    }

    pub fn identity(n: usize) -> Self {
        Gf2Matrix { rows: n, cols: n, data: (0..n).map(|i| 1u64 << i).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_mask(&self, i: usize) -> u64 {
        self.data[i]
    }

    pub fn row_masks(&self) -> &[u64] {
        &self.data
    }

    pub fn row_bits(&self, i: usize) -> Vec<u8> {
        (0..self.cols).map(|k| ((self.data[i] >> k) & 1) as u8).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && self.data.iter().enumerate().all(|(i, &m)| m == 1u64 << i)
    }

    /// `s = (P x) mod 2`, one output bit per row.
    pub fn mul_vec(&self, x: &BitString) -> Result<BitString> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector length {} does not match {} columns",
                x.len(),
                self.cols
            )));
        }
        let xm = x.index() as u64;
        let bits = self.data.iter().map(|&r| ((r & xm).count_ones() & 1) as u8).collect();
        BitString::new(bits)
    }

    /// Row image under the input mask, as a bit mask (row j of the result
    /// is bit j).
    pub fn mul_mask(&self, xm: u64) -> u64 {
        let mut out = 0u64;
        for (j, &r) in self.data.iter().enumerate() {
            out |= (((r & xm).count_ones() & 1) as u64) << j;
        }
        out
    }

    /// `self * other` over GF(2).
    pub fn matmul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .map(|&r| {
                let mut acc = 0u64;
                let mut rem = r;
                while rem != 0 {
                    let j = rem.trailing_zeros() as usize;
                    acc ^= other.data[j];
                    rem &= rem - 1;
                }
                acc
            })
            .collect();
        Ok(Gf2Matrix { rows: self.rows, cols: other.cols, data })
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.data.clone();
        let mut rank = 0usize;
        for col in 0..self.cols {
            let bit = 1u64 << col;
            if let Some(p) = (rank..rows.len()).find(|&i| rows[i] & bit != 0) {
                rows.swap(rank, p);
                let pivot = rows[rank];
                for (i, r) in rows.iter_mut().enumerate() {
                    if i != rank && *r & bit != 0 {
                        *r ^= pivot;
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<Gf2Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut inv: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        let mut rank = 0usize;
        for col in 0..n {
            let bit = 1u64 << col;
            let p = match (rank..n).find(|&i| a[i] & bit != 0) {
                Some(p) => p,
                None => return Err(Error::InvalidArgument("matrix is singular".into())),
            };
            a.swap(rank, p);
            inv.swap(rank, p);
            let (pa, pi) = (a[rank], inv[rank]);
            for i in 0..n {
                if i != rank && a[i] & bit != 0 {
                    a[i] ^= pa;
                    inv[i] ^= pi;
                }
            }
            rank += 1;
        }
        Ok(Gf2Matrix { rows: n, cols: n, data: inv })
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let data = (0..self.cols)
            .map(|k| {
                let mut mask = 0u64;
                for (i, &r) in self.data.iter().enumerate() {
                    mask |= ((r >> k) & 1) << i;
                }
                mask
            })
            .collect();
        Gf2Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn has_all_ones_row(&self) -> bool {
        let full = (1u64 << self.cols) - 1;
        self.data.iter().any(|&r| r == full)
    }

    pub fn has_zero_row(&self) -> bool {
        self.data.iter().any(|&r| r == 0)
    }
}

/// Complete the nonzero vector `v` (bit mask, `n` coordinates) to a basis of
/// GF(2)^n; returns the basis as an n x n invertible matrix whose first row
/// is `v`.
pub fn complete_to_basis(v: u64, n: usize) -> Gf2Matrix {
    debug_assert!(v != 0 && v < (1u64 << n));
    let mut basis = vec![v];
    let mut echelon = vec![v];
    for i in 0..n {
        if basis.len() == n {
            break;
        }
        let cand = 1u64 << i;
        let mut red = cand;
        for &e in &echelon {
            let lead = 63 - e.leading_zeros();
            if red & (1u64 << lead) != 0 {
                red ^= e;
            }
        }
        if red != 0 {
            basis.push(cand);
            // keep the echelon reduced by leading bit
            echelon.push(red);
            echelon.sort_by_key(|e| std::cmp::Reverse(63 - e.leading_zeros()));
        }
    }
    Gf2Matrix::from_row_masks(basis, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_vec_examples() {
        let p = Gf2Matrix::new(vec![vec![1, 0], vec![0, 1], vec![1, 1]], 2).unwrap();
        let x = BitString::new(vec![1, 1]).unwrap();
        assert_eq!(p.mul_vec(&x).unwrap(), BitString::new(vec![1, 1, 0]).unwrap());
        let x = BitString::new(vec![1, 0]).unwrap();
        assert_eq!(p.mul_vec(&x).unwrap(), BitString::new(vec![1, 0, 1]).unwrap());
        let x = BitString::new(vec![0, 0]).unwrap();
        assert_eq!(p.mul_vec(&x).unwrap(), BitString::new(vec![0, 0, 0]).unwrap());
    }

    #[test]
    fn rank_and_inverse() {
        let m = Gf2Matrix::new(vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 0]], 3).unwrap();
        assert!(m.is_invertible());
        let inv = m.inverse().unwrap();
        assert!(m.matmul(&inv).unwrap().is_identity());
        let singular = Gf2Matrix::new(vec![vec![1, 1], vec![1, 1]], 2).unwrap();
        assert!(!singular.is_invertible());
        assert_eq!(singular.rank(), 1);
    }

    #[test]
    fn basis_completion_is_invertible() {
        for n in 1..=6usize {
            for v in 1u64..(1 << n) {
                let b = complete_to_basis(v, n);
                assert_eq!(b.row_mask(0), v);
                assert!(b.is_invertible(), "v={v:#b} n={n}");
            }
        }
    }
}
