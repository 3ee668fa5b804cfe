//! Bit strings under the crate-wide index convention.
//!
//! A string `x` of length `n` maps to the integer `sum_j x_j * 2^(j-1)`,
//! i.e. `x_1` is the least significant bit. Truth tables, priors and
//! functionals all share this order.

use crate::error::{Error, Result};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    bits: Vec<u8>,
}

impl BitString {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::InvalidArgument("bit string must be non-empty".into()));
        }
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidArgument("bit string elements must be 0 or 1".into()));
        }
        Ok(BitString { bits })
    }

    /// Build the string of length `n` whose global index is `idx`.
    pub fn from_index(idx: usize, n: usize) -> Self {
        debug_assert!(n >= 1 && idx < (1 << n));
        BitString { bits: (0..n).map(|j| ((idx >> j) & 1) as u8).collect() }
    }

    /// Global integer index: `x_1` least significant.
    pub fn index(&self) -> usize {
        self.bits.iter().enumerate().map(|(j, &b)| (b as usize) << j).sum()
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// 1-based bit access, matching the `x_j` notation.
    pub fn bit(&self, j: usize) -> u8 {
        self.bits[j - 1]
    }

    pub fn hamming_weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    /// Inner product mod 2.
    pub fn dot(&self, other: &BitString) -> Result<u8> {
        if self.len() != other.len() {
            return Err(Error::ArityMismatch { expected: self.len(), got: other.len() });
        }
        Ok(self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).fold(0, |acc, v| acc ^ v))
    }

    pub fn complement(&self) -> BitString {
        BitString { bits: self.bits.iter().map(|&b| 1 - b).collect() }
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        for n in 1..=4 {
            for idx in 0..(1usize << n) {
                let x = BitString::from_index(idx, n);
                assert_eq!(x.index(), idx);
                assert_eq!(x.len(), n);
            }
        }
    }

    #[test]
    fn x1_is_least_significant() {
        let x = BitString::new(vec![1, 0]).unwrap();
        assert_eq!(x.index(), 1);
        assert_eq!(x.bit(1), 1);
        assert_eq!(x.bit(2), 0);
    }

    #[test]
    fn dot_and_weight() {
        let a = BitString::new(vec![1, 1, 0]).unwrap();
        let b = BitString::new(vec![1, 1, 1]).unwrap();
        assert_eq!(a.dot(&b).unwrap(), 0);
        assert_eq!(a.hamming_weight(), 2);
        assert!(a.dot(&BitString::new(vec![1]).unwrap()).is_err());
    }
}
