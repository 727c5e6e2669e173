//! Bit vectors and mod-2 matrices backing the symplectic representation.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// A fixed-length bit vector packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Parses a string of `0`/`1` characters.
    pub fn from_str01(s: &str) -> Option<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return None,
            }
        }
        Some(BitVec::from_bools(&bits))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Mod-2 inner product.
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Appends one bit, growing the vector.
    pub fn push(&mut self, value: bool) {
        if self.len % 64 == 0 {
            self.words.push(0);
        }
        self.len += 1;
        self.set(self.len - 1, value);
    }

    /// Removes position `i`, shifting subsequent bits down.
    pub fn remove(&mut self, i: usize) -> bool {
        let out = self.get(i);
        for j in i..self.len - 1 {
            let b = self.get(j + 1);
            self.set(j, b);
        }
        self.len -= 1;
        self.words.truncate(self.len.div_ceil(64));
        if self.len % 64 != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << (self.len % 64)) - 1;
            }
        }
        out
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A dense mod-2 matrix stored as rows of [`BitVec`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    pub rows: Vec<BitVec>,
    cols: usize,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows: vec![BitVec::zeros(cols); rows],
            cols,
        }
    }

    pub fn from_rows(rows: Vec<BitVec>) -> Self {
        let cols = rows.first().map_or(0, BitVec::len);
        assert!(rows.iter().all(|r| r.len() == cols));
        BitMatrix { rows, cols }
    }

    /// Builds a matrix from string rows of `0`/`1` characters.
    pub fn from_str_rows(rows: &[&str]) -> Self {
        BitMatrix::from_rows(
            rows.iter()
                .map(|r| BitVec::from_str01(r).expect("row must be 0/1"))
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.rows[i].set(i, true);
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix-vector product mod 2.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            out.set(r, row.dot(v));
        }
        out
    }

    /// Matrix product mod 2.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        let ot = other.transpose();
        let mut out = BitMatrix::zeros(self.rows.len(), other.cols);
        for (r, row) in self.rows.iter().enumerate() {
            for (c, col) in ot.rows.iter().enumerate() {
                out.set(r, c, row.dot(col));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.clone().row_reduce().0
    }

    /// In-place Gaussian elimination to reduced row-echelon form.
    ///
    /// Returns the rank and the pivot column of each of the first `rank`
    /// rows.
    pub fn row_reduce(&mut self) -> (usize, Vec<usize>) {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows.len() {
                break;
            }
            if let Some(p) = (r..self.rows.len()).find(|&i| self.get(i, c)) {
                self.rows.swap(r, p);
                let pivot_row = self.rows[r].clone();
                for (i, row) in self.rows.iter_mut().enumerate() {
                    if i != r && row.get(c) {
                        row.xor_assign(&pivot_row);
                    }
                }
                pivots.push(c);
                r += 1;
            }
        }
        (r, pivots)
    }

    /// Rows spanning the null space (all `v` with `self · v = 0`).
    pub fn null_space(&self) -> Vec<BitVec> {
        let mut m = self.clone();
        let (rank, pivots) = m.row_reduce();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = BitVec::zeros(self.cols);
            v.set(f, true);
            for r in 0..rank {
                if m.get(r, f) {
                    v.set(pivots[r], true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Serializes in the plain-text matrix format: one row per line of `0`/`1`
    /// characters.
    pub fn to_text(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        for row in &self.rows {
            let _ = writeln!(s, "{row}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_and_xor() {
        let a = BitVec::from_str01("1101").unwrap();
        let b = BitVec::from_str01("1011").unwrap();
        assert!(!a.dot(&b)); // overlap {0, 3}: even
        let mut c = a.clone();
        c.xor_assign(&b);
        assert_eq!(c, BitVec::from_str01("0110").unwrap());
        assert_eq!(c.count_ones(), 2);
    }

    #[test]
    fn long_vectors_cross_word_boundaries() {
        let mut v = BitVec::zeros(130);
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.count_ones(), 3);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 64, 129]);
    }

    #[test]
    fn row_reduce_rank() {
        let m = BitMatrix::from_str_rows(&["1010101", "0110011", "0001111"]);
        assert_eq!(m.rank(), 3);
        let mut dependent = m.clone();
        let extra = {
            let mut v = m.rows[0].clone();
            v.xor_assign(&m.rows[1]);
            v
        };
        dependent.rows.push(extra);
        assert_eq!(dependent.rank(), 3);
    }

    #[test]
    fn null_space_is_annihilated() {
        let m = BitMatrix::from_str_rows(&["1010101", "0110011", "0001111"]);
        let ns = m.null_space();
        assert_eq!(ns.len(), 4);
        for v in &ns {
            assert!(m.mul_vec(v).is_zero());
        }
    }
}
