//! Bit-packed GF(2) linear algebra: sparse parity-check matrices, dense
//! Gaussian elimination for rank and nullspace, and the conjectured
//! dimension polynomials for the first two code families.

use crate::error::{Error, Result};
use crate::geometry::ConicFamily;

/// A packed bit vector with zeroed padding bits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    n_bits: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(n_bits: usize) -> Self {
        Self { n_bits, words: vec![0; n_bits.div_ceil(64)] }
    }

    pub fn from_support(n_bits: usize, support: &[usize]) -> Self {
        let mut v = Self::zeros(n_bits);
        for &i in support {
            v.set(i, true);
        }
        v
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.n_bits);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.n_bits);
        if value {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn xor_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.n_bits, other.n_bits);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.n_bits).filter(|&i| self.get(i)).collect()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

/// A sparse binary matrix stored as sorted row support lists. Rows are
/// parity checks and columns are code bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseBinaryMatrix {
    n_rows: usize,
    n_cols: usize,
    rows: Vec<Vec<usize>>,
}

impl SparseBinaryMatrix {
    /// Builds a matrix from row support lists, sorting and deduplicating
    /// each row. Fails if an entry is out of bounds.
    pub fn new(n_rows: usize, n_cols: usize, mut rows: Vec<Vec<usize>>) -> Result<Self> {
        assert_eq!(rows.len(), n_rows, "row count mismatch");
        for (r, row) in rows.iter_mut().enumerate() {
            row.sort_unstable();
            row.dedup();
            if let Some(&col) = row.last() {
                if col >= n_cols {
                    return Err(Error::EntryOutOfBounds { row: r, col, n_cols });
                }
            }
        }
        Ok(Self { n_rows, n_cols, rows })
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn row(&self, r: usize) -> &[usize] {
        &self.rows[r]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.rows.iter().map(|r| r.as_slice())
    }

    pub fn n_entries(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn row_weights(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.len()).collect()
    }

    pub fn col_weights(&self) -> Vec<usize> {
        let mut weights = vec![0usize; self.n_cols];
        for row in &self.rows {
            for &c in row {
                weights[c] += 1;
            }
        }
        weights
    }

    /// The syndrome H*x of a word, one parity bit per row.
    pub fn syndrome(&self, word: &BitVector) -> BitVector {
        debug_assert_eq!(word.n_bits(), self.n_cols);
        let mut s = BitVector::zeros(self.n_rows);
        for (r, row) in self.rows.iter().enumerate() {
            let parity = row.iter().filter(|&&c| word.get(c)).count() % 2;
            if parity == 1 {
                s.set(r, true);
            }
        }
        s
    }

    pub fn in_nullspace(&self, word: &BitVector) -> bool {
        self.syndrome(word).is_zero()
    }
}

/// A dense bit-packed matrix used for elimination.
#[derive(Debug, Clone)]
pub struct BitMatrix {
    n_rows: usize,
    n_cols: usize,
    words_per_row: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        let words_per_row = n_cols.div_ceil(64);
        Self { n_rows, n_cols, words_per_row, words: vec![0; n_rows * words_per_row] }
    }

    pub fn from_sparse(m: &SparseBinaryMatrix) -> Self {
        let mut dense = Self::zeros(m.n_rows(), m.n_cols());
        for (r, row) in m.rows().enumerate() {
            for &c in row {
                dense.set(r, c, true);
            }
        }
        dense
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.words[r * self.words_per_row + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        let w = r * self.words_per_row + c / 64;
        if value {
            self.words[w] |= 1 << (c % 64);
        } else {
            self.words[w] &= !(1 << (c % 64));
        }
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let wpr = self.words_per_row;
        let (lo, hi) = if src < dst {
            let (a, b) = self.words.split_at_mut(dst * wpr);
            (&a[src * wpr..src * wpr + wpr], &mut b[..wpr])
        } else {
            let (a, b) = self.words.split_at_mut(src * wpr);
            (&b[..wpr], &mut a[dst * wpr..dst * wpr + wpr])
        };
        for (d, s) in hi.iter_mut().zip(lo) {
            *d ^= s;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let wpr = self.words_per_row;
        for k in 0..wpr {
            self.words.swap(a * wpr + k, b * wpr + k);
        }
    }

    /// Row echelon form by Gaussian elimination with deterministic pivoting
    /// (first nonzero row in column order). Returns the pivot columns.
    pub fn echelonize(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..self.n_cols {
            if next_row == self.n_rows {
                break;
            }
            let Some(pivot) = (next_row..self.n_rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.swap_rows(pivot, next_row);
            for r in next_row + 1..self.n_rows {
                if self.get(r, col) {
                    self.xor_row_into(next_row, r);
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        pivots
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn reduce(&mut self) -> Vec<usize> {
        let pivots = self.echelonize();
        for (r, &col) in pivots.iter().enumerate().rev() {
            for above in 0..r {
                if self.get(above, col) {
                    self.xor_row_into(r, above);
                }
            }
        }
        pivots
    }
}

/// Rank over F_2 via dense bit-packed elimination.
pub fn rank_gf2(m: &SparseBinaryMatrix) -> usize {
    BitMatrix::from_sparse(m).echelonize().len()
}

/// Dimension of the code with parity-check matrix m.
pub fn code_dimension(m: &SparseBinaryMatrix) -> usize {
    m.n_cols() - rank_gf2(m)
}

/// A basis of the right nullspace {x : Mx = 0}, of size `code_dimension`.
pub fn nullspace_basis(m: &SparseBinaryMatrix) -> Vec<BitVector> {
    let mut dense = BitMatrix::from_sparse(m);
    let pivots = dense.reduce();
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::with_capacity(m.n_cols() - pivots.len());
    for free in (0..m.n_cols()).filter(|c| !pivot_set.contains(c)) {
        let mut v = BitVector::zeros(m.n_cols());
        v.set(free, true);
        for (r, &pc) in pivots.iter().enumerate() {
            if dense.get(r, free) {
                v.set(pc, true);
            }
        }
        debug_assert!(m.in_nullspace(&v));
        basis.push(v);
    }
    basis
}

/// The conjectured dimension polynomials for odd q:
/// dim C(1,q) = (q^3 - 2q^2 + 3q - 2)/2 and
/// dim C(2,q) = (q^3 - 5q^2 + 9q - 7)/2. No polynomial exists for the
/// elliptic family.
pub fn conjectured_dimension(family: ConicFamily, q: u32) -> Result<u64> {
    if q % 2 == 0 {
        return Err(Error::OddQRequired);
    }
    let q = q as i64;
    let num = match family {
        ConicFamily::Parabolic => q.pow(3) - 2 * q.pow(2) + 3 * q - 2,
        ConicFamily::Hyperbolic => q.pow(3) - 5 * q.pow(2) + 9 * q - 7,
        ConicFamily::Elliptic => return Err(Error::UnsupportedFamily),
    };
    debug_assert_eq!(num % 2, 0);
    Ok((num / 2) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn identity(n: usize) -> SparseBinaryMatrix {
        SparseBinaryMatrix::new(n, n, (0..n).map(|i| vec![i]).collect()).unwrap()
    }

    #[test]
    fn rank_of_identity_and_zero() {
        assert_eq!(rank_gf2(&identity(4)), 4);
        let zero = SparseBinaryMatrix::new(3, 5, vec![vec![]; 3]).unwrap();
        assert_eq!(rank_gf2(&zero), 0);
        assert_eq!(code_dimension(&zero), 5);
    }

    #[test]
    fn entries_out_of_bounds_are_rejected() {
        let err = SparseBinaryMatrix::new(1, 3, vec![vec![0, 3]]).unwrap_err();
        assert_eq!(err, Error::EntryOutOfBounds { row: 0, col: 3, n_cols: 3 });
    }

    #[test]
    fn rows_are_sorted_and_deduplicated() {
        let m = SparseBinaryMatrix::new(1, 5, vec![vec![4, 1, 4, 0]]).unwrap();
        assert_eq!(m.row(0), &[0, 1, 4]);
        assert_eq!(m.n_entries(), 3);
    }

    #[test]
    fn nullspace_of_identity_is_empty() {
        assert!(nullspace_basis(&identity(3)).is_empty());
    }

    #[test]
    fn nullspace_of_single_parity_row() {
        let m = SparseBinaryMatrix::new(1, 2, vec![vec![0, 1]]).unwrap();
        let basis = nullspace_basis(&m);
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].support(), vec![0, 1]);
    }

    #[test]
    fn nullspace_vectors_satisfy_all_checks() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let n_rows = rng.random_range(1..12);
            let n_cols = rng.random_range(1..16);
            let rows: Vec<Vec<usize>> = (0..n_rows)
                .map(|_| (0..n_cols).filter(|_| rng.random_bool(0.4)).collect())
                .collect();
            let m = SparseBinaryMatrix::new(n_rows, n_cols, rows).unwrap();
            let basis = nullspace_basis(&m);
            assert_eq!(basis.len(), code_dimension(&m));
            for v in &basis {
                assert!(m.in_nullspace(v));
            }
        }
    }

    #[test]
    fn rank_is_invariant_under_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..25 {
            let n_rows = rng.random_range(2..14);
            let n_cols = rng.random_range(2..14);
            let rows: Vec<Vec<usize>> = (0..n_rows)
                .map(|_| (0..n_cols).filter(|_| rng.random_bool(0.5)).collect())
                .collect();
            let m = SparseBinaryMatrix::new(n_rows, n_cols, rows.clone()).unwrap();

            let mut row_perm: Vec<usize> = (0..n_rows).collect();
            row_perm.shuffle(&mut rng);
            let mut col_perm: Vec<usize> = (0..n_cols).collect();
            col_perm.shuffle(&mut rng);
            let permuted_rows: Vec<Vec<usize>> = row_perm
                .iter()
                .map(|&r| rows[r].iter().map(|&c| col_perm[c]).collect())
                .collect();
            let permuted = SparseBinaryMatrix::new(n_rows, n_cols, permuted_rows).unwrap();
            assert_eq!(rank_gf2(&m), rank_gf2(&permuted));
        }
    }

    #[test]
    fn bitvector_basics() {
        let mut v = BitVector::zeros(70);
        v.set(0, true);
        v.set(69, true);
        assert_eq!(v.weight(), 2);
        assert_eq!(v.support(), vec![0, 69]);
        let w = BitVector::from_support(70, &[0, 5]);
        v.xor_assign(&w);
        assert_eq!(v.support(), vec![5, 69]);
        assert!(!v.is_zero());
    }

    #[test]
    fn conjectured_dimensions() {
        assert_eq!(conjectured_dimension(ConicFamily::Parabolic, 7).unwrap(), 132);
        assert_eq!(conjectured_dimension(ConicFamily::Hyperbolic, 5).unwrap(), 19);
        assert_eq!(conjectured_dimension(ConicFamily::Parabolic, 13).unwrap(), 948);
        assert_eq!(
            conjectured_dimension(ConicFamily::Parabolic, 4).unwrap_err(),
            Error::OddQRequired
        );
        assert_eq!(
            conjectured_dimension(ConicFamily::Elliptic, 5).unwrap_err(),
            Error::UnsupportedFamily
        );
    }
}
