//! Bit-packed linear algebra over GF(2).
//!
//! Coordinate `k` (1-based) of a vector lives at bit position `k - 1`, that is
//! bit `(k - 1) % 64` of word `(k - 1) / 64`. Every API in this crate takes
//! 0-based positions; the 1-based convention only shows up in text formats.
//!
//! Elimination always pivots on the leftmost remaining column and takes the
//! first available row holding it, so `solve` is deterministic. All
//! operations work on copies.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

#[inline]
fn tail_mask(bits: usize) -> u64 {
    match bits % WORD {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

/// A packed vector of `F^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// The weight-one vector with a one at `position`.
    pub fn unit(len: usize, position: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(position, true);
        v
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self {
            len,
            words: vec![u64::MAX; words_for(len)],
        };
        v.clear_tail();
        v
    }

    /// Builds a vector of length `len <= 64` from the low bits of `value`.
    pub fn from_u64(len: usize, value: u64) -> Self {
        assert!(len <= WORD, "from_u64 supports at most 64 coordinates");
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = value;
            v.clear_tail();
        }
        v
    }

    /// Low 64 coordinates packed into a word.
    pub fn to_u64(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    pub(crate) fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        let mut v = Self { len, words };
        v.clear_tail();
        v
    }

    fn clear_tail(&mut self) {
        if let Some(last) = self.words.last_mut() {
            *last &= tail_mask(self.len);
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, position: usize) -> bool {
        assert!(position < self.len, "position {position} out of range for length {}", self.len);
        (self.words[position / WORD] >> (position % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, position: usize, value: bool) {
        assert!(position < self.len, "position {position} out of range for length {}", self.len);
        let mask = 1u64 << (position % WORD);
        if value {
            self.words[position / WORD] |= mask;
        } else {
            self.words[position / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, position: usize) {
        assert!(position < self.len, "position {position} out of range for length {}", self.len);
        self.words[position / WORD] ^= 1u64 << (position % WORD);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Positions of the set coordinates, ascending.
    pub fn ones_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + bit)
            })
        })
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot product");
        dot_words(&self.words, &other.words)
    }

    /// Appends `tail` after the last coordinate.
    pub fn concat(&self, tail: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len + tail.len);
        for p in self.ones_positions() {
            out.set(p, true);
        }
        for p in tail.ones_positions() {
            out.set(self.len + p, true);
        }
        out
    }

    /// Copy of coordinates `start..start + len`.
    pub fn slice(&self, start: usize, len: usize) -> BitVector {
        assert!(start + len <= self.len, "slice out of range");
        let mut out = BitVector::zeros(len);
        for p in self.ones_positions().filter(|&p| p >= start && p < start + len) {
            out.set(p - start, true);
        }
        out
    }

    /// Deletes the coordinate at `position`.
    pub fn remove(&self, position: usize) -> BitVector {
        assert!(position < self.len, "position out of range");
        let mut out = BitVector::zeros(self.len - 1);
        for p in self.ones_positions() {
            match p.cmp(&position) {
                std::cmp::Ordering::Less => out.set(p, true),
                std::cmp::Ordering::Greater => out.set(p - 1, true),
                std::cmp::Ordering::Equal => {}
            }
        }
        out
    }

    /// Sends coordinate `k` to coordinate `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> BitVector {
        assert_eq!(perm.len(), self.len, "permutation length mismatch");
        let mut out = BitVector::zeros(self.len);
        for p in self.ones_positions() {
            out.set(perm[p], true);
        }
        out
    }
}

#[inline]
fn dot_words(a: &[u64], b: &[u64]) -> bool {
    a.iter()
        .zip(b)
        .fold(0u32, |acc, (x, y)| acc ^ (x & y).count_ones())
        & 1
        == 1
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.len {
            f.write_str(if self.get(k) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut v = BitVector::zeros(s.len());
        for (k, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(k, true),
                other => {
                    return Err(Error::Parse(format!(
                        "invalid character {other:?} at column {} of bit string",
                        k + 1
                    )))
                }
            }
        }
        Ok(v)
    }
}

/// A dense matrix over GF(2), rows packed the same way as [`BitVector`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.set(k, k, true);
        }
        m
    }

    /// Stacks `rows`, each of which must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[BitVector]) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            m.row_words_mut(r).copy_from_slice(row.words());
        }
        Ok(m)
    }

    /// Parses one '0'/'1' string per row.
    pub fn from_strings(rows: &[&str]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let parsed = rows
            .iter()
            .map(|r| r.parse::<BitVector>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(cols, &parsed)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub(crate) fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVector {
        assert!(r < self.rows, "row {r} out of range");
        BitVector::from_words(self.cols, self.row_words(r).to_vec())
    }

    pub fn row_vectors(&self) -> Vec<BitVector> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "entry ({r}, {c}) out of range");
        (self.data[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "entry ({r}, {c}) out of range");
        let mask = 1u64 << (c % WORD);
        let w = &mut self.data[r * self.stride + c / WORD];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn push_row(&mut self, row: &BitVector) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: row.len(),
            });
        }
        self.data.extend_from_slice(row.words());
        self.rows += 1;
        Ok(())
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        data.extend_from_slice(&self.data);
        data.extend_from_slice(&other.data);
        Ok(BitMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            stride: self.stride,
            data,
        })
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row(r).ones_positions() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// `M·x`, a vector of length `rows`.
    pub fn mul_vec(&self, x: &BitVector) -> Result<BitVector> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        let mut out = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            if dot_words(self.row_words(r), x.words()) {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// Column `c` packed as an integer, bit `r` holding row `r`. Needs `rows <= 64`.
    pub fn column_u64(&self, c: usize) -> u64 {
        assert!(self.rows <= WORD, "column_u64 needs at most 64 rows");
        (0..self.rows).fold(0u64, |acc, r| acc | (u64::from(self.get(r, c)) << r))
    }

    /// All columns packed as integers. Needs `rows <= 64`.
    pub fn columns_u64(&self) -> Vec<u64> {
        assert!(self.rows <= WORD, "columns_u64 needs at most 64 rows");
        let mut cols = vec![0u64; self.cols];
        for r in 0..self.rows {
            for c in self.row(r).ones_positions() {
                cols[c] |= 1u64 << r;
            }
        }
        cols
    }

    /// Moves column `k` to column `perm[k]`.
    pub fn permute_columns(&self, perm: &[usize]) -> BitMatrix {
        assert_eq!(perm.len(), self.cols, "permutation length mismatch");
        let mut out = BitMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in self.row(r).ones_positions() {
                out.set(r, perm[c], true);
            }
        }
        out
    }

    /// Deletes column `c`.
    pub fn remove_column(&self, c: usize) -> BitMatrix {
        assert!(c < self.cols, "column out of range");
        let rows: Vec<_> = (0..self.rows).map(|r| self.row(r).remove(c)).collect();
        BitMatrix::from_rows(self.cols - 1, &rows).expect("rows share a length")
    }

    /// Appends `extra` as a new last column.
    pub fn append_column(&self, extra: &BitVector) -> Result<BitMatrix> {
        if extra.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: extra.len(),
            });
        }
        let mut out = BitMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            let words = self.row_words(r).to_vec();
            out.row_words_mut(r)[..words.len()].copy_from_slice(&words);
            if extra.get(r) {
                out.set(r, self.cols, true);
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        Echelon::new(self.clone(), false).pivots.len()
    }

    /// Some `x` with `M·x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &BitVector) -> Result<Option<BitVector>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let ech = Echelon::new(self.append_column(b)?, true);
        let mut x = BitVector::zeros(self.cols);
        for (r, &c) in ech.pivots.iter().enumerate() {
            if c == self.cols {
                return Ok(None);
            }
            if ech.matrix.get(r, self.cols) {
                x.set(c, true);
            }
        }
        Ok(Some(x))
    }

    /// Rank of `M` and whether `M·x = b` is solvable, from one forward pass.
    pub fn rank_with_rhs(&self, b: &BitVector) -> Result<(usize, bool)> {
        let ech = Echelon::new(self.append_column(b)?, false);
        let inconsistent = ech.pivots.last() == Some(&self.cols);
        let rank = ech.pivots.len() - usize::from(inconsistent);
        Ok((rank, !inconsistent))
    }

    /// A basis of `{x : M·x = 0}`, one row per free column.
    pub fn kernel_basis(&self) -> BitMatrix {
        let ech = Echelon::new(self.clone(), true);
        let mut is_pivot = vec![false; self.cols];
        for &c in &ech.pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = BitMatrix::zeros(free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            basis.set(k, f, true);
            for (r, &c) in ech.pivots.iter().enumerate() {
                if ech.matrix.get(r, f) {
                    basis.set(k, c, true);
                }
            }
        }
        basis
    }

    /// Reduced row echelon form with zero rows dropped, plus the pivot columns.
    /// Equal row spaces give identical results.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let ech = Echelon::new(self.clone(), true);
        let rank = ech.pivots.len();
        let mut m = ech.matrix;
        m.rows = rank;
        m.data.truncate(rank * m.stride);
        (m, ech.pivots)
    }
}

/// Gaussian elimination state. Rows `0..pivots.len()` hold the pivot rows in
/// order; the rest are zero.
struct Echelon {
    matrix: BitMatrix,
    pivots: Vec<usize>,
}

impl Echelon {
    fn new(mut m: BitMatrix, reduce_above: bool) -> Self {
        let stride = m.stride;
        let mut pivots = Vec::new();
        let mut next_row = 0;
        let mut start_word = 0;
        while next_row < m.rows {
            // Leftmost column that is nonzero in some remaining row; the first
            // such row becomes the pivot row.
            let mut best: Option<(usize, usize)> = None;
            for r in next_row..m.rows {
                let row = &m.data[r * stride..(r + 1) * stride];
                let limit = best.map_or(stride, |(c, _)| c / WORD + 1);
                for (wi, &w) in row.iter().enumerate().take(limit).skip(start_word) {
                    if w != 0 {
                        let c = wi * WORD + w.trailing_zeros() as usize;
                        if best.is_none_or(|(bc, _)| c < bc) {
                            best = Some((c, r));
                        }
                        break;
                    }
                }
            }
            let Some((col, prow)) = best else { break };
            if prow != next_row {
                for w in 0..stride {
                    m.data.swap(prow * stride + w, next_row * stride + w);
                }
            }
            let wi = col / WORD;
            let mask = 1u64 << (col % WORD);
            let (head, tail) = m.data.split_at_mut((next_row + 1) * stride);
            let pivot = &head[next_row * stride..];
            for row in tail.chunks_exact_mut(stride) {
                if row[wi] & mask != 0 {
                    for w in wi..stride {
                        row[w] ^= pivot[w];
                    }
                }
            }
            if reduce_above {
                let (above, rest) = m.data.split_at_mut(next_row * stride);
                let pivot = &rest[..stride];
                for row in above.chunks_exact_mut(stride) {
                    if row[wi] & mask != 0 {
                        for w in wi..stride {
                            row[w] ^= pivot[w];
                        }
                    }
                }
            }
            pivots.push(col);
            next_row += 1;
            start_word = wi;
        }
        Echelon { matrix: m, pivots }
    }
}
