//! Dense bit storage backing attributes and relations.

use alloc::vec;
use alloc::vec::Vec;

use smallvec::{smallvec, SmallVec};

type Words = SmallVec<[u64; 8]>;

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A fixed-length set of indices `0..len`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn empty(len: usize) -> Self {
        BitSet {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    /// Builds a set from the low `len` bits of `mask`. `len` must be at most 64.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        debug_assert!(len <= WORD);
        let mut s = Self::empty(len);
        if len > 0 {
            let keep = if len == WORD {
                u64::MAX
            } else {
                (1u64 << len) - 1
            };
            s.words[0] = mask & keep;
        }
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.len {
            self.words[i / WORD] &= !(1 << (i % WORD));
        }
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// Ascending iterator over members.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + b)
            })
        })
    }
}

impl core::fmt::Debug for BitSet {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A `rows x cols` boolean matrix, stored row-major with each row padded to
/// whole words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Words,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BitMatrix {
            rows,
            cols,
            stride,
            data: smallvec![0; rows * stride],
        }
    }

    /// Builds a matrix whose bit `r * cols + c` is taken from `mask`.
    /// Requires `rows * cols <= 64`.
    pub fn from_mask(rows: usize, cols: usize, mask: u64) -> Self {
        debug_assert!(rows * cols <= WORD);
        let mut m = Self::zeros(rows, cols);
        if cols == 0 {
            return m;
        }
        let row_mask = if cols == WORD {
            u64::MAX
        } else {
            (1u64 << cols) - 1
        };
        for r in 0..rows {
            m.data[r * m.stride] = (mask >> (r * cols)) & row_mask;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        r < self.rows
            && c < self.cols
            && self.data[r * self.stride + c / WORD] >> (c % WORD) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize) {
        assert!(
            r < self.rows && c < self.cols,
            "({r},{c}) outside {}x{}",
            self.rows,
            self.cols
        );
        self.data[r * self.stride + c / WORD] |= 1 << (c % WORD);
    }

    pub fn clear(&mut self, r: usize, c: usize) {
        if r < self.rows && c < self.cols {
            self.data[r * self.stride + c / WORD] &= !(1 << (c % WORD));
        }
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    /// Columns set in row `r`, ascending.
    pub fn row(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_words(r).iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + b)
            })
        })
    }

    pub fn row_count(&self, r: usize) -> usize {
        self.row_words(r)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn row_set(&self, r: usize) -> BitSet {
        BitSet {
            len: self.cols,
            words: self.row_words(r).to_vec(),
        }
    }

    pub fn count(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.data.iter().all(|w| *w == 0)
    }

    /// Set bits in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.rows).flat_map(move |r| self.row(r).map(move |c| (r, c)))
    }

    /// Relational product: `(r, c)` is set iff some `k` has `self[r][k]` and `other[k][c]`.
    pub fn compose(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in self.row(r) {
                let src = r * out.stride;
                let mid = k * other.stride;
                for w in 0..out.stride {
                    out.data[src + w] |= other.data[mid + w];
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.cols, self.rows);
        for (r, c) in self.iter() {
            out.set(c, r);
        }
        out
    }

    /// Kronecker product: row `r1 * other.rows + r2`, column `c1 * other.cols + c2`.
    pub fn kron(&self, other: &BitMatrix) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        if out.cols <= WORD && other.stride == 1 {
            for r1 in 0..self.rows {
                for c1 in self.row(r1) {
                    let shift = c1 * other.cols;
                    for r2 in 0..other.rows {
                        out.data[r1 * other.rows + r2] |= other.data[r2] << shift;
                    }
                }
            }
            return out;
        }
        for r1 in 0..self.rows {
            for c1 in self.row(r1) {
                for r2 in 0..other.rows {
                    let r = r1 * other.rows + r2;
                    for c2 in other.row(r2) {
                        out.set(r, c1 * other.cols + c2);
                    }
                }
            }
        }
        out
    }

    pub fn is_subset(&self, other: &BitMatrix) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| a & !b == 0)
    }

    /// Image of the set `rows` under the relation.
    pub fn image(&self, rows: &BitSet) -> BitSet {
        let mut out = BitSet::empty(self.cols);
        for r in rows.iter() {
            for (a, b) in out.words.iter_mut().zip(self.row_words(r)) {
                *a |= b;
            }
        }
        out
    }

    /// Whether row `r` meets the set `cols`.
    pub fn row_meets(&self, r: usize, cols: &BitSet) -> bool {
        self.row_words(r)
            .iter()
            .zip(&cols.words)
            .any(|(a, b)| a & b != 0)
    }

    pub(crate) fn or_row(&mut self, r: usize, set: &BitSet) {
        for (a, b) in self.row_words_mut(r).iter_mut().zip(&set.words) {
            *a |= b;
        }
    }
}

impl core::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "BitMatrix[{}x{}]", self.rows, self.cols)?;
        f.debug_set().entries(self.iter()).finish()
    }
}
