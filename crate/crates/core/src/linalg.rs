//! Dense linear algebra over the two-element field.
//!
//! Vectors are packed 64 bits per word. Pivots are always taken at the
//! lowest set index, so every elimination here is deterministic and the
//! resulting bases depend only on the order of the input.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Vec {
    len: usize,
    words: Vec<u64>,
}

impl F2Vec {
    pub fn zeros(len: usize) -> Self {
        F2Vec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn add_assign(&mut self, other: &F2Vec) {
        assert_eq!(self.len, other.len, "F2Vec length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }
}

impl fmt::Debug for F2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Row-major matrix over F2.
#[derive(Clone, PartialEq, Eq)]
pub struct F2Matrix {
    cols: usize,
    rows: Vec<F2Vec>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        F2Matrix {
            cols,
            rows: (0..rows).map(|_| F2Vec::zeros(cols)).collect(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<F2Vec>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols));
        F2Matrix { cols, rows }
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[F2Vec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in c.ones() {
                m.rows[i].set(j, true);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value)
    }

    pub fn row(&self, i: usize) -> &F2Vec {
        &self.rows[i]
    }

    pub fn column(&self, j: usize) -> F2Vec {
        let mut c = F2Vec::zeros(self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            if r.get(j) {
                c.set(i, true);
            }
        }
        c
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(F2Vec::is_zero)
    }

    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, other.nrows(), "matrix shape mismatch");
        let mut out = F2Matrix::zeros(self.nrows(), other.cols);
        for (i, r) in self.rows.iter().enumerate() {
            for k in r.ones() {
                out.rows[i].add_assign(&other.rows[k]);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &F2Vec) -> F2Vec {
        assert_eq!(self.cols, v.len());
        let mut out = F2Vec::zeros(self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            let dot = r
                .words
                .iter()
                .zip(&v.words)
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>();
            if dot % 2 == 1 {
                out.set(i, true);
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut span = Span::new(self.cols);
        self.rows.iter().filter(|r| span.insert(r)).count()
    }

    /// Basis of the right kernel `{v : M v = 0}`, in reduced form.
    pub fn kernel(&self) -> Vec<F2Vec> {
        let n = self.cols;
        // Eliminate on columns: each column is tracked together with the
        // unit vector recording which original columns it combines.
        let cols: Vec<F2Vec> = (0..n).map(|j| self.column(j)).collect();
        let mut reducer = Reducer::new(self.nrows(), n);
        let mut kernel = Vec::new();
        for (j, c) in cols.into_iter().enumerate() {
            let tag = F2Vec::unit(n, j);
            if let Some(rel) = reducer.insert_tagged(c, tag) {
                kernel.push(rel);
            }
        }
        kernel
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.nrows(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

/// Incrementally maintained echelon basis of a subspace.
#[derive(Clone, Debug)]
pub struct Span {
    len: usize,
    rows: Vec<(usize, F2Vec)>,
}

impl Span {
    pub fn new(len: usize) -> Self {
        Span {
            len,
            rows: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.len
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &mut F2Vec) {
        for (pivot, row) in &self.rows {
            if v.get(*pivot) {
                v.add_assign(row);
            }
        }
    }

    pub fn contains(&self, v: &F2Vec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// Returns true when `v` enlarged the span.
    pub fn insert(&mut self, v: &F2Vec) -> bool {
        assert_eq!(v.len(), self.len);
        let mut w = v.clone();
        self.reduce(&mut w);
        match w.first_one() {
            Some(p) => {
                self.rows.push((p, w));
                true
            }
            None => false,
        }
    }

    pub fn basis(&self) -> impl Iterator<Item = &F2Vec> {
        self.rows.iter().map(|(_, r)| r)
    }
}

/// Echelon basis whose rows carry a tag recording how each row was formed
/// from caller-chosen generators. Reducing a vector returns the residue and
/// the accumulated tag, which gives coordinates with respect to the tagged
/// generators.
#[derive(Clone, Debug)]
pub struct Reducer {
    len: usize,
    tag_len: usize,
    rows: Vec<(usize, F2Vec, F2Vec)>,
}

impl Reducer {
    pub fn new(len: usize, tag_len: usize) -> Self {
        Reducer {
            len,
            tag_len,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &F2Vec) -> (F2Vec, F2Vec) {
        let mut w = v.clone();
        let mut tag = F2Vec::zeros(self.tag_len);
        for (pivot, row, row_tag) in &self.rows {
            if w.get(*pivot) {
                w.add_assign(row);
                tag.add_assign(row_tag);
            }
        }
        (w, tag)
    }

    /// Inserts `v` with `tag`. If `v` is already in the span, nothing is
    /// inserted and the tag of the resulting linear relation is returned.
    pub fn insert_tagged(&mut self, v: F2Vec, tag: F2Vec) -> Option<F2Vec> {
        assert_eq!(v.len(), self.len);
        assert_eq!(tag.len(), self.tag_len);
        let (w, t) = self.reduce(&v);
        let mut tag = tag;
        tag.add_assign(&t);
        match w.first_one() {
            Some(p) => {
                self.rows.push((p, w, tag));
                None
            }
            None => Some(tag),
        }
    }
}
