//! Bitpacked vectors and matrices over GF(2).
//!
//! Rows are stored as `u64` words, so an elimination step is a word-wise XOR.
//! Matrices act on row vectors: row `r` of a matrix representing a linear map
//! is the image of the `r`-th source basis vector.

use std::fmt;

use rayon::prelude::*;

const WORD: usize = 64;

/// Work (rows x words) above which row elimination is split across threads.
const PAR_THRESHOLD: usize = 1 << 14;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_ones(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
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

    pub fn from_words(len: usize, words: Vec<u64>) -> Self {
        assert_eq!(words.len(), len.div_ceil(WORD));
        let mut v = BitVec { len, words };
        v.clear_tail();
        v
    }

    fn clear_tail(&mut self) {
        let r = self.len % WORD;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// XOR starting at the word containing bit `from`; bits before it in
    /// `other` must be zero.
    #[inline]
    fn xor_from(&mut self, other: &BitVec, from: usize) {
        let start = from / WORD;
        for (a, b) in self.words[start..].iter_mut().zip(&other.words[start..]) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parity of the bitwise AND.
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    pub fn first_one(&self) -> Option<usize> {
        self.first_one_from(0)
    }

    fn first_one_from(&self, from: usize) -> Option<usize> {
        if from >= self.len {
            return None;
        }
        let mut wi = from / WORD;
        let mut w = self.words[wi] & (!0u64 << (from % WORD));
        loop {
            if w != 0 {
                return Some(wi * WORD + w.trailing_zeros() as usize);
            }
            wi += 1;
            if wi >= self.words.len() {
                return None;
            }
            w = self.words[wi];
        }
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + t)
            })
        })
    }

    /// Concatenate `self` followed by `other`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut v = BitVec::zeros(self.len + other.len);
        for i in self.ones() {
            v.set(i, true);
        }
        for i in other.ones() {
            v.set(self.len + i, true);
        }
        v
    }

    /// Bits `start..start+len` as a new vector.
    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        let mut v = BitVec::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Dense GF(2) matrix with bitpacked rows of uniform width.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BitMatrix {
    width: usize,
    rows: Vec<BitVec>,
}

impl BitMatrix {
    pub fn new(width: usize) -> Self {
        BitMatrix {
            width,
            rows: Vec::new(),
        }
    }

    pub fn zeros(nrows: usize, width: usize) -> Self {
        BitMatrix {
            width,
            rows: vec![BitVec::zeros(width); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix {
            width: n,
            rows: (0..n).map(|i| BitVec::unit(n, i)).collect(),
        }
    }

    pub fn from_rows(width: usize, rows: Vec<BitVec>) -> Self {
        assert!(rows.iter().all(|r| r.len() == width), "ragged rows");
        BitMatrix { width, rows }
    }

    /// Build from 0/1 integers, one inner vector per row.
    pub fn from_u8_rows(rows: &[Vec<u8>]) -> Self {
        let width = rows.first().map_or(0, Vec::len);
        BitMatrix::from_rows(
            width,
            rows.iter()
                .map(|r| BitVec::from_bools(&r.iter().map(|&b| b != 0).collect::<Vec<_>>()))
                .collect(),
        )
    }

    pub fn push_row(&mut self, row: BitVec) {
        assert_eq!(row.len(), self.width, "row width mismatch");
        self.rows.push(row);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.rows[r]
    }

    pub fn into_rows(self) -> Vec<BitVec> {
        self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.width, self.nrows());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                t.rows[c].set(r, true);
            }
        }
        t
    }

    /// `v * self` for a row vector `v` of length `nrows`.
    pub fn apply(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.nrows(), "vector length mismatch");
        let mut out = BitVec::zeros(self.width);
        for r in v.ones() {
            out.xor_assign(&self.rows[r]);
        }
        out
    }

    /// Matrix product `self * other` (apply `self` first, then `other`).
    pub fn then(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.width, other.nrows(), "dimension mismatch");
        BitMatrix {
            width: other.width,
            rows: self.rows.iter().map(|r| other.apply(r)).collect(),
        }
    }

    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.width, other.width);
        assert_eq!(self.nrows(), other.nrows());
        BitMatrix {
            width: self.width,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| {
                    let mut s = a.clone();
                    s.xor_assign(b);
                    s
                })
                .collect(),
        }
    }

    /// Reduced row echelon form and its pivot columns.
    ///
    /// Zero rows are dropped, so the returned matrix has exactly `rank` rows.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let pivots = rref_in_place(&mut rows, self.width);
        rows.truncate(pivots.len());
        (
            BitMatrix {
                width: self.width,
                rows,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        echelon_in_place(&mut rows, self.width).len()
    }

    /// Basis of `{x : self * x^T = 0}`; its size is `width - rank`.
    pub fn nullspace(&self) -> Vec<BitVec> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.width];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.width).filter(|&c| !is_pivot[c]) {
            let mut v = BitVec::unit(self.width, free);
            for (row, &p) in r.rows.iter().zip(&pivots) {
                if row.get(free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of `{v : v * self = 0}`, the kernel of the map this matrix represents.
    pub fn left_kernel(&self) -> Vec<BitVec> {
        self.transpose().nullspace()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.nrows(), self.width)?;
        for r in &self.rows {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

/// Forward elimination to (non-reduced) row echelon form; returns pivots.
/// The first `pivots.len()` rows hold the echelon basis afterwards.
fn echelon_in_place(rows: &mut [BitVec], width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..width {
        if top == rows.len() {
            break;
        }
        let Some(i) = (top..rows.len()).find(|&i| rows[i].get(col)) else {
            continue;
        };
        rows.swap(top, i);
        let (head, tail) = rows.split_at_mut(top + 1);
        eliminate(tail, &head[top], col);
        pivots.push(col);
        top += 1;
    }
    pivots
}

fn eliminate(rows: &mut [BitVec], pivot: &BitVec, col: usize) {
    let work = rows.len() * pivot.words.len();
    if work >= PAR_THRESHOLD {
        rows.par_iter_mut().for_each(|r| {
            if r.get(col) {
                r.xor_from(pivot, col);
            }
        });
    } else {
        for r in rows.iter_mut() {
            if r.get(col) {
                r.xor_from(pivot, col);
            }
        }
    }
}

/// Reduced row echelon form in place; returns pivots (rows beyond the rank are zero).
pub(crate) fn rref_in_place(rows: &mut [BitVec], width: usize) -> Vec<usize> {
    let pivots = echelon_in_place(rows, width);
    // back substitution
    for (i, &p) in pivots.iter().enumerate().rev() {
        let (head, tail) = rows.split_at_mut(i);
        let pivot = &tail[0];
        eliminate(head, pivot, p);
    }
    pivots
}

/// An incrementally built subspace kept in reduced echelon form, optionally
/// tracking how each basis row is written in terms of the inserted vectors.
#[derive(Clone, Debug)]
pub struct Span {
    width: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
    combos: Option<Vec<BitVec>>,
    inserted: usize,
    capacity: usize,
}

impl Span {
    pub fn new(width: usize) -> Self {
        Span {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: None,
            inserted: 0,
            capacity: 0,
        }
    }

    /// A span that remembers combinations of up to `capacity` inserted vectors.
    pub fn tracked(width: usize, capacity: usize) -> Self {
        Span {
            combos: Some(Vec::new()),
            capacity,
            ..Span::new(width)
        }
    }

    pub fn from_vectors<'a>(width: usize, vs: impl IntoIterator<Item = &'a BitVec>) -> Self {
        let mut s = Span::new(width);
        for v in vs {
            s.insert(v.clone());
        }
        s
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.rows
    }

    fn reduce_tracked(&self, mut v: BitVec, mut combo: Option<&mut BitVec>) -> BitVec {
        for (i, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if v.get(p) {
                v.xor_assign(row);
                if let (Some(c), Some(combos)) = (combo.as_deref_mut(), &self.combos) {
                    c.xor_assign(&combos[i]);
                }
            }
        }
        v
    }

    /// The residue of `v` modulo the span (zero iff `v` is in the span).
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.width);
        self.reduce_tracked(v.clone(), None)
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Insert `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: BitVec) -> bool {
        assert_eq!(v.len(), self.width);
        let index = self.inserted;
        self.inserted += 1;
        let mut combo = self.combos.as_ref().map(|_| {
            assert!(index < self.capacity, "tracked span capacity exceeded");
            BitVec::unit(self.capacity, index)
        });
        let r = self.reduce_tracked(v, combo.as_mut());
        let Some(p) = r.first_one() else {
            return false;
        };
        // keep the basis reduced: clear column p from existing rows
        for i in 0..self.rows.len() {
            if self.rows[i].get(p) {
                self.rows[i].xor_assign(&r);
                if let (Some(combos), Some(c)) = (self.combos.as_mut(), combo.as_ref()) {
                    combos[i].xor_assign(c);
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, r);
        if let (Some(combos), Some(c)) = (self.combos.as_mut(), combo) {
            combos.insert(pos, c);
        }
        true
    }

    /// For a tracked span: a combination of inserted vectors summing to `v`.
    pub fn solve(&self, v: &BitVec) -> Option<BitVec> {
        let combos = self.combos.as_ref().expect("solve needs a tracked span");
        let mut c = BitVec::zeros(self.capacity);
        let r = self.reduce_tracked(v.clone(), Some(&mut c));
        let _ = combos;
        if r.is_zero() {
            Some(c)
        } else {
            None
        }
    }
}

/// Dimension of `U ∩ V` via `dim U + dim V - dim(U + V)`.
pub fn intersection_dim(u: &Span, v: &Span) -> usize {
    let mut sum = u.clone();
    sum.combos = None;
    for b in v.basis() {
        sum.insert(b.clone());
    }
    u.dim() + v.dim() - sum.dim()
}

/// Basis of `U ∩ V`, from the kernel of `[U; V]`.
pub fn intersection_basis(u: &Span, v: &Span) -> Vec<BitVec> {
    let nu = u.dim();
    let stacked = BitMatrix::from_rows(
        u.width(),
        u.basis().iter().chain(v.basis()).cloned().collect(),
    );
    // a v-part combination that equals a u-part combination
    stacked
        .left_kernel()
        .into_iter()
        .map(|c| {
            let mut x = BitVec::zeros(u.width());
            for i in c.ones().filter(|&i| i < nu) {
                x.xor_assign(&u.basis()[i]);
            }
            x
        })
        .collect()
}
