//! `H*(Gr_k(n); F2) = F2[w1..wk] / (Q_{n-k+1}, ..., Q_n)`, degree by degree.
//!
//! Monomials are ordered lexicographically with `w1` largest. The standard
//! monomials (those that are not leading terms of the ideal) form a basis,
//! and they are closed under division, so every standard monomial of degree
//! `d` is `w_i * s` for a standard `s` of lower degree. Degree `d` is
//! therefore settled by eliminating relations among the *candidates*
//! `w_i * s` only. Those relations are spanned by
//!
//! * `w_i * NF(w_j y) + w_j * NF(w_i y)` for standard `y` of degree
//!   `d - i - j` (trivial unless `w_i y` or `w_j y` is a leading term), and
//! * for `n-k < d <= n`, the generator `Q_d = sum_i w_i * NF(Q_{d-i})`.
//!
//! With lex-largest-first columns the pivots are exactly the leading terms
//! among the candidates, so the canonical forms agree with a direct
//! elimination of the ideal slice; [`ideal`] keeps that direct route as an
//! independent check on small rings.

pub mod cache;
pub mod ideal;

use std::collections::HashSet;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::char_classes::upper_q;
use crate::error::{Error, Result};
use crate::f2_algebra::{
    BitMatrix, BitVec, DegreeSlice, F2Polynomial, Flavor, Monomial,
};

pub const DEFAULT_DEGREE_CAP: u32 = 128;

/// Construction options. The cache never changes results, only timing.
#[derive(Clone, Debug)]
pub struct RingOptions {
    pub degree_cap: u32,
    pub cache_dir: Option<PathBuf>,
}

impl Default for RingOptions {
    fn default() -> Self {
        RingOptions {
            degree_cap: DEFAULT_DEGREE_CAP,
            cache_dir: None,
        }
    }
}

/// Where `w_i * s` lands: a standard monomial or a border monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Target {
    Basis(u32),
    Border(u32),
}

#[derive(Clone, Debug)]
struct DegreeData {
    basis: DegreeSlice,
    border: DegreeSlice,
    /// Normal form of each border monomial over `basis`.
    border_nf: Vec<BitVec>,
    /// `incoming[i-1][s]`: where `w_i * basis_{d-i}[s]` lands.
    incoming: Vec<Vec<Target>>,
    /// Reduced relation rows over the candidate columns (the cached form).
    pivot_rows: Vec<BitVec>,
}

impl DegreeData {
    fn coordinates(&self, t: Target) -> BitVec {
        match t {
            Target::Basis(p) => BitVec::unit(self.basis.len(), p as usize),
            Target::Border(p) => self.border_nf[p as usize].clone(),
        }
    }
}

/// Pivots of rows already in reduced echelon form, or `None` if they are not.
fn check_reduced(rows: &[BitVec], width: usize) -> Option<Vec<usize>> {
    let mut pivots = Vec::with_capacity(rows.len());
    for r in rows {
        if r.len() != width {
            return None;
        }
        let p = r.first_one()?;
        if pivots.last().is_some_and(|&q| q >= p) {
            return None;
        }
        pivots.push(p);
    }
    for (i, r) in rows.iter().enumerate() {
        if pivots.iter().enumerate().any(|(j, &p)| j != i && r.get(p)) {
            return None;
        }
    }
    Some(pivots)
}

/// An element of `H^d(Gr_k(n))` in canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohomologyClass {
    k: usize,
    n: usize,
    degree: u32,
    coords: BitVec,
}

impl CohomologyClass {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coords(&self) -> &BitVec {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn ring(&self) -> (usize, usize) {
        (self.k, self.n)
    }

    pub fn add(&self, other: &CohomologyClass) -> Result<CohomologyClass> {
        if self.ring() != other.ring() {
            return Err(Error::InvalidParameters("classes from different rings".into()));
        }
        if self.degree != other.degree {
            return Err(Error::WrongDegree {
                expected: self.degree,
                found: other.degree,
            });
        }
        let mut coords = self.coords.clone();
        coords.xor_assign(&other.coords);
        Ok(CohomologyClass { coords, ..self.clone() })
    }
}

/// Characteristic rank: exact, or only bounded below when `ker w1`
/// vanishes throughout the built range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "value", rename_all = "snake_case")]
pub enum CharRank {
    Exact(u32),
    AtLeast(u32),
}

/// `ker` and `coker` of `w1` around degree `d`.
#[derive(Clone, Debug)]
pub struct W1Degree {
    pub degree: u32,
    /// Basis of `ker(w1: H^d -> H^{d+1})`.
    pub kernel: Vec<BitVec>,
    /// `dim H^d / w1 H^{d-1}`.
    pub coker_dim: usize,
}

impl W1Degree {
    pub fn ker_dim(&self) -> usize {
        self.kernel.len()
    }

    /// Mod-2 Betti number of the oriented Grassmannian in this degree.
    pub fn oriented_betti(&self) -> usize {
        self.coker_dim + self.kernel.len()
    }
}

#[derive(Clone, Debug)]
pub struct QuotientRing {
    k: usize,
    n: usize,
    top: u32,
    max_degree: u32,
    degrees: Vec<DegreeData>,
    cache_hits: usize,
}

impl QuotientRing {
    /// Build through `max_degree` (default and clamp: `k(n-k)`).
    pub fn build(k: usize, n: usize, max_degree: Option<u32>) -> Result<Self> {
        Self::build_with(k, n, max_degree, &RingOptions::default())
    }

    pub fn build_with(
        k: usize,
        n: usize,
        max_degree: Option<u32>,
        opts: &RingOptions,
    ) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidParameters(format!(
                "need 1 <= k <= n, got k = {k}, n = {n}"
            )));
        }
        let top = (k * (n - k)) as u32;
        let requested = max_degree.unwrap_or(top);
        if requested > opts.degree_cap {
            return Err(Error::DegreeCapExceeded {
                degree: requested,
                cap: opts.degree_cap,
            });
        }
        let mut ring = QuotientRing {
            k,
            n,
            top,
            max_degree: requested.min(top),
            degrees: Vec::new(),
            cache_hits: 0,
        };
        for d in 0..=ring.max_degree {
            let cached = opts
                .cache_dir
                .as_deref()
                .and_then(|dir| cache::load(dir, k, n, d).ok().flatten());
            let data = match cached {
                Some(nf) => match ring.assemble(d, Some(nf)) {
                    Ok(data) => {
                        ring.cache_hits += 1;
                        data
                    }
                    // stale or corrupt entry: recompute
                    Err(_) => ring.assemble(d, None)?,
                },
                None => {
                    let data = ring.assemble(d, None)?;
                    if let Some(dir) = &opts.cache_dir {
                        // the cache is advisory, a failed write is not an error
                        let _ = cache::store(dir, k, n, d, &data.pivot_rows, width_of(&data));
                    }
                    data
                }
            };
            ring.degrees.push(data);
        }
        let expected = gaussian_binomial(n, k);
        for d in 0..=ring.max_degree {
            let dim = ring.degrees[d as usize].basis.len() as u64;
            if dim != expected[d as usize] {
                return Err(Error::Invariant(format!(
                    "dim H^{d}(Gr_{k}({n})) = {dim}, expected {}",
                    expected[d as usize]
                )));
            }
        }
        Ok(ring)
    }

    fn assemble(&self, d: u32, cached: Option<Vec<BitVec>>) -> Result<DegreeData> {
        let k = self.k;
        if d == 0 {
            let basis = DegreeSlice::from_monomials(k, Flavor::W1, 0, vec![Monomial::one(k)]);
            let border = DegreeSlice::from_monomials(k, Flavor::W1, 0, Vec::new());
            return Ok(DegreeData {
                basis,
                border,
                border_nf: Vec::new(),
                incoming: vec![Vec::new(); k],
                pivot_rows: Vec::new(),
            });
        }
        // candidate columns: every w_i * s with s standard in degree d - i
        let mut candidates: Vec<Monomial> = (1..=k.min(d as usize))
            .flat_map(|i| {
                self.degrees[d as usize - i]
                    .basis
                    .monomials()
                    .iter()
                    .map(move |s| s.times_generator(i, 1))
            })
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        candidates.sort_unstable_by(|a, b| b.cmp(a));
        let columns = DegreeSlice::from_monomials(k, Flavor::W1, d, candidates);
        let width = columns.len();
        let col_maps: Vec<Vec<usize>> = (1..=k)
            .map(|i| {
                if d < i as u32 {
                    return Vec::new();
                }
                self.degrees[d as usize - i]
                    .basis
                    .monomials()
                    .iter()
                    .map(|s| columns.position(&s.times_generator(i, 1)).expect("candidate"))
                    .collect()
            })
            .collect();

        let (rows, pivots) = match cached {
            Some(rows) => {
                let pivots = check_reduced(&rows, width)
                    .ok_or_else(|| Error::Cache(format!("degree {d}: rows not in reduced form")))?;
                (rows, pivots)
            }
            None => {
                let m = BitMatrix::from_rows(width, self.relation_rows(d, width, &col_maps)?);
                let (r, p) = m.rref();
                (r.into_rows(), p)
            }
        };

        let mut is_pivot = vec![false; width];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis_cols = Vec::new();
        let (mut std, mut lead) = (Vec::new(), Vec::new());
        for (c, m) in columns.monomials().iter().enumerate() {
            if is_pivot[c] {
                lead.push(m.clone());
            } else {
                basis_cols.push(c);
                std.push(m.clone());
            }
        }
        let border_nf = rows
            .iter()
            .map(|row| {
                BitVec::from_ones(
                    basis_cols.len(),
                    basis_cols
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| row.get(c))
                        .map(|(s, _)| s),
                )
            })
            .collect();
        let basis = DegreeSlice::from_monomials(k, Flavor::W1, d, std);
        let border = DegreeSlice::from_monomials(k, Flavor::W1, d, lead);
        let incoming = col_maps
            .iter()
            .map(|map| {
                map.iter()
                    .map(|&c| {
                        let m = &columns.monomials()[c];
                        match basis.position(m) {
                            Some(p) => Target::Basis(p as u32),
                            None => Target::Border(border.position(m).expect("pivot") as u32),
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(DegreeData {
            basis,
            border,
            border_nf,
            incoming,
            pivot_rows: rows,
        })
    }

    /// Generators of all relations among the candidate monomials of degree `d`.
    fn relation_rows(&self, d: u32, width: usize, col_maps: &[Vec<usize>]) -> Result<Vec<BitVec>> {
        let k = self.k;
        // w_i * x for x in degree d - i, placed into the column space
        let lift_into = |row: &mut BitVec, i: usize, x: &BitVec| {
            let map = &col_maps[i - 1];
            for s in x.ones() {
                row.flip(map[s]);
            }
        };
        let mut jobs = Vec::new();
        for i in 1..=k {
            for j in i + 1..=k {
                if (i + j) as u32 <= d {
                    jobs.push((i, j));
                }
            }
        }
        let mut rows: Vec<BitVec> = jobs
            .par_iter()
            .flat_map_iter(|&(i, j)| {
                let di = d as usize - i;
                let dj = d as usize - j;
                let ys = self.degrees[d as usize - i - j].basis.len();
                (0..ys).filter_map(move |y| {
                    // w_j y lives in degree d - i, w_i y in degree d - j
                    let a = self.degrees[di].incoming[j - 1][y];
                    let b = self.degrees[dj].incoming[i - 1][y];
                    if matches!((a, b), (Target::Basis(_), Target::Basis(_))) {
                        // both products standard: the row only identifies equal columns
                        return None;
                    }
                    let mut row = BitVec::zeros(width);
                    lift_into(&mut row, i, &self.degrees[di].coordinates(a));
                    lift_into(&mut row, j, &self.degrees[dj].coordinates(b));
                    (!row.is_zero()).then_some(row)
                })
            })
            .collect();

        let nk = (self.n - k) as u32;
        if d > nk && d as usize <= self.n {
            let mut row = BitVec::zeros(width);
            for i in 1..=k.min(d as usize) {
                let q = upper_q(k, d as i64 - i as i64);
                let x = self.reduce_in_built(&q, d - i as u32)?;
                lift_into(&mut row, i, &x);
            }
            rows.push(row);
        }
        Ok(rows)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `dim Gr_k(n) = k(n-k)`.
    pub fn top_degree(&self) -> u32 {
        self.top
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// Number of degrees loaded from the on-disk cache.
    pub fn cache_hits(&self) -> usize {
        self.cache_hits
    }

    /// Fails for degrees inside `0..=top` that were not built.
    pub fn ensure_degree(&self, d: u32) -> Result<()> {
        if d > self.max_degree && d <= self.top {
            Err(Error::DegreeOutOfRange {
                degree: d,
                max: self.max_degree,
            })
        } else {
            Ok(())
        }
    }

    /// `dim H^d`; zero above the top degree.
    ///
    /// # Panics
    /// If `d` is within the manifold dimension but was not built.
    pub fn dim(&self, d: u32) -> usize {
        self.data(d).map_or(0, |x| x.basis.len())
    }

    fn data(&self, d: u32) -> Option<&DegreeData> {
        if d > self.top {
            return None;
        }
        self.ensure_degree(d).expect("degree not built");
        Some(&self.degrees[d as usize])
    }

    pub fn betti(&self) -> Vec<usize> {
        (0..=self.max_degree).map(|d| self.dim(d)).collect()
    }

    /// The standard monomials forming the basis of `H^d`.
    pub fn basis(&self, d: u32) -> &[Monomial] {
        self.data(d).map_or(&[], |x| x.basis.monomials())
    }

    pub fn class(&self, d: u32, coords: BitVec) -> Result<CohomologyClass> {
        self.ensure_degree(d)?;
        if coords.len() != self.dim(d) {
            return Err(Error::InvalidParameters(format!(
                "coordinate vector of length {} for a space of dimension {}",
                coords.len(),
                self.dim(d)
            )));
        }
        Ok(CohomologyClass {
            k: self.k,
            n: self.n,
            degree: d,
            coords,
        })
    }

    pub fn zero(&self, d: u32) -> Result<CohomologyClass> {
        self.class(d, BitVec::zeros(self.dim(d)))
    }

    fn check_class(&self, x: &CohomologyClass) -> Result<()> {
        if x.ring() != (self.k, self.n) {
            return Err(Error::InvalidParameters(format!(
                "class of Gr_{}({}) used in Gr_{}({})",
                x.k, x.n, self.k, self.n
            )));
        }
        Ok(())
    }

    /// `w_i * x` for coordinates `x` in degree `d`.
    fn times_generator(&self, x: &BitVec, d: u32, i: usize) -> BitVec {
        let e = d + i as u32;
        let Some(data) = self.data(e) else {
            return BitVec::zeros(0);
        };
        let mut out = BitVec::zeros(data.basis.len());
        for s in x.ones() {
            match data.incoming[i - 1][s] {
                Target::Basis(p) => out.flip(p as usize),
                Target::Border(p) => out.xor_assign(&data.border_nf[p as usize]),
            }
        }
        out
    }

    /// Canonical coordinates of a monomial.
    pub fn reduce_monomial(&self, m: &Monomial) -> Result<BitVec> {
        if m.k() != self.k {
            return Err(Error::AmbientMismatch(m.k(), self.k));
        }
        let d = m.degree();
        if d > self.top {
            return Ok(BitVec::zeros(0));
        }
        self.ensure_degree(d)?;
        Ok(self.reduce_monomial_unchecked(m))
    }

    fn reduce_monomial_unchecked(&self, m: &Monomial) -> BitVec {
        // strip factors of the highest variables until a standard or leading
        // monomial remains, then multiply them back on one at a time
        let mut head = m.clone();
        let mut stripped = Vec::new();
        let mut var = self.k;
        let mut x = loop {
            let data = &self.degrees[head.degree() as usize];
            if let Some(p) = data.basis.position(&head) {
                break BitVec::unit(data.basis.len(), p);
            }
            if let Some(p) = data.border.position(&head) {
                break data.border_nf[p].clone();
            }
            while head.exp(var) == 0 {
                var -= 1;
            }
            head = head.div_generator(var).expect("nonzero exponent");
            stripped.push(var);
        };
        let mut deg = head.degree();
        for &i in stripped.iter().rev() {
            if x.is_zero() {
                return BitVec::zeros(self.dim(m.degree()));
            }
            x = self.times_generator(&x, deg, i);
            deg += i as u32;
        }
        x
    }

    /// Coordinates of a homogeneous polynomial known to be within the built range.
    fn reduce_in_built(&self, p: &F2Polynomial, d: u32) -> Result<BitVec> {
        let mut x = BitVec::zeros(self.degrees[d as usize].basis.len());
        for m in p.terms() {
            if m.degree() != d {
                return Err(Error::WrongDegree {
                    expected: d,
                    found: m.degree(),
                });
            }
            x.xor_assign(&self.reduce_monomial_unchecked(m));
        }
        Ok(x)
    }

    /// Canonical form of a homogeneous polynomial. The zero polynomial
    /// reduces to the zero class of degree 0.
    pub fn reduce(&self, p: &F2Polynomial) -> Result<CohomologyClass> {
        if p.k() != self.k {
            return Err(Error::AmbientMismatch(p.k(), self.k));
        }
        let d = p.homogeneous_degree()?.unwrap_or(0);
        self.reduce_in_degree(p, d)
    }

    /// As [`reduce`](Self::reduce), with the degree given explicitly (needed for zero).
    pub fn reduce_in_degree(&self, p: &F2Polynomial, d: u32) -> Result<CohomologyClass> {
        if p.k() != self.k {
            return Err(Error::AmbientMismatch(p.k(), self.k));
        }
        if let Some(e) = p.homogeneous_degree()? {
            if e != d {
                return Err(Error::WrongDegree {
                    expected: d,
                    found: e,
                });
            }
        }
        self.ensure_degree(d)?;
        let mut coords = BitVec::zeros(self.dim(d));
        if d <= self.top {
            coords = self.reduce_in_built(p, d)?;
        }
        Ok(CohomologyClass {
            k: self.k,
            n: self.n,
            degree: d,
            coords,
        })
    }

    /// The polynomial supported on standard monomials representing `x`.
    pub fn lift(&self, x: &CohomologyClass) -> F2Polynomial {
        let basis = self.basis(x.degree);
        F2Polynomial::from_monomials(self.k, Flavor::W1, x.coords.ones().map(|i| basis[i].clone()))
    }

    /// Product of a class with a homogeneous polynomial.
    pub fn multiply_poly(&self, x: &CohomologyClass, p: &F2Polynomial) -> Result<CohomologyClass> {
        let e = p.homogeneous_degree()?.unwrap_or(0);
        self.multiply_in_degree(x, p, e)
    }

    pub fn multiply(&self, x: &CohomologyClass, y: &CohomologyClass) -> Result<CohomologyClass> {
        self.check_class(y)?;
        // degree taken from y: the lift of a zero class has none
        self.multiply_in_degree(x, &self.lift(y), y.degree)
    }

    fn multiply_in_degree(&self, x: &CohomologyClass, p: &F2Polynomial, e: u32) -> Result<CohomologyClass> {
        self.check_class(x)?;
        if p.k() != self.k {
            return Err(Error::AmbientMismatch(p.k(), self.k));
        }
        let d = x.degree + e;
        self.ensure_degree(d)?;
        let mut coords = BitVec::zeros(self.dim(d));
        if d <= self.top {
            for m in p.terms() {
                coords.xor_assign(&self.times_monomial(&x.coords, x.degree, m));
            }
        }
        Ok(CohomologyClass {
            k: self.k,
            n: self.n,
            degree: d,
            coords,
        })
    }

    fn times_monomial(&self, x: &BitVec, d: u32, m: &Monomial) -> BitVec {
        let mut x = x.clone();
        let mut deg = d;
        for i in 1..=self.k {
            for _ in 0..m.exp(i) {
                x = self.times_generator(&x, deg, i);
                deg += i as u32;
            }
        }
        if deg > self.top {
            return BitVec::zeros(0);
        }
        x
    }

    /// Matrix of multiplication by `reduce(p)` from `H^d` to `H^{d+e}`.
    pub fn mult_map(&self, p: &F2Polynomial, d: u32) -> Result<BitMatrix> {
        if p.k() != self.k {
            return Err(Error::AmbientMismatch(p.k(), self.k));
        }
        let e = p.homogeneous_degree()?.unwrap_or(0);
        self.ensure_degree(d)?;
        self.ensure_degree(d + e)?;
        let (src, dst) = (self.dim(d), self.dim(d + e));
        let rows = (0..src)
            .map(|s| {
                let unit = BitVec::unit(src, s);
                let mut acc = BitVec::zeros(dst);
                if dst > 0 {
                    for m in p.terms() {
                        acc.xor_assign(&self.times_monomial(&unit, d, m));
                    }
                }
                acc
            })
            .collect();
        Ok(BitMatrix::from_rows(dst, rows))
    }

    /// Multiplication by `w1` from `H^d` to `H^{d+1}`.
    pub fn w1_matrix(&self, d: u32) -> Result<BitMatrix> {
        self.ensure_degree(d)?;
        self.ensure_degree(d + 1)?;
        let (src, dst) = (self.dim(d), self.dim(d + 1));
        let rows = (0..src)
            .map(|s| {
                if dst == 0 {
                    BitVec::zeros(0)
                } else {
                    self.times_generator(&BitVec::unit(src, s), d, 1)
                }
            })
            .collect();
        Ok(BitMatrix::from_rows(dst, rows))
    }

    /// Kernel and cokernel of `w1` in every degree where both are determined:
    /// all degrees of a fully built ring, else all but the last built one.
    pub fn ker_coker_w1(&self) -> Vec<W1Degree> {
        let last = if self.max_degree == self.top {
            self.top
        } else {
            self.max_degree - 1
        };
        let maps: Vec<BitMatrix> = (0..=last)
            .into_par_iter()
            .map(|d| {
                if d == self.top {
                    BitMatrix::zeros(self.dim(d), 0)
                } else {
                    self.w1_matrix(d).expect("built")
                }
            })
            .collect();
        (0..=last)
            .map(|d| {
                let kernel = maps[d as usize].left_kernel();
                let image = if d == 0 {
                    0
                } else {
                    maps[d as usize - 1].rank()
                };
                W1Degree {
                    degree: d,
                    kernel,
                    coker_dim: self.dim(d) - image,
                }
            })
            .collect()
    }

    /// `dim H^d(G~r_k(n); F2)` for every degree reported by [`ker_coker_w1`](Self::ker_coker_w1).
    pub fn oriented_betti(&self) -> Vec<usize> {
        self.ker_coker_w1().iter().map(W1Degree::oriented_betti).collect()
    }

    /// `(min degree with ker w1 != 0) - 1`.
    pub fn char_rank(&self) -> CharRank {
        first_kernel_degree(self).map_or(CharRank::AtLeast(self.max_degree.saturating_sub(1)), |d| {
            CharRank::Exact(d - 1)
        })
    }

    /// Largest `p` with `x^p != 0`; `None` if all powers within the built range are nonzero.
    pub fn height(&self, x: &CohomologyClass) -> Result<Option<u32>> {
        self.check_class(x)?;
        if x.is_zero() {
            return Ok(Some(0));
        }
        if x.degree == 0 {
            // a nonzero constant is never nilpotent
            return Ok(None);
        }
        let rep = self.lift(x);
        let mut power = x.clone();
        let mut p = 1;
        loop {
            let next = power.degree + x.degree;
            if next > self.top {
                return Ok(Some(p));
            }
            if next > self.max_degree {
                return Ok(None);
            }
            power = self.multiply_poly(&power, &rep)?;
            if power.is_zero() {
                return Ok(Some(p));
            }
            p += 1;
        }
    }

    /// `ht(w1)` by repeated multiplication.
    pub fn height_w1(&self) -> Result<Option<u32>> {
        let w1 = F2Polynomial::generator(self.k, 1, Flavor::W1);
        let x = self.reduce(&w1)?;
        self.height(&x)
    }
}

fn width_of(data: &DegreeData) -> usize {
    data.basis.len() + data.border.len()
}

fn first_kernel_degree(ring: &QuotientRing) -> Option<u32> {
    (0..=ring.max_degree).find(|&d| {
        if d == ring.top {
            return ring.dim(d) > 0;
        }
        if d == ring.max_degree {
            return false;
        }
        let m = ring.w1_matrix(d).expect("built");
        m.rank() < m.nrows()
    })
}

/// Restriction along `Gr_k(m) -> Gr_k(n)` for `m < n`.
pub fn pullback(
    source: &QuotientRing,
    target: &QuotientRing,
    x: &CohomologyClass,
) -> Result<CohomologyClass> {
    source.check_class(x)?;
    if source.k != target.k || target.n >= source.n {
        return Err(Error::InvalidParameters(format!(
            "pullback needs Gr_k(m) -> Gr_k(n) with m < n, got Gr_{}({}) -> Gr_{}({})",
            target.k, target.n, source.k, source.n
        )));
    }
    target.reduce_in_degree(&source.lift(x), x.degree)
}

/// Gysin map `Gr_k(n) -> Gr_k(n+j)`: multiply a representative by `w_k^j`.
pub fn pushforward(
    source: &QuotientRing,
    target: &QuotientRing,
    x: &CohomologyClass,
) -> Result<CohomologyClass> {
    source.check_class(x)?;
    if source.k != target.k || target.n < source.n {
        return Err(Error::InvalidParameters(format!(
            "pushforward needs Gr_k(n) -> Gr_k(n+j), got Gr_{}({}) -> Gr_{}({})",
            source.k, source.n, target.k, target.n
        )));
    }
    let j = (target.n - source.n) as u32;
    let wk = Monomial::generator(source.k, source.k);
    let shift = Monomial::from_exponents(wk.exponents().iter().map(|a| a * j).collect());
    let rep = source.lift(x).times_monomial(&shift);
    target.reduce_in_degree(&rep, x.degree + j * source.k as u32)
}

/// Coefficients of the Gaussian binomial `[n choose k]_q`: the number of
/// partitions of each size fitting in a `k x (n-k)` box.
pub fn gaussian_binomial(n: usize, k: usize) -> Vec<u64> {
    // [m choose j] = [m-1 choose j-1] + q^j [m-1 choose j]
    let mut table: Vec<Vec<Vec<u64>>> = vec![vec![vec![1]]];
    for m in 1..=n {
        let mut row = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let deg = j * (m - j);
            let mut c = vec![0u64; deg + 1];
            if j >= 1 {
                for (e, v) in table[m - 1][j - 1].iter().enumerate() {
                    c[e] += v;
                }
            }
            if j < m {
                for (e, v) in table[m - 1][j].iter().enumerate() {
                    c[e + j] += v;
                }
            }
            row.push(c);
        }
        table.push(row);
    }
    table[n][k].clone()
}
