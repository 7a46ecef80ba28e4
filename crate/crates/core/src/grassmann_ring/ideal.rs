//! Direct elimination of the ideal slice `span{w^b Q_j : n-k < j <= n}` in
//! one degree. Exponentially larger than the ring construction, but with no
//! structural assumptions — used to cross-check it on small rings.

use crate::char_classes::upper_q;
use crate::error::Result;
use crate::f2_algebra::{enumerate_slice, BitMatrix, DegreeSlice, F2Polynomial, Flavor, Monomial};

pub struct IdealSlice {
    slice: DegreeSlice,
    reduced: BitMatrix,
    pivots: Vec<usize>,
}

impl IdealSlice {
    pub fn new(k: usize, n: usize, d: u32) -> Result<Self> {
        let slice = enumerate_slice(k, Flavor::W1, d);
        let mut m = BitMatrix::new(slice.len());
        for j in (n - k + 1)..=n {
            let Some(rest) = d.checked_sub(j as u32) else {
                continue;
            };
            let q = upper_q(k, j as i64);
            for b in enumerate_slice(k, Flavor::W1, rest).monomials() {
                m.push_row(q.times_monomial(b).to_coordinates(&slice)?);
            }
        }
        let (reduced, pivots) = m.rref();
        Ok(IdealSlice {
            slice,
            reduced,
            pivots,
        })
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Monomials that are not leading terms: the quotient basis.
    pub fn standard_monomials(&self) -> Vec<Monomial> {
        let mut is_pivot = vec![false; self.slice.len()];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        self.slice
            .monomials()
            .iter()
            .zip(is_pivot)
            .filter(|(_, p)| !p)
            .map(|(m, _)| m.clone())
            .collect()
    }

    /// The representative of `p` supported on standard monomials.
    pub fn normal_form(&self, p: &F2Polynomial) -> Result<F2Polynomial> {
        let mut v = p.to_coordinates(&self.slice)?;
        for (row, &c) in self.reduced.rows().iter().zip(&self.pivots) {
            if v.get(c) {
                v.xor_assign(row);
            }
        }
        Ok(F2Polynomial::from_coordinates(&v, &self.slice))
    }
}
