use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Stiefel–Whitney monomial `w_1^{a_1} ... w_k^{a_k}`, with `deg w_i = i`.
///
/// Exponent slot `0` holds `a_1`. The derived ordering is lexicographic on
/// `(a_1, ..., a_k)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(k: usize) -> Self {
        Monomial { exps: vec![0; k] }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The generator `w_i` (1-based).
    pub fn generator(k: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= k, "w_{i} out of range for k = {k}");
        let mut exps = vec![0; k];
        exps[i - 1] = 1;
        Monomial { exps }
    }

    pub fn k(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// Exponent of `w_i` (1-based).
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i - 1]
    }

    pub fn degree(&self) -> u32 {
        self.exps
            .iter()
            .enumerate()
            .map(|(i, &a)| (i as u32 + 1) * a)
            .sum()
    }

    /// Number of factors `|a| = a_1 + ... + a_k`.
    pub fn length(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&a| a == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.k(), other.k());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.k(), other.k());
        let mut exps = Vec::with_capacity(self.k());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial { exps })
    }

    /// Multiply by `w_i^e` (1-based index).
    pub fn times_generator(&self, i: usize, e: u32) -> Monomial {
        let mut exps = self.exps.clone();
        exps[i - 1] += e;
        Monomial { exps }
    }

    /// Divide by `w_i` if possible.
    pub fn div_generator(&self, i: usize) -> Option<Monomial> {
        if self.exps[i - 1] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[i - 1] -= 1;
        Some(Monomial { exps })
    }

    /// Lowest index `i` with `a_i > 0`.
    pub fn first_variable(&self) -> Option<usize> {
        self.exps.iter().position(|&a| a > 0).map(|p| p + 1)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &a) in self.exps.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if a == 1 {
                write!(f, "w{}", i + 1)?;
            } else {
                write!(f, "w{}^{}", i + 1, a)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Which polynomial algebra a class lives in: `W1 = F2[w1..wk]` or
/// `W2 = F2[w2..wk]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    W1,
    W2,
}

impl Flavor {
    fn first_variable(self) -> usize {
        match self {
            Flavor::W1 => 1,
            Flavor::W2 => 2,
        }
    }
}

/// Every monomial of one weighted degree, in descending lexicographic order.
#[derive(Clone, Debug)]
pub struct DegreeSlice {
    degree: u32,
    k: usize,
    flavor: Flavor,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl DegreeSlice {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// Enumerate the degree-`degree` slice of `W1` or `W2` in `k` variables.
pub fn enumerate_slice(k: usize, flavor: Flavor, degree: u32) -> DegreeSlice {
    DegreeSlice::from_monomials(k, flavor, degree, monomials_of_degree(k, flavor, degree))
}

impl DegreeSlice {
    /// Index an explicit list of monomials of one degree (kept in the given order).
    pub fn from_monomials(k: usize, flavor: Flavor, degree: u32, monomials: Vec<Monomial>) -> Self {
        debug_assert!(monomials.iter().all(|m| m.degree() == degree && m.k() == k));
        let index = monomials
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
            .collect();
        DegreeSlice {
            degree,
            k,
            flavor,
            monomials,
            index,
        }
    }
}

/// Monomials of `W1` of weighted degree `degree` whose length `|a|` lies in
/// `min_len..=max_len`, in descending lexicographic order.
pub fn monomials_by_length(k: usize, degree: u32, min_len: u32, max_len: u32) -> Vec<Monomial> {
    fn go(
        k: usize,
        var: usize,
        remaining: u32,
        len: u32,
        bounds: (u32, u32),
        exps: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        let v = var as u32;
        if var == k {
            if remaining.is_multiple_of(v) {
                let l = len + remaining / v;
                if l >= bounds.0 && l <= bounds.1 {
                    exps[var - 1] = remaining / v;
                    out.push(Monomial::from_exponents(exps.clone()));
                    exps[var - 1] = 0;
                }
            }
            return;
        }
        // the remaining degree needs at least remaining/k more factors
        if len + remaining.div_ceil(k as u32) > bounds.1 || len + remaining / v < bounds.0 {
            return;
        }
        for a in (0..=(remaining / v).min(bounds.1 - len)).rev() {
            exps[var - 1] = a;
            go(k, var + 1, remaining - a * v, len + a, bounds, exps, out);
        }
        exps[var - 1] = 0;
    }
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    let mut exps = vec![0u32; k];
    go(k, 1, degree, 0, (min_len, max_len), &mut exps, &mut out);
    out
}

/// All monomials of weighted degree `degree`, descending lexicographic order.
pub fn monomials_of_degree(k: usize, flavor: Flavor, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; k];
    fill(k, flavor.first_variable(), degree, &mut exps, &mut out);
    out
}

fn fill(k: usize, var: usize, remaining: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if var > k {
        if remaining == 0 {
            out.push(Monomial::from_exponents(exps.clone()));
        }
        return;
    }
    if var == k {
        if remaining.is_multiple_of(k as u32) {
            exps[var - 1] = remaining / k as u32;
            out.push(Monomial::from_exponents(exps.clone()));
            exps[var - 1] = 0;
        }
        return;
    }
    let max = remaining / var as u32;
    for a in (0..=max).rev() {
        exps[var - 1] = a;
        fill(k, var + 1, remaining - a * var as u32, exps, out);
    }
    exps[var - 1] = 0;
}

/// Visit the degree-`degree` monomials of `W1` in ascending lexicographic
/// order without materialising the slice. The visitor returns `false` to stop.
pub fn visit_ascending(k: usize, degree: u32, mut visit: impl FnMut(&Monomial) -> bool) {
    fn go(
        k: usize,
        var: usize,
        remaining: u32,
        exps: &mut Vec<u32>,
        visit: &mut dyn FnMut(&Monomial) -> bool,
    ) -> bool {
        if var == k {
            if remaining.is_multiple_of(k as u32) {
                exps[var - 1] = remaining / k as u32;
                let keep = visit(&Monomial::from_exponents(exps.clone()));
                exps[var - 1] = 0;
                return keep;
            }
            return true;
        }
        let max = remaining / var as u32;
        for a in 0..=max {
            exps[var - 1] = a;
            if !go(k, var + 1, remaining - a * var as u32, exps, visit) {
                exps[var - 1] = 0;
                return false;
            }
        }
        exps[var - 1] = 0;
        true
    }
    let mut exps = vec![0u32; k];
    go(k, 1, degree, &mut exps, &mut visit);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_count(k: usize, flavor: Flavor, d: u32) -> usize {
        // odometer over all exponent vectors with a_i <= d / i
        let start = flavor.first_variable();
        let bounds: Vec<u32> = (1..=k)
            .map(|i| if i < start { 0 } else { d / i as u32 })
            .collect();
        let mut exps = vec![0u32; k];
        let mut count = 0;
        loop {
            let deg: u32 = exps.iter().enumerate().map(|(i, a)| (i as u32 + 1) * a).sum();
            if deg == d {
                count += 1;
            }
            let mut pos = 0;
            loop {
                if pos == k {
                    return count;
                }
                if exps[pos] < bounds[pos] {
                    exps[pos] += 1;
                    break;
                }
                exps[pos] = 0;
                pos += 1;
            }
        }
    }

    #[test]
    fn small_slices() {
        let s = enumerate_slice(2, Flavor::W1, 2);
        let names: Vec<String> = s.monomials().iter().map(|m| m.to_string()).collect();
        assert_eq!(names, vec!["w1^2", "w2"]);

        let s = enumerate_slice(3, Flavor::W2, 6);
        let names: Vec<String> = s.monomials().iter().map(|m| m.to_string()).collect();
        assert_eq!(names, vec!["w2^3", "w3^2"]);

        let s = enumerate_slice(5, Flavor::W1, 0);
        assert_eq!(s.len(), 1);
        assert!(s.monomials()[0].is_one());
    }

    #[test]
    fn slice_sizes_match_brute_force() {
        for k in 1..=6 {
            for d in 0..=20 {
                for flavor in [Flavor::W1, Flavor::W2] {
                    let s = enumerate_slice(k, flavor, d);
                    assert_eq!(s.len(), brute_force_count(k, flavor, d), "k={k} d={d} {flavor:?}");
                    assert!(s.monomials().iter().all(|m| m.degree() == d));
                    assert!(s.monomials().windows(2).all(|w| w[0] > w[1]));
                }
            }
        }
    }

    #[test]
    fn ascending_visit_is_reverse_of_slice() {
        let s = enumerate_slice(4, Flavor::W1, 11);
        let mut seen = Vec::new();
        visit_ascending(4, 11, |m| {
            seen.push(m.clone());
            true
        });
        seen.reverse();
        assert_eq!(seen, s.monomials());
    }

    #[test]
    fn length_filter_matches_full_slice() {
        for k in 1..=5 {
            for d in 0..=18 {
                for (lo, hi) in [(0, 3), (2, 2), (4, 9), (0, 40)] {
                    let expected: Vec<Monomial> = monomials_of_degree(k, Flavor::W1, d)
                        .into_iter()
                        .filter(|m| m.length() >= lo && m.length() <= hi)
                        .collect();
                    assert_eq!(monomials_by_length(k, d, lo, hi), expected, "k={k} d={d}");
                }
            }
        }
    }

    #[test]
    fn display() {
        let m = Monomial::from_exponents(vec![2, 0, 1]);
        assert_eq!(m.to_string(), "w1^2 w3");
        assert_eq!(m.degree(), 5);
        assert_eq!(Monomial::one(3).to_string(), "1");
    }
}
