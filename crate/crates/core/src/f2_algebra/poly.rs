use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::ops::Add;

use crate::error::{Error, Result};

use super::bits::BitVec;
use super::monomial::{DegreeSlice, Flavor, Monomial};

/// A polynomial over F2 in `w_1, ..., w_k`, stored as its set of monomials.
///
/// Addition is symmetric difference. A `W2`-flavoured polynomial never
/// contains `w_1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Polynomial {
    k: usize,
    flavor: Flavor,
    terms: BTreeSet<Monomial>,
}

impl F2Polynomial {
    pub fn zero(k: usize, flavor: Flavor) -> Self {
        F2Polynomial {
            k,
            flavor,
            terms: BTreeSet::new(),
        }
    }

    pub fn one(k: usize, flavor: Flavor) -> Self {
        Self::from_monomial(Monomial::one(k), flavor)
    }

    /// `w_i` as a polynomial. `w_1` forces the `W1` flavour.
    pub fn generator(k: usize, i: usize, flavor: Flavor) -> Self {
        assert!(!(i == 1 && flavor == Flavor::W2), "w1 is not in W2");
        Self::from_monomial(Monomial::generator(k, i), flavor)
    }

    pub fn from_monomial(m: Monomial, flavor: Flavor) -> Self {
        debug_assert!(flavor == Flavor::W1 || m.k() == 0 || m.exp(1) == 0);
        let mut terms = BTreeSet::new();
        let k = m.k();
        terms.insert(m);
        F2Polynomial { k, flavor, terms }
    }

    /// Build from a list of monomials; repeated monomials cancel in pairs.
    pub fn from_monomials(
        k: usize,
        flavor: Flavor,
        monomials: impl IntoIterator<Item = Monomial>,
    ) -> Self {
        let mut p = Self::zero(k, flavor);
        for m in monomials {
            assert_eq!(m.k(), k);
            assert!(
                flavor == Flavor::W1 || k == 0 || m.exp(1) == 0,
                "W2 polynomial cannot contain w1"
            );
            p.toggle(m);
        }
        p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    fn toggle(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    /// The common degree of all terms; `None` for zero.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        let mut it = self.terms.iter().map(Monomial::degree);
        let Some(first) = it.next() else {
            return Ok(None);
        };
        for d in it {
            if d != first {
                return Err(Error::NotHomogeneous(first, d));
            }
        }
        Ok(Some(first))
    }

    /// The inclusion `W2 -> W1`; the identity on `W1`.
    pub fn to_w1(&self) -> F2Polynomial {
        F2Polynomial {
            k: self.k,
            flavor: Flavor::W1,
            terms: self.terms.clone(),
        }
    }

    /// Reduction `W1 -> W2`: drop every term containing `w_1`.
    pub fn to_w2(&self) -> F2Polynomial {
        F2Polynomial {
            k: self.k,
            flavor: Flavor::W2,
            terms: self
                .terms
                .iter()
                .filter(|m| m.exp(1) == 0)
                .cloned()
                .collect(),
        }
    }

    pub fn try_add(&self, other: &F2Polynomial) -> Result<F2Polynomial> {
        if self.k != other.k {
            return Err(Error::AmbientMismatch(self.k, other.k));
        }
        let terms = self
            .terms
            .symmetric_difference(&other.terms)
            .cloned()
            .collect();
        Ok(F2Polynomial {
            k: self.k,
            flavor: join(self.flavor, other.flavor),
            terms,
        })
    }

    pub fn add_assign_poly(&mut self, other: &F2Polynomial) {
        assert_eq!(self.k, other.k, "ambient mismatch");
        self.flavor = join(self.flavor, other.flavor);
        for m in &other.terms {
            self.toggle(m.clone());
        }
    }

    pub fn multiply(&self, other: &F2Polynomial) -> Result<F2Polynomial> {
        if self.k != other.k {
            return Err(Error::AmbientMismatch(self.k, other.k));
        }
        let mut acc: HashSet<Monomial> = HashSet::new();
        for a in &self.terms {
            for b in &other.terms {
                let m = a.mul(b);
                if !acc.remove(&m) {
                    acc.insert(m);
                }
            }
        }
        Ok(F2Polynomial {
            k: self.k,
            flavor: join(self.flavor, other.flavor),
            terms: acc.into_iter().collect(),
        })
    }

    /// Multiply by a single monomial.
    pub fn times_monomial(&self, m: &Monomial) -> F2Polynomial {
        assert_eq!(self.k, m.k());
        let flavor = if m.k() > 0 && m.exp(1) > 0 {
            Flavor::W1
        } else {
            self.flavor
        };
        F2Polynomial {
            k: self.k,
            flavor,
            terms: self.terms.iter().map(|t| t.mul(m)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> F2Polynomial {
        let mut acc = F2Polynomial::one(self.k, self.flavor);
        for _ in 0..e {
            acc = acc.multiply(self).expect("same ambient");
        }
        acc
    }

    /// Indicator vector over a slice of the same degree.
    pub fn to_coordinates(&self, slice: &DegreeSlice) -> Result<BitVec> {
        if self.k != slice.k() {
            return Err(Error::AmbientMismatch(self.k, slice.k()));
        }
        if let Some(d) = self.homogeneous_degree()? {
            if d != slice.degree() {
                return Err(Error::WrongDegree {
                    expected: slice.degree(),
                    found: d,
                });
            }
        }
        let mut v = BitVec::zeros(slice.len());
        for m in &self.terms {
            let pos = slice
                .position(m)
                .ok_or_else(|| Error::MissingMonomial(m.to_string()))?;
            v.set(pos, true);
        }
        Ok(v)
    }

    /// Inverse of [`to_coordinates`](Self::to_coordinates).
    pub fn from_coordinates(v: &BitVec, slice: &DegreeSlice) -> F2Polynomial {
        let mut p = F2Polynomial::zero(slice.k(), slice.flavor());
        for i in v.ones() {
            p.terms.insert(slice.monomials()[i].clone());
        }
        p
    }
}

fn join(a: Flavor, b: Flavor) -> Flavor {
    if a == Flavor::W2 && b == Flavor::W2 {
        Flavor::W2
    } else {
        Flavor::W1
    }
}

impl Add for &F2Polynomial {
    type Output = F2Polynomial;

    fn add(self, rhs: &F2Polynomial) -> F2Polynomial {
        self.try_add(rhs).expect("ambient mismatch")
    }
}

impl fmt::Display for F2Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // largest monomial first, matching slice order
        for (i, m) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for F2Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parse a sum like `w1^2 + w2 w3 + 1`. Used by the CLI and tests.
pub fn parse_polynomial(k: usize, text: &str) -> Result<F2Polynomial> {
    let mut p = F2Polynomial::zero(k, Flavor::W1);
    let text = text.trim();
    if text == "0" {
        return Ok(p);
    }
    for term in text.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::InvalidParameters(format!("empty term in '{text}'")));
        }
        let mut m = Monomial::one(k);
        if term != "1" {
            for factor in term.split(|c: char| c.is_whitespace() || c == '*') {
                if factor.is_empty() {
                    continue;
                }
                let bad = || Error::InvalidParameters(format!("cannot parse factor '{factor}'"));
                let rest = factor.strip_prefix('w').ok_or_else(bad)?;
                let (idx, e) = match rest.split_once('^') {
                    Some((i, e)) => (i, e.parse::<u32>().map_err(|_| bad())?),
                    None => (rest, 1),
                };
                let idx: usize = idx.parse().map_err(|_| bad())?;
                if idx == 0 || idx > k {
                    return Err(Error::InvalidParameters(format!(
                        "w{idx} out of range for k = {k}"
                    )));
                }
                m = m.times_generator(idx, e);
            }
        }
        p.toggle(m);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(k: usize, i: usize) -> F2Polynomial {
        F2Polynomial::generator(k, i, Flavor::W1)
    }

    #[test]
    fn char_two_products() {
        let k = 3;
        let w1 = w(k, 1);
        assert_eq!(w1.multiply(&w1).unwrap().to_string(), "w1^2");

        let s = &w(k, 2) + &w(k, 3);
        assert_eq!(s.multiply(&s).unwrap().to_string(), "w2^2 + w3^2");

        let one = F2Polynomial::one(k, Flavor::W1);
        let a = &one + &w(k, 2);
        let b = &(&one + &w(k, 2)) + &w(k, 2).pow(2);
        assert_eq!(a.multiply(&b).unwrap().to_string(), "w2^3 + 1");
    }

    #[test]
    fn mismatched_ambient() {
        let a = F2Polynomial::one(2, Flavor::W1);
        let b = F2Polynomial::one(3, Flavor::W1);
        assert_eq!(a.multiply(&b), Err(Error::AmbientMismatch(2, 3)));
    }

    #[test]
    fn coordinates() {
        use super::super::monomial::enumerate_slice;
        let s = enumerate_slice(2, Flavor::W1, 2);
        let zero = F2Polynomial::zero(2, Flavor::W1);
        assert!(zero.to_coordinates(&s).unwrap().is_zero());
        let w1sq = w(2, 1).pow(2);
        let v = w1sq.to_coordinates(&s).unwrap();
        assert!(v.get(0) && !v.get(1));

        let s6 = enumerate_slice(3, Flavor::W2, 6);
        let p = parse_polynomial(3, "w2^3 + w3^2").unwrap().to_w2();
        assert_eq!(p.to_coordinates(&s6).unwrap().count_ones(), 2);

        let bad = parse_polynomial(2, "w1 + w2").unwrap();
        assert!(matches!(bad.to_coordinates(&s), Err(Error::NotHomogeneous(..))));
        assert!(matches!(w(2, 1).to_coordinates(&s), Err(Error::WrongDegree { .. })));
    }

    #[test]
    fn parse_round_trip() {
        let p = parse_polynomial(4, "w1^3 w4 + w2*w2 + 1 + 1").unwrap();
        assert_eq!(p.to_string(), "w1^3 w4 + w2^2");
        assert!(parse_polynomial(2, "w3").is_err());
    }
}
