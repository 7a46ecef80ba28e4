//! Relations among `q_{n-k+1}, ..., q_n` over `W2`, their boundaries in
//! `ker w1`, the ascending/descending operators, the deficiency dichotomy
//! and separating-monomial certificates.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::char_classes::{lower_p, lower_q, lucas_coefficient};
use crate::error::{Error, Result};
use crate::f2_algebra::{monomials_of_degree, BitMatrix, DegreeSlice, F2Polynomial, Flavor, Monomial, Span};

/// `(c_0, ..., c_{k-1})` with `Σ c_j q_{n-j} = 0` in `W2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTuple {
    pub k: usize,
    pub n: usize,
    pub degree: u32,
    pub coeffs: Vec<F2Polynomial>,
}

impl RelationTuple {
    /// Checks shape, homogeneity and the relation itself.
    pub fn new(k: usize, n: usize, degree: u32, coeffs: Vec<F2Polynomial>) -> Result<Self> {
        let r = RelationTuple { k, n, degree, coeffs };
        r.validate()?;
        Ok(r)
    }

    pub fn zero(k: usize, n: usize, degree: u32) -> Self {
        RelationTuple {
            k,
            n,
            degree,
            coeffs: vec![F2Polynomial::zero(k, Flavor::W2); k],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(F2Polynomial::is_zero)
    }

    /// `Σ c_j q_{n-j}`.
    pub fn evaluate(&self) -> F2Polynomial {
        let mut acc = F2Polynomial::zero(self.k, Flavor::W2);
        for (j, c) in self.coeffs.iter().enumerate() {
            let q = lower_q(self.k, self.n as i64 - j as i64);
            acc.add_assign_poly(&c.multiply(&q).expect("same k"));
        }
        acc
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidRelation(msg));
        if self.coeffs.len() != self.k {
            return bad(format!("expected {} coefficients, got {}", self.k, self.coeffs.len()));
        }
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.k() != self.k || c.terms().any(|m| m.exp(1) != 0) {
                return bad(format!("c_{j} is not a W2 polynomial in k = {} variables", self.k));
            }
            if let Some(d) = c.homogeneous_degree()? {
                if d as usize + self.n - j != self.degree as usize {
                    return bad(format!("c_{j} has degree {d}, expected {}", self.degree as i64 - (self.n - j) as i64));
                }
            }
        }
        if !self.evaluate().is_zero() {
            return bad(format!("Σ c_j q_(n-j) != 0 for n = {}", self.n));
        }
        Ok(())
    }
}

/// The generators `w^b q_{n-j}` of degree `d`, as `(j, b)`, in a fixed order.
fn product_labels(k: usize, n: usize, d: u32) -> Vec<(usize, Monomial)> {
    let mut out = vec![];
    for j in 0..k.min(n) {
        let qi = (n - j) as u32;
        if qi > d {
            continue;
        }
        for b in monomials_of_degree(k, Flavor::W2, d - qi) {
            out.push((j, b));
        }
    }
    out
}

/// A basis of all homogeneous relations of degree `d`.
pub fn relations_in_degree(k: usize, n: usize, d: u32) -> Result<Vec<RelationTuple>> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameters(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    let labels = product_labels(k, n, d);
    let slice = DegreeSlice::from_monomials(k, Flavor::W2, d, monomials_of_degree(k, Flavor::W2, d));
    let mut m = BitMatrix::new(slice.len());
    for (j, b) in &labels {
        let g = lower_q(k, (n - j) as i64).times_monomial(b);
        m.push_row(g.to_coordinates(&slice)?);
    }
    let mut out = vec![];
    for v in m.left_kernel() {
        let mut coeffs = vec![F2Polynomial::zero(k, Flavor::W2); k];
        for i in v.ones() {
            let (j, b) = &labels[i];
            coeffs[*j].add_assign_poly(&F2Polynomial::from_monomial(b.clone(), Flavor::W2));
        }
        let r = RelationTuple { k, n, degree: d, coeffs };
        r.validate()
            .map_err(|e| Error::Invariant(format!("kernel vector is not a relation: {e}")))?;
        out.push(r);
    }
    Ok(out)
}

/// Smallest degree `<= max_degree` carrying a nonzero relation.
pub fn first_relation_degree(k: usize, n: usize, max_degree: u32) -> Result<Option<u32>> {
    for d in (n + 1 - k) as u32..=max_degree {
        if !relations_in_degree(k, n, d)?.is_empty() {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// `Σ c_j p_{n-j}` in `W1`, of degree `deg r - 1`.
pub fn koszul_boundary(r: &RelationTuple) -> Result<F2Polynomial> {
    r.validate()?;
    let mut acc = F2Polynomial::zero(r.k, Flavor::W1);
    for (j, c) in r.coeffs.iter().enumerate() {
        let p = lower_p(r.k, r.n as i64 - j as i64);
        acc.add_assign_poly(&c.to_w1().multiply(&p)?);
    }
    Ok(acc)
}

fn w2(k: usize, i: usize) -> F2Polynomial {
    if i < 2 || i > k {
        F2Polynomial::zero(k, Flavor::W2)
    } else {
        F2Polynomial::generator(k, i, Flavor::W2)
    }
}

fn times(a: &F2Polynomial, b: &F2Polynomial) -> F2Polynomial {
    a.multiply(b).expect("same k")
}

/// The descended relation at `n - 1`, same degree:
/// `(c_1, c_0 w_2 + c_2, ..., c_0 w_{k-1} + c_{k-1}, c_0 w_k)`.
pub fn descend(r: &RelationTuple) -> Result<RelationTuple> {
    r.validate()?;
    let k = r.k;
    if r.n <= k {
        return Err(Error::InvalidParameters(format!("cannot descend below n = k = {k}")));
    }
    let c = &r.coeffs;
    let coeffs = (0..k)
        .map(|j| {
            let next = c.get(j + 1).cloned().unwrap_or_else(|| F2Polynomial::zero(k, Flavor::W2));
            &next + &times(&c[0], &w2(k, j + 1))
        })
        .collect();
    RelationTuple::new(k, r.n - 1, r.degree, coeffs)
        .map_err(|e| Error::Invariant(format!("descended relation is invalid: {e}")))
}

/// The ascended relation at `n + 1`, of degree `deg r + k`:
/// `(c_{k-1}, c_0 w_k, c_1 w_k + c_{k-1} w_2, ..., c_{k-2} w_k + c_{k-1} w_{k-1})`.
pub fn ascend(r: &RelationTuple) -> Result<RelationTuple> {
    r.validate()?;
    let k = r.k;
    let c = &r.coeffs;
    let wk = w2(k, k);
    let coeffs = (0..k)
        .map(|j| match j {
            0 => c[k - 1].clone(),
            _ => &times(&c[j - 1], &wk) + &times(&c[k - 1], &w2(k, j)),
        })
        .collect();
    RelationTuple::new(k, r.n + 1, r.degree + k as u32, coeffs)
        .map_err(|e| Error::Invariant(format!("ascended relation is invalid: {e}")))
}

/// `0` if some `q_j`, `n-k < j <= n`, lies in the `W2`-span of the others,
/// `1` otherwise.
pub fn deficiency(k: usize, n: usize) -> Result<u8> {
    if k < 2 || k > n {
        return Err(Error::InvalidParameters(format!("need 2 <= k <= n, got k = {k}, n = {n}")));
    }
    for j in (n - k + 1)..=n {
        let slice = DegreeSlice::from_monomials(k, Flavor::W2, j as u32, monomials_of_degree(k, Flavor::W2, j as u32));
        let mut span = Span::new(slice.len());
        for i in (n - k + 1)..j {
            let qi = lower_q(k, i as i64);
            for g in monomials_of_degree(k, Flavor::W2, (j - i) as u32) {
                span.insert(qi.times_monomial(&g).to_coordinates(&slice)?);
            }
        }
        if span.contains(&lower_q(k, j as i64).to_coordinates(&slice)?) {
            return Ok(0);
        }
    }
    Ok(1)
}

/// `w^b q_j`, recorded by exponents of `w^b` (length `k`, no `w1`) and `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorLabel {
    pub multiplier_exponents: Vec<u32>,
    pub q_index: usize,
}

/// Monomials `m_1..m_r` and generators `g_1..g_r` such that the matrix of
/// coefficients of `m_i` in `g_j` is lower unitriangular, which proves the
/// generators linearly independent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatingCertificate {
    pub k: usize,
    pub n: usize,
    pub degree: u32,
    pub generators: Vec<GeneratorLabel>,
    pub monomials: Vec<Vec<u32>>,
    /// `matrix[i][j]` = coefficient of `monomials[i]` in `generators[j]`.
    pub matrix: Vec<Vec<u8>>,
}

/// Coefficient of `m` in `w^b q_j`: `w^b` must divide `m` and the quotient
/// must have pairwise disjoint binary exponents.
pub fn coefficient(m: &Monomial, g: &GeneratorLabel) -> bool {
    let b = Monomial::from_exponents(g.multiplier_exponents.clone());
    match m.checked_div(&b) {
        Some(rest) => rest.exp(1) == 0 && rest.degree() as usize == g.q_index && lucas_coefficient(rest.exponents()),
        None => false,
    }
}

impl SeparatingCertificate {
    /// Compute the matrix for the given rows and columns.
    pub fn from_parts(k: usize, n: usize, degree: u32, generators: Vec<GeneratorLabel>, monomials: Vec<Vec<u32>>) -> Self {
        let matrix = monomials
            .iter()
            .map(|m| {
                let m = Monomial::from_exponents(m.clone());
                generators.iter().map(|g| coefficient(&m, g) as u8).collect()
            })
            .collect();
        SeparatingCertificate { k, n, degree, generators, monomials, matrix }
    }

    /// Whether the generators are all products `w^b q_j` of this degree,
    /// so that independence means there is no relation in this degree.
    pub fn is_complete(&self) -> bool {
        let have: HashSet<_> = self.generators.iter().collect();
        let all = product_labels(self.k, self.n, self.degree);
        have.len() == self.generators.len()
            && all.len() == have.len()
            && all.iter().all(|(j, b)| {
                have.contains(&GeneratorLabel {
                    multiplier_exponents: b.exponents().to_vec(),
                    q_index: self.n - j,
                })
            })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::MalformedCertificate(e.to_string()))
    }
}

/// Recompute every entry and check lower unitriangularity.
///
/// Errors on shape problems; `Ok(false)` means the certificate is well formed
/// but does not prove independence.
pub fn verify_certificate(cert: &SeparatingCertificate) -> Result<bool> {
    let r = cert.generators.len();
    let malformed = |msg: String| Err(Error::MalformedCertificate(msg));
    if cert.monomials.len() != r || cert.matrix.len() != r || cert.matrix.iter().any(|row| row.len() != r) {
        return malformed(format!(
            "{} generators, {} monomials, matrix {}x{:?}",
            r,
            cert.monomials.len(),
            cert.matrix.len(),
            cert.matrix.first().map(Vec::len)
        ));
    }
    for g in &cert.generators {
        let b = &g.multiplier_exponents;
        let deg: usize = b.iter().enumerate().map(|(i, &e)| (i + 1) * e as usize).sum();
        if b.len() != cert.k
            || b.first().is_some_and(|&e| e != 0)
            || g.q_index + cert.k <= cert.n
            || g.q_index > cert.n
            || deg + g.q_index != cert.degree as usize
        {
            return malformed(format!("bad generator {g:?}"));
        }
    }
    for m in &cert.monomials {
        let deg: usize = m.iter().enumerate().map(|(i, &e)| (i + 1) * e as usize).sum();
        if m.len() != cert.k || m.first().is_some_and(|&e| e != 0) || deg != cert.degree as usize {
            return malformed(format!("bad monomial {m:?}"));
        }
    }
    let fresh = SeparatingCertificate::from_parts(cert.k, cert.n, cert.degree, cert.generators.clone(), cert.monomials.clone());
    if fresh.matrix != cert.matrix {
        return Ok(false);
    }
    let unitriangular = (0..r).all(|i| cert.matrix[i][i] == 1 && cert.matrix[i][i + 1..].iter().all(|&x| x == 0));
    Ok(unitriangular)
}

/// Greedy peeling: repeatedly take a generator with a monomial that no other
/// remaining generator contains (fewest monomials first). If any certificate
/// exists, the first generator of it is always available to peel, so a
/// failure here means none exists.
pub fn find_certificate(k: usize, n: usize, d: u32) -> Result<Option<SeparatingCertificate>> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameters(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    let labels = product_labels(k, n, d);
    let mut supports: Vec<(GeneratorLabel, Vec<Monomial>)> = labels
        .into_iter()
        .map(|(j, b)| {
            let g = lower_q(k, (n - j) as i64).times_monomial(&b);
            let label = GeneratorLabel {
                multiplier_exponents: b.exponents().to_vec(),
                q_index: n - j,
            };
            (label, g.terms().cloned().collect())
        })
        .collect();
    supports.sort_by_key(|(_, s)| s.len());

    let mut counts: BTreeMap<Monomial, usize> = BTreeMap::new();
    for (_, s) in &supports {
        for m in s {
            *counts.entry(m.clone()).or_default() += 1;
        }
    }
    let mut alive = vec![true; supports.len()];
    let mut generators = vec![];
    let mut monomials = vec![];
    for _ in 0..supports.len() {
        let pick = (0..supports.len())
            .filter(|&i| alive[i])
            .find_map(|i| supports[i].1.iter().find(|m| counts[*m] == 1).map(|m| (i, m.clone())));
        let Some((i, m)) = pick else {
            return Ok(None);
        };
        alive[i] = false;
        for x in &supports[i].1 {
            *counts.get_mut(x).expect("counted") -= 1;
        }
        generators.push(supports[i].0.clone());
        monomials.push(m.exponents().to_vec());
    }
    let cert = SeparatingCertificate::from_parts(k, n, d, generators, monomials);
    if !verify_certificate(&cert)? {
        return Err(Error::Invariant("greedy certificate failed verification".into()));
    }
    Ok(Some(cert))
}

/// The hand-built separating tables for `Gr_5(2^t - 1)` in degree
/// `2^t - 3 + offset`, `offset ∈ {0, 1, 2}`, `t >= 4`.
pub fn appendix_certificate(t: u32, offset: u32) -> Result<SeparatingCertificate> {
    if t < 4 || offset > 2 {
        return Err(Error::InvalidParameters(format!("need t >= 4 and offset <= 2, got t = {t}, offset = {offset}")));
    }
    let big = 1u32 << t;
    let n = (big - 1) as usize;
    let e = |pairs: &[(usize, u32)]| {
        let mut v = vec![0u32; 5];
        for &(i, x) in pairs {
            v[i - 1] += x;
        }
        v
    };
    let g = |pairs: &[(usize, u32)], j: u32| GeneratorLabel {
        multiplier_exponents: e(pairs),
        q_index: (big - j) as usize,
    };
    let (a, b) = (big / 2, big / 4);
    let (generators, monomials, matrix): (Vec<GeneratorLabel>, Vec<Vec<u32>>, Vec<Vec<u8>>) = match offset {
        0 => (
            vec![g(&[], 3), g(&[(2, 1)], 5)],
            vec![e(&[(4, b - 2), (5, 1)]), e(&[(2, a - 3), (3, 1)])],
            vec![vec![1, 0], vec![0, 1]],
        ),
        1 => (
            vec![g(&[(3, 1)], 5), g(&[(2, 1)], 4), g(&[], 2)],
            vec![e(&[(3, 2), (4, b - 2)]), e(&[(2, a - 3), (4, 1)]), e(&[(4, b - 3), (5, 2)])],
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        ),
        _ => (
            vec![g(&[(2, 1)], 3), g(&[(3, 1)], 4), g(&[(4, 1)], 5), g(&[(2, 2)], 5), g(&[], 1)],
            vec![
                e(&[(2, a - 3), (5, 1)]),
                e(&[(2, a - 7), (3, 1), (5, 2)]),
                e(&[(3, 1), (4, b - 1)]),
                e(&[(2, 2), (3, 1), (4, b - 2)]),
                e(&[(2, a - 2), (3, 1)]),
            ],
            vec![
                vec![1, 0, 0, 0, 0],
                vec![1, 1, 0, 0, 0],
                vec![0, 1, 1, 0, 0],
                vec![0, 0, 0, 1, 0],
                vec![0, 1, 0, 1, 1],
            ],
        ),
    };
    Ok(SeparatingCertificate {
        k: 5,
        n,
        degree: big - 3 + offset,
        generators,
        monomials,
        matrix,
    })
}
