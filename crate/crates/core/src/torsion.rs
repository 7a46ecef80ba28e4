//! Detecting order-4 torsion in `H*(G~r_k(n); Z)` by mod-2 linear algebra.
//!
//! With `ker Sq^1` standing in for the image of integral reduction, degree
//! `d` carries 4-torsion iff one of the (equivalent) inclusions
//!
//! * `A2 = w1 (ker Sq^1)_{d-1}   ⊆  B2 = (Im w1)_d ∩ (Im Sq^1_L)_d`
//! * `A3 = w1 (ker Sq^1_L)_{d-1} ⊆  B3 = (Im w1)_d ∩ (Im Sq^1)_d`
//!
//! is strict. `dim B - dim A` is reported as the multiplicity of `d`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2_algebra::{intersection_basis, intersection_dim, BitMatrix, BitVec, F2Polynomial, Monomial, Span};
use crate::grassmann_ring::{CohomologyClass, QuotientRing};
use crate::steenrod_ops::{operation_matrices, OpKind};

/// Which of the two equivalent strictness conditions to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Condition {
    /// `w1 ker Sq^1 ⊆ Im w1 ∩ Im Sq^1_L`
    Two,
    /// `w1 ker Sq^1_L ⊆ Im w1 ∩ Im Sq^1`
    Three,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCounts {
    pub degree: u32,
    pub dim: usize,
    pub a2: usize,
    pub b2: usize,
    pub a3: usize,
    pub b3: usize,
}

impl DegreeCounts {
    pub fn multiplicity(&self, c: Condition) -> usize {
        match c {
            Condition::Two => self.b2 - self.a2,
            Condition::Three => self.b3 - self.a3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionReport {
    pub k: usize,
    pub n: usize,
    /// Highest degree scanned.
    pub max_degree: u32,
    /// Whether the scan reached the top degree `k(n-k)`.
    pub complete: bool,
    pub counts: Vec<DegreeCounts>,
}

impl TorsionReport {
    pub fn multiplicities(&self, c: Condition) -> Vec<usize> {
        self.counts.iter().map(|x| x.multiplicity(c)).collect()
    }

    /// Each degree repeated by its multiplicity, ascending.
    pub fn degree_multiset(&self, c: Condition) -> Vec<u32> {
        self.counts
            .iter()
            .flat_map(|x| std::iter::repeat_n(x.degree, x.multiplicity(c)))
            .collect()
    }

    pub fn has_torsion(&self, c: Condition) -> bool {
        self.counts.iter().any(|x| x.multiplicity(c) > 0)
    }

    /// Degrees where the two conditions give different multiplicities.
    pub fn discrepancies(&self) -> Vec<u32> {
        self.counts
            .iter()
            .filter(|x| x.multiplicity(Condition::Two) != x.multiplicity(Condition::Three))
            .map(|x| x.degree)
            .collect()
    }

    /// The flat serialisable form.
    pub fn summary(&self) -> TorsionSummary {
        TorsionSummary {
            k: self.k,
            n: self.n,
            max_degree: self.max_degree,
            complete: self.complete,
            dims: self.counts.iter().map(|x| x.dim).collect(),
            multiplicities2: self.multiplicities(Condition::Two),
            multiplicities3: self.multiplicities(Condition::Three),
            degrees: self.degree_multiset(Condition::Two),
            degrees3: self.degree_multiset(Condition::Three),
            discrepancies: self.discrepancies(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionSummary {
    pub k: usize,
    pub n: usize,
    pub max_degree: u32,
    pub complete: bool,
    /// `dim H^d(Gr_k(n))` for `d = 0..=max_degree`.
    pub dims: Vec<usize>,
    pub multiplicities2: Vec<usize>,
    pub multiplicities3: Vec<usize>,
    /// Degree multiset from condition (2).
    pub degrees: Vec<u32>,
    /// Degree multiset from condition (3).
    pub degrees3: Vec<u32>,
    pub discrepancies: Vec<u32>,
}

/// The four subspaces of `H^d`, as spans.
struct Subspaces {
    a2: Span,
    b2_parts: (Span, Span),
    a3: Span,
    b3_parts: (Span, Span),
}

fn subspaces(ring: &QuotientRing, d: u32) -> Result<Subspaces> {
    let dim = ring.dim(d);
    if d == 0 {
        let e = || Span::new(dim);
        return Ok(Subspaces {
            a2: e(),
            b2_parts: (e(), e()),
            a3: e(),
            b3_parts: (e(), e()),
        });
    }
    let ops = operation_matrices(ring, d - 1)?;
    let w1 = &ops.w1.matrix;
    let image = |m: &BitMatrix| Span::from_vectors(dim, m.rows());
    let w1_of_kernel = |m: &BitMatrix| {
        let ker = m.left_kernel();
        Span::from_vectors(dim, ker.iter().map(|v| w1.apply(v)).collect::<Vec<_>>().iter())
    };
    let im_w1 = image(w1);
    Ok(Subspaces {
        a2: w1_of_kernel(&ops.sq1.matrix),
        b2_parts: (im_w1.clone(), image(&ops.sq1l.matrix)),
        a3: w1_of_kernel(&ops.sq1l.matrix),
        b3_parts: (im_w1, image(&ops.sq1.matrix)),
    })
}

fn counts_in_degree(ring: &QuotientRing, d: u32) -> Result<DegreeCounts> {
    let s = subspaces(ring, d)?;
    let contained = |a: &Span, (u, v): &(Span, Span)| a.basis().iter().all(|x| u.contains(x) && v.contains(x));
    if !contained(&s.a2, &s.b2_parts) || !contained(&s.a3, &s.b3_parts) {
        return Err(Error::Invariant(format!(
            "Gr_{}({}) degree {d}: A is not contained in B",
            ring.k(),
            ring.n()
        )));
    }
    Ok(DegreeCounts {
        degree: d,
        dim: ring.dim(d),
        a2: s.a2.dim(),
        b2: intersection_dim(&s.b2_parts.0, &s.b2_parts.1),
        a3: s.a3.dim(),
        b3: intersection_dim(&s.b3_parts.0, &s.b3_parts.1),
    })
}

/// Scan every built degree of `ring`.
pub fn torsion4_scan_ring(ring: &QuotientRing) -> Result<TorsionReport> {
    let counts = (0..=ring.max_degree())
        .into_par_iter()
        .map(|d| counts_in_degree(ring, d))
        .collect::<Result<Vec<_>>>()?;
    Ok(TorsionReport {
        k: ring.k(),
        n: ring.n(),
        max_degree: ring.max_degree(),
        complete: ring.max_degree() == ring.top_degree(),
        counts,
    })
}

/// Build `Gr_k(n)` through `max_degree` (default: all) and scan it.
pub fn torsion4_scan(k: usize, n: usize, max_degree: Option<u32>) -> Result<TorsionReport> {
    torsion4_scan_ring(&QuotientRing::build(k, n, max_degree)?)
}

/// `t` with `2^{t-1} < n <= 2^t`.
pub fn two_power_exponent(n: usize) -> u32 {
    assert!(n >= 1);
    usize::BITS - (n - 1).leading_zeros()
}

/// `d_n = w1^{2^t - 1}`.
pub fn d_class(k: usize, n: usize) -> F2Polynomial {
    let t = two_power_exponent(n);
    let m = Monomial::generator(k, 1);
    F2Polynomial::from_monomial(pow(&m, (1 << t) - 1), crate::f2_algebra::Flavor::W1)
}

/// `a_n = w1^{2^{t-1} - 1} w_k^{n - 2^{t-1}}`.
pub fn a_class(k: usize, n: usize) -> F2Polynomial {
    let t = two_power_exponent(n);
    assert!(t >= 1, "a_n needs n >= 2");
    let half = 1usize << (t - 1);
    let m = pow(&Monomial::generator(k, 1), half as u32 - 1)
        .mul(&pow(&Monomial::generator(k, k), (n - half) as u32));
    F2Polynomial::from_monomial(m, crate::f2_algebra::Flavor::W1)
}

fn pow(m: &Monomial, e: u32) -> Monomial {
    Monomial::from_exponents(m.exponents().iter().map(|a| a * e).collect())
}

/// A class in `B \ A`, with the solves that certify `z ∈ B`.
#[derive(Clone, Debug)]
pub struct Witness {
    pub degree: u32,
    pub condition: Condition,
    pub class: CohomologyClass,
    /// `"d_n"` or `"a_n"` when the witness is one of those classes.
    pub name: Option<String>,
    /// `z = w1 * z1`.
    pub w1_preimage: CohomologyClass,
    /// `z = Sq^1_L(a)` for condition (2), `z = Sq^1(a)` for condition (3).
    pub op_preimage: CohomologyClass,
}

/// Find a strictness witness in degree `d`. `d_n` and `a_n` are tried
/// first under both conditions; otherwise the first basis vector of some
/// `B` outside `A` is used (condition (2) before (3)).
pub fn witness_class(ring: &QuotientRing, d: u32) -> Result<Witness> {
    if d == 0 || d > ring.top_degree() {
        return Err(Error::NoWitness(d));
    }
    ring.ensure_degree(d)?;
    let s = subspaces(ring, d)?;
    let parts = |c| match c {
        Condition::Two => (&s.a2, &s.b2_parts),
        Condition::Three => (&s.a3, &s.b3_parts),
    };
    let qualifies = |c, z: &BitVec| {
        let (a, (u, v)) = parts(c);
        u.contains(z) && v.contains(z) && !a.contains(z)
    };
    let conditions = [Condition::Two, Condition::Three];

    let mut found = None;
    'named: for (name, p) in [("d_n", d_class(ring.k(), ring.n())), ("a_n", a_class(ring.k(), ring.n()))] {
        if p.homogeneous_degree()? != Some(d) {
            continue;
        }
        let z = ring.reduce(&p)?;
        for c in conditions {
            if qualifies(c, z.coords()) {
                found = Some((c, z.coords().clone(), Some(name.to_string())));
                break 'named;
            }
        }
    }
    if found.is_none() {
        found = conditions.into_iter().find_map(|c| {
            let (a, (u, v)) = parts(c);
            intersection_basis(u, v)
                .into_iter()
                .find(|z| !a.contains(z))
                .map(|z| (c, z, None))
        });
    }
    let Some((condition, z, name)) = found else {
        return Err(Error::NoWitness(d));
    };
    let class = ring.class(d, z)?;
    let op = match condition {
        Condition::Two => OpKind::Sq1L,
        Condition::Three => OpKind::Sq1,
    };
    let solve = |kind| -> Result<CohomologyClass> {
        crate::steenrod_ops::preimage(ring, kind, &class)?
            .ok_or_else(|| Error::Invariant(format!("witness in degree {d} has no {kind:?} preimage")))
    };
    Ok(Witness {
        degree: d,
        condition,
        w1_preimage: solve(OpKind::MultW1)?,
        op_preimage: solve(op)?,
        class,
        name,
    })
}

/// `dim ker(w1: H^d -> H^{d+1})` for each determined degree; the first
/// nonzero entry sits at `crk + 1`.
pub fn anomalous_degrees(ring: &QuotientRing) -> Vec<usize> {
    ring.ker_coker_w1().iter().map(|x| x.ker_dim()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperBoundCheck {
    pub k: usize,
    pub n: usize,
    pub t: u32,
    pub d_degree: u32,
    pub a_degree: u32,
    pub d_nonzero: bool,
    pub d_in_ker_w1: bool,
    pub a_nonzero: bool,
    pub a_in_ker_w1: bool,
}

impl UpperBoundCheck {
    pub fn holds(&self) -> bool {
        self.d_nonzero && self.d_in_ker_w1 && self.a_nonzero && self.a_in_ker_w1
    }
}

/// Check that `d_n` and `a_n` are nonzero elements of `ker w1`, which bounds
/// the characteristic rank by `min(deg d_n, deg a_n) - 1`.
pub fn upper_bound_check(ring: &QuotientRing) -> Result<UpperBoundCheck> {
    let (k, n) = (ring.k(), ring.n());
    let t = two_power_exponent(n);
    if k < 5 || n < 2 || (1usize << (t - 1)) < k {
        return Err(Error::InvalidParameters(format!(
            "need 5 <= k <= 2^(t-1) < n <= 2^t, got k = {k}, n = {n}"
        )));
    }
    let w1 = F2Polynomial::generator(k, 1, crate::f2_algebra::Flavor::W1);
    let probe = |p: &F2Polynomial| -> Result<(u32, bool, bool)> {
        let deg = p.homogeneous_degree()?.expect("nonzero monomial");
        let x = ring.reduce(p)?;
        let y = ring.multiply_poly(&x, &w1)?;
        Ok((deg, !x.is_zero(), y.is_zero()))
    };
    let (d_degree, d_nonzero, d_in_ker_w1) = probe(&d_class(k, n))?;
    let (a_degree, a_nonzero, a_in_ker_w1) = probe(&a_class(k, n))?;
    Ok(UpperBoundCheck {
        k,
        n,
        t,
        d_degree,
        a_degree,
        d_nonzero,
        d_in_ker_w1,
        a_nonzero,
        a_in_ker_w1,
    })
}
