//! `Sq^1` and the twisted `Sq^1_L = Sq^1 + w1` on polynomials and on
//! `H*(Gr_k(n))`.
//!
//! On generators `Sq^1 w_{2i} = w1 w_{2i} + w_{2i+1}` and
//! `Sq^1 w_{2i+1} = w1 w_{2i+1}`, with `w_{k+1} = 0`: the ambient is
//! `H*(BO(k))`, not a free ring on `k + 1` variables.
//!
//! Matrices go from `H^d` to `H^{d+1}`. Kernels in degree `d` use the map
//! leaving `d`; images in degree `d` use the map arriving at `d`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2_algebra::{BitMatrix, BitVec, F2Polynomial, Flavor, Monomial, Span};
use crate::grassmann_ring::{CohomologyClass, QuotientRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OpKind {
    Sq1,
    Sq1L,
    MultW1,
}

/// `Sq^1` of a single monomial.
pub fn sq1_monomial(m: &Monomial) -> F2Polynomial {
    let k = m.k();
    let mut out = F2Polynomial::zero(k, Flavor::W1);
    if k == 0 {
        return out;
    }
    // each odd exponent contributes one copy of w1 * m
    let odd = m.exponents().iter().filter(|&&a| a % 2 == 1).count();
    if odd % 2 == 1 {
        out.add_assign_poly(&F2Polynomial::from_monomial(m.times_generator(1, 1), Flavor::W1));
    }
    // w_{2i} -> w_{2i+1} terms
    for i in (2..k).step_by(2) {
        if m.exp(i) % 2 == 1 {
            let t = m.div_generator(i).expect("odd exponent").times_generator(i + 1, 1);
            out.add_assign_poly(&F2Polynomial::from_monomial(t, Flavor::W1));
        }
    }
    out
}

pub fn sq1_poly(p: &F2Polynomial) -> F2Polynomial {
    let mut out = F2Polynomial::zero(p.k(), Flavor::W1);
    for m in p.terms() {
        out.add_assign_poly(&sq1_monomial(m));
    }
    out
}

/// `Sq^1_L(p) = Sq^1(p) + w1 p`.
pub fn sq1l_poly(p: &F2Polynomial) -> F2Polynomial {
    let w1 = Monomial::generator(p.k(), 1);
    &sq1_poly(p) + &p.to_w1().times_monomial(&w1)
}

pub fn apply_poly(kind: OpKind, p: &F2Polynomial) -> F2Polynomial {
    match kind {
        OpKind::Sq1 => sq1_poly(p),
        OpKind::Sq1L => sq1l_poly(p),
        OpKind::MultW1 => p.to_w1().times_monomial(&Monomial::generator(p.k(), 1)),
    }
}

/// An operation `H^d -> H^{d+1}` in canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperationMatrix {
    pub kind: OpKind,
    pub degree: u32,
    pub matrix: BitMatrix,
}

#[derive(Clone, Debug)]
pub struct OperationMatrices {
    pub sq1: OperationMatrix,
    pub sq1l: OperationMatrix,
    pub w1: OperationMatrix,
}

impl OperationMatrices {
    pub fn get(&self, kind: OpKind) -> &OperationMatrix {
        match kind {
            OpKind::Sq1 => &self.sq1,
            OpKind::Sq1L => &self.sq1l,
            OpKind::MultW1 => &self.w1,
        }
    }
}

/// Matrix of `kind` from `H^d` to `H^{d+1}`: lift, apply, reduce.
pub fn operation_matrix(ring: &QuotientRing, kind: OpKind, d: u32) -> Result<BitMatrix> {
    ring.ensure_degree(d)?;
    ring.ensure_degree(d + 1)?;
    let (src, dst) = (ring.dim(d), ring.dim(d + 1));
    let basis = ring.basis(d);
    let rows = (0..src)
        .into_par_iter()
        .map(|s| {
            if dst == 0 {
                return Ok(BitVec::zeros(0));
            }
            let p = F2Polynomial::from_monomial(basis[s].clone(), Flavor::W1);
            Ok(ring.reduce_in_degree(&apply_poly(kind, &p), d + 1)?.coords().clone())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BitMatrix::from_rows(dst, rows))
}

pub fn operation_matrices(ring: &QuotientRing, d: u32) -> Result<OperationMatrices> {
    let make = |kind| -> Result<OperationMatrix> {
        Ok(OperationMatrix {
            kind,
            degree: d,
            matrix: operation_matrix(ring, kind, d)?,
        })
    };
    let sq1 = make(OpKind::Sq1)?;
    let w1 = make(OpKind::MultW1)?;
    let sq1l = OperationMatrix {
        kind: OpKind::Sq1L,
        degree: d,
        matrix: sq1.matrix.add(&w1.matrix),
    };
    Ok(OperationMatrices { sq1, sq1l, w1 })
}

/// Kernel of `kind` leaving `H^d` and image of `kind` arriving in `H^d`.
#[derive(Clone, Debug)]
pub struct KerIm {
    pub degree: u32,
    pub kernel: Vec<BitVec>,
    pub image: Span,
}

pub fn ker_im(ring: &QuotientRing, kind: OpKind, d: u32) -> Result<KerIm> {
    let dim = ring.dim(d);
    let kernel = if d == ring.top_degree() {
        (0..dim).map(|i| BitVec::unit(dim, i)).collect()
    } else {
        operation_matrix(ring, kind, d)?.left_kernel()
    };
    let image = if d == 0 {
        Span::new(dim)
    } else {
        Span::from_vectors(dim, operation_matrix(ring, kind, d - 1)?.rows())
    };
    Ok(KerIm {
        degree: d,
        kernel,
        image,
    })
}

/// Apply `kind` to a class.
pub fn apply(ring: &QuotientRing, kind: OpKind, x: &CohomologyClass) -> Result<CohomologyClass> {
    if x.ring() != (ring.k(), ring.n()) {
        return Err(Error::InvalidParameters("class from a different ring".into()));
    }
    let p = ring.lift(x);
    ring.reduce_in_degree(&apply_poly(kind, &p), x.degree() + 1)
}

/// A preimage of `x` under `kind` (from degree `deg x - 1`), if any.
pub fn preimage(
    ring: &QuotientRing,
    kind: OpKind,
    x: &CohomologyClass,
) -> Result<Option<CohomologyClass>> {
    let d = x.degree();
    if d == 0 {
        return Ok(x.is_zero().then(|| x.clone()));
    }
    let m = operation_matrix(ring, kind, d - 1)?;
    let mut span = Span::tracked(m.width(), m.nrows());
    for r in m.rows() {
        span.insert(r.clone());
    }
    match span.solve(x.coords()) {
        Some(c) => Ok(Some(ring.class(d - 1, c)?)),
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2_algebra::parse_polynomial;

    fn poly(k: usize, s: &str) -> F2Polynomial {
        parse_polynomial(k, s).unwrap()
    }

    #[test]
    fn generator_formulas() {
        assert_eq!(sq1_poly(&poly(3, "w2")), poly(3, "w1 w2 + w3"));
        assert_eq!(sq1_poly(&poly(2, "w2")), poly(2, "w1 w2"));
        assert_eq!(sq1_poly(&poly(3, "w3")), poly(3, "w1 w3"));
        assert!(sq1_poly(&poly(3, "w1^2")).is_zero());
        assert_eq!(sq1_poly(&poly(4, "w1^15")), poly(4, "w1^16"));
        assert_eq!(sq1l_poly(&F2Polynomial::one(3, Flavor::W1)), poly(3, "w1"));
    }

    #[test]
    fn matrices_small() {
        let r = QuotientRing::build(1, 3, None).unwrap();
        assert_eq!(operation_matrix(&r, OpKind::Sq1, 1).unwrap(), BitMatrix::identity(1));
        let ki = ker_im(&r, OpKind::Sq1, 0).unwrap();
        assert_eq!(ki.kernel.len(), r.dim(0));
        assert_eq!(ki.image.dim(), 0);
    }

    #[test]
    fn w1_power_memberships_gr5_16() {
        let r = QuotientRing::build(5, 16, None).unwrap();
        let x = r.reduce(&poly(5, "w1^15")).unwrap();
        assert!(apply(&r, OpKind::Sq1, &x).unwrap().is_zero());
        assert!(apply(&r, OpKind::Sq1L, &x).unwrap().is_zero());
        assert!(preimage(&r, OpKind::Sq1, &x).unwrap().is_none());
        let y = r.reduce(&poly(5, "w1^14")).unwrap();
        assert_eq!(apply(&r, OpKind::Sq1L, &y).unwrap(), x);
    }
}
