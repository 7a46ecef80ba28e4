//! Exact identities among the characteristic-class families in the free
//! rings `W1`/`W2`, checked symbolically.

use serde::{Deserialize, Serialize};

use crate::char_classes::{lower_p, lower_q, q_tilde, upper_q, w};
use crate::f2_algebra::{F2Polynomial, Flavor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    /// `Σ_{i even} w_i p_{2^t - i} = w1^{2^t - 1}` (with `w_0 = 1`).
    EvenP,
    /// `Σ_{i odd} w_i Q_{2^t - i} = w1^{2^t}`.
    OddQ,
    /// `Σ_{i even} w_i q_{2^t - i} = 0`.
    EvenQRelation,
    /// `Σ_{i > 1 odd} w_i q_{2^t - i} = 0`.
    OddQRelation,
    /// `w1 p_j = Q_j + q~_j`; the parameter is `j`.
    W1P,
    /// `Q_{2^t - 1} = w1^{2^t - 1} + w3 p_{2^t - 3}`, for `k ∈ {3, 4}`.
    LowRankQ,
}

impl Identity {
    pub const ALL: [Identity; 6] = [
        Identity::EvenP,
        Identity::OddQ,
        Identity::EvenQRelation,
        Identity::OddQRelation,
        Identity::W1P,
        Identity::LowRankQ,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub identity: Identity,
    pub k: usize,
    /// `t` for the 2-power identities, `j` for [`Identity::W1P`].
    pub param: u32,
    pub holds: bool,
}

fn sum_over(k: usize, indices: impl Iterator<Item = usize>, f: impl Fn(usize) -> F2Polynomial) -> F2Polynomial {
    let mut acc = F2Polynomial::zero(k, Flavor::W1);
    for i in indices {
        acc.add_assign_poly(&w(k, i as i64).multiply(&f(i)).expect("same k"));
    }
    acc
}

fn w1_pow(k: usize, e: u32) -> F2Polynomial {
    F2Polynomial::generator(k, 1, Flavor::W1).pow(e)
}

/// The two sides of an identity, as `W1` polynomials.
pub fn sides(identity: Identity, k: usize, param: u32) -> (F2Polynomial, F2Polynomial) {
    let big = 1i64 << param;
    let zero = F2Polynomial::zero(k, Flavor::W1);
    match identity {
        Identity::EvenP => (
            sum_over(k, (0..=k).step_by(2), |i| (*lower_p(k, big - i as i64)).clone()),
            w1_pow(k, (big - 1) as u32),
        ),
        Identity::OddQ => (
            sum_over(k, (1..=k).step_by(2), |i| (*upper_q(k, big - i as i64)).clone()),
            w1_pow(k, big as u32),
        ),
        Identity::EvenQRelation => (
            sum_over(k, (0..=k).step_by(2), |i| lower_q(k, big - i as i64).to_w1()),
            zero,
        ),
        Identity::OddQRelation => (
            sum_over(k, (3..=k).step_by(2), |i| lower_q(k, big - i as i64).to_w1()),
            zero,
        ),
        Identity::W1P => {
            let j = param as i64;
            (
                w1_pow(k, 1).multiply(&lower_p(k, j)).expect("same k"),
                &*upper_q(k, j) + &q_tilde(k, j),
            )
        }
        Identity::LowRankQ => (
            (*upper_q(k, big - 1)).clone(),
            &w1_pow(k, (big - 1) as u32) + &w(k, 3).multiply(&lower_p(k, big - 3)).expect("same k"),
        ),
    }
}

pub fn check(identity: Identity, k: usize, param: u32) -> IdentityCheck {
    let (lhs, rhs) = sides(identity, k, param);
    IdentityCheck {
        identity,
        k,
        param,
        holds: lhs == rhs,
    }
}

/// The standard battery: `EvenP`/`OddQ` for `k ∈ {4,5,6}`, `t ∈ {3,4}`; the
/// two `q` relations for `k ≤ 7`, `t ≤ 5` (with `2^t ≥ k`); `W1P` for
/// `j ≤ 40`, `k ≤ 7`; `LowRankQ` for `k ∈ {3,4}`, `t ≤ 5`.
pub fn standard_checks() -> Vec<IdentityCheck> {
    let mut out = vec![];
    for k in 4..=6 {
        for t in 3..=4 {
            out.push(check(Identity::EvenP, k, t));
            out.push(check(Identity::OddQ, k, t));
        }
    }
    for k in 2..=7 {
        for t in 1..=5u32 {
            if (1usize << t) >= k {
                out.push(check(Identity::EvenQRelation, k, t));
                out.push(check(Identity::OddQRelation, k, t));
            }
        }
    }
    for k in 1..=7 {
        for j in 0..=40 {
            out.push(check(Identity::W1P, k, j));
        }
    }
    for k in 3..=4 {
        for t in 2..=5 {
            out.push(check(Identity::LowRankQ, k, t));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn battery_holds() {
        let checks = standard_checks();
        let failed: Vec<_> = checks.iter().filter(|c| !c.holds).collect();
        assert!(failed.is_empty(), "{failed:?}");
    }

    #[test]
    fn a_false_variant_fails() {
        // dropping the w0 term breaks the even identity
        let (lhs, rhs) = sides(Identity::EvenP, 5, 4);
        let p16 = (*lower_p(5, 16)).clone();
        assert_ne!(&lhs + &p16, rhs);
        // the low-rank identity is specific to k <= 4
        assert!(!check(Identity::LowRankQ, 5, 4).holds);
    }
}
