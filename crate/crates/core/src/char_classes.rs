//! The dual classes `Q_j`, `q_j`, `P_j` and `p_j`.
//!
//! `Q_j` are the Stiefel–Whitney classes of the inverse bundle in
//! `F2[w1..wk]`, `q_j` the same without `w1`, `p_j` the unique classes with
//! `w1 p_j = Q_j + q_j` and `P_j = w1 p_j`. Families are computed by their
//! linear recursions and memoised; the multinomial closed form is exposed
//! separately as an independent check.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::f2_algebra::{monomials_of_degree, F2Polynomial, Flavor, Monomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassKind {
    /// `Q_j`, recursion `Q_j = sum_{i=1..k} w_i Q_{j-i}`.
    UpperQ,
    /// `q_j`, recursion `q_j = sum_{l=2..k} w_l q_{j-l}`.
    LowerQ,
    /// `P_j = Q_j + q_j`.
    UpperP,
    /// `p_j`, recursion `p_j = Q_{j-1} + sum_{l=2..k} w_l p_{j-l}`.
    LowerP,
}

impl ClassKind {
    pub fn flavor(self) -> Flavor {
        match self {
            ClassKind::LowerQ => Flavor::W2,
            _ => Flavor::W1,
        }
    }
}

/// One memoised family of classes for a fixed `k`.
///
/// Entries are appended in index order under a write lock, so readers only
/// ever observe completed values.
pub struct ClassFamily {
    k: usize,
    kind: ClassKind,
    cache: RwLock<Vec<Arc<F2Polynomial>>>,
}

impl ClassFamily {
    pub fn new(k: usize, kind: ClassKind) -> Self {
        assert!(k >= 1, "k must be positive");
        ClassFamily {
            k,
            kind,
            cache: RwLock::new(Vec::new()),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn kind(&self) -> ClassKind {
        self.kind
    }

    pub fn get(&self, j: i64) -> Arc<F2Polynomial> {
        if j < 0 {
            return Arc::new(F2Polynomial::zero(self.k, self.kind.flavor()));
        }
        let j = j as usize;
        if let Some(p) = self.cache.read().expect("poisoned").get(j) {
            return p.clone();
        }
        let mut cache = self.cache.write().expect("poisoned");
        while cache.len() <= j {
            let next = self.compute(cache.len(), &cache);
            cache.push(Arc::new(next));
        }
        cache[j].clone()
    }

    fn compute(&self, j: usize, prev: &[Arc<F2Polynomial>]) -> F2Polynomial {
        let k = self.k;
        let at = |i: isize| -> Option<&F2Polynomial> {
            (i >= 0).then(|| prev[i as usize].as_ref())
        };
        let j = j as isize;
        match self.kind {
            ClassKind::UpperQ => {
                if j == 0 {
                    return F2Polynomial::one(k, Flavor::W1);
                }
                recurse(k, Flavor::W1, 1, j, &at)
            }
            ClassKind::LowerQ => {
                if j == 0 {
                    return F2Polynomial::one(k, Flavor::W2);
                }
                recurse(k, Flavor::W2, 2, j, &at)
            }
            ClassKind::LowerP => {
                let mut acc = recurse(k, Flavor::W1, 2, j, &at);
                if j >= 1 {
                    acc.add_assign_poly(&upper_q(k, j as i64 - 1));
                }
                acc
            }
            ClassKind::UpperP => {
                let mut acc = (*upper_q(k, j as i64)).clone();
                acc.add_assign_poly(&lower_q(k, j as i64).to_w1());
                acc
            }
        }
    }
}

/// `sum_{i=first..k} w_i * prev(j - i)`.
fn recurse<'a>(
    k: usize,
    flavor: Flavor,
    first: usize,
    j: isize,
    prev: &impl Fn(isize) -> Option<&'a F2Polynomial>,
) -> F2Polynomial {
    let mut acc = F2Polynomial::zero(k, flavor);
    for i in first..=k {
        if let Some(p) = prev(j - i as isize) {
            acc.add_assign_poly(&p.times_monomial(&Monomial::generator(k, i)));
        }
    }
    acc
}

type Registry = Mutex<HashMap<(usize, ClassKind), Arc<ClassFamily>>>;

/// Process-wide family for `(k, kind)`.
pub fn family(k: usize, kind: ClassKind) -> Arc<ClassFamily> {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    let reg = REGISTRY.get_or_init(Default::default);
    reg.lock()
        .expect("poisoned")
        .entry((k, kind))
        .or_insert_with(|| Arc::new(ClassFamily::new(k, kind)))
        .clone()
}

pub fn upper_q(k: usize, j: i64) -> Arc<F2Polynomial> {
    family(k, ClassKind::UpperQ).get(j)
}

/// `q_j` in `W2`.
pub fn lower_q(k: usize, j: i64) -> Arc<F2Polynomial> {
    family(k, ClassKind::LowerQ).get(j)
}

/// `q_j` relabelled into `W1`.
pub fn q_tilde(k: usize, j: i64) -> F2Polynomial {
    lower_q(k, j).to_w1()
}

pub fn upper_p(k: usize, j: i64) -> Arc<F2Polynomial> {
    family(k, ClassKind::UpperP).get(j)
}

/// `p_j`, of degree `j - 1`.
pub fn lower_p(k: usize, j: i64) -> Arc<F2Polynomial> {
    family(k, ClassKind::LowerP).get(j)
}

/// The multinomial coefficient `|a|! / prod a_i!` mod 2: odd iff the
/// binary expansions of the exponents are pairwise disjoint.
pub fn lucas_coefficient(exponents: &[u32]) -> bool {
    let mut seen = 0u32;
    for &a in exponents {
        if seen & a != 0 {
            return false;
        }
        seen |= a;
    }
    true
}

/// Closed form: the Lucas-admissible monomials of degree `j`.
///
/// For `UpperQ` these range over `W1`, for `LowerQ` over `W2`, for `UpperP`
/// over `W1` with `a_1 >= 1`; `LowerP` is `UpperP / w1`.
pub fn closed_form(k: usize, kind: ClassKind, j: i64) -> F2Polynomial {
    if j < 0 {
        return F2Polynomial::zero(k, kind.flavor());
    }
    let admissible = |flavor| {
        monomials_of_degree(k, flavor, j as u32)
            .into_iter()
            .filter(|m| lucas_coefficient(m.exponents()))
    };
    match kind {
        ClassKind::UpperQ => F2Polynomial::from_monomials(k, Flavor::W1, admissible(Flavor::W1)),
        ClassKind::LowerQ => F2Polynomial::from_monomials(k, Flavor::W2, admissible(Flavor::W2)),
        ClassKind::UpperP => F2Polynomial::from_monomials(
            k,
            Flavor::W1,
            admissible(Flavor::W1).filter(|m| m.exp(1) >= 1),
        ),
        ClassKind::LowerP => {
            if j == 0 {
                return F2Polynomial::zero(k, Flavor::W1);
            }
            F2Polynomial::from_monomials(
                k,
                Flavor::W1,
                monomials_of_degree(k, Flavor::W1, j as u32)
                    .into_iter()
                    .filter(|m| m.exp(1) >= 1 && lucas_coefficient(m.exponents()))
                    .map(|m| m.div_generator(1).expect("a1 >= 1")),
            )
        }
    }
}

/// `w_i` with the conventions `w_0 = 1` and `w_i = 0` outside `0..=k`.
pub fn w(k: usize, i: i64) -> F2Polynomial {
    if i == 0 {
        F2Polynomial::one(k, Flavor::W1)
    } else if i < 0 || i as usize > k {
        F2Polynomial::zero(k, Flavor::W1)
    } else {
        F2Polynomial::generator(k, i as usize, Flavor::W1)
    }
}

/// The total class `1 + w_1 + ... + w_k` truncated to degree `d`, times
/// `1 + Q_1 + Q_2 + ...`, in degree `d`. Zero for `d >= 1` (Whitney sum).
pub fn whitney_product(k: usize, d: i64) -> F2Polynomial {
    let mut acc = F2Polynomial::zero(k, Flavor::W1);
    for i in 0..=(k as i64).min(d) {
        acc.add_assign_poly(&w(k, i).multiply(&upper_q(k, d - i)).expect("same k"));
    }
    acc
}
