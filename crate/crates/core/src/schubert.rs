//! Partitions, hooks and 2-cores, used as an independent handle on powers of
//! `w1` through the Schubert basis.
//!
//! Mod 2 the coefficient of `s_λ` in `w1^{|λ|}` is the parity of the number
//! of standard Young tableaux of shape `λ`, so the height of `w1` can be read
//! off from which partitions in the `k × (n-k)` box have an odd count.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2_algebra::{F2Polynomial, Flavor};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Trailing zeros are dropped; the parts must be weakly decreasing.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::InvalidParameters(format!(
                "{parts:?} is not a partition"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: vec![] }
    }

    /// `(a, 1^{b})`.
    pub fn hook(arm: u32, leg: u32) -> Self {
        assert!(arm >= 1);
        let mut parts = vec![arm];
        parts.extend(std::iter::repeat_n(1, leg as usize));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// At most `rows` parts, each at most `cols`.
    pub fn in_box(&self, rows: usize, cols: u32) -> bool {
        self.parts.len() <= rows && self.parts.first().is_none_or(|&p| p <= cols)
    }

    pub fn hook_lengths(&self) -> HookData {
        let conj = self.conjugate();
        let rows = self
            .parts
            .iter()
            .enumerate()
            .map(|(i, &li)| {
                (0..li as usize)
                    .map(|j| li - j as u32 + conj.parts[j] - i as u32 - 1)
                    .collect()
            })
            .collect();
        HookData { rows }
    }

    /// Beta numbers `λ_i + (len - i)` for `len >= self.len()` entries.
    fn beta_set(&self, len: usize) -> Vec<u32> {
        (0..len)
            .map(|i| self.parts.get(i).copied().unwrap_or(0) + (len - 1 - i) as u32)
            .collect()
    }

    fn from_beta_set(mut beta: Vec<u32>) -> Partition {
        beta.sort_unstable_by(|a, b| b.cmp(a));
        let len = beta.len();
        let parts = beta
            .iter()
            .enumerate()
            .map(|(i, &b)| b - (len - 1 - i) as u32)
            .collect();
        Partition::new(parts).expect("beta sets give partitions")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Hook lengths by row; `rows[i][j]` is the hook of cell `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HookData {
    pub rows: Vec<Vec<u32>>,
}

impl HookData {
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.rows.iter().flatten().copied()
    }

    pub fn count(&self, len: u32) -> usize {
        self.iter().filter(|&h| h == len).count()
    }
}

/// `ν2(n!)` by Legendre's formula.
pub fn nu2_factorial(n: u32) -> u32 {
    n - n.count_ones()
}

/// Parity of the number of standard Young tableaux of shape `λ`.
pub fn syt_parity(lambda: &Partition) -> bool {
    let hooks: u32 = lambda.hook_lengths().iter().map(u32::trailing_zeros).sum();
    nu2_factorial(lambda.size()) == hooks
}

/// Every partition obtained by removing one rim hook of length `p`; empty
/// iff `λ` is a `p`-core.
pub fn rim_hook_removal(lambda: &Partition, p: u32) -> Vec<Partition> {
    assert!(p >= 1);
    let len = lambda.len() + p as usize;
    let beta = lambda.beta_set(len);
    let mut out: Vec<Partition> = beta
        .iter()
        .enumerate()
        .filter(|&(_, &b)| b >= p && !beta.contains(&(b - p)))
        .map(|(i, &b)| {
            let mut moved = beta.clone();
            moved[i] = b - p;
            Partition::from_beta_set(moved)
        })
        .collect();
    out.sort();
    out
}

/// The `p`-core, removing the first available rim hook each time.
pub fn core(lambda: &Partition, p: u32) -> Partition {
    let mut cur = lambda.clone();
    while let Some(next) = rim_hook_removal(&cur, p).into_iter().next() {
        cur = next;
    }
    cur
}

/// SYT parity via 2-power rim hooks: with `2^t <= |λ| < 2^{t+1}`, odd iff
/// there is exactly one hook of length `2^t` and what remains after removing
/// its rim hook is odd again.
pub fn syt_parity_via_cores(lambda: &Partition) -> bool {
    let size = lambda.size();
    if size <= 1 {
        return true;
    }
    let p = 1u32 << (31 - size.leading_zeros());
    let removals = rim_hook_removal(lambda, p);
    removals.len() == 1 && syt_parity_via_cores(&removals[0])
}

/// Partitions of `size` with at most `rows` parts, each at most `cols`, in
/// reverse lexicographic order.
pub fn partitions_in_box(rows: usize, cols: u32, size: u32) -> Vec<Partition> {
    fn go(rows: usize, max: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        if rows == 0 || (rows as u64) * (max as u64) < left as u64 {
            return;
        }
        for part in (1..=max.min(left)).rev() {
            cur.push(part);
            go(rows - 1, part, left - part, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    go(rows, cols, size, &mut vec![], &mut out);
    out
}

/// The Schubert support of `w1^p` in `H*(Gr_k(n); F2)`.
pub fn w1_power_support(k: usize, n: usize, p: u32) -> Vec<Partition> {
    assert!(k <= n);
    partitions_in_box(k, (n - k) as u32, p)
        .into_iter()
        .filter(syt_parity)
        .collect()
}

/// Largest `p` with `w1^p != 0`, from the Schubert support alone.
pub fn height_w1_oracle(k: usize, n: usize) -> u32 {
    let top = (k * (n - k)) as u32;
    (0..=top)
        .rev()
        .find(|&p| !w1_power_support(k, n, p).is_empty())
        .unwrap_or(0)
}

/// `s_λ` as a polynomial in `w_1..w_k`: `det(w_{λ'_i - i + j})`.
pub fn schubert_to_monomials(lambda: &Partition, k: usize) -> Result<F2Polynomial> {
    let conj = lambda.conjugate();
    if conj.parts.first().is_some_and(|&c| c as usize > k) {
        return Err(Error::InvalidParameters(format!(
            "{lambda} has a column longer than {k}"
        )));
    }
    let m = conj.len();
    let entry = |i: usize, j: usize| -> F2Polynomial {
        let idx = conj.parts[i] as i64 - i as i64 + j as i64;
        match idx {
            0 => F2Polynomial::one(k, Flavor::W1),
            i if i < 0 || i as usize > k => F2Polynomial::zero(k, Flavor::W1),
            i => F2Polynomial::generator(k, i as usize, Flavor::W1),
        }
    };
    // Laplace expansion along rows, memoised on the set of used columns.
    fn minor(
        row: usize,
        used: u32,
        m: usize,
        entry: &dyn Fn(usize, usize) -> F2Polynomial,
        memo: &mut HashMap<u32, F2Polynomial>,
        k: usize,
    ) -> F2Polynomial {
        if row == m {
            return F2Polynomial::one(k, Flavor::W1);
        }
        if let Some(p) = memo.get(&used) {
            return p.clone();
        }
        let mut acc = F2Polynomial::zero(k, Flavor::W1);
        for col in 0..m {
            if used & (1 << col) != 0 {
                continue;
            }
            let e = entry(row, col);
            if e.is_zero() {
                continue;
            }
            let rest = minor(row + 1, used | (1 << col), m, entry, memo, k);
            acc.add_assign_poly(&e.multiply(&rest).expect("same ambient"));
        }
        memo.insert(used, acc.clone());
        acc
    }
    Ok(minor(0, 0, m, &entry, &mut HashMap::new(), k))
}
