//! Randomised property suites shared by the `properties` and `acceptance`
//! targets. Each suite takes a case count and reports the first failure.
#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use rand::{Rng, SeedableRng};

use ogr_core::char_classes::upper_q;
use ogr_core::f2_algebra::{monomials_of_degree, BitMatrix, BitVec, F2Polynomial, Flavor, Monomial};
use ogr_core::grassmann_ring::{pullback, pushforward, CohomologyClass, QuotientRing};
use ogr_core::koszul::{self, RelationTuple};
use ogr_core::schubert::{core, rim_hook_removal, syt_parity, syt_parity_via_cores, Partition};
use ogr_core::steenrod_ops::{self, apply, sq1_poly, sq1l_poly, OpKind};

pub const CASES: u32 = 10_000;

pub fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

/// Fully built rings, shared across cases.
pub fn ring(k: usize, n: usize) -> Arc<QuotientRing> {
    ring_to(k, n, None)
}

pub fn ring_to(k: usize, n: usize, max_degree: Option<u32>) -> Arc<QuotientRing> {
    type Rings = Mutex<HashMap<(usize, usize, Option<u32>), Arc<QuotientRing>>>;
    static RINGS: OnceLock<Rings> = OnceLock::new();
    let rings = RINGS.get_or_init(Default::default);
    if let Some(r) = rings.lock().unwrap().get(&(k, n, max_degree)) {
        return r.clone();
    }
    let r = Arc::new(QuotientRing::build(k, n, max_degree).expect("ring builds"));
    rings.lock().unwrap().entry((k, n, max_degree)).or_insert(r).clone()
}

fn random_class(r: &QuotientRing, d: u32, seed: u64) -> CohomologyClass {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let bits: Vec<bool> = (0..r.dim(d)).map(|_| rng.gen()).collect();
    r.class(d, BitVec::from_bools(&bits)).unwrap()
}

fn one(r: &QuotientRing) -> CohomologyClass {
    r.reduce_in_degree(&F2Polynomial::one(r.k(), Flavor::W1), 0).unwrap()
}

fn polynomial(k: usize, terms: &[Vec<u32>]) -> F2Polynomial {
    F2Polynomial::from_monomials(k, Flavor::W1, terms.iter().map(|e| Monomial::from_exponents(e.clone())))
}

fn poly_strategy(k: usize) -> impl Strategy<Value = F2Polynomial> {
    prop::collection::vec(prop::collection::vec(0u32..4, k), 0..6).prop_map(move |t| polynomial(k, &t))
}

fn mul(a: &F2Polynomial, b: &F2Polynomial) -> F2Polynomial {
    a.multiply(b).unwrap()
}

/// Commutative, associative, distributive, unital and of characteristic 2,
/// in the free rings and in several quotients.
pub fn ring_axioms(cases: u32) -> Result<(), String> {
    const RINGS: [(usize, usize); 4] = [(3, 7), (4, 8), (3, 9), (5, 10)];
    let free = (1usize..=5).prop_flat_map(|k| (poly_strategy(k), poly_strategy(k), poly_strategy(k)));
    let quotient = (0..RINGS.len(), 0u32..=1000, 0u32..=1000, 0u32..=1000, any::<[u64; 4]>());
    run(cases, (free, quotient), |((p, q, s), (ri, a, b, c, seeds))| {
        prop_assert!((&p + &p).is_zero());
        prop_assert_eq!(mul(&p, &q), mul(&q, &p));
        prop_assert_eq!(mul(&mul(&p, &q), &s), mul(&p, &mul(&q, &s)));
        prop_assert_eq!(mul(&p, &(&q + &s)), &mul(&p, &q) + &mul(&p, &s));

        let (k, n) = RINGS[ri];
        let r = ring(k, n);
        let top = r.top_degree();
        let da = a % (top + 1);
        let db = b % (top + 1 - da);
        let dc = c % (top + 1 - da - db);
        let x = random_class(&r, da, seeds[0]);
        let y = random_class(&r, db, seeds[1]);
        let y2 = random_class(&r, db, seeds[2]);
        let z = random_class(&r, dc, seeds[3]);
        let m = |u: &CohomologyClass, v: &CohomologyClass| r.multiply(u, v).unwrap();
        prop_assert!(x.add(&x).unwrap().is_zero());
        prop_assert_eq!(m(&x, &y), m(&y, &x));
        prop_assert_eq!(m(&m(&x, &y), &z), m(&x, &m(&y, &z)));
        prop_assert_eq!(m(&x, &y.add(&y2).unwrap()), m(&x, &y).add(&m(&x, &y2)).unwrap());
        prop_assert_eq!(m(&one(&r), &x), x);
        Ok(())
    })
}

/// `Sq^1` is a derivation squaring to zero, on polynomials and on classes.
pub fn sq1_derivation(cases: u32) -> Result<(), String> {
    let free = (1usize..=6).prop_flat_map(|k| (poly_strategy(k), poly_strategy(k)));
    run(cases, (free, 0u32..=1000, 0u32..=1000, any::<[u64; 2]>()), |((p, q), a, b, seeds)| {
        prop_assert_eq!(sq1_poly(&mul(&p, &q)), &mul(&sq1_poly(&p), &q) + &mul(&p, &sq1_poly(&q)));
        prop_assert!(sq1_poly(&sq1_poly(&p)).is_zero());
        prop_assert!(sq1l_poly(&sq1l_poly(&p)).is_zero());

        let r = ring(4, 9);
        let top = r.top_degree();
        let da = a % top;
        let db = b % (top - da);
        let x = random_class(&r, da, seeds[0]);
        let y = random_class(&r, db, seeds[1]);
        let m = |u: &CohomologyClass, v: &CohomologyClass| r.multiply(u, v).unwrap();
        let sq = |u: &CohomologyClass| apply(&r, OpKind::Sq1, u).unwrap();
        prop_assert_eq!(sq(&m(&x, &y)), m(&sq(&x), &y).add(&m(&x, &sq(&y))).unwrap());
        Ok(())
    })
}

struct OpTable {
    ring: Arc<QuotientRing>,
    sq1: Vec<BitMatrix>,
    sq1l: Vec<BitMatrix>,
    w1: Vec<BitMatrix>,
}

type OpTables = Mutex<HashMap<(usize, usize), Arc<OpTable>>>;

fn op_table(k: usize, n: usize) -> Arc<OpTable> {
    static TABLES: OnceLock<OpTables> = OnceLock::new();
    let tables = TABLES.get_or_init(Default::default);
    if let Some(t) = tables.lock().unwrap().get(&(k, n)) {
        return t.clone();
    }
    let r = ring(k, n);
    let mut t = OpTable {
        ring: r.clone(),
        sq1: vec![],
        sq1l: vec![],
        w1: vec![],
    };
    for d in 0..r.top_degree() {
        let m = steenrod_ops::operation_matrices(&r, d).unwrap();
        t.sq1.push(m.sq1.matrix);
        t.sq1l.push(m.sq1l.matrix);
        t.w1.push(m.w1.matrix);
    }
    let t = Arc::new(t);
    tables.lock().unwrap().insert((k, n), t.clone());
    t
}

/// The exact matrix identities in every degree of `Gr_k(n)`:
/// `Sq1∘w1 = w1∘Sq1L = Sq1∘Sq1L`, `Sq1L∘Sq1 = Sq1L∘w1 = w1∘Sq1`,
/// `Sq1∘Sq1 = Sq1L∘Sq1L = 0` (composites written right to left).
pub fn commutation_matrices(k: usize, n: usize) -> Result<(), String> {
    let t = op_table(k, n);
    for d in 0..t.sq1.len().saturating_sub(1) {
        let e = d + 1;
        let checks = [
            (t.w1[d].then(&t.sq1[e]), t.sq1l[d].then(&t.w1[e]), "Sq1 w1 = w1 Sq1L"),
            (t.w1[d].then(&t.sq1[e]), t.sq1l[d].then(&t.sq1[e]), "Sq1 w1 = Sq1 Sq1L"),
            (t.sq1[d].then(&t.sq1l[e]), t.w1[d].then(&t.sq1l[e]), "Sq1L Sq1 = Sq1L w1"),
            (t.sq1[d].then(&t.sq1l[e]), t.sq1[d].then(&t.w1[e]), "Sq1L Sq1 = w1 Sq1"),
        ];
        for (lhs, rhs, name) in checks {
            if lhs != rhs {
                return Err(format!("Gr_{k}({n}) degree {d}: {name} fails"));
            }
        }
        if !t.sq1[d].then(&t.sq1[e]).is_zero() || !t.sq1l[d].then(&t.sq1l[e]).is_zero() {
            return Err(format!("Gr_{k}({n}) degree {d}: a square is nonzero"));
        }
    }
    Ok(())
}

/// Matrix identities in all degrees, then random classes pushed through the
/// polynomial route (lift, operate, reduce) and compared with the matrices.
pub fn commutation(cases: u32) -> Result<(), String> {
    const RINGS: [(usize, usize); 2] = [(5, 15), (6, 16)];
    for (k, n) in RINGS {
        commutation_matrices(k, n)?;
    }
    run(cases, (0..RINGS.len(), 0u32..=1000, any::<u64>()), |(ri, d, seed)| {
        let (k, n) = RINGS[ri];
        let t = op_table(k, n);
        let r = &t.ring;
        let d = d % (r.top_degree() - 1);
        let x = random_class(r, d, seed);
        let op = |kind, u: &CohomologyClass| apply(r, kind, u).unwrap();
        let via = |m: &BitMatrix| m.apply(x.coords());
        let d = d as usize;
        for (kind, m) in [(OpKind::Sq1, &t.sq1[d]), (OpKind::Sq1L, &t.sq1l[d]), (OpKind::MultW1, &t.w1[d])] {
            prop_assert_eq!(op(kind, &x).coords().clone(), via(m));
        }
        let a = op(OpKind::Sq1, &op(OpKind::MultW1, &x));
        prop_assert_eq!(&a, &op(OpKind::MultW1, &op(OpKind::Sq1L, &x)));
        prop_assert_eq!(&a, &op(OpKind::Sq1, &op(OpKind::Sq1L, &x)));
        let b = op(OpKind::Sq1L, &op(OpKind::Sq1, &x));
        prop_assert_eq!(&b, &op(OpKind::Sq1L, &op(OpKind::MultW1, &x)));
        prop_assert_eq!(&b, &op(OpKind::MultW1, &op(OpKind::Sq1, &x)));
        prop_assert!(op(OpKind::Sq1, &op(OpKind::Sq1, &x)).is_zero());
        prop_assert!(op(OpKind::Sq1L, &op(OpKind::Sq1L, &x)).is_zero());
        Ok(())
    })
}

/// `Sq^1` and `Sq^1_L` map the ideal `(Q_{n-k+1}, ..., Q_n)` into itself.
pub fn ideal_closure(cases: u32) -> Result<(), String> {
    const RINGS: [(usize, usize); 5] = [(2, 6), (3, 8), (4, 9), (5, 11), (5, 15)];
    let strategy = (0..RINGS.len(), 0usize..8, any::<u32>(), any::<usize>(), 0usize..3);
    run(cases, strategy, |(ri, j, e, pick, kind)| {
        let (k, n) = RINGS[ri];
        let r = ring(k, n);
        let j = n - k + 1 + j % k;
        // room for the operation(s) after multiplying by a monomial
        let room = r.top_degree() - j as u32 - 2;
        let monomials = monomials_of_degree(k, Flavor::W1, e % (room + 1));
        let m = &monomials[pick % monomials.len()];
        let g = upper_q(k, j as i64).times_monomial(m);
        let deg = j as u32 + m.degree();
        prop_assert!(r.reduce_in_degree(&g, deg).unwrap().is_zero());
        let (image, image_deg) = match kind {
            0 => (sq1_poly(&g), deg + 1),
            1 => (sq1l_poly(&g), deg + 1),
            _ => (sq1_poly(&sq1l_poly(&g)), deg + 2),
        };
        prop_assert!(r.reduce_in_degree(&image, image_deg).unwrap().is_zero());
        Ok(())
    })
}

/// Partitions of `size` with at most `rows` parts, each at most `cols`,
/// counted by a direct recursion on the largest part.
pub fn box_partitions(size: u32, rows: u32, cols: u32) -> u64 {
    fn go(size: u32, rows: u32, max: u32, memo: &mut HashMap<(u32, u32, u32), u64>) -> u64 {
        if size == 0 {
            return 1;
        }
        if rows == 0 || max == 0 {
            return 0;
        }
        if let Some(&v) = memo.get(&(size, rows, max)) {
            return v;
        }
        let v = (1..=max.min(size)).map(|first| go(size - first, rows - 1, first, memo)).sum();
        memo.insert((size, rows, max), v);
        v
    }
    go(size, rows, cols, &mut HashMap::new())
}

/// `dim H^d(Gr_k(n))` equals the number of partitions of `d` in a
/// `k x (n-k)` box.
pub fn hilbert(cases: u32) -> Result<(), String> {
    let strategy = (1usize..=12).prop_flat_map(|n| (1..=n, Just(n), 0u32..=36));
    run(cases, strategy, |(k, n, d)| {
        let r = ring(k, n);
        let d = d % (r.top_degree() + 1);
        prop_assert_eq!(r.dim(d) as u64, box_partitions(d, k as u32, (n - k) as u32));
        let total: usize = r.betti().iter().sum();
        prop_assert_eq!(total as u64, (0..=r.top_degree()).map(|e| box_partitions(e, k as u32, (n - k) as u32)).sum::<u64>());
        Ok(())
    })
}

/// Bases of every nonzero relation space with `2 <= k <= 6`, `n <= 17`,
/// relation degree `<= 17`.
pub fn relation_spaces() -> &'static [Vec<RelationTuple>] {
    static SPACES: OnceLock<Vec<Vec<RelationTuple>>> = OnceLock::new();
    SPACES.get_or_init(|| {
        let mut out = vec![];
        for k in 2..=6usize {
            for n in (k + 1)..=17 {
                for d in (n - k + 1) as u32..=17 {
                    let rs = koszul::relations_in_degree(k, n, d).unwrap();
                    if !rs.is_empty() {
                        out.push(rs);
                    }
                }
            }
        }
        out
    })
}

fn combine(space: &[RelationTuple], mask: u64) -> RelationTuple {
    let first = &space[0];
    let mut coeffs = vec![F2Polynomial::zero(first.k, Flavor::W2); first.k];
    for (i, r) in space.iter().enumerate() {
        if mask >> (i % 64) & 1 == 1 {
            for (c, x) in coeffs.iter_mut().zip(&r.coeffs) {
                c.add_assign_poly(x);
            }
        }
    }
    RelationTuple::new(first.k, first.n, first.degree, coeffs).unwrap()
}

/// The boundary of a relation, as a class of `Gr_k(n)` (built far enough).
fn boundary_class(r: &RelationTuple, ring: &QuotientRing) -> CohomologyClass {
    let x = koszul::koszul_boundary(r).unwrap();
    ring.reduce_in_degree(&x, r.degree - 1).unwrap()
}

/// Descending commutes with restriction and ascending with the Gysin map:
/// `δ_{n-1}(D c) = i^* δ_n(c)` and `δ_{n+1}(A c) = i_! δ_n(c)`.
pub fn ascend_descend_squares(cases: u32) -> Result<(), String> {
    let spaces = relation_spaces();
    if spaces.is_empty() {
        return Err("no relations found in the test range".into());
    }
    run(cases, (0..spaces.len(), 1u64..), |(si, mask)| {
        let space = &spaces[si];
        let mut mask = mask & ((1u64 << space.len().min(63)) - 1);
        if mask == 0 {
            mask = 1;
        }
        let r = combine(space, mask);
        let (k, n, d) = (r.k, r.n, r.degree);
        let here = ring_to(k, n, Some(d + k as u32));
        let b = boundary_class(&r, &here);

        let down = koszul::descend(&r).unwrap();
        prop_assert!(down.validate().is_ok());
        if n > k {
            let below = ring_to(k, n - 1, Some(d + k as u32));
            prop_assert_eq!(boundary_class(&down, &below), pullback(&here, &below, &b).unwrap());
        }

        let up = koszul::ascend(&r).unwrap();
        prop_assert!(up.validate().is_ok());
        prop_assert_eq!(up.degree, d + k as u32);
        let above = ring_to(k, n + 1, Some(d + k as u32));
        prop_assert_eq!(boundary_class(&up, &above), pushforward(&here, &above, &b).unwrap());
        Ok(())
    })
}

/// Number of standard Young tableaux, by removing the cell holding the
/// largest entry.
pub fn syt_count(parts: &[u32]) -> u128 {
    fn go(parts: Vec<u32>, memo: &mut HashMap<Vec<u32>, u128>) -> u128 {
        if parts.iter().all(|&p| p == 0) {
            return 1;
        }
        if let Some(&v) = memo.get(&parts) {
            return v;
        }
        let mut total = 0;
        for i in 0..parts.len() {
            let corner = parts[i] > 0 && parts.get(i + 1).is_none_or(|&next| next < parts[i]);
            if corner {
                let mut smaller = parts.clone();
                smaller[i] -= 1;
                total += go(smaller, memo);
            }
        }
        memo.insert(parts, total);
        total
    }
    thread_local! {
        static MEMO: std::cell::RefCell<HashMap<Vec<u32>, u128>> = Default::default();
    }
    MEMO.with(|m| go(parts.to_vec(), &mut m.borrow_mut()))
}

/// All partitions of `size`, largest part first.
pub fn partitions_of(size: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            prefix.push(p);
            go(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = vec![];
    go(size, size, &mut vec![], &mut out);
    out
}

/// Three parity computations agree on every partition of size at most 12.
pub fn syt_parity_exhaustive() -> Result<usize, String> {
    let mut seen = 0;
    for size in 0..=12 {
        for parts in partitions_of(size) {
            let lambda = Partition::new(parts.clone()).unwrap();
            let exact = syt_count(&parts) % 2 == 1;
            let legendre = syt_parity(&lambda);
            let cores = syt_parity_via_cores(&lambda);
            if exact != legendre || exact != cores {
                return Err(format!("{lambda}: exact {exact}, hooks {legendre}, cores {cores}"));
            }
            seen += 1;
        }
    }
    Ok(seen)
}

fn partition_strategy(max_size: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..=max_size, 0..(max_size as usize)).prop_map(move |mut parts| {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let mut total = 0;
        parts.retain(|&p| {
            total += p;
            total <= max_size
        });
        Partition::new(parts).unwrap()
    })
}

/// Random partitions up to size 18 (three-way parity), and the core reached
/// by removing rim hooks in a random order is the core.
pub fn syt_parity_random(cases: u32) -> Result<(), String> {
    let strategy = (partition_strategy(18), partition_strategy(14), prop::sample::select(vec![2u32, 4, 8]), any::<u64>());
    run(cases, strategy, |(lambda, mu, p, seed)| {
        let exact = syt_count(lambda.parts()) % 2 == 1;
        prop_assert_eq!(syt_parity(&lambda), exact, "{}", lambda);
        prop_assert_eq!(syt_parity_via_cores(&lambda), exact, "{}", lambda);

        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let mut cur = mu.clone();
        loop {
            let options = rim_hook_removal(&cur, p);
            if options.is_empty() {
                break;
            }
            prop_assert!(options.iter().all(|o| o.size() + p == cur.size()));
            cur = options[rng.gen_range(0..options.len())].clone();
        }
        prop_assert_eq!(cur, core(&mu, p), "{} p = {}", mu, p);
        Ok(())
    })
}

/// Every property suite with its case count, for summary reporting.
pub fn all_suites(cases: u32) -> Vec<(&'static str, Result<(), String>)> {
    vec![
        ("ring axioms", ring_axioms(cases)),
        ("Sq1 derivation", sq1_derivation(cases)),
        ("commutation identities Gr5(15), Gr6(16)", commutation(cases)),
        ("ideal Steenrod closure", ideal_closure(cases)),
        ("Hilbert function", hilbert(cases)),
        ("ascend/descend squares", ascend_descend_squares(cases)),
        ("SYT parity exhaustive", syt_parity_exhaustive().map(|_| ())),
        ("SYT parity and cores random", syt_parity_random(cases)),
    ]
}
