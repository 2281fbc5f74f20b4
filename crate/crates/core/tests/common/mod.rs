//! Reference implementations used as test oracles. They share no code with
//! the library: tableaux come from corner removal, characters from explicit
//! border strips on the diagram.
#![allow(dead_code)]

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeSet, HashSet, VecDeque};

use tableau_descents::{DescentFunction, Partition};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// All partitions of `n` as part vectors, largest first part first.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn shape(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

/// Every tableau of `parts` as its row sequence: entry `k` is the 0-based row of `k + 1`.
pub fn tableaux(parts: &[usize]) -> Vec<Vec<usize>> {
    let n: usize = parts.iter().sum();
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for r in 0..parts.len() {
        let is_corner = parts[r] > parts.get(r + 1).copied().unwrap_or(0);
        if !is_corner {
            continue;
        }
        let mut smaller = parts.to_vec();
        smaller[r] -= 1;
        while smaller.last() == Some(&0) {
            smaller.pop();
        }
        for mut seq in tableaux(&smaller) {
            seq.push(r);
            out.push(seq);
        }
    }
    out
}

/// Descents `i` (1-based): `i + 1` sits in a strictly lower row than `i`.
pub fn descents(rows: &[usize]) -> Vec<usize> {
    (1..rows.len()).filter(|&i| rows[i] > rows[i - 1]).collect()
}

pub fn maj(rows: &[usize]) -> usize {
    descents(rows).iter().sum()
}

pub fn conjugate(parts: &[usize]) -> Vec<usize> {
    let cols = parts.first().copied().unwrap_or(0);
    (0..cols).map(|j| parts.iter().filter(|&&p| p > j).count()).collect()
}

pub fn hook_product_count(parts: &[usize]) -> BigUint {
    let n: usize = parts.iter().sum();
    let conj = conjugate(parts);
    let mut num = BigUint::one();
    for k in 2..=n {
        num *= k;
    }
    let mut den = BigUint::one();
    for (i, &p) in parts.iter().enumerate() {
        for j in 0..p {
            den *= p - j + conj[j] - i - 1;
        }
    }
    assert!((&num % &den).is_zero());
    num / den
}

/// A descent function with its own value table, computed independently.
pub struct TestFunction {
    pub name: &'static str,
    pub f: DescentFunction,
    pub values: Vec<Q>,
}

/// des, maj, `i^2` and a table of random rationals from a pinned seed,
/// all defined on `1..=len`.
pub fn test_functions(len: usize) -> Vec<TestFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(20_261_015);
    let table: Vec<Q> = (0..len.max(1))
        .map(|_| q(rng.gen_range(-9..=9), rng.gen_range(1..=8)))
        .collect();
    let idx = |g: fn(i64) -> i64| (1..=len.max(1) as i64).map(|i| q(g(i), 1)).collect();
    vec![
        TestFunction { name: "des", f: DescentFunction::Des, values: idx(|_| 1) },
        TestFunction { name: "maj", f: DescentFunction::Maj, values: idx(|i| i) },
        TestFunction { name: "i^2", f: DescentFunction::Power(2.0), values: idx(|i| i * i) },
        TestFunction {
            name: "random-table",
            f: DescentFunction::Table(table.clone()),
            values: table,
        },
    ]
}

pub fn statistic(rows: &[usize], values: &[Q]) -> Q {
    descents(rows).iter().map(|&i| values[i - 1].clone()).sum()
}

/// Mean and population variance of `d_f` over every tableau of `parts`.
pub fn enumerated_mean_var(parts: &[usize], values: &[Q]) -> (Q, Q) {
    let all = tableaux(parts);
    let n = Q::from_integer(BigInt::from(all.len()));
    let (mut s1, mut s2) = (Q::zero(), Q::zero());
    for t in &all {
        let x = statistic(t, values);
        s2 += &x * &x;
        s1 += x;
    }
    let mean = s1 / &n;
    let var = s2 / &n - &mean * &mean;
    (mean, var)
}

fn is_border_strip(outer: &[usize], inner: &[usize]) -> Option<usize> {
    let cells: HashSet<(usize, usize)> = outer
        .iter()
        .enumerate()
        .flat_map(|(i, &p)| (inner.get(i).copied().unwrap_or(0)..p).map(move |j| (i, j)))
        .collect();
    let start = *cells.iter().next()?;
    for &(i, j) in &cells {
        if [(i + 1, j), (i, j + 1), (i + 1, j + 1)].iter().all(|c| cells.contains(c)) {
            return None;
        }
    }
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((i, j)) = queue.pop_front() {
        let mut nbrs = vec![(i + 1, j), (i, j + 1)];
        if i > 0 {
            nbrs.push((i - 1, j));
        }
        if j > 0 {
            nbrs.push((i, j - 1));
        }
        for c in nbrs {
            if cells.contains(&c) && seen.insert(c) {
                queue.push_back(c);
            }
        }
    }
    if seen.len() != cells.len() {
        return None;
    }
    let rows: BTreeSet<usize> = cells.iter().map(|c| c.0).collect();
    Some(rows.len() - 1)
}

fn contains(outer: &[usize], inner: &[usize]) -> bool {
    inner.len() <= outer.len() && inner.iter().zip(outer).all(|(a, b)| a <= b)
}

/// `χ^λ(μ)` by stripping border strips of sizes `μ_1, μ_2, …` from the diagram.
pub fn character(lambda: &[usize], mu: &[usize]) -> BigInt {
    let Some((&r, rest)) = mu.split_first() else {
        return BigInt::one();
    };
    if mu.iter().all(|&m| m == 1) {
        return BigInt::from(hook_product_count(lambda));
    }
    let n: usize = lambda.iter().sum();
    let mut total = BigInt::zero();
    for nu in partitions(n - r) {
        if !contains(lambda, &nu) {
            continue;
        }
        if let Some(height) = is_border_strip(lambda, &nu) {
            let sign = if height % 2 == 0 { 1 } else { -1 };
            total += sign * character(&nu, rest);
        }
    }
    total
}

/// Cycle type `(k, 1, …, 1)` or `(2, 2, 1, …)` of size `n`.
pub fn cycle_type(head: &[usize], n: usize) -> Vec<usize> {
    let used: usize = head.iter().sum();
    let mut v = head.to_vec();
    v.extend(std::iter::repeat(1).take(n - used));
    v
}

/// Size of the centralizer of a permutation of cycle type `mu`.
pub fn centralizer(mu: &[usize]) -> BigUint {
    let mut z = BigUint::one();
    let mut k = 0;
    while k < mu.len() {
        let part = mu[k];
        let mult = mu.iter().filter(|&&m| m == part).count();
        for m in 1..=mult {
            z *= part * m;
        }
        k += mult;
    }
    z
}
