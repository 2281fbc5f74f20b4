//! Irreducible characters of the symmetric group.
//!
//! Two independent routes are provided: the Murnaghan–Nakayama rim-hook
//! recursion, and sums of descent weights over standard tableaux. The
//! normalized values at the classes `(2,1…)`, `(3,1…)` and `(2,2,1…)` also
//! have closed forms in terms of contents, which feed the joint descent
//! probabilities used by the variance formula.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{choose2, Partition};
use crate::scalar::{rat_int, Rational};
use crate::tableau::{count_syt, enumerate_syt, StandardTableau};

/// Cycle type of a conjugacy class of `S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleType(pub Partition);

impl CycleType {
    pub fn new(mu: Partition) -> Self {
        CycleType(mu)
    }

    fn with_head(head: &[usize], n: usize) -> Result<Self> {
        let used: usize = head.iter().sum();
        if n < used {
            return Err(Error::InvalidArgument(format!(
                "class {head:?}+1s needs n >= {used}, got {n}"
            )));
        }
        let mut parts = head.to_vec();
        parts.extend(std::iter::repeat_n(1, n - used));
        Ok(CycleType(Partition::new(parts)?))
    }

    /// `(1^n)`
    pub fn identity(n: usize) -> Result<Self> {
        Self::with_head(&[], n)
    }

    /// `(2,1^{n-2})`
    pub fn transposition(n: usize) -> Result<Self> {
        Self::with_head(&[2], n)
    }

    /// `(3,1^{n-3})`
    pub fn three_cycle(n: usize) -> Result<Self> {
        Self::with_head(&[3], n)
    }

    /// `(2,2,1^{n-4})`
    pub fn double_transposition(n: usize) -> Result<Self> {
        Self::with_head(&[2, 2], n)
    }

    pub fn partition(&self) -> &Partition {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    /// `B(μ) = {μ_1, μ_1 + μ_2, …}` as a membership table over `0..=n`.
    fn partial_sums(&self) -> Vec<bool> {
        let mut marks = vec![false; self.n() + 1];
        let mut acc = 0;
        for &p in self.0.parts() {
            acc += p;
            marks[acc] = true;
        }
        marks
    }
}

fn check_sizes(lambda: &Partition, mu: &CycleType) -> Result<()> {
    if lambda.n() != mu.n() {
        return Err(Error::SizeMismatch {
            left: lambda.n(),
            right: mu.n(),
        });
    }
    Ok(())
}

/// `χ^λ_μ` by the Murnaghan–Nakayama rule, removing rim hooks for the
/// largest remaining part of `μ` first.
pub fn mn_character(lambda: &Partition, mu: &CycleType) -> Result<BigInt> {
    check_sizes(lambda, mu)?;
    let mut memo = HashMap::new();
    Ok(mn_recurse(lambda.parts().to_vec(), mu.0.parts(), &mut memo))
}

// Shapes are kept as beta-sets: removing a rim hook of length r moves one
// bead from b to b - r, with sign (-1)^(beads strictly between).
fn mn_recurse(
    shape: Vec<usize>,
    parts: &[usize],
    memo: &mut HashMap<(Vec<usize>, usize), BigInt>,
) -> BigInt {
    let Some((&r, rest)) = parts.split_first() else {
        return if shape.is_empty() {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    };
    // remaining parts are all 1: χ at the identity class is f^shape
    if r == 1 {
        return match Partition::new(shape) {
            Ok(p) => count_syt(&p).map(BigInt::from).unwrap_or_default(),
            Err(_) => BigInt::zero(),
        };
    }
    let key = (shape, rest.len());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let shape = &key.0;
    let k = shape.len();
    let beta: Vec<usize> = shape.iter().enumerate().map(|(i, &p)| p + (k - 1 - i)).collect();
    let mut total = BigInt::zero();
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next_beta = beta.clone();
        next_beta[idx] = target;
        next_beta.sort_unstable_by(|a, b| b.cmp(a));
        let mut next: Vec<usize> = next_beta
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (k - 1 - i))
            .collect();
        while next.last() == Some(&0) {
            next.pop();
        }
        let v = mn_recurse(next, rest, memo);
        if between % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    memo.insert(key.clone(), total.clone());
    total
}

/// `weight_μ(T) = Π_{1<=i<=n-1, i∉B(μ)} f_μ(i, T)`, with
/// `f_μ(i,T) = -1` if `i ∈ D(T)`; `0` if `i ∉ D(T)`, `i+1 ∈ D(T)`, `i+1 ∉ B(μ)`;
/// `1` otherwise.
pub fn weight_mu(t: &StandardTableau, mu: &CycleType) -> Result<i8> {
    check_sizes(t.shape(), mu)?;
    let n = t.n();
    let in_b = mu.partial_sums();
    let mut w = 1i8;
    for i in 1..n {
        if in_b[i] {
            continue;
        }
        if t.is_descent(i) {
            w = -w;
        } else if t.is_descent(i + 1) && !in_b[i + 1] {
            return Ok(0);
        }
    }
    Ok(w)
}

/// `χ^λ_μ = Σ_T weight_μ(T)` over tableaux of shape `λ`.
pub fn character_via_descent_weights(lambda: &Partition, mu: &CycleType, cap: u64) -> Result<BigInt> {
    check_sizes(lambda, mu)?;
    let mut total = 0i64;
    for t in enumerate_syt(lambda, cap)? {
        total += weight_mu(&t, mu)? as i64;
    }
    Ok(BigInt::from(total))
}

/// `weight^i_{(21…1)}`: `-1` if `i ∈ D(T)`, else `1`.
pub fn weight_2(t: &StandardTableau, i: usize) -> i8 {
    if t.is_descent(i) {
        -1
    } else {
        1
    }
}

/// `weight^i_{(31…1)}`: `-1` for a lone descent at `i`, `0` when only `i+1`
/// is a descent, `1` when both or neither are.
pub fn weight_3(t: &StandardTableau, i: usize) -> i8 {
    match (t.is_descent(i), t.is_descent(i + 1)) {
        (true, false) => -1,
        (false, true) => 0,
        _ => 1,
    }
}

/// `weight^{ij}_{(221…1)}`: `1` when `i` and `j` agree on being descents.
pub fn weight_22(t: &StandardTableau, i: usize, j: usize) -> i8 {
    if t.is_descent(i) == t.is_descent(j) {
        1
    } else {
        -1
    }
}

fn sum_weights(
    lambda: &Partition,
    cap: u64,
    weight: impl Fn(&StandardTableau) -> i8,
) -> Result<BigInt> {
    let total: i64 = enumerate_syt(lambda, cap)?.map(|t| weight(&t) as i64).sum();
    Ok(BigInt::from(total))
}

pub fn weight_sum_2(lambda: &Partition, i: usize, cap: u64) -> Result<BigInt> {
    let n = lambda.n();
    if !(1 <= i && i < n) {
        return Err(Error::IndexRange(format!("need 1 <= i < {n}, got i={i}")));
    }
    sum_weights(lambda, cap, |t| weight_2(t, i))
}

pub fn weight_sum_3(lambda: &Partition, i: usize, cap: u64) -> Result<BigInt> {
    let n = lambda.n();
    if !(1 <= i && i + 1 < n) {
        return Err(Error::IndexRange(format!("need 1 <= i < {}, got i={i}", n as i64 - 1)));
    }
    sum_weights(lambda, cap, |t| weight_3(t, i))
}

pub fn weight_sum_22(lambda: &Partition, i: usize, j: usize, cap: u64) -> Result<BigInt> {
    let n = lambda.n();
    if !(1 <= i && i + 1 < j && j < n) {
        return Err(Error::IndexRange(format!(
            "need 1 <= i < j-1 < {}, got i={i}, j={j}",
            n as i64 - 1
        )));
    }
    sum_weights(lambda, cap, |t| weight_22(t, i, j))
}

/// `χ^λ_{(21…1)} / f^λ = [Σ C(λ_i,2) - Σ C(λ'_j,2)] / C(n,2)`.
pub fn r2_frobenius(lambda: &Partition) -> Result<Rational> {
    let n = lambda.n();
    if n < 2 {
        return Err(Error::InvalidArgument("r2 needs n >= 2".into()));
    }
    Ok(Rational::new(
        BigInt::from(lambda.content_sum()),
        BigInt::from(choose2(n)),
    ))
}

/// `χ^λ_{(221…1)} / f^λ = 4/((n-2)(n-3)) + [(Σc)^2 - 3Σc^2] / (n; 2,2,n-4)`,
/// sums over the contents `c = j - i` of the cells.
pub fn r22_frobenius(lambda: &Partition) -> Result<Rational> {
    let n = lambda.n();
    if n < 4 {
        return Err(Error::InvalidArgument("r22 needs n >= 4".into()));
    }
    let n_big = BigInt::from(n);
    // n! / (2! 2! (n-4)!)
    let multinomial: BigInt =
        &n_big * (&n_big - 1) * (&n_big - 2) * (&n_big - 3) / BigInt::from(4);
    let c1 = BigInt::from(lambda.content_sum());
    let c2 = BigInt::from(lambda.squared_content_sum());
    let head = Rational::new(BigInt::from(4), (&n_big - 2) * (&n_big - 3));
    Ok(head + Rational::new(&c1 * &c1 - BigInt::from(3) * c2, multinomial))
}

/// `χ^λ_μ / f^λ`.
pub fn normalized_character(lambda: &Partition, mu: &CycleType) -> Result<Rational> {
    let chi = mn_character(lambda, mu)?;
    let f = BigInt::from(count_syt(lambda)?);
    Ok(Rational::new(chi, f))
}

/// Normalized character values at `(2,1…)`, `(3,1…)`, `(2,2,1…)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharRatios {
    #[serde(with = "crate::scalar::rational_str")]
    pub r2: Rational,
    #[serde(with = "crate::scalar::rational_str")]
    pub r3: Rational,
    #[serde(with = "crate::scalar::rational_str")]
    pub r22: Rational,
}

/// `r2` and `r22` from the content formulas; `r3` from Murnaghan–Nakayama.
pub fn char_ratios(lambda: &Partition) -> Result<CharRatios> {
    let n = lambda.n();
    if n < 4 {
        return Err(Error::InvalidArgument("character ratios need n >= 4".into()));
    }
    Ok(CharRatios {
        r2: r2_frobenius(lambda)?,
        r3: normalized_character(lambda, &CycleType::three_cycle(n)?)?,
        r22: r22_frobenius(lambda)?,
    })
}

/// `P2 = Pr[X_i = 1]`, `P3 = Pr[X_i = X_{i+1} = 1]`, `P22 = Pr[X_i = X_j = 1]` (`j - i > 1`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JointDescentProbabilities {
    #[serde(with = "crate::scalar::rational_str")]
    pub p2: Rational,
    #[serde(with = "crate::scalar::rational_str")]
    pub p3: Rational,
    #[serde(with = "crate::scalar::rational_str")]
    pub p22: Rational,
}

impl JointDescentProbabilities {
    pub fn from_ratios(r: &CharRatios) -> Self {
        let one = Rational::one();
        let p2 = (&one - &r.r2) / rat_int(2);
        let p3 = &p2 - (&one - &r.r3) / rat_int(3);
        let p22 = &p2 - (&one - &r.r22) / rat_int(4);
        JointDescentProbabilities { p2, p3, p22 }
    }
}

pub fn joint_descent_probabilities(lambda: &Partition) -> Result<JointDescentProbabilities> {
    Ok(JointDescentProbabilities::from_ratios(&char_ratios(lambda)?))
}
