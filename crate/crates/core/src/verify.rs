//! Exhaustive cross-checks of the closed forms against tableau enumeration,
//! for every partition up to a size cap.

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::characters::{
    character_via_descent_weights, joint_descent_probabilities, mn_character, normalized_character,
    r22_frobenius, r2_frobenius, weight_sum_2, weight_sum_22, weight_sum_3, CycleType,
};
use crate::error::Result;
use crate::moments::{
    enumerated_moments, expected_descent_statistic, expected_maj, variance_descent_statistic,
    variance_maj,
};
use crate::partition::Partition;
use crate::qseries::{maj_generating_function, moments_from_genfun, QPolynomial};
use crate::scalar::{rat, rat_int, Rational};
use crate::tableau::{count_syt, enumerate_syt, DescentFunction, StandardTableau};

/// A table `f(1..=len)` of small rationals drawn from a fixed seed.
pub fn pinned_random_table(len: usize, seed: u64) -> DescentFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..len.max(1))
        .map(|_| rat(rng.gen_range(-5..=5), rng.gen_range(1..=7)))
        .collect();
    DescentFunction::Table(values)
}

/// The descent functions exercised by the exactness checks.
pub fn test_functions(n: usize) -> Vec<DescentFunction> {
    vec![
        DescentFunction::Des,
        DescentFunction::Maj,
        DescentFunction::Power(2.0),
        pinned_random_table(n.saturating_sub(1), 0x5eed),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl CheckOutcome {
    fn new(name: &'static str) -> Self {
        CheckOutcome {
            name,
            cases: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub max_n: usize,
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

fn brute_genfun(tableaux: &[StandardTableau]) -> QPolynomial {
    let mut coeffs = vec![0u64; tableaux.iter().map(|t| t.maj()).max().unwrap_or(0) + 1];
    for t in tableaux {
        coeffs[t.maj()] += 1;
    }
    QPolynomial::from_coeffs(coeffs)
}

/// Runs every check on all partitions of `1..=max_n`; the character-table
/// sweep is limited to `n <= min(max_n, 7)`.
pub fn run_oracle_suite(max_n: usize) -> Result<VerifyReport> {
    let mut hook = CheckOutcome::new("hook-formula-count");
    let mut stanley = CheckOutcome::new("stanley-generating-function");
    let mut maj_moments = CheckOutcome::new("maj-mean-variance");
    let mut expectation = CheckOutcome::new("descent-function-expectation");
    let mut variance = CheckOutcome::new("descent-function-variance");
    let mut weights = CheckOutcome::new("weight-sum-independence");
    let mut table = CheckOutcome::new("descent-weight-characters");
    let mut probs = CheckOutcome::new("joint-descent-probabilities");
    let mut frob = CheckOutcome::new("frobenius-ratios");

    for n in 1..=max_n {
        let shapes = Partition::all(n);
        let fs = test_functions(n);
        for lambda in &shapes {
            let tableaux: Vec<StandardTableau> = enumerate_syt(lambda, u64::MAX)?.collect();
            let count = BigUint::from(tableaux.len());
            let f_lambda = count_syt(lambda)?;
            hook.record(count == f_lambda, || format!("{lambda}: listed {count}, formula {f_lambda}"));

            let g = maj_generating_function(lambda)?;
            stanley.record(g == brute_genfun(&tableaux), || format!("{lambda}: {g}"));

            let (mean, var) = enumerated_moments(lambda, &DescentFunction::Maj, u64::MAX)?;
            let gm = moments_from_genfun(lambda)?;
            maj_moments.record(
                mean == expected_maj(lambda)
                    && var == variance_maj(lambda)
                    && gm.mean == mean
                    && gm.variance == var,
                || format!("{lambda}: enumeration ({mean}, {var})"),
            );

            for f in &fs {
                let (mean, var) = enumerated_moments(lambda, f, u64::MAX)?;
                let e = expected_descent_statistic(lambda, f)?;
                expectation.record(e == mean, || format!("{lambda} {}: {e} vs {mean}", f.label()));
                let v = variance_descent_statistic(lambda, f)?;
                variance.record(v == var, || format!("{lambda} {}: {v} vs {var}", f.label()));
            }

            if n >= 2 {
                let chi = mn_character(lambda, &CycleType::transposition(n)?)?;
                for i in 1..n {
                    let s = weight_sum_2(lambda, i, u64::MAX)?;
                    weights.record(s == chi, || format!("{lambda} (2,1..) i={i}: {s} vs {chi}"));
                }
            }
            if n >= 3 {
                let chi = mn_character(lambda, &CycleType::three_cycle(n)?)?;
                for i in 1..n - 1 {
                    let s = weight_sum_3(lambda, i, u64::MAX)?;
                    weights.record(s == chi, || format!("{lambda} (3,1..) i={i}: {s} vs {chi}"));
                }
            }
            if n >= 4 {
                let chi = mn_character(lambda, &CycleType::double_transposition(n)?)?;
                for i in 1..n {
                    for j in i + 2..n {
                        let s = weight_sum_22(lambda, i, j, u64::MAX)?;
                        weights.record(s == chi, || {
                            format!("{lambda} (2,2,1..) i={i} j={j}: {s} vs {chi}")
                        });
                    }
                }

                let pr = joint_descent_probabilities(lambda)?;
                let total = rat_int(tableaux.len());
                let freq = |pred: &dyn Fn(&StandardTableau) -> bool| -> Rational {
                    rat_int(tableaux.iter().filter(|t| pred(t)).count()) / &total
                };
                for i in 1..n {
                    let f2 = freq(&|t| t.is_descent(i));
                    probs.record(f2 == pr.p2, || format!("{lambda} P2 i={i}: {f2} vs {}", pr.p2));
                    if i + 1 < n {
                        let f3 = freq(&|t| t.is_descent(i) && t.is_descent(i + 1));
                        probs.record(f3 == pr.p3, || format!("{lambda} P3 i={i}: {f3} vs {}", pr.p3));
                    }
                    for j in i + 2..n {
                        let f22 = freq(&|t| t.is_descent(i) && t.is_descent(j));
                        probs.record(f22 == pr.p22, || {
                            format!("{lambda} P22 i={i} j={j}: {f22} vs {}", pr.p22)
                        });
                    }
                }

                let r2 = normalized_character(lambda, &CycleType::transposition(n)?)?;
                let r22 = normalized_character(lambda, &CycleType::double_transposition(n)?)?;
                frob.record(
                    r2 == r2_frobenius(lambda)? && r22 == r22_frobenius(lambda)?,
                    || format!("{lambda}: MN ({r2}, {r22})"),
                );
            }

            if n <= 7 {
                for mu in &shapes {
                    let mu = CycleType::new(mu.clone());
                    let a = character_via_descent_weights(lambda, &mu, u64::MAX)?;
                    let b: BigInt = mn_character(lambda, &mu)?;
                    table.record(a == b, || format!("λ={lambda} μ={}: {a} vs {b}", mu.0));
                }
            }
        }
    }

    let checks = vec![hook, stanley, maj_moments, expectation, variance, weights, table, probs, frob];
    Ok(VerifyReport {
        max_n,
        passed: checks.iter().all(CheckOutcome::passed),
        checks,
    })
}
