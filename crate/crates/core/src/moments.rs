//! Expectation and variance of descent functions on uniform tableaux of a
//! fixed shape, Chebyshev tail bounds, the Monte Carlo concentration
//! experiment, and the Hecke eigenvalue exponents.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::characters::{char_ratios, CharRatios, JointDescentProbabilities};
use crate::error::{Error, Result};
use crate::partition::{choose2, Partition};
use crate::qseries::maj_generating_function;
use crate::sampling::{sample_statistics, RandomSource};
use crate::scalar::{rat_int, to_f64, Rational, Scalar};
use crate::tableau::{count_syt, enumerate_syt, Arithmetic, DescentFunction, GrowthWitness};

/// `c(λ) = [C(n,2) - Σ C(λ_i,2) + Σ C(λ'_j,2)] / (n(n-1))`, the probability
/// that a fixed position is a descent.
pub fn c_lambda(shape: &Partition) -> Result<Rational> {
    let n = shape.n();
    if n < 2 {
        return Err(Error::InvalidArgument("c(λ) needs n >= 2".into()));
    }
    Ok(Rational::new(
        BigInt::from(choose2(n)) - BigInt::from(shape.content_sum()),
        BigInt::from(n * (n - 1)),
    ))
}

/// `Σ1 = Σ f(i)`, `Σ2 = Σ f(i)^2`, `Σ3 = 2 Σ f(i) f(i+1)` over positions `1..n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Sigmas {
    pub sigma1: Scalar,
    pub sigma2: Scalar,
    pub sigma3: Scalar,
}

pub fn sigmas(f: &DescentFunction, n: usize, mode: Arithmetic) -> Result<Sigmas> {
    f.check_domain(n)?;
    match mode {
        Arithmetic::Exact => {
            let v: Vec<Rational> = (1..n).map(|i| f.value_exact(i)).collect::<Result<_>>()?;
            let s1: Rational = v.iter().sum();
            let s2: Rational = v.iter().map(|x| x * x).sum();
            let s3: Rational = v.windows(2).map(|w| &w[0] * &w[1]).sum::<Rational>() * rat_int(2);
            Ok(Sigmas {
                sigma1: Scalar::Exact(s1),
                sigma2: Scalar::Exact(s2),
                sigma3: Scalar::Exact(s3),
            })
        }
        Arithmetic::Float => {
            let v: Vec<f64> = (1..n).map(|i| f.value_f64(i)).collect::<Result<_>>()?;
            Ok(Sigmas {
                sigma1: Scalar::Float(v.iter().sum()),
                sigma2: Scalar::Float(v.iter().map(|x| x * x).sum()),
                sigma3: Scalar::Float(2.0 * v.windows(2).map(|w| w[0] * w[1]).sum::<f64>()),
            })
        }
    }
}

fn exact_sigmas(f: &DescentFunction, n: usize) -> Result<(Rational, Rational, Rational)> {
    if !f.is_rational() {
        return Err(Error::NonRationalFunction);
    }
    let s = sigmas(f, n, Arithmetic::Exact)?;
    let take = |s: Scalar| match s {
        Scalar::Exact(r) => r,
        Scalar::Float(_) => unreachable!("exact sigmas"),
    };
    Ok((take(s.sigma1), take(s.sigma2), take(s.sigma3)))
}

/// `E_λ[d_f] = c(λ) Σ_{i<n} f(i)`.
pub fn expected_descent_statistic(shape: &Partition, f: &DescentFunction) -> Result<Rational> {
    let (s1, _, _) = exact_sigmas(f, shape.n())?;
    if shape.n() < 2 {
        return Ok(Rational::zero());
    }
    Ok(c_lambda(shape)? * s1)
}

pub fn expected_descent_statistic_f64(shape: &Partition, f: &DescentFunction) -> Result<f64> {
    if shape.n() < 2 {
        return Ok(0.0);
    }
    let s1 = sigmas(f, shape.n(), Arithmetic::Float)?.sigma1.to_f64();
    Ok(to_f64(&c_lambda(shape)?) * s1)
}

/// `E_λ[maj] = ½ [C(n,2) - Σ C(λ_i,2) + Σ C(λ'_j,2)]`.
pub fn expected_maj(shape: &Partition) -> Rational {
    Rational::new(
        BigInt::from(choose2(shape.n())) - BigInt::from(shape.content_sum()),
        BigInt::from(2),
    )
}

/// `Var_λ[maj] = (1/12) [Σ_{k<=n} k^2 - Σ_cells h^2]`.
pub fn variance_maj(shape: &Partition) -> Rational {
    let n = shape.n() as u64;
    let squares: u64 = n * (n + 1) * (2 * n + 1) / 6;
    let hooks: u64 = shape.hook_lengths().iter().map(|&h| (h * h) as u64).sum();
    Rational::new(BigInt::from(squares) - BigInt::from(hooks), BigInt::from(12))
}

/// Mean and variance of `d_f` by listing every tableau.
pub fn enumerated_moments(
    shape: &Partition,
    f: &DescentFunction,
    cap: u64,
) -> Result<(Rational, Rational)> {
    let mut count = 0u64;
    let mut sum = Rational::zero();
    let mut sum_sq = Rational::zero();
    for t in enumerate_syt(shape, cap)? {
        let v = t.descent_statistic_exact(f)?;
        sum_sq += &v * &v;
        sum += v;
        count += 1;
    }
    let count = rat_int(count);
    let mean = sum / &count;
    let var = sum_sq / count - &mean * &mean;
    Ok((mean, var))
}

fn enumerated_moments_f64(shape: &Partition, f: &DescentFunction, cap: u64) -> Result<(f64, f64)> {
    let values: Vec<f64> = enumerate_syt(shape, cap)?
        .map(|t| t.descent_statistic_f64(f))
        .collect::<Result<_>>()?;
    let m = values.len() as f64;
    let mean = values.iter().sum::<f64>() / m;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / m;
    Ok((mean, var))
}

/// Exact coefficients of `Σ2`, `Σ3` and `Σ1^2` in the variance.
fn variance_coefficients(p: &JointDescentProbabilities) -> (Rational, Rational, Rational) {
    (
        &p.p2 - &p.p22,
        &p.p3 - &p.p22,
        &p.p22 - &p.p2 * &p.p2,
    )
}

/// `Var_λ[d_f] = (P2 - P22) Σ2 + (P3 - P22) Σ3 + (P22 - P2^2) Σ1^2`. Shapes
/// with `n < 4` have no `(2,2,1…)` class and are enumerated instead.
pub fn variance_descent_statistic(shape: &Partition, f: &DescentFunction) -> Result<Rational> {
    let (s1, s2, s3) = exact_sigmas(f, shape.n())?;
    if shape.n() < 4 {
        return Ok(enumerated_moments(shape, f, u64::MAX)?.1);
    }
    let probs = JointDescentProbabilities::from_ratios(&char_ratios(shape)?);
    let (a, b, c) = variance_coefficients(&probs);
    Ok(a * s2 + b * s3 + c * &s1 * &s1)
}

pub fn variance_descent_statistic_f64(shape: &Partition, f: &DescentFunction) -> Result<f64> {
    if shape.n() < 4 {
        return Ok(enumerated_moments_f64(shape, f, u64::MAX)?.1);
    }
    let s = sigmas(f, shape.n(), Arithmetic::Float)?;
    let probs = JointDescentProbabilities::from_ratios(&char_ratios(shape)?);
    let (a, b, c) = variance_coefficients(&probs);
    let s1 = s.sigma1.to_f64();
    Ok(to_f64(&a) * s.sigma2.to_f64() + to_f64(&b) * s.sigma3.to_f64() + to_f64(&c) * s1 * s1)
}

/// `Var / (t^2 E^2)`, the Chebyshev bound on `Pr[|d_f - E| >= t E]`.
pub fn chebyshev_tail_bound(shape: &Partition, f: &DescentFunction, t: &Rational) -> Result<Rational> {
    if !t.is_positive() {
        return Err(Error::InvalidArgument("t must be positive".into()));
    }
    let e = expected_descent_statistic(shape, f)?;
    if e.is_zero() {
        return Err(Error::ZeroExpectation);
    }
    let var = variance_descent_statistic(shape, f)?;
    Ok(var / (t * t * &e * &e))
}

/// Exact-or-float expectation and variance of `d_f` with the `Σ` sums.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentReport {
    pub shape: Partition,
    pub stat: String,
    pub arithmetic: &'static str,
    pub expectation: Scalar,
    pub variance: Scalar,
    pub sigma1: Scalar,
    pub sigma2: Scalar,
    pub sigma3: Scalar,
    #[serde(with = "crate::scalar::opt_rational_str")]
    pub c_lambda: Option<Rational>,
}

/// Exact for rational `f`, floating point otherwise.
pub fn moment_report(shape: &Partition, f: &DescentFunction) -> Result<MomentReport> {
    let n = shape.n();
    let mode = f.natural_arithmetic();
    let s = sigmas(f, n, mode)?;
    let (expectation, variance) = match mode {
        Arithmetic::Exact => (
            Scalar::Exact(expected_descent_statistic(shape, f)?),
            Scalar::Exact(variance_descent_statistic(shape, f)?),
        ),
        Arithmetic::Float => (
            Scalar::Float(expected_descent_statistic_f64(shape, f)?),
            Scalar::Float(variance_descent_statistic_f64(shape, f)?),
        ),
    };
    Ok(MomentReport {
        shape: shape.clone(),
        stat: f.label(),
        arithmetic: match mode {
            Arithmetic::Exact => "exact",
            Arithmetic::Float => "float",
        },
        expectation,
        variance,
        sigma1: s.sigma1,
        sigma2: s.sigma2,
        sigma3: s.sigma3,
        c_lambda: if n >= 2 { Some(c_lambda(shape)?) } else { None },
    })
}

/// The three summands of `Var/E^2`:
/// `A Σ2/Σ1^2 + B Σ3/Σ1^2 + C` with
/// `A = (1-r22)/(1-r2)^2`, `B = (4r3 - 3r22 - 1)/(3(1-r2)^2)`, `C = (r22 - r2^2)/(1-r2)^2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VarianceRatioTerms {
    pub ratios: CharRatios,
    pub sigma2_coefficient: Scalar,
    pub sigma3_coefficient: Scalar,
    pub sigma2_over_sigma1_sq: Scalar,
    pub sigma3_over_sigma1_sq: Scalar,
    pub sigma2_term: Scalar,
    pub sigma3_term: Scalar,
    pub character_term: Scalar,
    pub ratio: Scalar,
}

/// Requires `n >= 4`, `λ ≠ (n)` and `Σ1 ≠ 0`.
pub fn variance_ratio_terms(shape: &Partition, f: &DescentFunction) -> Result<VarianceRatioTerms> {
    let n = shape.n();
    let ratios = char_ratios(shape)?;
    let one = Rational::one();
    let gap = &one - &ratios.r2;
    if gap.is_zero() {
        return Err(Error::ZeroExpectation);
    }
    let gap_sq = &gap * &gap;
    let a = (&one - &ratios.r22) / &gap_sq;
    let b = (rat_int(4) * &ratios.r3 - rat_int(3) * &ratios.r22 - &one) / (rat_int(3) * &gap_sq);
    let c = (&ratios.r22 - &ratios.r2 * &ratios.r2) / &gap_sq;
    let s = sigmas(f, n, f.natural_arithmetic())?;
    let terms = match (&s.sigma1, &s.sigma2, &s.sigma3) {
        (Scalar::Exact(s1), Scalar::Exact(s2), Scalar::Exact(s3)) => {
            if s1.is_zero() {
                return Err(Error::ZeroExpectation);
            }
            let s1sq = s1 * s1;
            let q2 = s2 / &s1sq;
            let q3 = s3 / &s1sq;
            let t2 = &a * &q2;
            let t3 = &b * &q3;
            let ratio = &t2 + &t3 + &c;
            [a, b, q2, q3, t2, t3, c, ratio].map(Scalar::Exact)
        }
        _ => {
            let s1 = s.sigma1.to_f64();
            if s1 == 0.0 {
                return Err(Error::ZeroExpectation);
            }
            let q2 = s.sigma2.to_f64() / (s1 * s1);
            let q3 = s.sigma3.to_f64() / (s1 * s1);
            let (a, b, c) = (to_f64(&a), to_f64(&b), to_f64(&c));
            [a, b, q2, q3, a * q2, b * q3, c, a * q2 + b * q3 + c].map(Scalar::Float)
        }
    };
    let [a, b, q2, q3, t2, t3, c, ratio] = terms;
    Ok(VarianceRatioTerms {
        ratios,
        sigma2_coefficient: a,
        sigma3_coefficient: b,
        sigma2_over_sigma1_sq: q2,
        sigma3_over_sigma1_sq: q3,
        sigma2_term: t2,
        sigma3_term: t3,
        character_term: c,
        ratio,
    })
}

/// Parameters of a concentration run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConcentrationConfig {
    /// Row bound `λ_1 <= δ n`, `0 < δ < 1`.
    pub delta: f64,
    pub epsilon: f64,
    /// Relative deviation; defaults to `n^{-1/2 + ε}`.
    pub t: Option<f64>,
    pub samples: usize,
    pub seed: u64,
    pub stream: u64,
    pub workers: usize,
    /// Overrides the descent function's default witness.
    pub witness: Option<GrowthWitness>,
}

impl ConcentrationConfig {
    pub fn new(delta: f64, epsilon: f64, samples: usize, seed: u64) -> Result<Self> {
        let cfg = ConcentrationConfig {
            delta,
            epsilon,
            t: None,
            samples,
            seed,
            stream: 0,
            workers: 1,
            witness: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::InvalidArgument(format!("delta must be in (0,1), got {}", self.delta)));
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::InvalidArgument(format!("epsilon must be > 0, got {}", self.epsilon)));
        }
        if let Some(t) = self.t {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::InvalidArgument(format!("t must be > 0, got {t}")));
            }
        }
        if self.samples == 0 {
            return Err(Error::InvalidArgument("samples must be >= 1".into()));
        }
        Ok(())
    }
}

/// Outcome of a concentration run. Asymptotic claims are reported, not asserted.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub shape: Partition,
    pub n: usize,
    pub stat: String,
    pub config: ConcentrationConfig,
    pub row_bound_holds: bool,
    pub witness: GrowthWitness,
    pub witness_holds: bool,
    pub warnings: Vec<String>,
    pub t: f64,
    pub expectation: Scalar,
    pub variance: Scalar,
    pub empirical_mean: f64,
    pub empirical_variance: f64,
    pub outside_count: usize,
    pub outside_fraction: f64,
    /// `Var / (t^2 E^2)`; absent when `E = 0`.
    pub chebyshev_bound: Option<f64>,
    /// `Var / E^2`; absent when `E = 0`.
    pub variance_ratio: Option<Scalar>,
    /// `n Var / E^2`.
    pub scaled_variance_ratio: Option<f64>,
    pub ratio_terms: Option<VarianceRatioTerms>,
    #[serde(skip)]
    pub samples: Vec<f64>,
}

/// Samples `cfg.samples` uniform tableaux and compares `d_f` to its exact
/// moments. A sample is outside when `|d_f - E| >= t E`, the event bounded
/// by Chebyshev's inequality.
pub fn run_concentration_experiment(
    cfg: &ConcentrationConfig,
    shape: &Partition,
    f: &DescentFunction,
) -> Result<ExperimentReport> {
    cfg.validate()?;
    let n = shape.n();
    let mut warnings = Vec::new();
    let row_bound_holds = (shape.first_row() as f64) <= cfg.delta * n as f64;
    if !row_bound_holds {
        warnings.push(format!(
            "first row {} exceeds delta*n = {}",
            shape.first_row(),
            cfg.delta * n as f64
        ));
    }
    let witness = cfg
        .witness
        .or_else(|| f.default_growth_witness())
        .ok_or_else(|| {
            Error::InvalidArgument(format!("{} has no growth witness; supply one", f.label()))
        })?;
    let witness_holds = n < 2 || witness.holds_on(f, 1..=n - 1);
    if !witness_holds {
        warnings.push("growth witness bounds fail on 1..n-1".into());
    }
    let t = cfg.t.unwrap_or_else(|| (n as f64).powf(-0.5 + cfg.epsilon));

    let report = moment_report(shape, f)?;
    let e = report.expectation.to_f64();
    let var = report.variance.to_f64();

    let source = RandomSource::new(cfg.seed, cfg.stream);
    let samples = sample_statistics(shape, f, cfg.samples, &source, cfg.workers)?;
    let m = samples.len() as f64;
    // Neumaier summation keeps the mean independent of block layout.
    let mean = compensated_sum(samples.iter().copied()) / m;
    let empirical_variance = compensated_sum(samples.iter().map(|v| (v - mean) * (v - mean))) / m;
    let outside_count = samples.iter().filter(|&&v| (v - e).abs() >= t * e).count();

    let nonzero = e != 0.0;
    let variance_ratio = if nonzero {
        Some(match (&report.expectation, &report.variance) {
            (Scalar::Exact(e), Scalar::Exact(v)) => Scalar::Exact(v / (e * e)),
            _ => Scalar::Float(var / (e * e)),
        })
    } else {
        warnings.push("expectation is zero; ratios undefined".into());
        None
    };
    let ratio_terms = if nonzero && n >= 4 {
        Some(variance_ratio_terms(shape, f)?)
    } else {
        None
    };
    Ok(ExperimentReport {
        shape: shape.clone(),
        n,
        stat: f.label(),
        config: cfg.clone(),
        row_bound_holds,
        witness,
        witness_holds,
        warnings,
        t,
        chebyshev_bound: nonzero.then(|| var / (t * t * e * e)),
        scaled_variance_ratio: variance_ratio.as_ref().map(|r| n as f64 * r.to_f64()),
        variance_ratio,
        ratio_terms,
        expectation: report.expectation,
        variance: report.variance,
        empirical_mean: mean,
        empirical_variance,
        outside_count,
        outside_fraction: outside_count as f64 / m,
        samples,
    })
}

fn compensated_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Exponents of `q` in the eigenvalues of `T_{w0}` (`±q^{E[maj]}`) and of the
/// Coxeter element (`ω^{maj T} q^{E[des]}`) in the representation indexed by `λ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeckeExponentReport {
    pub shape: Partition,
    #[serde(with = "crate::scalar::rational_str")]
    pub maj_exponent: Rational,
    #[serde(with = "crate::scalar::rational_str")]
    pub des_exponent: Rational,
    /// Sorted multiset `{maj(T) mod n}`, one entry per tableau.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_exponents: Option<Vec<usize>>,
}

/// The omega listing reads the multiset of `maj` values off the generating
/// function and is gated by `f^λ <= cap`.
pub fn hecke_exponents(shape: &Partition, include_omega: bool, cap: u64) -> Result<HeckeExponentReport> {
    let n = shape.n();
    let omega_exponents = if include_omega {
        let count = count_syt(shape)?;
        if count > cap.into() {
            return Err(Error::EnumerationCap {
                count: count.to_string(),
                cap,
            });
        }
        let g = maj_generating_function(shape)?;
        let mut out = Vec::new();
        for (m, c) in g.coeffs().iter().enumerate() {
            let c: u64 = c
                .try_into()
                .map_err(|_| Error::Internal("negative or huge generating-function coefficient".into()))?;
            out.extend(std::iter::repeat_n(m % n, c as usize));
        }
        out.sort_unstable();
        Some(out)
    } else {
        None
    };
    Ok(HeckeExponentReport {
        shape: shape.clone(),
        maj_exponent: expected_maj(shape),
        des_exponent: expected_descent_statistic(shape, &DescentFunction::Des)?,
        omega_exponents,
    })
}
