//! Descent statistics of standard Young tableaux: exact expectations and
//! variances of descent functions, major-index generating functions,
//! symmetric-group characters through descent weights, and a uniform
//! tableau sampler for Monte Carlo concentration checks.

pub mod characters;
pub mod error;
pub mod moments;
pub mod partition;
pub mod qseries;
pub mod sampling;
pub mod scalar;
pub mod tableau;
pub mod verify;

pub use characters::{mn_character, CharRatios, CycleType, JointDescentProbabilities};
pub use error::{Error, Result};
pub use moments::{
    c_lambda, chebyshev_tail_bound, expected_descent_statistic, expected_maj, hecke_exponents,
    moment_report, run_concentration_experiment, variance_descent_statistic, variance_maj,
    ConcentrationConfig, ExperimentReport, HeckeExponentReport, MomentReport,
};
pub use partition::{Cell, Partition};
pub use qseries::{maj_generating_function, moments_from_genfun, q_integer, QPolynomial};
pub use sampling::{sample_statistics, sample_syt, sample_tableaux, RandomSource};
pub use scalar::{Rational, Scalar};
pub use tableau::{
    count_syt, enumerate_syt, Arithmetic, DescentFunction, DescentSet, GrowthWitness,
    StandardTableau, DEFAULT_ENUMERATION_CAP,
};
pub use verify::{run_oracle_suite, CheckOutcome, VerifyReport};
