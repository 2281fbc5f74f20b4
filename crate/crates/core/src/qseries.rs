//! Dense polynomials in `q` over the integers and the major-index generating
//! function of a shape.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::scalar::Rational;

/// `Σ c_m q^m`, stored densely with the highest coefficient nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPolynomial {
    coeffs: Vec<BigInt>,
}

impl QPolynomial {
    pub fn from_coeffs<T: Into<BigInt>>(coeffs: impl IntoIterator<Item = T>) -> Self {
        let mut p = QPolynomial {
            coeffs: coeffs.into_iter().map(Into::into).collect(),
        };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        QPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn multiply(&self, other: &QPolynomial) -> QPolynomial {
        if self.is_zero() || other.is_zero() {
            return QPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPolynomial::from_coeffs(out)
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> QPolynomial {
        if self.is_zero() {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QPolynomial { coeffs }
    }

    /// Quotient `self / divisor`, failing on any nonzero remainder.
    pub fn exact_divide(&self, divisor: &QPolynomial) -> Result<QPolynomial> {
        let db = divisor.degree().ok_or(Error::NonExactDivision)?;
        if self.is_zero() {
            return Ok(QPolynomial::zero());
        }
        let da = self.coeffs.len() - 1;
        if da < db {
            return Err(Error::NonExactDivision);
        }
        let lead = &divisor.coeffs[db];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let top = &rem[k + db];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::NonExactDivision);
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * b;
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NonExactDivision);
        }
        Ok(QPolynomial::from_coeffs(quot))
    }

    /// Value at `q = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    /// `f'(1) = Σ c_m m`.
    pub fn first_derivative_at_one(&self) -> BigInt {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(m, c)| c * BigInt::from(m))
            .sum()
    }

    /// `f''(1) = Σ c_m m (m-1)`.
    pub fn second_derivative_at_one(&self) -> BigInt {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(m, c)| c * BigInt::from(m * m.saturating_sub(1)))
            .sum()
    }
}

/// `[m]_q = 1 + q + … + q^{m-1}`.
pub fn q_integer(m: usize) -> Result<QPolynomial> {
    if m < 1 {
        return Err(Error::InvalidArgument("q-integer needs m >= 1".into()));
    }
    Ok(QPolynomial {
        coeffs: vec![BigInt::one(); m],
    })
}

/// Stanley's hook formula:
/// `Σ_T q^{maj T} = q^{Σ (i-1) λ_i} Π_{k<=n} [k]_q / Π_cells [h]_q`.
pub fn maj_generating_function(shape: &Partition) -> Result<QPolynomial> {
    let mut acc = QPolynomial::one();
    for k in 2..=shape.n() {
        acc = acc.multiply(&q_integer(k)?);
    }
    for h in shape.hook_lengths() {
        if h > 1 {
            acc = acc.exact_divide(&q_integer(h)?)?;
        }
    }
    Ok(acc.shift(shape.column_pair_sum() as usize))
}

/// Count, mean and variance of `maj` read off the generating function.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GenfunMoments {
    #[serde(serialize_with = "ser_display")]
    pub count: BigUint,
    #[serde(with = "crate::scalar::rational_str")]
    pub mean: Rational,
    #[serde(with = "crate::scalar::rational_str")]
    pub variance: Rational,
}

fn ser_display<T: fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// `E = f'(1)/f(1)`, `Var = (f''(1) + f'(1))/f(1) - E^2`.
pub fn moments_from_genfun(shape: &Partition) -> Result<GenfunMoments> {
    let f = maj_generating_function(shape)?;
    let f0 = f.eval_at_one();
    let f1 = f.first_derivative_at_one();
    let f2 = f.second_derivative_at_one();
    let count = f0
        .to_biguint()
        .filter(|c| !c.is_zero())
        .ok_or_else(|| Error::Internal(format!("generating function of {shape} vanishes at 1")))?;
    let mean = Rational::new(f1.clone(), f0.clone());
    let variance = Rational::new(f2 + f1, f0) - &mean * &mean;
    Ok(GenfunMoments {
        count,
        mean,
        variance,
    })
}

impl fmt::Display for QPolynomial {
    /// Pretty form, e.g. `1 + q^2 + 2q^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.sign() == Sign::Minus;
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            first = false;
            let abs = c.abs();
            if k == 0 || !abs.is_one() {
                write!(f, "{abs}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPolynomial({self})")
    }
}

struct Coeffs<'a>(&'a [BigInt]);

impl Serialize for Coeffs<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for c in self.0 {
            let raw = RawValue::from_string(c.to_string()).map_err(serde::ser::Error::custom)?;
            seq.serialize_element(&raw)?;
        }
        seq.end()
    }
}

/// JSON form `{"coeffs":[c0,c1,...]}`; coefficients are plain JSON integers of any size.
impl Serialize for QPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            coeffs: Coeffs<'a>,
        }
        Wire {
            coeffs: Coeffs(&self.coeffs),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            coeffs: Vec<Box<RawValue>>,
        }
        let wire = Wire::deserialize(d)?;
        let coeffs = wire
            .coeffs
            .iter()
            .map(|raw| {
                raw.get()
                    .trim()
                    .parse::<BigInt>()
                    .map_err(|_| D::Error::custom(format!("not an integer: {}", raw.get())))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(QPolynomial::from_coeffs(coeffs))
    }
}
