//! Truncated formal power series with exact rational coefficients.
//!
//! A [`TruncatedSeries`] of truncation degree `N` stores exactly the
//! coefficients of `t^0, ..., t^N`. Coefficients above `N` are unknown, so
//! [`TruncatedSeries::coefficient`] returns `None` for them instead of zero.
//! Binary operations refuse operands of different truncation degrees.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::lie::GradedRanks;

/// Truncation degree used when the caller does not pick one.
pub const DEFAULT_TRUNCATION: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation degree mismatch: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },
    #[error("series has zero constant term and is not invertible")]
    ZeroConstantTerm,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn zero(truncation: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigRational::zero(); truncation + 1],
        }
    }

    pub fn one(truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// Builds a series from explicit coefficients; the truncation degree is
    /// `coeffs.len() - 1`. An empty vector is read as the zero series of
    /// truncation 0.
    pub fn from_coefficients(mut coeffs: Vec<BigRational>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(BigRational::zero());
        }
        TruncatedSeries { coeffs }
    }

    pub fn from_integers<I>(coeffs: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<BigInt>,
    {
        Self::from_coefficients(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    /// The generating function `sum_d ranks(d) t^d` truncated at `truncation`.
    /// Ranks above the truncation degree are dropped.
    pub fn from_ranks(ranks: &GradedRanks, truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        for (degree, rank) in ranks.iter() {
            if degree <= truncation {
                s.coeffs[degree] = BigRational::from_integer(BigInt::from(rank.clone()));
            }
        }
        s
    }

    /// `(1 + c t^degree)^exponent` for an arbitrary integer exponent, via the
    /// generalized binomial series. `degree` must be positive.
    pub fn binomial_power(
        degree: usize,
        coefficient: &BigRational,
        exponent: &BigInt,
        truncation: usize,
    ) -> Self {
        assert!(degree > 0, "binomial_power needs a positive degree");
        let mut s = Self::zero(truncation);
        let e = BigRational::from_integer(exponent.clone());
        let mut term = BigRational::one();
        let mut j = 0usize;
        while j * degree <= truncation {
            s.coeffs[j * degree] = term.clone();
            if term.is_zero() {
                break;
            }
            // C(e, j+1) c^{j+1} = C(e, j) c^j * (e - j) / (j + 1) * c
            let jr = BigRational::from_integer(BigInt::from(j));
            term = term * (&e - &jr) / (jr + BigRational::one()) * coefficient;
            j += 1;
        }
        s
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^degree`, or `None` above the truncation degree.
    pub fn coefficient(&self, degree: usize) -> Option<&BigRational> {
        self.coeffs.get(degree)
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Self) -> Result<(), SeriesError> {
        if self.truncation() == other.truncation() {
            Ok(())
        } else {
            Err(SeriesError::TruncationMismatch {
                left: self.truncation(),
                right: other.truncation(),
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        Ok(TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        Ok(TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Cauchy product truncated at the common degree. Zero coefficients on
    /// either side are skipped, which keeps products with sparse factors
    /// such as `(1 - t^k)^l` cheap.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let n = self.truncation();
        let mut out = vec![BigRational::zero(); n + 1];
        let rhs: Vec<(usize, &BigRational)> = other
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &(j, b) in &rhs {
                if i + j > n {
                    break;
                }
                out[i + j] += a * b;
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Multiplicative inverse up to the truncation degree, by the usual
    /// triangular recurrence `b_d = -(sum_{i=1..d} a_i b_{d-i}) / a_0`.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let n = self.truncation();
        let inv0 = a0.recip();
        let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
        b.push(inv0.clone());
        for d in 1..=n {
            let mut acc = BigRational::zero();
            for i in 1..=d {
                let ai = &self.coeffs[i];
                if !ai.is_zero() {
                    acc += ai * &b[d - i];
                }
            }
            b.push(-acc * &inv0);
        }
        Ok(TruncatedSeries { coeffs: b })
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries[N={}](", self.truncation())?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{d}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.truncation() + 1)
    }
}
