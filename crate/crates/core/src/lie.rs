//! Graded rank maps and ranks of free graded Lie algebras.
//!
//! The free graded Lie algebra `L(W)` on a graded set of generators has the
//! tensor algebra `T(W)` as universal enveloping algebra, so its Poincaré
//! series satisfies
//!
//! ```text
//!   prod_{k odd} (1 + t^k)^{l_k} * prod_{k even} (1 - t^k)^{-l_k} = 1 / (1 - W(t))
//! ```
//!
//! [`free_lie_ranks`] solves this identity for `l_k` one degree at a time.
//! [`witt_number`] is the classical necklace count and serves as an
//! independent check for generators concentrated in one even degree.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::series::{SeriesError, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("truncation degree must be at least 1")]
    TruncationTooSmall,
    #[error("extracted Lie rank in degree {degree} is not an integer: {value}")]
    NonIntegral { degree: usize, value: BigRational },
    #[error("extracted Lie rank in degree {degree} is negative: {value}")]
    Negative { degree: usize, value: BigInt },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Finite map from positive degree to nonnegative rank. Zero ranks are never
/// stored, so an absent degree means rank zero.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct GradedRanks {
    entries: BTreeMap<usize, BigUint>,
}

impl GradedRanks {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets the rank in `degree`, removing the entry when `rank` is zero.
    ///
    /// Panics if `degree` is zero.
    pub fn set(&mut self, degree: usize, rank: impl Into<BigUint>) {
        assert!(degree >= 1, "graded ranks live in positive degrees");
        let rank = rank.into();
        if rank.is_zero() {
            self.entries.remove(&degree);
        } else {
            self.entries.insert(degree, rank);
        }
    }

    pub fn add_rank(&mut self, degree: usize, rank: &BigUint) {
        if rank.is_zero() {
            return;
        }
        assert!(degree >= 1, "graded ranks live in positive degrees");
        *self.entries.entry(degree).or_default() += rank;
    }

    pub fn get(&self, degree: usize) -> BigUint {
        self.entries.get(&degree).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigUint)> + '_ {
        self.entries.iter().map(|(&d, r)| (d, r))
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.keys().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of degrees with nonzero rank.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.entries.keys().next().copied()
    }

    pub fn total_rank(&self) -> BigUint {
        self.entries.values().sum()
    }

    /// Degreewise sum.
    pub fn sum(&self, other: &GradedRanks) -> GradedRanks {
        let mut out = self.clone();
        for (d, r) in other.iter() {
            out.add_rank(d, r);
        }
        out
    }

    /// Keeps only degrees `<= max_degree`.
    pub fn truncated(&self, max_degree: usize) -> GradedRanks {
        GradedRanks {
            entries: self
                .entries
                .range(..=max_degree)
                .map(|(&d, r)| (d, r.clone()))
                .collect(),
        }
    }

    pub fn shifted_up(&self, by: usize) -> GradedRanks {
        GradedRanks {
            entries: self
                .entries
                .iter()
                .map(|(&d, r)| (d + by, r.clone()))
                .collect(),
        }
    }

    /// Shifts every degree down by `by`, dropping entries that would land in
    /// degree zero or below.
    pub fn shifted_down(&self, by: usize) -> GradedRanks {
        GradedRanks {
            entries: self
                .entries
                .iter()
                .filter(|(&d, _)| d > by)
                .map(|(&d, r)| (d - by, r.clone()))
                .collect(),
        }
    }

    /// Cumulative total rank through each degree `1..=up_to`.
    pub fn partial_sums(&self, up_to: usize) -> Vec<BigUint> {
        let mut acc = BigUint::zero();
        (1..=up_to)
            .map(|d| {
                if let Some(r) = self.entries.get(&d) {
                    acc += r;
                }
                acc.clone()
            })
            .collect()
    }
}

impl<R: Into<BigUint>> FromIterator<(usize, R)> for GradedRanks {
    fn from_iter<I: IntoIterator<Item = (usize, R)>>(iter: I) -> Self {
        let mut out = GradedRanks::new();
        for (d, r) in iter {
            out.add_rank(d, &r.into());
        }
        out
    }
}

impl fmt::Debug for GradedRanks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter()).finish()
    }
}

impl fmt::Display for GradedRanks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (d, r)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}: {r}")?;
        }
        write!(f, "}}")
    }
}

/// The PBW factor of degree `degree` raised to `rank`, or its inverse.
fn pbw_factor(degree: usize, rank: &BigUint, inverse: bool, truncation: usize) -> TruncatedSeries {
    let l = BigInt::from(rank.clone());
    if degree % 2 == 1 {
        // (1 + t^k)^{±l}
        let e = if inverse { -l } else { l };
        TruncatedSeries::binomial_power(degree, &BigRational::one(), &e, truncation)
    } else {
        // (1 - t^k)^{∓l}
        let e = if inverse { l } else { -l };
        TruncatedSeries::binomial_power(degree, &-BigRational::one(), &e, truncation)
    }
}

/// Ranks `l_1, ..., l_N` of the free graded Lie algebra on `generators`.
///
/// Works through the PBW identity in ascending degree: after the factors of
/// degrees `< k` have been divided out of `1 / (1 - W(t))`, the coefficient
/// of `t^k` is exactly `l_k`. Any non-integral or negative value aborts.
pub fn free_lie_ranks(
    generators: &GradedRanks,
    truncation: usize,
) -> Result<GradedRanks, LieError> {
    if truncation < 1 {
        return Err(LieError::TruncationTooSmall);
    }
    let w = TruncatedSeries::from_ranks(generators, truncation);
    let mut residual = TruncatedSeries::one(truncation).sub(&w)?.reciprocal()?;
    let mut out = GradedRanks::new();
    for k in 1..=truncation {
        let q = residual.coefficient(k).expect("k within truncation");
        if !q.is_integer() {
            return Err(LieError::NonIntegral {
                degree: k,
                value: q.clone(),
            });
        }
        let q = q.to_integer();
        let rank = match q.sign() {
            Sign::NoSign => continue,
            Sign::Minus => {
                return Err(LieError::Negative {
                    degree: k,
                    value: q,
                })
            }
            Sign::Plus => q.magnitude().clone(),
        };
        residual = residual.mul(&pbw_factor(k, &rank, true, truncation))?;
        out.set(k, rank);
    }
    Ok(out)
}

/// Reassembles `prod_{k odd} (1 + t^k)^{l_k} * prod_{k even} (1 - t^k)^{-l_k}`
/// modulo `t^{N+1}`. Degrees above `N` contribute a factor of one.
pub fn pbw_series(lie_ranks: &GradedRanks, truncation: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(truncation);
    for (k, l) in lie_ranks.iter() {
        if k > truncation {
            break;
        }
        acc = acc
            .mul(&pbw_factor(k, l, false, truncation))
            .expect("factors share the truncation degree");
    }
    acc
}

fn mobius(mut n: u64) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of aperiodic necklaces (Lyndon words) of length `k` over `m`
/// letters: `(1/k) * sum_{d | k} mu(d) m^{k/d}`.
pub fn witt_number(m: u64, k: u64) -> BigUint {
    assert!(m >= 1 && k >= 1, "witt_number needs m >= 1 and k >= 1");
    let base = BigInt::from(m);
    let mut total = BigInt::zero();
    for d in (1..=k).filter(|d| k.is_multiple_of(*d)) {
        let mu = mobius(d);
        if mu == 0 {
            continue;
        }
        let exp = u32::try_from(k / d).expect("exponent fits in u32");
        let term = num_traits::pow::pow(base.clone(), exp as usize);
        if mu > 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    let (q, r) = total.div_rem(&BigInt::from(k));
    assert!(
        r.is_zero() && !q.is_negative(),
        "necklace sum not divisible by k"
    );
    q.magnitude().clone()
}
