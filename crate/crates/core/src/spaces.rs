//! Rational models of pages, fibres and bindings, and their homotopy ranks.
//!
//! Degrees follow the usual conventions: [`loop_ranks`] reports
//! `dim pi_k(Omega X) (x) Q`, [`space_ranks`] reports `dim pi_k(X) (x) Q`, and
//! the two differ by a shift of one.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::lie::{free_lie_ranks, GradedRanks, LieError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("sphere dimension must be at least 1")]
    ZeroDimension,
    #[error("a wedge of spheres needs at least one sphere")]
    EmptyWedge,
    #[error("model contains S^1 and is not simply connected; rational ranks are undefined here")]
    NotSimplyConnected,
    #[error("elliptic rank data must start in degree >= 2, found degree {0}")]
    EllipticLowDegree(usize),
    #[error("suspension of a model given only by homotopy ranks is not determined")]
    SuspendEllipticRanks,
    #[error("suspension order must be at least 1")]
    ZeroSuspension,
    #[error("growth analysis needs a sphere or a wedge of spheres")]
    GrowthUnsupported,
    #[error("truncation {got} is below the minimum {min}")]
    TruncationTooSmall { min: usize, got: usize },
    #[error("truncation {0} gives fewer than three nonzero partial sums")]
    UnstableGrowth(usize),
    #[error(transparent)]
    Lie(#[from] LieError),
}

impl SpaceError {
    /// Stable machine-readable name.
    pub fn code(&self) -> &'static str {
        match self {
            SpaceError::ZeroDimension => "zero_dimension",
            SpaceError::EmptyWedge => "empty_wedge",
            SpaceError::NotSimplyConnected => "not_simply_connected",
            SpaceError::EllipticLowDegree(_) => "elliptic_low_degree",
            SpaceError::SuspendEllipticRanks => "suspend_elliptic_ranks",
            SpaceError::ZeroSuspension => "zero_suspension",
            SpaceError::GrowthUnsupported => "growth_unsupported",
            SpaceError::TruncationTooSmall { .. } => "truncation_too_small",
            SpaceError::UnstableGrowth(_) => "unstable_growth",
            SpaceError::Lie(_) => "lie",
        }
    }
}

/// Multiset of sphere dimensions, stored as dimension -> multiplicity.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Wedge {
    counts: BTreeMap<usize, u64>,
}

impl Wedge {
    pub fn from_dims<I: IntoIterator<Item = usize>>(dims: I) -> Self {
        let mut counts = BTreeMap::new();
        for d in dims {
            *counts.entry(d).or_insert(0) += 1;
        }
        Wedge { counts }
    }

    /// `copies` spheres of dimension `dim`.
    pub fn copies(dim: usize, copies: u64) -> Self {
        let mut counts = BTreeMap::new();
        if copies > 0 {
            counts.insert(dim, copies);
        }
        Wedge { counts }
    }

    /// Total number of spheres, with multiplicity.
    pub fn len(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn counts(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts.iter().map(|(&d, &c)| (d, c))
    }

    /// Dimensions with repetition, ascending.
    pub fn dims(&self) -> impl Iterator<Item = usize> + '_ {
        self.counts
            .iter()
            .flat_map(|(&d, &c)| std::iter::repeat_n(d, c as usize))
    }

    pub fn min_dim(&self) -> Option<usize> {
        self.counts.keys().next().copied()
    }

    /// The dimension of the only sphere, if there is exactly one.
    pub fn single(&self) -> Option<usize> {
        match self.counts.iter().next() {
            Some((&d, &1)) if self.counts.len() == 1 => Some(d),
            _ => None,
        }
    }

    fn shifted(&self, by: usize) -> Wedge {
        Wedge {
            counts: self.counts.iter().map(|(&d, &c)| (d + by, c)).collect(),
        }
    }
}

impl fmt::Debug for Wedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.dims()).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SpaceModel {
    Contractible,
    Sphere(usize),
    WedgeOfSpheres(Wedge),
    /// `pi_*(X) (x) Q` of a rationally elliptic space, given directly.
    EllipticRanks(GradedRanks),
}

impl SpaceModel {
    pub fn sphere(dim: usize) -> Result<Self, SpaceError> {
        if dim == 0 {
            return Err(SpaceError::ZeroDimension);
        }
        Ok(SpaceModel::Sphere(dim))
    }

    /// A wedge of spheres. A single sphere comes back as [`SpaceModel::Sphere`].
    pub fn wedge<I: IntoIterator<Item = usize>>(dims: I) -> Result<Self, SpaceError> {
        Self::from_wedge(Wedge::from_dims(dims))
    }

    pub fn from_wedge(wedge: Wedge) -> Result<Self, SpaceError> {
        if wedge.is_empty() {
            return Err(SpaceError::EmptyWedge);
        }
        if wedge.min_dim() == Some(0) {
            return Err(SpaceError::ZeroDimension);
        }
        Ok(SpaceModel::WedgeOfSpheres(wedge).normalized())
    }

    pub fn elliptic(ranks: GradedRanks) -> Result<Self, SpaceError> {
        match ranks.min_degree() {
            Some(d) if d < 2 => Err(SpaceError::EllipticLowDegree(d)),
            _ => Ok(SpaceModel::EllipticRanks(ranks)),
        }
    }

    /// Rewrites a one-sphere wedge as a sphere.
    pub fn normalized(self) -> Self {
        match &self {
            SpaceModel::WedgeOfSpheres(w) => match w.single() {
                Some(d) => SpaceModel::Sphere(d),
                None => self,
            },
            _ => self,
        }
    }

    /// Dimension `l` if the model is a single sphere `S^l`.
    pub fn single_sphere(&self) -> Option<usize> {
        match self {
            SpaceModel::Sphere(n) => Some(*n),
            SpaceModel::WedgeOfSpheres(w) => w.single(),
            _ => None,
        }
    }

    pub fn is_contractible(&self) -> bool {
        match self {
            SpaceModel::Contractible => true,
            SpaceModel::WedgeOfSpheres(w) => w.is_empty(),
            SpaceModel::EllipticRanks(r) => r.is_empty(),
            SpaceModel::Sphere(_) => false,
        }
    }

    pub fn is_suspendable(&self) -> bool {
        !matches!(self, SpaceModel::EllipticRanks(_))
    }

    /// False when the model contains a circle or degree-one homotopy.
    pub fn is_simply_connected(&self) -> bool {
        match self {
            SpaceModel::Contractible => true,
            SpaceModel::Sphere(n) => *n >= 2,
            SpaceModel::WedgeOfSpheres(w) => w.min_dim().is_none_or(|d| d >= 2),
            SpaceModel::EllipticRanks(r) => r.min_degree().is_none_or(|d| d >= 2),
        }
    }

    fn check(&self) -> Result<(), SpaceError> {
        match self {
            SpaceModel::Contractible => Ok(()),
            SpaceModel::Sphere(0) => Err(SpaceError::ZeroDimension),
            SpaceModel::Sphere(1) => Err(SpaceError::NotSimplyConnected),
            SpaceModel::Sphere(_) => Ok(()),
            SpaceModel::WedgeOfSpheres(w) => match w.min_dim() {
                None => Err(SpaceError::EmptyWedge),
                Some(0) => Err(SpaceError::ZeroDimension),
                Some(1) => Err(SpaceError::NotSimplyConnected),
                Some(_) => Ok(()),
            },
            SpaceModel::EllipticRanks(r) => match r.min_degree() {
                Some(d) if d < 2 => Err(SpaceError::EllipticLowDegree(d)),
                _ => Ok(()),
            },
        }
    }
}

impl fmt::Display for SpaceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceModel::Contractible => write!(f, "*"),
            SpaceModel::Sphere(n) => write!(f, "S^{n}"),
            SpaceModel::WedgeOfSpheres(w) => {
                for (i, (d, c)) in w.counts().enumerate() {
                    if i > 0 {
                        write!(f, " v ")?;
                    }
                    if c == 1 {
                        write!(f, "S^{d}")?;
                    } else {
                        write!(f, "{c}xS^{d}")?;
                    }
                }
                Ok(())
            }
            SpaceModel::EllipticRanks(r) => write!(f, "elliptic{r}"),
        }
    }
}

/// Ranks of `pi_*(Omega X) (x) Q` in degrees `1..=N`.
///
/// A wedge of spheres loops to the free graded Lie algebra on generators in
/// degrees `dim - 1`; odd spheres have one class, even spheres `S^n` have
/// classes in degrees `n - 1` and `2n - 2`.
pub fn loop_ranks(model: &SpaceModel, truncation: usize) -> Result<GradedRanks, SpaceError> {
    if truncation < 1 {
        return Err(SpaceError::TruncationTooSmall {
            min: 1,
            got: truncation,
        });
    }
    model.check()?;
    let ranks = match model {
        SpaceModel::Contractible => GradedRanks::new(),
        SpaceModel::Sphere(n) => {
            let mut r = GradedRanks::new();
            r.set(n - 1, 1u32);
            if n % 2 == 0 {
                r.set(2 * n - 2, 1u32);
            }
            r
        }
        SpaceModel::WedgeOfSpheres(w) => {
            let generators: GradedRanks = w.counts().map(|(d, c)| (d - 1, c)).collect();
            free_lie_ranks(&generators, truncation)?
        }
        SpaceModel::EllipticRanks(r) => r.shifted_down(1),
    };
    Ok(ranks.truncated(truncation))
}

/// Ranks of `pi_*(X) (x) Q` in degrees `1..=N`.
pub fn space_ranks(model: &SpaceModel, truncation: usize) -> Result<GradedRanks, SpaceError> {
    if truncation < 2 {
        return Err(SpaceError::TruncationTooSmall {
            min: 2,
            got: truncation,
        });
    }
    match model {
        SpaceModel::EllipticRanks(r) => {
            model.check()?;
            Ok(r.truncated(truncation))
        }
        _ => Ok(loop_ranks(model, truncation - 1)?.shifted_up(1)),
    }
}

/// `k`-fold suspension. Sphere dimensions shift up by `k`.
pub fn suspend(model: &SpaceModel, k: usize) -> Result<SpaceModel, SpaceError> {
    if k == 0 {
        return Err(SpaceError::ZeroSuspension);
    }
    match model {
        SpaceModel::Contractible => Ok(SpaceModel::Contractible),
        SpaceModel::Sphere(0) => Err(SpaceError::ZeroDimension),
        SpaceModel::Sphere(n) => Ok(SpaceModel::Sphere(n + k)),
        SpaceModel::WedgeOfSpheres(w) => {
            if w.min_dim() == Some(0) {
                return Err(SpaceError::ZeroDimension);
            }
            Ok(SpaceModel::WedgeOfSpheres(w.shifted(k)).normalized())
        }
        SpaceModel::EllipticRanks(_) => Err(SpaceError::SuspendEllipticRanks),
    }
}

/// Finite-dimensionality of `pi_*(X) (x) Q`.
///
/// A wedge of two or more simply connected spheres is hyperbolic because
/// the free Lie algebra on two or more generators grows exponentially;
/// [`growth_estimate`] shows this numerically.
pub fn is_rationally_elliptic(model: &SpaceModel) -> bool {
    match model {
        SpaceModel::Contractible | SpaceModel::Sphere(_) | SpaceModel::EllipticRanks(_) => true,
        SpaceModel::WedgeOfSpheres(w) => w.len() <= 1,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthClass {
    PolynomialOrFinite,
    Exponential,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthReport {
    /// `partial_sums[d - 1]` is the total rank in degrees `1..=d`.
    pub partial_sums: Vec<BigUint>,
    pub classification: GrowthClass,
    /// Reciprocal of the smallest positive root of `1 - W(t)`.
    pub growth_base: Option<f64>,
}

impl GrowthReport {
    pub fn truncation(&self) -> usize {
        self.partial_sums.len()
    }

    pub fn partial_sum(&self, degree: usize) -> BigUint {
        match degree {
            0 => BigUint::zero(),
            d => self.partial_sums[d - 1].clone(),
        }
    }

    /// Last degree `<= bound` whose rank is nonzero.
    fn last_jump(&self, bound: usize) -> Option<usize> {
        (1..=bound.min(self.truncation()))
            .rev()
            .find(|&d| self.partial_sum(d) > self.partial_sum(d - 1))
    }

    /// Per-degree growth rate of the partial sums across the window
    /// `lo..=hi`, `(S(b) / S(a))^(1 / (b - a))`, where `a` and `b` are the
    /// last degrees at or below `lo` and `hi` that carry nonzero rank. Using
    /// those degrees keeps wedges whose ranks live on a sublattice of the
    /// degrees from being measured out of phase.
    pub fn window_rate(&self, lo: usize, hi: usize) -> Option<f64> {
        let a = self.last_jump(lo)?;
        let b = self.last_jump(hi)?;
        if b <= a {
            return None;
        }
        let sa = self.partial_sum(a).to_f64()?;
        let sb = self.partial_sum(b).to_f64()?;
        Some((sb / sa).powf(1.0 / (b - a) as f64))
    }
}

const GROWTH_MIN_TRUNCATION: usize = 10;
const BISECTION_RELATIVE_TOLERANCE: f64 = 1e-12;

/// Smallest positive root of `1 - sum_i c_i t^{d_i - 1}` on `(0, 1)`.
fn wedge_root(wedge: &Wedge) -> f64 {
    let f = |t: f64| {
        1.0 - wedge
            .counts()
            .map(|(d, c)| c as f64 * t.powi((d - 1) as i32))
            .sum::<f64>()
    };
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > BISECTION_RELATIVE_TOLERANCE * lo.max(f64::MIN_POSITIVE) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Partial sums of `space_ranks` and the exponential growth base of a
/// sphere or wedge of spheres.
pub fn growth_estimate(model: &SpaceModel, truncation: usize) -> Result<GrowthReport, SpaceError> {
    if !matches!(model, SpaceModel::Sphere(_) | SpaceModel::WedgeOfSpheres(_)) {
        return Err(SpaceError::GrowthUnsupported);
    }
    if truncation < GROWTH_MIN_TRUNCATION {
        return Err(SpaceError::TruncationTooSmall {
            min: GROWTH_MIN_TRUNCATION,
            got: truncation,
        });
    }
    let ranks = space_ranks(model, truncation)?;
    let partial_sums = ranks.partial_sums(truncation);
    if partial_sums.iter().filter(|s| !s.is_zero()).count() < 3 {
        return Err(SpaceError::UnstableGrowth(truncation));
    }
    let (classification, growth_base) = match model {
        SpaceModel::WedgeOfSpheres(w) if w.len() >= 2 => {
            (GrowthClass::Exponential, Some(1.0 / wedge_root(w)))
        }
        _ => (GrowthClass::PolynomialOrFinite, None),
    };
    Ok(GrowthReport {
        partial_sums,
        classification,
        growth_base,
    })
}
