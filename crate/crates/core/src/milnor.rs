//! Milnor open books of odd spheres and the Brieskorn family.
//!
//! The page of the Milnor fibration of an isolated hypersurface singularity
//! in `C^{n+1}` is a wedge of `mu` copies of `S^n`. For `mu >= 2` that page is
//! rationally hyperbolic while the ambient `S^{2n+1}` is elliptic, which
//! rules out the monodromy hypotheses of the dichotomy.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::openbook::{MonodromyHypothesis, OpenBookSpec};
use crate::spaces::{SpaceModel, Wedge};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MilnorError {
    #[error("expected {expected} exponents for n = {n}, got {got}")]
    ExponentCount {
        n: usize,
        expected: usize,
        got: usize,
    },
    #[error("exponent a_{index} = {value} must be at least 2")]
    ExponentTooSmall { index: usize, value: u64 },
    #[error("n = {n} is below the required minimum {min}")]
    DimensionTooSmall { n: usize, min: usize },
    #[error("multiplicity {0} is too large to build a page model")]
    MultiplicityTooLarge(BigUint),
    #[error("variation matrix must be square and nonempty")]
    NotSquare,
}

/// Exponents of `f = z_1^{a_1} + ... + z_{n+1}^{a_{n+1}}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BrieskornExponents {
    exponents: Vec<u64>,
    n: usize,
}

impl BrieskornExponents {
    pub fn new(exponents: Vec<u64>, n: usize) -> Result<Self, MilnorError> {
        if n < 1 {
            return Err(MilnorError::DimensionTooSmall { n, min: 1 });
        }
        if exponents.len() != n + 1 {
            return Err(MilnorError::ExponentCount {
                n,
                expected: n + 1,
                got: exponents.len(),
            });
        }
        if let Some((i, &a)) = exponents.iter().enumerate().find(|(_, &a)| a < 2) {
            return Err(MilnorError::ExponentTooSmall {
                index: i + 1,
                value: a,
            });
        }
        Ok(BrieskornExponents { exponents, n })
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Complex dimension `n`; the ambient sphere is `S^{2n+1}`.
    pub fn n(&self) -> usize {
        self.n
    }
}

/// Milnor number `prod (a_i - 1)` of the origin.
pub fn brieskorn_multiplicity(b: &BrieskornExponents) -> BigUint {
    b.exponents.iter().map(|&a| BigUint::from(a - 1)).product()
}

/// `V ~ wedge of mu copies of S^n`; the empty wedge is contractible.
pub fn milnor_page(mu: u64, n: usize) -> Result<SpaceModel, MilnorError> {
    if n < 2 {
        return Err(MilnorError::DimensionTooSmall { n, min: 2 });
    }
    Ok(match mu {
        0 => SpaceModel::Contractible,
        mu => SpaceModel::WedgeOfSpheres(Wedge::copies(n, mu)).normalized(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoObstructionReason {
    DimensionBelowThree,
    MultiplicityAtMostOne,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstraintOutcome {
    NoObstruction(NoObstructionReason),
    /// `mu >= 2` and `n >= 3`: the monodromy cannot have finite homotopy
    /// order with nilpotent action, and the binding fibre is not a sphere.
    Obstruction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintReport {
    pub exponents: BrieskornExponents,
    pub multiplicity: BigUint,
    pub outcome: ConstraintOutcome,
}

impl ConstraintReport {
    pub fn has_obstruction(&self) -> bool {
        self.outcome == ConstraintOutcome::Obstruction
    }

    /// Human-readable conclusions, one per line.
    pub fn conclusions(&self) -> Vec<String> {
        let n = self.exponents.n;
        match self.outcome {
            ConstraintOutcome::NoObstruction(NoObstructionReason::DimensionBelowThree) => {
                vec![format!(
                    "no obstruction: n = {n} < 3, the binding need not be simply connected"
                )]
            }
            ConstraintOutcome::NoObstruction(NoObstructionReason::MultiplicityAtMostOne) => {
                vec![format!(
                    "no obstruction: multiplicity {} <= 1, the page is rationally elliptic",
                    self.multiplicity
                )]
            }
            ConstraintOutcome::Obstruction => vec![
                "either no integer m makes h^m rationally homotopic to the identity \
                 (in particular h has infinite order), or h acts non-nilpotently on H_*(V;Z)"
                    .to_string(),
                "the homotopy fibre of the binding inclusion dV -> V is not rationally a sphere"
                    .to_string(),
                format!(
                    "otherwise the elliptic branch of the dichotomy would fail: S^{} is \
                     rationally elliptic but the page, a wedge of {} copies of S^{n}, is \
                     rationally hyperbolic",
                    2 * n + 1,
                    self.multiplicity
                ),
            ],
        }
    }
}

impl fmt::Display for ConstraintReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "exponents: {:?}, n = {}",
            self.exponents.exponents, self.exponents.n
        )?;
        writeln!(f, "multiplicity mu = {}", self.multiplicity)?;
        for line in self.conclusions() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

pub fn monodromy_constraint_report(b: &BrieskornExponents) -> ConstraintReport {
    let multiplicity = brieskorn_multiplicity(b);
    let outcome = if b.n < 3 {
        ConstraintOutcome::NoObstruction(NoObstructionReason::DimensionBelowThree)
    } else if multiplicity <= BigUint::one() {
        ConstraintOutcome::NoObstruction(NoObstructionReason::MultiplicityAtMostOne)
    } else {
        ConstraintOutcome::Obstruction
    };
    ConstraintReport {
        exponents: b.clone(),
        multiplicity,
        outcome,
    }
}

/// Open book spec of `S^{2n+1}` with the Milnor page. The binding fibre is
/// not derivable from the exponents, so it is left to the caller; without it
/// the spec classifies as not classifiable.
pub fn milnor_openbook_spec(
    b: &BrieskornExponents,
    monodromy: MonodromyHypothesis,
    fibre: Option<SpaceModel>,
) -> Result<OpenBookSpec, MilnorError> {
    if b.n < 3 {
        return Err(MilnorError::DimensionTooSmall { n: b.n, min: 3 });
    }
    let mu = brieskorn_multiplicity(b);
    let mu_small = mu.to_u64().ok_or(MilnorError::MultiplicityTooLarge(mu))?;
    let page = milnor_page(mu_small, b.n)?;
    Ok(OpenBookSpec::new(2 * b.n + 1, page, fibre, monodromy))
}

/// `Var(h): H_n(V, dV) -> H_n(V)` in a chosen basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariationMatrix {
    rows: Vec<Vec<BigInt>>,
}

impl VariationMatrix {
    pub fn new<T: Into<BigInt>>(rows: Vec<Vec<T>>) -> Result<Self, MilnorError> {
        let size = rows.len();
        if size == 0 || rows.iter().any(|r| r.len() != size) {
            return Err(MilnorError::NotSquare);
        }
        Ok(VariationMatrix {
            rows: rows
                .into_iter()
                .map(|r| r.into_iter().map(Into::into).collect())
                .collect(),
        })
    }

    pub fn identity(size: usize) -> Self {
        let rows = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| {
                        if i == j {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        VariationMatrix { rows }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn mul(&self, other: &VariationMatrix) -> Result<VariationMatrix, MilnorError> {
        let n = self.size();
        if other.size() != n {
            return Err(MilnorError::NotSquare);
        }
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| &self.rows[i][k] * &other.rows[k][j]).sum())
                    .collect()
            })
            .collect();
        Ok(VariationMatrix { rows })
    }

    /// Exact determinant by Bareiss fraction-free elimination. Every
    /// division is exact, so all intermediates stay integral.
    pub fn determinant(&self) -> BigInt {
        let n = self.size();
        let mut m = self.rows.clone();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        negate = !negate;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    debug_assert!((&num % &prev).is_zero());
                    m[i][j] = num / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        if negate {
            -det
        } else {
            det
        }
    }
}

/// Whether `Var` is an isomorphism of free abelian groups, i.e. `det = ±1`.
pub fn variation_is_iso(v: &VariationMatrix) -> bool {
    v.determinant().abs().is_one()
}

/// `diag(v, v)`: the variation of `h # h` on `H_n(V # V) = H_n(V) + H_n(V)`.
pub fn boundary_connected_sum_variation(v: &VariationMatrix) -> VariationMatrix {
    let n = v.size();
    let rows = (0..2 * n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if i / n == j / n {
                        v.rows[i % n][j % n].clone()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    VariationMatrix { rows }
}
