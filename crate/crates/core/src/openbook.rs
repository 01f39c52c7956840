//! Open books `M = (dV x D^2) u V_h` described by rational models of the page
//! `V` and of the homotopy fibre `F` of the binding inclusion `dV -> V`.
//!
//! Under the monodromy hypotheses the loop space splits rationally as
//! `Omega M ~ Omega V x Omega Sigma^2 F`, so every rank computation here is a
//! degreewise sum of a page term and a suspended-fibre term. The classifier
//! reads off the elliptic/hyperbolic dichotomy from the two terms.
//!
//! Topological hypotheses (simple connectivity, nilpotence of the binding,
//! the monodromy condition) cannot be checked from rational models. They are
//! carried as caller-asserted flags and [`validate_spec`] lists each one that
//! is missing.

use std::fmt;

use thiserror::Error;

use crate::lie::GradedRanks;
use crate::spaces::{
    is_rationally_elliptic, loop_ranks, space_ranks, suspend, SpaceError, SpaceModel,
};

/// Where the claim that `h` acts nilpotently came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ActionEvidence {
    /// Nilpotent on `pi_*(V)`, as the classifier needs.
    #[default]
    Homotopy,
    /// Only known on `H_*(V; Z)`; accepted, but reported in the notes.
    Homology,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonodromyHypothesis {
    /// `e(h)_*` is the identity on `pi_*(DV) (x) Q`.
    IdentityOnRationalHomotopy,
    /// `e(h)_*^m` is the identity and `h` acts nilpotently on `pi_*(V)`.
    FiniteHomotopyOrder {
        m: u64,
        nilpotent_action: bool,
        evidence: ActionEvidence,
    },
    Unverified,
}

impl MonodromyHypothesis {
    pub fn finite_order(m: u64, nilpotent_action: bool) -> Self {
        MonodromyHypothesis::FiniteHomotopyOrder {
            m,
            nilpotent_action,
            evidence: ActionEvidence::Homotopy,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpenBookSpec {
    /// Dimension `n` of `M`.
    pub ambient_dim: usize,
    pub page: SpaceModel,
    /// Model of the homotopy fibre of `dV -> V`; `None` when unknown.
    pub fibre: Option<SpaceModel>,
    pub monodromy: MonodromyHypothesis,
    pub page_simply_connected: bool,
    pub boundary_nilpotent_connected: bool,
    pub total_simply_connected: bool,
}

impl OpenBookSpec {
    /// A spec with all connectivity flags asserted.
    pub fn new(
        ambient_dim: usize,
        page: SpaceModel,
        fibre: Option<SpaceModel>,
        monodromy: MonodromyHypothesis,
    ) -> Self {
        OpenBookSpec {
            ambient_dim,
            page,
            fibre,
            monodromy,
            page_simply_connected: true,
            boundary_nilpotent_connected: true,
            total_simply_connected: true,
        }
    }

    pub fn with_monodromy(&self, monodromy: MonodromyHypothesis) -> Self {
        OpenBookSpec {
            monodromy,
            ..self.clone()
        }
    }

    /// Caveats that do not block classification but belong in a report.
    pub fn notes(&self) -> Vec<String> {
        let mut notes = Vec::new();
        if let MonodromyHypothesis::FiniteHomotopyOrder {
            nilpotent_action: true,
            evidence: ActionEvidence::Homology,
            ..
        } = self.monodromy
        {
            notes.push(
                "nilpotent action was asserted on homology only; the classifier assumes it \
                 holds on pi_*(V), which needs V_h to be a nilpotent space"
                    .to_string(),
            );
        }
        if let Some(l) = self.fibre.as_ref().and_then(SpaceModel::single_sphere) {
            notes.push(format!(
                "fibre model S^{l} is taken as given; realizability by a manifold pair is not checked"
            ));
        }
        notes
    }
}

/// A hypothesis of the dichotomy that a spec fails to meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    AmbientDimTooSmall(usize),
    PageInvalid(SpaceError),
    PageNotSimplyConnected,
    PageSimplyConnectedNotAsserted,
    BoundaryNotAssertedNilpotentConnected,
    TotalNotAssertedSimplyConnected,
    FibreUnavailable,
    FibreInvalid(SpaceError),
    FibreContractible,
    FibreNotSuspendable,
    MonodromyUnverified,
    MonodromyOrderZero,
    MonodromyActionNotNilpotent,
}

impl Violation {
    /// Stable machine-readable name.
    pub fn code(&self) -> &'static str {
        match self {
            Violation::AmbientDimTooSmall(_) => "ambient_dim_too_small",
            Violation::PageInvalid(_) => "page_invalid",
            Violation::PageNotSimplyConnected => "page_not_simply_connected",
            Violation::PageSimplyConnectedNotAsserted => "page_simply_connected_not_asserted",
            Violation::BoundaryNotAssertedNilpotentConnected => {
                "boundary_nilpotent_connected_not_asserted"
            }
            Violation::TotalNotAssertedSimplyConnected => "total_simply_connected_not_asserted",
            Violation::FibreUnavailable => "fibre_unavailable",
            Violation::FibreInvalid(_) => "fibre_invalid",
            Violation::FibreContractible => "fibre_contractible",
            Violation::FibreNotSuspendable => "fibre_not_suspendable",
            Violation::MonodromyUnverified => "monodromy_unverified",
            Violation::MonodromyOrderZero => "monodromy_order_zero",
            Violation::MonodromyActionNotNilpotent => "monodromy_action_not_nilpotent",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::AmbientDimTooSmall(n) => write!(f, "ambient dimension {n} is below 3"),
            Violation::PageInvalid(e) => write!(f, "page model is invalid: {e}"),
            Violation::PageNotSimplyConnected => write!(
                f,
                "page is claimed simply connected but its model contains a 1-dimensional sphere"
            ),
            Violation::PageSimplyConnectedNotAsserted => {
                write!(f, "page V must be simply connected")
            }
            Violation::BoundaryNotAssertedNilpotentConnected => {
                write!(f, "binding dV must be connected and nilpotent")
            }
            Violation::TotalNotAssertedSimplyConnected => {
                write!(f, "total space M must be simply connected")
            }
            Violation::FibreUnavailable => {
                write!(f, "no model for the homotopy fibre of dV -> V was supplied")
            }
            Violation::FibreInvalid(e) => write!(f, "fibre model is invalid: {e}"),
            Violation::FibreContractible => write!(
                f,
                "the homotopy fibre of dV -> V is never rationally contractible, \
                 since H^(n-1)(V, dV; Z) = Z"
            ),
            Violation::FibreNotSuspendable => write!(
                f,
                "fibre must be a sphere or wedge of spheres so that its suspensions are determined"
            ),
            Violation::MonodromyUnverified => write!(
                f,
                "monodromy hypothesis unverified: need e(h)_* = id on pi_*(DV) (x) Q, \
                 or e(h)_*^m = id with h acting nilpotently on pi_*(V)"
            ),
            Violation::MonodromyOrderZero => write!(f, "monodromy order m must be at least 1"),
            Violation::MonodromyActionNotNilpotent => write!(
                f,
                "finite homotopy order also needs h to act nilpotently on pi_*(V)"
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HyperbolicReason {
    PageHyperbolic,
    FibreNotASphere,
    Both,
}

impl HyperbolicReason {
    pub fn code(&self) -> &'static str {
        match self {
            HyperbolicReason::PageHyperbolic => "page_hyperbolic",
            HyperbolicReason::FibreNotASphere => "fibre_not_a_sphere",
            HyperbolicReason::Both => "both",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DichotomyVerdict {
    /// `M` is rationally elliptic and `F ~_Q S^l`; `ranks` is `pi_*(M) (x) Q`.
    Elliptic {
        l: usize,
        ranks: GradedRanks,
    },
    Hyperbolic {
        reason: HyperbolicReason,
    },
    NotClassifiable {
        missing: Vec<Violation>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpenBookError {
    #[error("open book hypotheses not met ({} violation(s))", .0.len())]
    NotClassifiable(Vec<Violation>),
    #[error("the comparison applies only when the fibre is rationally a sphere")]
    FibreNotRationalSphere,
    #[error(transparent)]
    Space(#[from] SpaceError),
}

fn model_error(model: &SpaceModel) -> Option<SpaceError> {
    match model {
        SpaceModel::Sphere(0) => Some(SpaceError::ZeroDimension),
        SpaceModel::WedgeOfSpheres(w) if w.is_empty() => Some(SpaceError::EmptyWedge),
        SpaceModel::WedgeOfSpheres(w) if w.min_dim() == Some(0) => Some(SpaceError::ZeroDimension),
        SpaceModel::EllipticRanks(r) => match r.min_degree() {
            Some(d) if d < 2 => Some(SpaceError::EllipticLowDegree(d)),
            _ => None,
        },
        _ => None,
    }
}

/// Every hypothesis of the dichotomy that `spec` does not meet, in a fixed
/// order. An empty list means the spec can be classified.
pub fn validate_spec(spec: &OpenBookSpec) -> Vec<Violation> {
    let mut out = Vec::new();
    if spec.ambient_dim < 3 {
        out.push(Violation::AmbientDimTooSmall(spec.ambient_dim));
    }

    if let Some(e) = model_error(&spec.page) {
        out.push(Violation::PageInvalid(e));
    } else if !spec.page_simply_connected {
        out.push(Violation::PageSimplyConnectedNotAsserted);
    } else if !spec.page.is_simply_connected() {
        out.push(Violation::PageNotSimplyConnected);
    }
    if !spec.boundary_nilpotent_connected {
        out.push(Violation::BoundaryNotAssertedNilpotentConnected);
    }
    if !spec.total_simply_connected {
        out.push(Violation::TotalNotAssertedSimplyConnected);
    }

    match &spec.fibre {
        None => out.push(Violation::FibreUnavailable),
        Some(fibre) => {
            if let Some(e) = model_error(fibre) {
                out.push(Violation::FibreInvalid(e));
            } else if !fibre.is_suspendable() {
                out.push(Violation::FibreNotSuspendable);
            } else if fibre.is_contractible() {
                out.push(Violation::FibreContractible);
            }
        }
    }

    match spec.monodromy {
        MonodromyHypothesis::IdentityOnRationalHomotopy => {}
        MonodromyHypothesis::Unverified => out.push(Violation::MonodromyUnverified),
        MonodromyHypothesis::FiniteHomotopyOrder {
            m,
            nilpotent_action,
            ..
        } => {
            if m == 0 {
                out.push(Violation::MonodromyOrderZero);
            }
            if !nilpotent_action {
                out.push(Violation::MonodromyActionNotNilpotent);
            }
        }
    }
    out
}

/// Loop-space ranks of the double `DV = d(V x I)`, from
/// `Omega DV ~ Omega V x Omega Sigma F`.
pub fn double_loop_ranks(
    page: &SpaceModel,
    fibre: &SpaceModel,
    truncation: usize,
) -> Result<GradedRanks, SpaceError> {
    let page_term = loop_ranks(page, truncation)?;
    let fibre_term = loop_ranks(&suspend(fibre, 1)?, truncation)?;
    Ok(page_term.sum(&fibre_term))
}

fn checked_fibre(spec: &OpenBookSpec) -> Result<&SpaceModel, OpenBookError> {
    let violations = validate_spec(spec);
    if !violations.is_empty() {
        return Err(OpenBookError::NotClassifiable(violations));
    }
    Ok(spec.fibre.as_ref().expect("validated spec has a fibre"))
}

/// Loop-space ranks of `M`, from `Omega M ~_Q Omega V x Omega Sigma^2 F`.
///
/// A finite-order monodromy reduces to the identity case through the
/// `m`-sheeted cover `M' -> M` with monodromy `h^m`, a rational equivalence,
/// so both hypotheses give the same ranks.
pub fn openbook_loop_ranks(
    spec: &OpenBookSpec,
    truncation: usize,
) -> Result<GradedRanks, OpenBookError> {
    let fibre = checked_fibre(spec)?;
    let page_term = loop_ranks(&spec.page, truncation)?;
    let fibre_term = loop_ranks(&suspend(fibre, 2)?, truncation)?;
    Ok(page_term.sum(&fibre_term))
}

/// Ranks of `pi_*(M) (x) Q = pi_*(V) (x) Q  +  pi_*(Sigma^2 F) (x) Q` in degrees
/// `1..=N`.
pub fn homotopy_ranks(
    spec: &OpenBookSpec,
    truncation: usize,
) -> Result<GradedRanks, OpenBookError> {
    if truncation < 2 {
        return Err(SpaceError::TruncationTooSmall {
            min: 2,
            got: truncation,
        }
        .into());
    }
    Ok(openbook_loop_ranks(spec, truncation - 1)?.shifted_up(1))
}

/// Elliptic/hyperbolic verdict for `M`. Truncations below 2 are raised to 2.
pub fn classify_dichotomy(spec: &OpenBookSpec, truncation: usize) -> DichotomyVerdict {
    let truncation = truncation.max(2);
    let fibre = match checked_fibre(spec) {
        Ok(f) => f,
        Err(OpenBookError::NotClassifiable(missing)) => {
            return DichotomyVerdict::NotClassifiable { missing }
        }
        Err(e) => unreachable!("validation only reports violations: {e}"),
    };
    let page_elliptic = is_rationally_elliptic(&spec.page);
    match (page_elliptic, fibre.single_sphere()) {
        (true, Some(l)) => {
            let page = space_ranks(&spec.page, truncation).expect("validated page has ranks");
            let sphere = space_ranks(&SpaceModel::Sphere(l + 2), truncation)
                .expect("S^(l+2) is simply connected");
            DichotomyVerdict::Elliptic {
                l,
                ranks: page.sum(&sphere),
            }
        }
        (false, Some(_)) => DichotomyVerdict::Hyperbolic {
            reason: HyperbolicReason::PageHyperbolic,
        },
        (true, None) => DichotomyVerdict::Hyperbolic {
            reason: HyperbolicReason::FibreNotASphere,
        },
        (false, None) => DichotomyVerdict::Hyperbolic {
            reason: HyperbolicReason::Both,
        },
    }
}

/// When the fibre of `dV -> V` is rationally a sphere, `M` is rationally
/// elliptic exactly when the binding is.
pub fn grove_halperin_test(
    fibre_is_rational_sphere: bool,
    binding_elliptic: bool,
) -> Result<bool, OpenBookError> {
    if !fibre_is_rational_sphere {
        return Err(OpenBookError::FibreNotRationalSphere);
    }
    Ok(binding_elliptic)
}
