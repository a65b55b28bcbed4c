//! Separability of pure states relative to a Bell pair.
//!
//! The restriction of a state to one side of a pair is a one-qubit state,
//! described by its Bloch vector `r = (ω(A₁), ω(A₂), ω(A₃))` (and `s` for the
//! other side). A pure state is separable for the pair exactly when both
//! restrictions are pure, `‖r‖ = ‖s‖ = 1`. It is maximally correlated when
//! both restrictions are trace states, `r = s = 0`.

use std::fmt;

use serde::Serialize;

use crate::algebra::Matrix4;
use crate::bellpair::BellPair;
use crate::correlation::{correlation_matrix, spectral_norm};
use crate::error::{Error, Result};
use crate::search::{minimize, SolverConfig};
use crate::states::{PureState, StateFunctional};

/// Bloch vectors of the two restrictions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BlochRestriction {
    pub r: [f64; 3],
    pub s: [f64; 3],
}

fn norm3(v: &[f64; 3]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dist3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    (0..3).map(|k| (a[k] - b[k]).powi(2)).sum::<f64>().sqrt()
}

impl BlochRestriction {
    pub fn r_norm(&self) -> f64 {
        norm3(&self.r)
    }

    pub fn s_norm(&self) -> f64 {
        norm3(&self.s)
    }
}

pub fn restrict<S: StateFunctional + ?Sized>(state: &S, pair: &BellPair) -> BlochRestriction {
    BlochRestriction {
        r: pair
            .left()
            .gens()
            .each_ref()
            .map(|g| state.real_expectation(g)),
        s: pair
            .right()
            .gens()
            .each_ref()
            .map(|g| state.real_expectation(g)),
    }
}

/// Thresholds for [`classify`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Thresholds {
    /// Separable when `min(‖r‖, ‖s‖) ≥ 1 − eps_sep`.
    pub eps_sep: f64,
    /// Maximally correlated when `max(‖r‖, ‖s‖) ≤ eps_max`.
    pub eps_max: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            eps_sep: 1e-7,
            eps_max: 1e-7,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ClassificationKind {
    Separable,
    Correlated(f64),
    MaximallyCorrelated,
}

impl ClassificationKind {
    pub fn name(&self) -> &'static str {
        match self {
            ClassificationKind::Separable => "Separable",
            ClassificationKind::Correlated(_) => "Correlated",
            ClassificationKind::MaximallyCorrelated => "MaximallyCorrelated",
        }
    }
}

impl fmt::Display for ClassificationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassificationKind::Correlated(c) => write!(f, "Correlated({c})"),
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Classification {
    pub kind: ClassificationKind,
    /// Always reported, whatever the kind.
    pub total_correlation: f64,
    pub restriction: BlochRestriction,
    pub thresholds: Thresholds,
}

pub fn classify(psi: &PureState, pair: &BellPair, thresholds: Thresholds) -> Classification {
    let restriction = restrict(psi, pair);
    let c = spectral_norm(&correlation_matrix(psi, pair));
    let (rn, sn) = (restriction.r_norm(), restriction.s_norm());
    let kind = if rn.min(sn) >= 1.0 - thresholds.eps_sep {
        ClassificationKind::Separable
    } else if rn.max(sn) <= thresholds.eps_max {
        ClassificationKind::MaximallyCorrelated
    } else {
        ClassificationKind::Correlated(c)
    };
    Classification {
        kind,
        total_correlation: c,
        restriction,
        thresholds,
    }
}

/// Everything the analysis reports for one state and pair.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorrelationReport {
    pub q: [[f64; 3]; 3],
    pub norm: f64,
    pub r: [f64; 3],
    pub s: [f64; 3],
    pub classification: String,
}

pub fn analyze(psi: &PureState, pair: &BellPair, thresholds: Thresholds) -> CorrelationReport {
    let q = correlation_matrix(psi, pair);
    let cls = classify(psi, pair, thresholds);
    CorrelationReport {
        q: q.0,
        norm: cls.total_correlation,
        r: cls.restriction.r,
        s: cls.restriction.s,
        classification: cls.kind.name().to_string(),
    }
}

/// A solver result with its provenance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOutcome {
    pub state: PureState,
    pub objective: f64,
    pub restarts_used: usize,
    pub seed: u64,
}

/// Restriction vectors must match their targets this closely.
pub const SOLUTION_TOLERANCE: f64 = 1e-8;

fn check_unit(name: &'static str, v: &[f64; 3]) -> Result<()> {
    let norm = norm3(v);
    if (norm - 1.0).abs() > 1e-12 || !norm.is_finite() {
        return Err(Error::NonUnitTarget { name, norm });
    }
    Ok(())
}

/// Finds a pure state whose restrictions have Bloch vectors `target_r`,
/// `target_s`. Such a state is separable and, for a Bell pair, unique up to
/// phase.
///
/// The objective is `‖r − r*‖² + ‖s − s*‖² + ‖(𝟙 − P)Ψ‖²` where
/// `P = ¼(𝟙 + r*·A)(𝟙 + s*·B)` is the rank-one projector onto the target. All
/// three terms vanish on the same set; the projector term is linear in the
/// distance to it, which lets the search resolve the last eight digits that
/// the quadratic restriction terms cannot.
pub fn find_separable(
    pair: &BellPair,
    target_r: [f64; 3],
    target_s: [f64; 3],
    seed: u64,
) -> Result<SolverOutcome> {
    find_separable_with(pair, target_r, target_s, seed, &SolverConfig::default())
}

pub fn find_separable_with(
    pair: &BellPair,
    target_r: [f64; 3],
    target_s: [f64; 3],
    seed: u64,
    cfg: &SolverConfig,
) -> Result<SolverOutcome> {
    check_unit("target_r", &target_r)?;
    check_unit("target_s", &target_s)?;

    let id = Matrix4::identity();
    let pa = (id + pair.left().combination(&target_r)).scale_real(0.5);
    let pb = (id + pair.right().combination(&target_s)).scale_real(0.5);
    let complement = id - pa * pb;

    let objective = |psi: &PureState| {
        let b = restrict(psi, pair);
        let off: f64 = complement
            .apply(psi.amplitudes())
            .iter()
            .map(|z| z.norm_sqr())
            .sum();
        dist3(&b.r, &target_r).powi(2) + dist3(&b.s, &target_s).powi(2) + off
    };
    let res = minimize(objective, seed, cfg);
    let b = restrict(&res.state, pair);
    if res.objective > cfg.tolerance
        || dist3(&b.r, &target_r) > SOLUTION_TOLERANCE
        || dist3(&b.s, &target_s) > SOLUTION_TOLERANCE
    {
        return Err(Error::NonConvergence {
            objective: res.objective,
            restarts: res.restarts_used,
        });
    }
    Ok(SolverOutcome {
        state: res.state,
        objective: res.objective,
        restarts_used: res.restarts_used,
        seed,
    })
}

/// Finds a pure state with `r = s = 0`, i.e. maximally correlated for `pair`.
pub fn find_maximally_correlated(pair: &BellPair, seed: u64) -> Result<SolverOutcome> {
    find_maximally_correlated_with(pair, seed, &SolverConfig::default())
}

pub fn find_maximally_correlated_with(
    pair: &BellPair,
    seed: u64,
    cfg: &SolverConfig,
) -> Result<SolverOutcome> {
    let objective = |psi: &PureState| {
        let b = restrict(psi, pair);
        b.r_norm().powi(2) + b.s_norm().powi(2)
    };
    let res = minimize(objective, seed, cfg);
    let b = restrict(&res.state, pair);
    if res.objective > cfg.tolerance
        || b.r_norm() > SOLUTION_TOLERANCE
        || b.s_norm() > SOLUTION_TOLERANCE
    {
        return Err(Error::NonConvergence {
            objective: res.objective,
            restarts: res.restarts_used,
        });
    }
    Ok(SolverOutcome {
        state: res.state,
        objective: res.objective,
        restarts_used: res.restarts_used,
        seed,
    })
}
