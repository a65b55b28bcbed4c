//! JSON file formats.
//!
//! - pure state: `{"re": [4], "im": [4]}`
//! - mixed state: `{"rho_re": 4×4, "rho_im": 4×4}`
//! - matrix: `{"re": 4×4, "im": 4×4}`
//! - pair: `{"label": …, "left": [3 matrices], "right": [3 matrices]}`, or
//!   `{"preset": "canonical" | "paper-AB" | "paper-prime"}`, or
//!   `{"transport": {"base": preset, "unitary": matrix}}`
//!
//! Parsers check every state and pair invariant and name the one that fails.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{Matrix4, Unitary4};
use crate::bellpair::{transported_pair, BellPair, PairCandidate, Preset, ValidationReport};
use crate::error::{Error, Result};
use crate::separability::SolverOutcome;
use crate::states::{MixedState, PureState, State};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PureStateJson {
    pub re: [f64; 4],
    pub im: [f64; 4],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MixedStateJson {
    pub rho_re: [[f64; 4]; 4],
    pub rho_im: [[f64; 4]; 4],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub re: [[f64; 4]; 4],
    pub im: [[f64; 4]; 4],
}

impl From<&Matrix4> for MatrixJson {
    fn from(m: &Matrix4) -> Self {
        MatrixJson {
            re: m.real_part(),
            im: m.imag_part(),
        }
    }
}

impl From<&MatrixJson> for Matrix4 {
    fn from(m: &MatrixJson) -> Self {
        Matrix4::from_parts(m.re, m.im)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitPairJson {
    #[serde(default)]
    pub label: String,
    pub left: [MatrixJson; 3],
    pub right: [MatrixJson; 3],
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresetJson {
    preset: String,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct TransportJson {
    transport: TransportBody,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct TransportBody {
    base: String,
    unitary: MatrixJson,
}

impl From<&PureState> for PureStateJson {
    fn from(psi: &PureState) -> Self {
        let a = psi.amplitudes();
        PureStateJson {
            re: a.map(|z| z.re),
            im: a.map(|z| z.im),
        }
    }
}

fn object_keys(text: &str) -> Result<Value> {
    let v: Value = serde_json::from_str(text)?;
    if !v.is_object() {
        return Err(Error::Format(
            "expected a JSON object at the top level".into(),
        ));
    }
    Ok(v)
}

/// Parses either state format.
pub fn parse_state(text: &str) -> Result<State> {
    let v = object_keys(text)?;
    if v.get("rho_re").is_some() || v.get("rho_im").is_some() {
        let m: MixedStateJson = serde_json::from_str(text)?;
        Ok(State::Mixed(MixedState::new(Matrix4::from_parts(
            m.rho_re, m.rho_im,
        ))?))
    } else if v.get("re").is_some() || v.get("im").is_some() {
        let p: PureStateJson = serde_json::from_str(text)?;
        let amps = std::array::from_fn(|k| num_complex::Complex64::new(p.re[k], p.im[k]));
        Ok(State::Pure(PureState::new(amps)?))
    } else {
        Err(Error::Format(
            "state must have fields `re`/`im` (pure) or `rho_re`/`rho_im` (mixed)".into(),
        ))
    }
}

pub fn state_to_json(psi: &PureState) -> Value {
    serde_json::to_value(PureStateJson::from(psi)).expect("plain data")
}

pub fn mixed_state_to_json(rho: &MixedState) -> Value {
    serde_json::to_value(MixedStateJson {
        rho_re: rho.rho().real_part(),
        rho_im: rho.rho().imag_part(),
    })
    .expect("plain data")
}

/// State JSON plus `{"provenance": {"objective", "restarts_used", "seed"}}`.
pub fn solver_outcome_to_json(out: &SolverOutcome) -> Value {
    let mut v = state_to_json(&out.state);
    v["provenance"] = serde_json::json!({
        "objective": out.objective,
        "restarts_used": out.restarts_used,
        "seed": out.seed,
    });
    v
}

/// Parses any of the three pair forms, validating explicit generators at `tol`.
pub fn parse_pair(text: &str, tol: f64) -> Result<BellPair> {
    let v = object_keys(text)?;
    if v.get("preset").is_some() {
        let p: PresetJson = serde_json::from_str(text)?;
        Ok(p.preset.parse::<Preset>()?.pair())
    } else if v.get("transport").is_some() {
        let t: TransportJson = serde_json::from_str(text)?;
        let base = t.transport.base.parse::<Preset>()?.pair();
        let u = Unitary4::new(Matrix4::from(&t.transport.unitary))?;
        Ok(transported_pair(&u, &base))
    } else {
        let p: ExplicitPairJson = serde_json::from_str(text)?;
        BellPair::try_from_candidate(explicit_candidate(&p), tol)
    }
}

fn explicit_candidate(p: &ExplicitPairJson) -> PairCandidate {
    PairCandidate {
        label: p.label.clone(),
        left: p.left.each_ref().map(Matrix4::from),
        right: p.right.each_ref().map(Matrix4::from),
    }
}

/// Reads explicit generators without validating them, for reporting.
pub fn parse_candidate(text: &str) -> Result<PairCandidate> {
    let v = object_keys(text)?;
    if v.get("preset").is_some() || v.get("transport").is_some() {
        return Ok(parse_pair(text, f64::INFINITY)?.to_candidate());
    }
    let p: ExplicitPairJson = serde_json::from_str(text)?;
    Ok(explicit_candidate(&p))
}

pub fn pair_to_json(pair: &BellPair) -> Value {
    serde_json::to_value(ExplicitPairJson {
        label: pair.label().to_string(),
        left: pair.left().gens().each_ref().map(MatrixJson::from),
        right: pair.right().gens().each_ref().map(MatrixJson::from),
    })
    .expect("plain data")
}

pub fn validation_report_to_json(r: &ValidationReport) -> Value {
    serde_json::json!({
        "passed": r.passed(),
        "tolerance": r.tolerance,
        "hermiticity": r.hermiticity,
        "involution": r.involution,
        "tracelessness": r.tracelessness,
        "anticommutation": r.anticommutation,
        "cross_commutation": r.cross_commutation,
        "closure": r.closure,
        "independence_rank": r.independence_rank,
        "generation_rank": r.generation_rank,
        "failures": r.failures(),
    })
}
