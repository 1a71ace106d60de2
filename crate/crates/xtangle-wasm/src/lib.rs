//! Browser bindings: thin JSON-in/JSON-out wrappers around the library
//! for the static demo page. Every entry point returns a JSON string and
//! reports failures as `{"error": "..."}` so the page never traps.

use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

use xtangle::state::subsystem_balance;
use xtangle::{dynamics, geometry, measures};
use xtangle::{
    Bell, CavityParams, CoherenceBounds, CoherencePoint, EnvelopeCheck, RegionClass, StateDoc,
    TimeGrid, XState,
};

fn error_json(message: impl std::fmt::Display) -> String {
    json!({ "error": message.to_string() }).to_string()
}

fn to_json(value: &impl Serialize) -> String {
    serde_json::to_string(value).unwrap_or_else(error_json)
}

/// Geometry and measures of one X state, ready to draw: the triangle
/// point with its bounds and classification, the closest separable
/// point, corner lists for the two regions, and the scalar measures.
#[derive(Serialize)]
struct RegionReport {
    point: CoherencePoint,
    bounds: CoherenceBounds,
    class: RegionClass,
    l: f64,
    l_max: f64,
    closest_separable: CoherencePoint,
    separable_square: [CoherencePoint; 4],
    entanglement_rectangle: Option<[CoherencePoint; 4]>,
    concurrence: f64,
    entanglement_of_formation: f64,
    robustness: f64,
    purity: f64,
    subsystem_entropy: f64,
}

fn region_report(doc: &StateDoc) -> Result<RegionReport, xtangle::Error> {
    let state = doc.resolve()?.as_x()?;
    let density = state.to_density();
    let (point, bounds) = geometry::to_point(&state)?;
    let l = geometry::l_measure(point, bounds);
    Ok(RegionReport {
        point,
        bounds,
        class: geometry::classify(point, bounds, xtangle::tol::GEOMETRY)?,
        l,
        l_max: geometry::l_max(bounds),
        closest_separable: geometry::closest_separable(point, bounds),
        separable_square: geometry::separable_square(bounds),
        entanglement_rectangle: geometry::entanglement_rectangle(bounds, xtangle::tol::GEOMETRY),
        concurrence: measures::concurrence(&density),
        entanglement_of_formation: measures::entanglement_of_formation(l)?,
        robustness: measures::robustness(&state).omega0,
        purity: density.purity(),
        subsystem_entropy: subsystem_balance(&density).entropy_first,
    })
}

/// Full geometry report for a state document (the same JSON the CLI
/// accepts): either `{"schema": 1, "matrix": ...}` or a family.
#[wasm_bindgen]
pub fn region_report_json(doc: &str) -> String {
    let parsed: StateDoc = match serde_json::from_str(doc) {
        Ok(parsed) => parsed,
        Err(e) => return error_json(format!("unreadable document: {e}")),
    };
    match region_report(&parsed) {
        Ok(report) => to_json(&report),
        Err(e) => error_json(e),
    }
}

/// Columns of one swept family, aligned index by index.
#[derive(Serialize)]
struct SweepCurve {
    q: Vec<f64>,
    l: Vec<f64>,
    concurrence: Vec<f64>,
    entanglement_of_formation: Vec<f64>,
    subsystem_entropy: Vec<f64>,
}

fn family_state(family: &str, params: &serde_json::Value, q: f64) -> Result<XState, String> {
    let get = |key: &str| params.get(key).and_then(serde_json::Value::as_f64);
    let slot = |key: &str, default: u64| -> Result<usize, String> {
        match get(key) {
            None => Ok(default as usize - 1),
            Some(v) if v.fract() == 0.0 && (1.0..=4.0).contains(&v) => Ok(v as usize - 1),
            Some(v) => Err(format!("parameter {key} must be a Bell index in 1..=4, got {v}")),
        }
    };
    let state = match family {
        "werner" => {
            let bell = Bell::from_index(slot("k", 1)? as u64 + 1).map_err(|e| e.to_string())?;
            XState::werner(bell, q)
        }
        "two_bell" => {
            let (k, j) = (slot("k", 1)?, slot("j", 2)?);
            if k == j {
                return Err("two_bell needs distinct k and j".into());
            }
            let mut weights = [0.0; 4];
            weights[k] = q;
            weights[j] = 1.0 - q;
            XState::from_bell_mixture(weights)
        }
        "bell_mixture" => {
            let kappa = get("kappa").ok_or("bell_mixture requires parameter kappa")?;
            XState::from_bell_mixture([q, 1.0 - 2.0 * kappa - q, kappa, kappa])
        }
        "generalized_werner" => {
            let s = get("s").ok_or("generalized_werner requires parameter s")?;
            let (k, j) = (slot("k", 1)?, slot("j", 2)?);
            if k == j {
                return Err("generalized_werner needs distinct k and j".into());
            }
            let mut coefficients = [0.0; 4];
            coefficients[k] = q;
            coefficients[j] = s - q;
            XState::generalized_werner(coefficients)
        }
        other => return Err(format!("unknown sweep family \"{other}\"")),
    };
    state.map_err(|e| e.to_string())
}

fn sweep_curve(
    family: &str,
    params_json: &str,
    from: f64,
    to: f64,
    step: f64,
) -> Result<SweepCurve, String> {
    let params: serde_json::Value = if params_json.trim().is_empty() {
        json!({})
    } else {
        serde_json::from_str(params_json).map_err(|e| format!("unreadable parameters: {e}"))?
    };
    if !from.is_finite() || !to.is_finite() || !step.is_finite() || step <= 0.0 || to < from {
        return Err(format!(
            "sweep range needs finite bounds with to >= from and step > 0 (got {from}, {to}, {step})"
        ));
    }
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    let mut curve = SweepCurve {
        q: Vec::with_capacity(count),
        l: Vec::with_capacity(count),
        concurrence: Vec::with_capacity(count),
        entanglement_of_formation: Vec::with_capacity(count),
        subsystem_entropy: Vec::with_capacity(count),
    };
    for i in 0..count {
        let q = from + i as f64 * step;
        let state = family_state(family, &params, q)?;
        let density = state.to_density();
        let (point, bounds) = geometry::to_point(&state).map_err(|e| e.to_string())?;
        let l = geometry::l_measure(point, bounds);
        curve.q.push(q);
        curve.l.push(l);
        curve.concurrence.push(measures::concurrence(&density));
        curve
            .entanglement_of_formation
            .push(measures::entanglement_of_formation(l).map_err(|e| e.to_string())?);
        curve.subsystem_entropy.push(dynamics::subsystem_entropy(&state));
    }
    Ok(curve)
}

/// Sweeps one family over `[from, to]` and returns the measure columns.
/// `params_json` holds the fixed parameters, e.g. `{"k": 1}` for werner
/// or `{"s": 0.75}` for generalized_werner; pass `{}` when none apply.
#[wasm_bindgen]
pub fn sweep_curve_json(family: &str, params_json: &str, from: f64, to: f64, step: f64) -> String {
    match sweep_curve(family, params_json, from, to, step) {
        Ok(curve) => to_json(&curve),
        Err(message) => error_json(message),
    }
}

/// Columns of one dynamics run. The envelope is absent when the grid is
/// too short to expose at least two entropy minima.
#[derive(Serialize)]
struct DynamicsCurve {
    t: Vec<f64>,
    l: Vec<f64>,
    entanglement_of_formation: Vec<f64>,
    subsystem_entropy: Vec<f64>,
    envelope: Option<Vec<f64>>,
    envelope_check: Option<EnvelopeCheck>,
}

fn dynamics_curve(
    gamma: f64,
    photons: u32,
    bell: u32,
    t_end: f64,
    step: f64,
) -> Result<DynamicsCurve, xtangle::Error> {
    let params = CavityParams::new(gamma, photons, Bell::from_index(bell as u64)?)?;
    let grid = TimeGrid::new(0.0, t_end, step)?;
    let mut trace = dynamics::sweep(&params, &grid)?;
    let envelope_check = match dynamics::attach_min_envelope(&mut trace) {
        Ok(()) => Some(dynamics::check_envelope_bound(&trace, 1e-6)?),
        Err(xtangle::Error::EnvelopeDegenerate { .. }) => None,
        Err(other) => return Err(other),
    };
    Ok(DynamicsCurve {
        t: trace.samples.iter().map(|s| s.t).collect(),
        l: trace.samples.iter().map(|s| s.l).collect(),
        entanglement_of_formation: trace
            .samples
            .iter()
            .map(|s| s.entanglement_of_formation)
            .collect(),
        subsystem_entropy: trace.samples.iter().map(|s| s.entropy).collect(),
        envelope: trace
            .envelope
            .map(|pairs| pairs.into_iter().map(|(_, v)| v).collect()),
        envelope_check,
    })
}

/// Evolves a Bell state through the paired cavities on `[0, t_end]` and
/// returns the measure and entropy columns with the minima envelope.
#[wasm_bindgen]
pub fn dynamics_trace_json(gamma: f64, photons: u32, bell: u32, t_end: f64, step: f64) -> String {
    match dynamics_curve(gamma, photons, bell, t_end, step) {
        Ok(curve) => to_json(&curve),
        Err(e) => error_json(e),
    }
}
