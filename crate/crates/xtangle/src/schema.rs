//! State documents: the JSON shape accepted by the command-line tools
//! and the browser demo. A document carries either an explicit 4x4
//! matrix (entries as `[re, im]` pairs) or a named family with its
//! parameters, never both.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::linalg::{Matrix4, C64};
use crate::state::{Bell, DensityMatrix4, XState};

/// Top-level state document. `schema` must be 1.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDoc {
    pub schema: u64,
    #[serde(default)]
    pub matrix: Option<[[[f64; 2]; 4]; 4]>,
    #[serde(default)]
    pub family: Option<String>,
    #[serde(default)]
    pub params: Option<FamilyParams>,
}

/// Union of the parameters any family can take; each family picks the
/// fields it needs and ignores none (unknown keys are rejected at the
/// document level).
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyParams {
    pub k: Option<u64>,
    pub q: Option<f64>,
    pub b: Option<[f64; 4]>,
    pub q_vec: Option<[f64; 4]>,
    pub s: Option<f64>,
    pub populations: Option<[f64; 4]>,
    pub x: Option<f64>,
    pub theta: Option<f64>,
    pub y: Option<f64>,
    pub phi: Option<f64>,
}

/// A document resolved into a validated state. Matrix documents stay
/// general (they need not be X-shaped); family documents are X states
/// by construction.
#[derive(Debug, Clone)]
pub enum ResolvedState {
    General(DensityMatrix4),
    X(XState),
}

impl ResolvedState {
    pub fn density(&self) -> DensityMatrix4 {
        match self {
            ResolvedState::General(d) => *d,
            ResolvedState::X(x) => x.to_density(),
        }
    }

    pub fn as_x(&self) -> Result<XState> {
        match self {
            ResolvedState::General(d) => XState::from_density(d),
            ResolvedState::X(x) => Ok(*x),
        }
    }
}

fn need<T: Copy>(value: Option<T>, family: &'static str, param: &'static str) -> Result<T> {
    value.ok_or(Error::MissingParam { family, param })
}

impl StateDoc {
    /// Validates the document and builds the state it describes.
    pub fn resolve(&self) -> Result<ResolvedState> {
        if self.schema != 1 {
            return Err(Error::UnsupportedSchema(self.schema));
        }
        match (&self.matrix, &self.family) {
            (Some(_), Some(_)) | (None, None) => Err(Error::AmbiguousStateDoc),
            (Some(entries), None) => {
                let mut m = Matrix4::zeros();
                for i in 0..4 {
                    for j in 0..4 {
                        m.0[i][j] = C64::new(entries[i][j][0], entries[i][j][1]);
                    }
                }
                Ok(ResolvedState::General(DensityMatrix4::new(m)?))
            }
            (None, Some(family)) => {
                let p = self.params.clone().unwrap_or_default();
                let state = match family.as_str() {
                    "bell" => {
                        let k = need(p.k, "bell", "k")?;
                        Bell::from_index(k)?.xstate()
                    }
                    "werner" => {
                        let k = need(p.k, "werner", "k")?;
                        let q = need(p.q, "werner", "q")?;
                        XState::werner(Bell::from_index(k)?, q)?
                    }
                    "bell_mixture" => {
                        let b = need(p.b, "bell_mixture", "b")?;
                        XState::from_bell_mixture(b)?
                    }
                    "generalized_werner" => {
                        let q_vec = need(p.q_vec, "generalized_werner", "q_vec")?;
                        if let Some(s) = p.s {
                            let sum: f64 = q_vec.iter().sum();
                            if (sum - s).abs() > 1e-12 {
                                return Err(Error::CoefficientSumMismatch { sum, s });
                            }
                        }
                        XState::generalized_werner(q_vec)?
                    }
                    "x_state" => {
                        let populations = need(p.populations, "x_state", "populations")?;
                        XState::new(
                            populations,
                            p.x.unwrap_or(0.0),
                            p.theta.unwrap_or(0.0),
                            p.y.unwrap_or(0.0),
                            p.phi.unwrap_or(0.0),
                        )?
                    }
                    other => return Err(Error::UnknownFamily(other.to_string())),
                };
                Ok(ResolvedState::X(state))
            }
        }
    }
}
