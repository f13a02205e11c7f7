//! JSON scenario files describing a decision problem.
//!
//! ```json
//! {
//!   "outcomes": ["black", "white"],
//!   "world_state": [[0.7071067811865476, 0.0], [0.7071067811865476, 0.0]],
//!   "mind_state": [[0.5, 0.0], [0.0, 0.8660254037844386]],
//!   "actions": [
//!     { "label": "b", "payoffs": [1.0, 0.0] },
//!     { "label": "w", "payoffs": [0.0, 1.0] }
//!   ]
//! }
//! ```
//!
//! Amplitudes are `[re, im]` pairs. `mind_state` is optional. A
//! `portfolio` block generates one action per holding for a two-outcome
//! stock/bond market; see `docs/scenario_schema.md` in the repository.

use serde::{Deserialize, Serialize};

use crate::decision::{DecisionProblem, PayoffAction, PortfolioMarket, UtilityFunction};
use crate::error::{Error, Result};
use crate::hilbert::{Amplitude, StateVector};
use crate::mind::MindState;

/// `|‖v‖ − 1|` accepted silently.
pub const SILENT_NORM_TOLERANCE: f64 = 1e-9;
/// `|‖v‖ − 1|` accepted with a renormalization warning.
pub const MAX_NORM_DEVIATION: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub outcomes: Vec<String>,
    pub world_state: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mind_state: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    pub actions: Vec<ActionEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub portfolio: Option<PortfolioBlock>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionEntry {
    pub label: String,
    pub payoffs: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PortfolioBlock {
    pub q0: f64,
    pub r1: f64,
    pub r2: f64,
    pub r: f64,
    pub w0: f64,
    pub utility: UtilityFunction,
    pub holdings: Vec<Holding>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Holding {
    pub label: String,
    pub stock: f64,
    pub bond: f64,
}

/// A validated scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub problem: DecisionProblem,
    pub mind: Option<MindState>,
    /// Renormalization notices.
    pub warnings: Vec<String>,
}

fn to_amplitudes(pairs: &[[f64; 2]]) -> Vec<Amplitude> {
    pairs.iter().map(|&[re, im]| Amplitude::new(re, im)).collect()
}

fn checked_state(name: &str, pairs: &[[f64; 2]], warnings: &mut Vec<String>) -> Result<StateVector> {
    let amps = to_amplitudes(pairs);
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let off = (norm - 1.0).abs();
    if off > MAX_NORM_DEVIATION {
        return Err(Error::Normalization(format!(
            "{name} has norm {norm}, off by more than {MAX_NORM_DEVIATION}"
        )));
    }
    if off > SILENT_NORM_TOLERANCE {
        warnings.push(format!("{name} renormalized (norm was {norm})"));
    }
    StateVector::new(amps)
}

fn to_pairs(state: &StateVector) -> Vec<[f64; 2]> {
    state.amplitudes().iter().map(|a| [a.re, a.im]).collect()
}

impl ScenarioFile {
    pub fn validate(&self) -> Result<Scenario> {
        let mut warnings = Vec::new();
        let world = checked_state("world_state", &self.world_state, &mut warnings)?;
        let dim = world.dim();
        let mind = match &self.mind_state {
            Some(pairs) => {
                if pairs.len() != dim {
                    return Err(Error::Schema(format!(
                        "mind_state has {} amplitudes, world_state has {dim}",
                        pairs.len()
                    )));
                }
                Some(MindState::new(checked_state("mind_state", pairs, &mut warnings)?))
            }
            None => None,
        };
        let mut actions = self
            .actions
            .iter()
            .map(|a| PayoffAction::new(a.label.clone(), a.payoffs.clone()))
            .collect::<Result<Vec<_>>>()?;
        if let Some(p) = &self.portfolio {
            if dim != 2 {
                return Err(Error::Schema(format!(
                    "portfolio block needs a 2-outcome state, got {dim}"
                )));
            }
            let market = PortfolioMarket {
                q0: p.q0,
                r1: p.r1,
                r2: p.r2,
                r: p.r,
                w0: p.w0,
            };
            for h in &p.holdings {
                actions.push(market.action(h.label.clone(), h.stock, h.bond, p.utility)?);
            }
        }
        let problem = DecisionProblem::new(self.outcomes.clone(), world, actions)?;
        Ok(Scenario {
            problem,
            mind,
            warnings,
        })
    }

    /// Scenario file listing the problem's actions explicitly.
    pub fn from_problem(problem: &DecisionProblem, mind: Option<&MindState>) -> Self {
        Self {
            outcomes: problem.outcome_labels().to_vec(),
            world_state: to_pairs(problem.world_state()),
            mind_state: mind.map(|m| to_pairs(m.vector())),
            actions: problem
                .actions()
                .iter()
                .map(|a| ActionEntry {
                    label: a.label().to_string(),
                    payoffs: a.payoffs().to_vec(),
                })
                .collect(),
            portfolio: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }
}

/// Parses and validates a scenario document.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let file: ScenarioFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.validate()
}

pub fn serialize_scenario(problem: &DecisionProblem, mind: Option<&MindState>) -> String {
    ScenarioFile::from_problem(problem, mind).to_json()
}
