//! Actions as payoff-weighted projector sums, expected utility and choice.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{LinearOperator, StateVector};

/// Utilities within this distance of the maximum count as tied.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Payoffs of an action, in utility units, one per outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffAction {
    label: String,
    payoffs: Vec<f64>,
}

impl PayoffAction {
    pub fn new(label: impl Into<String>, payoffs: Vec<f64>) -> Result<Self> {
        let label = label.into();
        if payoffs.is_empty() {
            return Err(Error::Schema(format!("action `{label}` has no payoffs")));
        }
        if let Some(i) = payoffs.iter().position(|p| !p.is_finite()) {
            return Err(Error::Schema(format!(
                "action `{label}` has non-finite payoff at index {i}"
            )));
        }
        Ok(Self { label, payoffs })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn payoffs(&self) -> &[f64] {
        &self.payoffs
    }

    pub fn dim(&self) -> usize {
        self.payoffs.len()
    }

    /// Same action with every payoff mapped through `k·p + c`.
    pub fn affine(&self, k: f64, c: f64) -> Self {
        Self {
            label: self.label.clone(),
            payoffs: self.payoffs.iter().map(|p| k * p + c).collect(),
        }
    }
}

/// `A_α = Σ α_ω P_ω`, i.e. `diag(payoffs)`.
pub fn action_operator(action: &PayoffAction) -> LinearOperator {
    LinearOperator::diagonal(action.payoffs()).expect("payoffs are finite")
}

/// `U(α, β) = <β|A_α|β> = Σ α_ω |β_ω|²`.
pub fn expected_utility(action: &PayoffAction, state: &StateVector) -> Result<f64> {
    if action.dim() != state.dim() {
        return Err(Error::dims(state.dim(), action.dim()));
    }
    Ok(action
        .payoffs()
        .iter()
        .zip(state.amplitudes())
        .map(|(p, a)| p * a.norm_sqr())
        .sum())
}

/// `p_ω = |β_ω|²`.
pub fn outcome_probabilities(state: &StateVector) -> Vec<f64> {
    state.amplitudes().iter().map(|a| a.norm_sqr()).collect()
}

/// A world state together with the actions on offer.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionProblem {
    outcome_labels: Vec<String>,
    world_state: StateVector,
    actions: Vec<PayoffAction>,
}

impl DecisionProblem {
    pub fn new(
        outcome_labels: Vec<String>,
        world_state: StateVector,
        actions: Vec<PayoffAction>,
    ) -> Result<Self> {
        let dim = world_state.dim();
        if outcome_labels.len() != dim {
            return Err(Error::Schema(format!(
                "{} outcome labels for a {dim}-dimensional state",
                outcome_labels.len()
            )));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = outcome_labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::Schema(format!("duplicate outcome label `{dup}`")));
        }
        if actions.is_empty() {
            return Err(Error::EmptyActionSet);
        }
        for a in &actions {
            if a.dim() != dim {
                return Err(Error::Schema(format!(
                    "action `{}` has {} payoffs, expected {dim}",
                    a.label(),
                    a.dim()
                )));
            }
        }
        Ok(Self {
            outcome_labels,
            world_state,
            actions,
        })
    }

    pub fn outcome_labels(&self) -> &[String] {
        &self.outcome_labels
    }

    pub fn world_state(&self) -> &StateVector {
        &self.world_state
    }

    pub fn actions(&self) -> &[PayoffAction] {
        &self.actions
    }
}

/// Outcome of [`choose`].
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiceResult {
    pub utilities: Vec<f64>,
    /// Every index whose utility is within [`TIE_TOLERANCE`] of the maximum, ascending.
    pub best_indices: Vec<usize>,
    /// Lowest member of `best_indices`.
    pub reported_choice: usize,
}

impl ChoiceResult {
    /// Argmax over precomputed utilities.
    pub fn from_utilities(utilities: Vec<f64>) -> Result<Self> {
        if utilities.is_empty() {
            return Err(Error::EmptyActionSet);
        }
        let max = utilities.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let best_indices: Vec<usize> = utilities
            .iter()
            .enumerate()
            .filter(|(_, &u)| max - u <= TIE_TOLERANCE)
            .map(|(i, _)| i)
            .collect();
        let reported_choice = best_indices[0];
        Ok(Self {
            utilities,
            best_indices,
            reported_choice,
        })
    }

    pub fn is_tie(&self) -> bool {
        self.best_indices.len() > 1
    }
}

/// Picks the action with the highest expected utility in the world state.
pub fn choose(problem: &DecisionProblem) -> Result<ChoiceResult> {
    let utilities = problem
        .actions()
        .iter()
        .map(|a| expected_utility(a, problem.world_state()))
        .collect::<Result<Vec<_>>>()?;
    ChoiceResult::from_utilities(utilities)
}

/// Utility of money used when generating portfolio payoffs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum UtilityFunction {
    Linear,
    /// `z^γ`, γ ∈ (0, 1].
    Power { gamma: f64 },
    /// `ln z`, payoffs must be positive.
    Log,
}

impl UtilityFunction {
    pub fn eval(&self, z: f64) -> Result<f64> {
        match *self {
            UtilityFunction::Linear => Ok(z),
            UtilityFunction::Power { gamma } => {
                if !(gamma > 0.0 && gamma <= 1.0) {
                    return Err(Error::Domain(format!("power utility needs γ in (0,1], got {gamma}")));
                }
                if z < 0.0 {
                    return Err(Error::Domain(format!("power utility of negative payoff {z}")));
                }
                Ok(z.powf(gamma))
            }
            UtilityFunction::Log => {
                if z <= 0.0 {
                    return Err(Error::Domain(format!("log utility of non-positive payoff {z}")));
                }
                Ok(z.ln())
            }
        }
    }
}

/// Market for the two-asset portfolio example: a stock with per-unit
/// returns `r1`/`r2` in the two states and a riskless bond returning `r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PortfolioMarket {
    /// Stock price.
    pub q0: f64,
    pub r1: f64,
    pub r2: f64,
    pub r: f64,
    /// Initial wealth.
    pub w0: f64,
}

/// Budget slack for `q0·a + b = W0`.
pub const BUDGET_TOLERANCE: f64 = 1e-9;

impl PortfolioMarket {
    /// Action for holding `stock` units of the stock and `bond` units of the bond.
    pub fn action(
        &self,
        label: impl Into<String>,
        stock: f64,
        bond: f64,
        utility: UtilityFunction,
    ) -> Result<PayoffAction> {
        let spent = self.q0 * stock + bond;
        let within_budget = (spent - self.w0).abs() <= BUDGET_TOLERANCE;
        if !within_budget {
            return Err(Error::Budget {
                spent,
                wealth: self.w0,
            });
        }
        let payoffs = vec![
            utility.eval(self.r1 * stock + self.r * bond)?,
            utility.eval(self.r2 * stock + self.r * bond)?,
        ];
        PayoffAction::new(label, payoffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::expectation;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn bets() -> (PayoffAction, PayoffAction) {
        (
            PayoffAction::new("b", vec![1.0, 0.0]).unwrap(),
            PayoffAction::new("w", vec![0.0, 1.0]).unwrap(),
        )
    }

    fn even_bet() -> PayoffAction {
        PayoffAction::new(
            "even",
            (1..=100)
                .map(|ball| if ball % 2 == 0 { 100.0 } else { 0.0 })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn action_operators() {
        let (b, _) = bets();
        assert_eq!(
            action_operator(&b),
            LinearOperator::diagonal(&[1.0, 0.0]).unwrap()
        );
        let zero = PayoffAction::new("z", vec![0.0; 3]).unwrap();
        assert_eq!(action_operator(&zero), LinearOperator::zeros(3));
        let op = action_operator(&even_bet());
        assert_eq!(op.get(1, 1).re, 100.0);
        assert_eq!(op.get(0, 0).re, 0.0);
        assert_eq!(op.get(99, 99).re, 100.0);
    }

    #[test]
    fn expected_utility_examples() {
        let (b, _) = bets();
        let psi1 = StateVector::from_real(&[1.0, 1.0]).unwrap();
        assert!((expected_utility(&b, &psi1).unwrap() - 0.5).abs() < 1e-15);
        for x in [0.0, 0.3, 0.6, 1.0] {
            let psi2 = StateVector::from_real(&[x, (1.0 - x * x).sqrt()]).unwrap();
            let u = expected_utility(&b, &psi2).unwrap();
            assert!((u - x * x).abs() < 1e-15);
            let via_op = expectation(&psi2, &action_operator(&b)).unwrap();
            assert!((u - via_op).abs() < 1e-12);
        }
        let uniform = StateVector::uniform(100).unwrap();
        assert!((expected_utility(&even_bet(), &uniform).unwrap() - 50.0).abs() < 1e-12);
        assert!(matches!(
            expected_utility(&b, &uniform),
            Err(Error::DimMismatch { .. })
        ));
    }

    #[test]
    fn outcome_probability_examples() {
        let p = outcome_probabilities(&StateVector::from_real(&[1.0, 1.0]).unwrap());
        assert!((p[0] - 0.5).abs() < 1e-15 && (p[1] - 0.5).abs() < 1e-15);
        let p = outcome_probabilities(&StateVector::from_real(&[0.6, 0.8]).unwrap());
        assert!((p[0] - 0.36).abs() < 1e-15 && (p[1] - 0.64).abs() < 1e-15);
        assert_eq!(
            outcome_probabilities(&StateVector::basis(0, 2).unwrap()),
            vec![1.0, 0.0]
        );
    }

    #[test]
    fn choose_examples() {
        let (b, w) = bets();
        let labels = vec!["B".to_string(), "W".to_string()];
        let psi2 = StateVector::from_real(&[0.8, 0.6]).unwrap();
        let problem =
            DecisionProblem::new(labels.clone(), psi2, vec![b.clone(), w.clone()]).unwrap();
        let r = choose(&problem).unwrap();
        assert!((r.utilities[0] - 0.64).abs() < 1e-15);
        assert!((r.utilities[1] - 0.36).abs() < 1e-15);
        assert_eq!(r.best_indices, vec![0]);
        assert_eq!(r.reported_choice, 0);

        let psi1 = StateVector::from_real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]).unwrap();
        let problem = DecisionProblem::new(labels.clone(), psi1.clone(), vec![b.clone(), w])
            .unwrap();
        let r = choose(&problem).unwrap();
        assert_eq!(r.best_indices, vec![0, 1]);
        assert_eq!(r.reported_choice, 0);
        assert!(r.is_tie());

        let single = DecisionProblem::new(labels.clone(), psi1.clone(), vec![b]).unwrap();
        assert_eq!(choose(&single).unwrap().reported_choice, 0);

        assert!(matches!(
            DecisionProblem::new(labels, psi1, vec![]),
            Err(Error::EmptyActionSet)
        ));
        assert!(matches!(
            ChoiceResult::from_utilities(vec![]),
            Err(Error::EmptyActionSet)
        ));
    }

    #[test]
    fn problem_validation() {
        let psi = StateVector::uniform(2).unwrap();
        let three = PayoffAction::new("x", vec![1.0, 2.0, 3.0]).unwrap();
        assert!(matches!(
            DecisionProblem::new(vec!["a".into(), "b".into()], psi.clone(), vec![three]),
            Err(Error::Schema(_))
        ));
        let (b, _) = bets();
        assert!(matches!(
            DecisionProblem::new(vec!["a".into(), "a".into()], psi.clone(), vec![b.clone()]),
            Err(Error::Schema(_))
        ));
        assert!(DecisionProblem::new(vec!["a".into()], psi, vec![b]).is_err());
        assert!(PayoffAction::new("bad", vec![f64::NAN]).is_err());
    }

    #[test]
    fn portfolio_examples() {
        let market = PortfolioMarket {
            q0: 1.0,
            r1: 2.0,
            r2: 0.0,
            r: 1.0,
            w0: 2.0,
        };
        let state = StateVector::from_real(&[1.0, 1.0]).unwrap();
        let a = market
            .action("mixed", 1.0, 1.0, UtilityFunction::Linear)
            .unwrap();
        assert_eq!(a.payoffs(), &[3.0, 1.0]);
        assert!((expected_utility(&a, &state).unwrap() - 2.0).abs() < 1e-12);

        // all bond: independent of the state
        let log = UtilityFunction::Log;
        let bond = market.action("bond", 0.0, 2.0, log).unwrap();
        assert_eq!(bond.payoffs()[0], bond.payoffs()[1]);
        for x in [0.0, 0.4, 1.0] {
            let s = StateVector::from_real(&[x, (1.0 - x * x).sqrt()]).unwrap();
            assert!((expected_utility(&bond, &s).unwrap() - 2.0f64.ln()).abs() < 1e-12);
        }

        let flat = PortfolioMarket {
            r1: 1.5,
            r2: 1.5,
            r: 1.5,
            ..market
        };
        let a = flat
            .action("flat", 0.5, 1.5, UtilityFunction::Power { gamma: 0.5 })
            .unwrap();
        assert_eq!(a.payoffs()[0], a.payoffs()[1]);

        assert!(matches!(
            market.action("over", 2.0, 1.0, UtilityFunction::Linear),
            Err(Error::Budget { .. })
        ));
        assert!(market
            .action("neg", 1.0, 1.0, UtilityFunction::Power { gamma: 1.5 })
            .is_err());
        let crash = PortfolioMarket { r2: -1.0, ..market };
        assert!(crash.action("c", 2.0, 0.0, UtilityFunction::Log).is_err());
    }
}
