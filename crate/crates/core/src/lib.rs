//! Decision making under uncertainty with a complex Hilbert space as the
//! space of possibilities.
//!
//! Outcomes are orthonormal basis states, information about the world is a
//! normalized composite state `|β>`, and an action is the operator
//! `A_α = Σ α_ω |ω><ω|` whose expectation `<β|A_α|β>` is its expected
//! utility. A subjective mind state `|M>` moderates perception through its
//! projector: outcome weights become `<β|P_M P_ω P_M|β>`.
//!
//! The [`ellsberg`] module applies this to the two-urn Ellsberg experiment
//! and [`region`] measures how much of the `(x, y, d)` parameter space
//! produces Ellsberg behavior.
//!
//! ```
//! use hilbert_decision::ellsberg::{ellsberg_predicate, EllsbergPoint};
//! use std::f64::consts::FRAC_PI_2;
//!
//! let p = EllsbergPoint::new(0.5, 0.5, FRAC_PI_2).unwrap();
//! assert!(ellsberg_predicate(&p).unwrap());
//! ```

pub mod cli;
pub mod decision;
pub mod ellsberg;
pub mod error;
pub mod hilbert;
pub mod mind;
pub mod plot;
pub mod region;
pub mod scenario;

pub use decision::{
    action_operator, choose, expected_utility, outcome_probabilities, ChoiceResult,
    DecisionProblem, PayoffAction, PortfolioMarket, UtilityFunction,
};
pub use error::{Error, Result};
pub use hilbert::{
    apply, basis_projector, expectation, inner, projector_onto, weighted_projector_sum,
    Amplitude, LinearOperator, StateVector, Tolerances,
};
pub use mind::{
    moderated_distribution, moderated_expected_utility, moderated_weight, overlap_coefficient,
    MindState,
};
pub use region::{GridSpec, Method, RegionEstimate};
