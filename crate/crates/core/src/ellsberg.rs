//! Two-urn Ellsberg experiment in a two-dimensional Hilbert space.
//!
//! Basis index 0 is "black ball drawn", index 1 is "white ball drawn".
//! Urn 1 (known 50/50) is `Ψ₁ = (|B> + |W>)/√2` and the decision maker's
//! mind state for it coincides with `Ψ₁`. Urn 2 (unknown composition) is
//! `Ψ₂(x) = x|B> + √(1−x²)|W>`, judged through the mind state
//! `Ψ_M2(y,d) = y|B> + e^{id}√(1−y²)|W>`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::decision::{expected_utility, PayoffAction, TIE_TOLERANCE};
use crate::error::{Error, Result};
use crate::hilbert::{Amplitude, StateVector};
use crate::mind::{moderated_expected_utility, MindState};

pub const BLACK: usize = 0;
pub const WHITE: usize = 1;

/// Utility of the two monetary outcomes of a bet (0 and 100 Euro).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Utilities {
    pub u0: f64,
    pub u100: f64,
}

impl Default for Utilities {
    fn default() -> Self {
        Self { u0: 0.0, u100: 1.0 }
    }
}

impl Utilities {
    pub fn new(u0: f64, u100: f64) -> Result<Self> {
        if !(u0.is_finite() && u100.is_finite() && u100 > u0) {
            return Err(Error::Domain(format!(
                "need finite u100 > u0, got u0={u0}, u100={u100}"
            )));
        }
        Ok(Self { u0, u100 })
    }

    /// Value of a bet on urn 1 with the mind state equal to `Ψ₁`.
    pub fn urn1_value(&self) -> f64 {
        0.5 * (self.u100 + self.u0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bet {
    Black,
    White,
}

impl Bet {
    pub const ALL: [Bet; 2] = [Bet::Black, Bet::White];

    pub fn action(self, u: Utilities) -> PayoffAction {
        let payoffs = match self {
            Bet::Black => vec![u.u100, u.u0],
            Bet::White => vec![u.u0, u.u100],
        };
        PayoffAction::new(self.label(), payoffs).expect("utilities are finite")
    }

    pub fn label(self) -> &'static str {
        match self {
            Bet::Black => "b",
            Bet::White => "w",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Urn {
    Known,
    Unknown,
}

/// Parameter triple `(x, y, d)` plus outcome utilities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllsbergPoint {
    /// Objective urn-2 amplitude on black.
    pub x: f64,
    /// Mind-state amplitude on black.
    pub y: f64,
    /// Mind-state phase on white, radians.
    pub d: f64,
    pub utilities: Utilities,
}

fn check_unit(name: &str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must lie in [0,1], got {v}")))
    }
}

pub(crate) fn check_phase(d: f64) -> Result<()> {
    if (0.0..=PI).contains(&d) {
        Ok(())
    } else {
        Err(Error::Domain(format!("d must lie in [0,π], got {d}")))
    }
}

impl EllsbergPoint {
    pub fn new(x: f64, y: f64, d: f64) -> Result<Self> {
        Self::with_utilities(x, y, d, Utilities::default())
    }

    pub fn with_utilities(x: f64, y: f64, d: f64, utilities: Utilities) -> Result<Self> {
        let p = Self { x, y, d, utilities };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        check_unit("x", self.x)?;
        check_unit("y", self.y)?;
        check_phase(self.d)?;
        Utilities::new(self.utilities.u0, self.utilities.u100).map(|_| ())
    }
}

/// `Ψ₁ = (|B> + |W>)/√2`.
pub fn urn1_state() -> StateVector {
    StateVector::from_real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]).expect("nonzero")
}

/// `Ψ₂(x) = x|B> + √(1−x²)|W>`.
pub fn urn2_state(x: f64) -> Result<StateVector> {
    check_unit("x", x)?;
    StateVector::from_real(&[x, (1.0 - x * x).sqrt()])
}

/// `Ψ_M2(y,d) = y|B> + e^{id}√(1−y²)|W>`.
pub fn mind2_state(y: f64, d: f64) -> Result<MindState> {
    check_unit("y", y)?;
    check_phase(d)?;
    let v = StateVector::new(vec![
        Amplitude::new(y, 0.0),
        Amplitude::from_polar((1.0 - y * y).sqrt(), d),
    ])?;
    Ok(MindState::new(v))
}

/// Closed-form `|c_x|² = |<M2(y,d)|Ψ₂(x)>|²`, no domain checks.
#[inline]
pub fn overlap_sq_unchecked(x: f64, y: f64, d: f64) -> f64 {
    let (x2, y2) = (x * x, y * y);
    1.0 - x2 - y2 + 2.0 * x2 * y2 + 2.0 * x * y * ((1.0 - x2) * (1.0 - y2)).sqrt() * d.cos()
}

/// `|c_x|² = 1 − x² − y² + 2x²y² + 2xy√((1−x²)(1−y²)) cos d`.
pub fn overlap_sq(p: &EllsbergPoint) -> Result<f64> {
    p.validate()?;
    Ok(overlap_sq_unchecked(p.x, p.y, p.d))
}

/// Urn-2 bet utilities `(black, white)` under the mind state, no domain checks.
#[inline]
pub fn urn2_bet_utilities_unchecked(x: f64, y: f64, d: f64, u: Utilities) -> (f64, f64) {
    let c_sq = overlap_sq_unchecked(x, y, d);
    let y2 = y * y;
    (
        c_sq * (y2 * u.u100 + (1.0 - y2) * u.u0),
        c_sq * (y2 * u.u0 + (1.0 - y2) * u.u100),
    )
}

/// Closed-form mind-moderated utility of `bet` on `urn`.
pub fn bet_utility(urn: Urn, bet: Bet, p: &EllsbergPoint) -> Result<f64> {
    p.validate()?;
    Ok(match urn {
        Urn::Known => p.utilities.urn1_value(),
        Urn::Unknown => {
            let (black, white) = urn2_bet_utilities_unchecked(p.x, p.y, p.d, p.utilities);
            match bet {
                Bet::Black => black,
                Bet::White => white,
            }
        }
    })
}

/// The same utility evaluated through generic states, projectors and
/// `<β|P_M A P_M|β>`; serves as a cross-check for [`bet_utility`].
pub fn bet_utility_via_operators(urn: Urn, bet: Bet, p: &EllsbergPoint) -> Result<f64> {
    p.validate()?;
    let action = bet.action(p.utilities);
    let (mind, state) = match urn {
        Urn::Known => (MindState::new(urn1_state()), urn1_state()),
        Urn::Unknown => (mind2_state(p.y, p.d)?, urn2_state(p.x)?),
    };
    moderated_expected_utility(&mind, &state, &action)
}

/// Urn-1 preferences of an expected-utility maximizer without a mind state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassicalPreference {
    pub prefers_urn1_black: bool,
    pub prefers_urn1_white: bool,
}

impl ClassicalPreference {
    /// Ellsberg behavior: urn 1 for both bets.
    pub fn is_ellsberg(&self) -> bool {
        self.prefers_urn1_black && self.prefers_urn1_white
    }
}

/// Classical comparison `U(b,1) > U(b,x)` and `U(w,1) > U(w,x)`. A
/// preference needs a margin above [`TIE_TOLERANCE`].
pub fn classical_condition(x: f64) -> Result<ClassicalPreference> {
    classical_condition_with(x, Utilities::default())
}

pub fn classical_condition_with(x: f64, u: Utilities) -> Result<ClassicalPreference> {
    let urn2 = urn2_state(x)?;
    let urn1 = urn1_state();
    let black = Bet::Black.action(u);
    let white = Bet::White.action(u);
    Ok(ClassicalPreference {
        prefers_urn1_black: expected_utility(&black, &urn1)? - expected_utility(&black, &urn2)?
            > TIE_TOLERANCE,
        prefers_urn1_white: expected_utility(&white, &urn1)? - expected_utility(&white, &urn2)?
            > TIE_TOLERANCE,
    })
}

/// Ellsberg behavior test without domain checks; see [`ellsberg_predicate`].
#[inline]
pub fn in_ellsberg_region(x: f64, y: f64, d: f64, u: Utilities) -> bool {
    let urn1 = u.urn1_value();
    let (black, white) = urn2_bet_utilities_unchecked(x, y, d, u);
    urn1 > black && urn1 > white
}

/// True when urn 1 is strictly preferred for both bets. With
/// `u0 = 0, u100 = 1` this is `½ > |c_x|²y²` and `½ > |c_x|²(1−y²)`.
pub fn ellsberg_predicate(p: &EllsbergPoint) -> Result<bool> {
    p.validate()?;
    Ok(in_ellsberg_region(p.x, p.y, p.d, p.utilities))
}

/// Finitely many urn-2 compositions: `x_k = √(k/n)`, `k = 0..=n`, so that
/// `p₂(B) = k/n`.
pub fn discrete_compositions(n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::Domain("number of balls must be positive".into()));
    }
    Ok((0..=n).map(|k| (k as f64 / n as f64).sqrt()).collect())
}
