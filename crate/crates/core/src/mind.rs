//! Subjective mind states and the moderated outcome weights they induce.
//!
//! A mind state `|M>` distorts each outcome projector `P_i` into
//! `P_M P_i P_M`. In a world state `|β>` that gives
//! `<β|P_M P_i P_M|β> = |c_β|² <M|P_i|M>` with `c_β = <M|β>`.

use crate::decision::PayoffAction;
use crate::error::{Error, Result};
use crate::hilbert::{inner, projector_onto, Amplitude, LinearOperator, StateVector};

/// Below this `|c|²` a normalized moderated distribution is undefined.
pub const ORTHOGONAL_OVERLAP: f64 = 1e-15;

#[derive(Debug, Clone, PartialEq)]
pub struct MindState {
    vector: StateVector,
    projector: LinearOperator,
}

impl MindState {
    pub fn new(vector: StateVector) -> Self {
        let projector = projector_onto(&vector);
        Self { vector, projector }
    }

    pub fn vector(&self) -> &StateVector {
        &self.vector
    }

    /// Cached `|M><M|`.
    pub fn projector(&self) -> &LinearOperator {
        &self.projector
    }

    pub fn dim(&self) -> usize {
        self.vector.dim()
    }
}

impl From<StateVector> for MindState {
    fn from(vector: StateVector) -> Self {
        Self::new(vector)
    }
}

/// `c_β = <M|β>`.
pub fn overlap_coefficient(mind: &MindState, state: &StateVector) -> Result<Amplitude> {
    inner(mind.vector(), state)
}

fn check_index(dim: usize, index: usize) -> Result<()> {
    if index < dim {
        Ok(())
    } else {
        Err(Error::dims(dim, index))
    }
}

/// `|c_β|² · |M_i|²`, the weight outcome `i` receives once the mind state
/// has moderated `state`.
pub fn moderated_weight(mind: &MindState, state: &StateVector, index: usize) -> Result<f64> {
    let c = overlap_coefficient(mind, state)?;
    check_index(mind.dim(), index)?;
    Ok(c.norm_sqr() * mind.vector().amplitudes()[index].norm_sqr())
}

/// `<β|P_M A P_M|β> = |c_β|² Σ_ω α_ω |M_ω|²`.
pub fn moderated_expected_utility(
    mind: &MindState,
    state: &StateVector,
    action: &PayoffAction,
) -> Result<f64> {
    if action.dim() != mind.dim() {
        return Err(Error::dims(mind.dim(), action.dim()));
    }
    let c_sq = overlap_coefficient(mind, state)?.norm_sqr();
    let subjective: f64 = action
        .payoffs()
        .iter()
        .zip(mind.vector().amplitudes())
        .map(|(p, m)| p * m.norm_sqr())
        .sum();
    Ok(c_sq * subjective)
}

/// Moderated weights for every outcome. Raw weights sum to `|c|²`; the
/// normalized variant divides that factor out.
pub fn moderated_distribution(
    mind: &MindState,
    state: &StateVector,
    normalized: bool,
) -> Result<Vec<f64>> {
    let c_sq = overlap_coefficient(mind, state)?.norm_sqr();
    let raw = mind
        .vector()
        .amplitudes()
        .iter()
        .map(|m| c_sq * m.norm_sqr());
    if !normalized {
        return Ok(raw.collect());
    }
    if c_sq <= ORTHOGONAL_OVERLAP {
        return Err(Error::OrthogonalMind { overlap_sq: c_sq });
    }
    Ok(raw.map(|w| w / c_sq).collect())
}
