//! Finite-dimensional complex Hilbert-space primitives.
//!
//! States are normalized amplitude vectors over an orthonormal outcome basis,
//! operators are dense square matrices. Inner products follow the Dirac
//! convention: `<a|b>` conjugates the bra.

use std::fmt;
use std::ops::{Add, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex amplitude type used throughout the crate.
pub type Amplitude = Complex64;

/// Numeric slack for checks whose exact algebra only holds up to rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Allowed `|Σ|a|² − 1|` before a state counts as renormalized.
    pub norm_tol: f64,
    /// Allowed `max |A_ij − conj(A_ji)|` for a Hermitian operator.
    pub herm_tol: f64,
    /// Allowed `max |P·P − P|` for a projector.
    pub idem_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            norm_tol: 1e-12,
            herm_tol: 1e-10,
            idem_tol: 1e-12,
        }
    }
}

impl Tolerances {
    pub fn new(norm_tol: f64, herm_tol: f64, idem_tol: f64) -> Result<Self> {
        for (name, v) in [
            ("norm_tol", norm_tol),
            ("herm_tol", herm_tol),
            ("idem_tol", idem_tol),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(Self {
            norm_tol,
            herm_tol,
            idem_tol,
        })
    }
}

fn check_finite(amplitudes: &[Amplitude]) -> Result<()> {
    match amplitudes
        .iter()
        .enumerate()
        .find(|(_, a)| !(a.re.is_finite() && a.im.is_finite()))
    {
        Some((index, a)) => Err(Error::InvalidAmplitude {
            index,
            re: a.re,
            im: a.im,
        }),
        None => Ok(()),
    }
}

/// A normalized composite state `|β> = Σ β_ω |ω>`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Amplitude>,
    renormalized: bool,
}

impl StateVector {
    /// Builds a state from raw amplitudes, scaling them to unit norm.
    pub fn new(amplitudes: Vec<Amplitude>) -> Result<Self> {
        Self::with_tolerances(amplitudes, &Tolerances::default())
    }

    pub fn with_tolerances(mut amplitudes: Vec<Amplitude>, tol: &Tolerances) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::Normalization("state has no amplitudes".into()));
        }
        check_finite(&amplitudes)?;
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if !norm_sq.is_finite() || norm_sq <= 0.0 {
            return Err(Error::Normalization(format!("squared norm is {norm_sq}")));
        }
        let renormalized = (norm_sq - 1.0).abs() > tol.norm_tol;
        let scale = norm_sq.sqrt().recip();
        for a in &mut amplitudes {
            *a *= scale;
        }
        Ok(Self {
            amplitudes,
            renormalized,
        })
    }

    /// Real amplitudes convenience constructor.
    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&r| Amplitude::new(r, 0.0)).collect())
    }

    /// The basis state `|index>` of a `dim`-dimensional space.
    pub fn basis(index: usize, dim: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::dims(dim, index));
        }
        let mut amplitudes = vec![Amplitude::new(0.0, 0.0); dim];
        amplitudes[index] = Amplitude::new(1.0, 0.0);
        Ok(Self {
            amplitudes,
            renormalized: false,
        })
    }

    /// Uniform superposition over all basis states.
    pub fn uniform(dim: usize) -> Result<Self> {
        Self::new(vec![Amplitude::new(1.0, 0.0); dim])
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amplitudes
    }

    /// Whether construction had to rescale by more than `norm_tol`.
    pub fn was_renormalized(&self) -> bool {
        self.renormalized
    }

    /// Multiplies every amplitude by `e^{iφ}`.
    pub fn with_global_phase(&self, phi: f64) -> Self {
        let phase = Amplitude::from_polar(1.0, phi);
        Self {
            amplitudes: self.amplitudes.iter().map(|a| a * phase).collect(),
            renormalized: self.renormalized,
        }
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() == dim {
            Ok(())
        } else {
            Err(Error::dims(dim, self.dim()))
        }
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.amplitudes.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:.6}{:+.6}i", a.re, a.im)?;
        }
        write!(f, "]")
    }
}

/// `<bra|ket>`, conjugate-linear in `bra`.
pub fn inner(bra: &StateVector, ket: &StateVector) -> Result<Amplitude> {
    ket.check_dim(bra.dim())?;
    Ok(inner_raw(bra.amplitudes(), ket.amplitudes()))
}

pub(crate) fn inner_raw(bra: &[Amplitude], ket: &[Amplitude]) -> Amplitude {
    bra.iter().zip(ket).map(|(b, k)| b.conj() * k).sum()
}

/// Dense square complex matrix acting on the outcome space.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearOperator {
    dim: usize,
    // row-major
    entries: Vec<Amplitude>,
}

impl LinearOperator {
    /// Builds an operator from row-major entries.
    pub fn from_rows(rows: Vec<Vec<Amplitude>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::dims(1, 0));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::dims(dim, row.len()));
            }
            entries.extend(row);
        }
        check_finite(&entries)?;
        Ok(Self { dim, entries })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Amplitude::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut op = Self::zeros(dim);
        for i in 0..dim {
            op.entries[i * dim + i] = Amplitude::new(1.0, 0.0);
        }
        op
    }

    /// Real diagonal operator `diag(values)`.
    pub fn diagonal(values: &[f64]) -> Result<Self> {
        let dim = values.len();
        let mut op = Self::zeros(dim);
        for (i, &v) in values.iter().enumerate() {
            op.entries[i * dim + i] = Amplitude::new(v, 0.0);
        }
        check_finite(&op.entries)?;
        Ok(op)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Amplitude {
        self.entries[row * self.dim + col]
    }

    pub fn trace(&self) -> Amplitude {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.get(j, i).conj());
            }
        }
        Self { dim: n, entries }
    }

    /// `max |A_ij − conj(A_ji)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: &Tolerances) -> bool {
        self.hermitian_deviation() <= tol.herm_tol
    }

    /// Largest absolute entry difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::dims(self.dim, other.dim));
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Matrix product `self · rhs`.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::dims(self.dim, rhs.dim));
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == Amplitude::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * rhs.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: f64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|a| a * k).collect(),
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::dims(self.dim, rhs.dim));
        }
        Ok(Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Hermitian and idempotent within the given tolerances.
    pub fn is_projector_with(&self, tol: &Tolerances) -> bool {
        if !self.is_hermitian(tol) {
            return false;
        }
        match self.compose(self).and_then(|sq| sq.max_abs_diff(self)) {
            Ok(diff) => diff <= tol.idem_tol,
            Err(_) => false,
        }
    }

    pub fn is_projector(&self) -> bool {
        self.is_projector_with(&Tolerances::default())
    }

    pub(crate) fn apply_raw(&self, v: &[Amplitude]) -> Vec<Amplitude> {
        let n = self.dim;
        (0..n)
            .map(|i| {
                self.entries[i * n..(i + 1) * n]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }
}

impl Add for &LinearOperator {
    type Output = LinearOperator;

    /// Panics on dimension mismatch; use [`LinearOperator::try_add`] otherwise.
    fn add(self, rhs: Self) -> LinearOperator {
        self.try_add(rhs).expect("operator dimensions differ")
    }
}

impl Mul for &LinearOperator {
    type Output = LinearOperator;

    /// Panics on dimension mismatch; use [`LinearOperator::compose`] otherwise.
    fn mul(self, rhs: Self) -> LinearOperator {
        self.compose(rhs).expect("operator dimensions differ")
    }
}

/// Rank-one projector `|v><v|`.
pub fn projector_onto(v: &StateVector) -> LinearOperator {
    let n = v.dim();
    let a = v.amplitudes();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            entries.push(a[i] * a[j].conj());
        }
    }
    LinearOperator { dim: n, entries }
}

/// `P_i = |i><i|` in a `dim`-dimensional space.
pub fn basis_projector(index: usize, dim: usize) -> Result<LinearOperator> {
    if index >= dim {
        return Err(Error::dims(dim, index));
    }
    let mut op = LinearOperator::zeros(dim);
    op.entries[index * dim + index] = Amplitude::new(1.0, 0.0);
    Ok(op)
}

/// Matrix-vector product. The result is not renormalized.
pub fn apply(op: &LinearOperator, v: &StateVector) -> Result<Vec<Amplitude>> {
    v.check_dim(op.dim())?;
    Ok(op.apply_raw(v.amplitudes()))
}

/// `<v|op|v>` for a Hermitian `op`.
pub fn expectation(v: &StateVector, op: &LinearOperator) -> Result<f64> {
    expectation_with(v, op, &Tolerances::default())
}

pub fn expectation_with(v: &StateVector, op: &LinearOperator, tol: &Tolerances) -> Result<f64> {
    v.check_dim(op.dim())?;
    let deviation = op.hermitian_deviation();
    if deviation > tol.herm_tol {
        return Err(Error::Hermiticity { deviation });
    }
    let value = inner_raw(v.amplitudes(), &op.apply_raw(v.amplitudes()));
    debug_assert!(
        value.im.abs() <= 1e-10 * (1.0 + value.re.abs()),
        "expectation of Hermitian operator has imaginary part {}",
        value.im
    );
    Ok(value.re)
}

/// `Σ_k weights_k · projs_k`.
pub fn weighted_projector_sum(weights: &[f64], projs: &[LinearOperator]) -> Result<LinearOperator> {
    if weights.len() != projs.len() {
        return Err(Error::dims(weights.len(), projs.len()));
    }
    let Some(first) = projs.first() else {
        return Err(Error::dims(1, 0));
    };
    let mut acc = LinearOperator::zeros(first.dim());
    for (w, p) in weights.iter().zip(projs) {
        acc = acc.try_add(&p.scale(*w))?;
    }
    check_finite(&acc.entries)?;
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn c(re: f64, im: f64) -> Amplitude {
        Amplitude::new(re, im)
    }

    #[test]
    fn make_state_examples() {
        let b = StateVector::from_real(&[1.0, 0.0]).unwrap();
        assert_eq!(b.amplitudes(), &[c(1.0, 0.0), c(0.0, 0.0)]);
        assert!(!b.was_renormalized());

        let psi1 = StateVector::from_real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]).unwrap();
        assert!((psi1.amplitudes()[0].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(!psi1.was_renormalized());

        let scaled = StateVector::from_real(&[2.0, 0.0]).unwrap();
        assert_eq!(scaled.amplitudes()[0], c(1.0, 0.0));
        assert!(scaled.was_renormalized());
    }

    #[test]
    fn make_state_errors() {
        assert!(matches!(
            StateVector::from_real(&[0.0, 0.0]),
            Err(Error::Normalization(_))
        ));
        assert!(matches!(
            StateVector::new(vec![]),
            Err(Error::Normalization(_))
        ));
        assert!(matches!(
            StateVector::new(vec![c(f64::NAN, 0.0), c(1.0, 0.0)]),
            Err(Error::InvalidAmplitude { index: 0, .. })
        ));
        assert!(matches!(
            StateVector::new(vec![c(1.0, 0.0), c(0.0, f64::INFINITY)]),
            Err(Error::InvalidAmplitude { index: 1, .. })
        ));
    }

    #[test]
    fn inner_examples() {
        let b = StateVector::basis(0, 2).unwrap();
        let w = StateVector::basis(1, 2).unwrap();
        assert_eq!(inner(&b, &w).unwrap(), c(0.0, 0.0));
        assert_eq!(inner(&w, &b).unwrap(), c(0.0, 0.0));

        let psi1 = StateVector::from_real(&[1.0, 1.0]).unwrap();
        assert!((inner(&psi1, &psi1).unwrap() - c(1.0, 0.0)).norm() < 1e-15);

        // M2(0.8, d) against Ψ₂(0.6): 0.8·0.6 + conj(e^{id})·0.6·0.8
        for d in [0.0, 0.7, PI / 2.0, PI] {
            let m = StateVector::new(vec![c(0.8, 0.0), Amplitude::from_polar(0.6, d)]).unwrap();
            let psi2 = StateVector::from_real(&[0.6, 0.8]).unwrap();
            let expected = c(0.48, 0.0) + Amplitude::from_polar(1.0, d).conj() * 0.48;
            assert!((inner(&m, &psi2).unwrap() - expected).norm() < 1e-15);
        }
        let m0 = StateVector::from_real(&[0.8, 0.6]).unwrap();
        let psi2 = StateVector::from_real(&[0.6, 0.8]).unwrap();
        assert!((inner(&m0, &psi2).unwrap().re - 0.96).abs() < 1e-15);

        let three = StateVector::uniform(3).unwrap();
        assert!(matches!(
            inner(&psi1, &three),
            Err(Error::DimMismatch {
                expected: 2,
                found: 3
            })
        ));
    }

    #[test]
    fn projector_examples() {
        let pb = projector_onto(&StateVector::basis(0, 2).unwrap());
        assert_eq!(pb, LinearOperator::diagonal(&[1.0, 0.0]).unwrap());
        let pw = projector_onto(&StateVector::basis(1, 2).unwrap());
        assert_eq!(pw, LinearOperator::diagonal(&[0.0, 1.0]).unwrap());

        let (y, d) = (0.3f64, 1.1f64);
        let s = (1.0 - y * y).sqrt();
        let m = StateVector::new(vec![c(y, 0.0), Amplitude::from_polar(s, d)]).unwrap();
        let p = projector_onto(&m);
        let expected = LinearOperator::from_rows(vec![
            vec![c(y * y, 0.0), Amplitude::from_polar(y * s, -d)],
            vec![Amplitude::from_polar(y * s, d), c(1.0 - y * y, 0.0)],
        ])
        .unwrap();
        assert!(p.max_abs_diff(&expected).unwrap() < 1e-15);
        assert!((p.trace() - c(1.0, 0.0)).norm() < 1e-12);
        assert!(p.is_projector());
    }

    #[test]
    fn basis_projectors_complete() {
        assert_eq!(
            basis_projector(0, 2).unwrap(),
            projector_onto(&StateVector::basis(0, 2).unwrap())
        );
        let sum = (0..3)
            .map(|i| basis_projector(i, 3).unwrap())
            .fold(LinearOperator::zeros(3), |acc, p| &acc + &p);
        assert_eq!(sum, LinearOperator::identity(3));
        assert!(matches!(
            basis_projector(3, 3),
            Err(Error::DimMismatch { .. })
        ));
    }

    #[test]
    fn apply_examples() {
        let psi1 = StateVector::from_real(&[1.0, 1.0]).unwrap();
        let out = apply(&basis_projector(0, 2).unwrap(), &psi1).unwrap();
        assert!((out[0].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(out[1], c(0.0, 0.0));

        let psi2 = StateVector::from_real(&[0.6, 0.8]).unwrap();
        let out = apply(&LinearOperator::identity(2), &psi2).unwrap();
        assert_eq!(out, psi2.amplitudes());

        // P_M2(y,0)Ψ₂(x) = c_x M2 with c_x = xy + √(1−x²)√(1−y²)
        let (x, y) = (0.6f64, 0.3f64);
        let m = StateVector::from_real(&[y, (1.0 - y * y).sqrt()]).unwrap();
        let cx = x * y + (1.0 - x * x).sqrt() * (1.0 - y * y).sqrt();
        let out = apply(&projector_onto(&m), &psi2).unwrap();
        for (o, mi) in out.iter().zip(m.amplitudes()) {
            assert!((o - mi * cx).norm() < 1e-15);
        }

        assert!(apply(&LinearOperator::identity(3), &psi2).is_err());
    }

    #[test]
    fn expectation_examples() {
        let pb = basis_projector(0, 2).unwrap();
        let psi1 = StateVector::from_real(&[1.0, 1.0]).unwrap();
        assert!((expectation(&psi1, &pb).unwrap() - 0.5).abs() < 1e-15);
        for x in [0.0, 0.25, 0.6, FRAC_1_SQRT_2, 1.0] {
            let psi2 = StateVector::from_real(&[x, (1.0 - x * x).sqrt()]).unwrap();
            assert!((expectation(&psi2, &pb).unwrap() - x * x).abs() < 1e-15);
        }
        let w = StateVector::basis(1, 2).unwrap();
        assert_eq!(expectation(&w, &pb).unwrap(), 0.0);

        let skew = LinearOperator::from_rows(vec![
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert!(matches!(
            expectation(&psi1, &skew),
            Err(Error::Hermiticity { .. })
        ));
        assert!(expectation(&StateVector::uniform(3).unwrap(), &pb).is_err());
    }

    #[test]
    fn weighted_sums() {
        let pb = basis_projector(0, 2).unwrap();
        let pw = basis_projector(1, 2).unwrap();
        let a_b = weighted_projector_sum(&[1.0, 0.0], &[pb.clone(), pw.clone()]).unwrap();
        assert_eq!(a_b, LinearOperator::diagonal(&[1.0, 0.0]).unwrap());
        assert!(a_b.is_projector());
        let doubled = weighted_projector_sum(&[2.0, 0.0], &[pb.clone(), pw.clone()]).unwrap();
        assert!(!doubled.is_projector());

        let basis: Vec<_> = (0..4).map(|i| basis_projector(i, 4).unwrap()).collect();
        assert_eq!(
            weighted_projector_sum(&[1.0; 4], &basis).unwrap(),
            LinearOperator::identity(4)
        );

        let basis100: Vec<_> = (0..100).map(|i| basis_projector(i, 100).unwrap()).collect();
        // ball numbers run 1..=100, so index i is ball i+1
        let weights: Vec<f64> = (1..=100)
            .map(|ball| if ball % 2 == 0 { 100.0 } else { 0.0 })
            .collect();
        let even = weighted_projector_sum(&weights, &basis100).unwrap();
        assert_eq!(even, LinearOperator::diagonal(&weights).unwrap());

        assert!(weighted_projector_sum(&[1.0], &[pb.clone(), pw]).is_err());
        assert!(weighted_projector_sum(&[1.0, 1.0], &[pb, basis[0].clone()]).is_err());
    }

    #[test]
    fn tolerances_must_be_positive() {
        assert!(Tolerances::new(0.0, 1e-10, 1e-12).is_err());
        assert!(Tolerances::new(1e-12, -1.0, 1e-12).is_err());
        assert_eq!(
            Tolerances::new(1e-12, 1e-10, 1e-12).unwrap(),
            Tolerances::default()
        );
    }

    #[test]
    fn adjoint_of_hermitian_is_itself() {
        let m = StateVector::new(vec![c(0.2, 0.1), c(-0.4, 0.7), c(0.3, 0.0)]).unwrap();
        let p = projector_onto(&m);
        assert!(p.adjoint().max_abs_diff(&p).unwrap() < 1e-15);
        assert!(p.hermitian_deviation() < 1e-15);
    }
}
