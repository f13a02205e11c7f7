//! Measure of the Ellsberg-behavior region in parameter space.
//!
//! Areas over `(x, y) ∈ [0,1]²` at fixed phase `d`, and the volume over
//! `[0,1]² × [0,π]` with uniform measure on `d`. The grid estimator counts
//! midpoint cells whose center satisfies the predicate; hit counts are
//! integers, so the result is identical for any work partitioning. The Monte
//! Carlo estimator is an independent cross-check.

use std::f64::consts::PI;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::ellsberg::{check_phase, discrete_compositions, in_ellsberg_region, Utilities};
use crate::error::{Error, Result};

/// Samples drawn from one ChaCha stream.
pub const MC_BATCH: u64 = 1 << 16;

/// Description of the Monte Carlo generator, reported with every estimate.
pub const MC_GENERATOR: &str = "rand_chacha-0.9 ChaCha8Rng seed_from_u64(seed), stream=batch, 65536/batch";

pub const MIN_MC_SAMPLES: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Grid,
    MonteCarlo,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Grid => "grid",
            Method::MonteCarlo => "monte-carlo",
        })
    }
}

/// Midpoint grid resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    points_per_axis: usize,
}

impl GridSpec {
    pub fn new(points_per_axis: usize) -> Result<Self> {
        if points_per_axis < 2 {
            return Err(Error::Domain(format!(
                "grid needs at least 2 points per axis, got {points_per_axis}"
            )));
        }
        Ok(Self { points_per_axis })
    }

    pub fn default_2d() -> Self {
        Self {
            points_per_axis: 1000,
        }
    }

    pub fn default_3d() -> Self {
        Self {
            points_per_axis: 300,
        }
    }

    pub fn points_per_axis(&self) -> usize {
        self.points_per_axis
    }

    /// Cell centers of `[0, 1]`.
    pub fn midpoints(&self) -> Vec<f64> {
        midpoints(self.points_per_axis, 1.0)
    }
}

fn midpoints(n: usize, len: f64) -> Vec<f64> {
    (0..n).map(|i| (i as f64 + 0.5) / n as f64 * len).collect()
}

/// Ratio of a region's measure to the measure of its domain.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionEstimate {
    pub ratio: f64,
    /// Grid: `|ratio(n) − ratio(n/2)|`. Monte Carlo: `√(p(1−p)/N)`.
    pub error_estimate: f64,
    pub method: Method,
    /// Predicate evaluations spent, including the refinement pass.
    pub evaluations: u64,
    pub seed: Option<u64>,
}

impl RegionEstimate {
    /// Whether `other` lies within `k` of this estimate's error bars.
    pub fn agrees_with(&self, other: &RegionEstimate, k: f64) -> bool {
        (self.ratio - other.ratio).abs() <= k * self.error_estimate.max(other.error_estimate)
    }
}

/// How urn-2 compositions `x` are sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum XSampling {
    /// Midpoint grid on `[0,1]`.
    #[default]
    Continuous,
    /// `x = √(k/n)` for `k = 0..=n`, i.e. an urn of `n` balls.
    Discrete(usize),
}

fn count_2d<F>(xs: &[f64], ys: &[f64], pred: &F) -> u64
where
    F: Fn(f64, f64) -> bool + Sync,
{
    xs.par_iter()
        .map(|&x| ys.iter().filter(|&&y| pred(x, y)).count() as u64)
        .sum()
}

fn count_3d<F>(xs: &[f64], ys: &[f64], ds: &[f64], pred: &F) -> Vec<u64>
where
    F: Fn(f64, f64, f64) -> bool + Sync,
{
    ds.par_iter()
        .map(|&d| count_2d(xs, ys, &|x, y| pred(x, y, d)))
        .collect()
}

fn grid_estimate(hits: u64, cells: u64, coarse_hits: u64, coarse_cells: u64) -> RegionEstimate {
    let ratio = hits as f64 / cells as f64;
    let coarse = coarse_hits as f64 / coarse_cells as f64;
    RegionEstimate {
        ratio,
        error_estimate: (ratio - coarse).abs(),
        method: Method::Grid,
        evaluations: cells + coarse_cells,
        seed: None,
    }
}

/// Fraction of midpoint cells of `[0,1]²` whose center satisfies `pred`.
pub fn grid_ratio_2d<F>(grid: &GridSpec, pred: F) -> RegionEstimate
where
    F: Fn(f64, f64) -> bool + Sync,
{
    let n = grid.points_per_axis();
    let fine = grid.midpoints();
    let coarse = midpoints(n / 2, 1.0);
    grid_estimate(
        count_2d(&fine, &fine, &pred),
        (n * n) as u64,
        count_2d(&coarse, &coarse, &pred),
        (n / 2 * (n / 2)) as u64,
    )
}

/// Fraction of midpoint cells of `[0,1]² × [0,π]` whose center satisfies
/// `pred(x, y, d)`.
pub fn grid_ratio_3d<F>(grid: &GridSpec, pred: F) -> RegionEstimate
where
    F: Fn(f64, f64, f64) -> bool + Sync,
{
    let n = grid.points_per_axis();
    let h = n / 2;
    let (fine, fine_d) = (midpoints(n, 1.0), midpoints(n, PI));
    let (coarse, coarse_d) = (midpoints(h, 1.0), midpoints(h, PI));
    grid_estimate(
        count_3d(&fine, &fine, &fine_d, &pred).iter().sum(),
        (n * n * n) as u64,
        count_3d(&coarse, &coarse, &coarse_d, &pred).iter().sum(),
        (h * h * h) as u64,
    )
}

/// Where Monte Carlo points are drawn.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum McDomain {
    /// `(x, y)` uniform on `[0,1]²` at fixed `d`.
    Plane { d: f64 },
    /// `(x, y, d)` uniform on `[0,1]² × [0,π]`.
    Volume,
}

/// Hit-or-miss Monte Carlo over `domain`. Batch `i` draws from ChaCha stream
/// `i`, so the result depends only on `seed` and `samples`.
pub fn monte_carlo_ratio_with<F>(domain: McDomain, samples: u64, seed: u64, pred: F) -> Result<RegionEstimate>
where
    F: Fn(f64, f64, f64) -> bool + Sync,
{
    monte_carlo_impl(domain, XSampling::Continuous, samples, seed, pred)
}

fn monte_carlo_impl<F>(
    domain: McDomain,
    x_sampling: XSampling,
    samples: u64,
    seed: u64,
    pred: F,
) -> Result<RegionEstimate>
where
    F: Fn(f64, f64, f64) -> bool + Sync,
{
    if samples < MIN_MC_SAMPLES {
        return Err(Error::Domain(format!(
            "Monte Carlo needs at least {MIN_MC_SAMPLES} samples, got {samples}"
        )));
    }
    if let McDomain::Plane { d } = domain {
        check_phase(d)?;
    }
    let xs = match x_sampling {
        XSampling::Continuous => None,
        XSampling::Discrete(n) => Some(discrete_compositions(n)?),
    };
    let batches = samples.div_ceil(MC_BATCH);
    let hits: u64 = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let len = MC_BATCH.min(samples - b * MC_BATCH);
            let mut hits = 0u64;
            for _ in 0..len {
                let x = match &xs {
                    None => rng.random::<f64>(),
                    Some(xs) => xs[rng.random_range(0..xs.len())],
                };
                let y = rng.random::<f64>();
                let d = match domain {
                    McDomain::Plane { d } => d,
                    McDomain::Volume => PI * rng.random::<f64>(),
                };
                hits += u64::from(pred(x, y, d));
            }
            hits
        })
        .sum();
    let p = hits as f64 / samples as f64;
    Ok(RegionEstimate {
        ratio: p,
        error_estimate: (p * (1.0 - p) / samples as f64).sqrt(),
        method: Method::MonteCarlo,
        evaluations: samples,
        seed: Some(seed),
    })
}

/// The Ellsberg-behavior region for given bet utilities and urn-2 sampling.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EllsbergRegion {
    pub utilities: Utilities,
    pub x_sampling: XSampling,
}

impl EllsbergRegion {
    pub fn new(utilities: Utilities, x_sampling: XSampling) -> Self {
        Self {
            utilities,
            x_sampling,
        }
    }

    fn x_axis(&self, grid_n: usize) -> Result<Vec<f64>> {
        match self.x_sampling {
            XSampling::Continuous => Ok(midpoints(grid_n, 1.0)),
            XSampling::Discrete(balls) => discrete_compositions(balls),
        }
    }

    pub fn contains(&self, x: f64, y: f64, d: f64) -> bool {
        in_ellsberg_region(x, y, d, self.utilities)
    }

    /// Area ratio of the region in the `(x, y)` square at phase `d`.
    pub fn area_ratio(&self, d: f64, grid: &GridSpec) -> Result<RegionEstimate> {
        check_phase(d)?;
        let u = self.utilities;
        let pred = move |x, y| in_ellsberg_region(x, y, d, u);
        match self.x_sampling {
            XSampling::Continuous => Ok(grid_ratio_2d(grid, pred)),
            XSampling::Discrete(_) => {
                let n = grid.points_per_axis();
                let xs = self.x_axis(n)?;
                let (fine, coarse) = (midpoints(n, 1.0), midpoints(n / 2, 1.0));
                Ok(grid_estimate(
                    count_2d(&xs, &fine, &pred),
                    (xs.len() * n) as u64,
                    count_2d(&xs, &coarse, &pred),
                    (xs.len() * (n / 2)) as u64,
                ))
            }
        }
    }

    /// Row-major cell membership at phase `d`: entry `[j][i]` is the cell
    /// with `y` index `j` and `x` index `i`.
    pub fn area_mask(&self, d: f64, grid: &GridSpec) -> Result<Vec<Vec<bool>>> {
        check_phase(d)?;
        let xs = self.x_axis(grid.points_per_axis())?;
        Ok(grid
            .midpoints()
            .par_iter()
            .map(|&y| xs.iter().map(|&x| self.contains(x, y, d)).collect())
            .collect())
    }

    /// Volume ratio over `[0,1]² × [0,π]`.
    pub fn volume_ratio(&self, grid: &GridSpec) -> Result<RegionEstimate> {
        let n = grid.points_per_axis();
        let h = n / 2;
        let u = self.utilities;
        let pred = move |x, y, d| in_ellsberg_region(x, y, d, u);
        let (xs, xs_coarse) = (self.x_axis(n)?, self.x_axis(h)?);
        let hits: u64 = count_3d(&xs, &midpoints(n, 1.0), &midpoints(n, PI), &pred)
            .iter()
            .sum();
        let coarse_hits: u64 = count_3d(&xs_coarse, &midpoints(h, 1.0), &midpoints(h, PI), &pred)
            .iter()
            .sum();
        Ok(grid_estimate(
            hits,
            (xs.len() * n * n) as u64,
            coarse_hits,
            (xs_coarse.len() * h * h) as u64,
        ))
    }

    /// Per-slice area ratios at the `d` midpoints used by [`Self::volume_ratio`].
    /// Their mean is the volume ratio.
    pub fn volume_slices(&self, grid: &GridSpec) -> Result<Vec<(f64, f64)>> {
        let n = grid.points_per_axis();
        let xs = self.x_axis(n)?;
        let ds = midpoints(n, PI);
        let u = self.utilities;
        let counts = count_3d(&xs, &midpoints(n, 1.0), &ds, &move |x, y, d| {
            in_ellsberg_region(x, y, d, u)
        });
        let cells = (xs.len() * n) as f64;
        Ok(ds
            .into_iter()
            .zip(counts)
            .map(|(d, c)| (d, c as f64 / cells))
            .collect())
    }

    pub fn monte_carlo(&self, domain: McDomain, samples: u64, seed: u64) -> Result<RegionEstimate> {
        let u = self.utilities;
        monte_carlo_impl(domain, self.x_sampling, samples, seed, move |x, y, d| {
            in_ellsberg_region(x, y, d, u)
        })
    }

    /// Area ratios for each `d`, in input order.
    pub fn sweep(&self, d_values: &[f64], grid: &GridSpec) -> Result<Vec<(f64, RegionEstimate)>> {
        d_values.iter().try_for_each(|&d| check_phase(d))?;
        d_values
            .iter()
            .map(|&d| Ok((d, self.area_ratio(d, grid)?)))
            .collect()
    }
}

/// Area ratio at phase `d` with `u(0) = 0`, `u(100) = 1`.
pub fn area_ratio_fixed_d(d: f64, grid: &GridSpec) -> Result<RegionEstimate> {
    EllsbergRegion::default().area_ratio(d, grid)
}

/// Volume ratio of the region in `[0,1]² × [0,π]`.
pub fn volume_ratio(grid: &GridSpec) -> Result<RegionEstimate> {
    EllsbergRegion::default().volume_ratio(grid)
}

pub fn monte_carlo_ratio(domain: McDomain, samples: u64, seed: u64) -> Result<RegionEstimate> {
    EllsbergRegion::default().monte_carlo(domain, samples, seed)
}

pub fn sweep_d(d_values: &[f64], grid: &GridSpec) -> Result<Vec<(f64, RegionEstimate)>> {
    EllsbergRegion::default().sweep(d_values, grid)
}

/// The five phases `0, π/4, π/2, 3π/4, π`.
pub fn quarter_phases() -> [f64; 5] {
    [0.0, PI / 4.0, PI / 2.0, 3.0 * PI / 4.0, PI]
}
