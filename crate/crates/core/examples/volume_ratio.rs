//! Fraction of the full (x, y, d) box showing Ellsberg behavior, by grid
//! quadrature and by Monte Carlo.
//!
//! Run with `cargo run --release --example volume_ratio`.

use hilbert_decision::region::{monte_carlo_ratio, volume_ratio, McDomain};
use hilbert_decision::GridSpec;

fn main() -> hilbert_decision::Result<()> {
    for n in [50, 100, 200, 300] {
        let est = volume_ratio(&GridSpec::new(n)?)?;
        println!(
            "grid n = {n:>3}: {:.5} (refinement error {:.1e}, {} evaluations)",
            est.ratio, est.error_estimate, est.evaluations
        );
    }
    let grid = volume_ratio(&GridSpec::default_3d())?;
    let mc = monte_carlo_ratio(McDomain::Volume, 2_000_000, 42)?;
    println!("monte carlo:  {:.5} ± {:.5}", mc.ratio, mc.error_estimate);
    println!("grid and monte carlo agree within 3σ: {}", grid.agrees_with(&mc, 3.0));
    Ok(())
}
