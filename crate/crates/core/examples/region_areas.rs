//! Share of the (x, y) square showing Ellsberg behavior as the mind phase
//! varies, plus an SVG of one slice.
//!
//! Run with `cargo run --release --example region_areas [out.svg]`.

use std::f64::consts::PI;

use hilbert_decision::ellsberg::Utilities;
use hilbert_decision::plot::{render_region_svg, PlotSpec};
use hilbert_decision::region::{quarter_phases, sweep_d, EllsbergRegion, XSampling};
use hilbert_decision::GridSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = GridSpec::default_2d();
    for (d, est) in sweep_d(&quarter_phases(), &grid)? {
        println!(
            "d = {:.2}π  area = {:.4}  (refinement error {:.1e})",
            d / PI,
            est.ratio,
            est.error_estimate
        );
    }

    // Drawing urn 2 from 100 balls restricts x to √(k/100).
    let discrete = EllsbergRegion::new(Utilities::default(), XSampling::Discrete(100));
    let est = discrete.area_ratio(PI / 2.0, &grid)?;
    println!("d = 0.50π, 100-ball urn: area = {:.4}", est.ratio);

    let region = EllsbergRegion::new(Utilities::default(), XSampling::Continuous);
    let mask = region.area_mask(PI / 2.0, &GridSpec::new(200)?)?;
    let svg = render_region_svg(&mask, &PlotSpec::new(PI / 2.0))?;
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| std::env::temp_dir().join("ellsberg_region.svg").display().to_string());
    std::fs::write(&path, svg)?;
    println!("wrote {path}");
    Ok(())
}
