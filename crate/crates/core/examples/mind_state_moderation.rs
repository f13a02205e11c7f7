//! How a subjective mind state reshapes the perceived outcome weights.
//!
//! Run with `cargo run --example mind_state_moderation`.

use std::f64::consts::PI;

use hilbert_decision::ellsberg::{mind2_state, urn2_state, Bet, Utilities};
use hilbert_decision::{
    expected_utility, moderated_distribution, moderated_expected_utility, overlap_coefficient,
    MindState, StateVector,
};

fn main() -> hilbert_decision::Result<()> {
    let world = urn2_state(0.8)?;
    let white = Bet::White.action(Utilities::default());
    println!("without a mind state: U(white) = {:.4}", expected_utility(&white, &world)?);

    // Normalized weights depend only on the mind state; the overlap |c|² scales them.
    println!("{:>6} {:>8} {:>10} {:>10}", "d/π", "|c|²", "U(white)", "P'(white)");
    for k in 0..=4 {
        let d = k as f64 * PI / 4.0;
        let mind = mind2_state(0.5, d)?;
        let c_sq = overlap_coefficient(&mind, &world)?.norm_sqr();
        let u = moderated_expected_utility(&mind, &world, &white)?;
        let normalized = moderated_distribution(&mind, &world, true)?;
        println!("{:>6.2} {c_sq:>8.4} {u:>10.4} {:>10.4}", d / PI, normalized[1]);
    }

    // A mind orthogonal to the world sees nothing; normalizing is then undefined.
    let blind = MindState::new(StateVector::basis(1, 2)?);
    let certain = StateVector::basis(0, 2)?;
    println!("raw weights: {:?}", moderated_distribution(&blind, &certain, false)?);
    if let Err(e) = moderated_distribution(&blind, &certain, true) {
        println!("normalized: {e}");
    }
    Ok(())
}
