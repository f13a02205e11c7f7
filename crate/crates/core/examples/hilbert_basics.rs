//! States, inner products, projectors and expectations.
//!
//! Run with `cargo run --example hilbert_basics`.

use hilbert_decision::{
    basis_projector, expectation, inner, projector_onto, Amplitude, LinearOperator, StateVector,
};

fn main() -> hilbert_decision::Result<()> {
    // Unnormalized input is scaled to unit norm on construction.
    let beta = StateVector::new(vec![Amplitude::new(3.0, 0.0), Amplitude::new(0.0, 4.0)])?;
    let amps: Vec<String> = beta.amplitudes().iter().map(|a| format!("{a:.3}")).collect();
    println!("|β> = ({})", amps.join(", "));
    println!("renormalized on construction: {}", beta.was_renormalized());

    let plus = StateVector::from_real(&[1.0, 1.0])?;
    // The bra is conjugated, so <plus|β> and <β|plus> are complex conjugates.
    println!("<plus|β> = {:.4}", inner(&plus, &beta)?);
    println!("<β|plus> = {:.4}", inner(&beta, &plus)?);

    let p = projector_onto(&plus);
    let p2 = p.compose(&p)?;
    println!("|P² - P|max = {:.1e}", p2.max_abs_diff(&p)?);
    println!("P is a projector: {}", p.is_projector());

    // Basis projectors resolve the identity and give Born probabilities.
    let p0 = basis_projector(0, 2)?;
    let p1 = basis_projector(1, 2)?;
    let sum = &p0 + &p1;
    println!("|P0 + P1 - I|max = {:.1e}", sum.max_abs_diff(&LinearOperator::identity(2))?);
    println!("<β|P0|β> = {:.4}", expectation(&beta, &p0)?);
    println!("<β|P1|β> = {:.4}", expectation(&beta, &p1)?);

    // A global phase leaves every expectation unchanged.
    let rotated = beta.with_global_phase(1.234);
    println!("<β'|P0|β'> = {:.4}", expectation(&rotated, &p0)?);

    // Non-Hermitian operators are rejected.
    let skew = LinearOperator::from_rows(vec![
        vec![Amplitude::new(0.0, 0.0), Amplitude::new(1.0, 0.0)],
        vec![Amplitude::new(-1.0, 0.0), Amplitude::new(0.0, 0.0)],
    ])?;
    match expectation(&beta, &skew) {
        Ok(v) => println!("unexpected expectation {v}"),
        Err(e) => println!("skew operator: {e}"),
    }
    Ok(())
}
