//! The two-urn Ellsberg experiment: no single urn composition explains the
//! observed preferences, a mind state does.
//!
//! Run with `cargo run --example ellsberg_paradox`.

use std::f64::consts::FRAC_PI_2;

use hilbert_decision::ellsberg::{
    bet_utility, bet_utility_via_operators, classical_condition, discrete_compositions,
    ellsberg_predicate, Bet, EllsbergPoint, Urn,
};

fn main() -> hilbert_decision::Result<()> {
    let compositions = discrete_compositions(100)?;
    let explained = compositions
        .iter()
        .filter(|&&x| classical_condition(x).map(|c| c.is_ellsberg()).unwrap_or(false))
        .count();
    println!(
        "classical: {explained} of {} urn-2 compositions prefer urn 1 for both colors",
        compositions.len()
    );
    for black in [0, 30, 50, 70, 100] {
        let x = (black as f64 / 100.0).sqrt();
        let c = classical_condition(x)?;
        println!(
            "  {black:>3} black: urn 1 preferred for black {:<5} for white {}",
            c.prefers_urn1_black, c.prefers_urn1_white
        );
    }

    let p = EllsbergPoint::new(0.5, 0.5, FRAC_PI_2)?;
    println!("with mind state y = 0.5, d = π/2 and x = 0.5:");
    for urn in [Urn::Known, Urn::Unknown] {
        for bet in Bet::ALL {
            let closed = bet_utility(urn, bet, &p)?;
            let operators = bet_utility_via_operators(urn, bet, &p)?;
            println!(
                "  {urn:?} urn, bet {}: U = {closed:.6} (operator pipeline {operators:.6})",
                bet.label()
            );
        }
    }
    println!("  Ellsberg behavior: {}", ellsberg_predicate(&p)?);
    Ok(())
}
