//! Betting on the parity of a ball drawn from an urn of 100 numbered balls.
//!
//! Run with `cargo run --example expected_utility_choice`.

use hilbert_decision::{choose, outcome_probabilities, DecisionProblem, PayoffAction, StateVector};

fn main() -> hilbert_decision::Result<()> {
    let n = 100;
    let labels: Vec<String> = (1..=n).map(|k| format!("ball-{k}")).collect();
    let even: Vec<f64> = (1..=n).map(|k| if k % 2 == 0 { 100.0 } else { 0.0 }).collect();
    let odd: Vec<f64> = even.iter().map(|p| 100.0 - p).collect();
    let actions = vec![
        PayoffAction::new("even", even.clone())?,
        PayoffAction::new("odd", odd)?,
        // Positive affine transforms never change a ranking.
        PayoffAction::new("even-rescaled", even)?.affine(0.5, 10.0),
    ];

    let fair = DecisionProblem::new(labels.clone(), StateVector::uniform(n)?, actions.clone())?;
    report("uniform urn", &fair)?;

    // Tilt the urn towards even balls: amplitude 2 on even, 1 on odd.
    let tilted: Vec<f64> = (1..=n).map(|k| if k % 2 == 0 { 2.0 } else { 1.0 }).collect();
    let tilted = StateVector::from_real(&tilted)?;
    let p_even: f64 = outcome_probabilities(&tilted).iter().skip(1).step_by(2).sum();
    println!("tilted urn: P(even) = {p_even:.3}");
    report("tilted urn", &DecisionProblem::new(labels, tilted, actions)?)?;
    Ok(())
}

fn report(name: &str, problem: &DecisionProblem) -> hilbert_decision::Result<()> {
    let result = choose(problem)?;
    println!("{name}:");
    for (a, u) in problem.actions().iter().zip(&result.utilities) {
        println!("  {:<14} U = {u:8.3}", a.label());
    }
    let chosen = &problem.actions()[result.reported_choice];
    if result.is_tie() {
        let tied: Vec<&str> = result
            .best_indices
            .iter()
            .map(|&i| problem.actions()[i].label())
            .collect();
        println!("  tie between {}, reporting {}", tied.join(", "), chosen.label());
    } else {
        println!("  choice: {}", chosen.label());
    }
    Ok(())
}
