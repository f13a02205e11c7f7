//! Splitting wealth between a stock and a riskless bond.
//!
//! Run with `cargo run --example portfolio_choice`.

use hilbert_decision::{
    choose, Amplitude, DecisionProblem, PortfolioMarket, StateVector, UtilityFunction,
};

fn main() -> hilbert_decision::Result<()> {
    let market = PortfolioMarket {
        q0: 1.0,
        r1: 1.3,
        r2: 0.7,
        r: 1.05,
        w0: 100.0,
    };
    // High return with probability 0.64, carried on a complex amplitude.
    let state = StateVector::new(vec![Amplitude::new(0.8, 0.0), Amplitude::new(0.0, 0.6)])?;

    for utility in [
        UtilityFunction::Linear,
        UtilityFunction::Power { gamma: 0.5 },
        UtilityFunction::Log,
    ] {
        let actions = (0..=10)
            .map(|k| {
                let stock = 10.0 * k as f64;
                market.action(format!("stock={stock:>3}"), stock, market.w0 - stock, utility)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let problem = DecisionProblem::new(vec!["high".into(), "low".into()], state.clone(), actions)?;
        let result = choose(&problem)?;
        let best = &problem.actions()[result.reported_choice];
        println!(
            "{utility:?}: best holding {} (U = {:.4})",
            best.label(),
            result.utilities[result.reported_choice]
        );
    }

    // Holdings that do not spend exactly the initial wealth are refused.
    match market.action("overspend", 80.0, 30.0, UtilityFunction::Log) {
        Ok(_) => println!("overspend accepted"),
        Err(e) => println!("overspend: {e}"),
    }
    Ok(())
}
