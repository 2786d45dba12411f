//! Decompose mean scores into miscalibration (MCB), discrimination (DSC),
//! and uncertainty (UNC) components.
//!
//! ```bash
//! cargo run --example score_decomposition
//! ```

use triptych::data::ForecastRecord;
use triptych::decomp::corp_decomposition;
use triptych::scoring::{mean_score, ScoringRule};

fn main() {
    // Twelve cases, three competing forecasters of the same outcomes.
    let outcomes = vec![
        true, false, true, false, true, false, true, false, false, true, false, true,
    ];
    let forecasters = [
        (
            "sharp",
            vec![0.9, 0.1, 0.8, 0.2, 0.85, 0.35, 0.3, 0.15, 0.6, 0.7, 0.25, 0.95],
        ),
        (
            "hedged",
            vec![0.6, 0.4, 0.6, 0.45, 0.55, 0.4, 0.45, 0.5, 0.5, 0.6, 0.45, 0.65],
        ),
        (
            "overconfident",
            vec![1.0, 0.0, 1.0, 0.3, 1.0, 0.0, 0.0, 0.2, 0.4, 0.9, 0.1, 0.8],
        ),
    ];

    let rules = [ScoringRule::Brier, ScoringRule::Log, ScoringRule::ZeroOne];
    for rule in rules {
        println!("--- {rule} ---");
        println!(
            "{:<14} {:>8} {:>8} {:>8} {:>8}",
            "forecaster", "mean", "MCB", "DSC", "UNC"
        );
        for (name, forecasts) in &forecasters {
            let record =
                ForecastRecord::new(*name, forecasts.clone(), outcomes.clone()).unwrap();
            let d = corp_decomposition(rule, &record).unwrap();
            println!(
                "{:<14} {:>8} {:>8} {:>8.3} {:>8.3}",
                name,
                fmt(d.mean),
                fmt(d.mcb),
                d.dsc,
                d.unc
            );

            // The decomposition recombines exactly: mean = MCB - DSC + UNC.
            if let (Some(mean), Some(mcb)) = (d.mean.finite(), d.mcb.finite()) {
                assert!((mean - (mcb - d.dsc + d.unc)).abs() < 1e-12);
                assert_eq!(
                    mean_score(rule, &record).unwrap().finite().unwrap(),
                    mean
                );
            }
        }
        println!();
    }
    println!("note: the overconfident forecaster declared an event impossible once,");
    println!("so its mean Log score and Log MCB are infinite while DSC stays finite.");
}

fn fmt(v: triptych::ExtendedReal) -> String {
    match v.finite() {
        Some(value) => format!("{value:.3}"),
        None => "inf".to_string(),
    }
}
