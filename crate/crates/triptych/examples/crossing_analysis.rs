//! Crossing points and dominance of competing calibrated forecasts.
//!
//! For calibrated forecasts the Murphy curve difference and the ROC curve
//! difference cross zero equally often, and dominance in one sense implies
//! dominance in the other. The analysis re-calibrates its inputs first, so
//! the guarantees hold in sample.
//!
//! ```bash
//! cargo run --example crossing_analysis
//! ```

use triptych::analysis::{crossing_report, Dominance};
use triptych::sim::{sample_scenario, Scenario};

fn main() {
    // Two calibrated coarsenings of the same information: their curves
    // cross exactly twice, in both displays.
    let sample = sample_scenario(Scenario::B, 50_000, 21).unwrap();
    let x1 = sample.record("X1").unwrap();
    let x2 = sample.record("X2").unwrap();
    let report = crossing_report(&x1, &x2, 1e-10).unwrap();
    println!("coarsening scenario (n = {}):", sample.len());
    println!("  Murphy sign changes: {}", report.murphy_sign_changes);
    println!("  ROC sign changes:    {}", report.roc_sign_changes);
    assert_eq!(report.murphy_sign_changes, report.roc_sign_changes);
    assert_eq!(report.murphy_dominates, Dominance::None);

    // Nested information sources: more information dominates, in both
    // senses at once.
    let sample = sample_scenario(Scenario::C, 50_000, 22).unwrap();
    println!("\nnested-information scenario (n = {}):", sample.len());
    for pair in [("X0", "X1"), ("X1", "X2"), ("X2", "X3")] {
        let finer = sample.record(pair.0).unwrap();
        let coarser = sample.record(pair.1).unwrap();
        let report = crossing_report(&finer, &coarser, 1e-3).unwrap();
        println!(
            "  {} vs {}: murphy {:?}, roc {:?}",
            pair.0, pair.1, report.murphy_dominates, report.roc_dominates
        );
        assert_eq!(report.murphy_dominates, report.roc_dominates);
        assert_eq!(report.murphy_dominates, Dominance::First);
    }
    println!("\nmore information dominates in both senses, as expected");
}
