//! Build Murphy curves, check the two classical identities, and render a
//! Murphy diagram comparing two forecasters.
//!
//! ```bash
//! cargo run --example murphy_diagram
//! ```

use std::fs;

use triptych::figure::{murphy_svg, FigureKind, FigureSpec};
use triptych::murphy::{murphy_area, murphy_curve, murphy_value, weighted_murphy_area};
use triptych::scoring::{mean_score, ScoringRule};
use triptych::sim::{sample_scenario, Scenario};

fn main() {
    let sample = sample_scenario(Scenario::A, 4000, 11).unwrap();
    let truth = sample.record("X0").unwrap();
    let shifted = sample.record("X1").unwrap();

    let curves = [
        ("X0".to_string(), murphy_curve(&truth)),
        ("X1".to_string(), murphy_curve(&shifted)),
    ];

    for (name, curve) in &curves {
        let record = sample.record(name).unwrap();
        let area = murphy_area(curve);
        let brier = mean_score(ScoringRule::Brier, &record)
            .unwrap()
            .finite()
            .unwrap();
        let mr = mean_score(ScoringRule::ZeroOne, &record)
            .unwrap()
            .finite()
            .unwrap();
        println!("{name}: area under the curve = {area:.5} (mean Brier {brier:.5})");
        println!("{name}: value at 1/2 = {:.5} (misclassification rate {mr:.5})",
            murphy_value(curve, 0.5).unwrap());
        assert!((area - brier).abs() < 1e-12);
        assert_eq!(murphy_value(curve, 0.5).unwrap(), mr);

        // Weighting the curve with the Log mixing density gives the mean
        // Log score.
        let weighted = weighted_murphy_area(curve, ScoringRule::Log, 20_000).unwrap();
        let log = mean_score(ScoringRule::Log, &record).unwrap();
        println!(
            "{name}: Log-weighted area = {} (mean Log score {})",
            weighted, log
        );
    }

    let geometries: Vec<(String, _)> = curves
        .iter()
        .map(|(name, curve)| (name.clone(), curve.geometry()))
        .collect();
    let names: Vec<String> = geometries.iter().map(|(n, _)| n.clone()).collect();
    let spec = FigureSpec::with_palette(FigureKind::Murphy, &names);
    let svg = murphy_svg(&geometries, &spec);

    fs::create_dir_all("target/example-output").unwrap();
    fs::write("target/example-output/murphy.svg", svg).unwrap();
    println!("wrote target/example-output/murphy.svg");
}
