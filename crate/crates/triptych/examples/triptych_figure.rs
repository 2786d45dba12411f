//! The full three-panel display: Murphy curves, reliability diagram, and
//! concave ROC curves for competing forecasts.
//!
//! ```bash
//! cargo run --example triptych_figure
//! ```

use std::fs;

use triptych::figure::{triptych_svg, FigureKind, FigureSpec};
use triptych::murphy::murphy_curve;
use triptych::reliability::{consistency_band, reliability_curve_with};
use triptych::roc::concave_roc;
use triptych::sim::{sample_scenario, Scenario};

fn main() {
    let sample = sample_scenario(Scenario::C, 4000, 5).unwrap();
    let names = ["X0", "X2"];

    let mut murphy = Vec::new();
    let mut reliability = Vec::new();
    let mut roc = Vec::new();
    for name in names {
        let record = sample.record(name).unwrap();
        murphy.push((name.to_string(), murphy_curve(&record).geometry()));
        let band = consistency_band(record.forecasts(), 0.9, 500, 42).unwrap();
        reliability.push((
            name.to_string(),
            reliability_curve_with(&record, 10, Some(band)),
        ));
        roc.push((name.to_string(), concave_roc(&record).unwrap()));
    }

    for (name, curve) in &roc {
        println!("{name}: AUC = {:.4}", curve.auc);
    }

    let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let spec = FigureSpec::with_palette(FigureKind::Triptych, &names);
    let svg = triptych_svg(&murphy, &reliability, &roc, &spec, false);

    fs::create_dir_all("target/example-output").unwrap();
    fs::write("target/example-output/triptych.svg", svg).unwrap();
    println!("wrote target/example-output/triptych.svg");
    println!("panels: Murphy curve | reliability diagram | concave ROC curve");
}
