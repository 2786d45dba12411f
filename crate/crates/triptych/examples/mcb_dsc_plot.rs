//! Compare many forecasters at once in an MCB-DSC plot.
//!
//! ```bash
//! cargo run --example mcb_dsc_plot
//! ```

use std::fs;

use triptych::data::ForecastRecord;
use triptych::decomp::{corp_decomposition, mcb_dsc_plot};
use triptych::figure::{mcbdsc_svg, FigureKind, FigureSpec};
use triptych::scoring::ScoringRule;
use triptych::sim::{sample_scenario, Scenario};

fn main() {
    // Nested information sources give a spread of discrimination ability;
    // hand-built distortions add miscalibration on top.
    let sample = sample_scenario(Scenario::C, 3000, 17).unwrap();
    let outcomes = sample.outcomes.clone();

    let mut decompositions = Vec::new();
    for (name, values) in &sample.forecasts {
        let record =
            ForecastRecord::new(name.clone(), values.clone(), outcomes.clone()).unwrap();
        let d = corp_decomposition(ScoringRule::Brier, &record).unwrap();
        decompositions.push((name.clone(), d));
    }
    // A shrunk variant of the best forecast: same ranking, worse calibration.
    let shrunk: Vec<f64> = sample.forecasts[0]
        .1
        .iter()
        .map(|x| 0.4 + 0.2 * x)
        .collect();
    let record = ForecastRecord::new("X0 shrunk", shrunk, outcomes.clone()).unwrap();
    decompositions.push((
        "X0 shrunk".to_string(),
        corp_decomposition(ScoringRule::Brier, &record).unwrap(),
    ));

    let plot = mcb_dsc_plot(&decompositions).unwrap();
    println!("shared UNC = {:.4}", plot.unc);
    println!("{:<10} {:>8} {:>8} {:>8}", "name", "MCB", "DSC", "mean");
    for point in &plot.points {
        let mcb = point.mcb.finite().unwrap();
        println!(
            "{:<10} {:>8.4} {:>8.4} {:>8.4}",
            point.name,
            mcb,
            point.dsc,
            mcb - point.dsc + plot.unc
        );
    }
    println!("contour levels: {:?}", plot.contour_levels);
    println!("(points above the diagonal beat the constant-frequency baseline)");

    // Re-calibration removes MCB but cannot add DSC: the shrunk variant
    // shares X0's discrimination exactly.
    let x0_dsc = plot.points[0].dsc;
    let shrunk_dsc = plot.points.last().unwrap().dsc;
    assert!((x0_dsc - shrunk_dsc).abs() < 1e-12);

    let spec = FigureSpec::with_palette(FigureKind::McbDsc, &[]);
    fs::create_dir_all("target/example-output").unwrap();
    fs::write("target/example-output/mcbdsc.svg", mcbdsc_svg(&plot, &spec)).unwrap();
    println!("wrote target/example-output/mcbdsc.svg");
}
