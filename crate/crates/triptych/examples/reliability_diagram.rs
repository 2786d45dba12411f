//! Reliability diagram with a resampled consistency band.
//!
//! ```bash
//! cargo run --example reliability_diagram
//! ```

use std::fs;

use triptych::figure::{reliability_svg, FigureKind, FigureSpec};
use triptych::reliability::{consistency_band, reliability_curve_with};
use triptych::sim::{sample_scenario, Scenario};

fn main() {
    // A miscalibrated forecast: values in [3/8, 5/8] while the true event
    // probability spans the whole unit interval.
    let sample = sample_scenario(Scenario::A, 2000, 3).unwrap();
    let record = sample.record("X1").unwrap();

    let band = consistency_band(record.forecasts(), 0.9, 1000, 42).unwrap();
    let diagram = reliability_curve_with(&record, 10, Some(band));

    println!(
        "{} distinct forecast values pooled into {} bins",
        diagram.curve_points.len(),
        diagram.bins.len()
    );
    for bin in &diagram.bins {
        println!(
            "bin [{:.3}, {:.3}]: CEP {:.3} from {} cases",
            bin.lo, bin.hi, bin.cep, bin.count
        );
    }
    let band = diagram.band.as_ref().unwrap();
    let outside = diagram
        .curve_points
        .iter()
        .zip(band.lower.iter().zip(&band.upper))
        .filter(|((_, cep), (lo, hi))| cep < lo || cep > hi)
        .count();
    println!(
        "{outside} of {} curve points fall outside the {}% consistency band",
        diagram.curve_points.len(),
        band.level * 100.0
    );
    println!("(the forecast is genuinely miscalibrated, so most points should)");

    let diagrams = vec![("X1".to_string(), diagram)];
    let spec = FigureSpec::with_palette(FigureKind::Reliability, &["X1".to_string()]);
    let svg = reliability_svg(&diagrams, &spec, false);

    fs::create_dir_all("target/example-output").unwrap();
    fs::write("target/example-output/reliability.svg", svg).unwrap();
    fs::write(
        "target/example-output/reliability.json",
        serde_json::to_string_pretty(&diagrams[0].1).unwrap(),
    )
    .unwrap();
    println!("wrote target/example-output/reliability.svg and .json");
}
