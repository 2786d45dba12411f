//! Raw versus concave ROC curves and the AUC.
//!
//! ```bash
//! cargo run --example roc_curves
//! ```

use std::fs;

use triptych::data::ForecastRecord;
use triptych::figure::{roc_svg, FigureKind, FigureSpec};
use triptych::roc::{auc, concave_roc, roc_curve};

fn main() {
    // A small record whose conditional event frequencies are not monotone,
    // so the raw curve is visibly non-concave.
    let record = ForecastRecord::new(
        "demo",
        vec![0.1, 0.2, 0.35, 0.4, 0.55, 0.6, 0.75, 0.8, 0.9],
        vec![false, false, true, false, true, false, false, true, true],
    )
    .unwrap();

    let raw = roc_curve(&record).unwrap();
    let concave = concave_roc(&record).unwrap();

    println!("raw curve: {} vertices, AUC = {:.4}", raw.vertices.len(), raw.auc);
    println!(
        "concave curve: {} vertices, AUC = {:.4}",
        concave.vertices.len(),
        concave.auc
    );
    assert!(concave.auc >= raw.auc);
    assert_eq!(auc(&raw), raw.auc);

    println!("\nvertices (threshold -> FAR, HR):");
    for v in &raw.vertices {
        match v.threshold {
            Some(t) => println!("  t = {t:<5} -> ({:.3}, {:.3})", v.far, v.hr),
            None => println!("  below min -> ({:.3}, {:.3})", v.far, v.hr),
        }
    }

    // The ROC curve only sees the ordering of the forecast values: any
    // strictly increasing transform leaves it unchanged.
    let cubed = record
        .with_forecasts(record.forecasts().iter().map(|x| x * x * x).collect())
        .unwrap();
    assert_eq!(
        roc_curve(&cubed).unwrap().vertex_coordinates(),
        raw.vertex_coordinates()
    );
    println!("\ncubing the forecasts leaves the curve unchanged (rank invariance)");

    let curves = vec![
        ("raw".to_string(), raw),
        ("concave".to_string(), concave),
    ];
    let names: Vec<String> = curves.iter().map(|(n, _)| n.clone()).collect();
    let spec = FigureSpec::with_palette(FigureKind::Roc, &names);
    fs::create_dir_all("target/example-output").unwrap();
    fs::write("target/example-output/roc.svg", roc_svg(&curves, &spec)).unwrap();
    println!("wrote target/example-output/roc.svg");
}
