//! Proper scoring rules and their two classical representations.
//!
//! Every proper score for a binary outcome is a mixture of elementary
//! scores over the threshold (Schervish), and can equally be written
//! through a convex function and its subgradient (Savage). Both routes
//! reproduce the closed forms.
//!
//! ```bash
//! cargo run --example proper_scores
//! ```

use triptych::scoring::{
    elementary_score, mixture_score, savage_score, score, ScoringRule,
};

fn main() {
    let cases = [(0.7, true), (0.7, false), (0.25, true), (0.5, false)];
    let rules = [
        ScoringRule::Brier,
        ScoringRule::Log,
        ScoringRule::ZeroOne,
        ScoringRule::Elementary(0.3),
        ScoringRule::BetaFamily { alpha: 2.0, beta: 3.0 },
    ];

    println!(
        "{:<16} {:>12} {:>12} {:>12} {:>12}",
        "rule", "(x, y)", "closed form", "Savage", "mixture"
    );
    for rule in rules {
        for (x, y) in cases {
            let direct = score(rule, x, y).unwrap();
            let via_savage = savage_score(rule, x, y).unwrap();
            let via_mixture = mixture_score(rule, x, y, 20_000).unwrap();
            println!(
                "{:<16} {:>12} {:>12.6} {:>12.6} {:>12.6}",
                rule.name(),
                format!("({x}, {})", y as u8),
                direct.as_f64(),
                via_savage.as_f64(),
                via_mixture
            );
            assert!((direct.as_f64() - via_savage.as_f64()).abs() < 1e-12);
            assert!((direct.as_f64() - via_mixture).abs() < 1e-6);
        }
    }

    // The zero-one score is the elementary score at threshold one half;
    // averaging it over a record gives the misclassification rate.
    for x in [0.2, 0.5, 0.8] {
        for y in [false, true] {
            assert_eq!(
                elementary_score(0.5, x, y).unwrap(),
                score(ScoringRule::ZeroOne, x, y).unwrap().finite().unwrap()
            );
        }
    }
    println!("\nSavage and mixture routes agree with the closed forms;");
    println!("an impossible-outcome Log penalty is infinite:");
    println!(
        "  log score of (x = 0, y = 1): {}",
        score(ScoringRule::Log, 0.0, true).unwrap()
    );
}
