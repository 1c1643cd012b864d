//! Bernoulli map with longer start values: more digits need more steps
//! before the true start stands out.
//!
//! Usage: cargo run --release --example digit_trend [samples]

use retrodiction::harness::{self, FigureSettings};

fn main() -> retrodiction::Result<()> {
    let samples = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("samples"))
        .unwrap_or(10);
    let settings = FigureSettings {
        samples: Some(samples),
        ..FigureSettings::default()
    };
    let run = harness::run_figure2(&settings)?;
    print!("{:>4}", "n");
    for d in [4, 6, 8, 10] {
        print!("  D={d:<5}");
    }
    println!();
    for n in 1..=15 {
        print!("{n:>4}");
        for d in [4, 6, 8, 10] {
            let row = run.aggregate_for("bernoulli", d, n).expect("row");
            let saved = row.mean_log2_m.unwrap_or(0.0) - row.mean_log2_r.unwrap_or(0.0);
            print!("  {saved:>7.2}");
        }
        println!();
    }
    Ok(())
}
