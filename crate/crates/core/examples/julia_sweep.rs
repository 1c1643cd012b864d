//! All 256 quadratic-map problems at one depth, ranked by digit complexity.
//!
//! Since f(-z) = f(z), the negated start is always a candidate too; the
//! table shows how often it is the one that wins.
//!
//! Usage: cargo run --release --example julia_sweep [n]

use retrodiction::harness::{self, FigureSettings};

fn main() -> retrodiction::Result<()> {
    let n = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("n"))
        .unwrap_or(10);
    let settings = FigureSettings {
        n_values: Some(vec![n]),
        ..FigureSettings::default()
    };
    let run = harness::run_julia_sweep(&settings)?;
    let mut by_rank = std::collections::BTreeMap::new();
    for t in &run.trials {
        *by_rank.entry(t.r.unwrap_or(0)).or_insert(0u32) += 1;
    }
    println!("n = {n}, m = {}", run.trials[0].m);
    for (r, count) in by_rank {
        println!("  r = {r:>3}: {count:>3} problems");
    }
    for t in run.trials.iter().filter(|t| t.r != Some(1)).take(4) {
        println!("  {} from {}: r = {:?}", t.map, t.x0, t.r);
    }
    Ok(())
}
