//! Nearest-neighbour density on the quadratic map z -> z^2 + c.
//!
//! For few steps the candidates cover the Julia set evenly; with more steps
//! the start values near the origin end up in sparse regions and rank early.

use retrodiction::harness::{self, FigureSettings, TrialSettings};
use retrodiction::{MapSpec, Method, Point};

fn main() -> retrodiction::Result<()> {
    let settings = TrialSettings {
        precision: FigureSettings::default().julia_precision,
        ..TrialSettings::default()
    };
    let map = MapSpec::julia(harness::DENSITY_JULIA_C.parse()?);
    println!("{map}");
    println!(
        "{:>4} {:>8} {:>8} {:>10}",
        "n", "mean r", "saved", "code bits"
    );
    for n in 2..=9 {
        let mut r = 0.0;
        let mut saved = 0.0;
        let mut bits = 0.0;
        let grid = harness::julia_start_grid();
        for z0 in &grid {
            let rec = harness::run_single(
                &map,
                &Point::Complex(z0.clone()),
                n,
                Method::Density,
                &settings,
            )?;
            r += rec.r.unwrap_or(rec.m) as f64;
            saved += rec.bits_saved.unwrap_or(0.0);
            bits += rec.density_code_bits.unwrap_or(f64::NAN);
        }
        let k = grid.len() as f64;
        println!(
            "{n:>4} {:>8.1} {:>8.3} {:>10.3}",
            r / k,
            saved / k,
            bits / k
        );
    }
    Ok(())
}
