//! Writes the CSV tables for one figure at a reduced sample count.
//!
//! Usage: cargo run --release --example run_figure -- <1|2|3|4> <out-dir> [samples]

use std::path::PathBuf;

use retrodiction::harness::{self, FigureSettings};

fn main() -> retrodiction::Result<()> {
    let mut args = std::env::args().skip(1);
    let which = args.next().unwrap_or_else(|| "1".into());
    let out = PathBuf::from(args.next().unwrap_or_else(|| "figure-out".into()));
    let samples = args
        .next()
        .map(|s| s.parse().expect("samples"))
        .unwrap_or(10);
    let settings = FigureSettings {
        samples: Some(samples),
        ..FigureSettings::default()
    };
    let written = match which.as_str() {
        "1" => harness::run_figure1(&settings)?.write(&out)?,
        "2" => harness::run_figure2(&settings)?.write(&out)?,
        "3" => harness::run_figure3(&settings)?.write(&out)?,
        "4" => {
            let run = harness::run_figure4(&settings)?;
            let s = &run.summary;
            println!(
                "grid {:.3}, disc {:.3}, off disc {:.3}",
                s.grid_mean, s.disc_mean, s.off_disc_mean
            );
            run.write(&out)?
        }
        other => panic!("unknown figure {other}"),
    };
    for path in written {
        println!("{}", path.display());
    }
    Ok(())
}
