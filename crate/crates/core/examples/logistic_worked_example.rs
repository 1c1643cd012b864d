//! Three steps of the logistic map from 0.35, then back again.
//!
//! Prints the eight pre-images of the observed value with their inverse
//! branch paths, and where the digit-complexity ranking puts the start.

use retrodiction::{
    complexity_rank, enumerate_candidates, locate_true, MapSpec, Point, PrecisionConfig,
};

fn main() -> retrodiction::Result<()> {
    let cfg = PrecisionConfig::default();
    let map = MapSpec::logistic4();
    let x0 = Point::Real("0.35".parse()?);

    let orbit = map.iterate(&x0, 3, &cfg)?;
    for (i, x) in orbit.values.iter().enumerate() {
        println!("x{i} = {}", x.canonical_string(&cfg));
    }

    let y = orbit.last().clone();
    let cs = enumerate_candidates(&map, &y, 3, &cfg, 1 << 10)?;
    println!("\n{} candidates:", cs.m());
    for (i, key) in cs.keys().iter().enumerate() {
        println!("  {}  {key}", cs.path_bits(i));
    }

    let truth = locate_true(&cs, &x0, &cfg.default_match_tolerance())?;
    let ranked = complexity_rank(&cs, truth)?;
    println!("\nby compressed length:");
    for &i in &ranked.order {
        println!(
            "  {:>3} bytes  {}",
            ranked.scores[i].plain_string(),
            cs.keys()[i]
        );
    }
    println!(
        "\nr = {} of m = {}, {:.3} bits saved",
        ranked.true_rank, ranked.m, ranked.bits_saved
    );
    Ok(())
}
