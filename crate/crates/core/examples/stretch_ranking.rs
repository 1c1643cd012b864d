//! Stretch factor |g'(x)| along each candidate's orbit.
//!
//! On the logistic map the start value often has a small stretch; on the
//! tent map every candidate stretches by 2^n and only the tie-break is left.

use retrodiction::{
    enumerate_candidates, locate_true, stretch_rank, MapSpec, Point, PrecisionConfig,
};

fn main() -> retrodiction::Result<()> {
    let cfg = PrecisionConfig::default();
    for (map, start) in [
        (MapSpec::logistic4(), "0.45"),
        (MapSpec::logistic4(), "0.93"),
        (MapSpec::Tent, "0.45"),
    ] {
        let x0 = Point::Real(start.parse()?);
        println!("{map}, x0 = {start}");
        for n in [4, 8, 12] {
            let y = map.iterate(&x0, n, &cfg)?.last().clone();
            let cs = enumerate_candidates(&map, &y, n, &cfg, 1 << 14)?;
            let truth = locate_true(&cs, &x0, &cfg.default_match_tolerance())?;
            let res = stretch_rank(&cs, &map, truth, &cfg)?;
            let g = res.scores[truth].to_f64();
            println!(
                "  n = {n:>2}: |g'(x0)| = {g:.4e}, r = {:>4} of {:>5}, saved {:.2} bits",
                res.true_rank, res.m, res.bits_saved
            );
        }
    }
    Ok(())
}
