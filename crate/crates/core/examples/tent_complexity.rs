//! Tent map, x0 = 0.68, seven steps: all 128 candidates are short decimals,
//! so digit complexity has to compete with other simple values.
//!
//! Usage: cargo run --example tent_complexity [x0] [n]

use retrodiction::{
    complexity_rank, enumerate_candidates, locate_true, MapSpec, Point, PrecisionConfig,
};

fn main() -> retrodiction::Result<()> {
    let mut args = std::env::args().skip(1);
    let x0_text = args.next().unwrap_or_else(|| "0.68".into());
    let n: u32 = args.next().map(|s| s.parse().expect("n")).unwrap_or(7);

    let cfg = PrecisionConfig::default();
    let map = MapSpec::Tent;
    let x0 = Point::Real(x0_text.parse()?);
    let y = map.iterate(&x0, n, &cfg)?.last().clone();
    let cs = enumerate_candidates(&map, &y, n, &cfg, 1 << 20)?;
    let truth = locate_true(&cs, &x0, &cfg.default_match_tolerance())?;
    let ranked = complexity_rank(&cs, truth)?;

    println!("y = {}, m = {}", y.canonical_string(&cfg), cs.m());
    for (pos, &i) in ranked.order.iter().enumerate().take(24) {
        let mark = if i == truth { " <- x0" } else { "" };
        println!(
            "{:>4}  {:>3}  {}{mark}",
            pos + 1,
            ranked.scores[i].plain_string(),
            cs.keys()[i]
        );
    }
    if ranked.m > 24 {
        println!("   ...");
    }
    println!(
        "log2 r = {:.3}, log2 m = {:.3}",
        ranked.log2_r, ranked.log2_m
    );
    Ok(())
}
