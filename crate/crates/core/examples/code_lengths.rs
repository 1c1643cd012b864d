//! Bits needed to transmit a rank under the available codes.

use retrodiction::codes::{
    cl_harmonic, loglog_code_bits, loglog_code_bits_approx, plain_code_bits, uniform_code_bits,
    CodeParams,
};

fn main() -> retrodiction::Result<()> {
    let m = 1u64 << 15;
    let params = CodeParams::new(2.0, m)?;
    println!(
        "m = {m}, uniform guess costs {:.1} bits",
        uniform_code_bits(m)?
    );
    println!(
        "{:>6} {:>8} {:>9} {:>8} {:>8}",
        "r", "plain", "harmonic", "loglog", "approx"
    );
    for r in [1, 2, 4, 16, 100, 1000, 10_000, m] {
        println!(
            "{r:>6} {:>8.3} {:>9.3} {:>8.3} {:>8.3}",
            plain_code_bits(r)?,
            cl_harmonic(r)?,
            loglog_code_bits(r, &params)?,
            loglog_code_bits_approx(r, params.a()),
        );
    }

    let kraft: f64 = (1..=m)
        .map(|r| (-loglog_code_bits(r, &params).unwrap()).exp2())
        .sum();
    println!("\nsum of 2^-CL over all ranks: {kraft:.12}");

    let tuned = CodeParams::from_mean_rank(40.0, m)?;
    println!("offset for a mean rank of 40: a = {:.3}", tuned.a());
    Ok(())
}
