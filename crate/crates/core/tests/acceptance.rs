//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use retrodiction::codes::{cl_harmonic, loglog_code_bits, CodeParams};
use retrodiction::harness::{self, FigureSettings, TrialSettings};
use retrodiction::{
    complexity_rank, enumerate_candidates, locate_true, MapSpec, Method, Point, PrecisionConfig,
};

type Criterion = (&'static str, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn real(s: &str) -> Point {
    Point::Real(s.parse().unwrap())
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// `text` rounded to `places` fractional digits, for comparing with printed values.
fn rounded(text: &str, places: usize) -> String {
    let v: retrodiction::DecimalValue = text.parse().unwrap();
    v.round_to(places as u32).to_string()
}

fn p1_worked_example() -> Outcome {
    let start = Instant::now();
    let cfg = PrecisionConfig::default();
    let cs =
        match enumerate_candidates(&MapSpec::logistic4(), &real("0.88111296"), 3, &cfg, 1 << 10) {
            Ok(cs) => cs,
            Err(e) => return outcome(false, e.to_string()),
        };
    let elapsed = start.elapsed();
    let printed = [
        "0.7312", "0.2688", "0.94333", "0.05667", "0.65", "0.35", "0.97697", "0.02303",
    ];
    let exact = ["0.65", "0.35"];
    let got: BTreeSet<&str> = cs.keys().iter().map(String::as_str).collect();
    let mut ok = cs.m() == 8 && exact.iter().all(|e| got.contains(e));
    for p in printed {
        let places = p.len() - 2;
        ok &= cs.keys().iter().any(|k| rounded(k, places) == p);
    }
    ok &= elapsed < Duration::from_secs(1);
    outcome(ok, format!("m = {}, {:?}", cs.m(), elapsed))
}

const TENT_LISTING: &str = "
0.0075 0.9925 0.4925 0.5075 0.2425 0.7575 0.2575 0.7425
0.1175 0.8825 0.3825 0.6175 0.1325 0.8675 0.3675 0.6325
0.055 0.945 0.445 0.555 0.195 0.805 0.305 0.695
0.07 0.93 0.43 0.57 0.18 0.82 0.32 0.68
0.02375 0.97625 0.47625 0.52375 0.22625 0.77375 0.27375 0.72625
0.10125 0.89875 0.39875 0.60125 0.14875 0.85125 0.35125 0.64875
0.03875 0.96125 0.46125 0.53875 0.21125 0.78875 0.28875 0.71125
0.08625 0.91375 0.41375 0.58625 0.16375 0.83625 0.33625 0.66375
0.008125 0.991875 0.491875 0.508125 0.241875 0.758125 0.258125 0.741875
0.116875 0.883125 0.383125 0.616875 0.133125 0.866875 0.366875 0.633125
0.054375 0.945625 0.445625 0.554375 0.195625 0.804375 0.304375 0.695625
0.070625 0.929375 0.429375 0.570625 0.179375 0.820625 0.320625 0.679375
0.023125 0.976875 0.476875 0.523125 0.226875 0.773125 0.273125 0.726875
0.101875 0.898125 0.398125 0.601875 0.148125 0.851875 0.351875 0.648125
0.039375 0.960625 0.460625 0.539375 0.210625 0.789375 0.289375 0.710625
0.085625 0.914375 0.414375 0.585625 0.164375 0.835625 0.335625 0.664375";

fn p2_tent_listing() -> Outcome {
    let start = Instant::now();
    let cfg = PrecisionConfig::default();
    let x0 = real("0.68");
    let map = MapSpec::Tent;
    let run = || -> retrodiction::Result<_> {
        let y = map.iterate(&x0, 7, &cfg)?.last().clone();
        let cs = enumerate_candidates(&map, &y, 7, &cfg, 1 << 10)?;
        let idx = locate_true(&cs, &x0, &cfg.default_match_tolerance())?;
        Ok((complexity_rank(&cs, idx)?, cs))
    };
    let (res, cs) = match run() {
        Ok(v) => v,
        Err(e) => return outcome(false, e.to_string()),
    };
    let elapsed = start.elapsed();
    let expected: BTreeSet<&str> = TENT_LISTING.split_whitespace().collect();
    let got: BTreeSet<&str> = cs.keys().iter().map(String::as_str).collect();
    let ok = expected.len() == 128
        && got == expected
        && res.true_rank <= 16
        && res.log2_r <= 4.0
        && res.log2_m == 7.0
        && elapsed < Duration::from_secs(1);
    outcome(
        ok,
        format!(
            "set equal: {}, r = {}, m = {}, {:?}",
            got == expected,
            res.true_rank,
            res.m,
            elapsed
        ),
    )
}

fn p3_figure1_plateau() -> Outcome {
    let start = Instant::now();
    let settings = FigureSettings {
        samples: Some(30),
        n_values: Some(vec![10, 15]),
        ..FigureSettings::default()
    };
    let run = match harness::run_figure1(&settings) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let mut ok = true;
    let mut parts = Vec::new();
    for (label, d) in [
        ("logistic:mu=4.0", 2),
        ("tent", 2),
        ("bernoulli", 2),
        ("julia", harness::JULIA_GRID_DIGITS),
    ] {
        let (Some(a10), Some(a15)) = (
            run.aggregate_for(label, d, 10),
            run.aggregate_for(label, d, 15),
        ) else {
            return outcome(false, format!("missing rows for {label}"));
        };
        let m15 = a15.mean_log2_m.unwrap_or(0.0);
        let r15 = a15.mean_log2_r.unwrap_or(f64::INFINITY);
        let r10 = a10.mean_log2_r.unwrap_or(f64::INFINITY);
        ok &= m15 >= 14.5 && r15 <= 6.0 && r15 <= r10 + 1.0;
        parts.push(format!("{label}: m15 {m15:.2} r10 {r10:.2} r15 {r15:.2}"));
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(600);
    outcome(ok, format!("{}; {:?}", parts.join("; "), elapsed))
}

fn p4_figure2_trend() -> Outcome {
    let start = Instant::now();
    let settings = FigureSettings::default();
    let run = match harness::run_figure2(&settings) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let saved = |d: u32, pred: &dyn Fn(u32) -> bool| {
        let xs: Vec<f64> = run
            .trials
            .iter()
            .filter(|t| t.digits == d && pred(t.n))
            .filter_map(|t| t.bits_saved)
            .collect();
        mean(&xs)
    };
    let d4 = saved(4, &|n| n == 15);
    let d10 = saved(10, &|n| n == 15);
    let d10_small = saved(10, &|n| n <= 6);
    let elapsed = start.elapsed();
    let ok = d4 > d10 && d10_small <= 1.0 && elapsed < Duration::from_secs(600);
    outcome(
        ok,
        format!("saved@15 D=4 {d4:.3} D=10 {d10:.3}; D=10 n<=6 {d10_small:.3}; {elapsed:?}"),
    )
}

fn p5_density_nulls() -> Outcome {
    let log2_e = std::f64::consts::LOG2_E;
    let mut ok = true;
    let mut parts = Vec::new();
    for map in [MapSpec::Tent, MapSpec::Bernoulli] {
        let config = harness::ExperimentConfig {
            map: map.clone(),
            method: Method::Density,
            n_values: vec![12],
            samples: 50,
            digits: 2,
            seed: 2024,
            settings: TrialSettings::default(),
        };
        let trials = match harness::run_experiment(&config, rayon::current_num_threads()) {
            Ok(t) => t,
            Err(e) => return outcome(false, e.to_string()),
        };
        let r: Vec<f64> = trials.iter().filter_map(|t| t.log2_r).collect();
        let m: Vec<f64> = trials.iter().map(|t| t.log2_m).collect();
        let gap = (mean(&r) - (mean(&m) - log2_e)).abs();
        ok &= r.len() == trials.len() && gap <= 1.5;
        parts.push(format!("{map}: |gap| {gap:.3}"));
    }
    let settings = TrialSettings {
        precision: FigureSettings::default().julia_precision,
        ..TrialSettings::default()
    };
    let map = MapSpec::julia(harness::DENSITY_JULIA_C.parse().unwrap());
    for (n, want_at_least) in [(8, true), (4, false)] {
        let mut saved = Vec::new();
        for z0 in harness::julia_start_grid() {
            match harness::run_single(&map, &Point::Complex(z0), n, Method::Density, &settings) {
                Ok(rec) => saved.extend(rec.bits_saved),
                Err(e) => return outcome(false, e.to_string()),
            }
        }
        let s = mean(&saved);
        ok &= saved.len() == 16 && if want_at_least { s >= 2.0 } else { s <= 1.0 };
        parts.push(format!("julia n={n}: saved {s:.3}"));
    }
    outcome(ok, parts.join("; "))
}

fn p6_julia_sweep() -> Outcome {
    let start = Instant::now();
    let settings = FigureSettings {
        n_values: Some(vec![10]),
        ..FigureSettings::default()
    };
    let run = match harness::run_julia_sweep(&settings) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let firsts = run.trials.iter().filter(|t| t.r == Some(1)).count();
    let failures = run.trials.iter().filter(|t| t.precision_failure).count();
    let frac = firsts as f64 / run.trials.len() as f64;
    let elapsed = start.elapsed();
    let ok = run.trials.len() == 256 && frac >= 0.9 && elapsed < Duration::from_secs(900);
    outcome(
        ok,
        format!(
            "r = 1 in {firsts}/256 ({:.1}%), precision failures {failures}, {elapsed:?}",
            100.0 * frac
        ),
    )
}

fn p7_figure4_means() -> Outcome {
    let settings = FigureSettings {
        samples: Some(1),
        ..FigureSettings::default()
    };
    let run = match harness::run_figure4(&settings) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let s = &run.summary;
    let ok = s.grid_points == 100
        && (s.grid_mean - 6.21).abs() <= 0.8
        && (s.disc_mean - 5.66).abs() <= 0.8
        && s.disc_mean < s.off_disc_mean;
    outcome(
        ok,
        format!(
            "grid {:.3}, disc {:.3} ({} points), off-disc {:.3}",
            s.grid_mean, s.disc_mean, s.disc_points, s.off_disc_mean
        ),
    )
}

fn p8_codes() -> Outcome {
    let mut ok = cl_harmonic(1).map(|b| b == 1.0).unwrap_or(false);
    let mut worst: f64 = 0.0;
    for m in [2u64, 100, 32768] {
        for a in [2.0, 10.0] {
            let params = CodeParams::new(a, m).unwrap();
            let mut total = 0.0;
            let mut kraft = 0.0;
            for r in 1..=m {
                total += params.probability(r).unwrap();
                kraft += (-loglog_code_bits(r, &params).unwrap()).exp2();
            }
            worst = worst.max((total - 1.0).abs());
            ok &= (total - 1.0).abs() <= 1e-9 && kraft <= 1.0 + 1e-9;
        }
    }
    outcome(ok, format!("max |sum Q - 1| = {worst:.2e}"))
}

/// Exact rational `num / den` with `den > 0`.
#[derive(Clone)]
struct Ratio {
    num: BigInt,
    den: BigInt,
}

impl Ratio {
    fn new(num: BigInt, den: BigInt) -> Self {
        let g = num.gcd(&den);
        let g = if g.is_zero() { BigInt::one() } else { g };
        Ratio {
            num: num / &g,
            den: den / &g,
        }
    }

    fn int(k: i64) -> Self {
        Ratio::new(BigInt::from(k), BigInt::one())
    }

    fn add(&self, o: &Ratio) -> Ratio {
        Ratio::new(&self.num * &o.den + &o.num * &self.den, &self.den * &o.den)
    }

    fn sub(&self, o: &Ratio) -> Ratio {
        Ratio::new(&self.num * &o.den - &o.num * &self.den, &self.den * &o.den)
    }

    fn scale(&self, k: i64) -> Ratio {
        Ratio::new(&self.num * k, self.den.clone())
    }

    fn halve(&self) -> Ratio {
        Ratio::new(self.num.clone(), &self.den * 2)
    }

    fn lt_half(&self) -> bool {
        &self.num * 2 < self.den
    }

    fn ge_one(&self) -> bool {
        self.num >= self.den
    }

    /// Terminating decimal expansion; every value here has a `2^a 5^b` denominator.
    fn decimal(&self) -> String {
        let mut places = 0u32;
        let mut scaled = self.num.clone();
        let mut den = self.den.clone();
        while !(&scaled % &den).is_zero() {
            scaled *= 10;
            places += 1;
            assert!(places < 200, "non-terminating value");
        }
        scaled /= &den;
        den = BigInt::from(10).pow(places);
        let (int, frac) = scaled.abs().div_rem(&den);
        let mut frac_text = if places == 0 {
            String::new()
        } else {
            format!("{:0>width$}", frac.to_string(), width = places as usize)
        };
        while frac_text.ends_with('0') {
            frac_text.pop();
        }
        if frac_text.is_empty() {
            frac_text.push('0');
        }
        let sign = if scaled.is_negative() { "-" } else { "" };
        format!("{sign}{int}.{frac_text}")
    }
}

fn oracle_forward(map: &MapSpec, x: &Ratio) -> Ratio {
    match map {
        MapSpec::Tent if x.lt_half() => x.scale(2),
        MapSpec::Tent => Ratio::int(2).sub(&x.scale(2)),
        _ => {
            let mut y = x.scale(2);
            while y.ge_one() {
                y = y.sub(&Ratio::int(1));
            }
            y
        }
    }
}

fn oracle_preimages(map: &MapSpec, y: &Ratio) -> [Ratio; 2] {
    let half = y.halve();
    match map {
        MapSpec::Tent => [half.clone(), Ratio::int(1).sub(&half)],
        _ => [
            half.clone(),
            half.add(&Ratio::new(BigInt::one(), BigInt::from(2))),
        ],
    }
}

fn oracle_candidates(map: &MapSpec, x0: &Ratio, n: u32) -> Vec<String> {
    let mut y = x0.clone();
    for _ in 0..n {
        y = oracle_forward(map, &y);
    }
    let mut level = vec![y];
    for _ in 0..n {
        level = level
            .iter()
            .flat_map(|v| oracle_preimages(map, v))
            .collect();
    }
    let mut seen = BTreeSet::new();
    level
        .iter()
        .map(Ratio::decimal)
        .filter(|s| seen.insert(s.clone()))
        .collect()
}

fn p9_rational_oracle() -> Outcome {
    let cfg = PrecisionConfig::default();
    let mut checked = 0;
    for seed in 0..20u64 {
        for map in [MapSpec::Tent, MapSpec::Bernoulli] {
            for digits in 1..=4u32 {
                let mut rng = harness::trial_rng(seed, &[digits as u64, 99]);
                let x0 = harness::sample_x0(digits, &mut rng).unwrap();
                let text = x0.to_string();
                let (int, frac) = text.split_once('.').unwrap();
                assert_eq!(int, "0");
                let exact = Ratio::new(
                    frac.parse::<BigInt>().unwrap(),
                    BigInt::from(10).pow(frac.len() as u32),
                );
                for n in 1..=10u32 {
                    let expected = oracle_candidates(&map, &exact, n);
                    let point = Point::Real(x0.clone());
                    let y = map.iterate(&point, n, &cfg).unwrap().last().clone();
                    let cs = enumerate_candidates(&map, &y, n, &cfg, 1 << 12).unwrap();
                    if cs.keys() != expected.as_slice() {
                        return outcome(false, format!("{map} x0 = {text} n = {n}: sets differ"));
                    }
                    checked += 1;
                }
            }
        }
    }
    outcome(true, format!("{checked} candidate sets identical"))
}

fn p10_determinism() -> Outcome {
    let base = FigureSettings {
        samples: Some(4),
        n_values: Some((1..=8).collect()),
        ..FigureSettings::default()
    };
    let render = |workers: usize| -> retrodiction::Result<(Vec<u8>, Vec<u8>)> {
        let run = harness::run_figure1(&FigureSettings {
            workers,
            ..base.clone()
        })?;
        let mut trials = Vec::new();
        let mut aggregates = Vec::new();
        harness::write_trials(&run.trials, &mut trials)?;
        harness::write_aggregates(&run.aggregates, &mut aggregates)?;
        Ok((trials, aggregates))
    };
    match (render(1), render(4)) {
        (Ok(a), Ok(b)) => outcome(a == b, format!("{} trial bytes, workers 1 vs 4", a.0.len())),
        (Err(e), _) | (_, Err(e)) => outcome(false, e.to_string()),
    }
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("P1", "worked example candidate set", p1_worked_example),
        ("P2", "tent fixture and rank bound", p2_tent_listing),
        ("P3", "figure 1 plateau", p3_figure1_plateau),
        ("P4", "figure 2 digit trend", p4_figure2_trend),
        ("P5", "density nulls and julia savings", p5_density_nulls),
        ("P6", "julia sweep first ranks", p6_julia_sweep),
        ("P7", "figure 4 julia means", p7_figure4_means),
        ("P8", "code completeness and Kraft", p8_codes),
        ("P9", "exact rational oracle", p9_rational_oracle),
        ("P10", "worker-count determinism", p10_determinism),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = Vec::new();
    for (id, name, check) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| f == id) {
            continue;
        }
        let result = check();
        let status = if result.pass { "PASS" } else { "FAIL" };
        println!("{status} {id} {name}: {}", result.detail);
        if !result.pass {
            failed.push(id);
        }
    }
    if !failed.is_empty() {
        println!(
            "acceptance: {} failed ({})",
            failed.len(),
            failed.join(", ")
        );
        std::process::exit(1);
    }
    println!("acceptance: all criteria passed");
}
