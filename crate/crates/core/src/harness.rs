//! Seeded experiment runner and CSV output for the retrodiction experiments.
//!
//! Every trial draws its start value from its own RNG stream, derived from
//! the run seed and the trial's identity, so results do not depend on the
//! number of workers or on execution order. Rows are sorted before writing.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;

use crate::error::{Result, RetroError};
use crate::maps::{MapSpec, Point};
use crate::numerics::{ComplexValue, DecimalValue, PrecisionConfig};
use crate::preimage::{enumerate_candidates, locate_true, DEFAULT_CANDIDATE_BUDGET};
use crate::rankers::{self, Method};

pub const TRIAL_HEADER: [&str; 13] = [
    "map",
    "method",
    "D",
    "n",
    "sample_id",
    "x0",
    "m",
    "r",
    "log2_m",
    "log2_r",
    "bits_saved",
    "precision_failure",
    "density_code_bits",
];

pub const AGGREGATE_HEADER: [&str; 10] = [
    "map",
    "method",
    "D",
    "n",
    "trials",
    "failures",
    "mean_log2_m",
    "std_log2_m",
    "mean_log2_r",
    "std_log2_r",
];

pub const JULIA_GRID_SUMMARY_HEADER: [&str; 3] = ["region", "points", "mean_density_code_bits"];

/// Fixed parameter of the quadratic map in the density experiments.
pub const DENSITY_JULIA_C: &str = "0.01+0.03i";

/// Per-trial numeric settings.
#[derive(Debug, Clone)]
pub struct TrialSettings {
    pub precision: PrecisionConfig,
    /// `None` uses `10^-(P_out/2)`.
    pub match_tol: Option<DecimalValue>,
    pub budget: u64,
}

impl Default for TrialSettings {
    fn default() -> Self {
        Self {
            precision: PrecisionConfig::default(),
            match_tol: None,
            budget: DEFAULT_CANDIDATE_BUDGET,
        }
    }
}

impl TrialSettings {
    fn tolerance(&self) -> DecimalValue {
        self.match_tol
            .clone()
            .unwrap_or_else(|| self.precision.default_match_tolerance())
    }
}

/// One `(map, method, x0, n)` trial.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub map: String,
    pub method: Method,
    pub digits: u32,
    pub n: u32,
    pub sample_id: u64,
    pub x0: String,
    pub m: u64,
    pub r: Option<u64>,
    pub log2_m: f64,
    pub log2_r: Option<f64>,
    pub bits_saved: Option<f64>,
    pub precision_failure: bool,
    pub density_code_bits: Option<f64>,
}

impl ExperimentRecord {
    fn sort_key(&self) -> (&str, Method, u32, u32, u64) {
        (&self.map, self.method, self.digits, self.n, self.sample_id)
    }

    fn csv_fields(&self) -> [String; 13] {
        [
            self.map.clone(),
            self.method.to_string(),
            self.digits.to_string(),
            self.n.to_string(),
            self.sample_id.to_string(),
            self.x0.clone(),
            self.m.to_string(),
            self.r.map(|r| r.to_string()).unwrap_or_default(),
            fmt_bits(self.log2_m),
            self.log2_r.map(fmt_bits).unwrap_or_default(),
            self.bits_saved.map(fmt_bits).unwrap_or_default(),
            self.precision_failure.to_string(),
            self.density_code_bits.map(fmt_bits).unwrap_or_default(),
        ]
    }
}

/// Bits are written with six decimals.
pub fn fmt_bits(x: f64) -> String {
    format!("{x:.6}")
}

/// The value a reader recovers from [`fmt_bits`].
fn as_written(x: f64) -> f64 {
    fmt_bits(x).parse().expect("formatted float parses")
}

/// Number of decimal places of a start value (largest over components).
pub fn decimal_places(x: &Point) -> u32 {
    match x {
        Point::Real(v) => v.normalized().scale(),
        Point::Complex(z) => z.re.normalized().scale().max(z.im.normalized().scale()),
    }
}

/// Iterate, enumerate, locate and rank one start value.
///
/// A start value missing from the candidate set is recorded as a precision
/// failure instead of aborting.
pub fn run_single(
    map: &MapSpec,
    x0: &Point,
    n: u32,
    method: Method,
    settings: &TrialSettings,
) -> Result<ExperimentRecord> {
    if n == 0 {
        return Err(RetroError::InvalidConfig(
            "iteration count must be at least 1".into(),
        ));
    }
    let cfg = &settings.precision;
    let y = map.iterate(x0, n, cfg)?.last().clone();
    let cs = enumerate_candidates(map, &y, n, cfg, settings.budget)?;
    let m = cs.m() as u64;
    let mut record = ExperimentRecord {
        map: map.to_string(),
        method,
        digits: decimal_places(x0),
        n,
        sample_id: 0,
        x0: x0.canonical_string(cfg),
        m,
        r: None,
        log2_m: (m as f64).log2(),
        log2_r: None,
        bits_saved: None,
        precision_failure: false,
        density_code_bits: None,
    };
    let true_index = match locate_true(&cs, x0, &settings.tolerance()) {
        Ok(i) => i,
        Err(RetroError::PrecisionFailure) => {
            record.precision_failure = true;
            return Ok(record);
        }
        Err(e) => return Err(e),
    };
    let result = rankers::rank(&cs, method, true_index)?;
    if method == Method::Density {
        record.density_code_bits = Some(if cs.m() < 2 {
            0.0
        } else {
            rankers::code_length_from_distances(&result.scores, true_index, map.dimension())?
        });
    }
    record.r = Some(result.true_rank);
    record.log2_r = Some(result.log2_r);
    record.bits_saved = Some(result.bits_saved);
    Ok(record)
}

/// Seeds the stream of one trial from the run seed and the trial identity.
pub fn trial_rng(seed: u64, stream: &[u64]) -> SplitMix64 {
    let mut state = seed;
    for &part in stream {
        state = mix64(state ^ mix64(part.wrapping_add(0x9E37_79B9_7F4A_7C15)));
    }
    SplitMix64::seed_from_u64(state)
}

/// SplitMix64 output function.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn text_id(text: &str) -> u64 {
    // FNV-1a
    text.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// `k / 10^D` with `k` uniform in `1..10^D`; both endpoints are excluded.
pub fn sample_x0<R: Rng + ?Sized>(digits: u32, rng: &mut R) -> Result<DecimalValue> {
    if digits == 0 || digits > 18 {
        return Err(RetroError::InvalidConfig(format!(
            "digits D = {digits} outside 1..=18"
        )));
    }
    let k = rng.random_range(1..10u64.pow(digits));
    Ok(DecimalValue::from_units(BigInt::from(k), digits))
}

/// A sampled experiment over one map and method.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub map: MapSpec,
    pub method: Method,
    pub n_values: Vec<u32>,
    pub samples: usize,
    pub digits: u32,
    pub seed: u64,
    pub settings: TrialSettings,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(RetroError::InvalidConfig(
                "samples must be at least 1".into(),
            ));
        }
        if self.n_values.is_empty() || self.n_values.contains(&0) {
            return Err(RetroError::InvalidConfig(
                "iteration counts must be at least 1".into(),
            ));
        }
        if self.digits == 0 {
            return Err(RetroError::InvalidConfig(
                "digits D must be at least 1".into(),
            ));
        }
        if self.map.dimension() != 1 {
            return Err(RetroError::InvalidConfig(
                "sampled start values are defined for the interval maps only".into(),
            ));
        }
        Ok(())
    }

    fn tasks(&self) -> Result<Vec<Task>> {
        self.validate()?;
        let map_id = text_id(&self.map.to_string());
        (0..self.samples as u64)
            .map(|sample_id| {
                let mut rng = trial_rng(self.seed, &[map_id, self.digits as u64, sample_id]);
                Ok(Task {
                    map: self.map.clone(),
                    method: self.method,
                    digits: self.digits,
                    sample_id,
                    x0: Point::Real(sample_x0(self.digits, &mut rng)?),
                    n_values: self.n_values.clone(),
                    settings: self.settings.clone(),
                })
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
struct Task {
    map: MapSpec,
    method: Method,
    digits: u32,
    sample_id: u64,
    x0: Point,
    n_values: Vec<u32>,
    settings: TrialSettings,
}

impl Task {
    fn run(&self) -> Result<Vec<ExperimentRecord>> {
        self.n_values
            .iter()
            .map(|&n| {
                let record = run_single(&self.map, &self.x0, n, self.method, &self.settings)?;
                Ok(ExperimentRecord {
                    digits: self.digits,
                    sample_id: self.sample_id,
                    ..record
                })
            })
            .collect()
    }
}

fn run_tasks(tasks: Vec<Task>, workers: usize) -> Result<Vec<ExperimentRecord>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| RetroError::InvalidConfig(e.to_string()))?;
    let mut records: Vec<ExperimentRecord> = pool.install(|| {
        tasks
            .par_iter()
            .map(Task::run)
            .collect::<Result<Vec<_>>>()
            .map(|chunks| chunks.into_iter().flatten().collect())
    })?;
    records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(records)
}

/// Runs one sampled experiment on `workers` threads.
pub fn run_experiment(config: &ExperimentConfig, workers: usize) -> Result<Vec<ExperimentRecord>> {
    run_tasks(config.tasks()?, workers)
}

/// Aggregate statistics over the trials of one `(map, method, D, n)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub map: String,
    pub method: Method,
    pub digits: u32,
    pub n: u32,
    pub trials: u64,
    pub failures: u64,
    pub mean_log2_m: Option<f64>,
    pub std_log2_m: Option<f64>,
    pub mean_log2_r: Option<f64>,
    pub std_log2_r: Option<f64>,
}

impl AggregateRow {
    fn csv_fields(&self) -> [String; 10] {
        let opt = |x: Option<f64>| x.map(fmt_bits).unwrap_or_default();
        [
            self.map.clone(),
            self.method.to_string(),
            self.digits.to_string(),
            self.n.to_string(),
            self.trials.to_string(),
            self.failures.to_string(),
            opt(self.mean_log2_m),
            opt(self.std_log2_m),
            opt(self.mean_log2_r),
            opt(self.std_log2_r),
        ]
    }
}

/// Grouping label: the map text, except that all quadratic maps share `julia`.
pub fn aggregate_label(map_text: &str) -> String {
    if map_text.starts_with("julia") {
        "julia".to_string()
    } else {
        map_text.to_string()
    }
}

/// Mean and population standard deviation.
pub fn mean_std(values: &[f64]) -> Option<(f64, f64)> {
    if values.is_empty() {
        return None;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    Some((mean, var.sqrt()))
}

/// Aggregates trials as written to CSV (six-decimal bits), so the aggregate
/// file can be recomputed exactly from the trial file. Precision failures are
/// counted but excluded from the means.
pub fn aggregate(records: &[ExperimentRecord]) -> Vec<AggregateRow> {
    let mut groups: BTreeMap<(String, Method, u32, u32), Vec<&ExperimentRecord>> = BTreeMap::new();
    for rec in records {
        groups
            .entry((aggregate_label(&rec.map), rec.method, rec.digits, rec.n))
            .or_default()
            .push(rec);
    }
    groups
        .into_iter()
        .map(|((map, method, digits, n), recs)| {
            let ok: Vec<&&ExperimentRecord> =
                recs.iter().filter(|r| !r.precision_failure).collect();
            let log2_m: Vec<f64> = ok.iter().map(|r| as_written(r.log2_m)).collect();
            let log2_r: Vec<f64> = ok.iter().filter_map(|r| r.log2_r.map(as_written)).collect();
            let m_stats = mean_std(&log2_m);
            let r_stats = mean_std(&log2_r);
            AggregateRow {
                map,
                method,
                digits,
                n,
                trials: recs.len() as u64,
                failures: (recs.len() - ok.len()) as u64,
                mean_log2_m: m_stats.map(|s| s.0),
                std_log2_m: m_stats.map(|s| s.1),
                mean_log2_r: r_stats.map(|s| s.0),
                std_log2_r: r_stats.map(|s| s.1),
            }
        })
        .collect()
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

pub fn write_trials<W: Write>(records: &[ExperimentRecord], out: W) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(TRIAL_HEADER)?;
    for rec in records {
        w.write_record(rec.csv_fields())?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_aggregates<W: Write>(rows: &[AggregateRow], out: W) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(AGGREGATE_HEADER)?;
    for row in rows {
        w.write_record(row.csv_fields())?;
    }
    w.flush()?;
    Ok(())
}

/// Trials plus their aggregates, written as `<stem>_trials.csv` and
/// `<stem>_aggregate.csv`.
#[derive(Debug, Clone)]
pub struct FigureRun {
    pub stem: String,
    pub trials: Vec<ExperimentRecord>,
    pub aggregates: Vec<AggregateRow>,
}

impl FigureRun {
    fn new(stem: &str, trials: Vec<ExperimentRecord>) -> Self {
        let aggregates = aggregate(&trials);
        Self {
            stem: stem.to_string(),
            trials,
            aggregates,
        }
    }

    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let trials_path = dir.join(format!("{}_trials.csv", self.stem));
        let aggregate_path = dir.join(format!("{}_aggregate.csv", self.stem));
        write_trials(&self.trials, fs::File::create(&trials_path)?)?;
        write_aggregates(&self.aggregates, fs::File::create(&aggregate_path)?)?;
        Ok(vec![trials_path, aggregate_path])
    }

    pub fn aggregate_for(&self, label: &str, digits: u32, n: u32) -> Option<&AggregateRow> {
        self.aggregates
            .iter()
            .find(|a| a.map == label && a.digits == digits && a.n == n)
    }
}

/// Settings shared by the figure runners. `None` fields take each figure's
/// own default.
#[derive(Debug, Clone)]
pub struct FigureSettings {
    pub seed: u64,
    pub samples: Option<usize>,
    pub n_values: Option<Vec<u32>>,
    /// Precision for the interval maps.
    pub precision: PrecisionConfig,
    /// Precision for the quadratic map, whose inverse branches amplify
    /// rounding error by roughly `1/(2|z|)` per step near the attracting
    /// fixed point.
    pub julia_precision: PrecisionConfig,
    pub match_tol: Option<DecimalValue>,
    pub budget: u64,
    pub workers: usize,
}

impl Default for FigureSettings {
    fn default() -> Self {
        Self {
            seed: 2024,
            samples: None,
            n_values: None,
            precision: PrecisionConfig::default(),
            julia_precision: PrecisionConfig::new(90, 50).expect("valid"),
            match_tol: None,
            budget: DEFAULT_CANDIDATE_BUDGET,
            workers: rayon::current_num_threads(),
        }
    }
}

impl FigureSettings {
    fn trial_settings(&self, map: &MapSpec) -> TrialSettings {
        let precision = if map.dimension() == 2 {
            self.julia_precision
        } else {
            self.precision
        };
        TrialSettings {
            precision,
            match_tol: self.match_tol.clone(),
            budget: self.budget,
        }
    }

    fn n_values_or(&self, default: impl Fn() -> Vec<u32>) -> Result<Vec<u32>> {
        let n_values = self.n_values.clone().unwrap_or_else(default);
        if n_values.is_empty() || n_values.contains(&0) {
            return Err(RetroError::InvalidConfig(
                "iteration counts must be at least 1".into(),
            ));
        }
        Ok(n_values)
    }

    fn samples_or(&self, default: usize) -> Result<usize> {
        let samples = self.samples.unwrap_or(default);
        if samples == 0 {
            return Err(RetroError::InvalidConfig(
                "samples must be at least 1".into(),
            ));
        }
        Ok(samples)
    }
}

fn one_to_fifteen() -> Vec<u32> {
    (1..=15).collect()
}

const GRID_COORDS: [&str; 4] = ["-0.05", "-0.025", "0.025", "0.05"];
const GRID_PARAMS: [&str; 4] = ["-0.03", "-0.01", "0.01", "0.03"];

/// Decimal places carried by the start values of the 256-problem grid.
pub const JULIA_GRID_DIGITS: u32 = 3;

/// Start values `a + ib` with `a, b ∈ {±0.05, ±0.025}`, in index order.
pub fn julia_start_grid() -> Vec<ComplexValue> {
    let mut out = Vec::with_capacity(16);
    for a in GRID_COORDS {
        for b in GRID_COORDS {
            out.push(ComplexValue::new(
                a.parse().expect("literal"),
                b.parse().expect("literal"),
            ));
        }
    }
    out
}

/// The 256 `(z0, c)` problems; `c1, c2 ∈ {±0.03, ±0.01}`.
pub fn julia_sweep_problems() -> Vec<(ComplexValue, ComplexValue)> {
    let mut out = Vec::with_capacity(256);
    for z0 in julia_start_grid() {
        for c1 in GRID_PARAMS {
            for c2 in GRID_PARAMS {
                let c =
                    ComplexValue::new(c1.parse().expect("literal"), c2.parse().expect("literal"));
                out.push((z0.clone(), c));
            }
        }
    }
    out
}

fn julia_task(
    settings: &FigureSettings,
    z0: ComplexValue,
    c: ComplexValue,
    method: Method,
    sample_id: u64,
    n_values: &[u32],
) -> Task {
    let map = MapSpec::julia(c);
    Task {
        settings: settings.trial_settings(&map),
        map,
        method,
        digits: JULIA_GRID_DIGITS,
        sample_id,
        x0: Point::Complex(z0),
        n_values: n_values.to_vec(),
    }
}

fn interval_maps() -> [MapSpec; 3] {
    [MapSpec::logistic4(), MapSpec::Tent, MapSpec::Bernoulli]
}

fn sampled_tasks(
    settings: &FigureSettings,
    maps: &[MapSpec],
    digit_set: &[u32],
    method: Method,
    samples: usize,
    n_values: &[u32],
) -> Result<Vec<Task>> {
    let mut tasks = Vec::new();
    for map in maps {
        for &digits in digit_set {
            let config = ExperimentConfig {
                map: map.clone(),
                method,
                n_values: n_values.to_vec(),
                samples,
                digits,
                seed: settings.seed,
                settings: settings.trial_settings(map),
            };
            tasks.extend(config.tasks()?);
        }
    }
    Ok(tasks)
}

/// Digit-complexity method on all four maps, `D ∈ {1, 2}`, `n = 1..15`.
///
/// The quadratic-map panel draws `samples` problems (with replacement) from
/// the 256-problem grid.
pub fn run_figure1(settings: &FigureSettings) -> Result<FigureRun> {
    let samples = settings.samples_or(100)?;
    let n_values = settings.n_values_or(one_to_fifteen)?;
    let mut tasks = sampled_tasks(
        settings,
        &interval_maps(),
        &[1, 2],
        Method::Complexity,
        samples,
        &n_values,
    )?;
    let problems = julia_sweep_problems();
    let grid_id = text_id("julia-grid");
    for sample_id in 0..samples as u64 {
        let mut rng = trial_rng(settings.seed, &[grid_id, sample_id]);
        let (z0, c) = problems[rng.random_range(0..problems.len())].clone();
        tasks.push(julia_task(
            settings,
            z0,
            c,
            Method::Complexity,
            sample_id,
            &n_values,
        ));
    }
    Ok(FigureRun::new(
        "figure1",
        run_tasks(tasks, settings.workers)?,
    ))
}

/// Digit-complexity method on the Bernoulli map with `D ∈ {4, 6, 8, 10}`.
pub fn run_figure2(settings: &FigureSettings) -> Result<FigureRun> {
    let samples = settings.samples_or(50)?;
    let n_values = settings.n_values_or(one_to_fifteen)?;
    let tasks = sampled_tasks(
        settings,
        &[MapSpec::Bernoulli],
        &[4, 6, 8, 10],
        Method::Complexity,
        samples,
        &n_values,
    )?;
    Ok(FigureRun::new(
        "figure2",
        run_tasks(tasks, settings.workers)?,
    ))
}

/// Nearest-neighbour density method: the interval maps with `D ∈ {1, 2}`
/// and the quadratic map at `c = 0.01+0.03i` over the 16 grid start values.
pub fn run_figure3(settings: &FigureSettings) -> Result<FigureRun> {
    let samples = settings.samples_or(100)?;
    let n_values = settings.n_values_or(one_to_fifteen)?;
    let mut tasks = sampled_tasks(
        settings,
        &interval_maps(),
        &[1, 2],
        Method::Density,
        samples,
        &n_values,
    )?;
    tasks.extend(julia_density_tasks(settings, &n_values));
    Ok(FigureRun::new(
        "figure3",
        run_tasks(tasks, settings.workers)?,
    ))
}

fn julia_density_tasks(settings: &FigureSettings, n_values: &[u32]) -> Vec<Task> {
    let c: ComplexValue = DENSITY_JULIA_C.parse().expect("literal");
    julia_start_grid()
        .into_iter()
        .enumerate()
        .map(|(i, z0)| julia_task(settings, z0, c.clone(), Method::Density, i as u64, n_values))
        .collect()
}

/// Density code lengths over the start-value grid, split by the unit disc.
#[derive(Debug, Clone, PartialEq)]
pub struct JuliaGridSummary {
    pub grid_points: usize,
    pub grid_mean: f64,
    pub disc_points: usize,
    pub disc_mean: f64,
    pub off_disc_points: usize,
    pub off_disc_mean: f64,
}

impl JuliaGridSummary {
    pub fn write<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv_writer(out);
        w.write_record(JULIA_GRID_SUMMARY_HEADER)?;
        for (region, points, mean) in [
            ("grid", self.grid_points, self.grid_mean),
            ("disc", self.disc_points, self.disc_mean),
            ("off_disc", self.off_disc_points, self.off_disc_mean),
        ] {
            w.write_record([region.to_string(), points.to_string(), fmt_bits(mean)])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Figure4Run {
    pub logistic: FigureRun,
    pub julia: FigureRun,
    pub summary: JuliaGridSummary,
}

impl Figure4Run {
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        let mut paths = self.logistic.write(dir)?;
        paths.extend(self.julia.write(dir)?);
        let summary_path = dir.join("figure4_julia_summary.csv");
        self.summary.write(fs::File::create(&summary_path)?)?;
        paths.push(summary_path);
        Ok(paths)
    }
}

/// Cell centres `-0.9, -0.7, …, 0.9` of a 10×10 partition of `[-1, 1]²`.
pub fn figure4_grid() -> Vec<ComplexValue> {
    let coords: Vec<DecimalValue> = (0..10)
        .map(|i| DecimalValue::from_units(BigInt::from(-9 + 2 * i), 1))
        .collect();
    let mut out = Vec::with_capacity(100);
    for re in &coords {
        for im in &coords {
            out.push(ComplexValue::new(re.clone(), im.clone()));
        }
    }
    out
}

/// Density method: 250 logistic samples at `n = 10` (`D = 2`), and the
/// quadratic map at `n = 8`, `c = 0.01+0.03i` over [`figure4_grid`].
pub fn run_figure4(settings: &FigureSettings) -> Result<Figure4Run> {
    let samples = settings.samples_or(250)?;
    let logistic_n = settings
        .n_values
        .as_ref()
        .and_then(|v| v.first().copied())
        .unwrap_or(10);
    let julia_n = settings
        .n_values
        .as_ref()
        .and_then(|v| v.get(1).copied())
        .unwrap_or(8);
    let logistic_tasks = sampled_tasks(
        settings,
        &[MapSpec::logistic4()],
        &[2],
        Method::Density,
        samples,
        &[logistic_n],
    )?;
    let logistic = FigureRun::new(
        "figure4_logistic",
        run_tasks(logistic_tasks, settings.workers)?,
    );

    let c: ComplexValue = DENSITY_JULIA_C.parse().expect("literal");
    let grid = figure4_grid();
    let julia_tasks: Vec<Task> = grid
        .iter()
        .enumerate()
        .map(|(i, z0)| {
            let mut task = julia_task(
                settings,
                z0.clone(),
                c.clone(),
                Method::Density,
                i as u64,
                &[julia_n],
            );
            task.digits = 1;
            task
        })
        .collect();
    let julia_trials = run_tasks(julia_tasks, settings.workers)?;

    let unit = DecimalValue::one();
    let mut all = Vec::new();
    let mut disc = Vec::new();
    let mut off_disc = Vec::new();
    for rec in &julia_trials {
        let Some(bits) = rec.density_code_bits else {
            continue;
        };
        let bits = as_written(bits);
        all.push(bits);
        if grid[rec.sample_id as usize].modulus_squared() <= unit {
            disc.push(bits);
        } else {
            off_disc.push(bits);
        }
    }
    let mean = |v: &[f64]| mean_std(v).map(|s| s.0).unwrap_or(f64::NAN);
    let summary = JuliaGridSummary {
        grid_points: all.len(),
        grid_mean: mean(&all),
        disc_points: disc.len(),
        disc_mean: mean(&disc),
        off_disc_points: off_disc.len(),
        off_disc_mean: mean(&off_disc),
    };
    Ok(Figure4Run {
        logistic,
        julia: FigureRun::new("figure4_julia", julia_trials),
        summary,
    })
}

/// Digit-complexity method over all 256 quadratic-map problems.
pub fn run_julia_sweep(settings: &FigureSettings) -> Result<FigureRun> {
    let n_values = settings.n_values_or(one_to_fifteen)?;
    let tasks = julia_sweep_problems()
        .into_iter()
        .enumerate()
        .map(|(i, (z0, c))| julia_task(settings, z0, c, Method::Complexity, i as u64, &n_values))
        .collect();
    Ok(FigureRun::new(
        "julia_sweep",
        run_tasks(tasks, settings.workers)?,
    ))
}
