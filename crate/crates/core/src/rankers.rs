//! Candidate rankings: digit complexity, nearest-neighbour density and stretch.
//!
//! Each ranker scores every candidate, sorts by score and breaks ties by the
//! candidates' own order (numeric for reals, `(re, im)` for complex values),
//! so the resulting order is a strict total order over the candidate set.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use flate2::{Compress, Compression, FlushCompress};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Result, RetroError};
use crate::maps::{MapSpec, Point};
use crate::numerics::{DecimalValue, PrecisionConfig};
use crate::preimage::CandidateSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Complexity,
    Density,
    Stretch,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Complexity => "complexity",
            Method::Density => "density",
            Method::Stretch => "stretch",
        })
    }
}

impl FromStr for Method {
    type Err = RetroError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "complexity" => Ok(Method::Complexity),
            "density" => Ok(Method::Density),
            "stretch" => Ok(Method::Stretch),
            _ => Err(RetroError::Parse {
                what: "method",
                input: s.to_string(),
            }),
        }
    }
}

/// One method's ordering of a candidate set and the rank of the true value.
#[derive(Debug, Clone)]
pub struct RankResult {
    pub method: Method,
    /// Candidate indices, best first.
    pub order: Vec<usize>,
    pub true_index: usize,
    /// 1-based position of the true value in `order`.
    pub true_rank: u64,
    pub m: u64,
    pub log2_r: f64,
    pub log2_m: f64,
    pub bits_saved: f64,
    /// Raw per-candidate scores, indexed like the candidate set.
    pub scores: Vec<DecimalValue>,
}

impl RankResult {
    fn from_scores(
        method: Method,
        scores: Vec<DecimalValue>,
        points: &[Point],
        true_index: usize,
        descending: bool,
    ) -> Result<Self> {
        let m = points.len();
        if true_index >= m {
            return Err(RetroError::InvalidRank(true_index as u64 + 1));
        }
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| {
            let by_score = scores[a].cmp(&scores[b]);
            let by_score = if descending {
                by_score.reverse()
            } else {
                by_score
            };
            by_score.then_with(|| points[a].cmp(&points[b]))
        });
        let position = order
            .iter()
            .position(|&i| i == true_index)
            .expect("order is a permutation");
        let true_rank = position as u64 + 1;
        let log2_r = (true_rank as f64).log2();
        let log2_m = (m as f64).log2();
        Ok(Self {
            method,
            order,
            true_index,
            true_rank,
            m: m as u64,
            log2_r,
            log2_m,
            bits_saved: log2_m - log2_r,
            scores,
        })
    }

    /// Score dump as `index,score,canonical_string` CSV rows, LF-terminated.
    pub fn write_scores<W: Write>(&self, cs: &CandidateSet, out: W) -> Result<()> {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        writer.write_record(["index", "score", "canonical_string"])?;
        for (i, score) in self.scores.iter().enumerate() {
            writer.write_record([i.to_string(), score.plain_string(), cs.keys()[i].clone()])?;
        }
        writer.flush()?;
        Ok(())
    }
}

thread_local! {
    static COMPRESSOR: RefCell<Compress> = RefCell::new(Compress::new(Compression::best(), true));
}

/// Length in bytes of `bytes` compressed into a zlib stream (DEFLATE at
/// level 9 with the 2-byte header and Adler-32 trailer).
pub fn deflate_complexity(bytes: &[u8]) -> usize {
    COMPRESSOR.with(|cell| {
        let mut compressor = cell.borrow_mut();
        compressor.reset();
        let mut out = Vec::with_capacity(bytes.len() + 64);
        loop {
            let status = compressor
                .compress_vec(bytes, &mut out, FlushCompress::Finish)
                .expect("in-memory deflate cannot fail");
            if status == flate2::Status::StreamEnd {
                break;
            }
            out.reserve(out.capacity().max(64));
        }
        out.len()
    })
}

/// Orders candidates by the compressed size of their canonical strings.
pub fn complexity_rank(cs: &CandidateSet, true_index: usize) -> Result<RankResult> {
    let scores: Vec<DecimalValue> = cs
        .keys()
        .par_iter()
        .map(|key| DecimalValue::from_int(deflate_complexity(key.as_bytes()) as i64))
        .collect();
    RankResult::from_scores(
        Method::Complexity,
        scores,
        cs.candidates(),
        true_index,
        false,
    )
}

/// Distance from each candidate to its nearest other candidate.
pub fn nn_distances(cs: &CandidateSet) -> Result<Vec<DecimalValue>> {
    nearest_neighbour_distances(cs.candidates(), &cs.precision)
}

/// Nearest-neighbour distances of arbitrary points (at least two).
pub fn nearest_neighbour_distances(
    points: &[Point],
    cfg: &PrecisionConfig,
) -> Result<Vec<DecimalValue>> {
    if points.len() < 2 {
        return Err(RetroError::DegenerateSet);
    }
    match points[0] {
        Point::Real(_) => Ok(nn_sorted_line(points, cfg)),
        Point::Complex(_) => Ok(nn_plane_sweep(points, cfg)),
    }
}

/// 1D: after sorting, the nearest neighbour is one of the two adjacent values.
fn nn_sorted_line(points: &[Point], cfg: &PrecisionConfig) -> Vec<DecimalValue> {
    let values: Vec<&DecimalValue> = points
        .iter()
        .map(|p| p.as_real().expect("homogeneous candidate set"))
        .collect();
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].cmp(values[b]));
    // inputs carry at most P digits, so differences at P are exact
    let gaps: Vec<DecimalValue> = order
        .windows(2)
        .map(|w| values[w[1]].sub(values[w[0]], cfg))
        .collect();
    let mut distances = vec![DecimalValue::zero(); values.len()];
    for (k, &i) in order.iter().enumerate() {
        let left = k.checked_sub(1).map(|j| &gaps[j]);
        let right = gaps.get(k);
        distances[i] = match (left, right) {
            (Some(l), Some(r)) => l.min(r).clone(),
            (Some(l), None) => l.clone(),
            (None, Some(r)) => r.clone(),
            (None, None) => unreachable!("at least two points"),
        };
    }
    distances
}

/// 2D: sweep over points sorted by real part. Candidate pairs are pruned
/// with `f64` bounds that carry a safety margin; every distance that can
/// matter is compared exactly on integer units.
fn nn_plane_sweep(points: &[Point], cfg: &PrecisionConfig) -> Vec<DecimalValue> {
    let complex: Vec<_> = points
        .iter()
        .map(|p| p.as_complex().expect("homogeneous candidate set"))
        .collect();
    let scale = complex
        .iter()
        .map(|z| z.re.scale().max(z.im.scale()))
        .max()
        .unwrap_or(0);
    let xs: Vec<BigInt> = complex.iter().map(|z| z.re.units_at(scale)).collect();
    let ys: Vec<BigInt> = complex.iter().map(|z| z.im.units_at(scale)).collect();
    let fx: Vec<f64> = complex.iter().map(|z| z.re.to_f64()).collect();
    let fy: Vec<f64> = complex.iter().map(|z| z.im.to_f64()).collect();
    let unit = 10f64.powi(-(scale as i32));
    let unit_squared = unit * unit;

    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| fx[a].partial_cmp(&fx[b]).unwrap_or(Ordering::Equal));

    let nearest = |k: usize| -> BigInt {
        let i = order[k];
        let margin = 1e-12 * (1.0 + fx[i].abs() + fy[i].abs());
        let mut best: Option<(BigInt, f64)> = None;
        let consider = |j: usize, best: &mut Option<(BigInt, f64)>| {
            let approx = ((fx[i] - fx[j]).powi(2) + (fy[i] - fy[j]).powi(2)).sqrt();
            if let Some((_, best_f)) = best {
                if approx > *best_f + margin {
                    return;
                }
            }
            let dx = &xs[i] - &xs[j];
            let dy = &ys[i] - &ys[j];
            let exact = &dx * &dx + &dy * &dy;
            let better = best.as_ref().is_none_or(|(b, _)| exact < *b);
            if better {
                let approx_best = (exact.to_f64().unwrap_or(f64::MAX) * unit_squared).sqrt();
                *best = Some((exact, approx_best));
            }
        };
        let within = |j: usize, best: &Option<(BigInt, f64)>| match best {
            Some((_, best_f)) => (fx[j] - fx[i]).abs() <= best_f + margin,
            None => true,
        };
        for &j in &order[k + 1..] {
            if !within(j, &best) {
                break;
            }
            consider(j, &mut best);
        }
        for &j in order[..k].iter().rev() {
            if !within(j, &best) {
                break;
            }
            consider(j, &mut best);
        }
        best.expect("at least two points").0
    };

    let mut squared = vec![BigInt::default(); points.len()];
    let found: Vec<(usize, BigInt)> = (0..order.len())
        .into_par_iter()
        .map(|k| (order[k], nearest(k)))
        .collect();
    for (i, d2) in found {
        squared[i] = d2;
    }
    squared
        .into_par_iter()
        .map(|d2| {
            DecimalValue::from_units(d2.abs(), 2 * scale)
                .sqrt(cfg)
                .expect("squared distance is non-negative")
        })
        .collect()
}

/// Orders candidates by decreasing nearest-neighbour distance, so the most
/// isolated candidate ranks first. A single candidate ranks first trivially.
pub fn density_rank(cs: &CandidateSet, true_index: usize) -> Result<RankResult> {
    if cs.m() == 1 {
        return RankResult::from_scores(
            Method::Density,
            vec![DecimalValue::zero()],
            cs.candidates(),
            true_index,
            true,
        );
    }
    let scores = nn_distances(cs)?;
    RankResult::from_scores(Method::Density, scores, cs.candidates(), true_index, true)
}

/// `log2(1/p)` for the true candidate under `p_i = S_i^d / Σ_j S_j^d`.
pub fn density_code_length(cs: &CandidateSet, true_index: usize, dimension: u32) -> Result<f64> {
    if cs.m() == 1 {
        return Ok(0.0);
    }
    let distances = nn_distances(cs)?;
    code_length_from_distances(&distances, true_index, dimension)
}

/// [`density_code_length`] from precomputed distances.
pub fn code_length_from_distances(
    distances: &[DecimalValue],
    true_index: usize,
    dimension: u32,
) -> Result<f64> {
    if distances.iter().any(|s| s.is_zero() || s.is_negative()) {
        return Err(RetroError::DegenerateSet);
    }
    let target = distances
        .get(true_index)
        .ok_or(RetroError::InvalidRank(true_index as u64 + 1))?;
    let power = |s: &DecimalValue| (1..dimension).fold(s.clone(), |acc, _| acc.mul_exact(s));
    let total = distances
        .iter()
        .map(power)
        .fold(DecimalValue::zero(), |acc, v| {
            let scale = acc.scale().max(v.scale());
            DecimalValue::from_units(acc.units_at(scale) + v.units_at(scale), scale)
        });
    let bits = total.to_f64().log2() - dimension as f64 * target.to_f64().log2();
    Ok(bits)
}

/// `|g'(x)|`: the product of `|f'|` along the first `n` orbit points.
pub fn stretch_factor(
    map: &MapSpec,
    x: &Point,
    n: u32,
    cfg: &PrecisionConfig,
) -> Result<DecimalValue> {
    let orbit = map.iterate(x, n.saturating_sub(1), cfg)?;
    let mut product = DecimalValue::one();
    for value in orbit.values.iter().take(n as usize) {
        product = product.mul(&map.derivative_modulus(value, cfg)?, cfg);
    }
    Ok(product)
}

/// Orders candidates by increasing stretch factor.
pub fn stretch_rank(
    cs: &CandidateSet,
    map: &MapSpec,
    true_index: usize,
    cfg: &PrecisionConfig,
) -> Result<RankResult> {
    let scores: Vec<DecimalValue> = cs
        .candidates()
        .par_iter()
        .map(|x| stretch_factor(map, x, cs.n, cfg))
        .collect::<Result<_>>()?;
    RankResult::from_scores(Method::Stretch, scores, cs.candidates(), true_index, false)
}

/// Applies `method` to a candidate set.
pub fn rank(cs: &CandidateSet, method: Method, true_index: usize) -> Result<RankResult> {
    match method {
        Method::Complexity => complexity_rank(cs, true_index),
        Method::Density => density_rank(cs, true_index),
        Method::Stretch => stretch_rank(cs, &cs.map, true_index, &cs.precision),
    }
}
