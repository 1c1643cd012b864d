//! Candidate enumeration: the full `n`-deep inverse tree of a target value.

use std::collections::HashSet;
use std::io::Write;

use rayon::prelude::*;

use crate::error::{Result, RetroError};
use crate::maps::{MapSpec, Point};
use crate::numerics::{DecimalValue, PrecisionConfig};

/// Default cap on the number of leaves of the inverse tree.
pub const DEFAULT_CANDIDATE_BUDGET: u64 = 1 << 22;

/// The deduplicated pre-image set of `y` under `n` steps.
///
/// Candidates are kept in depth-first path order (branch 0 before branch 1);
/// a later candidate whose canonical string repeats an earlier one is dropped.
#[derive(Debug, Clone)]
pub struct CandidateSet {
    pub map: MapSpec,
    pub y: Point,
    pub n: u32,
    pub precision: PrecisionConfig,
    candidates: Vec<Point>,
    paths: Vec<u64>,
    keys: Vec<String>,
}

impl CandidateSet {
    pub fn m(&self) -> usize {
        self.candidates.len()
    }

    pub fn candidates(&self) -> &[Point] {
        &self.candidates
    }

    /// Canonical strings at output precision, aligned with `candidates()`.
    pub fn keys(&self) -> &[String] {
        &self.keys
    }

    /// Branch choices from `y` back to candidate `i`, first step first.
    pub fn path_bits(&self, i: usize) -> String {
        let path = self.paths[i];
        (0..self.n)
            .rev()
            .map(|k| if (path >> k) & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    /// One `path_bits,canonical_string` line per candidate, LF-terminated.
    pub fn write_dump<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for i in 0..self.m() {
            writeln!(out, "{},{}", self.path_bits(i), self.keys[i])?;
        }
        Ok(())
    }

    pub fn dump(&self) -> String {
        let mut buf = Vec::new();
        self.write_dump(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("dump is ascii")
    }
}

/// Expands the inverse tree of `y` to depth `n` and deduplicates the leaves.
pub fn enumerate_candidates(
    map: &MapSpec,
    y: &Point,
    n: u32,
    cfg: &PrecisionConfig,
    budget: u64,
) -> Result<CandidateSet> {
    let needed = if n >= 127 { u128::MAX } else { 1u128 << n };
    if needed > budget as u128 || n > 63 {
        return Err(RetroError::ResourceLimit { needed, budget });
    }
    map.check_domain(y, cfg)?;

    let mut level: Vec<(u64, Point)> = vec![(0, y.clone())];
    for _ in 0..n {
        let expanded: Vec<Vec<(u64, Point)>> = level
            .par_iter()
            .map(|(path, x)| {
                let pre = map.preimages(x, cfg)?;
                Ok(pre
                    .into_iter()
                    .enumerate()
                    .map(|(branch, p)| ((path << 1) | branch as u64, p))
                    .collect())
            })
            .collect::<Result<_>>()?;
        level = expanded.into_iter().flatten().collect();
    }

    let (candidates, paths, keys) = dedup_in_order(level, cfg);

    Ok(CandidateSet {
        map: map.clone(),
        y: y.clone(),
        n,
        precision: *cfg,
        candidates,
        paths,
        keys,
    })
}

/// Keeps the first leaf for each canonical string, preserving order.
fn dedup_in_order(
    level: Vec<(u64, Point)>,
    cfg: &PrecisionConfig,
) -> (Vec<Point>, Vec<u64>, Vec<String>) {
    let keys: Vec<String> = level
        .par_iter()
        .map(|(_, p)| p.canonical_string(cfg))
        .collect();
    let mut seen = HashSet::with_capacity(keys.len());
    let mut candidates = Vec::with_capacity(keys.len());
    let mut paths = Vec::with_capacity(keys.len());
    let mut kept_keys = Vec::with_capacity(keys.len());
    for ((path, point), key) in level.into_iter().zip(keys) {
        if seen.insert(key.clone()) {
            candidates.push(point);
            paths.push(path);
            kept_keys.push(key);
        }
    }
    (candidates, paths, kept_keys)
}

/// Index of the unique candidate closer than `tol` to `x0`.
pub fn locate_true(cs: &CandidateSet, x0: &Point, tol: &DecimalValue) -> Result<usize> {
    if tol.is_negative() || tol.is_zero() {
        return Err(RetroError::InvalidParam(
            "matching tolerance must be positive".into(),
        ));
    }
    if x0.dimension() != cs.map.dimension() {
        return Err(RetroError::Domain {
            map: cs.map.to_string(),
            point: x0.to_string(),
        });
    }
    let tol_squared = tol.mul_exact(tol);
    let hits: Vec<usize> = cs
        .candidates
        .par_iter()
        .enumerate()
        .filter(|(_, c)| c.distance_squared(x0) < tol_squared)
        .map(|(i, _)| i)
        .collect();
    match hits.as_slice() {
        [] => Err(RetroError::PrecisionFailure),
        [only] => Ok(*only),
        many => Err(RetroError::AmbiguousMatch(many.len())),
    }
}
