//! Code lengths for encoding the true value by its rank.
//!
//! Lengths are real-valued bits; no rounding up to whole bits.

use crate::error::{Result, RetroError};

/// `log2 r`, the plain (non prefix-free) rank code.
pub fn plain_code_bits(r: u64) -> Result<f64> {
    if r < 1 {
        return Err(RetroError::InvalidRank(r));
    }
    Ok((r as f64).log2())
}

/// `log2 m`, the cost of a uniform guess among `m` candidates.
pub fn uniform_code_bits(m: u64) -> Result<f64> {
    if m < 1 {
        return Err(RetroError::InvalidParam(
            "candidate count must be at least 1".into(),
        ));
    }
    Ok((m as f64).log2())
}

/// Prefix code from `Q(r) = 1/(r(r+1))`: `log2(r(r+1))` bits.
pub fn cl_harmonic(r: u64) -> Result<f64> {
    if r < 1 {
        return Err(RetroError::InvalidRank(r));
    }
    let r = r as f64;
    Ok(r.log2() + (r + 1.0).log2())
}

/// Parameters of the log-log prefix code over ranks `1..=m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CodeParams {
    a: f64,
    m: u64,
}

impl CodeParams {
    pub fn new(a: f64, m: u64) -> Result<Self> {
        if a.is_nan() || a <= 1.0 || !a.is_finite() {
            return Err(RetroError::InvalidParam(format!(
                "offset a = {a} must exceed 1"
            )));
        }
        if m < 1 {
            return Err(RetroError::InvalidParam(
                "alphabet size must be at least 1".into(),
            ));
        }
        Ok(Self { a, m })
    }

    /// Offset chosen from a known mean rank, `a ≈ ⟨r⟩ / ln⟨r⟩`.
    pub fn from_mean_rank(mean_rank: f64, m: u64) -> Result<Self> {
        if mean_rank.is_nan() || mean_rank <= 1.0 {
            return Err(RetroError::InvalidParam(format!(
                "mean rank {mean_rank} must exceed 1"
            )));
        }
        Self::new(mean_rank / mean_rank.ln(), m)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    fn h(&self, r: u64) -> f64 {
        1.0 / (r as f64 + self.a).ln() - 1.0 / (self.m as f64 + self.a).ln()
    }

    /// Survival function `F̄(r) = h(r) / h(0)`; `F̄(0) = 1` and `F̄(m) = 0`.
    pub fn survival(&self, r: u64) -> f64 {
        if r == 0 {
            1.0
        } else if r >= self.m {
            0.0
        } else {
            self.h(r) / self.h(0)
        }
    }

    /// `Q(r) = F̄(r − 1) − F̄(r)`.
    pub fn probability(&self, r: u64) -> Result<f64> {
        if r < 1 || r > self.m {
            return Err(RetroError::InvalidRank(r));
        }
        Ok(self.survival(r - 1) - self.survival(r))
    }
}

/// `−log2 Q(r)` for the log-log prefix code.
pub fn loglog_code_bits(r: u64, params: &CodeParams) -> Result<f64> {
    Ok(-params.probability(r)?.log2())
}

/// Closed-form approximation `log2(r+a) + 2·log2 ln(r+a) − log2 ln a`.
pub fn loglog_code_bits_approx(r: u64, a: f64) -> f64 {
    let shifted = r as f64 + a;
    shifted.log2() + 2.0 * shifted.ln().log2() - a.ln().log2()
}
