//! Fixed-precision decimal and complex arithmetic.
//!
//! Every value is an exact signed decimal `units · 10^-scale` backed by a
//! big integer. Arithmetic is carried out exactly and then rounded half-even
//! to the configured number of working digits, so results are bit-identical
//! on every platform. Canonical strings are produced at the (smaller) output
//! precision; they double as deduplication keys and compression inputs.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::error::{Result, RetroError};

const CACHED_POWERS: usize = 512;

static POWERS_OF_TEN: Lazy<Vec<BigInt>> = Lazy::new(|| {
    let mut powers = Vec::with_capacity(CACHED_POWERS);
    let mut p = BigInt::one();
    for _ in 0..CACHED_POWERS {
        powers.push(p.clone());
        p *= 10u32;
    }
    powers
});

fn pow10(exp: u32) -> BigInt {
    match POWERS_OF_TEN.get(exp as usize) {
        Some(p) => p.clone(),
        None => num_traits::pow(BigInt::from(10u32), exp as usize),
    }
}

fn pow10_ref(exp: u32) -> std::borrow::Cow<'static, BigInt> {
    match POWERS_OF_TEN.get(exp as usize) {
        Some(p) => std::borrow::Cow::Borrowed(p),
        None => std::borrow::Cow::Owned(pow10(exp)),
    }
}

/// Divide by `10^drop`, rounding half-even.
fn round_units(units: &BigInt, drop: u32) -> BigInt {
    if drop == 0 {
        return units.clone();
    }
    let divisor = pow10_ref(drop);
    // truncating division: remainder carries the sign of the dividend
    let (mut quotient, remainder) = units.div_rem(&divisor);
    if remainder.is_zero() {
        return quotient;
    }
    let twice: BigInt = remainder.abs() << 1;
    let round_away = match twice.cmp(&divisor) {
        Ordering::Greater => true,
        Ordering::Equal => quotient.is_odd(),
        Ordering::Less => false,
    };
    if round_away {
        if units.is_negative() {
            quotient -= 1;
        } else {
            quotient += 1;
        }
    }
    quotient
}

/// Floor of the square root by Newton iteration from an overestimate.
///
/// Iterates decrease monotonically until they stop decreasing, at which point
/// the current iterate is `floor(sqrt(n))`.
fn isqrt(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    let bits = n.bits();
    let mut x = if bits <= 104 {
        let approx = n.to_f64().unwrap_or(f64::MAX).sqrt().ceil() + 2.0;
        BigUint::from(approx as u128)
    } else {
        let shift = (bits - 100) & !1;
        let top = (n >> shift).to_f64().unwrap_or(f64::MAX);
        let approx = BigUint::from((top.sqrt().ceil() + 2.0) as u128);
        approx << (shift / 2)
    };
    loop {
        let next: BigUint = (&x + n / &x) >> 1;
        if next >= x {
            return x;
        }
        x = next;
    }
}

/// Working precision: `P` fractional digits in arithmetic, `G` of which are
/// guard digits discarded on canonicalisation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionConfig {
    working_digits: u32,
    guard_digits: u32,
}

impl PrecisionConfig {
    pub fn new(working_digits: u32, guard_digits: u32) -> Result<Self> {
        if working_digits < 20 {
            return Err(RetroError::InvalidPrecision(format!(
                "working digits {working_digits} < 20"
            )));
        }
        if guard_digits < 4 {
            return Err(RetroError::InvalidPrecision(format!(
                "guard digits {guard_digits} < 4"
            )));
        }
        if working_digits < guard_digits + 10 {
            return Err(RetroError::InvalidPrecision(format!(
                "output digits {} < 10",
                working_digits.saturating_sub(guard_digits)
            )));
        }
        Ok(Self {
            working_digits,
            guard_digits,
        })
    }

    pub fn working_digits(&self) -> u32 {
        self.working_digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    /// Digits kept by [`DecimalValue::canonical_string`].
    pub fn output_digits(&self) -> u32 {
        self.working_digits - self.guard_digits
    }

    /// `10^-(P_out/2)`, the default tolerance for matching the true start value.
    pub fn default_match_tolerance(&self) -> DecimalValue {
        DecimalValue::from_units(BigInt::one(), self.output_digits() / 2)
    }
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        Self {
            working_digits: 50,
            guard_digits: 10,
        }
    }
}

/// Exact signed decimal `units · 10^-scale`.
#[derive(Clone)]
pub struct DecimalValue {
    units: BigInt,
    scale: u32,
}

impl DecimalValue {
    pub fn zero() -> Self {
        Self::from_units(BigInt::zero(), 0)
    }

    pub fn one() -> Self {
        Self::from_units(BigInt::one(), 0)
    }

    pub fn from_int(value: i64) -> Self {
        Self::from_units(BigInt::from(value), 0)
    }

    /// `units · 10^-scale`.
    pub fn from_units(units: BigInt, scale: u32) -> Self {
        Self { units, scale }
    }

    /// Builds a value from an explicit sign, magnitude and scale.
    pub fn from_parts(negative: bool, coefficient: BigUint, scale: u32) -> Self {
        let sign = if negative { Sign::Minus } else { Sign::Plus };
        Self::from_units(BigInt::from_biguint(sign, coefficient), scale)
    }

    pub fn is_negative(&self) -> bool {
        self.units.is_negative()
    }

    pub fn is_zero(&self) -> bool {
        self.units.is_zero()
    }

    pub fn coefficient(&self) -> BigUint {
        self.units.magnitude().clone()
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    /// Integer units at a scale at least as large as `self.scale`.
    pub(crate) fn units_at(&self, scale: u32) -> BigInt {
        debug_assert!(scale >= self.scale);
        if scale == self.scale {
            self.units.clone()
        } else {
            &self.units * pow10_ref(scale - self.scale).as_ref()
        }
    }

    pub fn abs(&self) -> Self {
        Self::from_units(self.units.abs(), self.scale)
    }

    pub fn neg(&self) -> Self {
        Self::from_units(-&self.units, self.scale)
    }

    /// Round half-even to at most `scale` fractional digits.
    pub fn round_to(&self, scale: u32) -> Self {
        if self.scale <= scale {
            self.clone()
        } else {
            Self::from_units(round_units(&self.units, self.scale - scale), scale)
        }
    }

    /// Remove trailing fractional zeros.
    pub fn normalized(&self) -> Self {
        if self.units.is_zero() {
            return Self::zero();
        }
        let mut units = self.units.clone();
        let mut scale = self.scale;
        let ten = BigInt::from(10u32);
        while scale > 0 {
            let (q, r) = units.div_rem(&ten);
            if !r.is_zero() {
                break;
            }
            units = q;
            scale -= 1;
        }
        Self::from_units(units, scale)
    }

    pub fn add(&self, other: &Self, cfg: &PrecisionConfig) -> Self {
        let scale = self.scale.max(other.scale);
        let sum = self.units_at(scale) + other.units_at(scale);
        Self::from_units(sum, scale).round_to(cfg.working_digits)
    }

    pub fn sub(&self, other: &Self, cfg: &PrecisionConfig) -> Self {
        let scale = self.scale.max(other.scale);
        let diff = self.units_at(scale) - other.units_at(scale);
        Self::from_units(diff, scale).round_to(cfg.working_digits)
    }

    /// Exact product with no rounding; the scale is the sum of both scales.
    pub fn mul_exact(&self, other: &Self) -> Self {
        Self::from_units(&self.units * &other.units, self.scale + other.scale)
    }

    pub fn mul(&self, other: &Self, cfg: &PrecisionConfig) -> Self {
        self.mul_exact(other).round_to(cfg.working_digits)
    }

    /// Quotient rounded half-even to `P` digits.
    pub fn div(&self, other: &Self, cfg: &PrecisionConfig) -> Result<Self> {
        if other.is_zero() {
            return Err(RetroError::InvalidParam("division by zero".into()));
        }
        let p = cfg.working_digits;
        let shift = p as i64 + other.scale as i64 - self.scale as i64;
        let (num, den) = if shift >= 0 {
            (
                &self.units * pow10_ref(shift as u32).as_ref(),
                other.units.clone(),
            )
        } else {
            (
                self.units.clone(),
                &other.units * pow10_ref((-shift) as u32).as_ref(),
            )
        };
        let (mut q, r) = num.div_rem(&den);
        let twice: BigInt = r.abs() << 1;
        let round_away = match twice.cmp(&den.abs()) {
            Ordering::Greater => true,
            Ordering::Equal => q.is_odd(),
            Ordering::Less => false,
        };
        if round_away {
            if num.is_negative() != den.is_negative() {
                q -= 1;
            } else {
                q += 1;
            }
        }
        Ok(Self::from_units(q, p))
    }

    /// Square root rounded half-even to `P` digits.
    pub fn sqrt(&self, cfg: &PrecisionConfig) -> Result<Self> {
        if self.is_negative() {
            return Err(RetroError::NegativeRadicand);
        }
        let p = cfg.working_digits;
        let radicand_scale = 2 * (p + 1);
        let radicand = self.round_to(radicand_scale).units_at(radicand_scale);
        let n = radicand.magnitude();
        let root = isqrt(n);
        let exact = &root * &root == *n;
        let (mut truncated, last) = root.div_rem(&BigUint::from(10u32));
        let last = last.to_u32().unwrap_or(0);
        let round_up = last > 5 || (last == 5 && (!exact || truncated.is_odd()));
        if round_up {
            truncated += 1u32;
        }
        Ok(Self::from_parts(false, truncated, p))
    }

    /// Canonical text at `P_out` digits: half-even rounding, trailing zeros
    /// stripped, at least one fractional digit, never `-0.0`.
    pub fn canonical_string(&self, cfg: &PrecisionConfig) -> String {
        let rounded = self.round_to(cfg.output_digits()).normalized();
        rounded.fixed_string(1)
    }

    fn fixed_string(&self, min_fraction_digits: u32) -> String {
        let scale = self.scale.max(min_fraction_digits);
        let digits = self.units_at(scale).magnitude().to_str_radix(10);
        let scale = scale as usize;
        let padded = if digits.len() <= scale {
            format!("{}{}", "0".repeat(scale + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (int_part, frac_part) = padded.split_at(padded.len() - scale);
        let sign = if self.is_negative() { "-" } else { "" };
        if frac_part.is_empty() {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }

    /// Plain decimal text with trailing zeros removed (`12`, `0.5`, `-0.0075`).
    pub fn plain_string(&self) -> String {
        self.normalized().fixed_string(0)
    }

    /// Lossy conversion for reporting.
    pub fn to_f64(&self) -> f64 {
        format!("{}e-{}", self.units, self.scale)
            .parse()
            .unwrap_or(f64::NAN)
    }
}

impl PartialEq for DecimalValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for DecimalValue {}

impl PartialOrd for DecimalValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DecimalValue {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.scale == other.scale {
            return self.units.cmp(&other.units);
        }
        let scale = self.scale.max(other.scale);
        self.units_at(scale).cmp(&other.units_at(scale))
    }
}

impl fmt::Debug for DecimalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fixed_string(0))
    }
}

impl fmt::Display for DecimalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.normalized().fixed_string(1))
    }
}

impl FromStr for DecimalValue {
    type Err = RetroError;

    /// Accepts `[+-]digits[.digits]`, `[+-].digits`; no exponents.
    fn from_str(s: &str) -> Result<Self> {
        let err = || RetroError::Parse {
            what: "decimal",
            input: s.to_string(),
        };
        let trimmed = s.trim();
        let (negative, body) = match trimmed.as_bytes().first() {
            Some(b'-') => (true, &trimmed[1..]),
            Some(b'+') => (false, &trimmed[1..]),
            _ => (false, trimmed),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err());
        }
        if !int_part
            .bytes()
            .chain(frac_part.bytes())
            .all(|b| b.is_ascii_digit())
        {
            return Err(err());
        }
        let digits = format!("{int_part}{frac_part}");
        let coefficient = BigUint::parse_bytes(digits.as_bytes(), 10).ok_or_else(err)?;
        Ok(Self::from_parts(
            negative,
            coefficient,
            frac_part.len() as u32,
        ))
    }
}

fn exact_sum(a: &DecimalValue, b: &DecimalValue) -> DecimalValue {
    let scale = a.scale.max(b.scale);
    DecimalValue::from_units(a.units_at(scale) + b.units_at(scale), scale)
}

/// Complex number with decimal components.
#[derive(Clone, PartialEq, Eq)]
pub struct ComplexValue {
    pub re: DecimalValue,
    pub im: DecimalValue,
}

impl ComplexValue {
    pub fn new(re: DecimalValue, im: DecimalValue) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(DecimalValue::zero(), DecimalValue::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn neg(&self) -> Self {
        Self::new(self.re.neg(), self.im.neg())
    }

    pub fn add(&self, other: &Self, cfg: &PrecisionConfig) -> Self {
        Self::new(self.re.add(&other.re, cfg), self.im.add(&other.im, cfg))
    }

    pub fn sub(&self, other: &Self, cfg: &PrecisionConfig) -> Self {
        Self::new(self.re.sub(&other.re, cfg), self.im.sub(&other.im, cfg))
    }

    pub fn mul(&self, other: &Self, cfg: &PrecisionConfig) -> Self {
        let re = exact_sum(
            &self.re.mul_exact(&other.re),
            &self.im.mul_exact(&other.im).neg(),
        );
        let im = exact_sum(&self.re.mul_exact(&other.im), &self.im.mul_exact(&other.re));
        Self::new(
            re.round_to(cfg.working_digits),
            im.round_to(cfg.working_digits),
        )
    }

    pub fn square(&self, cfg: &PrecisionConfig) -> Self {
        self.mul(self, cfg)
    }

    /// `re² + im²`, exact (scale at most `2P` for module-produced values).
    pub fn modulus_squared(&self) -> DecimalValue {
        exact_sum(&self.re.mul_exact(&self.re), &self.im.mul_exact(&self.im))
    }

    pub fn modulus(&self, cfg: &PrecisionConfig) -> DecimalValue {
        self.modulus_squared()
            .sqrt(cfg)
            .expect("modulus squared is non-negative")
    }

    /// Principal square root `p + iq` with `p ≥ 0`; `im = 0` takes the `+` branch.
    ///
    /// The larger of `p`, `|q|` comes from `sqrt((|w| ± re)/2)` and the smaller
    /// from `im / 2·larger`, which avoids cancellation when `|im| ≪ |re|`.
    pub fn sqrt(&self, cfg: &PrecisionConfig) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let half = DecimalValue::from_units(BigInt::from(5), 1);
        let modulus = self.modulus(cfg);
        let im_negative = self.im.is_negative();
        if !self.re.is_negative() {
            let p = modulus
                .add(&self.re, cfg)
                .mul(&half, cfg)
                .sqrt(cfg)
                .expect("|w| + re >= 0");
            if p.is_zero() {
                return Self::zero();
            }
            let two_p = p.add(&p, cfg);
            let q = self.im.div(&two_p, cfg).expect("p > 0");
            Self::new(p, q)
        } else {
            let q_abs = modulus
                .sub(&self.re, cfg)
                .mul(&half, cfg)
                .sqrt(cfg)
                .expect("|w| - re >= 0");
            let two_q = q_abs.add(&q_abs, cfg);
            let p = self.im.abs().div(&two_q, cfg).expect("q > 0");
            let q = if im_negative { q_abs.neg() } else { q_abs };
            Self::new(p, q)
        }
    }

    /// `re,im` with each component in canonical decimal form.
    pub fn canonical_string(&self, cfg: &PrecisionConfig) -> String {
        format!(
            "{},{}",
            self.re.canonical_string(cfg),
            self.im.canonical_string(cfg)
        )
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl PartialOrd for ComplexValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on `(re, im)`.
impl Ord for ComplexValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl fmt::Debug for ComplexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?}{}{:?}i",
            self.re,
            if self.im.is_negative() { "" } else { "+" },
            self.im
        )
    }
}

/// `a+bi` / `a-bi` with the imaginary sign always explicit.
impl fmt::Display for ComplexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(f, "{}{}{}i", self.re, sign, self.im.abs())
    }
}

impl FromStr for ComplexValue {
    type Err = RetroError;

    /// Accepts `a+bi`, `a-bi`, `bi`, `a` or the canonical `re,im`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || RetroError::Parse {
            what: "complex",
            input: s.to_string(),
        };
        let t = s.trim();
        if let Some((re, im)) = t.split_once(',') {
            return Ok(Self::new(re.parse()?, im.parse()?));
        }
        let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
            return Ok(Self::new(
                t.parse().map_err(|_| err())?,
                DecimalValue::zero(),
            ));
        };
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        match split {
            Some(i) => {
                let re = body[..i].parse().map_err(|_| err())?;
                let im_text = &body[i..];
                let im = if im_text.len() == 1 {
                    DecimalValue::from_int(if im_text == "-" { -1 } else { 1 })
                } else {
                    im_text.parse().map_err(|_| err())?
                };
                Ok(Self::new(re, im))
            }
            None => Ok(Self::new(
                DecimalValue::zero(),
                body.parse().map_err(|_| err())?,
            )),
        }
    }
}
