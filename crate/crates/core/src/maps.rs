//! The four chaotic maps: forward step, inverse branches and derivative modulus.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Result, RetroError};
use crate::numerics::{ComplexValue, DecimalValue, PrecisionConfig};

/// A state of a map: a real number for the interval maps, a complex number
/// for the quadratic map.
#[derive(Clone, PartialEq, Eq)]
pub enum Point {
    Real(DecimalValue),
    Complex(ComplexValue),
}

impl Point {
    pub fn dimension(&self) -> u32 {
        match self {
            Point::Real(_) => 1,
            Point::Complex(_) => 2,
        }
    }

    pub fn canonical_string(&self, cfg: &PrecisionConfig) -> String {
        match self {
            Point::Real(x) => x.canonical_string(cfg),
            Point::Complex(z) => z.canonical_string(cfg),
        }
    }

    /// Euclidean distance squared, exact.
    pub fn distance_squared(&self, other: &Point) -> DecimalValue {
        match (self, other) {
            (Point::Real(a), Point::Real(b)) => {
                let wide = PrecisionConfig::new(a.scale().max(b.scale()) + 20, 10)
                    .expect("wide precision is valid");
                let diff = a.sub(b, &wide);
                diff.mul_exact(&diff)
            }
            (Point::Complex(a), Point::Complex(b)) => {
                let wide = PrecisionConfig::new(
                    a.re.scale()
                        .max(a.im.scale())
                        .max(b.re.scale())
                        .max(b.im.scale())
                        + 20,
                    10,
                )
                .expect("wide precision is valid");
                a.sub(b, &wide).modulus_squared()
            }
            _ => panic!("distance between points of different dimension"),
        }
    }

    pub fn as_real(&self) -> Option<&DecimalValue> {
        match self {
            Point::Real(x) => Some(x),
            Point::Complex(_) => None,
        }
    }

    pub fn as_complex(&self) -> Option<&ComplexValue> {
        match self {
            Point::Complex(z) => Some(z),
            Point::Real(_) => None,
        }
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Numeric order for reals, `(re, im)` lexicographic for complex values.
impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Point::Real(a), Point::Real(b)) => a.cmp(b),
            (Point::Complex(a), Point::Complex(b)) => a.cmp(b),
            (Point::Real(_), Point::Complex(_)) => Ordering::Less,
            (Point::Complex(_), Point::Real(_)) => Ordering::Greater,
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Real(x) => write!(f, "{x:?}"),
            Point::Complex(z) => write!(f, "{z:?}"),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Real(x) => write!(f, "{x}"),
            Point::Complex(z) => write!(f, "{z}"),
        }
    }
}

impl From<DecimalValue> for Point {
    fn from(x: DecimalValue) -> Self {
        Point::Real(x)
    }
}

impl From<ComplexValue> for Point {
    fn from(z: ComplexValue) -> Self {
        Point::Complex(z)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub enum MapSpec {
    /// `μ x (1 − x)` with `0 < μ ≤ 4`.
    Logistic {
        mu: DecimalValue,
    },
    Tent,
    /// `2x mod 1`.
    Bernoulli,
    /// `z² + c`.
    Julia {
        c: ComplexValue,
    },
}

fn half() -> DecimalValue {
    DecimalValue::from_units(BigInt::from(5), 1)
}

fn two() -> DecimalValue {
    DecimalValue::from_int(2)
}

impl MapSpec {
    pub fn logistic(mu: DecimalValue) -> Result<Self> {
        if mu <= DecimalValue::zero() || mu > DecimalValue::from_int(4) {
            return Err(RetroError::InvalidParam(format!(
                "logistic mu {mu} outside (0, 4]"
            )));
        }
        Ok(MapSpec::Logistic { mu })
    }

    /// The fully chaotic logistic map, `μ = 4`.
    pub fn logistic4() -> Self {
        MapSpec::Logistic {
            mu: DecimalValue::from_int(4),
        }
    }

    pub fn julia(c: ComplexValue) -> Self {
        MapSpec::Julia { c }
    }

    pub fn dimension(&self) -> u32 {
        match self {
            MapSpec::Julia { .. } => 2,
            _ => 1,
        }
    }

    /// Short family name (`logistic`, `tent`, `bernoulli`, `julia`).
    pub fn family(&self) -> &'static str {
        match self {
            MapSpec::Logistic { .. } => "logistic",
            MapSpec::Tent => "tent",
            MapSpec::Bernoulli => "bernoulli",
            MapSpec::Julia { .. } => "julia",
        }
    }

    fn domain_error(&self, x: &Point) -> RetroError {
        RetroError::Domain {
            map: self.to_string(),
            point: x.to_string(),
        }
    }

    fn check_dimension(&self, x: &Point) -> Result<()> {
        if x.dimension() == self.dimension() {
            Ok(())
        } else {
            Err(self.domain_error(x))
        }
    }

    /// Checks that a 1D point lies in `[0, 1]` up to `10^-P` slack.
    pub fn check_domain(&self, x: &Point, cfg: &PrecisionConfig) -> Result<()> {
        self.check_dimension(x)?;
        if let Point::Real(v) = x {
            let slack = DecimalValue::from_units(BigInt::from(1), cfg.working_digits());
            if *v < slack.neg() || *v > DecimalValue::one().add(&slack, cfg) {
                return Err(self.domain_error(x));
            }
        }
        Ok(())
    }

    /// One forward step at working precision.
    pub fn forward(&self, x: &Point, cfg: &PrecisionConfig) -> Result<Point> {
        self.check_domain(x, cfg)?;
        let next = match (self, x) {
            (MapSpec::Logistic { mu }, Point::Real(v)) => {
                let one_minus = DecimalValue::one().sub(v, cfg);
                Point::Real(mu.mul(&v.mul(&one_minus, cfg), cfg))
            }
            (MapSpec::Tent, Point::Real(v)) => {
                let doubled = v.mul(&two(), cfg);
                if *v <= half() {
                    Point::Real(doubled)
                } else {
                    Point::Real(two().sub(&doubled, cfg))
                }
            }
            (MapSpec::Bernoulli, Point::Real(v)) => {
                let one = DecimalValue::one();
                let mut doubled = v.mul(&two(), cfg);
                while doubled >= one {
                    doubled = doubled.sub(&one, cfg);
                }
                Point::Real(doubled)
            }
            (MapSpec::Julia { c }, Point::Complex(z)) => Point::Complex(z.square(cfg).add(c, cfg)),
            _ => unreachable!("dimension checked"),
        };
        Ok(next)
    }

    /// Inverse branches of one step, branch 0 first. Coincident branches
    /// collapse to one entry; a logistic map with `μ < 4` has none above `μ/4`.
    pub fn preimages(&self, x: &Point, cfg: &PrecisionConfig) -> Result<Vec<Point>> {
        self.check_dimension(x)?;
        let pair = match (self, x) {
            (MapSpec::Logistic { mu }, Point::Real(v)) => {
                let quarter = DecimalValue::from_units(BigInt::from(25), 2);
                let scaled = if *mu == DecimalValue::from_int(4) {
                    v.mul(&quarter, cfg)
                } else {
                    v.div(mu, cfg)?
                };
                let mut radicand = quarter.sub(&scaled, cfg);
                if radicand.is_negative() {
                    let slack = DecimalValue::from_units(BigInt::from(1), cfg.working_digits());
                    if radicand.neg() > slack {
                        return Ok(Vec::new());
                    }
                    radicand = DecimalValue::zero();
                }
                let root = radicand.sqrt(cfg)?;
                (
                    Point::Real(half().add(&root, cfg)),
                    Point::Real(half().sub(&root, cfg)),
                )
            }
            (MapSpec::Tent, Point::Real(v)) => {
                let halved = v.mul(&half(), cfg);
                let mirrored = DecimalValue::one().sub(&halved, cfg);
                (Point::Real(halved), Point::Real(mirrored))
            }
            (MapSpec::Bernoulli, Point::Real(v)) => {
                let halved = v.mul(&half(), cfg);
                let shifted = half().add(&halved, cfg);
                (Point::Real(halved), Point::Real(shifted))
            }
            (MapSpec::Julia { c }, Point::Complex(z)) => {
                let root = z.sub(c, cfg).sqrt(cfg);
                let negated = root.neg();
                (Point::Complex(root), Point::Complex(negated))
            }
            _ => unreachable!("dimension checked"),
        };
        if pair.0 == pair.1 {
            Ok(vec![pair.0])
        } else {
            Ok(vec![pair.0, pair.1])
        }
    }

    /// `|f'(x)|`. The tent kink and the Bernoulli jump at `0.5` take modulus 2.
    pub fn derivative_modulus(&self, x: &Point, cfg: &PrecisionConfig) -> Result<DecimalValue> {
        self.check_dimension(x)?;
        Ok(match (self, x) {
            (MapSpec::Logistic { mu }, Point::Real(v)) => {
                let slope = DecimalValue::one().sub(&v.mul(&two(), cfg), cfg).abs();
                mu.mul(&slope, cfg)
            }
            (MapSpec::Tent | MapSpec::Bernoulli, Point::Real(_)) => two(),
            (MapSpec::Julia { .. }, Point::Complex(z)) => z.modulus(cfg).mul(&two(), cfg),
            _ => unreachable!("dimension checked"),
        })
    }

    /// The orbit `x0, f(x0), …, f^n(x0)`.
    pub fn iterate(&self, x0: &Point, n: u32, cfg: &PrecisionConfig) -> Result<Orbit> {
        self.check_domain(x0, cfg)?;
        let mut values = Vec::with_capacity(n as usize + 1);
        values.push(x0.clone());
        for _ in 0..n {
            let next = self.forward(values.last().expect("non-empty"), cfg)?;
            values.push(next);
        }
        Ok(Orbit {
            x0: x0.clone(),
            n,
            values,
        })
    }

    /// Parses a point of this map's dimension.
    pub fn parse_point(&self, text: &str) -> Result<Point> {
        match self.dimension() {
            1 => Ok(Point::Real(text.parse()?)),
            _ => Ok(Point::Complex(text.parse()?)),
        }
    }
}

impl fmt::Debug for MapSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `logistic:mu=4.0`, `tent`, `bernoulli`, `julia:c=0.01+0.03i`.
impl fmt::Display for MapSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapSpec::Logistic { mu } => write!(f, "logistic:mu={mu}"),
            MapSpec::Tent => write!(f, "tent"),
            MapSpec::Bernoulli => write!(f, "bernoulli"),
            MapSpec::Julia { c } => write!(f, "julia:c={c}"),
        }
    }
}

impl FromStr for MapSpec {
    type Err = RetroError;

    fn from_str(s: &str) -> Result<Self> {
        let err = || RetroError::Parse {
            what: "map",
            input: s.to_string(),
        };
        let (name, param) = match s.trim().split_once(':') {
            Some((name, param)) => (name, Some(param)),
            None => (s.trim(), None),
        };
        match (name, param) {
            ("tent", None) => Ok(MapSpec::Tent),
            ("bernoulli", None) => Ok(MapSpec::Bernoulli),
            ("logistic", Some(p)) => {
                let mu = p.strip_prefix("mu=").ok_or_else(err)?;
                MapSpec::logistic(mu.parse()?)
            }
            ("julia", Some(p)) => {
                let c = p.strip_prefix("c=").ok_or_else(err)?;
                Ok(MapSpec::Julia { c: c.parse()? })
            }
            _ => Err(err()),
        }
    }
}

/// `values[0] = x0` and `values[i + 1] = f(values[i])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub x0: Point,
    pub n: u32,
    pub values: Vec<Point>,
}

impl Orbit {
    /// The final value, the retrodiction target.
    pub fn last(&self) -> &Point {
        self.values.last().expect("orbit holds x0")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> DecimalValue {
        s.parse().unwrap()
    }

    fn r(s: &str) -> Point {
        Point::Real(d(s))
    }

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    #[test]
    fn logistic_worked_example_orbit() {
        let c = cfg();
        let map = MapSpec::logistic4();
        assert_eq!(map.forward(&r("0.35"), &c).unwrap(), r("0.91"));
        assert_eq!(map.forward(&r("0.91"), &c).unwrap(), r("0.3276"));
        let orbit = map.iterate(&r("0.35"), 3, &c).unwrap();
        assert_eq!(orbit.values.len(), 4);
        assert_eq!(orbit.last(), &r("0.88111296"));
    }

    #[test]
    fn tent_and_bernoulli_forward() {
        let c = cfg();
        assert_eq!(MapSpec::Tent.forward(&r("0.5"), &c).unwrap(), r("1.0"));
        assert_eq!(MapSpec::Tent.forward(&r("0.75"), &c).unwrap(), r("0.5"));
        assert_eq!(MapSpec::Bernoulli.forward(&r("0.5"), &c).unwrap(), r("0"));
        assert_eq!(MapSpec::Bernoulli.forward(&r("1"), &c).unwrap(), r("0"));
        assert_eq!(
            MapSpec::Bernoulli.forward(&r("0.84"), &c).unwrap(),
            r("0.68")
        );
    }

    #[test]
    fn domain_violations() {
        let c = cfg();
        assert!(matches!(
            MapSpec::Tent.forward(&r("1.5"), &c),
            Err(RetroError::Domain { .. })
        ));
        assert!(MapSpec::logistic4().forward(&r("-0.1"), &c).is_err());
        let z = Point::Complex("0.1+0.1i".parse().unwrap());
        assert!(MapSpec::Tent.forward(&z, &c).is_err());
    }

    #[test]
    fn preimage_branches() {
        let c = cfg();
        let pre = MapSpec::logistic4().preimages(&r("0.3276"), &c).unwrap();
        assert_eq!(pre, vec![r("0.91"), r("0.09")]);
        assert_eq!(
            MapSpec::Tent.preimages(&r("1.0"), &c).unwrap(),
            vec![r("0.5")]
        );
        assert_eq!(
            MapSpec::Bernoulli.preimages(&r("0.68"), &c).unwrap(),
            vec![r("0.34"), r("0.84")]
        );
        assert_eq!(
            MapSpec::Bernoulli.preimages(&r("0"), &c).unwrap(),
            vec![r("0"), r("0.5")]
        );
        assert_eq!(
            MapSpec::logistic4().preimages(&r("1"), &c).unwrap(),
            vec![r("0.5")]
        );
    }

    #[test]
    fn logistic_below_four_has_empty_preimage_above_peak() {
        let c = cfg();
        let map = MapSpec::logistic(d("3.6")).unwrap();
        assert!(map.preimages(&r("0.95"), &c).unwrap().is_empty());
        assert_eq!(map.preimages(&r("0.5"), &c).unwrap().len(), 2);
        assert!(MapSpec::logistic(d("4.5")).is_err());
        assert!(MapSpec::logistic(d("0")).is_err());
    }

    #[test]
    fn julia_preimages_square_back() {
        let c = cfg();
        let map: MapSpec = "julia:c=0.01+0.03i".parse().unwrap();
        let z = Point::Complex("0.05+0.03i".parse().unwrap());
        let y = map.forward(&z, &c).unwrap();
        let pre = map.preimages(&y, &c).unwrap();
        assert_eq!(pre.len(), 2);
        assert_eq!(pre[0].canonical_string(&c), "0.05,0.03");
        assert_eq!(pre[1].canonical_string(&c), "-0.05,-0.03");
    }

    #[test]
    fn derivative_moduli() {
        let c = cfg();
        let logistic = MapSpec::logistic4();
        assert!(logistic
            .derivative_modulus(&r("0.5"), &c)
            .unwrap()
            .is_zero());
        assert_eq!(logistic.derivative_modulus(&r("0.25"), &c).unwrap(), d("2"));
        for x in ["0.1", "0.5", "0.9"] {
            assert_eq!(MapSpec::Tent.derivative_modulus(&r(x), &c).unwrap(), d("2"));
            assert_eq!(
                MapSpec::Bernoulli.derivative_modulus(&r(x), &c).unwrap(),
                d("2")
            );
        }
        let julia = MapSpec::julia("0.01+0.03i".parse().unwrap());
        let z = Point::Complex("0.3+0.4i".parse().unwrap());
        assert_eq!(julia.derivative_modulus(&z, &c).unwrap(), d("1"));
    }

    #[test]
    fn iterate_zero_steps() {
        let c = cfg();
        let orbit = MapSpec::Tent.iterate(&r("0.68"), 0, &c).unwrap();
        assert_eq!(orbit.values, vec![r("0.68")]);
    }

    #[test]
    fn map_text_round_trip() {
        for text in [
            "logistic:mu=4.0",
            "tent",
            "bernoulli",
            "julia:c=0.01+0.03i",
            "julia:c=-0.03-0.01i",
        ] {
            let map: MapSpec = text.parse().unwrap();
            assert_eq!(map.to_string(), text);
        }
        assert_eq!(MapSpec::logistic4().to_string(), "logistic:mu=4.0");
        assert_eq!(
            MapSpec::julia("0.01-0.0i".parse().unwrap()).to_string(),
            "julia:c=0.01+0.0i"
        );
        for bad in ["logistic", "tent:x=1", "julia:c=", "henon", "logistic:mu=5"] {
            assert!(bad.parse::<MapSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn point_ordering_and_distance() {
        assert!(r("0.1") < r("0.2"));
        let a = Point::Complex("0.1+0.5i".parse().unwrap());
        let b = Point::Complex("0.1+0.6i".parse().unwrap());
        assert!(a < b);
        assert_eq!(a.distance_squared(&b), d("0.01"));
        assert_eq!(r("0.1").distance_squared(&r("0.4")), d("0.09"));
    }
}
