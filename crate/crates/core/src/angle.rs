//! Angles on the circle and points of the torus.
//!
//! An angle θ ∈ [0, 1) stands for ω = exp(2πiθ). Rational angles support
//! exact predicates; float angles do not.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AngleError {
    #[error("cannot parse angle '{0}'")]
    Parse(String),
    #[error("angle {0} is outside [0, 1)")]
    OutOfRange(String),
    #[error("exact predicate requested on a floating angle")]
    InexactAngles,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Angle {
    Exact(Rational64),
    Approx(f64),
}

impl Angle {
    pub fn exact(p: i64, q: i64) -> Result<Self, AngleError> {
        if q == 0 {
            return Err(AngleError::Parse(format!("{p}/{q}")));
        }
        let r = Rational64::new(p, q);
        if r < Rational64::zero() || r >= Rational64::one() {
            return Err(AngleError::OutOfRange(r.to_string()));
        }
        Ok(Angle::Exact(r))
    }

    pub fn approx(x: f64) -> Result<Self, AngleError> {
        if !(0.0..1.0).contains(&x) {
            return Err(AngleError::OutOfRange(x.to_string()));
        }
        Ok(Angle::Approx(x))
    }

    /// Reduces any rational mod 1 into [0, 1).
    pub fn from_rational_mod1(r: Rational64) -> Self {
        Angle::Exact(r - r.floor())
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Angle::Exact(_))
    }

    pub fn rational(&self) -> Option<Rational64> {
        match self {
            Angle::Exact(r) => Some(*r),
            Angle::Approx(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Angle::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Angle::Approx(x) => *x,
        }
    }

    /// ω = exp(2πiθ).
    pub fn unit(&self) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * self.to_f64())
    }

    /// √ω = exp(πiθ), the branch used for Conway-function evaluation.
    pub fn sqrt_unit(&self) -> Complex64 {
        Complex64::from_polar(1.0, std::f64::consts::PI * self.to_f64())
    }

    /// Angle of ω̄, i.e. 1 − θ (and 0 for θ = 0).
    pub fn conj(&self) -> Self {
        match self {
            Angle::Exact(r) => Angle::from_rational_mod1(-*r),
            Angle::Approx(x) => {
                if *x == 0.0 {
                    Angle::Approx(0.0)
                } else {
                    Angle::Approx(1.0 - x)
                }
            }
        }
    }

    /// Angle of ω^s for s = ±1.
    pub fn pow_sign(&self, s: i64) -> Self {
        if s < 0 {
            self.conj()
        } else {
            *self
        }
    }

    /// Exact test ω = 1; `None` for float angles.
    pub fn is_one(&self) -> Option<bool> {
        self.rational().map(|r| r.is_zero())
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::Exact(r) => write!(f, "{r}"),
            Angle::Approx(x) => write!(f, "{x}"),
        }
    }
}

impl FromStr for Angle {
    type Err = AngleError;

    /// "p/q" or an integer gives an exact angle; a decimal gives a float.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if let Some((p, q)) = t.split_once('/') {
            let p: i64 = p.trim().parse().map_err(|_| AngleError::Parse(s.into()))?;
            let q: i64 = q.trim().parse().map_err(|_| AngleError::Parse(s.into()))?;
            return Angle::exact(p, q);
        }
        if let Ok(p) = t.parse::<i64>() {
            return Angle::exact(p, 1);
        }
        let x: f64 = t.parse().map_err(|_| AngleError::Parse(s.into()))?;
        Angle::approx(x)
    }
}

/// A point (ω₁, …, ω_μ) of the torus.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusPoint {
    angles: Vec<Angle>,
}

impl TorusPoint {
    pub fn new(angles: Vec<Angle>) -> Self {
        Self { angles }
    }

    pub fn exact(pairs: &[(i64, i64)]) -> Result<Self, AngleError> {
        pairs.iter().map(|&(p, q)| Angle::exact(p, q)).collect::<Result<Vec<_>, _>>().map(Self::new)
    }

    pub fn from_rationals(rs: &[Rational64]) -> Self {
        Self::new(rs.iter().map(|&r| Angle::from_rational_mod1(r)).collect())
    }

    /// Parses a comma-separated list of angles.
    pub fn parse_list(s: &str) -> Result<Self, AngleError> {
        if s.trim().is_empty() {
            return Ok(Self::new(Vec::new()));
        }
        s.split(',').map(str::parse).collect::<Result<Vec<_>, _>>().map(Self::new)
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn angles(&self) -> &[Angle] {
        &self.angles
    }

    pub fn angle(&self, j: usize) -> Angle {
        self.angles[j]
    }

    pub fn is_exact(&self) -> bool {
        self.angles.iter().all(Angle::is_exact)
    }

    pub fn rationals(&self) -> Option<Vec<Rational64>> {
        self.angles.iter().map(Angle::rational).collect()
    }

    pub fn units(&self) -> Vec<Complex64> {
        self.angles.iter().map(Angle::unit).collect()
    }

    pub fn sqrt_units(&self) -> Vec<Complex64> {
        self.angles.iter().map(Angle::sqrt_unit).collect()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.angles.iter().map(Angle::conj).collect())
    }

    /// Exact test ω_j = 1.
    pub fn is_one(&self, j: usize) -> Option<bool> {
        self.angles[j].is_one()
    }

    /// Exact test Π ω_j^{ℓ_j} = 1.
    pub fn power_is_one(&self, exps: &[i64]) -> Option<bool> {
        let rs = self.rationals()?;
        let sum: Rational64 = rs.iter().zip(exps).map(|(r, &e)| r * e).sum();
        Some(sum.is_integer())
    }

    /// No coordinate equal to 1. Float angles count as 1 only when exactly 0.
    pub fn in_open_torus(&self) -> bool {
        self.angles.iter().all(|a| a.to_f64() != 0.0)
    }

    /// Prepends a first coordinate.
    pub fn with_first(&self, first: Angle) -> Self {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(first);
        v.extend_from_slice(&self.angles);
        Self::new(v)
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.angles.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals_and_decimals() {
        assert_eq!("1/4".parse::<Angle>().unwrap(), Angle::Exact(Rational64::new(1, 4)));
        assert_eq!("2/8".parse::<Angle>().unwrap(), Angle::Exact(Rational64::new(1, 4)));
        assert_eq!("0".parse::<Angle>().unwrap(), Angle::Exact(Rational64::zero()));
        assert_eq!("0.25".parse::<Angle>().unwrap(), Angle::Approx(0.25));
        assert!(matches!("1".parse::<Angle>(), Err(AngleError::OutOfRange(_))));
        assert!(matches!("5/4".parse::<Angle>(), Err(AngleError::OutOfRange(_))));
        assert!(matches!("x".parse::<Angle>(), Err(AngleError::Parse(_))));
        assert!(matches!("1/0".parse::<Angle>(), Err(AngleError::Parse(_))));
    }

    #[test]
    fn conj_and_units() {
        let a = Angle::exact(1, 4).unwrap();
        assert!((a.unit() - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert_eq!(a.conj(), Angle::Exact(Rational64::new(3, 4)));
        assert_eq!(Angle::Exact(Rational64::zero()).conj(), Angle::Exact(Rational64::zero()));
        assert!((Angle::exact(1, 2).unwrap().sqrt_unit() - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn exact_predicates() {
        let w = TorusPoint::exact(&[(1, 2), (1, 3)]).unwrap();
        assert_eq!(w.power_is_one(&[2, 3]), Some(true));
        assert_eq!(w.power_is_one(&[1, 3]), Some(false));
        assert_eq!(w.power_is_one(&[0, 0]), Some(true));
        assert_eq!(w.is_one(0), Some(false));
        assert!(w.in_open_torus());
        let f = TorusPoint::new(vec![Angle::Approx(0.5)]);
        assert_eq!(f.power_is_one(&[2]), None);
        assert!(!TorusPoint::exact(&[(0, 1), (1, 2)]).unwrap().in_open_torus());
    }

    #[test]
    fn list_parsing_and_display() {
        let w = TorusPoint::parse_list("1/6, 1/6").unwrap();
        assert_eq!(w.to_string(), "1/6,1/6");
        assert!(TorusPoint::parse_list("").unwrap().is_empty());
        assert_eq!(w.with_first(Angle::Approx(0.5)).len(), 3);
    }
}
