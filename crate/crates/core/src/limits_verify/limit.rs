//! Directional limits of σ_L as ω₁ → 1 from either side, and corner
//! limits with all coordinates tending to 1 together.

use num_rational::Rational64;
use serde::Serialize;

use crate::angle::{Angle, TorusPoint};
use crate::clink::{ColoredLink, LinkError};
use crate::corrections::Side;

/// Geometric schedule δ_m = initial / 2^m, m = 0..steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Schedule {
    pub initial: Rational64,
    pub steps: usize,
    pub window: usize,
}

impl Default for Schedule {
    fn default() -> Self {
        Self { initial: Rational64::new(1, 16), steps: 17, window: 4 }
    }
}

impl Schedule {
    pub fn deltas(&self) -> Vec<Rational64> {
        let mut d = self.initial;
        let mut out = Vec::with_capacity(self.steps);
        for _ in 0..self.steps {
            out.push(d);
            d /= 2;
        }
        out
    }

    pub fn halved(&self) -> Self {
        Self { initial: self.initial / 2, ..*self }
    }

    pub fn doubled_window(&self) -> Self {
        Self { window: self.window * 2, ..*self }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sample {
    pub angle: String,
    pub sigma: i64,
    pub eta: i64,
}

/// A stabilized limit, or `None` with the sample trail when the last
/// `window` samples disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LimitResult {
    pub value: Option<i64>,
    pub side: Side,
    pub samples: Vec<Sample>,
}

impl LimitResult {
    pub fn is_stable(&self) -> bool {
        self.value.is_some()
    }

    fn from_samples(samples: Vec<Sample>, side: Side, window: usize) -> Self {
        let w = window.max(1);
        let value = if samples.len() >= w {
            let tail = &samples[samples.len() - w..];
            let v = tail[0].sigma;
            tail.iter().all(|s| s.sigma == v).then_some(v)
        } else {
            None
        };
        Self { value, side, samples }
    }
}

fn approach(delta: Rational64, side: Side) -> Angle {
    match side {
        Side::Plus => Angle::Exact(delta),
        Side::Minus => Angle::Exact(Rational64::from_integer(1) - delta),
    }
}

/// lim_{ω₁→1±} σ_L(ω₁, ω′) along `schedule`.
pub fn directional_limit(
    link: &ColoredLink,
    omega_rest: &TorusPoint,
    side: Side,
    schedule: &Schedule,
    tol: f64,
) -> Result<LimitResult, LinkError> {
    let mut samples = Vec::with_capacity(schedule.steps);
    for d in schedule.deltas() {
        let a = approach(d, side);
        let (sigma, eta) = link.signature_nullity(&omega_rest.with_first(a), tol)?;
        samples.push(Sample { angle: a.to_string(), sigma, eta });
    }
    Ok(LimitResult::from_samples(samples, side, schedule.window))
}

/// lim_{ω→1⁺} σ_L(ω^{ε₁}, …, ω^{ε_μ}).
pub fn corner_limit(link: &ColoredLink, eps: &[i8], schedule: &Schedule, tol: f64) -> Result<LimitResult, LinkError> {
    if eps.len() != link.mu() {
        return Err(LinkError::WrongPointLength { expected: link.mu(), found: eps.len() });
    }
    let mut samples = Vec::with_capacity(schedule.steps);
    for d in schedule.deltas() {
        let point =
            TorusPoint::new(eps.iter().map(|&e| approach(d, if e > 0 { Side::Plus } else { Side::Minus })).collect());
        let (sigma, eta) = link.signature_nullity(&point, tol)?;
        samples.push(Sample { angle: d.to_string(), sigma, eta });
    }
    Ok(LimitResult::from_samples(samples, Side::Plus, schedule.window))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_torus, make_twist, make_unlink};
    use crate::hermitian::DEFAULT_TOL;

    fn pt(p: i64, q: i64) -> TorusPoint {
        TorusPoint::exact(&[(p, q)]).unwrap()
    }

    #[test]
    fn schedule_shape() {
        let d = Schedule::default().deltas();
        assert_eq!(d.len(), 17);
        assert_eq!(d[0], Rational64::new(1, 16));
        assert_eq!(d[16], Rational64::new(1, 16 << 16));
    }

    #[test]
    fn torus_limits() {
        let l = make_torus(3);
        let s = Schedule::default();
        assert_eq!(directional_limit(&l, &pt(1, 10), Side::Plus, &s, DEFAULT_TOL).unwrap().value, Some(2));
        assert_eq!(directional_limit(&l, &pt(1, 10), Side::Minus, &s, DEFAULT_TOL).unwrap().value, Some(-2));
    }

    #[test]
    fn twist_and_unlink_limits() {
        let s = Schedule::default();
        for k in [-2, 3] {
            for side in [Side::Plus, Side::Minus] {
                let r = directional_limit(&make_twist(k), &pt(2, 5), side, &s, DEFAULT_TOL).unwrap();
                assert_eq!(r.value, Some(k.signum()));
            }
        }
        let r = directional_limit(&make_unlink(2), &pt(1, 3), Side::Plus, &s, DEFAULT_TOL).unwrap();
        assert_eq!(r.value, Some(0));
    }

    #[test]
    fn corner_limits_torus() {
        let l = make_torus(3);
        let s = Schedule::default();
        assert_eq!(corner_limit(&l, &[1, 1], &s, DEFAULT_TOL).unwrap().value, Some(2));
        assert_eq!(corner_limit(&l, &[1, -1], &s, DEFAULT_TOL).unwrap().value, Some(-2));
    }

    #[test]
    fn unstable_when_window_disagrees() {
        let samples =
            vec![Sample { angle: "a".into(), sigma: 1, eta: 0 }, Sample { angle: "b".into(), sigma: 2, eta: 0 }];
        assert_eq!(LimitResult::from_samples(samples.clone(), Side::Plus, 2).value, None);
        assert_eq!(LimitResult::from_samples(samples, Side::Plus, 1).value, Some(2));
    }

    #[test]
    fn boundary_rest_rejected() {
        let r = directional_limit(&make_torus(2), &pt(0, 1), Side::Plus, &Schedule::default(), DEFAULT_TOL);
        assert!(matches!(r, Err(LinkError::BoundaryPoint(2))));
    }
}
