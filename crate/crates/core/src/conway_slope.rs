//! Slopes from Conway functions, their sign classification, the Torres
//! genericity predicate, and the factorization of two-component Conway
//! functions.

use std::fmt;

use num_complex::Complex64;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::angle::TorusPoint;
use crate::clink::ColoredLink;
use crate::corrections::{tau_ell, CorrectionError, LinkingVector};
use crate::laurent::{LaurentError, LaurentPoly, RationalFunction, ZERO_TOL};

const NONREAL_TOL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum SlopeError {
    #[error("slope is 0/0 at this point")]
    Indeterminate,
    #[error("a Conway-function denominator vanishes at the evaluation point")]
    PoleEncountered,
    #[error("slope quotient is not real: {0}")]
    NonReal(Complex64),
    #[error("missing Conway data: {0}")]
    MissingConwayData(String),
    #[error("missing data for the sublink L' = L minus L1")]
    MissingSublink,
    #[error("expected {expected} variables, found {found}")]
    VariableCount { expected: usize, found: usize },
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Correction(#[from] CorrectionError),
}

/// A value in ℝ ∪ {∞}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SlopeValue {
    Finite(f64),
    Infinite,
}

impl fmt::Display for SlopeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlopeValue::Finite(x) => write!(f, "{x}"),
            SlopeValue::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for SlopeValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            SlopeValue::Finite(x) => s.serialize_f64(*x),
            SlopeValue::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Value of a rational function and whether it is structurally zero.
fn eval_with_zero_test(f: &RationalFunction, point: &[Complex64]) -> Result<(Complex64, bool), SlopeError> {
    let (d, dscale) = f.den().eval_scaled(point)?;
    if d.norm() <= ZERO_TOL * dscale {
        return Err(SlopeError::PoleEncountered);
    }
    let (n, nscale) = f.num().eval_scaled(point)?;
    let zero = n.norm() <= ZERO_TOL * nscale;
    Ok((n / d, zero))
}

/// The ingredients of the slope: (∂∇_L/∂t₁)(1, √ω′) and ∇_{L′}(√ω′), each
/// with its zero test.
#[derive(Debug, Clone, Copy)]
pub struct SlopeParts {
    pub derivative: Complex64,
    pub derivative_zero: bool,
    pub sublink: Complex64,
    pub sublink_zero: bool,
}

pub fn slope_parts(
    nabla_l: &RationalFunction,
    nabla_lp: &RationalFunction,
    omega: &TorusPoint,
) -> Result<SlopeParts, SlopeError> {
    let m = omega.len();
    if nabla_l.nvars() != m + 1 {
        return Err(SlopeError::VariableCount { expected: m + 1, found: nabla_l.nvars() });
    }
    if nabla_lp.nvars() != m {
        return Err(SlopeError::VariableCount { expected: m, found: nabla_lp.nvars() });
    }
    let roots = omega.sqrt_units();
    let mut full = Vec::with_capacity(m + 1);
    full.push(Complex64::new(1.0, 0.0));
    full.extend_from_slice(&roots);
    let (derivative, derivative_zero) = eval_with_zero_test(&nabla_l.partial_derivative(0), &full)?;
    let (sublink, sublink_zero) = eval_with_zero_test(nabla_lp, &roots)?;
    Ok(SlopeParts { derivative, derivative_zero, sublink, sublink_zero })
}

/// −(∂∇_L/∂t₁)(1, √ω′) / (2∇_{L′}(√ω′)).
pub fn slope(
    nabla_l: &RationalFunction,
    nabla_lp: &RationalFunction,
    omega: &TorusPoint,
) -> Result<SlopeValue, SlopeError> {
    let p = slope_parts(nabla_l, nabla_lp, omega)?;
    match (p.derivative_zero, p.sublink_zero) {
        (true, true) => Err(SlopeError::Indeterminate),
        (false, true) => Ok(SlopeValue::Infinite),
        (true, false) => Ok(SlopeValue::Finite(0.0)),
        (false, false) => {
            let q = -p.derivative / (p.sublink * 2.0);
            if q.im.abs() > NONREAL_TOL * q.norm() {
                return Err(SlopeError::NonReal(q));
            }
            Ok(SlopeValue::Finite(q.re))
        }
    }
}

/// Slope of L₁ in a link carrying its own and L′'s Conway data.
pub fn link_slope(link: &ColoredLink, omega: &TorusPoint) -> Result<SlopeValue, SlopeError> {
    let (nl, nlp) = conway_pair(link)?;
    slope(nl, nlp, omega)
}

pub fn conway_pair(link: &ColoredLink) -> Result<(&RationalFunction, &RationalFunction), SlopeError> {
    let nl = link.conway().ok_or_else(|| SlopeError::MissingConwayData("conway".into()))?;
    let lp = link.sublink_prime().ok_or(SlopeError::MissingSublink)?;
    let nlp = lp.conway().ok_or_else(|| SlopeError::MissingConwayData("sublinks.conway".into()))?;
    Ok((nl, nlp))
}

/// Sign with sgn(∞) = 0.
pub fn sgn_extended(v: SlopeValue) -> i64 {
    match v {
        SlopeValue::Finite(x) if x > 0.0 => 1,
        SlopeValue::Finite(x) if x < 0.0 => -1,
        _ => 0,
    }
}

/// (s, ε): s is the sign (0 at 0 and ∞); ε is +1 at 0, −1 at ∞, else 0.
pub fn classify_slope(v: SlopeValue) -> (i64, i64) {
    let eps = match v {
        SlopeValue::Finite(0.0) => 1,
        SlopeValue::Infinite => -1,
        _ => 0,
    };
    (sgn_extended(v), eps)
}

/// Δ_L(1, ω′) ≠ 0, decided as τ_ℓ(ω′) = 0 and ∇_{L′}(√ω′) ≠ 0.
pub fn torres_generic(link: &ColoredLink, omega: &TorusPoint) -> Result<bool, SlopeError> {
    let lp = link.sublink_prime().ok_or(SlopeError::MissingSublink)?;
    let nlp = lp.conway().ok_or_else(|| SlopeError::MissingConwayData("sublinks.conway".into()))?;
    if nlp.nvars() != omega.len() {
        return Err(SlopeError::VariableCount { expected: omega.len(), found: nlp.nvars() });
    }
    let tau = tau_ell(&LinkingVector::new(link.ell()), omega)?;
    if tau == 1 {
        return Ok(false);
    }
    let (_, zero) = eval_with_zero_test(nlp, &omega.sqrt_units())?;
    Ok(!zero)
}

/// f with ∇_L = (t₁ − t₁⁻¹)(t₂ − t₂⁻¹) f.
pub fn factor_2comp(nabla_l: &RationalFunction) -> Result<LaurentPoly, SlopeError> {
    if nabla_l.nvars() != 2 {
        return Err(SlopeError::VariableCount { expected: 2, found: nabla_l.nvars() });
    }
    let p = nabla_l.as_polynomial()?;
    let q = &LaurentPoly::var_minus_inverse(2, 0) * &LaurentPoly::var_minus_inverse(2, 1);
    Ok(p.divide_exact(&q)?)
}
