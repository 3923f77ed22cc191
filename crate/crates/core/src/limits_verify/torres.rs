//! Predicted values of σ_L and η_L at points with ω₁ = 1, and the
//! two-component Levine-Tristram limit.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::json;

use super::checks::{both_limits, l_prime, rank_note, VerifyConfig};
use super::report::{VerificationReport, VerifyError};
use crate::angle::TorusPoint;
use crate::clink::{ColoredLink, ComponentId};
use crate::conway_slope::{conway_pair, factor_2comp, sgn_extended, slope, torres_generic, SlopeError, SlopeValue};
use crate::hermitian::inertia_exact_integer;
use crate::laurent::RationalFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TorresCase {
    /// One color: the linking-matrix formulas.
    Oriented,
    /// L₁ a knot with zero linking against every component of L′.
    AlgebraicallySplit,
    /// Every component of L₁ links L′ non-trivially.
    NonSplit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaPrediction {
    Value(i64),
    /// σ_{L′}(ω′) + sgn(slope), with the slope unavailable.
    WithSlopeSign {
        base: i64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EtaPrediction {
    Value(i64),
    /// η_{L′}(ω′) shifted by +1, −1 or 0 according to the unavailable slope.
    DependsOnSlope {
        base: i64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MidpointCheck {
    Pass { plus: i64, minus: i64, sigma_sub: i64 },
    Fail { plus: Option<i64>, minus: Option<i64>, sigma_sub: i64 },
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TorresPrediction {
    pub case: TorresCase,
    pub sigma: SigmaPrediction,
    pub eta: EtaPrediction,
    pub midpoint: MidpointCheck,
    pub slope: Option<SlopeValue>,
}

/// Classifies the link against the three Torres cases.
fn torres_case(link: &ColoredLink) -> Result<TorresCase, VerifyError> {
    if link.mu() == 1 {
        return Ok(TorresCase::Oriented);
    }
    let comps = link.components();
    let first: Vec<ComponentId> = comps.iter().copied().filter(|c| c.color == 1).collect();
    let split: Vec<bool> =
        first.iter().map(|&k| comps.iter().filter(|c| c.color >= 2).all(|&c| link.lk(k, c) == 0)).collect();
    if split.iter().all(|&s| !s) {
        return Ok(TorresCase::NonSplit);
    }
    if split.iter().all(|&s| s) {
        if first.len() == 1 {
            return Ok(TorresCase::AlgebraicallySplit);
        }
        return Err(VerifyError::UnsupportedCase(format!(
            "L1 is algebraically split from L' but has {} components",
            first.len()
        )));
    }
    Err(VerifyError::UnsupportedCase("some but not all components of L1 are split from L'".into()))
}

/// σ_L and η_L at (1, ω′) predicted by the Torres formulas, with the
/// check that the two one-sided limits average to σ_{L′}(ω′).
pub fn predict_torres(
    link: &ColoredLink,
    omega: &TorusPoint,
    cfg: &VerifyConfig,
) -> Result<TorresPrediction, VerifyError> {
    let case = torres_case(link)?;
    if case == TorresCase::Oriented {
        if !omega.is_empty() {
            return Err(VerifyError::Link(crate::clink::LinkError::WrongPointLength {
                expected: 0,
                found: omega.len(),
            }));
        }
        let inert = inertia_exact_integer(&link.linking_matrix_colored(&[1])?);
        return Ok(TorresPrediction {
            case,
            sigma: SigmaPrediction::Value(inert.signature()),
            eta: EtaPrediction::Value(inert.nullity() - 1),
            midpoint: MidpointCheck::Skipped("one-colored link".into()),
            slope: None,
        });
    }
    if omega.len() + 1 != link.mu() {
        return Err(VerifyError::Link(crate::clink::LinkError::WrongPointLength {
            expected: link.mu() - 1,
            found: omega.len(),
        }));
    }
    let lp = l_prime(link)?;
    let (sig_p, eta_p) = lp.signature_nullity(omega, cfg.tol)?;

    let (sigma, eta, slope_value) = match case {
        TorresCase::AlgebraicallySplit => {
            let value = match conway_pair(link) {
                Ok((nl, nlp)) => match slope(nl, nlp, omega) {
                    Ok(v) => Some(v),
                    Err(SlopeError::Indeterminate | SlopeError::PoleEncountered) => None,
                    Err(e) => return Err(e.into()),
                },
                Err(SlopeError::MissingConwayData(_)) => None,
                Err(e) => return Err(e.into()),
            };
            match value {
                Some(v) => {
                    let shift = match v {
                        SlopeValue::Finite(0.0) => 1,
                        SlopeValue::Infinite => -1,
                        _ => 0,
                    };
                    (SigmaPrediction::Value(sig_p + sgn_extended(v)), EtaPrediction::Value(eta_p + shift), Some(v))
                }
                None => (
                    SigmaPrediction::WithSlopeSign { base: sig_p },
                    EtaPrediction::DependsOnSlope { base: eta_p },
                    None,
                ),
            }
        }
        TorresCase::NonSplit => {
            let comps = link.components();
            let l1 = comps.iter().filter(|c| c.color == 1).count() as i64;
            let total: i64 = comps
                .iter()
                .filter(|k| k.color == 1)
                .flat_map(|&k| comps.iter().filter(|c| c.color >= 2).map(move |&c| (k, c)))
                .map(|(k, c)| link.lk(k, c).abs())
                .sum();
            (SigmaPrediction::Value(sig_p), EtaPrediction::Value(eta_p - l1 + total), None)
        }
        TorresCase::Oriented => unreachable!(),
    };

    let midpoint = if link.ell().iter().all(|&l| l == 0) {
        MidpointCheck::Skipped("all linking numbers with L1 vanish".into())
    } else {
        match torres_generic(link, omega) {
            Ok(true) => {
                let [p, m] = both_limits(link, omega, cfg)?;
                match (p.value, m.value) {
                    (Some(a), Some(b)) if a + b == 2 * sig_p => {
                        MidpointCheck::Pass { plus: a, minus: b, sigma_sub: sig_p }
                    }
                    (a, b) => MidpointCheck::Fail { plus: a, minus: b, sigma_sub: sig_p },
                }
            }
            Ok(false) => MidpointCheck::Skipped("Delta_L(1, omega') = 0".into()),
            Err(SlopeError::MissingConwayData(f)) => MidpointCheck::Skipped(format!("missing {f}")),
            Err(e) => return Err(e.into()),
        }
    };
    Ok(TorresPrediction { case, sigma, eta, midpoint, slope: slope_value })
}

/// Reports for the Torres predictions: the midpoint identity and the bound
/// |lim± σ_L − σ_L(1, ω′)| ≤ η_L(1, ω′) − rank.
pub fn verify_torres(
    link: &ColoredLink,
    omega: &TorusPoint,
    cfg: &VerifyConfig,
) -> Result<Vec<VerificationReport>, VerifyError> {
    let pred = predict_torres(link, omega, cfg)?;
    let inputs =
        json!({ "omega_rest": omega.to_string(), "case": pred.case, "sigma_pred": pred.sigma, "eta_pred": pred.eta });
    let mut out = Vec::new();
    match &pred.midpoint {
        MidpointCheck::Pass { plus, minus, sigma_sub } => out.push(
            VerificationReport::eq("torres-midpoint", inputs.clone(), plus + minus, 2 * sigma_sub)
                .note("compares lim+ + lim- with 2 sigma_sub"),
        ),
        MidpointCheck::Fail { plus, minus, sigma_sub } => out.push(VerificationReport {
            check: "torres-midpoint".into(),
            inputs: inputs.clone(),
            lhs: plus.unwrap_or(0) + minus.unwrap_or(0),
            rhs: 2 * sigma_sub,
            relation: super::report::Relation::Eq,
            pass: false,
            notes: vec![format!("limits plus={plus:?} minus={minus:?}")],
        }),
        MidpointCheck::Skipped(why) => {
            out.push(VerificationReport::skipped("torres-midpoint", inputs.clone(), why.clone()))
        }
    }
    if let (SigmaPrediction::Value(s), EtaPrediction::Value(e)) = (pred.sigma, pred.eta) {
        let rank = link.rank_alexander();
        for lim in both_limits(link, omega, cfg)? {
            let name = format!("torres-limit-bound[{}]", lim.side);
            match lim.value {
                Some(v) => out
                    .push(VerificationReport::le(name, inputs.clone(), (v - s).abs(), e - rank).note(rank_note(link))),
                None => out.push(VerificationReport::unstable(
                    name,
                    inputs.clone(),
                    &lim.samples.iter().map(|x| x.sigma).collect::<Vec<_>>(),
                )),
            }
        }
    } else {
        out.push(VerificationReport::skipped(
            "torres-limit-bound",
            inputs,
            "prediction depends on an unavailable slope",
        ));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LtLimitPrediction {
    Value(i64),
    PlusMinusOne,
}

/// lim_{ω→1} σ_L(ω) for a two-component oriented link with linking number
/// ℓ and two-variable Conway function ∇_L.
pub fn predict_lt_limit_2comp(ell: i64, nabla: &RationalFunction) -> Result<LtLimitPrediction, VerifyError> {
    if ell != 0 || nabla.is_zero() {
        return Ok(LtLimitPrediction::Value(-ell.signum()));
    }
    let f = factor_2comp(nabla)?;
    let at_one: BigInt = f.terms().map(|(_, c)| c.clone()).sum();
    if at_one.is_zero() {
        Ok(LtLimitPrediction::PlusMinusOne)
    } else {
        Ok(LtLimitPrediction::Value(if at_one.is_positive() { 1 } else { -1 }))
    }
}
