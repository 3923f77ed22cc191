//! Verifiers for the limit theorems. Each returns one report per checked
//! relation; a limit that fails to stabilize yields a failed report.

use serde_json::{json, Value};

use super::limit::{corner_limit, directional_limit, LimitResult, Schedule};
use super::report::{VerificationReport, VerifyError};
use crate::angle::{Angle, TorusPoint};
use crate::clink::{all_sign_vectors, sign_string, ColoredLink, ComponentId};
use crate::conway_slope::{classify_slope, conway_pair, slope_parts, torres_generic, SlopeError, SlopeValue};
use crate::corrections::{rho_ell, tau_ell, LinkingVector, Side};
use crate::hermitian::{inertia_exact_integer, DEFAULT_TOL};

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub tol: f64,
    pub schedule: Schedule,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { tol: DEFAULT_TOL, schedule: Schedule::default() }
    }
}

pub(crate) fn rank_note(link: &ColoredLink) -> String {
    match link.rank_alexander_supplied() {
        Some(r) => format!("rank_alexander = {r} (supplied)"),
        None => "rank_alexander = 0 (default; a supplied rank may sharpen the bound)".to_string(),
    }
}

pub(crate) fn trail(r: &LimitResult) -> Vec<i64> {
    r.samples.iter().map(|s| s.sigma).collect()
}

pub(crate) fn l_prime(link: &ColoredLink) -> Result<&ColoredLink, VerifyError> {
    link.sublink_prime().ok_or_else(|| {
        let key = (2..=link.mu()).map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        VerifyError::MissingSublink(key)
    })
}

fn require_multicolor(link: &ColoredLink, omega: &TorusPoint) -> Result<(), VerifyError> {
    if link.mu() < 2 {
        return Err(VerifyError::WrongColorCount { expected: "at least 2".into(), found: link.mu() });
    }
    if omega.len() + 1 != link.mu() {
        return Err(VerifyError::Link(crate::clink::LinkError::WrongPointLength {
            expected: link.mu() - 1,
            found: omega.len(),
        }));
    }
    Ok(())
}

/// Both directional limits at ω′.
pub(crate) fn both_limits(
    link: &ColoredLink,
    omega: &TorusPoint,
    cfg: &VerifyConfig,
) -> Result<[LimitResult; 2], VerifyError> {
    Ok([
        directional_limit(link, omega, Side::Plus, &cfg.schedule, cfg.tol)?,
        directional_limit(link, omega, Side::Minus, &cfg.schedule, cfg.tol)?,
    ])
}

/// Σ_{K′ ⊂ L′} |lk(K, K′)| for the knot K = L₁.
pub(crate) fn total_abs_lk(link: &ColoredLink) -> i64 {
    let k = ComponentId::new(1, 1);
    link.components().into_iter().filter(|c| c.color >= 2).map(|c| link.lk(k, c).abs()).sum()
}

/// Signature bounds near ω₁ = 1 in terms of ρ_ℓ and τ_ℓ, with the equality
/// case when Δ_L(1, ω′) ≠ 0.
pub fn verify_3d(
    link: &ColoredLink,
    omega: &TorusPoint,
    cfg: &VerifyConfig,
) -> Result<Vec<VerificationReport>, VerifyError> {
    require_multicolor(link, omega)?;
    let inputs = json!({ "omega_rest": omega.to_string() });
    if link.components_per_color()[0] != 1 {
        return Ok(vec![VerificationReport::skipped("3d", inputs, "L1 is not a knot")]);
    }
    let lp = l_prime(link)?;
    let (sig_p, eta_p) = lp.signature_nullity(omega, cfg.tol)?;
    let ell = LinkingVector::new(link.ell());
    let rho = rho_ell(&ell, omega)?;
    let tau = tau_ell(&ell, omega)?;
    let rank = link.rank_alexander();
    let generic = match torres_generic(link, omega) {
        Ok(g) => Some(g),
        Err(SlopeError::MissingConwayData(_)) => None,
        Err(e) => return Err(e.into()),
    };

    let mut out = Vec::new();
    for lim in both_limits(link, omega, cfg)? {
        let s = lim.side.sign();
        let inputs = json!({
            "omega_rest": omega.to_string(), "side": lim.side,
            "sigma_sub": sig_p, "eta_sub": eta_p, "rho": rho, "tau": tau, "rank": rank,
        });
        let Some(v) = lim.value else {
            out.push(VerificationReport::unstable(format!("3d-bound[{}]", lim.side), inputs, &trail(&lim)));
            continue;
        };
        out.push(
            VerificationReport::le(
                format!("3d-bound[{}]", lim.side),
                inputs.clone(),
                (v - sig_p - s * rho).abs(),
                eta_p + tau - rank,
            )
            .note(rank_note(link)),
        );
        match generic {
            Some(true) => {
                out.push(VerificationReport::eq(format!("3d-equality[{}]", lim.side), inputs, v, sig_p + s * rho))
            }
            Some(false) => {}
            None => out.push(VerificationReport::skipped(
                format!("3d-equality[{}]", lim.side),
                inputs,
                "no Conway data for L' to decide genericity",
            )),
        }
    }
    Ok(out)
}

/// The four-dimensional bounds: case 1 when L₁ links L′, case 2 (slope) when
/// it is algebraically split, with their equality and difference corollaries.
pub fn verify_4d(
    link: &ColoredLink,
    omega: &TorusPoint,
    cfg: &VerifyConfig,
) -> Result<Vec<VerificationReport>, VerifyError> {
    require_multicolor(link, omega)?;
    let base_inputs = json!({ "omega_rest": omega.to_string() });
    if link.components_per_color()[0] != 1 {
        return Ok(vec![VerificationReport::skipped("4d", base_inputs, "L1 is not a knot")]);
    }
    let lp = l_prime(link)?;
    let (sig_p, eta_p) = lp.signature_nullity(omega, cfg.tol)?;
    let rank = link.rank_alexander();
    let abs_lk = total_abs_lk(link);
    let mut out = Vec::new();

    if abs_lk > 0 {
        let rhs = eta_p - 1 + abs_lk - rank;
        let lims = both_limits(link, omega, cfg)?;
        for lim in &lims {
            let inputs = json!({
                "omega_rest": omega.to_string(), "side": lim.side, "case": 1,
                "sigma_sub": sig_p, "eta_sub": eta_p, "sum_abs_lk": abs_lk, "rank": rank,
            });
            match lim.value {
                Some(v) => out.push(
                    VerificationReport::le(format!("4d-case1[{}]", lim.side), inputs, (v - sig_p).abs(), rhs)
                        .note(rank_note(link)),
                ),
                None => out.push(VerificationReport::unstable(format!("4d-case1[{}]", lim.side), inputs, &trail(lim))),
            }
        }
        if let (Some(p), Some(m)) = (lims[0].value, lims[1].value) {
            out.push(VerificationReport::le(
                "4d-diff-lim",
                json!({"omega_rest": omega.to_string(), "case": 1, "plus": p, "minus": m}),
                (p - m).abs(),
                2 * rhs,
            ));
            if abs_lk == 1 {
                let nonzero = sub_conway_nonzero(link, omega)?;
                let inputs = json!({"omega_rest": omega.to_string(), "plus": p, "minus": m, "sigma_sub": sig_p});
                match nonzero {
                    Some(true) => {
                        out.push(VerificationReport::eq("4d-lk1-equality[plus]", inputs.clone(), p, sig_p));
                        out.push(VerificationReport::eq("4d-lk1-equality[minus]", inputs, m, sig_p));
                    }
                    Some(false) => {}
                    None => out.push(VerificationReport::skipped("4d-lk1-equality", inputs, "no Conway data for L'")),
                }
            }
        }
        return Ok(out);
    }

    let (nl, nlp) = conway_pair(link)?;
    let parts = match slope_parts(nl, nlp, omega) {
        Ok(p) => p,
        Err(SlopeError::PoleEncountered) => {
            return Ok(vec![VerificationReport::skipped(
                "4d-case2",
                base_inputs,
                "Conway data has a pole at this point",
            )])
        }
        Err(e) => return Err(e.into()),
    };
    let value = match crate::conway_slope::slope(nl, nlp, omega) {
        Ok(v) => v,
        Err(SlopeError::Indeterminate) => {
            return Ok(vec![VerificationReport::skipped("4d-case2", base_inputs, "slope is 0/0 at this point")])
        }
        Err(e) => return Err(e.into()),
    };
    let (s, eps) = classify_slope(value);
    let rhs = eta_p + eps - rank;
    let equality = !parts.sublink_zero && !parts.derivative_zero;
    let lims = both_limits(link, omega, cfg)?;
    let slope_json = match value {
        SlopeValue::Finite(x) => json!(x),
        SlopeValue::Infinite => json!("inf"),
    };
    for lim in &lims {
        let inputs = json!({
            "omega_rest": omega.to_string(), "side": lim.side, "case": 2, "slope": slope_json,
            "s": s, "epsilon": eps, "sigma_sub": sig_p, "eta_sub": eta_p, "rank": rank,
        });
        let Some(v) = lim.value else {
            out.push(VerificationReport::unstable(format!("4d-case2[{}]", lim.side), inputs, &trail(lim)));
            continue;
        };
        out.push(
            VerificationReport::le(format!("4d-case2[{}]", lim.side), inputs.clone(), (v - sig_p - s).abs(), rhs)
                .note(rank_note(link)),
        );
        if equality {
            out.push(VerificationReport::eq(format!("4d-split-equality[{}]", lim.side), inputs, v, sig_p + s));
        }
    }
    if let (Some(p), Some(m)) = (lims[0].value, lims[1].value) {
        out.push(VerificationReport::le(
            "4d-diff-lim",
            json!({"omega_rest": omega.to_string(), "case": 2, "plus": p, "minus": m}),
            (p - m).abs(),
            2 * rhs,
        ));
    }
    Ok(out)
}

/// Whether ∇_{L′}(√ω′) ≠ 0, or `None` without Conway data for L′.
pub(crate) fn sub_conway_nonzero(link: &ColoredLink, omega: &TorusPoint) -> Result<Option<bool>, VerifyError> {
    let Some(nlp) = link.sublink_prime().and_then(ColoredLink::conway) else {
        return Ok(None);
    };
    let roots = omega.sqrt_units();
    let (d, dscale) = nlp.den().eval_scaled(&roots)?;
    if d.norm() <= crate::laurent::ZERO_TOL * dscale {
        return Err(VerifyError::Slope(SlopeError::PoleEncountered));
    }
    Ok(Some(!nlp.num().vanishes_at(&roots)?))
}

/// Levine-Tristram limit at ω → 1 against the linking matrix.
pub fn verify_lt(link: &ColoredLink, cfg: &VerifyConfig) -> Result<Vec<VerificationReport>, VerifyError> {
    if link.mu() != 1 {
        return Err(VerifyError::WrongColorCount { expected: "1".into(), found: link.mu() });
    }
    let lk = link.linking_matrix_colored(&[1])?;
    let inert = inertia_exact_integer(&lk);
    let (sig_lk, eta_lk) = (inert.signature(), inert.nullity());
    let m = link.component_count() as i64;
    let rank = link.rank_alexander();
    let empty = TorusPoint::new(Vec::new());
    let lims = both_limits(link, &empty, cfg)?;
    let inputs = json!({ "components": m, "sigma_lk": sig_lk, "eta_lk": eta_lk, "rank": rank });
    let mut out = vec![VerificationReport::le("lt-rank-constraint", inputs.clone(), rank, eta_lk - 1)];
    match (lims[0].value, lims[1].value) {
        (Some(p), Some(q)) => {
            out.push(VerificationReport::eq("lt-side-symmetry", inputs.clone(), p, q));
            out.push(
                VerificationReport::le("lt-bound", inputs.clone(), (p - sig_lk).abs(), eta_lk - 1 - rank)
                    .note(rank_note(link)),
            );
            out.push(VerificationReport::le("lt-gl-bound", inputs, p.abs(), m - 1 - rank));
        }
        _ => {
            for lim in &lims {
                if lim.value.is_none() {
                    out.push(VerificationReport::unstable(
                        format!("lt-limit[{}]", lim.side),
                        inputs.clone(),
                        &trail(lim),
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// Limits with all coordinates tending to 1, for every sign vector.
pub fn verify_corner_limits(link: &ColoredLink, cfg: &VerifyConfig) -> Result<Vec<VerificationReport>, VerifyError> {
    let m = link.component_count() as i64;
    let rank = link.rank_alexander();
    let mut out = Vec::new();
    for eps in all_sign_vectors(link.mu()) {
        let tag = sign_string(&eps);
        let lim = corner_limit(link, &eps, &cfg.schedule, cfg.tol)?;
        let inert = link.linking_inertia(&eps)?;
        let (sig, eta) = (inert.signature(), inert.nullity());
        let sum = link.signed_color_linking_sum(&eps);
        let inputs: Value =
            json!({ "eps": tag, "sigma_lk": sig, "eta_lk": eta, "signed_lk_sum": sum, "components": m, "rank": rank });
        let Some(v) = lim.value else {
            out.push(VerificationReport::unstable(format!("corner[{tag}]"), inputs, &trail(&lim)));
            continue;
        };
        out.push(
            VerificationReport::le(
                format!("corner-bound[{tag}]"),
                inputs.clone(),
                (v - sig - sum).abs(),
                eta - 1 - rank,
            )
            .note(rank_note(link)),
        );
        if eta == 1 {
            out.push(VerificationReport::eq(format!("corner-equality[{tag}]"), inputs.clone(), v, sig + sum));
        }
        if link.mu() == 2 {
            let ell = link.color_lk(1, 2);
            if ell != 0 {
                let e = i64::from(eps[0] * eps[1]);
                out.push(VerificationReport::eq(
                    format!("corner-closed-form[{tag}]"),
                    inputs.clone(),
                    v,
                    e * (ell - ell.signum()),
                ));
            }
        }
        out.push(VerificationReport::le(format!("corner-gl-mult[{tag}]"), inputs, v.abs(), m - 1 + sum.abs() - rank));
    }
    Ok(out)
}

/// σ_L(ω, …, ω) = σ_{L^or}(ω) + Σ_{i<j} lk(L_i, L_j).
pub fn verify_multi_lt(
    link: &ColoredLink,
    omega: Angle,
    cfg: &VerifyConfig,
) -> Result<VerificationReport, VerifyError> {
    let under = link.underlying_oriented().ok_or(VerifyError::MissingUnderlying)?;
    let diag = TorusPoint::new(vec![omega; link.mu()]);
    let (sig, _) = link.signature_nullity(&diag, cfg.tol)?;
    let (sig_or, _) = under.signature_nullity(&TorusPoint::new(vec![omega]), cfg.tol)?;
    let sum = link.signed_color_linking_sum(&vec![1; link.mu()]);
    let inputs = json!({ "omega": omega.to_string(), "sigma_oriented": sig_or, "lk_sum": sum });
    Ok(VerificationReport::eq("multi-lt", inputs, sig, sig_or + sum))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_torus, make_torus_oriented, make_twist, make_unlink};

    fn pt(p: i64, q: i64) -> TorusPoint {
        TorusPoint::exact(&[(p, q)]).unwrap()
    }

    fn all_pass(r: &[VerificationReport]) -> bool {
        r.iter().all(|x| x.pass)
    }

    #[test]
    fn three_d_torus_node_is_sharp() {
        let r = verify_3d(&make_torus(3), &pt(1, 3), &VerifyConfig::default()).unwrap();
        assert!(all_pass(&r), "{r:#?}");
        assert!(r.iter().all(|x| !x.check.starts_with("3d-equality")));
    }

    #[test]
    fn three_d_generic_equality() {
        let r = verify_3d(&make_torus(3), &pt(1, 10), &VerifyConfig::default()).unwrap();
        assert!(all_pass(&r));
        assert_eq!(r.iter().filter(|x| x.check.starts_with("3d-equality")).count(), 2);
        let r = verify_3d(&make_torus(1), &pt(2, 7), &VerifyConfig::default()).unwrap();
        assert!(all_pass(&r));
        assert!(r.iter().any(|x| x.check == "3d-equality[plus]" && x.lhs == 0));
    }

    #[test]
    fn three_d_twist_bound() {
        let r = verify_3d(&make_twist(2), &pt(1, 4), &VerifyConfig::default()).unwrap();
        assert!(all_pass(&r));
        assert!(r.iter().all(|x| x.rhs == 1));
    }

    #[test]
    fn four_d_twist_equality() {
        let r = verify_4d(&make_twist(2), &pt(1, 4), &VerifyConfig::default()).unwrap();
        assert!(all_pass(&r), "{r:#?}");
        let eq: Vec<_> = r.iter().filter(|x| x.check.starts_with("4d-split-equality")).collect();
        assert_eq!(eq.len(), 2);
        assert!(eq.iter().all(|x| x.lhs == 1));
    }

    #[test]
    fn four_d_torus_cases() {
        let r = verify_4d(&make_torus(3), &pt(1, 10), &VerifyConfig::default()).unwrap();
        assert!(all_pass(&r));
        assert!(r.iter().any(|x| x.check == "4d-case1[plus]" && x.rhs == 2));
        let r = verify_4d(&make_torus(1), &pt(1, 10), &VerifyConfig::default()).unwrap();
        assert!(r.iter().any(|x| x.check == "4d-lk1-equality[minus]" && x.pass));
    }

    #[test]
    fn four_d_missing_conway() {
        let l = make_twist(2).without_conway();
        assert!(matches!(verify_4d(&l, &pt(1, 4), &VerifyConfig::default()), Err(VerifyError::MissingConwayData(_))));
    }

    #[test]
    fn lt_checks() {
        let cfg = VerifyConfig::default();
        let r = verify_lt(&make_torus_oriented(3), &cfg).unwrap();
        assert!(all_pass(&r), "{r:#?}");
        let unlink = make_unlink(2).underlying_oriented().unwrap().clone();
        let r = verify_lt(&unlink, &cfg).unwrap();
        assert!(all_pass(&r));
        assert!(r.iter().any(|x| x.check == "lt-gl-bound" && x.rhs == 0));
        assert!(matches!(verify_lt(&make_torus(3), &cfg), Err(VerifyError::WrongColorCount { .. })));
    }

    #[test]
    fn corners() {
        let cfg = VerifyConfig::default();
        for l in [make_torus(3), make_torus(-2), make_twist(-1), make_unlink(2), make_unlink(3)] {
            let r = verify_corner_limits(&l, &cfg).unwrap();
            assert!(all_pass(&r), "{r:#?}");
        }
    }

    #[test]
    fn multi_lt() {
        let cfg = VerifyConfig::default();
        for l in [make_torus(1), make_torus(3), make_unlink(2)] {
            for q in [3, 5, 7] {
                let r = verify_multi_lt(&l, Angle::exact(1, q).unwrap(), &cfg).unwrap();
                assert!(r.pass, "{r:?}");
            }
        }
        assert!(matches!(
            verify_multi_lt(&make_twist(1), Angle::exact(1, 3).unwrap(), &cfg),
            Err(VerifyError::MissingUnderlying)
        ));
    }
}
