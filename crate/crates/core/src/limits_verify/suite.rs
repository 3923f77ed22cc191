use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::checks::{verify_3d, verify_4d, verify_corner_limits, verify_lt, verify_multi_lt, VerifyConfig};
use super::report::{VerificationReport, VerifyError};
use super::torres::verify_torres;
use crate::angle::{Angle, TorusPoint};
use crate::clink::ColoredLink;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    ThreeD,
    FourD,
    Lt,
    Corners,
    Torres,
    MultiLt,
    All,
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "3d" => Suite::ThreeD,
            "4d" => Suite::FourD,
            "lt" => Suite::Lt,
            "corners" => Suite::Corners,
            "torres" => Suite::Torres,
            "multi-lt" => Suite::MultiLt,
            "all" => Suite::All,
            _ => return Err(format!("unknown suite '{s}'")),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::ThreeD => "3d",
            Suite::FourD => "4d",
            Suite::Lt => "lt",
            Suite::Corners => "corners",
            Suite::Torres => "torres",
            Suite::MultiLt => "multi-lt",
            Suite::All => "all",
        })
    }
}

/// Deterministic random rational angles p/q with 2 ≤ q ≤ 48, 1 ≤ p < q.
pub struct AngleSampler {
    rng: ChaCha8Rng,
}

impl AngleSampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn angle(&mut self) -> Angle {
        let q = self.rng.gen_range(2..=48i64);
        let p = self.rng.gen_range(1..q);
        Angle::exact(p, q).expect("p/q lies in (0, 1)")
    }

    pub fn point(&mut self, dim: usize) -> TorusPoint {
        TorusPoint::new((0..dim).map(|_| self.angle()).collect())
    }
}

fn per_point<F>(points: &[TorusPoint], f: F) -> Result<Vec<VerificationReport>, VerifyError>
where
    F: Fn(&TorusPoint) -> Result<Vec<VerificationReport>, VerifyError> + Sync,
{
    let chunks: Vec<Vec<VerificationReport>> = points.par_iter().map(&f).collect::<Result<_, _>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

/// Runs the requested suite over `samples` points drawn from `seed`.
pub fn run_suite(
    link: &ColoredLink,
    suite: Suite,
    samples: usize,
    seed: u64,
    cfg: &VerifyConfig,
) -> Result<Vec<VerificationReport>, VerifyError> {
    let mu = link.mu();
    let mut sampler = AngleSampler::new(seed);
    let points: Vec<TorusPoint> = (0..samples).map(|_| sampler.point(mu.saturating_sub(1))).collect();
    let diagonal: Vec<Angle> =
        points.iter().map(|p| p.angles().first().copied().unwrap_or_else(|| sampler.angle())).collect();

    let multi = |link: &ColoredLink| -> Result<Vec<VerificationReport>, VerifyError> {
        diagonal.par_iter().map(|&w| verify_multi_lt(link, w, cfg)).collect()
    };
    let torres = |link: &ColoredLink| -> Result<Vec<VerificationReport>, VerifyError> {
        if link.mu() == 1 {
            verify_torres(link, &TorusPoint::new(Vec::new()), cfg)
        } else {
            per_point(&points, |p| verify_torres(link, p, cfg))
        }
    };

    match suite {
        Suite::ThreeD => per_point(&points, |p| verify_3d(link, p, cfg)),
        Suite::FourD => per_point(&points, |p| verify_4d(link, p, cfg)),
        Suite::Lt => verify_lt(link, cfg),
        Suite::Corners => verify_corner_limits(link, cfg),
        Suite::Torres => torres(link),
        Suite::MultiLt => multi(link),
        Suite::All => {
            let mut out = Vec::new();
            if mu >= 2 {
                out.extend(per_point(&points, |p| verify_3d(link, p, cfg))?);
                out.extend(per_point(&points, |p| verify_4d(link, p, cfg))?);
            } else {
                out.extend(verify_lt(link, cfg)?);
            }
            out.extend(verify_corner_limits(link, cfg)?);
            out.extend(torres(link)?);
            if mu >= 2 && link.underlying_oriented().is_some() {
                out.extend(multi(link)?);
                out.extend(verify_lt(link.underlying_oriented().expect("checked"), cfg)?);
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_torus, make_twist};

    #[test]
    fn sampler_is_deterministic() {
        let a: Vec<_> = (0..20)
            .map({
                let mut s = AngleSampler::new(7);
                move |_| s.angle()
            })
            .collect();
        let b: Vec<_> = (0..20)
            .map({
                let mut s = AngleSampler::new(7);
                move |_| s.angle()
            })
            .collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|x| x.to_f64() > 0.0 && x.to_f64() < 1.0));
    }

    #[test]
    fn suites_pass_on_families() {
        let cfg = VerifyConfig::default();
        for l in [make_torus(3), make_twist(2)] {
            let r = run_suite(&l, Suite::All, 5, 1, &cfg).unwrap();
            assert!(r.iter().all(|x| x.pass), "{:#?}", r.iter().filter(|x| !x.pass).collect::<Vec<_>>());
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in ["3d", "4d", "lt", "corners", "torres", "multi-lt", "all"] {
            assert_eq!(s.parse::<Suite>().unwrap().to_string(), s);
        }
        assert!("5d".parse::<Suite>().is_err());
    }
}
