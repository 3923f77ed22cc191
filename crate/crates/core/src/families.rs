//! Built-in link families with closed-form signature oracles.
//!
//! * twist links `L(k)`: two unknots clasped by |k| full twists, all
//!   generalized Seifert matrices equal to `(k)`;
//! * torus links `T(2, 2ℓ)` with lk = ℓ;
//! * unlinks with μ components.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::Zero;
use thiserror::Error;

use crate::clink::{all_sign_vectors, ColoredLink, ComponentId, IntMatrix, SeifertSystem};
use crate::corrections::{f_n, ClaspSequence};
use crate::laurent::{LaurentPoly, RationalFunction};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("the torus oracle needs a nonzero parameter; T(2,0) is the unlink")]
    ZeroParameter,
    #[error("invalid parameter {0} for family {1}")]
    InvalidParameter(i64, FamilyName),
    #[error("angle {0} is outside (0, 1)")]
    AngleOutOfRange(Rational64),
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyName {
    Twist,
    Torus,
    Unlink,
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyName::Twist => "twist",
            FamilyName::Torus => "torus",
            FamilyName::Unlink => "unlink",
        })
    }
}

impl FromStr for FamilyName {
    type Err = FamilyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "twist" => Ok(FamilyName::Twist),
            "torus" => Ok(FamilyName::Torus),
            "unlink" => Ok(FamilyName::Unlink),
            _ => Err(FamilyError::UnknownFamily(s.into())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilySpec {
    pub name: FamilyName,
    pub param: i64,
}

impl FamilySpec {
    pub fn new(name: FamilyName, param: i64) -> Result<Self, FamilyError> {
        if name == FamilyName::Unlink && param < 1 {
            return Err(FamilyError::InvalidParameter(param, name));
        }
        Ok(Self { name, param })
    }

    pub fn build(&self) -> ColoredLink {
        match self.name {
            FamilyName::Twist => make_twist(self.param),
            FamilyName::Torus => make_torus(self.param),
            FamilyName::Unlink => make_unlink(self.param as usize),
        }
    }
}

fn uniform_system(mu: usize, m: IntMatrix) -> SeifertSystem {
    let matrices: BTreeMap<_, _> = all_sign_vectors(mu).into_iter().map(|e| (e, m.clone())).collect();
    SeifertSystem::new(mu, matrices).expect("uniform symmetric system is valid")
}

/// ∇ of the unknot, 1/(t − t⁻¹).
pub fn unknot_conway() -> RationalFunction {
    RationalFunction::new(LaurentPoly::one(1), LaurentPoly::var_minus_inverse(1, 0)).expect("nonzero denominator")
}

pub fn make_unknot() -> ColoredLink {
    ColoredLink::new(vec![1], &[], SeifertSystem::zero(1, 0))
        .and_then(|l| l.with_conway(unknot_conway()))
        .expect("unknot data is valid")
}

/// The twist link L(k).
pub fn make_twist(k: i64) -> ColoredLink {
    let a = LaurentPoly::var_minus_inverse(2, 0);
    let b = LaurentPoly::var_minus_inverse(2, 1);
    let nabla = (&a * &b).scale(&BigInt::from(k));
    ColoredLink::new(vec![1, 1], &[], uniform_system(2, vec![vec![k]]))
        .and_then(|l| l.with_conway(nabla.into()))
        .and_then(|l| l.with_sublink(vec![1], make_unknot()))
        .and_then(|l| l.with_sublink(vec![2], make_unknot()))
        .expect("twist data is valid")
}

/// The (|ℓ|−1)×(|ℓ|−1) matrix with ones on the diagonal and sub-diagonal.
pub fn t_matrix(ell: i64) -> IntMatrix {
    let n = (ell.unsigned_abs() as usize).saturating_sub(1);
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j || i == j + 1)).collect()).collect()
}

/// Seifert matrix of T(2, 2ℓ) as a one-colored oriented link: size
/// 2|ℓ|−1, diagonal −1 and super-diagonal 1 for ℓ > 0, negated for ℓ < 0.
pub fn torus_oriented_seifert(ell: i64) -> IntMatrix {
    let n = (2 * ell.unsigned_abs() as usize).saturating_sub(1);
    let s = ell.signum();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        -s
                    } else if j == i + 1 {
                        s
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect()
}

/// T(2, 2ℓ) as an oriented (one-colored) link.
pub fn make_torus_oriented(ell: i64) -> ColoredLink {
    if ell == 0 {
        return unlink_oriented(2);
    }
    let seifert = SeifertSystem::from_knot_matrix(torus_oriented_seifert(ell)).expect("square matrix");
    ColoredLink::new(vec![2], &[(ComponentId::new(1, 1), ComponentId::new(1, 2), ell)], seifert)
        .expect("oriented torus data is valid")
}

/// The torus link T(2, 2ℓ) with one component per color.
pub fn make_torus(ell: i64) -> ColoredLink {
    if ell == 0 {
        return make_unlink(2);
    }
    let t = t_matrix(ell);
    let n = t.len();
    let s = -ell.signum();
    let app: IntMatrix = t.iter().map(|r| r.iter().map(|x| s * x).collect()).collect();
    let amm: IntMatrix = (0..n).map(|i| (0..n).map(|j| app[j][i]).collect()).collect();
    let zero = vec![vec![0; n]; n];
    let matrices =
        BTreeMap::from([(vec![1, 1], app), (vec![-1, -1], amm), (vec![1, -1], zero.clone()), (vec![-1, 1], zero)]);
    let seifert = SeifertSystem::new(2, matrices).expect("torus system is valid");
    ColoredLink::new(vec![1, 1], &[(ComponentId::new(1, 1), ComponentId::new(2, 1), ell)], seifert)
        .and_then(|l| l.with_sublink(vec![1], make_unknot()))
        .and_then(|l| l.with_sublink(vec![2], make_unknot()))
        .and_then(|l| l.with_underlying(make_torus_oriented(ell)))
        .expect("torus data is valid")
}

/// Clasps of the standard C-complex of T(2, 2ℓ): ℓ clasps of color 2.
pub fn torus_clasps(ell: i64) -> Result<ClaspSequence, FamilyError> {
    if ell == 0 {
        return Err(FamilyError::ZeroParameter);
    }
    let s = ell.signum() as i8;
    Ok(ClaspSequence::new(vec![(2, s); ell.unsigned_abs() as usize]).expect("colors are valid"))
}

fn unlink_oriented(m: usize) -> ColoredLink {
    ColoredLink::new(vec![m], &[], SeifertSystem::from_knot_matrix(vec![vec![0; m - 1]; m - 1]).expect("square"))
        .map(|l| l.with_rank_alexander(m as u64 - 1))
        .expect("unlink data is valid")
}

/// The μ-component unlink, one component per color, presented by a
/// connected C-complex (disks joined by tubes) with zero Seifert matrices.
pub fn make_unlink(mu: usize) -> ColoredLink {
    assert!(mu >= 1, "unlink needs at least one component");
    if mu == 1 {
        return make_unknot();
    }
    let n = mu - 1;
    let link = ColoredLink::new(vec![1; mu], &[], uniform_system(mu, vec![vec![0; n]; n]))
        .and_then(|l| l.with_conway(LaurentPoly::zero(mu).into()))
        .map(|l| l.with_rank_alexander(n as u64))
        .expect("unlink data is valid");
    let prime: Vec<usize> = (2..=mu).collect();
    let mut link = link.with_sublink(prime, make_unlink(mu - 1)).expect("sublink is valid");
    if mu == 2 {
        link = link.with_sublink(vec![1], make_unknot()).expect("sublink is valid");
    }
    link.with_underlying(unlink_oriented(mu)).expect("underlying link is valid")
}

/// (σ, η) of T(2, 2ℓ) at (θ₁, θ₂) ∈ (0,1)²: σ = sgn(ℓ)·f_{|ℓ|}(θ₁+θ₂), and
/// η = 1 exactly when (ω₁ω₂)^ℓ = 1 and ω₁ω₂ ≠ 1.
pub fn oracle_torus(ell: i64, theta1: Rational64, theta2: Rational64) -> Result<(i64, i64), FamilyError> {
    if ell == 0 {
        return Err(FamilyError::ZeroParameter);
    }
    for t in [theta1, theta2] {
        if t <= Rational64::zero() || t >= Rational64::from_integer(1) {
            return Err(FamilyError::AngleOutOfRange(t));
        }
    }
    let s = theta1 + theta2;
    let sigma = ell.signum() * f_n(ell.abs(), s).expect("sum lies in (0, 2)");
    let eta = i64::from((s * ell).is_integer() && !s.is_integer());
    Ok((sigma, eta))
}

/// (σ, η) of L(k), constant on the open torus.
pub fn oracle_twist(k: i64) -> (i64, i64) {
    (k.signum(), i64::from(k == 0))
}
