//! Correction terms relating the signature of a colored link near
//! `ω₁ = 1` to the signature of the sublink `L′`: the functions ρ, ρ_ℓ and
//! τ_ℓ, the torus step function f_n, the tridiagonal matrices G_n and the
//! clasp matrices built from them.

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::angle::{Angle, TorusPoint};
use crate::clink::{signed_angle, ColoredLink, LinkError};
use crate::hermitian::HermitianMatrix;

const REAL_CHECK: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum CorrectionError {
    #[error("linking vector is zero")]
    ZeroLinking,
    #[error("exact predicate requested on a floating angle")]
    InexactAngles,
    #[error("argument {0} is outside the domain (0, 2)")]
    DomainError(String),
    #[error("z_{0} equals 1")]
    UnitOne(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid clasp sequence: {0}")]
    InvalidClasps(String),
    #[error(transparent)]
    Link(#[from] LinkError),
}

/// Linking numbers ℓ = (ℓ₂, …, ℓ_μ) of L₁ with the other colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingVector(pub Vec<i64>);

impl LinkingVector {
    pub fn new(ell: Vec<i64>) -> Self {
        Self(ell)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn signs(&self) -> Vec<i64> {
        self.0.iter().map(|l| l.signum()).collect()
    }

    /// |ℓ| = Σ |ℓ_j|.
    pub fn abs_sum(&self) -> i64 {
        self.0.iter().map(|l| l.abs()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&l| l == 0)
    }
}

/// Clasps met along ∂S₁, each with a color in 2..=μ and a sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaspSequence(Vec<(usize, i8)>);

impl ClaspSequence {
    pub fn new(clasps: Vec<(usize, i8)>) -> Result<Self, CorrectionError> {
        if clasps.is_empty() {
            return Err(CorrectionError::InvalidClasps("at least one clasp is required".into()));
        }
        if let Some(&(c, s)) = clasps.iter().find(|&&(c, s)| c < 2 || (s != 1 && s != -1)) {
            return Err(CorrectionError::InvalidClasps(format!("bad clasp (color {c}, sign {s})")));
        }
        Ok(Self(clasps))
    }

    pub fn clasps(&self) -> &[(usize, i8)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Linking numbers with colors 2..=μ implied by the clasp signs.
    pub fn linking_vector(&self, mu: usize) -> LinkingVector {
        let mut ell = vec![0; mu.saturating_sub(1)];
        for &(c, s) in &self.0 {
            if c - 2 < ell.len() {
                ell[c - 2] += i64::from(s);
            }
        }
        LinkingVector(ell)
    }
}

/// Sum of two angles mod 1.
fn add_angles(a: Angle, b: Angle) -> Angle {
    match (a, b) {
        (Angle::Exact(x), Angle::Exact(y)) => Angle::from_rational_mod1(x + y),
        _ => {
            let s = (a.to_f64() + b.to_f64()).fract();
            Angle::Approx(s)
        }
    }
}

fn sign_i64(x: f64) -> i64 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

/// ρ(z₁, z₂) = sgn[i(z₁z₂ − 1)(z̄₁ − 1)(z̄₂ − 1)].
pub fn rho2(z1: Angle, z2: Angle) -> i64 {
    if let (Angle::Exact(a), Angle::Exact(b)) = (z1, z2) {
        if a.is_zero() || b.is_zero() {
            return 0;
        }
        let s = a + b;
        return match s.cmp(&Rational64::one()) {
            std::cmp::Ordering::Less => 1,
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => -1,
        };
    }
    rho2_complex(z1.unit(), z2.unit())
}

/// ρ on unit complex numbers, by evaluating the defining expression.
pub fn rho2_complex(z1: Complex64, z2: Complex64) -> i64 {
    let one = Complex64::new(1.0, 0.0);
    let v = Complex64::i() * (z1 * z2 - one) * (z1.conj() - one) * (z2.conj() - one);
    assert!(v.im.abs() <= REAL_CHECK * v.norm().max(1.0), "rho argument is not real: {v}");
    if v.re.abs() <= 1e-12 {
        0
    } else {
        sign_i64(v.re)
    }
}

/// ρ(z₁, …, z_n) = Σ_{j<n} ρ(z_j, z_{j+1}⋯z_n).
pub fn rho_n(z: &[Angle]) -> i64 {
    let n = z.len();
    if n < 2 {
        return 0;
    }
    let mut total = 0;
    let mut tail = z[n - 1];
    for j in (0..n - 1).rev() {
        total += rho2(z[j], tail);
        tail = add_angles(z[j], tail);
    }
    total
}

fn block_vector(ell: &LinkingVector, omega: &TorusPoint) -> Result<Vec<Angle>, CorrectionError> {
    if ell.0.len() != omega.len() {
        return Err(CorrectionError::DimensionMismatch(format!(
            "linking vector has {} entries, point has {}",
            ell.0.len(),
            omega.len()
        )));
    }
    let mut z = Vec::new();
    for (&l, a) in ell.0.iter().zip(omega.angles()) {
        let w = a.pow_sign(l.signum());
        z.extend(std::iter::repeat_n(w, l.unsigned_abs() as usize));
    }
    Ok(z)
}

/// ρ_ℓ(ω′): ρ of the block vector (ω_j^{s_j} repeated |ℓ_j| times) in
/// ascending color order; 0 when ℓ = 0.
pub fn rho_ell(ell: &LinkingVector, omega: &TorusPoint) -> Result<i64, CorrectionError> {
    Ok(rho_n(&block_vector(ell, omega)?))
}

/// ρ_ℓ(ω′) from the wall-crossing description: starting from |ℓ| − 1 near
/// the corner and dropping by one on reaching and on leaving each wall.
pub fn rho_ell_geometric(ell: &LinkingVector, omega: &TorusPoint) -> Result<i64, CorrectionError> {
    if ell.0.len() != omega.len() {
        return Err(CorrectionError::DimensionMismatch(format!(
            "linking vector has {} entries, point has {}",
            ell.0.len(),
            omega.len()
        )));
    }
    let total = ell.abs_sum();
    if total == 0 {
        return Err(CorrectionError::ZeroLinking);
    }
    let rs = omega.rationals().ok_or(CorrectionError::InexactAngles)?;
    let mut x = Rational64::zero();
    for (&l, r) in ell.0.iter().zip(&rs) {
        let phi = if l < 0 { Rational64::one() - r } else { *r };
        x += phi * l.abs();
    }
    let k = x.floor().to_integer();
    Ok(if x.is_integer() { total - 2 * k } else { total - 1 - 2 * k })
}

/// τ_ℓ(ω′) = 1 iff Π ω_j^{ℓ_j} = 1.
pub fn tau_ell(ell: &LinkingVector, omega: &TorusPoint) -> Result<i64, CorrectionError> {
    if ell.0.len() != omega.len() {
        return Err(CorrectionError::DimensionMismatch(format!(
            "linking vector has {} entries, point has {}",
            ell.0.len(),
            omega.len()
        )));
    }
    let hit = omega.power_is_one(&ell.0).ok_or(CorrectionError::InexactAngles)?;
    Ok(i64::from(hit))
}

/// The step function f_n on (0, 2) with f_n(2 − θ) = f_n(θ).
pub fn f_n(n: i64, theta: Rational64) -> Result<i64, CorrectionError> {
    let two = Rational64::from_integer(2);
    if n < 1 || theta <= Rational64::zero() || theta >= two {
        return Err(CorrectionError::DomainError(format!("f_{n}({theta})")));
    }
    let t = if theta > Rational64::one() { two - theta } else { theta };
    if t == Rational64::one() {
        return Ok(1 - n);
    }
    let x = t * n;
    let k = x.floor().to_integer();
    Ok(if x.is_integer() { n - 2 * k } else { n - 2 * k - 1 })
}

/// i/(1 − z) for z = e^{2πiθ}, written as −e^{−iπθ}/(2 sin πθ).
fn i_over_one_minus(a: Angle) -> Complex64 {
    let t = std::f64::consts::PI * signed_angle(&a);
    -Complex64::from_polar(1.0, -t) / (2.0 * t.sin())
}

/// i(z_a z_b − 1)/((1 − z_a)(1 − z_b)) = sin π(θ_a+θ_b) / (2 sin πθ_a sin πθ_b).
fn g_diagonal(a: Angle, b: Angle) -> f64 {
    if let (Angle::Exact(x), Angle::Exact(y)) = (a, b) {
        if (x + y).is_integer() {
            return 0.0;
        }
    }
    let pi = std::f64::consts::PI;
    let ta = signed_angle(&a);
    let tb = signed_angle(&b);
    (pi * (ta + tb)).sin() / (2.0 * (pi * ta).sin() * (pi * tb).sin())
}

/// The (n−1)×(n−1) tridiagonal Hermitian matrix G_n(z).
pub fn build_gn(z: &[Angle]) -> Result<HermitianMatrix, CorrectionError> {
    if let Some(k) = z.iter().position(|a| a.to_f64() == 0.0) {
        return Err(CorrectionError::UnitOne(k + 1));
    }
    let n = z.len();
    let size = n.saturating_sub(1);
    Ok(HermitianMatrix::from_upper(size, |r, c| {
        if r == c {
            Complex64::new(g_diagonal(z[r], z[r + 1]), 0.0)
        } else if c == r + 1 {
            // conjugate of the sub-diagonal entry (c, r) = i/(1 − z_c)
            i_over_one_minus(z[c]).conj()
        } else {
            Complex64::zero()
        }
    }))
}

/// G_n evaluated at z_k = ω_{c(k)}^{s(k)}.
pub fn build_clasp_matrix(clasps: &ClaspSequence, omega: &TorusPoint) -> Result<HermitianMatrix, CorrectionError> {
    let z = clasps
        .0
        .iter()
        .map(|&(c, s)| {
            omega
                .angles()
                .get(c - 2)
                .map(|a| a.pow_sign(i64::from(s)))
                .ok_or_else(|| CorrectionError::DimensionMismatch(format!("clasp color {c} exceeds point length")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    build_gn(&z)
}

/// Which side of ω₁ = 1 a limit is taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn sign(self) -> i64 {
        match self {
            Side::Plus => 1,
            Side::Minus => -1,
        }
    }
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Plus => "plus",
            Side::Minus => "minus",
        })
    }
}

impl std::str::FromStr for Side {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "plus" | "+" => Ok(Side::Plus),
            "minus" | "-" => Ok(Side::Minus),
            _ => Err(format!("unknown side '{s}'")),
        }
    }
}

/// F^±(ω′) = ±i Σ_{ε′} Π_{j≥2}(1 − ω̄_j^{ε_j}) (A^{(+,ε′)} − A^{(−,ε′)}),
/// taking the whole basis of the C-complex as the part meeting S₁.
pub fn limit_matrix_f(link: &ColoredLink, omega: &TorusPoint, side: Side) -> Result<HermitianMatrix, CorrectionError> {
    let mu = link.mu();
    if omega.len() + 1 != mu {
        return Err(CorrectionError::DimensionMismatch(format!(
            "point has {} coordinates, expected {}",
            omega.len(),
            mu - 1
        )));
    }
    let seifert = link.seifert();
    let n = seifert.dim();
    let one = Complex64::new(1.0, 0.0);
    let mut acc = vec![vec![Complex64::zero(); n]; n];
    for (eps, plus) in seifert.matrices() {
        if eps[0] < 0 {
            continue;
        }
        let mut neg_eps = eps.clone();
        neg_eps[0] = -1;
        let minus = seifert.matrix(&neg_eps);
        let w: Complex64 =
            eps[1..].iter().zip(omega.angles()).map(|(&e, a)| one - a.pow_sign(-i64::from(e)).unit()).product();
        for i in 0..n {
            for j in 0..n {
                let d = plus[i][j] - minus[i][j];
                if d != 0 {
                    acc[i][j] += w * d as f64;
                }
            }
        }
    }
    let scale = Complex64::new(0.0, side.sign() as f64);
    Ok(HermitianMatrix::symmetrize(acc.into_iter().map(|r| r.into_iter().map(|v| v * scale).collect()).collect()))
}
