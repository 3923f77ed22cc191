//! Test-side oracles, written directly from the defining formulas and
//! sharing no code with the library's evaluators.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sigtorus::ColoredLink;

pub type CMat = DMatrix<Complex64>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random p/q with 2 ≤ q ≤ 48 and 0 < p < q.
pub fn rational_angle(rng: &mut impl Rng) -> Rational64 {
    let q = rng.gen_range(2..=48);
    Rational64::new(rng.gen_range(1..q), q)
}

pub fn unit(theta: Rational64) -> Complex64 {
    let t = *theta.numer() as f64 / *theta.denom() as f64;
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t)
}

fn frac(x: Rational64) -> Rational64 {
    x - x.floor()
}

/// ρ(z₁, z₂) = sgn[i(z₁z₂ − 1)(z̄₁ − 1)(z̄₂ − 1)], with the exact zero set
/// {z₁ = 1} ∪ {z₂ = 1} ∪ {z₁z₂ = 1} decided on the rational angles.
pub fn rho2_def(a: Rational64, b: Rational64) -> i64 {
    if a.is_integer() || b.is_integer() || (a + b).is_integer() {
        return 0;
    }
    let one = Complex64::new(1.0, 0.0);
    let (z1, z2) = (unit(a), unit(b));
    let v = Complex64::i() * (z1 * z2 - one) * (z1.conj() - one) * (z2.conj() - one);
    assert!(v.im.abs() < 1e-9, "expected a real value, got {v}");
    if v.re > 0.0 {
        1
    } else {
        -1
    }
}

/// ρ(z₁, …, z_n) = Σ_{j<n} ρ(z_j, z_{j+1}⋯z_n).
pub fn rho_def(z: &[Rational64]) -> i64 {
    (0..z.len().saturating_sub(1))
        .map(|j| {
            let tail: Rational64 = z[j + 1..].iter().copied().fold(Rational64::zero(), |s, x| s + x);
            rho2_def(z[j], frac(tail))
        })
        .sum()
}

/// G_n(z) built entry by entry from the complex formulas.
pub fn g_matrix(z: &[Rational64]) -> CMat {
    let n = z.len().saturating_sub(1);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::i();
    let zs: Vec<Complex64> = z.iter().map(|&t| unit(t)).collect();
    let mut m = CMat::zeros(n, n);
    for k in 0..n {
        m[(k, k)] = i * (zs[k] * zs[k + 1] - one) / ((one - zs[k]) * (one - zs[k + 1]));
        if k > 0 {
            let v = i / (one - zs[k]);
            m[(k, k - 1)] = v;
            m[(k - 1, k)] = v.conj();
        }
    }
    m
}

/// Inertia (n₊, n₋, n₀) of a Hermitian matrix from nalgebra's eigensolver,
/// counting |λ| ≤ tol·max(1, ‖M‖_F) as zero.
pub fn eigen_inertia(m: &CMat, tol: f64) -> (usize, usize, usize) {
    if m.nrows() == 0 {
        return (0, 0, 0);
    }
    let thr = tol * m.norm().max(1.0);
    let ev = m.clone().symmetric_eigenvalues();
    let p = ev.iter().filter(|&&x| x > thr).count();
    let n = ev.iter().filter(|&&x| x < -thr).count();
    (p, n, ev.len() - p - n)
}

pub fn signature_nullity(m: &CMat, tol: f64) -> (i64, i64) {
    let (p, n, z) = eigen_inertia(m, tol);
    (p as i64 - n as i64, z as i64)
}

/// H(ω) = Σ_ε Π_j (1 − ω̄_j^{ε_j}) A^ε, straight from the definition.
pub fn h_matrix(link: &ColoredLink, theta: &[Rational64]) -> CMat {
    let one = Complex64::new(1.0, 0.0);
    let dim = link.seifert().dim();
    let mut h = CMat::zeros(dim, dim);
    for (eps, a) in link.seifert().matrices() {
        let w: Complex64 = eps
            .iter()
            .zip(theta)
            .map(|(&e, &t)| {
                let wbar = unit(t).conj();
                one - if e > 0 { wbar } else { wbar.inv() }
            })
            .product();
        for r in 0..dim {
            for c in 0..dim {
                h[(r, c)] += w * a[r][c] as f64;
            }
        }
    }
    h
}

/// σ and η of T(2, 2ℓ) at (θ₁, θ₂) by counting roots of unity: with
/// x = θ₁ + θ₂ folded into (0, 1], σ = sgn ℓ·(n − 1 − 2c − e) where
/// c = #{0 < k < n : k/n < x} and e = [nx ∈ ℤ, x < 1].
pub fn torus_oracle(ell: i64, t1: Rational64, t2: Rational64) -> (i64, i64) {
    let n = ell.abs();
    let mut x = t1 + t2;
    if x > Rational64::one() {
        x = Rational64::from_integer(2) - x;
    }
    let c = (1..n).filter(|&k| Rational64::new(k, n) < x).count() as i64;
    let e = i64::from((x * n).is_integer() && x < Rational64::one());
    let sigma = ell.signum() * (n - 1 - 2 * c - e);
    let s = t1 + t2;
    let eta = i64::from((s * ell).is_integer() && !s.is_integer());
    (sigma, eta)
}
