//! Inertia of Hermitian matrices.
//!
//! Two backends: cyclic complex Jacobi rotations for general Hermitian input,
//! and exact symmetric elimination over the rationals for integer matrices.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_TOL: f64 = 1e-9;
const HERMITIAN_CHECK: f64 = 1e-12;
const JACOBI_TARGET: f64 = 1e-13;
const MAX_SWEEPS: usize = 50;
const SINGULAR_DET: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HermitianError {
    #[error("matrix is not square: {rows} rows, row {row} has {len} entries")]
    NotSquare { rows: usize, row: usize, len: usize },
    #[error("entries ({i},{j}) and ({j},{i}) are not conjugate (deviation {deviation:e})")]
    NotHermitian { i: usize, j: usize, deviation: f64 },
    #[error("Jacobi iteration did not converge within {0} sweeps")]
    NonConvergence(usize),
    #[error("conjugating matrix is singular (|det| = {0:e})")]
    SingularP(f64),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
}

/// Dense Hermitian matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn empty() -> Self {
        Self { n: 0, data: Vec::new() }
    }

    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Complex64::zero(); n * n] }
    }

    /// Validates conjugate symmetry to 1e-12 and stores the symmetrized
    /// matrix.
    pub fn new(rows: Vec<Vec<Complex64>>) -> Result<Self, HermitianError> {
        let n = rows.len();
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(HermitianError::NotSquare { rows: n, row: r, len: row.len() });
            }
        }
        for i in 0..n {
            for j in i..n {
                let deviation = (rows[i][j] - rows[j][i].conj()).norm();
                if deviation > HERMITIAN_CHECK {
                    return Err(HermitianError::NotHermitian { i, j, deviation });
                }
            }
        }
        Ok(Self::symmetrize(rows))
    }

    /// Replaces the matrix by (M + M*)/2 without any check.
    pub fn symmetrize(rows: Vec<Vec<Complex64>>) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(rows[i][i].re, 0.0);
            for j in i + 1..n {
                let v = (rows[i][j] + rows[j][i].conj()) * 0.5;
                m.data[i * n + j] = v;
                m.data[j * n + i] = v.conj();
            }
        }
        m
    }

    /// Builds a matrix from its upper triangle; the diagonal's imaginary
    /// parts are discarded, so the result is exactly Hermitian.
    pub fn from_upper(n: usize, mut upper: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(upper(i, i).re, 0.0);
            for j in i + 1..n {
                let v = upper(i, j);
                m.data[i * n + j] = v;
                m.data[j * n + i] = v.conj();
            }
        }
        m
    }

    pub fn from_real_diagonal(d: &[f64]) -> Self {
        Self::from_upper(d.len(), |i, j| if i == j { Complex64::new(d[i], 0.0) } else { Complex64::zero() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|z| z * k).collect() }
    }

    /// True when every entry equals the conjugate of its mirror exactly.
    pub fn is_exactly_hermitian(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == self.get(j, i).conj()))
    }
}

/// Counts of positive, negative and zero eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl Inertia {
    pub fn new(n_plus: usize, n_minus: usize, n_zero: usize) -> Self {
        Self { n_plus, n_minus, n_zero }
    }

    pub fn dim(&self) -> usize {
        self.n_plus + self.n_minus + self.n_zero
    }

    pub fn signature(&self) -> i64 {
        self.n_plus as i64 - self.n_minus as i64
    }

    pub fn nullity(&self) -> i64 {
        self.n_zero as i64
    }
}

/// Eigenvalues by cyclic complex Jacobi rotations, in ascending order.
pub fn eigenvalues(h: &HermitianMatrix) -> Result<Vec<f64>, HermitianError> {
    let n = h.n;
    let norm = h.frobenius_norm();
    let mut a = h.data.clone();
    let target = JACOBI_TARGET * norm;
    let off = |a: &[Complex64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut converged = off(&a) <= target;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(HermitianError::NonConvergence(MAX_SWEEPS));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, n, p, q);
            }
        }
        converged = off(&a) <= target;
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    ev.sort_by(|x, y| x.total_cmp(y));
    Ok(ev)
}

fn rotate(a: &mut [Complex64], n: usize, p: usize, q: usize) {
    let g = a[p * n + q];
    let mag = g.norm();
    if mag == 0.0 {
        return;
    }
    let u = g / mag;
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let tau = (aqq - app) / (2.0 * mag);
    let sgn = if tau >= 0.0 { 1.0 } else { -1.0 };
    let t = sgn / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let upp = Complex64::new(c, 0.0);
    let upq = Complex64::new(s, 0.0);
    let uqp = -u.conj() * s;
    let uqq = u.conj() * c;

    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * upp + akq * uqp;
        a[k * n + q] = akp * upq + akq * uqq;
    }
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = upp.conj() * apk + uqp.conj() * aqk;
        a[q * n + k] = upq.conj() * apk + uqq.conj() * aqk;
    }
    a[p * n + q] = Complex64::zero();
    a[q * n + p] = Complex64::zero();
    a[p * n + p].im = 0.0;
    a[q * n + q].im = 0.0;
}

/// Inertia with eigenvalues counted as zero when |λ| ≤ tol·max(1, ‖H‖).
pub fn inertia(h: &HermitianMatrix, tol: f64) -> Result<Inertia, HermitianError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(HermitianError::BadTolerance(tol));
    }
    let threshold = tol * h.frobenius_norm().max(1.0);
    let mut out = Inertia::default();
    for l in eigenvalues(h)? {
        if l.abs() <= threshold {
            out.n_zero += 1;
        } else if l > 0.0 {
            out.n_plus += 1;
        } else {
            out.n_minus += 1;
        }
    }
    Ok(out)
}

/// Exact inertia of a symmetric integer matrix by symmetric elimination
/// over the rationals. Asymmetric input is symmetrized as (S + Sᵀ)/2.
pub fn inertia_exact_integer(s: &[Vec<i64>]) -> Inertia {
    let n = s.len();
    let two = BigRational::from_integer(BigInt::from(2));
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n).map(|j| BigRational::from_integer(BigInt::from(s[i][j]) + BigInt::from(s[j][i])) / &two).collect()
        })
        .collect();
    let mut out = Inertia::default();

    while !m.is_empty() {
        let k = m.len();
        if let Some(p) = (0..k).find(|&p| !m[p][p].is_zero()) {
            let d = m[p][p].clone();
            if d.is_positive() {
                out.n_plus += 1;
            } else {
                out.n_minus += 1;
            }
            let keep: Vec<usize> = (0..k).filter(|&i| i != p).collect();
            m = keep.iter().map(|&i| keep.iter().map(|&j| &m[i][j] - &m[i][p] * &m[p][j] / &d).collect()).collect();
            continue;
        }
        let pair = (0..k).flat_map(|p| (p + 1..k).map(move |q| (p, q))).find(|&(p, q)| !m[p][q].is_zero());
        let Some((p, q)) = pair else {
            out.n_zero += k;
            break;
        };
        let b = m[p][q].clone();
        out.n_plus += 1;
        out.n_minus += 1;
        let keep: Vec<usize> = (0..k).filter(|&i| i != p && i != q).collect();
        m = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| &m[i][j] - (&m[i][p] * &m[q][j] + &m[i][q] * &m[p][j]) / &b).collect())
            .collect();
    }
    out
}

fn determinant(p: &[Vec<Complex64>]) -> Complex64 {
    let n = p.len();
    let mut a: Vec<Vec<Complex64>> = p.to_vec();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let piv = (col..n).max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm())).unwrap();
        if a[piv][col].norm() == 0.0 {
            return Complex64::zero();
        }
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let d = a[col][col];
        det *= d;
        for r in col + 1..n {
            let f = a[r][col] / d;
            for c in col..n {
                let v = a[col][c];
                a[r][c] -= f * v;
            }
        }
    }
    det
}

/// Inertia of P*·H·P. By Sylvester's law this equals the inertia of H.
pub fn conjugate_inertia_check(h: &HermitianMatrix, p: &[Vec<Complex64>], tol: f64) -> Result<Inertia, HermitianError> {
    let n = h.dim();
    if p.len() != n {
        return Err(HermitianError::DimensionMismatch(n, p.len()));
    }
    if let Some(row) = p.iter().find(|r| r.len() != n) {
        return Err(HermitianError::DimensionMismatch(n, row.len()));
    }
    let det = determinant(p).norm();
    if det <= SINGULAR_DET {
        return Err(HermitianError::SingularP(det));
    }
    let mut hp = vec![vec![Complex64::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            hp[i][j] = (0..n).map(|k| h.get(i, k) * p[k][j]).sum();
        }
    }
    let conj = HermitianMatrix::from_upper(n, |i, j| (0..n).map(|k| p[k][i].conj() * hp[k][j]).sum());
    inertia(&conj, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_inertia() {
        let h = HermitianMatrix::from_real_diagonal(&[2.0, -3.0, 0.0]);
        assert_eq!(inertia(&h, DEFAULT_TOL).unwrap(), Inertia::new(1, 1, 1));
    }

    #[test]
    fn empty_matrix() {
        let h = HermitianMatrix::empty();
        let i = inertia(&h, DEFAULT_TOL).unwrap();
        assert_eq!(i, Inertia::new(0, 0, 0));
        assert_eq!(i.signature(), 0);
        assert_eq!(i.nullity(), 0);
    }

    #[test]
    fn twist_scalar() {
        let h = HermitianMatrix::new(vec![vec![c(16.0, 0.0)]]).unwrap();
        assert_eq!(inertia(&h, DEFAULT_TOL).unwrap(), Inertia::new(1, 0, 0));
    }

    #[test]
    fn torus_node_matrix() {
        // T(2,6) at theta = (1/6, 1/6)
        let w = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
        let one = c(1.0, 0.0);
        let a = -(one - w.conj()) * (one - w.conj()) * (one + w * w);
        let b = -(one - w) * (one - w);
        let h = HermitianMatrix::new(vec![vec![a, b], vec![b.conj(), a]]).unwrap();
        assert_eq!(inertia(&h, DEFAULT_TOL).unwrap(), Inertia::new(1, 0, 1));
    }

    #[test]
    fn rejects_non_hermitian() {
        let r = HermitianMatrix::new(vec![vec![c(1.0, 0.0), c(1.0, 1.0)], vec![c(1.0, 1.0), c(0.0, 0.0)]]);
        assert!(matches!(r, Err(HermitianError::NotHermitian { i: 0, j: 1, .. })));
        let r = HermitianMatrix::new(vec![vec![c(1.0, 0.0)], vec![]]);
        assert!(matches!(r, Err(HermitianError::NotSquare { .. })));
    }

    #[test]
    fn complex_two_by_two() {
        // [[0, i], [-i, 0]] has eigenvalues ±1
        let h = HermitianMatrix::new(vec![vec![c(0.0, 0.0), c(0.0, 1.0)], vec![c(0.0, -1.0), c(0.0, 0.0)]]).unwrap();
        let ev = eigenvalues(&h).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn exact_examples() {
        assert_eq!(inertia_exact_integer(&[vec![-3, 3], vec![3, -3]]), Inertia::new(0, 1, 1));
        assert_eq!(inertia_exact_integer(&vec![vec![0; 3]; 3]), Inertia::new(0, 0, 3));
        let id: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| i64::from(i == j)).collect()).collect();
        assert_eq!(inertia_exact_integer(&id), Inertia::new(4, 0, 0));
        assert_eq!(inertia_exact_integer(&[]), Inertia::new(0, 0, 0));
    }

    #[test]
    fn exact_hyperbolic_block() {
        assert_eq!(inertia_exact_integer(&[vec![0, 2], vec![2, 0]]), Inertia::new(1, 1, 0));
        let s = vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 0]];
        assert_eq!(inertia_exact_integer(&s), Inertia::new(1, 1, 1));
    }

    #[test]
    fn conjugation_examples() {
        let h = HermitianMatrix::from_real_diagonal(&[1.0, -1.0]);
        let id = vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0)]];
        assert_eq!(conjugate_inertia_check(&h, &id, DEFAULT_TOL).unwrap(), Inertia::new(1, 1, 0));
        let h = HermitianMatrix::from_real_diagonal(&[16.0]);
        assert_eq!(conjugate_inertia_check(&h, &[vec![c(3.0, 0.0)]], DEFAULT_TOL).unwrap(), Inertia::new(1, 0, 0));
        let sing = vec![vec![c(1.0, 0.0), c(2.0, 0.0)], vec![c(2.0, 0.0), c(4.0, 0.0)]];
        let h = HermitianMatrix::from_real_diagonal(&[1.0, 1.0]);
        assert!(matches!(conjugate_inertia_check(&h, &sing, DEFAULT_TOL), Err(HermitianError::SingularP(_))));
    }

    #[test]
    fn bad_tolerance() {
        assert!(matches!(inertia(&HermitianMatrix::empty(), 0.0), Err(HermitianError::BadTolerance(_))));
    }

    fn small_int_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..7).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(-4i64..=4, n), n).prop_map(|m| {
                let n = m.len();
                (0..n).map(|i| (0..n).map(|j| if i <= j { m[i][j] } else { m[j][i] }).collect()).collect()
            })
        })
    }

    fn as_hermitian(s: &[Vec<i64>]) -> HermitianMatrix {
        HermitianMatrix::from_upper(s.len(), |i, j| c(s[i][j] as f64, 0.0))
    }

    proptest! {
        #[test]
        fn backends_agree(s in small_int_matrix()) {
            prop_assert_eq!(inertia(&as_hermitian(&s), DEFAULT_TOL).unwrap(), inertia_exact_integer(&s));
        }

        #[test]
        fn low_rank_integer_matrices(
            rows in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 5), 1..3),
            signs in proptest::collection::vec(prop_oneof![Just(-1i64), Just(1i64)], 2),
        ) {
            // S = Σ ± v vᵀ with at most two terms; its nullity is at least 3.
            let n = 5;
            let mut s = vec![vec![0i64; n]; n];
            for (v, sg) in rows.iter().zip(&signs) {
                for i in 0..n { for j in 0..n { s[i][j] += sg * v[i] * v[j]; } }
            }
            let exact = inertia_exact_integer(&s);
            prop_assert!(exact.n_zero >= 3);
            prop_assert_eq!(inertia(&as_hermitian(&s), DEFAULT_TOL).unwrap(), exact);
        }

        #[test]
        fn trace_is_preserved(entries in proptest::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 16)) {
            let h = HermitianMatrix::from_upper(4, |i, j| c(entries[i * 4 + j].0, if i == j { 0.0 } else { entries[i * 4 + j].1 }));
            let trace: f64 = (0..4).map(|i| h.get(i, i).re).sum();
            let ev = eigenvalues(&h).unwrap();
            prop_assert!((ev.iter().sum::<f64>() - trace).abs() < 1e-10);
        }
    }
}
