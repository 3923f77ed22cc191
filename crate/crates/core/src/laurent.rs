//! Multivariable Laurent polynomials with integer coefficients, and
//! quotients of them.
//!
//! Conway functions, Alexander polynomials and the factor `f` of a
//! two-component Conway function all live here. Coefficients are
//! arbitrary-precision; exponents are `i32`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Values whose magnitude is below this fraction of the largest monomial
/// magnitude are treated as zero.
pub const ZERO_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("evaluation point has a zero coordinate (index {0})")]
    ZeroCoordinate(usize),
    #[error("denominator vanishes at the evaluation point")]
    DenominatorVanishes,
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("variable count mismatch: expected {expected}, found {found}")]
    VariableCount { expected: usize, found: usize },
    #[error("coefficient {0} does not fit in a 64-bit integer")]
    CoefficientOverflow(BigInt),
}

/// An exponent vector.
pub type Exponent = Vec<i32>;

/// Integer Laurent polynomial in a fixed number of variables.
///
/// Terms are kept in a map keyed by exponent vector; zero coefficients are
/// never stored, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn monomial(nvars: usize, exp: Exponent, c: impl Into<BigInt>) -> Self {
        assert_eq!(exp.len(), nvars, "exponent length must equal variable count");
        let mut p = Self::zero(nvars);
        p.add_term(exp, c.into());
        p
    }

    /// The variable `t_{var+1}` (zero-based index).
    pub fn var(nvars: usize, var: usize) -> Self {
        let mut exp = vec![0; nvars];
        exp[var] = 1;
        Self::monomial(nvars, exp, 1)
    }

    /// `t_{var+1} - t_{var+1}^{-1}`.
    pub fn var_minus_inverse(nvars: usize, var: usize) -> Self {
        let mut up = vec![0; nvars];
        up[var] = 1;
        let mut down = vec![0; nvars];
        down[var] = -1;
        Self::from_terms(nvars, [(up, BigInt::one()), (down, -BigInt::one())])
    }

    pub fn from_terms<I, C>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length must equal variable count");
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, exp: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[i32]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    /// Constant value if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Leading term under lexicographic order on exponent vectors.
    pub fn leading_term(&self) -> Option<(&Exponent, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect() }
    }

    fn mul_monomial(&self, exp: &[i32], c: &BigInt) -> Self {
        let terms = self.terms.iter().map(|(e, k)| (e.iter().zip(exp).map(|(a, b)| a + b).collect(), k * c)).collect();
        Self { nvars: self.nvars, terms }
    }

    /// Value at `point` together with the largest monomial magnitude, the
    /// scale used by zero tests.
    pub fn eval_scaled(&self, point: &[Complex64]) -> Result<(Complex64, f64), LaurentError> {
        if point.len() != self.nvars {
            return Err(LaurentError::VariableCount { expected: self.nvars, found: point.len() });
        }
        if let Some(j) = point.iter().position(|z| z.norm() == 0.0) {
            return Err(LaurentError::ZeroCoordinate(j));
        }
        let mut value = Complex64::new(0.0, 0.0);
        let mut scale = 0.0f64;
        for (e, c) in &self.terms {
            let mut m = Complex64::new(c.to_f64().unwrap_or(f64::INFINITY), 0.0);
            for (z, &k) in point.iter().zip(e) {
                m *= z.powi(k);
            }
            scale = scale.max(m.norm());
            value += m;
        }
        Ok((value, scale))
    }

    pub fn eval(&self, point: &[Complex64]) -> Result<Complex64, LaurentError> {
        self.eval_scaled(point).map(|(v, _)| v)
    }

    /// True when the value at `point` is zero up to [`ZERO_TOL`] relative to
    /// the largest monomial.
    pub fn vanishes_at(&self, point: &[Complex64]) -> Result<bool, LaurentError> {
        let (v, scale) = self.eval_scaled(point)?;
        Ok(v.norm() <= ZERO_TOL * scale)
    }

    /// Formal partial derivative with respect to the zero-based variable `var`.
    pub fn partial_derivative(&self, var: usize) -> Self {
        assert!(var < self.nvars, "variable index out of range");
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e[var];
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.add_term(e2, c * BigInt::from(k));
        }
        out
    }

    fn exponent_bounds(&self) -> Option<(Vec<i32>, Vec<i32>)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for e in it {
            for j in 0..self.nvars {
                lo[j] = lo[j].min(e[j]);
                hi[j] = hi[j].max(e[j]);
            }
        }
        Some((lo, hi))
    }

    /// Exact quotient `self / divisor` in the Laurent ring.
    ///
    /// Leading terms are eliminated under lexicographic order. A quotient
    /// monomial outside the box allowed by the Newton polytopes of the
    /// operands, or a non-integral coefficient, means no exact quotient
    /// exists.
    pub fn divide_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        if divisor.nvars != self.nvars {
            return Err(LaurentError::VariableCount { expected: self.nvars, found: divisor.nvars });
        }
        if divisor.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let (plo, phi) = self.exponent_bounds().unwrap();
        let (qlo, qhi) = divisor.exponent_bounds().unwrap();
        let lo: Vec<i32> = plo.iter().zip(&qlo).map(|(a, b)| a - b).collect();
        let hi: Vec<i32> = phi.iter().zip(&qhi).map(|(a, b)| a - b).collect();
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Err(LaurentError::NotDivisible);
        }

        let (qe, qc) = divisor.leading_term().unwrap();
        let (qe, qc) = (qe.clone(), qc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((re, rc)) = rem.leading_term() {
            let e: Vec<i32> = re.iter().zip(&qe).map(|(a, b)| a - b).collect();
            let in_box = e.iter().zip(lo.iter().zip(&hi)).all(|(x, (l, h))| l <= x && x <= h);
            if !in_box {
                return Err(LaurentError::NotDivisible);
            }
            let (c, r) = rc.div_rem(&qc);
            if !r.is_zero() {
                return Err(LaurentError::NotDivisible);
            }
            let step = divisor.mul_monomial(&e, &c);
            quot.add_term(e, c);
            rem = &rem - &step;
        }
        Ok(quot)
    }

    pub fn to_records(&self) -> Result<Vec<TermRecord>, LaurentError> {
        self.terms
            .iter()
            .map(|(e, c)| {
                let coeff = c.to_i64().ok_or_else(|| LaurentError::CoefficientOverflow(c.clone()))?;
                Ok(TermRecord { coeff, exp: e.clone() })
            })
            .collect()
    }

    pub fn from_records(nvars: usize, records: &[TermRecord]) -> Result<Self, LaurentError> {
        let mut p = Self::zero(nvars);
        for r in records {
            if r.exp.len() != nvars {
                return Err(LaurentError::VariableCount { expected: nvars, found: r.exp.len() });
            }
            p.add_term(r.exp.clone(), BigInt::from(r.coeff));
        }
        Ok(p)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(j, &k)| if k == 1 { format!("t{}", j + 1) } else { format!("t{}^{}", j + 1, k) })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = LaurentPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

/// Wire form of one polynomial term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coeff: i64,
    pub exp: Vec<i32>,
}

/// Wire form of a rational function; a missing denominator means 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalRecord {
    pub num: Vec<TermRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub den: Option<Vec<TermRecord>>,
}

/// Quotient of two Laurent polynomials. Not reduced; equality is by
/// cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, LaurentError> {
        if num.nvars != den.nvars {
            return Err(LaurentError::VariableCount { expected: num.nvars, found: den.nvars });
        }
        if den.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        Ok(Self { num, den })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let den = LaurentPoly::one(p.nvars);
        Self { num: p, den }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The underlying Laurent polynomial, when the denominator divides the
    /// numerator exactly.
    pub fn as_polynomial(&self) -> Result<LaurentPoly, LaurentError> {
        self.num.divide_exact(&self.den)
    }

    pub fn eval(&self, point: &[Complex64]) -> Result<Complex64, LaurentError> {
        let (d, dscale) = self.den.eval_scaled(point)?;
        if d.norm() <= ZERO_TOL * dscale {
            return Err(LaurentError::DenominatorVanishes);
        }
        let n = self.num.eval(point)?;
        Ok(n / d)
    }

    /// Quotient-rule derivative with respect to the zero-based variable `var`.
    pub fn partial_derivative(&self, var: usize) -> Self {
        let dn = self.num.partial_derivative(var);
        let dd = self.den.partial_derivative(var);
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        let den = &self.den * &self.den;
        Self { num, den }
    }

    pub fn to_record(&self) -> Result<RationalRecord, LaurentError> {
        let den = if self.den == LaurentPoly::one(self.nvars()) { None } else { Some(self.den.to_records()?) };
        Ok(RationalRecord { num: self.num.to_records()?, den })
    }

    pub fn from_record(nvars: usize, rec: &RationalRecord) -> Result<Self, LaurentError> {
        let num = LaurentPoly::from_records(nvars, &rec.num)?;
        let den = match &rec.den {
            Some(d) => LaurentPoly::from_records(nvars, d)?,
            None => LaurentPoly::one(nvars),
        };
        Self::new(num, den)
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.nvars() == other.nvars() && &self.num * &other.den == &other.num * &self.den
    }
}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}
