//! Colored links given by generalized Seifert matrices.
//!
//! A [`ColoredLink`] carries the matrices `A^ε` of a C-complex, pairwise
//! linking numbers, optional Conway data, and explicit sublink data. From
//! these it evaluates the Hermitian matrix `H(ω)` and the signature and
//! nullity on the open torus.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angle::{Angle, TorusPoint};
use crate::hermitian::{inertia, inertia_exact_integer, HermitianError, HermitianMatrix, Inertia};
use crate::laurent::{LaurentError, RationalFunction, RationalRecord};

#[derive(Debug, Error)]
pub enum LinkError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("A^{neg} is not the transpose of A^{pos} (first mismatch at ({row},{col}))")]
    SymmetryViolation { pos: String, neg: String, row: usize, col: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error(
        "coordinate {0} of the point equals 1; the signature is not defined there (use the Torres prediction instead)"
    )]
    BoundaryPoint(usize),
    #[error("point has {found} coordinates, link has {expected} colors")]
    WrongPointLength { expected: usize, found: usize },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Hermitian(#[from] HermitianError),
}

/// A vector of signs ±1, one per color.
pub type SignVector = Vec<i8>;

pub fn parse_sign_string(s: &str) -> Result<SignVector, LinkError> {
    s.chars()
        .map(|c| match c {
            '+' => Ok(1),
            '-' | '\u{2212}' => Ok(-1),
            _ => Err(LinkError::Schema(format!("invalid sign character '{c}' in key '{s}'"))),
        })
        .collect()
}

pub fn sign_string(eps: &[i8]) -> String {
    eps.iter().map(|&e| if e > 0 { '+' } else { '-' }).collect()
}

/// All sign vectors of length `mu`, in lexicographic order with − before +.
pub fn all_sign_vectors(mu: usize) -> Vec<SignVector> {
    (0..1usize << mu)
        .map(|bits| (0..mu).map(|j| if bits >> (mu - 1 - j) & 1 == 1 { 1 } else { -1 }).collect())
        .collect()
}

pub type IntMatrix = Vec<Vec<i64>>;

fn transpose(m: &IntMatrix, n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect()
}

/// The generalized Seifert matrices `A^ε` of one C-complex basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertSystem {
    mu: usize,
    n: usize,
    matrices: BTreeMap<SignVector, IntMatrix>,
}

impl SeifertSystem {
    /// Validates completeness, shapes and the rule `A^{−ε} = (A^ε)ᵀ`.
    pub fn new(mu: usize, matrices: BTreeMap<SignVector, IntMatrix>) -> Result<Self, LinkError> {
        if mu == 0 {
            return Err(LinkError::Schema("mu must be at least 1".into()));
        }
        let all = all_sign_vectors(mu);
        for eps in &all {
            if !matrices.contains_key(eps) {
                return Err(LinkError::Schema(format!("missing Seifert matrix for '{}'", sign_string(eps))));
            }
        }
        if let Some(extra) = matrices.keys().find(|k| k.len() != mu) {
            return Err(LinkError::Schema(format!("sign key '{}' does not have length {mu}", sign_string(extra))));
        }
        let n = matrices.values().next().map(Vec::len).unwrap_or(0);
        for (eps, m) in &matrices {
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return Err(LinkError::DimensionMismatch(format!("matrix '{}' is not {n}x{n}", sign_string(eps))));
            }
        }
        for eps in &all {
            let neg: SignVector = eps.iter().map(|e| -e).collect();
            let a = &matrices[eps];
            let b = &matrices[&neg];
            for i in 0..n {
                for j in 0..n {
                    if b[i][j] != a[j][i] {
                        return Err(LinkError::SymmetryViolation {
                            pos: sign_string(eps),
                            neg: sign_string(&neg),
                            row: i,
                            col: j,
                        });
                    }
                }
            }
        }
        Ok(Self { mu, n, matrices })
    }

    /// One-colored system from a classical Seifert matrix `A`, stored as
    /// `A^{−} = A` and `A^{+} = Aᵀ`.
    pub fn from_knot_matrix(a: IntMatrix) -> Result<Self, LinkError> {
        let n = a.len();
        if a.iter().any(|r| r.len() != n) {
            return Err(LinkError::DimensionMismatch(format!("Seifert matrix is not {n}x{n}")));
        }
        let at = transpose(&a, n);
        Self::new(1, BTreeMap::from([(vec![-1], a), (vec![1], at)]))
    }

    /// Every `A^ε` equal to the zero n×n matrix.
    pub fn zero(mu: usize, n: usize) -> Self {
        let matrices = all_sign_vectors(mu).into_iter().map(|e| (e, vec![vec![0; n]; n])).collect();
        Self { mu, n, matrices }
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn matrix(&self, eps: &[i8]) -> &IntMatrix {
        &self.matrices[eps]
    }

    pub fn matrices(&self) -> &BTreeMap<SignVector, IntMatrix> {
        &self.matrices
    }
}

/// A component, named by its (1-based) color and index within the color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentId {
    pub color: usize,
    pub index: usize,
}

impl ComponentId {
    pub fn new(color: usize, index: usize) -> Self {
        Self { color, index }
    }
}

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.color, self.index)
    }
}

impl FromStr for ComponentId {
    type Err = LinkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || LinkError::Schema(format!("invalid component id '{s}' (expected 'color.index')"));
        let (c, i) = s.split_once('.').ok_or_else(err)?;
        Ok(Self { color: c.trim().parse().map_err(|_| err())?, index: i.trim().parse().map_err(|_| err())? })
    }
}

/// A μ-colored link presented by C-complex data.
#[derive(Debug, Clone)]
pub struct ColoredLink {
    mu: usize,
    components_per_color: Vec<usize>,
    linking: BTreeMap<(ComponentId, ComponentId), i64>,
    seifert: SeifertSystem,
    conway: Option<RationalFunction>,
    rank_alexander: Option<u64>,
    sublinks: BTreeMap<Vec<usize>, ColoredLink>,
    underlying_oriented: Option<Box<ColoredLink>>,
}

impl ColoredLink {
    /// Builds a link, validating component ids and linking symmetry. Pairs
    /// that are not listed have linking number 0.
    pub fn new(
        components_per_color: Vec<usize>,
        linking: &[(ComponentId, ComponentId, i64)],
        seifert: SeifertSystem,
    ) -> Result<Self, LinkError> {
        let mu = seifert.mu();
        if components_per_color.len() != mu {
            return Err(LinkError::DimensionMismatch(format!(
                "components_per_color has {} entries, mu is {mu}",
                components_per_color.len()
            )));
        }
        if components_per_color.contains(&0) {
            return Err(LinkError::Schema("every color needs at least one component".into()));
        }
        let mut map = BTreeMap::new();
        for &(a, b, lk) in linking {
            for id in [a, b] {
                if id.color == 0 || id.color > mu || id.index == 0 || id.index > components_per_color[id.color - 1] {
                    return Err(LinkError::Schema(format!("unknown component '{id}'")));
                }
            }
            if a == b {
                return Err(LinkError::Schema(format!("self-linking entry for '{a}'")));
            }
            for key in [(a, b), (b, a)] {
                if let Some(&old) = map.get(&key) {
                    if old != lk {
                        return Err(LinkError::Schema(format!("conflicting linking numbers for '{a}' and '{b}'")));
                    }
                }
                map.insert(key, lk);
            }
        }
        Ok(Self {
            mu,
            components_per_color,
            linking: map,
            seifert,
            conway: None,
            rank_alexander: None,
            sublinks: BTreeMap::new(),
            underlying_oriented: None,
        })
    }

    pub fn with_conway(mut self, conway: RationalFunction) -> Result<Self, LinkError> {
        if conway.nvars() != self.mu {
            return Err(LinkError::DimensionMismatch(format!(
                "Conway function has {} variables, mu is {}",
                conway.nvars(),
                self.mu
            )));
        }
        self.conway = Some(conway);
        Ok(self)
    }

    pub fn with_rank_alexander(mut self, rank: u64) -> Self {
        self.rank_alexander = Some(rank);
        self
    }

    /// Attaches data for the sublink made of the given 1-based colors.
    pub fn with_sublink(mut self, colors: Vec<usize>, sub: ColoredLink) -> Result<Self, LinkError> {
        if colors.is_empty() || colors.windows(2).any(|w| w[0] >= w[1]) || colors.iter().any(|&c| c == 0 || c > self.mu)
        {
            return Err(LinkError::Schema(format!("invalid color subset {colors:?}")));
        }
        if sub.mu != colors.len() {
            return Err(LinkError::DimensionMismatch(format!("sublink for colors {colors:?} has mu {}", sub.mu)));
        }
        self.sublinks.insert(colors, sub);
        Ok(self)
    }

    pub fn with_underlying(mut self, oriented: ColoredLink) -> Result<Self, LinkError> {
        if oriented.mu != 1 {
            return Err(LinkError::Schema("underlying oriented link must have mu = 1".into()));
        }
        self.underlying_oriented = Some(Box::new(oriented));
        Ok(self)
    }

    pub fn without_conway(mut self) -> Self {
        self.conway = None;
        self
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn components_per_color(&self) -> &[usize] {
        &self.components_per_color
    }

    pub fn component_count(&self) -> usize {
        self.components_per_color.iter().sum()
    }

    /// Components ordered by color, then index.
    pub fn components(&self) -> Vec<ComponentId> {
        self.components_per_color
            .iter()
            .enumerate()
            .flat_map(|(c, &k)| (1..=k).map(move |i| ComponentId::new(c + 1, i)))
            .collect()
    }

    pub fn lk(&self, a: ComponentId, b: ComponentId) -> i64 {
        self.linking.get(&(a, b)).copied().unwrap_or(0)
    }

    /// Total linking number between two colors.
    pub fn color_lk(&self, c1: usize, c2: usize) -> i64 {
        let comps = self.components();
        comps
            .iter()
            .filter(|a| a.color == c1)
            .flat_map(|a| comps.iter().filter(|b| b.color == c2).map(move |b| (*a, *b)))
            .map(|(a, b)| self.lk(a, b))
            .sum()
    }

    /// ℓ = (lk(L₁, L₂), …, lk(L₁, L_μ)).
    pub fn ell(&self) -> Vec<i64> {
        (2..=self.mu).map(|j| self.color_lk(1, j)).collect()
    }

    pub fn seifert(&self) -> &SeifertSystem {
        &self.seifert
    }

    pub fn conway(&self) -> Option<&RationalFunction> {
        self.conway.as_ref()
    }

    /// User-supplied rank of the Alexander module, if any.
    pub fn rank_alexander_supplied(&self) -> Option<u64> {
        self.rank_alexander
    }

    pub fn rank_alexander(&self) -> i64 {
        self.rank_alexander.unwrap_or(0) as i64
    }

    pub fn sublinks(&self) -> &BTreeMap<Vec<usize>, ColoredLink> {
        &self.sublinks
    }

    pub fn sublink(&self, colors: &[usize]) -> Option<&ColoredLink> {
        self.sublinks.get(colors)
    }

    /// Data for L′ = L ∖ L₁.
    pub fn sublink_prime(&self) -> Option<&ColoredLink> {
        let key: Vec<usize> = (2..=self.mu).collect();
        self.sublinks.get(&key)
    }

    pub fn underlying_oriented(&self) -> Option<&ColoredLink> {
        self.underlying_oriented.as_deref()
    }

    /// The weights Π_j (1 − ω̄_j^{ε_j}) paired with their matrices A^ε.
    fn weighted_terms(&self, omega: &TorusPoint) -> Result<Vec<(Complex64, &IntMatrix)>, LinkError> {
        if omega.len() != self.mu {
            return Err(LinkError::WrongPointLength { expected: self.mu, found: omega.len() });
        }
        // factor[j][0] for ε_j = −1, factor[j][1] for ε_j = +1
        let factors: Vec<[Complex64; 2]> =
            omega.angles().iter().map(|a| [one_minus_unit(a, 1.0), one_minus_unit(a, -1.0)]).collect();
        Ok(self
            .seifert
            .matrices()
            .iter()
            .map(|(eps, m)| {
                let w = eps.iter().zip(&factors).map(|(&e, f)| if e > 0 { f[1] } else { f[0] }).product::<Complex64>();
                (w, m)
            })
            .collect())
    }

    /// H(ω) = Σ_ε Π_j (1 − ω̄_j^{ε_j}) A^ε. Defined at every point.
    pub fn assemble_h(&self, omega: &TorusPoint) -> Result<HermitianMatrix, LinkError> {
        let weighted = self.weighted_terms(omega)?;
        Ok(HermitianMatrix::from_upper(self.seifert.dim(), |i, j| {
            weighted.iter().filter(|(_, m)| m[i][j] != 0).map(|(w, m)| w * m[i][j] as f64).sum()
        }))
    }

    /// Σ_ε |Π_j (1 − ω̄_j^{ε_j})|·‖A^ε‖_F, the magnitude of the terms summed
    /// into H(ω).
    pub fn term_scale(&self, omega: &TorusPoint) -> Result<f64, LinkError> {
        Ok(self
            .weighted_terms(omega)?
            .iter()
            .map(|(w, m)| w.norm() * m.iter().flatten().map(|&x| (x * x) as f64).sum::<f64>().sqrt())
            .sum())
    }

    /// Inertia of H(ω) on the open torus.
    ///
    /// H is divided by [`ColoredLink::term_scale`] first, so the zero
    /// threshold tracks the size of the summands even when H(ω) is tiny
    /// near the boundary, while exact cancellations stay below it.
    pub fn inertia_at(&self, omega: &TorusPoint, tol: f64) -> Result<Inertia, LinkError> {
        if omega.len() != self.mu {
            return Err(LinkError::WrongPointLength { expected: self.mu, found: omega.len() });
        }
        if let Some(j) = omega.angles().iter().position(|a| a.to_f64() == 0.0) {
            return Err(LinkError::BoundaryPoint(j + 1));
        }
        let h = self.assemble_h(omega)?;
        let scale = self.term_scale(omega)?;
        let h = if scale > 0.0 { h.scaled(1.0 / scale) } else { h };
        Ok(inertia(&h, tol)?)
    }

    /// (σ_L(ω), η_L(ω)).
    pub fn signature_nullity(&self, omega: &TorusPoint, tol: f64) -> Result<(i64, i64), LinkError> {
        let i = self.inertia_at(omega, tol)?;
        Ok((i.signature(), i.nullity()))
    }

    /// Linking matrix of the link with component orientations `eps`, one
    /// sign per component in [`ColoredLink::components`] order.
    pub fn linking_matrix(&self, eps: &[i8]) -> Result<IntMatrix, LinkError> {
        let comps = self.components();
        if eps.len() != comps.len() {
            return Err(LinkError::DimensionMismatch(format!(
                "{} signs given for {} components",
                eps.len(),
                comps.len()
            )));
        }
        let m = comps.len();
        let mut out = vec![vec![0i64; m]; m];
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    out[i][j] = i64::from(eps[i] * eps[j]) * self.lk(comps[i], comps[j]);
                }
            }
            out[i][i] = -(0..m).filter(|&k| k != i).map(|k| out[i][k]).sum::<i64>();
        }
        Ok(out)
    }

    /// Linking matrix with one sign per color, expanded to components.
    pub fn linking_matrix_colored(&self, eps: &[i8]) -> Result<IntMatrix, LinkError> {
        if eps.len() != self.mu {
            return Err(LinkError::DimensionMismatch(format!("{} signs given for {} colors", eps.len(), self.mu)));
        }
        let expanded: Vec<i8> = self.components().iter().map(|c| eps[c.color - 1]).collect();
        self.linking_matrix(&expanded)
    }

    /// Exact inertia of the colored linking matrix.
    pub fn linking_inertia(&self, eps: &[i8]) -> Result<Inertia, LinkError> {
        Ok(inertia_exact_integer(&self.linking_matrix_colored(eps)?))
    }

    /// Σ_{i<j} ε_i ε_j lk(L_i, L_j) over pairs of colors.
    pub fn signed_color_linking_sum(&self, eps: &[i8]) -> i64 {
        let mut s = 0;
        for i in 1..=self.mu {
            for j in i + 1..=self.mu {
                s += i64::from(eps[i - 1] * eps[j - 1]) * self.color_lk(i, j);
            }
        }
        s
    }

    pub fn to_doc(&self) -> Result<LinkDoc, LinkError> {
        let comps = self.components();
        let mut linking = Vec::new();
        for (i, a) in comps.iter().enumerate() {
            for b in &comps[i + 1..] {
                let lk = self.lk(*a, *b);
                if lk != 0 {
                    linking.push(LinkingRecord { a: a.to_string(), b: b.to_string(), lk });
                }
            }
        }
        let seifert = self.seifert.matrices().iter().map(|(e, m)| (sign_string(e), m.clone())).collect();
        let sublinks = if self.sublinks.is_empty() {
            None
        } else {
            let mut out = BTreeMap::new();
            for (k, v) in &self.sublinks {
                let key = k.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
                out.insert(key, v.to_doc()?);
            }
            Some(out)
        };
        Ok(LinkDoc {
            mu: self.mu,
            components_per_color: self.components_per_color.clone(),
            linking,
            seifert,
            conway: self.conway.as_ref().map(RationalFunction::to_record).transpose()?,
            rank_alexander: self.rank_alexander,
            sublinks,
            underlying_oriented: self.underlying_oriented.as_ref().map(|u| u.to_doc().map(Box::new)).transpose()?,
        })
    }

    pub fn from_doc(doc: &LinkDoc) -> Result<Self, LinkError> {
        let mut matrices = BTreeMap::new();
        for (k, m) in &doc.seifert {
            let eps = parse_sign_string(k)?;
            if matrices.insert(eps, m.clone()).is_some() {
                return Err(LinkError::Schema(format!("duplicate Seifert key '{k}'")));
            }
        }
        let seifert = SeifertSystem::new(doc.mu, matrices)?;
        let linking = doc
            .linking
            .iter()
            .map(|r| Ok((r.a.parse()?, r.b.parse()?, r.lk)))
            .collect::<Result<Vec<_>, LinkError>>()?;
        let mut link = ColoredLink::new(doc.components_per_color.clone(), &linking, seifert)?;
        if let Some(c) = &doc.conway {
            link = link.with_conway(RationalFunction::from_record(doc.mu, c)?)?;
        }
        link.rank_alexander = doc.rank_alexander;
        if let Some(subs) = &doc.sublinks {
            for (k, v) in subs {
                let colors = k
                    .split(',')
                    .map(|s| s.trim().parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| LinkError::Schema(format!("invalid sublink key '{k}'")))?;
                link = link.with_sublink(colors, Self::from_doc(v)?)?;
            }
        }
        if let Some(u) = &doc.underlying_oriented {
            link = link.with_underlying(Self::from_doc(u)?)?;
        }
        Ok(link)
    }

    pub fn to_json(&self) -> Result<String, LinkError> {
        Ok(serde_json::to_string_pretty(&self.to_doc()?)?)
    }
}

/// Parses and validates a link document.
pub fn parse_link(text: &str) -> Result<ColoredLink, LinkError> {
    let doc: LinkDoc = serde_json::from_str(text).map_err(|e| {
        if e.is_data() {
            LinkError::Schema(e.to_string())
        } else {
            LinkError::Json(e)
        }
    })?;
    ColoredLink::from_doc(&doc)
}

/// 1 − exp(2πi·s·θ), accurate for θ near 0 or 1.
fn one_minus_unit(a: &Angle, s: f64) -> Complex64 {
    let t = signed_angle(a) * s;
    let phi = std::f64::consts::PI * t;
    // 1 − e^{2iφ} = −2i sin φ e^{iφ}
    Complex64::new(0.0, -2.0 * phi.sin()) * Complex64::from_polar(1.0, phi)
}

/// Representative of θ in (−1/2, 1/2], computed exactly for rationals.
pub(crate) fn signed_angle(a: &Angle) -> f64 {
    use num_traits::ToPrimitive;
    match a {
        Angle::Exact(r) => {
            let half = num_rational::Rational64::new(1, 2);
            let v = if *r > half { *r - 1 } else { *r };
            v.to_f64().unwrap_or(f64::NAN)
        }
        Angle::Approx(x) => {
            if *x > 0.5 {
                x - 1.0
            } else {
                *x
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkingRecord {
    pub a: String,
    pub b: String,
    pub lk: i64,
}

/// Wire form of a link file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkDoc {
    pub mu: usize,
    pub components_per_color: Vec<usize>,
    #[serde(default)]
    pub linking: Vec<LinkingRecord>,
    pub seifert: BTreeMap<String, IntMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conway: Option<RationalRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_alexander: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sublinks: Option<BTreeMap<String, LinkDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub underlying_oriented: Option<Box<LinkDoc>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::DEFAULT_TOL;

    fn twist(k: i64) -> ColoredLink {
        let m = all_sign_vectors(2).into_iter().map(|e| (e, vec![vec![k]])).collect();
        ColoredLink::new(vec![1, 1], &[], SeifertSystem::new(2, m).unwrap()).unwrap()
    }

    fn pt(pairs: &[(i64, i64)]) -> TorusPoint {
        TorusPoint::exact(pairs).unwrap()
    }

    #[test]
    fn sign_vectors() {
        assert_eq!(all_sign_vectors(1), vec![vec![-1], vec![1]]);
        assert_eq!(all_sign_vectors(2).len(), 4);
        assert_eq!(parse_sign_string("+\u{2212}").unwrap(), vec![1, -1]);
        assert_eq!(sign_string(&[1, -1]), "+-");
        assert!(parse_sign_string("+x").is_err());
    }

    #[test]
    fn twist_matrix_value() {
        let h = twist(2).assemble_h(&pt(&[(1, 4), (1, 2)])).unwrap();
        assert_eq!(h.dim(), 1);
        assert!((h.get(0, 0).re - 16.0).abs() < 1e-12);
    }

    #[test]
    fn twist_signature() {
        let p = pt(&[(1, 4), (1, 2)]);
        assert_eq!(twist(2).signature_nullity(&p, DEFAULT_TOL).unwrap(), (1, 0));
        assert_eq!(twist(0).signature_nullity(&p, DEFAULT_TOL).unwrap(), (0, 1));
        assert_eq!(twist(-3).signature_nullity(&p, DEFAULT_TOL).unwrap(), (-1, 0));
    }

    #[test]
    fn matrix_vanishes_at_origin() {
        let h = twist(5).assemble_h(&pt(&[(0, 1), (0, 1)])).unwrap();
        assert_eq!(h.frobenius_norm(), 0.0);
    }

    #[test]
    fn boundary_point_rejected() {
        let r = twist(1).signature_nullity(&pt(&[(1, 3), (0, 1)]), DEFAULT_TOL);
        assert!(matches!(r, Err(LinkError::BoundaryPoint(2))));
        let r = twist(1).signature_nullity(&pt(&[(1, 3)]), DEFAULT_TOL);
        assert!(matches!(r, Err(LinkError::WrongPointLength { .. })));
    }

    #[test]
    fn knot_reduces_to_levine_tristram() {
        // trefoil
        let a = vec![vec![-1, 1], vec![0, -1]];
        let k = ColoredLink::new(vec![1], &[], SeifertSystem::from_knot_matrix(a.clone()).unwrap()).unwrap();
        for q in 3..30 {
            for p in 1..q {
                let w = pt(&[(p, q)]);
                let u = w.angle(0).unit();
                let one = Complex64::new(1.0, 0.0);
                let h = HermitianMatrix::from_upper(2, |i, j| {
                    (one - u) * a[i][j] as f64 + (one - u.conj()) * a[j][i] as f64
                });
                let expected = inertia(&h, DEFAULT_TOL).unwrap();
                assert_eq!(k.inertia_at(&w, DEFAULT_TOL).unwrap(), expected, "theta={p}/{q}");
            }
        }
    }

    #[test]
    fn linking_matrices() {
        let s = SeifertSystem::zero(2, 0);
        let l = ColoredLink::new(vec![1, 1], &[(ComponentId::new(1, 1), ComponentId::new(2, 1), 3)], s).unwrap();
        assert_eq!(l.linking_matrix(&[1, 1]).unwrap(), vec![vec![-3, 3], vec![3, -3]]);
        assert_eq!(l.linking_matrix(&[1, -1]).unwrap(), vec![vec![3, -3], vec![-3, 3]]);
        assert_eq!(l.linking_inertia(&[1, 1]).unwrap(), Inertia::new(0, 1, 1));
        assert_eq!(l.ell(), vec![3]);
        assert_eq!(l.signed_color_linking_sum(&[1, -1]), -3);
        assert_eq!(twist(2).linking_matrix(&[1, 1]).unwrap(), vec![vec![0, 0], vec![0, 0]]);
    }

    #[test]
    fn missing_key_is_schema_error() {
        let text = r#"{"mu":2,"components_per_color":[1,1],"seifert":{"++":[[1]],"--":[[1]],"+-":[[1]]}}"#;
        assert!(matches!(parse_link(text), Err(LinkError::Schema(_))));
    }

    #[test]
    fn symmetry_violation_names_sign() {
        let text = r#"{"mu":1,"components_per_color":[1],"seifert":{"+":[[1]],"-":[[2]]}}"#;
        match parse_link(text) {
            Err(e @ LinkError::SymmetryViolation { .. }) => {
                let msg = e.to_string();
                assert!(msg.contains("A^-") || msg.contains("A^+"), "{msg}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn dimension_mismatch() {
        let text = r#"{"mu":1,"components_per_color":[1],"seifert":{"+":[[1]],"-":[[1,0],[0,1]]}}"#;
        assert!(matches!(parse_link(text), Err(LinkError::DimensionMismatch(_))));
        let text = r#"{"mu":1,"components_per_color":[1,1],"seifert":{"+":[],"-":[]}}"#;
        assert!(matches!(parse_link(text), Err(LinkError::DimensionMismatch(_))));
    }

    #[test]
    fn bad_json() {
        assert!(matches!(parse_link("{"), Err(LinkError::Json(_))));
        assert!(matches!(parse_link(r#"{"mu":1}"#), Err(LinkError::Schema(_))));
    }

    #[test]
    fn json_round_trip() {
        let l = twist(2);
        let back = parse_link(&l.to_json().unwrap()).unwrap();
        assert_eq!(back.seifert(), l.seifert());
        assert_eq!(back.components_per_color(), l.components_per_color());
    }

    #[test]
    fn unicode_minus_accepted() {
        let text = "{\"mu\":2,\"components_per_color\":[1,1],\"seifert\":{\"++\":[[2]],\"\u{2212}\u{2212}\":[[2]],\"+\u{2212}\":[[2]],\"\u{2212}+\":[[2]]}}";
        let l = parse_link(text).unwrap();
        assert_eq!(l.seifert().matrix(&[-1, -1]), &vec![vec![2]]);
    }

    #[test]
    fn conjugation_symmetry() {
        let l = twist(-2);
        let w = pt(&[(2, 7), (3, 5)]);
        assert_eq!(l.signature_nullity(&w, DEFAULT_TOL).unwrap(), l.signature_nullity(&w.conj(), DEFAULT_TOL).unwrap());
    }
}
