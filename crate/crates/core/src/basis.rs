//! Function families: monomials, monic classical orthogonal polynomials,
//! their weight-dressed orthonormal wave functions, and linear combinations
//! of these.
//!
//! Polynomials are always evaluated through their three-term recurrence.
//! For monic polynomials the recurrence reads
//!
//! ```text
//! p_{k+1}(x) = (x - a_k) p_k(x) - b_k p_{k-1}(x),   p_0 = 1,  p_{-1} = 0
//! ```
//!
//! and the squared norms follow from `h_k = b_k h_{k-1}` with `h_0` the total
//! mass of the weight.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// Highest polynomial degree accepted in a member descriptor.
pub const MAX_DEGREE: usize = 30;

/// Integration domain of a function set or a quadrature rule.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    /// Finite interval `[a, b]`.
    Interval { a: f64, b: f64 },
    /// `[0, ∞)`.
    HalfLine,
    /// `(-∞, ∞)`.
    RealLine,
}

impl Domain {
    pub fn unit() -> Self {
        Domain::Interval { a: 0.0, b: 1.0 }
    }

    pub fn symmetric() -> Self {
        Domain::Interval { a: -1.0, b: 1.0 }
    }

    pub fn contains(&self, x: f64) -> bool {
        if !x.is_finite() {
            return false;
        }
        match *self {
            Domain::Interval { a, b } => a <= x && x <= b,
            Domain::HalfLine => x >= 0.0,
            Domain::RealLine => true,
        }
    }

    /// True if every point of `other` is also in `self`.
    pub fn covers(&self, other: &Domain) -> bool {
        match (*self, *other) {
            (Domain::RealLine, _) => true,
            (Domain::HalfLine, Domain::HalfLine) => true,
            (Domain::HalfLine, Domain::Interval { a, .. }) => a >= 0.0,
            (Domain::Interval { a, b }, Domain::Interval { a: c, b: d }) => a <= c && d <= b,
            _ => false,
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if let Domain::Interval { a, b } = *self {
            if !(a.is_finite() && b.is_finite() && a < b) {
                return Err(Error::InvalidSet(format!("degenerate interval [{a}, {b}]")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Interval { a, b } => write!(f, "[{a}, {b}]"),
            Domain::HalfLine => write!(f, "[0, inf)"),
            Domain::RealLine => write!(f, "(-inf, inf)"),
        }
    }
}

/// Measure against which overlaps are taken: `∫ f(x) w(x) dx`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    /// Plain `dx`.
    #[default]
    Lebesgue,
    /// `exp(-x²) dx` on the real line.
    Gaussian,
    /// `exp(-x) dx` on the half line.
    Exponential,
}

impl Measure {
    pub fn density(self, x: f64) -> f64 {
        match self {
            Measure::Lebesgue => 1.0,
            Measure::Gaussian => (-x * x).exp(),
            Measure::Exponential => (-x).exp(),
        }
    }

    pub fn is_weighted(self) -> bool {
        self != Measure::Lebesgue
    }

    fn natural_domain(self) -> Option<Domain> {
        match self {
            Measure::Lebesgue => None,
            Measure::Gaussian => Some(Domain::RealLine),
            Measure::Exponential => Some(Domain::HalfLine),
        }
    }
}

/// Classical orthogonal polynomial families in monic normalisation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrthoFamily {
    /// Weight 1 on `[-1, 1]`.
    Legendre,
    /// Weight `exp(-x²)` on the real line.
    Hermite,
    /// Weight `exp(-x)` on `[0, ∞)`.
    Laguerre,
}

impl OrthoFamily {
    pub const ALL: [OrthoFamily; 3] = [OrthoFamily::Legendre, OrthoFamily::Hermite, OrthoFamily::Laguerre];

    pub fn name(self) -> &'static str {
        match self {
            OrthoFamily::Legendre => "legendre",
            OrthoFamily::Hermite => "hermite",
            OrthoFamily::Laguerre => "laguerre",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "legendre" => Ok(OrthoFamily::Legendre),
            "hermite" => Ok(OrthoFamily::Hermite),
            "laguerre" => Ok(OrthoFamily::Laguerre),
            other => Err(Error::UnsupportedFamily(other.to_string())),
        }
    }

    pub fn domain(self) -> Domain {
        match self {
            OrthoFamily::Legendre => Domain::symmetric(),
            OrthoFamily::Hermite => Domain::RealLine,
            OrthoFamily::Laguerre => Domain::HalfLine,
        }
    }

    /// The orthogonality measure, with Legendre's unit weight reported as
    /// Lebesgue measure.
    pub fn measure(self) -> Measure {
        match self {
            OrthoFamily::Legendre => Measure::Lebesgue,
            OrthoFamily::Hermite => Measure::Gaussian,
            OrthoFamily::Laguerre => Measure::Exponential,
        }
    }

    pub fn weight(self, x: f64) -> f64 {
        self.measure().density(x)
    }

    pub fn sqrt_weight(self, x: f64) -> f64 {
        match self {
            OrthoFamily::Legendre => 1.0,
            OrthoFamily::Hermite => (-0.5 * x * x).exp(),
            OrthoFamily::Laguerre => (-0.5 * x).exp(),
        }
    }

    /// Total mass `h_0 = ∫ w(x) dx`.
    pub fn mass(self) -> f64 {
        match self {
            OrthoFamily::Legendre => 2.0,
            OrthoFamily::Hermite => std::f64::consts::PI.sqrt(),
            OrthoFamily::Laguerre => 1.0,
        }
    }

    /// Monic recurrence coefficients `(a_k, b_k)`; `b_0` is unused and set to 0.
    pub fn recurrence(self, k: usize) -> (f64, f64) {
        let kf = k as f64;
        match self {
            OrthoFamily::Legendre => {
                let b = if k == 0 { 0.0 } else { kf * kf / (4.0 * kf * kf - 1.0) };
                (0.0, b)
            }
            OrthoFamily::Hermite => (0.0, kf / 2.0),
            OrthoFamily::Laguerre => (2.0 * kf + 1.0, kf * kf),
        }
    }

    /// Squared norm `h_k` of the monic polynomial of degree `k`.
    pub fn norm(self, k: usize) -> f64 {
        (1..=k).fold(self.mass(), |h, i| h * self.recurrence(i).1)
    }

    /// `(p_k(x), p_{k-1}(x))` by the monic recurrence; `p_{-1} = 0`.
    pub fn monic_pair(self, k: usize, x: f64) -> (f64, f64) {
        let mut prev = 0.0;
        let mut cur = 1.0;
        for i in 0..k {
            let (a, b) = self.recurrence(i);
            let next = (x - a) * cur - b * prev;
            prev = cur;
            cur = next;
        }
        (cur, prev)
    }

    pub fn monic(self, k: usize, x: f64) -> f64 {
        self.monic_pair(k, x).0
    }

    /// `(p_k(x), p_k'(x))`.
    pub fn monic_with_derivative(self, k: usize, x: f64) -> (f64, f64) {
        let (mut p_prev, mut p) = (0.0, 1.0);
        let (mut d_prev, mut d) = (0.0, 0.0);
        for i in 0..k {
            let (a, b) = self.recurrence(i);
            let p_next = (x - a) * p - b * p_prev;
            let d_next = p + (x - a) * d - b * d_prev;
            p_prev = p;
            p = p_next;
            d_prev = d;
            d = d_next;
        }
        (p, d)
    }

    /// Values of the first `count` orthonormal functions
    /// `start · h_k^{-1/2} p_k(x)` through the orthonormal recurrence.
    ///
    /// With `start = 1` these are the orthonormal polynomials, with
    /// `start = sqrt(w(x))` the wave functions.
    pub(crate) fn orthonormal_values(self, count: usize, x: f64, start: f64, out: &mut Vec<f64>) {
        out.clear();
        if count == 0 {
            return;
        }
        let mut prev = 0.0;
        let mut cur = start / self.mass().sqrt();
        out.push(cur);
        for i in 0..count - 1 {
            let (a, b) = self.recurrence(i);
            let (_, b_next) = self.recurrence(i + 1);
            let next = ((x - a) * cur - b.sqrt() * prev) / b_next.sqrt();
            prev = cur;
            cur = next;
            out.push(cur);
        }
    }
}

impl fmt::Display for OrthoFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Squared norms `h_0, …, h_{n-1}` of the monic family.
pub fn monic_norms(family: OrthoFamily, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidSet("monic_norms needs n >= 1".into()));
    }
    let mut norms = Vec::with_capacity(n);
    let mut h = family.mass();
    norms.push(h);
    for k in 1..n {
        h *= family.recurrence(k).1;
        norms.push(h);
    }
    Ok(norms)
}

/// Orthonormal wave function `h_k^{-1/2} w(x)^{1/2} p_k(x)`.
pub fn wave_function(family: OrthoFamily, k: usize, x: f64) -> Result<f64> {
    if k > MAX_DEGREE {
        return Err(Error::DegreeTooHigh {
            degree: k,
            cap: MAX_DEGREE,
        });
    }
    let domain = family.domain();
    if !domain.contains(x) {
        return Err(Error::OutsideDomain {
            x,
            domain: domain.to_string(),
        });
    }
    let h = family.norm(k);
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::CorruptedNorm { degree: k, norm: h });
    }
    Ok(wave_unchecked(family, k, x))
}

fn wave_unchecked(family: OrthoFamily, k: usize, x: f64) -> f64 {
    let sw = family.sqrt_weight(x);
    if sw == 0.0 {
        return 0.0;
    }
    // Orthonormal recurrence seeded with sqrt(w): no overflow of p_k before
    // the weight factor is applied.
    let mut prev = 0.0;
    let mut cur = sw / family.mass().sqrt();
    for i in 0..k {
        let (a, b) = family.recurrence(i);
        let (_, b_next) = family.recurrence(i + 1);
        let next = ((x - a) * cur - b.sqrt() * prev) / b_next.sqrt();
        prev = cur;
        cur = next;
    }
    cur
}

/// One weighted term of a [`Member::Combination`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: f64,
    pub member: Member,
}

/// Descriptor of a single function in a [`FunctionSet`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Member {
    /// `x^degree`.
    Monomial { degree: usize },
    /// Monic orthogonal polynomial `p_degree` of `family`.
    Monic { family: OrthoFamily, degree: usize },
    /// Wave function `h_k^{-1/2} w^{1/2} p_k` of `family`.
    Wave { family: OrthoFamily, index: usize },
    /// Real linear combination of other members.
    Combination { terms: Vec<Term> },
}

impl Member {
    pub fn monomial(degree: usize) -> Self {
        Member::Monomial { degree }
    }

    pub fn monic(family: OrthoFamily, degree: usize) -> Self {
        Member::Monic { family, degree }
    }

    pub fn wave(family: OrthoFamily, index: usize) -> Self {
        Member::Wave { family, index }
    }

    pub fn combination<I: IntoIterator<Item = (f64, Member)>>(terms: I) -> Self {
        Member::Combination {
            terms: terms
                .into_iter()
                .map(|(coeff, member)| Term { coeff, member })
                .collect(),
        }
    }

    /// Highest polynomial degree appearing in the descriptor.
    pub fn degree(&self) -> usize {
        match self {
            Member::Monomial { degree } | Member::Monic { degree, .. } => *degree,
            Member::Wave { index, .. } => *index,
            Member::Combination { terms } => terms.iter().map(|t| t.member.degree()).max().unwrap_or(0),
        }
    }

    fn is_composite(&self) -> bool {
        matches!(self, Member::Combination { .. })
    }

    fn validate(&self, domain: &Domain) -> Result<()> {
        match self {
            Member::Monomial { degree } | Member::Monic { degree, .. } => {
                if *degree > MAX_DEGREE {
                    return Err(Error::DegreeTooHigh {
                        degree: *degree,
                        cap: MAX_DEGREE,
                    });
                }
            }
            Member::Wave { family, index } => {
                if *index > MAX_DEGREE {
                    return Err(Error::DegreeTooHigh {
                        degree: *index,
                        cap: MAX_DEGREE,
                    });
                }
                if !family.domain().covers(domain) {
                    return Err(Error::InvalidSet(format!(
                        "{family} wave functions live on {} which does not cover {domain}",
                        family.domain()
                    )));
                }
            }
            Member::Combination { terms } => {
                if terms.is_empty() {
                    return Err(Error::InvalidSet("empty combination".into()));
                }
                for t in terms {
                    if !t.coeff.is_finite() {
                        return Err(Error::InvalidSet(format!("non-finite coefficient {}", t.coeff)));
                    }
                    t.member.validate(domain)?;
                }
            }
        }
        Ok(())
    }

    /// Value at `x` without domain checks.
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Member::Monomial { degree } => x.powi(*degree as i32),
            Member::Monic { family, degree } => family.monic(*degree, x),
            Member::Wave { family, index } => wave_unchecked(*family, *index, x),
            Member::Combination { terms } => terms.iter().map(|t| t.coeff * t.member.eval(x)).sum(),
        }
    }
}

#[derive(Deserialize)]
struct FunctionSetRepr {
    domain: Domain,
    #[serde(default)]
    measure: Measure,
    members: Vec<Member>,
}

/// Ordered family of `n` real functions on a common domain, integrated
/// against a common measure.
///
/// Linear independence is guaranteed for sets of distinct built-in members;
/// for combinations it is the caller's responsibility and shows up
/// downstream as a rank-deficient overlap matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FunctionSetRepr")]
pub struct FunctionSet {
    domain: Domain,
    measure: Measure,
    members: Vec<Member>,
    #[serde(skip)]
    has_composites: bool,
}

impl TryFrom<FunctionSetRepr> for FunctionSet {
    type Error = Error;

    fn try_from(r: FunctionSetRepr) -> Result<Self> {
        FunctionSet::with_measure(r.domain, r.measure, r.members)
    }
}

impl FunctionSet {
    pub fn new(domain: Domain, members: Vec<Member>) -> Result<Self> {
        Self::with_measure(domain, Measure::Lebesgue, members)
    }

    pub fn with_measure(domain: Domain, measure: Measure, members: Vec<Member>) -> Result<Self> {
        domain.validate()?;
        if members.is_empty() {
            return Err(Error::InvalidSet("a function set needs at least one member".into()));
        }
        if let Some(natural) = measure.natural_domain() {
            if natural != domain {
                return Err(Error::InvalidSet(format!(
                    "measure {measure:?} requires domain {natural}"
                )));
            }
        }
        for m in &members {
            m.validate(&domain)?;
        }
        for (i, a) in members.iter().enumerate() {
            if members[..i].contains(a) {
                return Err(Error::InvalidSet(format!("member {i} repeats an earlier descriptor")));
            }
        }
        let has_composites = members.iter().any(Member::is_composite);
        Ok(FunctionSet {
            domain,
            measure,
            members,
            has_composites,
        })
    }

    /// `{1, x, …, x^{n-1}}`.
    pub fn monomials(domain: Domain, n: usize) -> Result<Self> {
        Self::new(domain, (0..n).map(Member::monomial).collect())
    }

    /// The first `n` wave functions of `family` on its natural domain.
    pub fn wave_functions(family: OrthoFamily, n: usize) -> Result<Self> {
        Self::new(family.domain(), (0..n).map(|k| Member::wave(family, k)).collect())
    }

    /// The first `n` monic polynomials of `family`, integrated against its weight.
    pub fn monic_family(family: OrthoFamily, n: usize) -> Result<Self> {
        Self::with_measure(
            family.domain(),
            family.measure(),
            (0..n).map(|k| Member::monic(family, k)).collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn measure(&self) -> Measure {
        self.measure
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    /// True when some member is a user-defined combination, whose linear
    /// independence has not been verified.
    pub fn has_composites(&self) -> bool {
        self.has_composites
    }

    /// Value of member `j` (zero-based) at `x`.
    pub fn eval(&self, j: usize, x: f64) -> Result<f64> {
        let member = self.members.get(j).ok_or(Error::IndexOutOfRange {
            index: j,
            n: self.len(),
        })?;
        self.check_point(x)?;
        Ok(member.eval(x))
    }

    /// Values of all members at `x`, written into `out`.
    pub fn eval_all(&self, x: f64, out: &mut [f64]) -> Result<()> {
        if out.len() != self.len() {
            return Err(Error::DimensionMismatch(format!(
                "output buffer has {} slots for {} members",
                out.len(),
                self.len()
            )));
        }
        self.check_point(x)?;
        for (o, m) in out.iter_mut().zip(&self.members) {
            *o = m.eval(x);
        }
        Ok(())
    }

    pub fn values(&self, x: f64) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.len()];
        self.eval_all(x, &mut out)?;
        Ok(out)
    }

    fn check_point(&self, x: f64) -> Result<()> {
        if self.domain.contains(x) {
            Ok(())
        } else {
            Err(Error::OutsideDomain {
                x,
                domain: self.domain.to_string(),
            })
        }
    }
}
