//! Gauss rules and tensor-product integration.
//!
//! Nodes come from the eigenvalues of the symmetric tridiagonal Jacobi
//! matrix of the matching orthogonal family, polished by Newton steps on
//! the orthonormal recurrence. Weights use the Christoffel formula
//! `λ_i = 1 / Σ_{k<m} p̂_k(x_i)²`, evaluated with weight-dressed
//! functions so that neither the embedded nor the weightless variant
//! overflows at the outer nodes.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::basis::{Domain, FunctionSet, Measure, OrthoFamily};
use crate::error::{Error, Result};

pub const MIN_NODES: usize = 1;
pub const MAX_NODES: usize = 256;

/// Largest tensor grid `m^d` that [`integrate_nd`] will visit.
pub const GRID_BUDGET: f64 = 1e8;

/// Node count used by the brute-force oracles unless overridden.
pub const DEFAULT_ORACLE_NODES: usize = 40;

/// Neumaier-compensated running sum.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// A one-dimensional Gauss rule.
///
/// `measure` records whether the weights already absorb a weight function:
/// a rule with `Measure::Gaussian` computes `∫ f(x) e^{-x²} dx`, one with
/// `Measure::Lebesgue` computes `∫ f(x) dx`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    domain: Domain,
    measure: Measure,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn measure(&self) -> Measure {
        self.measure
    }

    pub fn weight_embedded(&self) -> bool {
        self.measure.is_weighted()
    }

    /// Rule integrating against the measure of `set` on its domain.
    pub fn for_set(set: &FunctionSet, m: usize) -> Result<Self> {
        gauss_rule_for(set.domain(), set.measure(), m)
    }
}

fn check_nodes(m: usize) -> Result<()> {
    if (MIN_NODES..=MAX_NODES).contains(&m) {
        Ok(())
    } else {
        Err(Error::NodeCountOutOfRange {
            m,
            min: MIN_NODES,
            max: MAX_NODES,
        })
    }
}

/// Standard Gauss rule on a domain: Legendre on intervals (affinely mapped),
/// Hermite with embedded `e^{-x²}` on the real line, Laguerre with embedded
/// `e^{-x}` on the half line.
pub fn gauss_rule(domain: Domain, m: usize) -> Result<QuadratureRule> {
    let measure = match domain {
        Domain::Interval { .. } => Measure::Lebesgue,
        Domain::RealLine => Measure::Gaussian,
        Domain::HalfLine => Measure::Exponential,
    };
    gauss_rule_for(domain, measure, m)
}

/// Gauss rule for plain `dx` on any domain. On unbounded domains the
/// Hermite/Laguerre weights are divided by the weight function at each node;
/// such rules are exact for `w(x)·polynomial` integrands.
pub fn gauss_rule_unweighted(domain: Domain, m: usize) -> Result<QuadratureRule> {
    gauss_rule_for(domain, Measure::Lebesgue, m)
}

/// Gauss rule on `domain` for the given measure.
pub fn gauss_rule_for(domain: Domain, measure: Measure, m: usize) -> Result<QuadratureRule> {
    check_nodes(m)?;
    domain.validate()?;
    let family = match (domain, measure) {
        (Domain::Interval { .. }, Measure::Lebesgue) => OrthoFamily::Legendre,
        (Domain::RealLine, Measure::Gaussian | Measure::Lebesgue) => OrthoFamily::Hermite,
        (Domain::HalfLine, Measure::Exponential | Measure::Lebesgue) => OrthoFamily::Laguerre,
        _ => {
            return Err(Error::DomainMismatch(format!(
                "no Gauss rule for measure {measure:?} on {domain}"
            )))
        }
    };
    let nodes = family_nodes(family, m);
    let embedded = measure.is_weighted();
    let mut buf = Vec::with_capacity(m);
    let mut weights: Vec<f64> = nodes
        .iter()
        .map(|&x| {
            family.orthonormal_values(m, x, family.sqrt_weight(x), &mut buf);
            let dressed: f64 = buf.iter().map(|v| v * v).sum();
            if embedded || family == OrthoFamily::Legendre {
                family.weight(x) / dressed
            } else {
                1.0 / dressed
            }
        })
        .collect();
    let mut nodes = nodes;
    if let Domain::Interval { a, b } = domain {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        for x in nodes.iter_mut() {
            *x = mid + half * *x;
        }
        for w in weights.iter_mut() {
            *w *= half;
        }
    }
    // large embedded Laguerre rules have outer weights below f64 range
    if let Some(bad) = weights.iter().position(|w| !(w.is_normal() && *w > 0.0)) {
        return Err(Error::WeightUnderflow { m, node: nodes[bad] });
    }
    debug_assert!(nodes.windows(2).all(|w| w[0] < w[1]));
    Ok(QuadratureRule {
        nodes,
        weights,
        domain,
        measure,
    })
}

/// Zeros of the degree-`m` polynomial of `family`, increasing.
fn family_nodes(family: OrthoFamily, m: usize) -> Vec<f64> {
    let mut jacobi = DMatrix::<f64>::zeros(m, m);
    for k in 0..m {
        let (a, _) = family.recurrence(k);
        jacobi[(k, k)] = a;
        if k + 1 < m {
            let off = family.recurrence(k + 1).1.sqrt();
            jacobi[(k, k + 1)] = off;
            jacobi[(k + 1, k)] = off;
        }
    }
    let mut nodes: Vec<f64> = jacobi.symmetric_eigenvalues().iter().copied().collect();
    nodes.sort_by(|a, b| a.total_cmp(b));
    if family == OrthoFamily::Hermite || family == OrthoFamily::Legendre {
        // symmetric families: enforce exact mirror symmetry
        for i in 0..m / 2 {
            let v = 0.5 * (nodes[m - 1 - i] - nodes[i]);
            nodes[i] = -v;
            nodes[m - 1 - i] = v;
        }
        if m % 2 == 1 {
            nodes[m / 2] = 0.0;
        }
    }
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let step = newton_step(family, m, *x);
            if !step.is_finite() {
                break;
            }
            *x -= step;
            if step.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
    }
    nodes
}

/// `p_m(x) / p_m'(x)` through the orthonormal recurrence, scaled by
/// `sqrt(w(x))` to keep magnitudes representable.
fn newton_step(family: OrthoFamily, m: usize, x: f64) -> f64 {
    let seed = family.sqrt_weight(x).max(f64::MIN_POSITIVE);
    let (mut p_prev, mut p) = (0.0, seed);
    let (mut d_prev, mut d) = (0.0, 0.0);
    for k in 0..m {
        let (a, b) = family.recurrence(k);
        let sb = b.sqrt();
        let sb_next = family.recurrence(k + 1).1.sqrt();
        let p_next = ((x - a) * p - sb * p_prev) / sb_next;
        let d_next = (p + (x - a) * d - sb * d_prev) / sb_next;
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
    }
    p / d
}

/// `Σ w_i f(x_i)` with compensated summation.
pub fn integrate_1d<F: Fn(f64) -> f64>(f: F, rule: &QuadratureRule) -> Result<f64> {
    let mut acc = CompensatedSum::new();
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let v = f(x);
        if !v.is_finite() {
            return Err(Error::NonFiniteIntegrand { node: x, value: v });
        }
        acc.add(w * v);
    }
    Ok(acc.value())
}

/// Fails with [`Error::BudgetExceeded`] if an `m^d` grid is over budget.
pub fn check_budget(m: usize, d: usize) -> Result<()> {
    let points = (m as f64).powi(d as i32);
    if points > GRID_BUDGET {
        Err(Error::BudgetExceeded {
            m,
            d,
            points,
            limit: GRID_BUDGET,
        })
    } else {
        Ok(())
    }
}

/// Full tensor-product rule over `d` copies of `rule`, visiting node tuples
/// in lexicographic order (first axis slowest).
pub fn integrate_nd<F: Fn(&[f64]) -> f64>(f: F, rule: &QuadratureRule, d: usize) -> Result<f64> {
    let mut point = vec![0.0; d];
    let mut bad = None;
    let total = integrate_nd_indexed(rule, d, |idx| {
        for (p, &i) in point.iter_mut().zip(idx) {
            *p = rule.nodes[i];
        }
        let v = f(&point);
        if !v.is_finite() && bad.is_none() {
            bad = Some((point[0], v));
        }
        v
    })?;
    if let Some((node, value)) = bad {
        return Err(Error::NonFiniteIntegrand { node, value });
    }
    Ok(total)
}

/// Tensor-product sum where the integrand receives node indices instead of
/// node values, for callers that tabulate their functions on the nodes.
pub fn integrate_nd_indexed<F: FnMut(&[usize]) -> f64>(rule: &QuadratureRule, d: usize, f: F) -> Result<f64> {
    tensor_sum(rule, d, f).map(|(signed, _)| signed)
}

/// Like [`integrate_nd_indexed`], also returning `∫ |f|`, the natural
/// magnitude against which cancellation to zero is judged.
pub fn tensor_sum<F: FnMut(&[usize]) -> f64>(rule: &QuadratureRule, d: usize, mut f: F) -> Result<(f64, f64)> {
    if d == 0 {
        return Err(Error::DimensionMismatch(
            "integration dimension must be at least 1".into(),
        ));
    }
    let m = rule.len();
    check_budget(m, d)?;
    let mut idx = vec![0usize; d];
    // prefix[j] = product of the weights on axes 0..j
    let mut prefix = vec![1.0; d + 1];
    for j in 0..d {
        prefix[j + 1] = prefix[j] * rule.weights[0];
    }
    let mut acc = CompensatedSum::new();
    let mut mag = CompensatedSum::new();
    loop {
        let term = prefix[d] * f(&idx);
        acc.add(term);
        mag.add(term.abs());
        // odometer, last axis fastest
        let mut axis = d;
        loop {
            if axis == 0 {
                return Ok((acc.value(), mag.value()));
            }
            axis -= 1;
            idx[axis] += 1;
            if idx[axis] < m {
                break;
            }
            idx[axis] = 0;
        }
        for j in axis..d {
            prefix[j + 1] = prefix[j] * rule.weights[idx[j]];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn two_point_legendre() {
        let r = gauss_rule(Domain::symmetric(), 2).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert_relative_eq!(r.nodes()[0], -s, epsilon = 1e-15);
        assert_relative_eq!(r.nodes()[1], s, epsilon = 1e-15);
        assert_relative_eq!(r.weights()[0], 1.0, epsilon = 1e-14);
        assert_relative_eq!(r.weights()[1], 1.0, epsilon = 1e-14);
        assert!(!r.weight_embedded());
    }

    #[test]
    fn hermite_low_order() {
        let r1 = gauss_rule(Domain::RealLine, 1).unwrap();
        assert_eq!(r1.nodes(), &[0.0]);
        assert_relative_eq!(r1.weights()[0], PI.sqrt(), epsilon = 1e-15);
        let r = gauss_rule(Domain::RealLine, 2).unwrap();
        assert_relative_eq!(r.nodes()[1], 0.5f64.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(r.weights()[0], PI.sqrt() / 2.0, epsilon = 1e-14);
        let r3 = gauss_rule(Domain::RealLine, 3).unwrap();
        assert_eq!(r3.nodes()[1], 0.0);
        assert_relative_eq!(r3.weights()[1], 2.0 * PI.sqrt() / 3.0, epsilon = 1e-14);
    }

    #[test]
    fn exactness_examples() {
        let unit = gauss_rule(Domain::unit(), 32).unwrap();
        assert!((integrate_1d(|x| x.powi(3), &unit).unwrap() - 0.25).abs() <= 1e-14);
        let unit16 = gauss_rule(Domain::unit(), 16).unwrap();
        assert!((integrate_1d(|x| x * x, &unit16).unwrap() - 1.0 / 3.0).abs() <= 1e-14);
        let herm = gauss_rule(Domain::RealLine, 8).unwrap();
        assert!((integrate_1d(|x| x * x, &herm).unwrap() - PI.sqrt() / 2.0).abs() <= 1e-13);
        let lag = gauss_rule(Domain::HalfLine, 4).unwrap();
        assert!((integrate_1d(|_| 1.0, &lag).unwrap() - 1.0).abs() <= 1e-13);
    }

    #[test]
    fn weights_sum_to_mass() {
        for m in [2, 3, 5, 16, 40, 64, 128, 256] {
            let r = gauss_rule(Domain::RealLine, m).unwrap();
            let s: f64 = r.weights().iter().sum();
            assert_relative_eq!(s, PI.sqrt(), max_relative = 1e-12);
            let r = gauss_rule(Domain::symmetric(), m).unwrap();
            assert_relative_eq!(r.weights().iter().sum::<f64>(), 2.0, max_relative = 1e-12);
            assert!(r.nodes().windows(2).all(|w| w[0] < w[1]));
        }
        for m in [2, 7, 40, 100] {
            let r = gauss_rule(Domain::HalfLine, m).unwrap();
            assert_relative_eq!(r.weights().iter().sum::<f64>(), 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn unweighted_rules_integrate_dressed_functions() {
        let r = gauss_rule_unweighted(Domain::RealLine, 40).unwrap();
        assert!(!r.weight_embedded());
        let v = integrate_1d(|x| x * x * (-x * x).exp(), &r).unwrap();
        assert_relative_eq!(v, PI.sqrt() / 2.0, max_relative = 1e-13);
        let r = gauss_rule_unweighted(Domain::HalfLine, 40).unwrap();
        let v = integrate_1d(|x| x.powi(3) * (-x).exp(), &r).unwrap();
        assert_relative_eq!(v, 6.0, max_relative = 1e-13);
        // large rules stay finite and positive
        let r = gauss_rule_unweighted(Domain::RealLine, 256).unwrap();
        assert!(r.weights().iter().all(|w| w.is_finite() && *w > 0.0));
    }

    #[test]
    fn node_count_guard() {
        assert!(matches!(
            gauss_rule(Domain::unit(), 0),
            Err(Error::NodeCountOutOfRange { .. })
        ));
        assert!(matches!(
            gauss_rule(Domain::unit(), 257),
            Err(Error::NodeCountOutOfRange { .. })
        ));
        assert!(gauss_rule_for(Domain::unit(), Measure::Gaussian, 8).is_err());
    }

    #[test]
    fn non_finite_integrand_reports_node() {
        let r = gauss_rule(Domain::unit(), 4).unwrap();
        let err = integrate_1d(|x| if x > 0.5 { f64::NAN } else { x }, &r).unwrap_err();
        assert!(matches!(err, Error::NonFiniteIntegrand { node, .. } if node > 0.5));
    }

    #[test]
    fn tensor_examples() {
        let r8 = gauss_rule(Domain::unit(), 8).unwrap();
        let v = integrate_nd(|x| x[0] * x[1], &r8, 2).unwrap();
        assert!((v - 0.25).abs() <= 1e-14);
        let r16 = gauss_rule(Domain::unit(), 16).unwrap();
        let v = integrate_nd(|x| (x[0] - x[1]).powi(2), &r16, 2).unwrap();
        assert!((v - 1.0 / 6.0).abs() <= 1e-13);
    }

    #[test]
    fn one_dimensional_tensor_is_bit_identical() {
        let r = gauss_rule(Domain::RealLine, 20).unwrap();
        let f = |x: f64| (x * 1.3).cos() + x.powi(3);
        let a = integrate_1d(f, &r).unwrap();
        let b = integrate_nd(|p| f(p[0]), &r, 1).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn budget_guard() {
        let r = gauss_rule(Domain::unit(), 40).unwrap();
        let err = integrate_nd(|_| 1.0, &r, 5).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { m: 40, d: 5, .. }));
        assert!(integrate_nd(|_| 1.0, &r, 0).is_err());
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let s: CompensatedSum = [1.0, 1e-16, 1e-16, -1.0].into_iter().collect();
        assert_relative_eq!(s.value(), 2e-16, max_relative = 1e-12);
    }
}
