//! Unitary ensembles with classical weights: Christoffel–Darboux kernel,
//! partition function and k-point eigenvalue correlation functions.

use serde::{Deserialize, Serialize};

use crate::basis::{monic_norms, FunctionSet, OrthoFamily, MAX_DEGREE};
use crate::error::{Error, Result};
use crate::kernel::GeneralizedKernel;
use crate::linalg;
use crate::quadrature::{gauss_rule_for, gauss_rule_unweighted, integrate_nd, CompensatedSum, QuadratureRule};

/// Largest `n` for the `n`-fold partition-function oracle.
pub const PARTITION_ORACLE_MAX_N: usize = 4;

/// Below this separation the Christoffel–Darboux ratio switches to its
/// confluent (derivative) form.
pub const CONFLUENT_GAP: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartitionMode {
    ClosedForm,
    Oracle { nodes: usize },
}

/// Unitary ensemble of `n × n` matrices whose eigenvalue weight is the
/// weight of `family`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ensemble {
    family: OrthoFamily,
    n: usize,
    norms: Vec<f64>,
}

impl Ensemble {
    pub fn new(family: OrthoFamily, n: usize) -> Result<Self> {
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::InvalidSet(format!("ensemble size {n} outside 1..={MAX_DEGREE}")));
        }
        let norms = monic_norms(family, n)?;
        Ok(Ensemble { family, n, norms })
    }

    pub fn family(&self) -> OrthoFamily {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `h_0, …, h_{n-1}`.
    pub fn norms(&self) -> &[f64] {
        &self.norms
    }

    fn check(&self, x: f64) -> Result<()> {
        let domain = self.family.domain();
        if domain.contains(x) {
            Ok(())
        } else {
            Err(Error::OutsideDomain {
                x,
                domain: domain.to_string(),
            })
        }
    }

    /// Wave functions `φ_0(x), …, φ_{n-1}(x)`.
    pub fn wave_values(&self, x: f64) -> Result<Vec<f64>> {
        self.check(x)?;
        let mut out = Vec::with_capacity(self.n);
        self.family
            .orthonormal_values(self.n, x, self.family.sqrt_weight(x), &mut out);
        Ok(out)
    }

    /// `K_n(x, y) = Σ_{j<n} φ_j(x) φ_j(y)` by direct summation.
    pub fn cd_kernel(&self, x: f64, y: f64) -> Result<f64> {
        let a = self.wave_values(x)?;
        let b = self.wave_values(y)?;
        Ok(a.iter().zip(&b).map(|(u, v)| u * v).sum())
    }

    /// `K_n(x, y)` through the Christoffel–Darboux ratio
    /// `√(w(x)w(y)) (p_n(x)p_{n-1}(y) − p_{n-1}(x)p_n(y)) / (h_{n-1}(x − y))`.
    pub fn cd_kernel_ratio(&self, x: f64, y: f64) -> Result<f64> {
        self.check(x)?;
        self.check(y)?;
        let fam = self.family;
        let n = self.n;
        let scale = fam.sqrt_weight(x) * fam.sqrt_weight(y) / self.norms[n - 1];
        if scale == 0.0 {
            return Ok(0.0);
        }
        if (x - y).abs() < CONFLUENT_GAP {
            let t = 0.5 * (x + y);
            let (pn, dn) = fam.monic_with_derivative(n, t);
            let (pm, dm) = fam.monic_with_derivative(n - 1, t);
            return Ok(scale * (dn * pm - dm * pn));
        }
        let (pnx, pmx) = fam.monic_pair(n, x);
        let (pny, pmy) = fam.monic_pair(n, y);
        Ok(scale * (pnx * pmy - pmx * pny) / (x - y))
    }

    /// `Z_n = ∫ Π w(x_i) Δ(x)² dx`, either as `n! Π h_{i-1}` or by tensor
    /// Gauss quadrature with the weight embedded in the rule.
    pub fn partition_function(&self, mode: PartitionMode) -> Result<f64> {
        match mode {
            PartitionMode::ClosedForm => Ok(linalg::factorial(self.n) * self.norms.iter().product::<f64>()),
            PartitionMode::Oracle { nodes } => {
                if self.n > PARTITION_ORACLE_MAX_N {
                    return Err(Error::CostGuard(format!(
                        "partition-function oracle limited to n <= {PARTITION_ORACLE_MAX_N}, got {}",
                        self.n
                    )));
                }
                let rule = gauss_rule_for(self.family.domain(), self.family.measure(), nodes)?;
                integrate_nd(vandermonde_sq, &rule, self.n)
            }
        }
    }

    /// `R_k(x_1, …, x_k) = det_k[K_n(x_i, x_j)]`.
    pub fn correlation_rk(&self, points: &[f64]) -> Result<f64> {
        let k = points.len();
        let waves = points
            .iter()
            .map(|&x| self.wave_values(x))
            .collect::<Result<Vec<_>>>()?;
        let mut m = vec![0.0; k * k];
        for i in 0..k {
            for j in 0..k {
                m[i * k + j] = waves[i].iter().zip(&waves[j]).map(|(a, b)| a * b).sum();
            }
        }
        Ok(linalg::det(&m, k))
    }

    /// `∫ R_{k+1}(x_1, …, x_k, y) dy` by one-dimensional quadrature.
    pub fn integrate_out_last(&self, fixed: &[f64], rule: &QuadratureRule) -> Result<f64> {
        let mut pts = fixed.to_vec();
        pts.push(0.0);
        let last = fixed.len();
        let mut acc = CompensatedSum::new();
        for (&y, &w) in rule.nodes().iter().zip(rule.weights()) {
            pts[last] = y;
            acc.add(w * self.correlation_rk(&pts)?);
        }
        Ok(acc.value())
    }

    /// Rule for `dx` integrals of products of wave functions.
    pub fn plain_rule(&self, nodes: usize) -> Result<QuadratureRule> {
        gauss_rule_unweighted(self.family.domain(), nodes)
    }

    /// The same kernel obtained as the generalized kernel of the wave
    /// functions with themselves.
    pub fn generalized_kernel(&self, nodes: usize) -> Result<GeneralizedKernel> {
        let set = FunctionSet::wave_functions(self.family, self.n)?;
        GeneralizedKernel::new(set.clone(), set, &self.plain_rule(nodes)?)
    }
}

/// `Π_{i<j} (x_j − x_i)²`.
pub fn vandermonde_sq(points: &[f64]) -> f64 {
    let mut prod = 1.0;
    for (j, &xj) in points.iter().enumerate() {
        for &xi in &points[..j] {
            prod *= xj - xi;
        }
    }
    prod * prod
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate_1d;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn cd_kernel_examples() {
        let e = Ensemble::new(OrthoFamily::Hermite, 1).unwrap();
        assert_relative_eq!(e.cd_kernel(0.0, 0.0).unwrap(), 1.0 / PI.sqrt(), epsilon = 1e-15);
        let e = Ensemble::new(OrthoFamily::Hermite, 5).unwrap();
        assert_eq!(e.cd_kernel(0.3, -1.2).unwrap(), e.cd_kernel(-1.2, 0.3).unwrap());
        let trace = integrate_1d(|x| e.cd_kernel(x, x).unwrap(), &e.plain_rule(40).unwrap()).unwrap();
        assert_relative_eq!(trace, 5.0, max_relative = 1e-12);
    }

    #[test]
    fn ratio_form_agrees_with_direct_sum() {
        for fam in OrthoFamily::ALL {
            let e = Ensemble::new(fam, 6).unwrap();
            for &(x, y) in &[(0.2, 0.7), (0.5, 0.5), (0.4, 0.4 + 1e-8), (0.9, 0.1)] {
                let direct = e.cd_kernel(x, y).unwrap();
                let ratio = e.cd_kernel_ratio(x, y).unwrap();
                assert!(
                    (direct - ratio).abs() <= 1e-9 * (1.0 + direct.abs()),
                    "{fam} {x} {y}: {direct} vs {ratio}"
                );
            }
        }
    }

    #[test]
    fn vandermonde_examples() {
        assert_eq!(vandermonde_sq(&[0.0, 1.0]), 1.0);
        assert_eq!(vandermonde_sq(&[0.0, 1.0, 2.0]), 4.0);
        assert_eq!(vandermonde_sq(&[0.3, 1.0, 0.3]), 0.0);
        assert_eq!(vandermonde_sq(&[]), 1.0);
    }

    #[test]
    fn partition_function_examples() {
        let z1 = Ensemble::new(OrthoFamily::Hermite, 1).unwrap();
        assert_relative_eq!(
            z1.partition_function(PartitionMode::ClosedForm).unwrap(),
            PI.sqrt(),
            epsilon = 1e-15
        );
        let z2 = Ensemble::new(OrthoFamily::Hermite, 2).unwrap();
        assert_relative_eq!(
            z2.partition_function(PartitionMode::ClosedForm).unwrap(),
            PI,
            epsilon = 1e-15
        );
        let leg = Ensemble::new(OrthoFamily::Legendre, 2).unwrap();
        let closed = leg.partition_function(PartitionMode::ClosedForm).unwrap();
        let oracle = leg.partition_function(PartitionMode::Oracle { nodes: 40 }).unwrap();
        assert_relative_eq!(closed, oracle, max_relative = 1e-9);
        let big = Ensemble::new(OrthoFamily::Hermite, 5).unwrap();
        assert!(matches!(
            big.partition_function(PartitionMode::Oracle { nodes: 10 }),
            Err(Error::CostGuard(_))
        ));
    }

    #[test]
    fn correlation_examples() {
        let e = Ensemble::new(OrthoFamily::Hermite, 3).unwrap();
        assert_relative_eq!(
            e.correlation_rk(&[0.4]).unwrap(),
            e.cd_kernel(0.4, 0.4).unwrap(),
            epsilon = 1e-15
        );
        assert!(e.correlation_rk(&[0.4]).unwrap() >= 0.0);
        assert!(e.correlation_rk(&[0.7, 0.7]).unwrap().abs() < 1e-15);
        assert!(e.correlation_rk(&[-0.5]).is_ok());
        let lag = Ensemble::new(OrthoFamily::Laguerre, 3).unwrap();
        assert!(lag.correlation_rk(&[-0.5]).is_err());
    }

    #[test]
    fn integrating_out_one_point() {
        let e = Ensemble::new(OrthoFamily::Hermite, 4).unwrap();
        let rule = e.plain_rule(40).unwrap();
        for x in [-1.3, 0.0, 0.45] {
            let marginal = e.integrate_out_last(&[x], &rule).unwrap();
            assert_relative_eq!(marginal, 3.0 * e.correlation_rk(&[x]).unwrap(), max_relative = 1e-10);
        }
        assert_relative_eq!(e.integrate_out_last(&[], &rule).unwrap(), 4.0, max_relative = 1e-12);
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(Ensemble::new(OrthoFamily::Hermite, 0).is_err());
        assert!(Ensemble::new(OrthoFamily::Hermite, 31).is_err());
    }
}
