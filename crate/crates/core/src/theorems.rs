//! Both sides of each determinant integration identity, computed by
//! independent routes: nested tensor quadrature of the raw determinants on
//! one side, kernel formulas on the other.
//!
//! With `d = n − k` integrated variables the identities checked are
//!
//! ```text
//! reduction     (1/C) ∫ det_n[Q(p_i, q_j)] d^d x         = (n−k)! det_k[𝒦(p_i, q_j)]
//! Andréief      ∫ det[φ_j(x_i)] det[ψ_j(x_i)] d^n x      = n! C
//! contraction   ∫ 𝒦^(k)(p; q) 𝒦^(k)(q; r) d^k q         = 𝒦^(k)(p; r)
//! normalization ∫ 𝒦^(k)(q; q) d^k q                      = binomial(n, k)
//! Dyson         ∫ det_n[K_n(x_i, x_j)] d^d x             = (n−k)! det_k[K_n(x_i, x_j)]
//! ```
//!
//! where the first `d` rows and columns of the reduced determinant carry
//! `p_i = q_i = x_i`. For a singular overlap matrix every identity is
//! multiplied through by the appropriate power of `C` and evaluated with the
//! `C`-scaled kernel.

use serde::Serialize;

use crate::basis::FunctionSet;
use crate::error::{Error, Result};
use crate::gram::{check_compatible, compute_gram};
use crate::kernel::{GeneralizedKernel, KernelMode};
use crate::linalg::{binomial, det_in_place, factorial};
use crate::quadrature::{tensor_sum, QuadratureRule};
use crate::rmt::Ensemble;

/// Most integration variables a determinant oracle will nest.
pub const ORACLE_MAX_DIM: usize = 4;
/// Largest `k` for the `k`-variable kernel oracles.
pub const KERNEL_ORACLE_MAX_K: usize = 3;
/// Tolerance for oracle-versus-formula comparisons.
pub const ORACLE_TOLERANCE: f64 = 1e-8;
/// A target counts as zero when it is this small relative to its scale.
pub const NEAR_ZERO: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    /// Iterated classical integration theorem with `c = n`.
    Dyson,
    /// `(n−k)`-fold reduction of the bilinear determinant.
    Theorem1,
    /// Self-contraction of `𝒦^(k)`.
    Theorem2Contraction,
    /// Trace of `𝒦^(k)` equals `binomial(n, k)`.
    Theorem2Norm,
    /// `k = 0`: product of two determinants.
    Andreief,
    /// `k = n`: no integrations, `det Q / C = det 𝒦`.
    StepIiiIdentity,
}

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub theorem_id: TheoremId,
    pub fixture: String,
    pub n: usize,
    pub k: usize,
    pub mode: KernelMode,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_residual: f64,
    pub rel_residual: f64,
    /// Magnitude used when the target is (near) zero.
    pub scale: f64,
    pub tolerance: f64,
    pub oracle_nodes: usize,
    /// Number of integrand evaluations in the oracle.
    pub oracle_cost: u64,
    pub seed: Option<u64>,
    pub pass: bool,
}

impl TheoremReport {
    /// Compares `lhs` with `rhs`: relative residual when the target is
    /// non-negligible, absolute residual against `scale` otherwise.
    #[allow(clippy::too_many_arguments)]
    pub fn assess(
        theorem_id: TheoremId,
        n: usize,
        k: usize,
        mode: KernelMode,
        lhs: f64,
        rhs: f64,
        scale: f64,
        tolerance: f64,
        oracle_nodes: usize,
        oracle_cost: u64,
    ) -> Self {
        let abs_residual = (lhs - rhs).abs();
        let rel_residual = if rhs != 0.0 {
            abs_residual / rhs.abs()
        } else {
            f64::INFINITY
        };
        let scale = scale.max(rhs.abs());
        let near_zero = rhs.abs() <= NEAR_ZERO * scale;
        let pass = lhs.is_finite()
            && rhs.is_finite()
            && if near_zero {
                abs_residual <= tolerance * scale
            } else {
                rel_residual <= tolerance
            };
        TheoremReport {
            theorem_id,
            fixture: String::new(),
            n,
            k,
            mode,
            lhs,
            rhs,
            abs_residual,
            rel_residual,
            scale,
            tolerance,
            oracle_nodes,
            oracle_cost,
            seed: None,
            pass,
        }
    }

    pub fn labeled(mut self, fixture: &str, seed: Option<u64>) -> Self {
        self.fixture = fixture.to_string();
        self.seed = seed;
        self
    }
}

fn grid_cost(m: usize, d: usize) -> u64 {
    if d == 0 {
        1
    } else {
        (m as u64).pow(d as u32)
    }
}

fn check_dim(d: usize, max: usize, what: &str) -> Result<()> {
    if d > max {
        Err(Error::CostGuard(format!(
            "{what} needs a {d}-fold oracle integral; limit is {max}"
        )))
    } else {
        Ok(())
    }
}

fn check_free(k: usize, p: &[f64], q: &[f64]) -> Result<()> {
    if p.len() != k || q.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "expected {k} free points on each side, got {} and {}",
            p.len(),
            q.len()
        )));
    }
    Ok(())
}

/// Symmetric kernel table on `(nodes ∪ free) × (nodes ∪ free)`.
struct PairTable {
    width: usize,
    values: Vec<f64>,
}

impl PairTable {
    fn from_values(width: usize, values: Vec<f64>) -> Self {
        PairTable { width, values }
    }

    #[inline]
    fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.width + col]
    }
}

fn tabulate_set(set: &FunctionSet, nodes: &[f64], extra: &[f64]) -> Result<Vec<f64>> {
    let n = set.len();
    let mut out = vec![0.0; (nodes.len() + extra.len()) * n];
    for (chunk, &x) in out.chunks_mut(n).zip(nodes.iter().chain(extra)) {
        set.eval_all(x, chunk)?;
    }
    Ok(out)
}

/// `∫ det_n[T(a_i, b_j)]` where the first `d` rows and columns share the
/// integration node `idx[i]` and the rest use the free points appended after
/// the `m` nodes. Returns `(integral, ∫|integrand|)`.
fn integrate_det(table: &PairTable, n: usize, d: usize, rule: &QuadratureRule) -> Result<(f64, f64)> {
    let m = rule.len();
    let mut buf = vec![0.0; n * n];
    let slot = |i: usize, idx: &[usize]| if i < d { idx[i] } else { m + (i - d) };
    let mut eval = |idx: &[usize]| {
        for i in 0..n {
            let row = slot(i, idx);
            for j in 0..n {
                buf[i * n + j] = table.get(row, slot(j, idx));
            }
        }
        det_in_place(&mut buf, n)
    };
    if d == 0 {
        let v = eval(&[]);
        return Ok((v, v.abs()));
    }
    tensor_sum(rule, d, eval)
}

/// Same integral as [`integrate_det`] for `T(a, b) = Σ_j φ_j(a) ψ_j(b)`,
/// using `det_n[T(a_i, b_j)] = det_n[φ_j(a_i)] · det_n[ψ_j(b_i)]`. The
/// factored form avoids the cancellation inside a nearly singular `T`.
fn integrate_factored(left: &[f64], right: &[f64], n: usize, d: usize, rule: &QuadratureRule) -> Result<(f64, f64)> {
    let m = rule.len();
    let mut a = vec![0.0; n * n];
    let mut b = vec![0.0; n * n];
    let slot = |i: usize, idx: &[usize]| if i < d { idx[i] } else { m + (i - d) };
    let mut eval = |idx: &[usize]| {
        for i in 0..n {
            let s = slot(i, idx);
            a[i * n..(i + 1) * n].copy_from_slice(&left[s * n..(s + 1) * n]);
            b[i * n..(i + 1) * n].copy_from_slice(&right[s * n..(s + 1) * n]);
        }
        det_in_place(&mut a, n) * det_in_place(&mut b, n)
    };
    if d == 0 {
        let v = eval(&[]);
        return Ok((v, v.abs()));
    }
    tensor_sum(rule, d, eval)
}

/// Left side of the reduction identity: `(1/C) ∫ det_n[Q(p_i, q_j)]` over the first
/// `n − k` diagonal pairs, with the remaining pairs at the free points.
///
/// For a singular overlap matrix the identity is multiplied by `C^k`
/// (by `C` when `k = 0`), so this returns `C^{k−1} ∫ det Q` (`∫ det Q` for
/// `k ≤ 1`).
pub fn lhs_theorem1(
    kernel: &GeneralizedKernel,
    k: usize,
    p_free: &[f64],
    q_free: &[f64],
    rule: &QuadratureRule,
) -> Result<f64> {
    lhs_theorem1_with_scale(kernel, k, p_free, q_free, rule).map(|(v, _)| v)
}

fn lhs_theorem1_with_scale(
    kernel: &GeneralizedKernel,
    k: usize,
    p_free: &[f64],
    q_free: &[f64],
    rule: &QuadratureRule,
) -> Result<(f64, f64)> {
    let n = kernel.n();
    if k > n {
        return Err(Error::DimensionMismatch(format!("k = {k} exceeds n = {n}")));
    }
    check_free(k, p_free, q_free)?;
    let d = n - k;
    check_dim(d, ORACLE_MAX_DIM, "reduction identity")?;
    check_compatible(kernel.phi(), kernel.psi(), rule)?;
    let left = tabulate_set(kernel.phi(), rule.nodes(), p_free)?;
    let right = tabulate_set(kernel.psi(), rule.nodes(), q_free)?;
    let (raw, mag) = integrate_factored(&left, &right, n, d, rule)?;
    let c = kernel.gram().det();
    let factor = match kernel.mode() {
        KernelMode::Normalized => 1.0 / c,
        KernelMode::Unnormalized => c.powi(k.max(1) as i32 - 1),
    };
    Ok((raw * factor, mag * factor.abs()))
}

/// Right side of the reduction identity: `(n−k)! det_k[𝒦(p_i, q_j)]` (`n!` for `k = 0`).
/// With a singular overlap matrix: `(n−k)! det_k[C𝒦]`, and `n! C` for `k = 0`.
pub fn rhs_theorem1(kernel: &GeneralizedKernel, k: usize, p_free: &[f64], q_free: &[f64]) -> Result<f64> {
    let n = kernel.n();
    if k > n {
        return Err(Error::DimensionMismatch(format!("k = {k} exceeds n = {n}")));
    }
    check_free(k, p_free, q_free)?;
    let det = kernel.kernel_det(p_free, q_free)?;
    Ok(match (kernel.mode(), k) {
        (KernelMode::Unnormalized, 0) => factorial(n) * kernel.gram().det(),
        _ => factorial(n - k) * det,
    })
}

/// Largest `|value(p_i, q_j)|` over the free pairs (1 when there are none).
/// For a singular overlap matrix the sampled values may be pure round-off,
/// so the magnitude `‖φ(p)‖ ‖ψ(q)‖ n r^{n−1}` of an adjugate-weighted form
/// is included, with `r` the largest row norm of the overlap matrix.
fn kernel_scale(kernel: &GeneralizedKernel, p: &[f64], q: &[f64]) -> Result<f64> {
    if p.is_empty() {
        return Ok(1.0);
    }
    let sampled = max_abs(&kernel.tabulate(p, q)?);
    if kernel.mode() == KernelMode::Normalized {
        return Ok(sampled);
    }
    let norm = |v: Vec<f64>| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut left = 0.0f64;
    for &x in p {
        left = left.max(norm(kernel.phi().values(x)?));
    }
    let mut right = 0.0f64;
    for &x in q {
        right = right.max(norm(kernel.psi().values(x)?));
    }
    let g = kernel.gram();
    let n = g.n();
    let row = g
        .entries()
        .chunks(n)
        .map(|r| r.iter().map(|v| v * v).sum::<f64>().sqrt())
        .fold(0.0f64, f64::max);
    Ok(sampled.max(left * right * n as f64 * row.powi(n as i32 - 1)))
}

fn max_abs(values: &[f64]) -> f64 {
    values.iter().fold(0.0f64, |a, v| a.max(v.abs()))
}

/// `Σ |w_i|`, the measure of the integration region under the rule.
fn rule_mass(rule: &QuadratureRule) -> f64 {
    rule.weights().iter().map(|w| w.abs()).sum()
}

/// Hadamard-type magnitude `Π_i ‖row_i‖` of the overlap matrix.
fn gram_scale(kernel: &GeneralizedKernel) -> f64 {
    let g = kernel.gram();
    g.entries()
        .chunks(g.n())
        .map(|row| row.iter().map(|v| v * v).sum::<f64>().sqrt())
        .product()
}

pub fn verify_theorem1(
    kernel: &GeneralizedKernel,
    k: usize,
    p_free: &[f64],
    q_free: &[f64],
    rule: &QuadratureRule,
) -> Result<TheoremReport> {
    let n = kernel.n();
    let (lhs, mag) = lhs_theorem1_with_scale(kernel, k, p_free, q_free, rule)?;
    let rhs = rhs_theorem1(kernel, k, p_free, q_free)?;
    let mut scale = mag.max(factorial(n - k) * kernel_scale(kernel, p_free, q_free)?.powi(k as i32));
    if k == 0 && kernel.mode() == KernelMode::Unnormalized {
        scale = scale.max(factorial(n) * gram_scale(kernel));
    }
    let id = if k == n {
        TheoremId::StepIiiIdentity
    } else {
        TheoremId::Theorem1
    };
    Ok(TheoremReport::assess(
        id,
        n,
        k,
        kernel.mode(),
        lhs,
        rhs,
        scale,
        ORACLE_TOLERANCE,
        rule.len(),
        grid_cost(rule.len(), n - k),
    ))
}

/// `∫ det[φ_j(x_i)] det[ψ_j(x_i)] d^n x` against `n! det G`.
pub fn verify_andreief(phi: &FunctionSet, psi: &FunctionSet, rule: &QuadratureRule) -> Result<TheoremReport> {
    check_compatible(phi, psi, rule)?;
    let n = phi.len();
    check_dim(n, ORACLE_MAX_DIM, "Andreief")?;
    let gram = compute_gram(phi, psi, rule)?;
    let a = tabulate_set(phi, rule.nodes(), &[])?;
    let b = tabulate_set(psi, rule.nodes(), &[])?;
    let mut ma = vec![0.0; n * n];
    let mut mb = vec![0.0; n * n];
    let (lhs, mag) = tensor_sum(rule, n, |idx| {
        for (i, &node) in idx.iter().enumerate() {
            ma[i * n..(i + 1) * n].copy_from_slice(&a[node * n..(node + 1) * n]);
            mb[i * n..(i + 1) * n].copy_from_slice(&b[node * n..(node + 1) * n]);
        }
        det_in_place(&mut ma, n) * det_in_place(&mut mb, n)
    })?;
    let rhs = factorial(n) * gram.det();
    let hadamard: f64 = gram
        .entries()
        .chunks(n)
        .map(|row| row.iter().map(|v| v * v).sum::<f64>().sqrt())
        .product();
    let mode = if gram.is_full_rank() {
        KernelMode::Normalized
    } else {
        KernelMode::Unnormalized
    };
    Ok(TheoremReport::assess(
        TheoremId::Andreief,
        n,
        0,
        mode,
        lhs,
        rhs,
        mag.max(factorial(n) * hadamard),
        ORACLE_TOLERANCE,
        rule.len(),
        grid_cost(rule.len(), n),
    ))
}

/// `det_k[T[rows[i]][cols[j]]] / k!`.
fn table_k_kernel(t: &[f64], width: usize, rows: &[usize], cols: &[usize], buf: &mut [f64]) -> f64 {
    let k = rows.len();
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in cols.iter().enumerate() {
            buf[i * k + j] = t[r * width + c];
        }
    }
    det_in_place(buf, k) / factorial(k)
}

/// `C^k` in the scaled convention, 1 otherwise.
fn mode_factor(kernel: &GeneralizedKernel, k: usize) -> f64 {
    match kernel.mode() {
        KernelMode::Normalized => 1.0,
        KernelMode::Unnormalized => kernel.gram().det().powi(k as i32),
    }
}

/// `∫ 𝒦^(k)(p; q) 𝒦^(k)(q; r) d^k q` against `𝒦^(k)(p; r)`.
pub fn verify_contraction_k(
    kernel: &GeneralizedKernel,
    k: usize,
    p: &[f64],
    r: &[f64],
    rule: &QuadratureRule,
) -> Result<TheoremReport> {
    check_free(k, p, r)?;
    if k == 0 {
        return Err(Error::DimensionMismatch("contraction needs k >= 1".into()));
    }
    check_dim(k, KERNEL_ORACLE_MAX_K, "kernel contraction")?;
    check_compatible(kernel.phi(), kernel.psi(), rule)?;
    let m = rule.len();
    let nodes = rule.nodes();
    // left[i][b] = value(p_i, node_b), right[a][j] = value(node_a, r_j)
    let left = kernel.tabulate(p, nodes)?;
    let right = kernel.tabulate(nodes, r)?;
    let free: Vec<usize> = (0..k).collect();
    let mut buf = vec![0.0; k * k];
    let (lhs, mag) = tensor_sum(rule, k, |idx| {
        let a = table_k_kernel(&left, m, &free, idx, &mut buf);
        let b = table_k_kernel(&right, k, idx, &free, &mut buf);
        a * b
    })?;
    let rhs = mode_factor(kernel, k) * kernel.k_kernel(p, r)?;
    let sampled = max_abs(&left).max(max_abs(&right)).max(kernel_scale(kernel, p, r)?);
    let scale = mag.max((sampled * sampled * rule_mass(rule)).powi(k as i32) / factorial(k));
    Ok(TheoremReport::assess(
        TheoremId::Theorem2Contraction,
        kernel.n(),
        k,
        kernel.mode(),
        lhs,
        rhs,
        scale,
        ORACLE_TOLERANCE,
        m,
        grid_cost(m, k),
    ))
}

/// `∫ 𝒦^(k)(q; q) d^k q` against `binomial(n, k)`.
pub fn verify_knorm(kernel: &GeneralizedKernel, k: usize, rule: &QuadratureRule) -> Result<TheoremReport> {
    if k == 0 {
        return Err(Error::DimensionMismatch("normalization needs k >= 1".into()));
    }
    check_dim(k, KERNEL_ORACLE_MAX_K, "kernel normalization")?;
    check_compatible(kernel.phi(), kernel.psi(), rule)?;
    let n = kernel.n();
    if n > 20 {
        return Err(Error::CostGuard(format!("binomial({n}, {k}) beyond exact range")));
    }
    let m = rule.len();
    let table = kernel.tabulate(rule.nodes(), rule.nodes())?;
    let mut buf = vec![0.0; k * k];
    let (lhs, mag) = tensor_sum(rule, k, |idx| table_k_kernel(&table, m, idx, idx, &mut buf))?;
    let rhs = mode_factor(kernel, k) * binomial(n, k);
    Ok(TheoremReport::assess(
        TheoremId::Theorem2Norm,
        n,
        k,
        kernel.mode(),
        lhs,
        rhs,
        mag.max(binomial(n, k) * mode_factor(kernel, k).abs())
            .max((max_abs(&table) * rule_mass(rule)).powi(k as i32) / factorial(k)),
        ORACLE_TOLERANCE,
        m,
        grid_cost(m, k),
    ))
}

/// Iterated classical integration theorem for the Christoffel–Darboux
/// kernel of `ensemble` (`c = n`): the `(n−k)`-fold integral of
/// `det_n[K_n(x_i, x_j)]` against `(n−k)! det_k[K_n]` at the free points.
pub fn verify_dyson_classical(
    ensemble: &Ensemble,
    k: usize,
    free: &[f64],
    rule: &QuadratureRule,
) -> Result<TheoremReport> {
    let n = ensemble.n();
    if k > n {
        return Err(Error::DimensionMismatch(format!("k = {k} exceeds n = {n}")));
    }
    if free.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "expected {k} free points, got {}",
            free.len()
        )));
    }
    let d = n - k;
    check_dim(d, ORACLE_MAX_DIM, "Dyson")?;
    let family = ensemble.family();
    if rule.domain() != family.domain() || rule.weight_embedded() {
        return Err(Error::WeightMismatch(format!(
            "Dyson oracle for {family} needs a plain dx rule on {}",
            family.domain()
        )));
    }
    let points: Vec<f64> = rule.nodes().iter().chain(free).copied().collect();
    let waves = points
        .iter()
        .map(|&x| ensemble.wave_values(x))
        .collect::<Result<Vec<_>>>()?;
    let width = points.len();
    let mut values = Vec::with_capacity(width * width);
    for a in &waves {
        for b in &waves {
            values.push(a.iter().zip(b).map(|(u, v)| u * v).sum());
        }
    }
    let table = PairTable::from_values(width, values);
    let (lhs, mag) = integrate_det(&table, n, d, rule)?;
    let rhs = factorial(d) * ensemble.correlation_rk(free)?;
    Ok(TheoremReport::assess(
        TheoremId::Dyson,
        n,
        k,
        KernelMode::Normalized,
        lhs,
        rhs,
        mag,
        ORACLE_TOLERANCE,
        rule.len(),
        grid_cost(rule.len(), d),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{Domain, OrthoFamily};
    use crate::quadrature::QuadratureRule;

    fn fixture_a() -> (GeneralizedKernel, QuadratureRule) {
        let set = FunctionSet::monomials(Domain::unit(), 2).unwrap();
        let rule = QuadratureRule::for_set(&set, 20).unwrap();
        (GeneralizedKernel::new(set.clone(), set, &rule).unwrap(), rule)
    }

    #[test]
    fn theorem1_fixture_a_closed_form() {
        let (kernel, rule) = fixture_a();
        for &(p, q) in &[(0.1, 0.9), (0.5, 0.25), (0.77, 0.03)] {
            let expected = 4.0 - 6.0 * p - 6.0 * q + 12.0 * p * q;
            let lhs = lhs_theorem1(&kernel, 1, &[p], &[q], &rule).unwrap();
            let rhs = rhs_theorem1(&kernel, 1, &[p], &[q]).unwrap();
            assert!((lhs - expected).abs() < 1e-12);
            assert!((rhs - expected).abs() < 1e-12);
            assert!(verify_theorem1(&kernel, 1, &[p], &[q], &rule).unwrap().pass);
        }
    }

    #[test]
    fn theorem1_k_zero_and_k_n() {
        let set = FunctionSet::wave_functions(OrthoFamily::Legendre, 3).unwrap();
        let rule = QuadratureRule::for_set(&set, 20).unwrap();
        let kernel = GeneralizedKernel::new(set.clone(), set, &rule).unwrap();
        assert!((lhs_theorem1(&kernel, 0, &[], &[], &rule).unwrap() - 6.0).abs() < 1e-12);
        assert_eq!(rhs_theorem1(&kernel, 0, &[], &[]).unwrap(), 6.0);
        let r = verify_theorem1(&kernel, 3, &[0.1, -0.4, 0.7], &[0.3, 0.5, -0.9], &rule).unwrap();
        assert_eq!(r.theorem_id, TheoremId::StepIiiIdentity);
        assert_eq!(r.oracle_cost, 1);
        assert!(r.abs_residual <= 1e-12 * r.scale, "{r:?}");
    }

    #[test]
    fn theorem1_argument_errors() {
        let (kernel, rule) = fixture_a();
        assert!(matches!(
            lhs_theorem1(&kernel, 3, &[0.0; 3], &[0.0; 3], &rule),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            lhs_theorem1(&kernel, 1, &[0.1, 0.2], &[0.3], &rule),
            Err(Error::DimensionMismatch(_))
        ));
        let other = QuadratureRule::for_set(&FunctionSet::monomials(Domain::symmetric(), 2).unwrap(), 10).unwrap();
        assert!(matches!(
            lhs_theorem1(&kernel, 1, &[0.1], &[0.2], &other),
            Err(Error::DomainMismatch(_))
        ));
    }

    #[test]
    fn oracle_dimension_guard() {
        let set = FunctionSet::monomials(Domain::unit(), 6).unwrap();
        let rule = QuadratureRule::for_set(&set, 10).unwrap();
        let kernel = GeneralizedKernel::new(set.clone(), set.clone(), &rule).unwrap();
        assert!(matches!(
            lhs_theorem1(&kernel, 1, &[0.2], &[0.3], &rule),
            Err(Error::CostGuard(_))
        ));
        assert!(matches!(verify_andreief(&set, &set, &rule), Err(Error::CostGuard(_))));
        assert!(matches!(verify_knorm(&kernel, 4, &rule), Err(Error::CostGuard(_))));
    }

    #[test]
    fn andreief_fixture_a_is_one_sixth() {
        let (kernel, rule) = fixture_a();
        let r = verify_andreief(kernel.phi(), kernel.psi(), &rule).unwrap();
        assert!((r.lhs - 1.0 / 6.0).abs() < 1e-14);
        assert!((r.rhs - 1.0 / 6.0).abs() < 1e-14);
        assert!(r.pass);
    }

    #[test]
    fn normalization_examples() {
        let (kernel, rule) = fixture_a();
        let r = verify_knorm(&kernel, 2, &rule).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-10 && r.pass);
        let set = FunctionSet::monomials(Domain::unit(), 4).unwrap();
        let rule = QuadratureRule::for_set(&set, 20).unwrap();
        let kernel = GeneralizedKernel::new(set.clone(), set, &rule).unwrap();
        let r = verify_knorm(&kernel, 2, &rule).unwrap();
        assert_eq!(r.rhs, 6.0);
        assert!(r.pass, "{r:?}");
        assert!(verify_knorm(&kernel, 0, &rule).is_err());
    }

    #[test]
    fn contraction_fixture_a() {
        let (kernel, rule) = fixture_a();
        let r = verify_contraction_k(&kernel, 1, &[0.2], &[0.65], &rule).unwrap();
        assert!(r.pass && r.rel_residual < 1e-12, "{r:?}");
        let r = verify_contraction_k(&kernel, 2, &[0.3, 0.8], &[0.3, 0.8], &rule).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn dyson_hermite_examples() {
        let e = Ensemble::new(OrthoFamily::Hermite, 3).unwrap();
        let rule = e.plain_rule(30).unwrap();
        let r = verify_dyson_classical(&e, 0, &[], &rule).unwrap();
        assert!((r.lhs - 6.0).abs() < 1e-10, "{r:?}");
        let e = Ensemble::new(OrthoFamily::Hermite, 2).unwrap();
        let r = verify_dyson_classical(&e, 1, &[0.4], &rule).unwrap();
        assert!(r.rel_residual <= 1e-9, "{r:?}");
        let weighted = crate::quadrature::gauss_rule(Domain::RealLine, 10).unwrap();
        assert!(matches!(
            verify_dyson_classical(&e, 1, &[0.4], &weighted),
            Err(Error::WeightMismatch(_))
        ));
    }

    #[test]
    fn assessment_switches_to_absolute_near_zero() {
        let r = TheoremReport::assess(
            TheoremId::Theorem1,
            2,
            2,
            KernelMode::Unnormalized,
            1e-15,
            0.0,
            1.0,
            1e-8,
            1,
            1,
        );
        assert!(r.pass);
        let r = TheoremReport::assess(
            TheoremId::Theorem1,
            2,
            1,
            KernelMode::Normalized,
            1.0,
            1.0 + 1e-6,
            1.0,
            1e-8,
            1,
            1,
        );
        assert!(!r.pass);
        let r = TheoremReport::assess(
            TheoremId::Theorem1,
            2,
            1,
            KernelMode::Normalized,
            f64::NAN,
            1.0,
            1.0,
            1e-8,
            1,
            1,
        );
        assert!(!r.pass);
    }
}
