//! The bilinear `Q_n(x, y) = Σ_j φ_j(x) ψ_j(y)` and the generalized kernel
//! built from it by dressing with the inverse overlap matrix:
//!
//! ```text
//! 𝒦_n(p, q) = (1/C) Σ_{l,j} φ_j(p) ψ_l(q) C_{lj}  =  Σ_{l,j} φ_j(p) (G⁻¹)_{lj} ψ_l(q)
//! ```
//!
//! When the overlap matrix is singular (`C = 0`) the kernel is kept in its
//! `C`-scaled form `C·𝒦_n = Σ φ_j(p) ψ_l(q) C_{lj}`, whose coefficient
//! matrix is the adjugate of `G`. The active convention is carried by
//! [`KernelMode`] so the two are never mixed.

use serde::Serialize;
use twofloat::TwoFloat;

use crate::basis::FunctionSet;
use crate::error::{Error, Result};
use crate::gram::{compute_gram, GramMatrix};
use crate::linalg::{self, Lu};
use crate::quadrature::QuadratureRule;

/// Largest `n` accepted by the column-replacement oracle.
pub const COLUMN_ORACLE_MAX_N: usize = 6;

/// Which normalization the kernel values carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelMode {
    /// Values are `𝒦_n` itself (`G` has full rank).
    Normalized,
    /// Values are `C·𝒦_n` (`G` is rank deficient).
    Unnormalized,
}

/// `Q_n(x, y) = Σ_j φ_j(x) ψ_j(y)`.
#[derive(Clone, Debug)]
pub struct BilinearQ {
    phi: FunctionSet,
    psi: FunctionSet,
}

impl BilinearQ {
    pub fn new(phi: FunctionSet, psi: FunctionSet) -> Result<Self> {
        if phi.len() != psi.len() {
            return Err(Error::DimensionMismatch(format!(
                "phi has {} members, psi has {}",
                phi.len(),
                psi.len()
            )));
        }
        Ok(BilinearQ { phi, psi })
    }

    pub fn n(&self) -> usize {
        self.phi.len()
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        let a = self.phi.values(x)?;
        let b = self.psi.values(y)?;
        Ok(a.iter().zip(&b).map(|(u, v)| u * v).sum())
    }
}

/// Generalized kernel of two function sets.
#[derive(Clone, Debug)]
pub struct GeneralizedKernel {
    phi: FunctionSet,
    psi: FunctionSet,
    gram: GramMatrix,
    /// `coeff[j * n + l]` multiplies `φ_j(p) ψ_l(q)`.
    coeff: Vec<f64>,
    /// `Gᵀ` and its factorization, present in normalized mode.
    transposed: Option<(Vec<f64>, Lu)>,
    mode: KernelMode,
}

impl GeneralizedKernel {
    /// Builds the overlap matrix under `rule` and the kernel coefficients.
    pub fn new(phi: FunctionSet, psi: FunctionSet, rule: &QuadratureRule) -> Result<Self> {
        let gram = compute_gram(&phi, &psi, rule)?;
        Self::from_gram(phi, psi, gram)
    }

    pub fn from_gram(phi: FunctionSet, psi: FunctionSet, gram: GramMatrix) -> Result<Self> {
        let n = phi.len();
        if psi.len() != n || gram.n() != n {
            return Err(Error::DimensionMismatch(format!(
                "sets of size {} and {} with a {}x{} overlap matrix",
                n,
                psi.len(),
                gram.n(),
                gram.n()
            )));
        }
        let (source, mode) = if gram.is_full_rank() {
            (gram.inverse_row_solve()?, KernelMode::Normalized)
        } else {
            (gram.adjugate(), KernelMode::Unnormalized)
        };
        // source[l][j] multiplies φ_j(p) ψ_l(q): transpose into coeff[j][l]
        let mut coeff = vec![0.0; n * n];
        for l in 0..n {
            for j in 0..n {
                coeff[j * n + l] = source[l * n + j];
            }
        }
        let transposed = (mode == KernelMode::Normalized).then(|| {
            let mut gt = vec![0.0; n * n];
            for i in 0..n {
                for k in 0..n {
                    gt[k * n + i] = gram.entry(i, k);
                }
            }
            let lu = Lu::factor(&gt, n);
            (gt, lu)
        });
        Ok(GeneralizedKernel {
            phi,
            psi,
            gram,
            coeff,
            transposed,
            mode,
        })
    }

    /// `y(q)` with `value(p, q) = Σ_j φ_j(p) y_j(q)`: the refined solution of
    /// `Gᵀ y = ψ(q)` in normalized mode, `adj(G)ᵀ ψ(q)` otherwise.
    pub fn dual(&self, psi_q: &[f64]) -> Vec<f64> {
        let n = self.n();
        if let Some((gt, lu)) = &self.transposed {
            if let Some(y) = lu.solve_refined(gt, psi_q) {
                return y;
            }
        }
        self.coeff.chunks(n).map(|row| linalg::dot2(row, psi_q)).collect()
    }

    pub fn n(&self) -> usize {
        self.phi.len()
    }

    pub fn mode(&self) -> KernelMode {
        self.mode
    }

    pub fn gram(&self) -> &GramMatrix {
        &self.gram
    }

    pub fn phi(&self) -> &FunctionSet {
        &self.phi
    }

    pub fn psi(&self) -> &FunctionSet {
        &self.psi
    }

    /// Coefficients `c[j][l]` of the bilinear form, row-major.
    pub fn coefficients(&self) -> &[f64] {
        &self.coeff
    }

    /// The bilinear form on precomputed member values.
    pub fn value_from(&self, phi_p: &[f64], psi_q: &[f64]) -> f64 {
        linalg::dot2(phi_p, &self.dual(psi_q))
    }

    pub fn value(&self, p: f64, q: f64) -> Result<f64> {
        let a = self.phi.values(p)?;
        let b = self.psi.values(q)?;
        Ok(self.value_from(&a, &b))
    }

    /// `𝒦_n(p, q)`; fails for a singular overlap matrix.
    pub fn eval(&self, p: f64, q: f64) -> Result<f64> {
        match self.mode {
            KernelMode::Normalized => self.value(p, q),
            KernelMode::Unnormalized => Err(Error::SingularNormalization {
                rank: self.gram.rank(),
                n: self.n(),
            }),
        }
    }

    /// `C·𝒦_n(p, q)` in either mode.
    pub fn eval_scaled(&self, p: f64, q: f64) -> Result<f64> {
        let v = self.value(p, q)?;
        Ok(match self.mode {
            KernelMode::Normalized => self.gram.det() * v,
            KernelMode::Unnormalized => v,
        })
    }

    /// Kernel values on all pairs, `out[i * qs.len() + j] = value(ps[i], qs[j])`.
    pub fn tabulate(&self, ps: &[f64], qs: &[f64]) -> Result<Vec<f64>> {
        let n = self.n();
        let mut buf = vec![0.0; n];
        let mut duals = Vec::with_capacity(qs.len() * n);
        for &q in qs {
            self.psi.eval_all(q, &mut buf)?;
            duals.extend(self.dual(&buf));
        }
        let mut out = Vec::with_capacity(ps.len() * qs.len());
        for &p in ps {
            self.phi.eval_all(p, &mut buf)?;
            out.extend(duals.chunks(n).map(|y| linalg::dot2(&buf, y)));
        }
        Ok(out)
    }

    /// Kernel as a sum over column-replaced overlap determinants:
    /// column `a` of `G` is replaced by `φ_i(p) ψ_a(q)`. Same convention as
    /// [`value`](Self::value).
    pub fn column_oracle(&self, p: f64, q: f64) -> Result<f64> {
        let n = self.n();
        if n > COLUMN_ORACLE_MAX_N {
            return Err(Error::CostGuard(format!(
                "column-replacement oracle limited to n <= {COLUMN_ORACLE_MAX_N}, got {n}"
            )));
        }
        let a = self.phi.values(p)?;
        let b = self.psi.values(q)?;
        let g: Vec<TwoFloat> = self.gram.entries().iter().map(|&v| TwoFloat::from(v)).collect();
        let mut total = TwoFloat::from(0.0);
        for col in 0..n {
            let mut m = g.clone();
            for (i, &ai) in a.iter().enumerate() {
                m[i * n + col] = TwoFloat::new_mul(ai, b[col]);
            }
            total += linalg::det_dd(m, n);
        }
        Ok(match self.mode {
            KernelMode::Normalized => linalg::div_dd(total, linalg::det_dd(g, n)).hi(),
            KernelMode::Unnormalized => total.hi(),
        })
    }

    /// `det_{k×k}[value(p_i, q_j)]`.
    pub fn kernel_det(&self, p: &[f64], q: &[f64]) -> Result<f64> {
        if p.len() != q.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} p-points against {} q-points",
                p.len(),
                q.len()
            )));
        }
        let k = p.len();
        if k > self.n() {
            log::warn!(
                "kernel determinant of size {k} exceeds the kernel rank {}; result is zero up to rounding",
                self.n()
            );
        }
        let table = self.tabulate(p, q)?;
        Ok(linalg::det(&table, k))
    }

    /// `𝒦^(k)(p; q) = det_k[𝒦(p_i, q_j)] / k!`.
    pub fn k_kernel(&self, p: &[f64], q: &[f64]) -> Result<f64> {
        Ok(self.kernel_det(p, q)? / linalg::factorial(p.len()))
    }
}
