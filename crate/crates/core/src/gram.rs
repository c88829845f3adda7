//! Overlap matrix `⟨i,k⟩ = ∫ φ_i(x) ψ_k(x) dx` of two function sets, its
//! determinant `C`, signed minors and numerical rank.

use serde::Serialize;

use crate::basis::FunctionSet;
use crate::error::{Error, Result};
use crate::linalg::{self, Lu};
use crate::quadrature::{integrate_1d, QuadratureRule};

/// Relative singular-value cutoff defining the numerical rank.
pub const RANK_TOLERANCE: f64 = 1e-9;

/// Overlap matrix together with its factorization.
///
/// A vanishing determinant is not an error here: downstream kernels switch
/// to the `C`-scaled convention instead.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    n: usize,
    entries: Vec<f64>,
    det_c: f64,
    lu: Lu,
    rank: usize,
    tol_rank: f64,
    singular_values: Vec<f64>,
}

#[derive(Serialize)]
struct GramJson<'a> {
    n: usize,
    entries: Vec<&'a [f64]>,
    det: f64,
    rank: usize,
    tol_rank: f64,
}

impl Serialize for GramMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GramJson {
            n: self.n,
            entries: self.entries.chunks(self.n).collect(),
            det: self.det_c,
            rank: self.rank,
            tol_rank: self.tol_rank,
        }
        .serialize(s)
    }
}

impl GramMatrix {
    /// Builds the factorization, determinant and rank of a row-major matrix.
    pub fn from_entries(entries: Vec<f64>, n: usize) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "{} entries do not form a non-empty {n}x{n} matrix",
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteEntry {
                row: pos / n,
                col: pos % n,
            });
        }
        let lu = Lu::factor(&entries, n);
        let det_c = lu.det();
        let singular_values = linalg::singular_values(&entries, n);
        let sigma_max = singular_values[0];
        let tol_rank = RANK_TOLERANCE * sigma_max;
        let rank = singular_values.iter().filter(|&&s| s > tol_rank).count();
        Ok(GramMatrix {
            n,
            entries,
            det_c,
            lu,
            rank,
            tol_rank,
            singular_values,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, k: usize) -> f64 {
        self.entries[i * self.n + k]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    /// The normalization `C = det⟨i,k⟩`.
    pub fn det(&self) -> f64 {
        self.det_c
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank == self.n
    }

    /// Absolute singular-value threshold used for [`rank`](Self::rank).
    pub fn tol_rank(&self) -> f64 {
        self.tol_rank
    }

    pub fn singular_values(&self) -> &[f64] {
        &self.singular_values
    }

    pub fn lu(&self) -> &Lu {
        &self.lu
    }

    /// Signed minor `C_{lj} = (−1)^{l+j} det` of the matrix with row `j` and
    /// column `l` removed (zero-based indices). `C_{00} = 1` for `n = 1`.
    pub fn signed_minor(&self, l: usize, j: usize) -> Result<f64> {
        let n = self.n;
        for idx in [l, j] {
            if idx >= n {
                return Err(Error::IndexOutOfRange { index: idx, n });
            }
        }
        let sub = linalg::submatrix(&self.entries, n, j, l);
        let sign = if (l + j).is_multiple_of(2) { 1.0 } else { -1.0 };
        Ok(sign * linalg::det(&sub, n - 1))
    }

    /// Matrix of all signed minors, `adj[l][j] = C_{lj}` (row-major).
    /// This is the adjugate and stays meaningful when `C = 0`.
    pub fn adjugate(&self) -> Vec<f64> {
        let n = self.n;
        let mut adj = vec![0.0; n * n];
        for l in 0..n {
            for j in 0..n {
                adj[l * n + j] = self.signed_minor(l, j).expect("indices in range");
            }
        }
        adj
    }

    /// `M[l][k] = C_{lk} / C`, i.e. the inverse, from triangular solves of the
    /// stored factorization.
    pub fn inverse_row_solve(&self) -> Result<Vec<f64>> {
        if !self.is_full_rank() {
            return Err(Error::SingularNormalization {
                rank: self.rank,
                n: self.n,
            });
        }
        self.lu.inverse().ok_or(Error::SingularNormalization {
            rank: self.rank,
            n: self.n,
        })
    }
}

/// Checks that the two sets and the rule agree on domain and measure.
pub(crate) fn check_compatible(phi: &FunctionSet, psi: &FunctionSet, rule: &QuadratureRule) -> Result<()> {
    if phi.len() != psi.len() {
        return Err(Error::DimensionMismatch(format!(
            "phi has {} members, psi has {}",
            phi.len(),
            psi.len()
        )));
    }
    if phi.domain() != psi.domain() || phi.domain() != rule.domain() {
        return Err(Error::DomainMismatch(format!(
            "phi on {}, psi on {}, rule on {}",
            phi.domain(),
            psi.domain(),
            rule.domain()
        )));
    }
    if phi.measure() != psi.measure() || phi.measure() != rule.measure() {
        return Err(Error::WeightMismatch(format!(
            "phi integrates against {:?}, psi against {:?}, rule embeds {:?}",
            phi.measure(),
            psi.measure(),
            rule.measure()
        )));
    }
    Ok(())
}

/// Overlap matrix of `phi` against `psi` under `rule`.
pub fn compute_gram(phi: &FunctionSet, psi: &FunctionSet, rule: &QuadratureRule) -> Result<GramMatrix> {
    check_compatible(phi, psi, rule)?;
    let n = phi.len();
    let mut entries = vec![0.0; n * n];
    for (i, fi) in phi.members().iter().enumerate() {
        for (k, gk) in psi.members().iter().enumerate() {
            let v = integrate_1d(|x| fi.eval(x) * gk.eval(x), rule)?;
            if !v.is_finite() {
                return Err(Error::NonFiniteEntry { row: i, col: k });
            }
            entries[i * n + k] = v;
        }
    }
    GramMatrix::from_entries(entries, n)
}
