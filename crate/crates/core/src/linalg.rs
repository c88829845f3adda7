//! Dense row-major square-matrix helpers: partial-pivoting LU, determinants,
//! minors and singular values, plus double-double variants for
//! ill-conditioned systems.

use nalgebra::DMatrix;
use twofloat::TwoFloat;

/// Iterative-refinement sweeps in [`Lu::solve_refined`].
pub const REFINEMENT_STEPS: usize = 2;

/// Row-pivoted LU factorization `P A = L U` of a square matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Lu {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
    sign: f64,
}

impl Lu {
    pub fn factor(a: &[f64], n: usize) -> Self {
        assert_eq!(a.len(), n * n, "matrix buffer does not match n = {n}");
        let mut lu = a.to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| lu[i * n + col].abs().total_cmp(&lu[j * n + col].abs()))
                .unwrap_or(col);
            if pivot != col {
                for c in 0..n {
                    lu.swap(col * n + c, pivot * n + c);
                }
                perm.swap(col, pivot);
                sign = -sign;
            }
            let d = lu[col * n + col];
            if d == 0.0 {
                continue;
            }
            for row in col + 1..n {
                let f = lu[row * n + col] / d;
                lu[row * n + col] = f;
                if f != 0.0 {
                    for c in col + 1..n {
                        lu[row * n + c] -= f * lu[col * n + c];
                    }
                }
            }
        }
        Lu { n, lu, perm, sign }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Diagonal of `U`.
    pub fn pivots(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.lu[i * self.n + i])
    }

    /// Signed product of the pivots.
    pub fn det(&self) -> f64 {
        self.pivots().fold(self.sign, |acc, p| acc * p)
    }

    pub fn is_singular(&self) -> bool {
        self.pivots().any(|p| p == 0.0)
    }

    /// Solves `A x = b`. Returns `None` when a pivot is exactly zero.
    pub fn solve(&self, b: &[f64]) -> Option<Vec<f64>> {
        let n = self.n;
        if self.is_singular() {
            return None;
        }
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let s: f64 = (0..i).map(|j| self.lu[i * n + j] * x[j]).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| self.lu[i * n + j] * x[j]).sum();
            x[i] = (x[i] - s) / self.lu[i * n + i];
        }
        Some(x)
    }

    /// Solves `A x = b` for the factored `A`, then refines `x` with
    /// residuals `b − A x` evaluated in double-double arithmetic.
    pub fn solve_refined(&self, a: &[f64], b: &[f64]) -> Option<Vec<f64>> {
        let n = self.n;
        let mut x = self.solve(b)?;
        for _ in 0..REFINEMENT_STEPS {
            let r: Vec<f64> = (0..n)
                .map(|i| {
                    let mut acc = TwoFloat::from(b[i]);
                    for (j, &xj) in x.iter().enumerate() {
                        acc -= TwoFloat::new_mul(a[i * n + j], xj);
                    }
                    acc.hi()
                })
                .collect();
            let d = self.solve(&r)?;
            for (xi, di) in x.iter_mut().zip(d) {
                *xi += di;
            }
        }
        Some(x)
    }

    /// `A⁻¹` row-major, built column by column from triangular solves.
    pub fn inverse(&self) -> Option<Vec<f64>> {
        let n = self.n;
        let mut inv = vec![0.0; n * n];
        let mut e = vec![0.0; n];
        for col in 0..n {
            e.iter_mut().for_each(|v| *v = 0.0);
            e[col] = 1.0;
            let x = self.solve(&e)?;
            for row in 0..n {
                inv[row * n + col] = x[row];
            }
        }
        Some(inv)
    }
}

/// Determinant by partial-pivoting elimination, overwriting `a`.
///
/// Allocation-free, for the inner loops of the quadrature oracles.
pub fn det_in_place(a: &mut [f64], n: usize) -> f64 {
    let mut det = 1.0;
    for col in 0..n {
        let mut pivot = col;
        let mut best = a[col * n + col].abs();
        for row in col + 1..n {
            let v = a[row * n + col].abs();
            if v > best {
                best = v;
                pivot = row;
            }
        }
        if best == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for c in col..n {
                a.swap(col * n + c, pivot * n + c);
            }
            det = -det;
        }
        let d = a[col * n + col];
        det *= d;
        for row in col + 1..n {
            let f = a[row * n + col] / d;
            if f != 0.0 {
                for c in col + 1..n {
                    a[row * n + c] -= f * a[col * n + c];
                }
            }
        }
    }
    det
}

/// Determinant; the empty (0×0) determinant is 1.
pub fn det(a: &[f64], n: usize) -> f64 {
    let mut buf = a.to_vec();
    det_in_place(&mut buf, n)
}

/// Determinant by recursive Laplace expansion along the first row.
///
/// O(n!): only meant as an independent check for small matrices.
pub fn laplace_det(a: &[f64], n: usize) -> f64 {
    match n {
        0 => 1.0,
        1 => a[0],
        _ => {
            let mut total = 0.0;
            for c in 0..n {
                let minor = submatrix(a, n, 0, c);
                let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
                total += sign * a[c] * laplace_det(&minor, n - 1);
            }
            total
        }
    }
}

/// Copy of `a` with `row` and `col` removed.
pub fn submatrix(a: &[f64], n: usize, row: usize, col: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity((n - 1) * (n - 1));
    for r in (0..n).filter(|&r| r != row) {
        for c in (0..n).filter(|&c| c != col) {
            out.push(a[r * n + c]);
        }
    }
    out
}

/// Singular values in decreasing order.
pub fn singular_values(a: &[f64], n: usize) -> Vec<f64> {
    let m = DMatrix::from_row_slice(n, n, a);
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}

pub fn matmul(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

/// `n!` in exact integer arithmetic (n ≤ 20).
pub fn factorial(n: usize) -> f64 {
    assert!(n <= 20, "{n}! overflows u64");
    (1..=n as u64).product::<u64>() as f64
}

/// Binomial coefficient in exact integer arithmetic (n ≤ 20).
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    assert!(n <= 20, "binomial({n}, {k}) beyond exact range");
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut c: u64 = 1;
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    c as f64
}

/// `Σ a_i b_i` with exact products and a double-double accumulator.
pub fn dot2(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = TwoFloat::from(0.0);
    for (&x, &y) in a.iter().zip(b) {
        acc += TwoFloat::new_mul(x, y);
    }
    acc.hi()
}

/// Determinant by partial-pivoting elimination in double-double arithmetic.
/// Double-double quotient with two correction steps.
///
/// The `Div` impl of `TwoFloat` returns only a double-precision quotient.
pub fn div_dd(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let q1 = a.hi() / b.hi();
    let r = a - b * TwoFloat::from(q1);
    let q2 = r.hi() / b.hi();
    let r = r - b * TwoFloat::from(q2);
    let q3 = r.hi() / b.hi();
    TwoFloat::from(q1) + TwoFloat::from(q2) + TwoFloat::from(q3)
}

pub fn det_dd(mut a: Vec<TwoFloat>, n: usize) -> TwoFloat {
    assert_eq!(a.len(), n * n, "matrix buffer does not match n = {n}");
    let mut det = TwoFloat::from(1.0);
    for c in 0..n {
        let mut piv = c;
        for r in c + 1..n {
            if a[r * n + c].abs() > a[piv * n + c].abs() {
                piv = r;
            }
        }
        if a[piv * n + c] == 0.0 {
            return TwoFloat::from(0.0);
        }
        if piv != c {
            for k in 0..n {
                a.swap(c * n + k, piv * n + k);
            }
            det = -det;
        }
        let d = a[c * n + c];
        det *= d;
        for r in c + 1..n {
            let f = div_dd(a[r * n + c], d);
            for k in c + 1..n {
                let t = f * a[c * n + k];
                a[r * n + k] -= t;
            }
        }
    }
    det
}
