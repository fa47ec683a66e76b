//! Symmetric tridiagonal eigensolver: Sturm-sequence bisection for the
//! eigenvalues, inverse iteration with a pivoted tridiagonal LU for the
//! eigenvectors.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Symmetric tridiagonal matrix with diagonal `diag` and off-diagonal `off`
/// (`off.len() == diag.len() - 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal<T> {
    pub diag: Vec<T>,
    pub off: Vec<T>,
}

impl<T: Real> SymTridiagonal<T> {
    pub fn new(diag: Vec<T>, off: Vec<T>) -> Self {
        assert_eq!(off.len() + 1, diag.len().max(1));
        Self { diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn matvec(&self, x: &[T]) -> Vec<T> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut v = self.diag[i] * x[i];
                if i > 0 {
                    v += self.off[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    v += self.off[i] * x[i + 1];
                }
                v
            })
            .collect()
    }

    fn gershgorin(&self) -> (T, T) {
        let n = self.len();
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1].abs() } else { T::zero() }
                + if i + 1 < n { self.off[i].abs() } else { T::zero() };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: T) -> usize {
        let (lo, hi) = self.gershgorin();
        let pivmin = T::min_positive_value().max(T::epsilon() * (hi.abs().max(lo.abs())) * T::epsilon());
        let mut count = 0;
        let mut q = self.diag[0] - x;
        for i in 0..self.len() {
            if i > 0 {
                q = self.diag[i] - x - self.off[i - 1] * self.off[i - 1] / q;
            }
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < T::zero() {
                count += 1;
            }
        }
        count
    }

    /// The `k` smallest eigenvalues, ascending.
    pub fn lowest_eigenvalues(&self, k: usize) -> Vec<T> {
        let (lo0, hi0) = self.gershgorin();
        let span = (hi0 - lo0).max(T::one());
        let two = T::lit(2.0);
        (0..k.min(self.len()))
            .map(|j| {
                let (mut lo, mut hi) = (lo0 - span * T::epsilon(), hi0 + span * T::epsilon());
                for _ in 0..256 {
                    let mid = (lo + hi) / two;
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if self.count_below(mid) > j {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                    if hi - lo <= two * T::epsilon() * lo.abs().max(hi.abs()) {
                        break;
                    }
                }
                (lo + hi) / two
            })
            .collect()
    }

    /// Solve `(A − σ I) x = b` in place with partial pivoting.
    fn shifted_solve(&self, sigma: T, b: &mut [T]) {
        let n = self.len();
        let tiny = T::epsilon() * T::epsilon();
        let mut d: Vec<T> = self.diag.iter().map(|&v| v - sigma).collect();
        let mut dl = self.off.clone();
        let mut du = self.off.clone();
        let mut du2 = vec![T::zero(); n.saturating_sub(2)];
        let mut swap = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == T::zero() {
                    d[i] = tiny;
                }
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swap[i] = true;
            }
        }
        if n > 0 && d[n - 1] == T::zero() {
            d[n - 1] = tiny;
        }
        for i in 0..n.saturating_sub(1) {
            if swap[i] {
                let temp = b[i] - dl[i] * b[i + 1];
                b[i] = b[i + 1];
                b[i + 1] = temp;
            } else {
                b[i + 1] -= dl[i] * b[i];
            }
        }
        for i in (0..n).rev() {
            let mut v = b[i];
            if i + 1 < n {
                v -= du[i] * b[i + 1];
            }
            if i + 2 < n {
                v -= du2[i] * b[i + 2];
            }
            b[i] = v / d[i];
        }
    }

    /// Eigenvector for an (accurate) eigenvalue `lambda`, unit Euclidean norm,
    /// orthogonalized against `previous`.
    pub fn eigenvector(&self, lambda: T, previous: &[Vec<T>]) -> Result<Vec<T>> {
        let n = self.len();
        let (lo, hi) = self.gershgorin();
        let scale = lo.abs().max(hi.abs()).max(T::one());
        let sigma = lambda + T::lit(4.0) * T::epsilon() * scale;
        let mut x: Vec<T> = (0..n)
            .map(|i| T::one() + T::lit(0.1) * T::from_usize(i % 7).unwrap())
            .collect();
        let normalize = |v: &mut Vec<T>| {
            let norm = v.iter().map(|&a| a * a).fold(T::zero(), |a, b| a + b).sqrt();
            if norm > T::zero() && norm.is_finite() {
                v.iter_mut().for_each(|a| *a /= norm);
                true
            } else {
                false
            }
        };
        for _ in 0..4 {
            for p in previous {
                let dot = p.iter().zip(&x).map(|(&a, &b)| a * b).fold(T::zero(), |a, b| a + b);
                x.iter_mut().zip(p).for_each(|(a, &b)| *a -= dot * b);
            }
            if !normalize(&mut x) {
                return Err(Error::ConvergenceFailure("inverse iteration lost the vector".into()));
            }
            self.shifted_solve(sigma, &mut x);
            if !normalize(&mut x) {
                return Err(Error::ConvergenceFailure("inverse iteration diverged".into()));
            }
        }
        let ax = self.matvec(&x);
        let residual = ax
            .iter()
            .zip(&x)
            .map(|(&a, &b)| (a - lambda * b).powi(2))
            .fold(T::zero(), |a, b| a + b)
            .sqrt();
        let budget = T::lit(1e3) * T::from_usize(n).unwrap().sqrt() * T::epsilon() * scale;
        if !(residual <= budget) {
            return Err(Error::ConvergenceFailure(format!(
                "eigenvector residual {residual} exceeds {budget}"
            )));
        }
        Ok(x)
    }
}
