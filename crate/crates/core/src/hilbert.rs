//! Quasi-periodic states stored mode by mode.
//!
//! A state is `ψ(θ, y) = (2π)^{-1/2} Σ_n e^{i(n+q)θ} f_n(y)` with each
//! profile `f_n` sampled on a shared uniform [`Grid`]. Integrals in `y` use
//! the trapezoid rule. Point evaluation interpolates linearly and axial shifts
//! use four-point Lagrange weights.

use std::collections::BTreeMap;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{cis, wrap_mod, Real};

/// Smallest grid accepted by [`make_grid`].
pub const MIN_GRID_POINTS: usize = 3;

/// Fraction of a profile's norm² that a y-shift may push off the grid.
pub const GRID_LEAK_TOL: f64 = 1e-10;

/// Uniform grid on `[y_min, y_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid<T> {
    y_min: T,
    y_max: T,
    n_points: usize,
}

pub fn make_grid<T: Real>(center: T, half_width: T, n_points: usize) -> Result<Grid<T>> {
    if !(half_width > T::zero()) {
        return Err(Error::NonPositiveParameter {
            name: "half_width",
            value: half_width.to_f64_lossy(),
        });
    }
    if n_points < MIN_GRID_POINTS {
        return Err(Error::TooFewPoints {
            got: n_points,
            min: MIN_GRID_POINTS,
        });
    }
    Ok(Grid {
        y_min: center - half_width,
        y_max: center + half_width,
        n_points,
    })
}

impl<T: Real> Grid<T> {
    pub fn y_min(&self) -> T {
        self.y_min
    }
    pub fn y_max(&self) -> T {
        self.y_max
    }
    pub fn len(&self) -> usize {
        self.n_points
    }
    pub fn is_empty(&self) -> bool {
        self.n_points == 0
    }

    pub fn spacing(&self) -> T {
        (self.y_max - self.y_min) / T::from_usize(self.n_points - 1).unwrap()
    }

    pub fn point(&self, i: usize) -> T {
        self.y_min + self.spacing() * T::from_usize(i).unwrap()
    }

    pub fn points(&self) -> impl Iterator<Item = T> + '_ {
        (0..self.n_points).map(move |i| self.point(i))
    }

    /// Whether `[lo, hi]` lies inside the grid, with a relative slack of 1e-9.
    pub fn covers(&self, lo: T, hi: T) -> bool {
        let slack = T::lit(1e-9) * (self.y_max - self.y_min);
        lo >= self.y_min - slack && hi <= self.y_max + slack
    }

    /// Trapezoid rule for a sampled function.
    pub fn integrate<S>(&self, values: &[S]) -> S
    where
        S: Copy + std::ops::Add<Output = S> + std::ops::Mul<T, Output = S> + num_traits::Zero,
    {
        debug_assert_eq!(values.len(), self.n_points);
        let n = values.len();
        if n == 0 {
            return S::zero();
        }
        let inner = values.iter().fold(S::zero(), |acc, &v| acc + v);
        let ends = (values[0] + values[n - 1]) * T::lit(0.5);
        (inner + ends * -T::one()) * self.spacing()
    }

    /// Linear interpolation of `f` at `y`; `OutOfGrid` outside `[y_min, y_max]`.
    pub fn interpolate(&self, f: &[Complex<T>], y: T) -> Result<Complex<T>> {
        let slack = T::lit(1e-12) * (self.y_max - self.y_min);
        if !(y >= self.y_min - slack && y <= self.y_max + slack) {
            return Err(Error::OutOfGrid {
                y: y.to_f64_lossy(),
                y_min: self.y_min.to_f64_lossy(),
                y_max: self.y_max.to_f64_lossy(),
            });
        }
        let s = ((y - self.y_min) / self.spacing()).max(T::zero());
        let last = self.n_points - 1;
        let j = s.floor().to_usize().unwrap_or(0).min(last);
        if j == last {
            return Ok(f[last]);
        }
        let t = s - T::from_usize(j).unwrap();
        Ok(f[j] * (T::one() - t) + f[j + 1] * t)
    }

    /// Samples of `y ↦ f(y + shift)`.
    ///
    /// Shifts that are a whole number of grid steps (within 1e-9) are exact
    /// index moves. Others use four-point Lagrange interpolation with one
    /// shared set of weights, so the error is fourth order in the spacing.
    /// Values pulled from beyond the grid are zero, and the call fails with
    /// `GridOverflow` when more than [`GRID_LEAK_TOL`] of the norm² is lost
    /// that way.
    pub fn shift_profile(&self, f: &[Complex<T>], shift: T) -> Result<Vec<Complex<T>>> {
        let n = self.n_points as i64;
        let steps = shift / self.spacing();
        let mut k = steps.floor();
        let mut t = steps - k;
        if t < T::lit(1e-9) {
            t = T::zero();
        } else if t > T::one() - T::lit(1e-9) {
            t = T::zero();
            k += T::one();
        }
        let k = k
            .to_i64()
            .ok_or_else(|| Error::InvalidInput("non-finite shift".into()))?;

        let at = |j: i64| -> Complex<T> {
            if (0..n).contains(&j) {
                f[j as usize]
            } else {
                Complex::new(T::zero(), T::zero())
            }
        };
        let (one, two, six) = (T::one(), T::lit(2.0), T::lit(6.0));
        let w = [
            -t * (t - one) * (t - two) / six,
            (t + one) * (t - one) * (t - two) / two,
            -(t + one) * t * (t - two) / two,
            (t + one) * t * (t - one) / six,
        ];
        let exact = t == T::zero();
        let out: Vec<Complex<T>> = (0..n)
            .map(|i| {
                if exact {
                    at(i + k)
                } else {
                    (0..4).fold(Complex::new(T::zero(), T::zero()), |acc, j| {
                        acc + at(i + k + j as i64 - 1) * w[j]
                    })
                }
            })
            .collect();

        // Nodes of f that contribute to some output sample.
        let (used_lo, used_hi) = if exact { (k, n - 1 + k) } else { (k - 1, n + k + 1) };
        let total: T = f.iter().map(|z| z.norm_sqr()).fold(T::zero(), |a, b| a + b);
        if total > T::zero() {
            let kept: T = (used_lo.max(0)..=used_hi.min(n - 1))
                .map(|j| f[j as usize].norm_sqr())
                .fold(T::zero(), |a, b| a + b);
            let lost = (total - kept).max(T::zero()) / total;
            if lost > T::lit(GRID_LEAK_TOL) {
                return Err(Error::GridOverflow {
                    shift: shift.to_f64_lossy(),
                    lost_fraction: lost.to_f64_lossy(),
                });
            }
        }
        Ok(out)
    }

    /// Central first difference with zero Dirichlet data outside the grid.
    pub fn derivative(&self, f: &[Complex<T>]) -> Vec<Complex<T>> {
        let n = f.len();
        let inv = (T::lit(2.0) * self.spacing()).recip();
        let zero = Complex::new(T::zero(), T::zero());
        (0..n)
            .map(|i| {
                let up = if i + 1 < n { f[i + 1] } else { zero };
                let dn = if i > 0 { f[i - 1] } else { zero };
                (up - dn) * inv
            })
            .collect()
    }

    /// Three-point second difference with zero Dirichlet data outside the grid.
    pub fn second_derivative(&self, f: &[Complex<T>]) -> Vec<Complex<T>> {
        let n = f.len();
        let h = self.spacing();
        let inv = (h * h).recip();
        let zero = Complex::new(T::zero(), T::zero());
        (0..n)
            .map(|i| {
                let up = if i + 1 < n { f[i + 1] } else { zero };
                let dn = if i > 0 { f[i - 1] } else { zero };
                (up + dn - f[i] * T::lit(2.0)) * inv
            })
            .collect()
    }
}

/// Quasi-periodic wavefunction on the cylinder, resolved into angular modes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveFunction<T> {
    q: T,
    grid: Grid<T>,
    modes: BTreeMap<i64, Vec<Complex<T>>>,
}

/// One row of a state snapshot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileRecord {
    pub n: i64,
    pub y: f64,
    pub re: f64,
    pub im: f64,
}

impl<T: Real> WaveFunction<T> {
    pub fn zero(q: T, grid: Grid<T>) -> Self {
        Self {
            q: wrap_mod(q, T::one()),
            grid,
            modes: BTreeMap::new(),
        }
    }

    pub fn single_mode(q: T, grid: Grid<T>, n: i64, profile: Vec<Complex<T>>) -> Result<Self> {
        let mut psi = Self::zero(q, grid);
        psi.set_mode(n, profile)?;
        Ok(psi)
    }

    /// Build modes `n_lo..=n_hi` from a profile function `(n, y) ↦ f_n(y)`.
    pub fn from_fn(
        q: T,
        grid: Grid<T>,
        n_lo: i64,
        n_hi: i64,
        mut f: impl FnMut(i64, T) -> Complex<T>,
    ) -> Self {
        let mut psi = Self::zero(q, grid);
        for n in n_lo..=n_hi {
            let profile = grid.points().map(|y| f(n, y)).collect();
            psi.modes.insert(n, profile);
        }
        psi
    }

    pub fn q(&self) -> T {
        self.q
    }

    pub fn grid(&self) -> &Grid<T> {
        &self.grid
    }

    pub fn mode(&self, n: i64) -> Option<&[Complex<T>]> {
        self.modes.get(&n).map(Vec::as_slice)
    }

    pub fn modes(&self) -> impl Iterator<Item = (i64, &[Complex<T>])> {
        self.modes.iter().map(|(&n, f)| (n, f.as_slice()))
    }

    pub fn mode_indices(&self) -> impl Iterator<Item = i64> + '_ {
        self.modes.keys().copied()
    }

    pub fn mode_count(&self) -> usize {
        self.modes.len()
    }

    /// Smallest and largest stored angular index.
    pub fn mode_range(&self) -> Option<(i64, i64)> {
        Some((*self.modes.keys().next()?, *self.modes.keys().next_back()?))
    }

    pub fn set_mode(&mut self, n: i64, profile: Vec<Complex<T>>) -> Result<()> {
        if profile.len() != self.grid.len() {
            return Err(Error::IncompatibleStates(format!(
                "profile has {} samples, grid has {}",
                profile.len(),
                self.grid.len()
            )));
        }
        self.modes.insert(n, profile);
        Ok(())
    }

    pub fn remove_mode(&mut self, n: i64) -> Option<Vec<Complex<T>>> {
        self.modes.remove(&n)
    }

    /// New state whose profile for mode `n` is `f(n, profile)`.
    pub fn map_modes(&self, mut f: impl FnMut(i64, &[Complex<T>]) -> Vec<Complex<T>>) -> Self {
        Self {
            q: self.q,
            grid: self.grid,
            modes: self.modes.iter().map(|(&n, p)| (n, f(n, p))).collect(),
        }
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        self.map_modes(|_, p| p.iter().map(|&z| z * s).collect())
    }

    /// `self + s·other`, mode by mode over the union of stored modes.
    pub fn axpy(&self, s: Complex<T>, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (&n, g) in &other.modes {
            let slot = out
                .modes
                .entry(n)
                .or_insert_with(|| vec![Complex::new(T::zero(), T::zero()); g.len()]);
            for (a, &b) in slot.iter_mut().zip(g) {
                *a += b * s;
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.axpy(Complex::new(-T::one(), T::zero()), other)
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if (self.q - other.q).abs() > T::lit(1e-12) {
            return Err(Error::IncompatibleStates(format!(
                "quasi-periodicity {} vs {}",
                self.q, other.q
            )));
        }
        if self.grid != other.grid {
            return Err(Error::IncompatibleStates("different grids".into()));
        }
        Ok(())
    }

    pub fn norm_sqr(&self) -> T {
        self.modes
            .values()
            .map(|f| {
                let dens: Vec<T> = f.iter().map(|z| z.norm_sqr()).collect();
                self.grid.integrate(&dens)
            })
            .fold(T::zero(), |a, b| a + b)
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    /// Pointwise value at `(θ, y)` with linear interpolation in `y`.
    pub fn evaluate(&self, theta: T, y: T) -> Result<Complex<T>> {
        if !self.grid.covers(y, y) {
            return Err(Error::OutOfGrid {
                y: y.to_f64_lossy(),
                y_min: self.grid.y_min().to_f64_lossy(),
                y_max: self.grid.y_max().to_f64_lossy(),
            });
        }
        let mut acc = Complex::new(T::zero(), T::zero());
        for (&n, f) in &self.modes {
            acc += cis((T::from_int(n) + self.q) * theta) * self.grid.interpolate(f, y)?;
        }
        Ok(acc / T::TAU().sqrt())
    }

    pub fn normalize(&self) -> Result<Self> {
        let norm = self.norm();
        if !(norm > T::zero()) {
            return Err(Error::ZeroState);
        }
        Ok(self.scale(Complex::new(norm.recip(), T::zero())))
    }

    /// Tabular snapshot `(n, y, Re f_n, Im f_n)`.
    pub fn to_records(&self) -> Vec<ProfileRecord> {
        self.modes
            .iter()
            .flat_map(|(&n, f)| {
                self.grid.points().zip(f.iter()).map(move |(y, z)| ProfileRecord {
                    n,
                    y: y.to_f64_lossy(),
                    re: z.re.to_f64_lossy(),
                    im: z.im.to_f64_lossy(),
                })
            })
            .collect()
    }
}

/// `⟨ψ, χ⟩ = Σ_n ∫ conj(f_n) g_n dy`.
pub fn inner_product<T: Real>(psi: &WaveFunction<T>, chi: &WaveFunction<T>) -> Result<Complex<T>> {
    psi.check_compatible(chi)?;
    let mut acc = Complex::new(T::zero(), T::zero());
    for (n, f) in &psi.modes {
        if let Some(g) = chi.modes.get(n) {
            let prod: Vec<Complex<T>> = f.iter().zip(g).map(|(a, b)| a.conj() * b).collect();
            acc += psi.grid.integrate(&prod);
        }
    }
    Ok(acc)
}

/// `⟨f, g⟩` for two bare profiles on one grid, ignoring angular labels.
pub fn profile_overlap<T: Real>(grid: &Grid<T>, f: &[Complex<T>], g: &[Complex<T>]) -> Complex<T> {
    let prod: Vec<Complex<T>> = f.iter().zip(g).map(|(a, b)| a.conj() * b).collect();
    grid.integrate(&prod)
}
