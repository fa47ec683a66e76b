//! Landau spectrum of the cylinder.
//!
//! In the gauge `A_y = 0`, `A_θ = BR(ρ − y)` the Hamiltonian is diagonal in
//! the angular index. On mode `n` it reduces to the shifted oscillator
//!
//! ```text
//! H_n = −(ħ²/2m) ∂_y² + (eB)² (y − y_n)² / 2m,   y_n = ρ − (n+q)/μ,
//! ```
//!
//! discretized with the three-point stencil and Dirichlet ends.

use std::collections::BTreeMap;

use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::eigen::SymTridiagonal;
use crate::error::{Error, Result};
use crate::hilbert::{make_grid, Grid, WaveFunction};
use crate::model::CylinderConfig;
use crate::scalar::Real;

/// Grids must reach this many magnetic lengths past every mode center.
pub const COVERAGE_SIGMAS: f64 = 12.0;
/// Default number of grid points.
pub const DEFAULT_GRID_POINTS: usize = 2001;
/// Eigenvalues closer than this times `ħeB/m` are the same level.
pub const LEVEL_MATCH_TOL: f64 = 1e-6;
/// FD-limited tolerance for operator identities.
pub const FD_TOL: f64 = 1e-3;

/// Finite-difference Hamiltonian of one angular mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeHamiltonian<T> {
    pub n: i64,
    pub y_center: T,
    pub grid: Grid<T>,
    pub matrix: SymTridiagonal<T>,
}

impl<T: Real> ModeHamiltonian<T> {
    /// Builds `H_n` without checking that the grid covers the mode.
    pub fn build(config: &CylinderConfig<T>, n: i64, grid: &Grid<T>) -> Self {
        let h = grid.spacing();
        let two = T::lit(2.0);
        let kin = config.hbar() * config.hbar() / (two * config.m() * h * h);
        let eb = config.e() * config.b();
        let y_center = config.mode_center(n);
        let diag = grid
            .points()
            .map(|y| two * kin + eb * eb * (y - y_center) * (y - y_center) / (two * config.m()))
            .collect();
        let off = vec![-kin; grid.len() - 1];
        Self {
            n,
            y_center,
            grid: *grid,
            matrix: SymTridiagonal::new(diag, off),
        }
    }

    pub fn apply(&self, f: &[Complex<T>]) -> Vec<Complex<T>> {
        let re: Vec<T> = f.iter().map(|z| z.re).collect();
        let im: Vec<T> = f.iter().map(|z| z.im).collect();
        let (a, b) = (self.matrix.matvec(&re), self.matrix.matvec(&im));
        a.into_iter().zip(b).map(|(x, y)| Complex::new(x, y)).collect()
    }
}

/// Interval `[y_n − 12σ, y_n + 12σ]` a grid has to cover for mode `n`.
pub fn required_interval<T: Real>(config: &CylinderConfig<T>, n: i64) -> (T, T) {
    let reach = T::lit(COVERAGE_SIGMAS) * config.magnetic_length();
    let c = config.mode_center(n);
    (c - reach, c + reach)
}

fn check_coverage<T: Real>(config: &CylinderConfig<T>, n: i64, grid: &Grid<T>) -> Result<()> {
    let (lo, hi) = required_interval(config, n);
    if grid.covers(lo, hi) {
        Ok(())
    } else {
        Err(Error::GridTooNarrow {
            y_min: grid.y_min().to_f64_lossy(),
            y_max: grid.y_max().to_f64_lossy(),
            need_min: lo.to_f64_lossy(),
            need_max: hi.to_f64_lossy(),
        })
    }
}

pub fn mode_hamiltonian<T: Real>(
    config: &CylinderConfig<T>,
    n: i64,
    grid: &Grid<T>,
) -> Result<ModeHamiltonian<T>> {
    check_coverage(config, n, grid)?;
    Ok(ModeHamiltonian::build(config, n, grid))
}

/// Grid of `n_points` reaching 12σ beyond the outermost centers of `window`.
pub fn default_grid<T: Real>(
    config: &CylinderConfig<T>,
    window: (i64, i64),
    n_points: usize,
) -> Result<Grid<T>> {
    let (a, b) = (config.mode_center(window.0), config.mode_center(window.1));
    let (lo, hi) = (a.min(b), a.max(b));
    let reach = T::lit(COVERAGE_SIGMAS) * config.magnetic_length();
    make_grid((lo + hi) * T::lit(0.5), (hi - lo) * T::lit(0.5) + reach, n_points)
}

/// Grid centered on mode `n` with half-width 12σ.
pub fn mode_grid<T: Real>(config: &CylinderConfig<T>, n: i64, n_points: usize) -> Result<Grid<T>> {
    default_grid(config, (n, n), n_points)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenPairs<T> {
    pub values: Vec<T>,
    /// Real eigenvectors normalized to `∫ |v|² dy = 1` on the grid.
    pub vectors: Vec<Vec<T>>,
}

impl<T: Real> EigenPairs<T> {
    pub fn state(&self, config: &CylinderConfig<T>, h: &ModeHamiltonian<T>, k: usize) -> WaveFunction<T> {
        let profile = self.vectors[k].iter().map(|&v| Complex::new(v, T::zero())).collect();
        WaveFunction::single_mode(config.q(), h.grid, h.n, profile).expect("grid-sized profile")
    }
}

pub fn eigensolve<T: Real>(h: &ModeHamiltonian<T>, k_levels: usize) -> Result<EigenPairs<T>> {
    let len = h.grid.len();
    if k_levels > len {
        return Err(Error::InvalidInput(format!(
            "requested {k_levels} levels from a {len}-point grid"
        )));
    }
    let values = h.matrix.lowest_eigenvalues(k_levels);
    let mut unit: Vec<Vec<T>> = Vec::with_capacity(k_levels);
    for &v in &values {
        let x = h.matrix.eigenvector(v, &unit)?;
        unit.push(x);
    }
    let scale = h.grid.spacing().sqrt().recip();
    let vectors = unit
        .into_iter()
        .map(|mut x| {
            let peak = x.iter().fold(T::zero(), |a, &b| a.max(b.abs()));
            let lead = x.iter().find(|v| v.abs() > T::lit(1e-3) * peak).copied().unwrap_or(T::one());
            let sign = if lead < T::zero() { -T::one() } else { T::one() };
            x.iter_mut().for_each(|v| *v = *v * sign * scale);
            x
        })
        .collect();
    Ok(EigenPairs { values, vectors })
}

/// Ground state of mode `n` from the finite-difference eigensolver.
pub fn numeric_ground_state<T: Real>(
    config: &CylinderConfig<T>,
    n: i64,
    grid: &Grid<T>,
) -> Result<WaveFunction<T>> {
    let h = mode_hamiltonian(config, n, grid)?;
    Ok(eigensolve(&h, 1)?.state(config, &h, 0))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LandauLevel<T> {
    pub index: usize,
    /// Mean of the matched per-mode eigenvalues.
    pub energy: T,
    /// `ħ (eB/m) (N + ½)`.
    pub analytic: T,
    pub degeneracy: usize,
    /// Largest spread of the matched eigenvalues.
    pub spread: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumResult<T> {
    pub window: (i64, i64),
    pub per_mode: BTreeMap<i64, Vec<T>>,
    pub levels: Vec<LandauLevel<T>>,
    pub match_tolerance: T,
}

impl<T: Real> SpectrumResult<T> {
    pub fn window_size(&self) -> usize {
        (self.window.1 - self.window.0 + 1) as usize
    }

    /// `max |E_N(n) − E_N(n')| / E_N` over modes and levels.
    pub fn max_relative_mode_spread(&self) -> T {
        self.levels
            .iter()
            .map(|l| l.spread / l.energy.abs())
            .fold(T::zero(), T::max)
    }
}

/// Per-mode spectra over `window` on the default grid.
pub fn spectrum<T: Real>(
    config: &CylinderConfig<T>,
    window: (i64, i64),
    k_levels: usize,
) -> Result<SpectrumResult<T>> {
    let grid = default_grid(config, window, DEFAULT_GRID_POINTS)?;
    spectrum_on_grid(config, window, k_levels, &grid)
}

pub fn spectrum_on_grid<T: Real>(
    config: &CylinderConfig<T>,
    window: (i64, i64),
    k_levels: usize,
    grid: &Grid<T>,
) -> Result<SpectrumResult<T>> {
    if window.0 > window.1 {
        return Err(Error::InvalidInput(format!("empty mode window {window:?}")));
    }
    let per_mode: BTreeMap<i64, Vec<T>> = (window.0..=window.1)
        .into_par_iter()
        .map(|n| {
            let h = mode_hamiltonian(config, n, grid)?;
            Ok((n, eigensolve(&h, k_levels)?.values))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .collect();

    let quantum = config.hbar() * config.cyclotron_frequency();
    let tol = T::lit(LEVEL_MATCH_TOL) * quantum;
    let mut all: Vec<T> = per_mode.values().flatten().copied().collect();
    all.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut clusters: Vec<Vec<T>> = Vec::new();
    for e in all {
        match clusters.last_mut() {
            Some(c) if e - c[0] <= tol => c.push(e),
            _ => clusters.push(vec![e]),
        }
    }
    let levels = clusters
        .into_iter()
        .enumerate()
        .map(|(index, c)| {
            let energy = c.iter().fold(T::zero(), |a, &b| a + b) / T::from_usize(c.len()).unwrap();
            LandauLevel {
                index,
                energy,
                analytic: config.landau_energy(index),
                degeneracy: c.len(),
                spread: *c.last().unwrap() - c[0],
            }
        })
        .collect();
    Ok(SpectrumResult {
        window,
        per_mode,
        levels,
        match_tolerance: tol,
    })
}

/// `Ω_{ρ,n}`: profile `(μ/πR)^{1/4} exp(−(μ/2R)(y − y_n)²)` on mode `n`.
pub fn analytic_ground_state<T: Real>(
    config: &CylinderConfig<T>,
    n: i64,
    grid: &Grid<T>,
) -> Result<WaveFunction<T>> {
    check_coverage(config, n, grid)?;
    Ok(analytic_ground_state_unchecked(config, n, grid))
}

pub(crate) fn analytic_ground_state_unchecked<T: Real>(
    config: &CylinderConfig<T>,
    n: i64,
    grid: &Grid<T>,
) -> WaveFunction<T> {
    let rate = config.mu() / config.r();
    let norm = (rate / T::PI()).powf(T::lit(0.25));
    let c = config.mode_center(n);
    let profile = grid
        .points()
        .map(|y| Complex::new(norm * (-rate * T::lit(0.5) * (y - c) * (y - c)).exp(), T::zero()))
        .collect();
    WaveFunction::single_mode(config.q(), *grid, n, profile).expect("grid-sized profile")
}

/// `π_θ` on mode `n`: multiplication by `eBR (y − y_n)`.
fn pi_theta_mode<T: Real>(config: &CylinderConfig<T>, n: i64, grid: &Grid<T>, f: &[Complex<T>]) -> Vec<Complex<T>> {
    let ebr = config.e() * config.b() * config.r();
    let c = config.mode_center(n);
    grid.points().zip(f).map(|(y, &z)| z * (ebr * (y - c))).collect()
}

/// `π_y = −iħ ∂_y` by central differences.
fn pi_y<T: Real>(config: &CylinderConfig<T>, grid: &Grid<T>, f: &[Complex<T>]) -> Vec<Complex<T>> {
    let coef = Complex::new(T::zero(), -config.hbar());
    grid.derivative(f).into_iter().map(|z| z * coef).collect()
}

fn l2<T: Real>(grid: &Grid<T>, f: &[Complex<T>]) -> T {
    let dens: Vec<T> = f.iter().map(|z| z.norm_sqr()).collect();
    grid.integrate(&dens)
}

/// `‖(Q_ρ + iP_ρ) f_n‖` for mode `n` of `state`, where
/// `Q_ρ = π_θ/(R√(eB))`, `P_ρ = π_y/√(eB)`. Zero when the mode is absent.
pub fn annihilation_residual<T: Real>(config: &CylinderConfig<T>, n: i64, state: &WaveFunction<T>) -> T {
    let Some(f) = state.mode(n) else {
        return T::zero();
    };
    let grid = state.grid();
    let root = (config.e() * config.b()).sqrt();
    let q_part = pi_theta_mode(config, n, grid, f);
    let p_part = pi_y(config, grid, f);
    let i = Complex::new(T::zero(), T::one());
    let r: Vec<Complex<T>> = q_part
        .into_iter()
        .zip(p_part)
        .map(|(a, b)| (a / config.r() + i * b) / root)
        .collect();
    l2(grid, &r).sqrt()
}

/// `max_ψ ‖([π_θ, π_y] − iħeBR) ψ‖ / ‖ψ‖`.
pub fn pi_commutator_check<T: Real>(config: &CylinderConfig<T>, states: &[WaveFunction<T>]) -> T {
    let target = Complex::new(T::zero(), config.hbar() * config.e() * config.b() * config.r());
    let mut worst = T::zero();
    for psi in states {
        let grid = psi.grid();
        let mut num = T::zero();
        for (n, f) in psi.modes() {
            let a = pi_theta_mode(config, n, grid, &pi_y(config, grid, f));
            let b = pi_y(config, grid, &pi_theta_mode(config, n, grid, f));
            let r: Vec<Complex<T>> = a
                .iter()
                .zip(&b)
                .zip(f)
                .map(|((&x, &y), &z)| x - y - target * z)
                .collect();
            num += l2(grid, &r);
        }
        let den = psi.norm_sqr();
        if den > T::zero() {
            worst = worst.max((num / den).sqrt());
        }
    }
    worst
}

/// `Hψ`, applying each mode's finite-difference Hamiltonian.
pub fn apply_hamiltonian<T: Real>(config: &CylinderConfig<T>, psi: &WaveFunction<T>) -> WaveFunction<T> {
    let grid = *psi.grid();
    psi.map_modes(|n, f| ModeHamiltonian::build(config, n, &grid).apply(f))
}

/// `⟨ψ, Hψ⟩ / ⟨ψ, ψ⟩`.
pub fn energy_expectation<T: Real>(config: &CylinderConfig<T>, psi: &WaveFunction<T>) -> Result<T> {
    let hpsi = apply_hamiltonian(config, psi);
    let num = crate::hilbert::inner_product(psi, &hpsi)?;
    let den = psi.norm_sqr();
    if !(den > T::zero()) {
        return Err(Error::ZeroState);
    }
    Ok(num.re / den)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VelocityReport<T> {
    /// `max_ψ ‖(i/ħ)[H, Y]ψ − π_y ψ/m‖ / ‖ψ‖`
    pub max_deviation: T,
    /// Largest `‖π_y ψ/m‖ / ‖ψ‖`, for scale.
    pub max_velocity_norm: T,
    pub tolerance: T,
    pub pass: bool,
}

/// Checks that `(i/ħ)[H, Y] = π_y / m`, i.e. the axial velocity is the
/// kinetic momentum over the mass.
pub fn velocity_check<T: Real>(config: &CylinderConfig<T>, states: &[WaveFunction<T>]) -> VelocityReport<T> {
    let i_over_hbar = Complex::new(T::zero(), config.hbar().recip());
    let (mut worst, mut vmax) = (T::zero(), T::zero());
    for psi in states {
        let grid = *psi.grid();
        let (mut num, mut vel) = (T::zero(), T::zero());
        for (n, f) in psi.modes() {
            let h = ModeHamiltonian::build(config, n, &grid);
            let yf: Vec<Complex<T>> = grid.points().zip(f).map(|(y, &z)| z * y).collect();
            let h_yf = h.apply(&yf);
            let y_hf: Vec<Complex<T>> = grid.points().zip(h.apply(f)).map(|(y, z)| z * y).collect();
            let v = pi_y(config, &grid, f);
            let r: Vec<Complex<T>> = h_yf
                .iter()
                .zip(&y_hf)
                .zip(&v)
                .map(|((&a, &b), &p)| (a - b) * i_over_hbar - p / config.m())
                .collect();
            num += l2(&grid, &r);
            vel += l2(&grid, &v.iter().map(|&p| p / config.m()).collect::<Vec<_>>());
        }
        let den = psi.norm_sqr();
        if den > T::zero() {
            worst = worst.max((num / den).sqrt());
            vmax = vmax.max((vel / den).sqrt());
        }
    }
    let tolerance = T::lit(FD_TOL);
    VelocityReport {
        max_deviation: worst,
        max_velocity_norm: vmax,
        tolerance,
        pass: worst <= tolerance,
    }
}
