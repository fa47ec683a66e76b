//! Magnetic rotations and axial shifts.
//!
//! `U(φ)` rotates the cylinder and multiplies mode `n` by `e^{inφ}`. `V(k)`
//! shifts along the axis by `k/μ` and relabels the angular index `n → n+k`.
//! Only shifts by whole multiples of `μ⁻¹` exist: the multiplier they carry,
//! `e^{iaμθ}`, is single valued on the circle exactly when `aμ ∈ ℤ`.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gauge::is_symmetry_translation;
use crate::hilbert::{inner_product, Grid, WaveFunction};
use crate::model::CylinderConfig;
use crate::scalar::{cis, wrap_angle, Real};
use crate::spectral::{analytic_ground_state, apply_hamiltonian, energy_expectation};

/// Minimum number of modes in a Fourier eigenstate window.
pub const MIN_FOURIER_WINDOW: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SymmetryOp<T> {
    Rotation(T),
    /// Axial shift by `k/μ`.
    AxialShift(i64),
}

impl<T: Real> SymmetryOp<T> {
    /// Axial shift by physical length `a`; fails unless `aμ` is an integer.
    pub fn axial_shift_by_length(config: &CylinderConfig<T>, a: T) -> Result<Self> {
        if !is_symmetry_translation(config, a) {
            return Err(Error::NonAdmissibleTranslation {
                length: a.to_f64_lossy(),
                a_mu: (a * config.mu()).to_f64_lossy(),
            });
        }
        let k = (a * config.mu()).round().to_i64().ok_or_else(|| {
            Error::InvalidInput(format!("axial shift {} out of range", a.to_f64_lossy()))
        })?;
        Ok(SymmetryOp::AxialShift(k))
    }

    pub fn apply(&self, config: &CylinderConfig<T>, psi: &WaveFunction<T>) -> Result<WaveFunction<T>> {
        match *self {
            SymmetryOp::Rotation(phi) => apply_u(config, phi, psi),
            SymmetryOp::AxialShift(k) => apply_v(config, k, psi),
        }
    }
}

/// `C_θ = ħ(μρ − q)`, the constant that makes `U` close on `SO(2)`.
pub fn theta_constant<T: Real>(config: &CylinderConfig<T>) -> T {
    config.hbar() * (config.mu() * config.rho() - config.q())
}

/// `C_y`, which can be chosen freely and is fixed to zero.
pub fn axial_constant<T: Real>(_config: &CylinderConfig<T>) -> T {
    T::zero()
}

fn check_q<T: Real>(config: &CylinderConfig<T>, psi: &WaveFunction<T>) -> Result<()> {
    if (config.q() - psi.q()).abs() > T::lit(1e-12) {
        return Err(Error::IncompatibleStates(format!(
            "state has q = {} but the configuration has q = {}",
            psi.q(),
            config.q()
        )));
    }
    Ok(())
}

/// `U(φ)ψ(θ, y) = e^{−iφ(μρ − C_θ/ħ)} ψ(θ + φ, y)`.
pub fn apply_u<T: Real>(config: &CylinderConfig<T>, phi: T, psi: &WaveFunction<T>) -> Result<WaveFunction<T>> {
    check_q(config, psi)?;
    let offset = config.mu() * config.rho() - theta_constant(config) / config.hbar();
    Ok(psi.map_modes(|n, f| {
        let z = cis((T::from_int(n) + config.q() - offset) * phi);
        f.iter().map(|&v| v * z).collect()
    }))
}

/// `V(k)ψ(θ, y) = e^{ikθ} e^{iaC_y/ħ} ψ(θ, y + a)` with `a = k/μ`.
pub fn apply_v<T: Real>(config: &CylinderConfig<T>, k: i64, psi: &WaveFunction<T>) -> Result<WaveFunction<T>> {
    check_q(config, psi)?;
    let a = T::from_int(k) / config.mu();
    let phase = cis(a * axial_constant(config) / config.hbar());
    let grid = *psi.grid();
    let mut out = WaveFunction::zero(psi.q(), grid);
    for (n, f) in psi.modes() {
        let shifted = grid.shift_profile(f, a)?;
        out.set_mode(n + k, shifted.into_iter().map(|v| v * phase).collect())?;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProjectiveReport<T> {
    pub phi: T,
    pub k: i64,
    /// `e^{ikφ}`
    pub expected_phase: Complex<T>,
    /// Phase of `⟨VUψ, UVψ⟩`.
    pub measured_phase: Complex<T>,
    /// `‖UVψ − e^{ikφ}VUψ‖ / ‖ψ‖`
    pub deviation: T,
}

/// Checks `U(φ)V(k) = e^{ikφ} V(k)U(φ)` on `psi`.
pub fn projective_phase_check<T: Real>(
    config: &CylinderConfig<T>,
    phi: T,
    k: i64,
    psi: &WaveFunction<T>,
) -> Result<ProjectiveReport<T>> {
    let uv = apply_u(config, phi, &apply_v(config, k, psi)?)?;
    let vu = apply_v(config, k, &apply_u(config, phi, psi)?)?;
    let expected = cis(T::from_int(k) * phi);
    let ip = inner_product(&vu, &uv)?;
    let measured = if ip.norm() > T::zero() { ip / ip.norm() } else { ip };
    let norm = psi.norm();
    if !(norm > T::zero()) {
        return Err(Error::ZeroState);
    }
    Ok(ProjectiveReport {
        phi,
        k,
        expected_phase: expected,
        measured_phase: measured,
        deviation: uv.axpy(-expected, &vu)?.norm() / norm,
    })
}

/// `max_ψ ‖(Op∘H − H∘Op)ψ‖ / ‖ψ‖`.
pub fn hamiltonian_commutation_check<T: Real>(
    config: &CylinderConfig<T>,
    op: SymmetryOp<T>,
    states: &[WaveFunction<T>],
) -> Result<T> {
    let mut worst = T::zero();
    for psi in states {
        let a = op.apply(config, &apply_hamiltonian(config, psi))?;
        let b = apply_hamiltonian(config, &op.apply(config, psi)?);
        let d = a.sub(&b)?.norm() / psi.norm();
        worst = worst.max(d);
    }
    Ok(worst)
}

/// `|⟨H⟩_{Opψ} − ⟨H⟩_ψ|`, largest over `states`.
pub fn energy_invariance_check<T: Real>(
    config: &CylinderConfig<T>,
    op: SymmetryOp<T>,
    states: &[WaveFunction<T>],
) -> Result<T> {
    let mut worst = T::zero();
    for psi in states {
        let before = energy_expectation(config, psi)?;
        let after = energy_expectation(config, &op.apply(config, psi)?)?;
        worst = worst.max((after - before).abs());
    }
    Ok(worst)
}

/// Normalized truncation of `Σ_n e^{inξ} Ω_n` over `window`.
///
/// The full sum is only delta-normalizable in `ξ`; the truncated state is a
/// stand-in whose eigenvalue relations hold away from the window edges.
pub fn fourier_eigenstate<T: Real>(
    config: &CylinderConfig<T>,
    xi: T,
    window: (i64, i64),
    grid: &Grid<T>,
) -> Result<WaveFunction<T>> {
    let size = (window.1 - window.0 + 1).max(0) as usize;
    if size < MIN_FOURIER_WINDOW {
        return Err(Error::WindowTooSmall {
            got: size,
            min: MIN_FOURIER_WINDOW,
        });
    }
    let mut out = WaveFunction::zero(config.q(), *grid);
    for n in window.0..=window.1 {
        let omega = analytic_ground_state(config, n, grid)?;
        let z = cis(T::from_int(n) * xi);
        let profile = omega.mode(n).unwrap().iter().map(|&v| v * z).collect();
        out.set_mode(n, profile)?;
    }
    out.normalize()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FourierShiftReport<T> {
    pub k: i64,
    pub xi: T,
    /// `e^{−ikξ}`
    pub expected_phase: Complex<T>,
    /// Phase of `⟨Ω̃, V(k)Ω̃⟩` over the shared window.
    pub measured_phase: Complex<T>,
    /// `|arg(measured / expected)|`
    pub phase_error: T,
    /// `|⟨Ω̃, V(k)Ω̃⟩|`, at most `(W − |k|)/W` for a window of `W` modes.
    pub overlap: T,
    /// `2|k| / W`, the weight lost at the window edges.
    pub truncation_bound: T,
}

/// Measures the eigenvalue of `V(k)` on the truncated Fourier state.
pub fn fourier_shift_check<T: Real>(
    config: &CylinderConfig<T>,
    xi: T,
    k: i64,
    window: (i64, i64),
    grid: &Grid<T>,
) -> Result<FourierShiftReport<T>> {
    let state = fourier_eigenstate(config, xi, window, grid)?;
    let shifted = apply_v(config, k, &state)?;
    let ip = inner_product(&state, &shifted)?;
    let expected = cis(-T::from_int(k) * xi);
    let overlap = ip.norm();
    let measured = if overlap > T::zero() { ip / overlap } else { ip };
    let size = T::from_int(window.1 - window.0 + 1);
    Ok(FourierShiftReport {
        k,
        xi,
        expected_phase: expected,
        measured_phase: measured,
        phase_error: wrap_angle((measured / expected).arg()).abs(),
        overlap,
        truncation_bound: T::lit(2.0) * T::from_int(k.abs()) / size,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RedundancyPair<T> {
    /// Angular index at the original `ρ`.
    pub n: i64,
    /// Matching angular index at `ρ + s/μ`.
    pub n_shifted: i64,
    pub center: T,
    pub center_shifted: T,
    /// `|⟨f_{n+s}^{ρ+s/μ}, f_n^{ρ}⟩|` over `y`.
    pub overlap: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RedundancyReport<T> {
    pub shift: i64,
    /// The angular factor of a relabeled mode changes by `e^{isθ}`, the
    /// same change produced by `q → q + s`.
    pub angular_factor_shift: i64,
    pub pairs: Vec<RedundancyPair<T>>,
    pub min_overlap: T,
}

/// Shows that moving `ρ` by `s/μ` only relabels the ground states: the
/// profile of `Ω_{ρ+s/μ, n+s}` coincides with that of `Ω_{ρ, n}`.
pub fn rho_q_redundancy_check<T: Real>(
    config: &CylinderConfig<T>,
    shift: i64,
    grid: &Grid<T>,
    window: (i64, i64),
) -> Result<RedundancyReport<T>> {
    let moved = config.with_rho(config.rho() + T::from_int(shift) / config.mu());
    let mut pairs = Vec::new();
    let mut min_overlap = T::infinity();
    for n in window.0..=window.1 {
        let a = analytic_ground_state(config, n, grid)?;
        let b = analytic_ground_state(&moved, n + shift, grid)?;
        let ov = crate::hilbert::profile_overlap(grid, b.mode(n + shift).unwrap(), a.mode(n).unwrap()).norm();
        min_overlap = min_overlap.min(ov);
        pairs.push(RedundancyPair {
            n,
            n_shifted: n + shift,
            center: config.mode_center(n),
            center_shifted: moved.mode_center(n + shift),
            overlap: ov,
        });
    }
    Ok(RedundancyReport {
        shift,
        angular_factor_shift: shift,
        pairs,
        min_overlap,
    })
}

/// `|e^{i(a/ħ)σ_y(θ+2π)} − e^{i(a/ħ)σ_y(θ)}|` for `σ_y = eBRθ + C_y`.
///
/// This is `|e^{2πiaμ} − 1|`: the would-be generator of axial shifts is not
/// a function on the circle unless `aμ ∈ ℤ`.
pub fn axial_multiplier_mismatch<T: Real>(config: &CylinderConfig<T>, a: T, theta: T) -> T {
    let ebr = config.e() * config.b() * config.r();
    let sigma = |t: T| ebr * t + axial_constant(config);
    let phase = |t: T| cis(a / config.hbar() * sigma(t));
    (phase(theta + T::TAU()) - phase(theta)).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::make_grid;
    use crate::spectral::default_grid;

    fn cfg() -> CylinderConfig<f64> {
        CylinderConfig::natural(1.0, 1.0, 0.25, 0.3).unwrap()
    }

    #[test]
    fn constants() {
        let c = cfg();
        assert!((theta_constant(&c) - (0.3 - 0.25)).abs() < 1e-15);
        assert_eq!(axial_constant(&c), 0.0);
    }

    #[test]
    fn full_rotation_is_identity() {
        let c = cfg();
        let g = default_grid(&c, (-4, 3), 801).unwrap();
        let psi = fourier_eigenstate(&c, 0.7, (-4, 3), &g).unwrap();
        let back = apply_u(&c, std::f64::consts::TAU, &psi).unwrap();
        assert!(back.sub(&psi).unwrap().norm() < 1e-12);
    }

    #[test]
    fn shift_gate() {
        let c = CylinderConfig::natural(2.0, 1.0, 0.0, 0.0).unwrap();
        assert_eq!(SymmetryOp::axial_shift_by_length(&c, 1.5).unwrap(), SymmetryOp::AxialShift(3));
        assert!(matches!(
            SymmetryOp::axial_shift_by_length(&c, 0.75),
            Err(Error::NonAdmissibleTranslation { .. })
        ));
    }

    #[test]
    fn v_moves_ground_state() {
        let c = cfg();
        let g = make_grid(0.0, 16.0, 1601).unwrap();
        let omega = analytic_ground_state(&c, 0, &g).unwrap();
        let moved = apply_v(&c, 1, &omega).unwrap();
        let target = analytic_ground_state(&c, 1, &g).unwrap();
        assert!(inner_product(&target, &moved).unwrap().norm() > 1.0 - 1e-6);
        assert!(apply_v(&c, 0, &omega).unwrap().sub(&omega).unwrap().norm() == 0.0);
    }

    #[test]
    fn q_mismatch() {
        let c = cfg();
        let g = make_grid(0.0, 16.0, 101).unwrap();
        let psi = WaveFunction::zero(0.0, g);
        assert!(matches!(apply_u(&c, 1.0, &psi), Err(Error::IncompatibleStates(_))));
    }

    #[test]
    fn mismatch_formula() {
        let c = CylinderConfig::<f64>::natural(1.0, 1.0, 0.0, 0.0).unwrap();
        assert!(axial_multiplier_mismatch(&c, 1.0, 0.4) < 1e-12);
        assert!((axial_multiplier_mismatch(&c, 0.5, 0.4) - 2.0).abs() < 1e-12);
    }
}
