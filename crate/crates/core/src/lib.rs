//! Charged particle on an infinite cylinder in a uniform radial magnetic
//! field.
//!
//! The crate covers the gauge potentials and their holonomies, the Landau
//! spectrum of the per-mode Hamiltonians, the magnetic rotation and axial
//! shift operators, and the projective representations of the cylinder and
//! plane translation groups behind them.
//!
//! Everything is generic over the scalar type ([`Real`] is implemented for
//! `f32` and `f64`). The aliases at the crate root fix it to `f64`, with
//! `…F32` variants where single precision is useful.
//!
//! ```
//! use landau_cylinder::{spectrum, Config};
//!
//! let config = Config::natural(1.0, 1.0, 0.0, 0.0).unwrap();
//! let s = spectrum(&config, (-2, 2), 2).unwrap();
//! assert_eq!(s.levels[0].degeneracy, 5);
//! assert!((s.levels[0].energy - 0.5).abs() < 1e-3);
//! ```

// `!(x > 0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod eigen;
pub mod error;
pub mod gauge;
pub mod grouprep;
pub mod hilbert;
pub mod model;
pub mod scalar;
pub mod spectral;
pub mod symmetry;

pub use error::{Error, Result};
pub use gauge::{
    apply_gauge_transformation, classify, closed_form_holonomy, default_loop_suite, holonomically_equivalent,
    holonomy, is_symmetry_translation, line_integral, loop_flux, make_potential, translate_potential,
    EquivalenceReport, GaugeClass, GaugePotential, LambdaTerm, Loop, LoopSpec, Trig,
};
pub use grouprep::{
    check_cocycle_laws, cylinder_obstruction, eval_commutator, flux_quantization_check, heisenberg_rep_v,
    plane_rep_check, rep_s1, rep_z, wavefunction_rep_w, CommutatorFunction, GroupElement, RepSpace,
    TruncatedRep,
};
pub use hilbert::{inner_product, make_grid, Grid, WaveFunction};
pub use model::{physical_step_size, translation_step, ConfigFile, CylinderConfig, PhysicalInput};
pub use scalar::Real;
pub use spectral::{
    analytic_ground_state, annihilation_residual, default_grid, eigensolve, mode_hamiltonian, numeric_ground_state,
    spectrum, spectrum_on_grid, velocity_check, LandauLevel, ModeHamiltonian, SpectrumResult,
};
pub use symmetry::{
    apply_u, apply_v, fourier_eigenstate, hamiltonian_commutation_check, projective_phase_check,
    rho_q_redundancy_check, SymmetryOp,
};

pub type Config = CylinderConfig<f64>;
pub type ConfigF32 = CylinderConfig<f32>;
pub type Potential = GaugePotential<f64>;
pub type PotentialF32 = GaugePotential<f32>;
pub type State = WaveFunction<f64>;
pub type StateF32 = WaveFunction<f32>;
pub type Spectrum = SpectrumResult<f64>;
pub type SpectrumF32 = SpectrumResult<f32>;
pub type LoopF64 = Loop<f64>;
pub type Element = GroupElement<f64>;
