//! Units, constants and the cylinder configuration.
//!
//! Everything downstream works in the configuration's own unit system, by
//! default `ħ = e = m = R = 1`. [`physical_step_size`] is the only entry
//! point that speaks Gaussian units.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{wrap_mod, Real};

/// Reduced Planck constant in erg·s.
pub const HBAR_CGS: f64 = 1.054_571_817e-27;
/// Speed of light in cm/s.
pub const C_CGS: f64 = 2.997_924_58e10;
/// Elementary charge in statcoulomb.
pub const E_CGS: f64 = 4.803_204_712_570_263e-10;

/// Charged particle on a cylinder of radius `R` in a uniform radial field `B`.
///
/// `q` is the quasi-periodicity parameter (`ψ(θ+2π, y) = e^{2πiq} ψ(θ, y)`),
/// kept in `[0, 1)`. `rho` labels the gauge class through `ζ = B R ρ` and is
/// stored as given. The flux per unit length `μ = eBR/ħ` is always derived.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CylinderConfig<T> {
    b: T,
    r: T,
    q: T,
    rho: T,
    hbar: T,
    e: T,
    m: T,
}

fn positive<T: Real>(name: &'static str, value: T) -> Result<()> {
    if value > T::zero() && value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveParameter {
            name,
            value: value.to_f64_lossy(),
        })
    }
}

impl<T: Real> CylinderConfig<T> {
    pub fn new(b: T, r: T, q: T, rho: T, hbar: T, e: T, m: T) -> Result<Self> {
        positive("B", b)?;
        positive("R", r)?;
        positive("hbar", hbar)?;
        positive("e", e)?;
        positive("m", m)?;
        if !q.is_finite() || !rho.is_finite() {
            return Err(Error::InvalidInput("q and rho must be finite".into()));
        }
        Ok(Self {
            b,
            r,
            q: wrap_mod(q, T::one()),
            rho,
            hbar,
            e,
            m,
        })
    }

    /// Unit constants `ħ = e = m = 1`.
    pub fn natural(b: T, r: T, q: T, rho: T) -> Result<Self> {
        Self::new(b, r, q, rho, T::one(), T::one(), T::one())
    }

    /// Natural units with the origin placed on the `n = 0` ground-state peak,
    /// i.e. `ρ = q / μ`.
    pub fn with_canonical_rho(b: T, r: T, q: T) -> Result<Self> {
        let tmp = Self::natural(b, r, q, T::zero())?;
        Ok(tmp.with_rho(tmp.q / tmp.mu()))
    }

    pub fn b(&self) -> T {
        self.b
    }
    pub fn r(&self) -> T {
        self.r
    }
    pub fn q(&self) -> T {
        self.q
    }
    pub fn rho(&self) -> T {
        self.rho
    }
    pub fn hbar(&self) -> T {
        self.hbar
    }
    pub fn e(&self) -> T {
        self.e
    }
    pub fn m(&self) -> T {
        self.m
    }

    /// Flux per unit axial length in flux quanta, `eBR/ħ`.
    pub fn mu(&self) -> T {
        self.e * self.b * self.r / self.hbar
    }

    /// Gauge-class offset `ζ = B R ρ`.
    pub fn zeta(&self) -> T {
        self.b * self.r * self.rho
    }

    /// Cyclotron frequency `eB/m`.
    pub fn cyclotron_frequency(&self) -> T {
        self.e * self.b / self.m
    }

    /// Magnetic length `√(R/μ) = √(ħ/(eB))`, the width scale of ground states.
    pub fn magnetic_length(&self) -> T {
        (self.r / self.mu()).sqrt()
    }

    /// Analytic Landau level `ħ (eB/m) (N + ½)`.
    pub fn landau_energy(&self, level: usize) -> T {
        self.hbar * self.cyclotron_frequency() * (T::from_usize(level).unwrap() + T::lit(0.5))
    }

    /// Center `y_n = ρ − (n+q)/μ` of the angular mode `n`.
    pub fn mode_center(&self, n: i64) -> T {
        self.rho - (T::from_int(n) + self.q) / self.mu()
    }

    pub fn with_rho(&self, rho: T) -> Self {
        Self { rho, ..*self }
    }

    pub fn with_q(&self, q: T) -> Self {
        Self {
            q: wrap_mod(q, T::one()),
            ..*self
        }
    }

    pub fn with_b(&self, b: T) -> Result<Self> {
        Self::new(b, self.r, self.q, self.rho, self.hbar, self.e, self.m)
    }
}

impl<T: Real> Default for CylinderConfig<T> {
    fn default() -> Self {
        Self::natural(T::one(), T::one(), T::zero(), T::zero()).unwrap()
    }
}

/// Smallest admissible axial translation `μ⁻¹ = ħ/(eBR)`.
pub fn translation_step<T: Real>(config: &CylinderConfig<T>) -> T {
    config.mu().recip()
}

/// Field and radius in Gaussian units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalInput {
    pub b_gauss: f64,
    pub r_cm: f64,
}

/// Axial step `ħc/(eBR)` in centimeters.
pub fn physical_step_size(input: PhysicalInput) -> Result<f64> {
    positive("B_gauss", input.b_gauss)?;
    positive("R_cm", input.r_cm)?;
    Ok(HBAR_CGS * C_CGS / (E_CGS * input.b_gauss * input.r_cm))
}

/// On-disk configuration. Missing keys fall back to `B = R = ħ = e = m = 1`,
/// `q = 0`, and `ρ = q/μ`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(rename = "B", default)]
    pub b: Option<f64>,
    #[serde(rename = "R", default)]
    pub r: Option<f64>,
    #[serde(default)]
    pub q: Option<f64>,
    #[serde(default)]
    pub rho: Option<f64>,
    #[serde(default)]
    pub hbar: Option<f64>,
    #[serde(default)]
    pub e: Option<f64>,
    #[serde(default)]
    pub m: Option<f64>,
}

impl ConfigFile {
    pub fn into_config<T: Real>(self) -> Result<CylinderConfig<T>> {
        let f = |v: Option<f64>, d: f64| T::lit(v.unwrap_or(d));
        let mut config = CylinderConfig::new(
            f(self.b, 1.0),
            f(self.r, 1.0),
            f(self.q, 0.0),
            T::zero(),
            f(self.hbar, 1.0),
            f(self.e, 1.0),
            f(self.m, 1.0),
        )?;
        config.rho = match self.rho {
            Some(rho) => T::lit(rho),
            None => config.q / config.mu(),
        };
        if !config.rho.is_finite() {
            return Err(Error::InvalidInput("rho must be finite".into()));
        }
        Ok(config)
    }
}

impl<T: Real> From<&CylinderConfig<T>> for ConfigFile {
    fn from(c: &CylinderConfig<T>) -> Self {
        Self {
            b: Some(c.b.to_f64_lossy()),
            r: Some(c.r.to_f64_lossy()),
            q: Some(c.q.to_f64_lossy()),
            rho: Some(c.rho.to_f64_lossy()),
            hbar: Some(c.hbar.to_f64_lossy()),
            e: Some(c.e.to_f64_lossy()),
            m: Some(c.m.to_f64_lossy()),
        }
    }
}
