//! Gauge potentials `A = (ζ − BRy) dθ + dΛ` on the cylinder, their
//! holonomies, gauge classes, and the admissibility of axial translations.

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::CylinderConfig;
use crate::scalar::{cis, dist_to_integer, wrap_mod, Real};

/// Default Simpson samples per loop segment.
pub const DEFAULT_SAMPLES_PER_SEGMENT: usize = 64;
/// Holonomies closer than this are considered equal.
pub const PHASE_TOL: f64 = 1e-8;
/// `ℓμ` within this of an integer is an admissible axial translation.
pub const ADMISSIBILITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Trig {
    Cos,
    Sin,
}

/// One term `c · trig(jθ) · P(y − y0) · exp(−α (y − y0)²)` of a gauge function Λ.
///
/// `poly` holds the coefficients of `P` in increasing degree; an empty list
/// means `P ≡ 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaTerm<T> {
    pub coeff: T,
    pub trig: Trig,
    pub freq: T,
    #[serde(default)]
    pub poly: Vec<T>,
    #[serde(default)]
    pub alpha: T,
    #[serde(default)]
    pub y0: T,
}

impl<T: Real> LambdaTerm<T> {
    pub fn new(coeff: T, trig: Trig, freq: T) -> Self {
        Self {
            coeff,
            trig,
            freq,
            poly: Vec::new(),
            alpha: T::zero(),
            y0: T::zero(),
        }
    }

    pub fn sin(coeff: T, freq: T) -> Self {
        Self::new(coeff, Trig::Sin, freq)
    }

    pub fn cos(coeff: T, freq: T) -> Self {
        Self::new(coeff, Trig::Cos, freq)
    }

    pub fn with_gaussian(mut self, alpha: T, y0: T) -> Self {
        self.alpha = alpha;
        self.y0 = y0;
        self
    }

    pub fn with_poly(mut self, poly: Vec<T>) -> Self {
        self.poly = poly;
        self
    }

    fn validate(&self) -> Result<()> {
        if !self.freq.is_finite() || dist_to_integer(self.freq) > T::lit(1e-12) {
            return Err(Error::NonIntegerWinding(self.freq.to_f64_lossy()));
        }
        if !(self.alpha >= T::zero()) {
            return Err(Error::InvalidInput(format!(
                "gaussian rate alpha must be >= 0 (got {})",
                self.alpha
            )));
        }
        Ok(())
    }

    fn angular(&self, theta: T) -> (T, T) {
        let x = self.freq * theta;
        match self.trig {
            Trig::Cos => (x.cos(), -self.freq * x.sin()),
            Trig::Sin => (x.sin(), self.freq * x.cos()),
        }
    }

    /// `(Y(y), Y'(y))` for the axial factor.
    fn axial(&self, y: T) -> (T, T) {
        let u = y - self.y0;
        let (mut p, mut dp) = (T::zero(), T::zero());
        if self.poly.is_empty() {
            p = T::one();
        } else {
            for &c in self.poly.iter().rev() {
                dp = dp * u + p;
                p = p * u + c;
            }
        }
        let g = (-self.alpha * u * u).exp();
        (p * g, (dp - T::lit(2.0) * self.alpha * u * p) * g)
    }

    pub fn value(&self, theta: T, y: T) -> T {
        self.coeff * self.angular(theta).0 * self.axial(y).0
    }

    /// `(∂_θ Λ, ∂_y Λ)` for this term.
    pub fn gradient(&self, theta: T, y: T) -> (T, T) {
        let (a, da) = self.angular(theta);
        let (b, db) = self.axial(y);
        (self.coeff * da * b, self.coeff * a * db)
    }
}

/// `A^ζ = (ζ − BRy) dθ + dΛ` with Λ a finite sum of [`LambdaTerm`]s.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaugePotential<T> {
    zeta: T,
    lambda: Vec<LambdaTerm<T>>,
    config: CylinderConfig<T>,
}

pub fn make_potential<T: Real>(
    config: &CylinderConfig<T>,
    zeta: T,
    lambda: Vec<LambdaTerm<T>>,
) -> Result<GaugePotential<T>> {
    for term in &lambda {
        term.validate()?;
    }
    if !zeta.is_finite() {
        return Err(Error::InvalidInput("zeta must be finite".into()));
    }
    Ok(GaugePotential {
        zeta,
        lambda,
        config: *config,
    })
}

impl<T: Real> GaugePotential<T> {
    /// The gauge-class representative `ζ = BRρ`, `Λ = 0` of a configuration.
    pub fn from_config(config: &CylinderConfig<T>) -> Self {
        Self {
            zeta: config.zeta(),
            lambda: Vec::new(),
            config: *config,
        }
    }

    pub fn zeta(&self) -> T {
        self.zeta
    }

    pub fn lambda_terms(&self) -> &[LambdaTerm<T>] {
        &self.lambda
    }

    pub fn config(&self) -> &CylinderConfig<T> {
        &self.config
    }

    /// Gauge function Λ at a point.
    pub fn lambda_value(&self, theta: T, y: T) -> T {
        self.lambda
            .iter()
            .map(|t| t.value(theta, y))
            .fold(T::zero(), |a, b| a + b)
    }

    fn lambda_gradient(&self, theta: T, y: T) -> (T, T) {
        self.lambda
            .iter()
            .map(|t| t.gradient(theta, y))
            .fold((T::zero(), T::zero()), |a, b| (a.0 + b.0, a.1 + b.1))
    }

    /// `A_θ = ζ − BRy + ∂_θΛ`.
    pub fn a_theta(&self, theta: T, y: T) -> T {
        let br = self.config.b() * self.config.r();
        self.zeta - br * y + self.lambda_gradient(theta, y).0
    }

    /// `A_y = ∂_yΛ`.
    pub fn a_y(&self, theta: T, y: T) -> T {
        self.lambda_gradient(theta, y).1
    }

    /// `∂_θ A_y − ∂_y A_θ` by central differences with step `step`.
    pub fn field_strength_fd(&self, theta: T, y: T, step: T) -> T {
        let two = T::lit(2.0) * step;
        let d_theta_ay = (self.a_y(theta + step, y) - self.a_y(theta - step, y)) / two;
        let d_y_atheta = (self.a_theta(theta, y + step) - self.a_theta(theta, y - step)) / two;
        d_theta_ay - d_y_atheta
    }
}

/// `A + i(ħ/e) g dg⁻¹` for `g = e^{imθ} e^{i(e/ħ)Λ_new}`: shifts ζ by `m ħ/e`
/// and adds `Λ_new` to Λ.
pub fn apply_gauge_transformation<T: Real>(
    potential: &GaugePotential<T>,
    m: i64,
    lambda: Vec<LambdaTerm<T>>,
) -> Result<GaugePotential<T>> {
    let quantum = potential.config.hbar() / potential.config.e();
    let mut terms = potential.lambda.clone();
    terms.extend(lambda);
    make_potential(
        &potential.config,
        potential.zeta + T::from_int(m) * quantum,
        terms,
    )
}

/// Pull back along `y ↦ y − ℓ`: `A'(θ, y) = A(θ, y − ℓ)`.
pub fn translate_potential<T: Real>(potential: &GaugePotential<T>, ell: T) -> GaugePotential<T> {
    let br = potential.config.b() * potential.config.r();
    GaugePotential {
        zeta: potential.zeta + br * ell,
        lambda: potential
            .lambda
            .iter()
            .map(|t| LambdaTerm {
                y0: t.y0 + ell,
                ..t.clone()
            })
            .collect(),
        config: potential.config,
    }
}

/// Whether `y ↦ y + ℓ` maps the gauge class to itself, i.e. `ℓμ ∈ ℤ`.
pub fn is_symmetry_translation<T: Real>(config: &CylinderConfig<T>, ell: T) -> bool {
    dist_to_integer(ell * config.mu()) <= T::lit(ADMISSIBILITY_TOL)
}

/// Closed piecewise-linear loop in the universal cover `(θ, y) ∈ ℝ²`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Loop<T> {
    vertices: Vec<(T, T)>,
    winding: i64,
}

/// Serialized loop; `winding`, when present, must match the endpoints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoopSpec {
    pub vertices: Vec<(f64, f64)>,
    #[serde(default)]
    pub winding: Option<i64>,
}

impl<T: Real> Loop<T> {
    pub fn new(vertices: Vec<(T, T)>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::OpenLoop("a loop needs at least two vertices".into()));
        }
        let (t0, y0) = vertices[0];
        let (t1, y1) = *vertices.last().unwrap();
        let scale = vertices
            .iter()
            .map(|&(t, y)| t.abs().max(y.abs()))
            .fold(T::one(), T::max);
        let tol = T::lit(1e-9) * scale;
        if (y1 - y0).abs() > tol {
            return Err(Error::OpenLoop(format!("y_end = {y1} but y_start = {y0}")));
        }
        let turns = (t1 - t0) / T::TAU();
        if dist_to_integer(turns) * T::TAU() > tol {
            return Err(Error::OpenLoop(format!(
                "θ_end − θ_start = {} is not a multiple of 2π",
                t1 - t0
            )));
        }
        let winding = turns.round().to_i64().unwrap();
        Ok(Self { vertices, winding })
    }

    pub fn from_spec(spec: &LoopSpec) -> Result<Self> {
        let lp = Self::new(
            spec.vertices
                .iter()
                .map(|&(t, y)| (T::lit(t), T::lit(y)))
                .collect(),
        )?;
        if let Some(w) = spec.winding {
            if w != lp.winding {
                return Err(Error::OpenLoop(format!(
                    "declared winding {w} but endpoints give {}",
                    lp.winding
                )));
            }
        }
        Ok(lp)
    }

    /// Counter-clockwise rectangle in the `(θ, y)` plane with corner `(θ0, y0)`.
    pub fn rectangle(theta0: T, y0: T, d_theta: T, d_y: T) -> Self {
        Self {
            vertices: vec![
                (theta0, y0),
                (theta0 + d_theta, y0),
                (theta0 + d_theta, y0 + d_y),
                (theta0, y0 + d_y),
                (theta0, y0),
            ],
            winding: 0,
        }
    }

    /// The circle at height `y` traversed `winding` times (negative: reversed).
    pub fn circle(y: T, winding: i64) -> Self {
        let pieces = 8 * winding.unsigned_abs().max(1) as i64;
        let total = T::TAU() * T::from_int(winding);
        let vertices = (0..=pieces)
            .map(|k| (total * T::from_int(k) / T::from_int(pieces), y))
            .collect();
        Self { vertices, winding }
    }

    /// Same loop with every segment split into `pieces` equal parts.
    pub fn subdivided(&self, pieces: usize) -> Self {
        let pieces = pieces.max(1);
        let k = T::from_usize(pieces).unwrap();
        let mut vertices = vec![self.vertices[0]];
        for w in self.vertices.windows(2) {
            let ((t0, y0), (t1, y1)) = (w[0], w[1]);
            for i in 1..=pieces {
                let s = T::from_usize(i).unwrap() / k;
                vertices.push((t0 + s * (t1 - t0), y0 + s * (y1 - y0)));
            }
        }
        Self {
            vertices,
            winding: self.winding,
        }
    }

    pub fn vertices(&self) -> &[(T, T)] {
        &self.vertices
    }

    pub fn winding(&self) -> i64 {
        self.winding
    }

    pub fn is_contractible(&self) -> bool {
        self.winding == 0
    }

    /// Traverse `self`, then `other`, both based at `self`'s start point.
    ///
    /// `other` must start at the same point of the cylinder; it is moved by a
    /// multiple of 2π in θ to join up.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        let (s0, y0) = self.vertices[0];
        let (o0, oy) = other.vertices[0];
        let turns = (s0 - o0) / T::TAU();
        if (oy - y0).abs() > T::lit(1e-9) || dist_to_integer(turns) > T::lit(1e-9) {
            return Err(Error::OpenLoop("loops do not share a base point".into()));
        }
        let (end, _) = *self.vertices.last().unwrap();
        let offset = end - o0;
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices.iter().skip(1).map(|&(t, y)| (t + offset, y)));
        Ok(Self {
            vertices,
            winding: self.winding + other.winding,
        })
    }

    /// `∮ y dθ`, exact for straight segments.
    pub fn y_dtheta(&self) -> T {
        self.vertices
            .windows(2)
            .map(|w| (w[0].1 + w[1].1) * T::lit(0.5) * (w[1].0 - w[0].0))
            .fold(T::zero(), |a, b| a + b)
    }
}

/// `∮ A` along `lp` by composite Simpson on each segment.
pub fn line_integral<T: Real>(
    potential: &GaugePotential<T>,
    lp: &Loop<T>,
    samples_per_segment: usize,
) -> Result<T> {
    if samples_per_segment < 2 {
        return Err(Error::InvalidInput(
            "samples_per_segment must be at least 2".into(),
        ));
    }
    let mut intervals = (samples_per_segment - 1).max(2);
    if intervals % 2 == 1 {
        intervals += 1;
    }
    let nn = T::from_usize(intervals).unwrap();
    let mut total = T::zero();
    for w in lp.vertices.windows(2) {
        let ((t0, y0), (t1, y1)) = (w[0], w[1]);
        let (dt, dy) = (t1 - t0, y1 - y0);
        let integrand = |s: T| {
            let (t, y) = (t0 + s * dt, y0 + s * dy);
            potential.a_theta(t, y) * dt + potential.a_y(t, y) * dy
        };
        let mut acc = integrand(T::zero()) + integrand(T::one());
        for k in 1..intervals {
            let wgt = if k % 2 == 1 { T::lit(4.0) } else { T::lit(2.0) };
            acc += wgt * integrand(T::from_usize(k).unwrap() / nn);
        }
        total += acc / (T::lit(3.0) * nn);
    }
    Ok(total)
}

/// Holonomy `exp(i (e/ħ) ∮_τ A)`.
pub fn holonomy<T: Real>(
    potential: &GaugePotential<T>,
    lp: &Loop<T>,
    samples_per_segment: usize,
) -> Result<Complex<T>> {
    let cfg = &potential.config;
    let integral = line_integral(potential, lp, samples_per_segment)?;
    Ok(cis(cfg.e() / cfg.hbar() * integral))
}

/// Flux term `Φ_τ = BR ∮ y dθ` entering the holonomy.
pub fn loop_flux<T: Real>(config: &CylinderConfig<T>, lp: &Loop<T>) -> T {
    config.b() * config.r() * lp.y_dtheta()
}

/// Holonomy from the closed form `e^{i(e/ħ)ζ 2π w} e^{−i(e/ħ)Φ_τ}`.
pub fn closed_form_holonomy<T: Real>(potential: &GaugePotential<T>, lp: &Loop<T>) -> Complex<T> {
    let cfg = &potential.config;
    let k = cfg.e() / cfg.hbar();
    let w = T::from_int(lp.winding);
    cis(k * potential.zeta * T::TAU() * w) * cis(-k * loop_flux(cfg, lp))
}

/// Gauge equivalence class: ζ reduced into `[0, ħ/e)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaugeClass<T> {
    pub zeta_mod: T,
    /// The period `ħ/e`.
    pub quantum: T,
    pub b: T,
    pub r: T,
}

impl<T: Real> GaugeClass<T> {
    /// Class label as a fraction of `ħ/e`, in `[0, 1)`.
    pub fn fraction(&self) -> T {
        self.zeta_mod / self.quantum
    }

    /// Circular distance between labels, in units of `ħ/e`.
    pub fn distance(&self, other: &Self) -> T {
        let d = wrap_mod(self.fraction() - other.fraction(), T::one());
        d.min(T::one() - d)
    }

    pub fn same_as(&self, other: &Self, tol: T) -> bool {
        self.distance(other) <= tol
    }
}

pub fn classify<T: Real>(potential: &GaugePotential<T>) -> GaugeClass<T> {
    let cfg = &potential.config;
    let quantum = cfg.hbar() / cfg.e();
    GaugeClass {
        zeta_mod: wrap_mod(potential.zeta, quantum),
        quantum,
        b: cfg.b(),
        r: cfg.r(),
    }
}

/// One contractible unit square and circles at `y ∈ {0, 0.37}` with windings 1 and 2.
pub fn default_loop_suite<T: Real>() -> Vec<Loop<T>> {
    let mut suite = vec![Loop::rectangle(T::zero(), T::zero(), T::one(), T::one()).subdivided(4)];
    for y in [T::zero(), T::lit(0.37)] {
        for w in [1, 2] {
            suite.push(Loop::circle(y, w));
        }
    }
    suite
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LoopComparison<T> {
    pub winding: i64,
    pub holonomy_a: Complex<T>,
    pub holonomy_b: Complex<T>,
    pub deviation: T,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceReport<T> {
    pub equivalent: bool,
    pub tolerance: T,
    pub loops: Vec<LoopComparison<T>>,
    pub max_deviation_contractible: T,
    pub max_deviation_winding: T,
}

/// Compare holonomies of two potentials on every loop of a suite.
pub fn holonomically_equivalent<T: Real>(
    a: &GaugePotential<T>,
    b: &GaugePotential<T>,
    suite: &[Loop<T>],
) -> Result<EquivalenceReport<T>> {
    if !suite.iter().any(|l| !l.is_contractible()) {
        return Err(Error::InsufficientLoopSuite);
    }
    let tol = T::lit(PHASE_TOL);
    let loops = suite
        .par_iter()
        .map(|lp| {
            let ha = holonomy(a, lp, DEFAULT_SAMPLES_PER_SEGMENT)?;
            let hb = holonomy(b, lp, DEFAULT_SAMPLES_PER_SEGMENT)?;
            let deviation = (ha - hb).norm();
            Ok(LoopComparison {
                winding: lp.winding,
                holonomy_a: ha,
                holonomy_b: hb,
                deviation,
                agree: deviation <= tol,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_by = |contractible: bool| {
        loops
            .iter()
            .filter(|c| (c.winding == 0) == contractible)
            .map(|c| c.deviation)
            .fold(T::zero(), T::max)
    };
    Ok(EquivalenceReport {
        equivalent: loops.iter().all(|c| c.agree),
        tolerance: tol,
        max_deviation_contractible: max_by(true),
        max_deviation_winding: max_by(false),
        loops,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    fn unit() -> CylinderConfig<f64> {
        CylinderConfig::default()
    }

    #[test]
    fn base_gauge_components() {
        let a = make_potential(&unit(), 0.0, vec![]).unwrap();
        assert_eq!(a.a_theta(0.3, 2.0), -2.0);
        assert_eq!(a.a_y(0.3, 2.0), 0.0);
    }

    #[test]
    fn sine_gauge_function_components() {
        let a = make_potential(&unit(), 0.0, vec![LambdaTerm::sin(1.0, 1.0)]).unwrap();
        for (t, y) in [(0.0, 0.0), (1.1, -0.4), (4.0, 2.5)] {
            assert!((a.a_theta(t, y) - (-y + f64::cos(t))).abs() < 1e-14);
            assert_eq!(a.a_y(t, y), 0.0);
            assert!((a.field_strength_fd(t, y, 1e-4) - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn half_integer_frequency_is_rejected() {
        let err = make_potential(&unit(), 0.0, vec![LambdaTerm::sin(1.0, 0.5)]).unwrap_err();
        assert_eq!(err, Error::NonIntegerWinding(0.5));
    }

    #[test]
    fn axial_factor_derivative_matches_fd() {
        let term = LambdaTerm::<f64>::cos(0.7, 2.0)
            .with_poly(vec![0.5, -1.0, 0.25])
            .with_gaussian(0.8, 0.3);
        for y in [-1.0, 0.0, 0.45, 2.0] {
            let h = 1e-5;
            let fd = (term.value(0.9, y + h) - term.value(0.9, y - h)) / (2.0 * h);
            assert!((term.gradient(0.9, y).1 - fd).abs() < 1e-8);
            let fd = (term.value(0.9 + h, y) - term.value(0.9 - h, y)) / (2.0 * h);
            assert!((term.gradient(0.9, y).0 - fd).abs() < 1e-8);
        }
    }

    #[test]
    fn gauge_transformation_examples() {
        let a = make_potential(&unit(), 0.0, vec![]).unwrap();
        assert_eq!(apply_gauge_transformation(&a, 0, vec![]).unwrap(), a);
        assert_eq!(apply_gauge_transformation(&a, 1, vec![]).unwrap().zeta(), 1.0);
        let a = make_potential(&unit(), 0.3, vec![]).unwrap();
        let g = LambdaTerm::cos(1.0, 1.0).with_gaussian(1.0, 0.0);
        let b = apply_gauge_transformation(&a, -2, vec![g]).unwrap();
        assert!((b.zeta() - (0.3 - 2.0)).abs() < 1e-15);
        assert!(classify(&a).same_as(&classify(&b), 1e-12));
    }

    #[test]
    fn contractible_rectangle_holonomy_is_trivial() {
        let cfg = CylinderConfig::natural(TAU, 1.0, 0.0, 0.0).unwrap();
        let lp = Loop::rectangle(0.0, 0.0, 1.0, 1.0);
        for zeta in [0.0, 0.3, 17.0] {
            let a = make_potential(&cfg, zeta, vec![]).unwrap();
            let h = holonomy(&a, &lp, 64).unwrap();
            assert!((h - Complex::new(1.0, 0.0)).norm() < 1e-6, "{h}");
        }
    }

    #[test]
    fn winding_circle_holonomy() {
        let a = make_potential(&unit(), 0.5, vec![]).unwrap();
        let h = holonomy(&a, &Loop::circle(0.0, 1), 64).unwrap();
        assert!((h - Complex::new(-1.0, 0.0)).norm() < 1e-12);
        assert!((h - closed_form_holonomy(&a, &Loop::circle(0.0, 1))).norm() < 1e-12);
    }

    #[test]
    fn exact_forms_do_not_change_holonomy() {
        let a = make_potential(&unit(), 0.2, vec![]).unwrap();
        let b = make_potential(
            &unit(),
            0.2,
            vec![
                LambdaTerm::sin(0.8, 3.0).with_gaussian(0.5, 0.2),
                LambdaTerm::cos(-1.2, 1.0).with_poly(vec![0.0, 1.0]).with_gaussian(1.0, -0.1),
            ],
        )
        .unwrap();
        let lp = Loop::new(vec![(0.1, -0.3), (2.0, 0.4), (5.0, 0.9), (TAU + 0.1, -0.3)]).unwrap();
        let (ha, hb) = (holonomy(&a, &lp, 256).unwrap(), holonomy(&b, &lp, 256).unwrap());
        assert!((ha - hb).norm() < 1e-8, "{}", (ha - hb).norm());
    }

    #[test]
    fn open_loops_are_rejected() {
        assert!(matches!(
            Loop::new(vec![(0.0, 0.0), (1.0, 0.0)]),
            Err(Error::OpenLoop(_))
        ));
        assert!(matches!(
            Loop::new(vec![(0.0, 0.0), (TAU, 0.5)]),
            Err(Error::OpenLoop(_))
        ));
        let spec = LoopSpec { vertices: vec![(0.0, 0.0), (2.0 * TAU, 0.0)], winding: Some(1) };
        assert!(Loop::<f64>::from_spec(&spec).is_err());
        let spec = LoopSpec { vertices: vec![(0.0, 0.0), (-TAU, 0.0)], winding: None };
        assert_eq!(Loop::<f64>::from_spec(&spec).unwrap().winding(), -1);
    }

    #[test]
    fn classify_examples() {
        let cfg = unit();
        let label = |z: f64| classify(&make_potential(&cfg, z, vec![]).unwrap()).zeta_mod;
        assert_eq!(label(0.0), 0.0);
        assert_eq!(label(1.0), 0.0);
        assert!((label(1.25) - 0.25).abs() < 1e-15);
        let cfg2 = CylinderConfig::new(1.0, 1.0, 0.0, 0.0, 2.0, 1.0, 1.0).unwrap();
        let c: GaugeClass<f64> = classify(&make_potential(&cfg2, 5.0, vec![]).unwrap());
        assert!((c.zeta_mod - 1.0).abs() < 1e-15 && c.quantum == 2.0);
    }

    #[test]
    fn equivalence_examples() {
        let cfg = unit();
        let suite = default_loop_suite();
        let a = make_potential(&cfg, 0.0, vec![]).unwrap();
        let b = make_potential(&cfg, 1.0, vec![]).unwrap();
        assert!(holonomically_equivalent(&a, &b, &suite).unwrap().equivalent);

        let c = make_potential(&cfg, 0.5, vec![]).unwrap();
        let rep = holonomically_equivalent(&a, &c, &suite).unwrap();
        assert!(!rep.equivalent);
        assert!(rep.max_deviation_contractible < 1e-12);
        assert!(rep.loops.iter().filter(|l| l.winding == 1).all(|l| !l.agree));

        let d = apply_gauge_transformation(&c, 3, vec![LambdaTerm::sin(2.0, 2.0)]).unwrap();
        assert!(holonomically_equivalent(&c, &d, &suite).unwrap().equivalent);
    }

    #[test]
    fn suite_without_winding_loop_is_insufficient() {
        let a = make_potential(&unit(), 0.0, vec![]).unwrap();
        let suite = vec![Loop::rectangle(0.0, 0.0, 1.0, 1.0)];
        assert_eq!(
            holonomically_equivalent(&a, &a, &suite).unwrap_err(),
            Error::InsufficientLoopSuite
        );
    }

    #[test]
    fn translation_examples() {
        let cfg = CylinderConfig::natural(3.0, 1.0, 0.0, 0.0).unwrap();
        let a = make_potential(&cfg, 0.0, vec![LambdaTerm::sin(1.0, 1.0).with_gaussian(1.0, 0.0)])
            .unwrap();
        let same = |ell: f64| classify(&translate_potential(&a, ell)).same_as(&classify(&a), 1e-9);
        assert!(same(0.0));
        assert!(same(1.0 / 3.0));
        assert!(!same(0.5 / 3.0));
        let half = classify(&translate_potential(&make_potential(&cfg, 0.0, vec![]).unwrap(), 0.5 / 3.0));
        assert!((half.zeta_mod - 0.5).abs() < 1e-12);

        assert!(is_symmetry_translation(&cfg, 2.0 / 3.0));
        assert!(!is_symmetry_translation(&cfg, 0.5));
        assert!(is_symmetry_translation(&cfg, 0.0));
    }

    #[test]
    fn translated_potential_is_the_pullback() {
        let a = make_potential(
            &unit(),
            0.4,
            vec![LambdaTerm::cos(0.5, 2.0).with_poly(vec![1.0, 0.3]).with_gaussian(0.6, 0.1)],
        )
        .unwrap();
        let ell = 0.77;
        let t = translate_potential(&a, ell);
        for (th, y) in [(0.2, 0.0), (3.0, -1.0), (5.5, 1.7)] {
            assert!((t.a_theta(th, y) - a.a_theta(th, y - ell)).abs() < 1e-13);
            assert!((t.a_y(th, y) - a.a_y(th, y - ell)).abs() < 1e-13);
        }
    }

    #[test]
    fn concatenation_multiplies_holonomies() {
        let a = make_potential(&unit(), 0.31, vec![LambdaTerm::sin(0.4, 1.0)]).unwrap();
        let l1 = Loop::circle(0.0, 1);
        let l2 = Loop::new(vec![(0.0, 0.0), (1.0, 0.5), (PI, -0.5), (0.0, 0.0)]).unwrap();
        let joined = l1.concat(&l2).unwrap();
        assert_eq!(joined.winding(), 1);
        let h = |l: &Loop<f64>| holonomy(&a, l, 64).unwrap();
        assert!((h(&joined) - h(&l1) * h(&l2)).norm() < 1e-8);
    }
}
