//! Commutator functions, central extensions and truncated representations
//! of the translation groups of the plane and the cylinder.
//!
//! Sign convention, used everywhere below: `x ∧ y := x₁y₂ − x₂y₁` and the
//! commutator function is `c(g, h) = U(g)U(h)U(g)⁻¹U(h)⁻¹ = e^{iα(g,h)}` with
//!
//! * plane: `α = λ x∧y`,
//! * periodic cylinder `SO(2) × ℤ`: `α((φ,m),(φ',m')) = ν (m'φ − mφ')`,
//! * cylinder candidate `SO(2) × ℝ`: `α((θ,η),(θ',η')) = λ (θη' − θ'η)`.
//!
//! The extension cocycles are `β = α/2` on the plane and the one-sided
//! `β((φ,m),(φ',m')) = ν φ m'` on the periodic cylinder, which is the phase
//! produced by composing [`wavefunction_rep_w`] actions.

use nalgebra::DMatrix;
use num_complex::Complex;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::WaveFunction;
use crate::scalar::{cis, dist_to_integer, wrap_angle, Real};

/// Tolerance for the bilinearity/antisymmetry laws.
pub const COCYCLE_TOL: f64 = 1e-9;
/// `|e^{2πiν} − 1|` below this counts as integral flux.
pub const FLUX_TOL: f64 = 1e-9;
/// Default index cutoff for truncated representations.
pub const DEFAULT_CUTOFF: i64 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum GroupElement<T> {
    /// Translation of the plane.
    PlaneVec { x1: T, x2: T },
    /// Element `(θ, η)` of `SO(2) × ℝ`, θ in `[0, 2π)`.
    CylElem { theta: T, eta: T },
    /// Element `(φ, m)` of `SO(2) × ℤ`, φ in `[0, 2π)`.
    PerCylElem { phi: T, m: i64 },
}

impl<T: Real> GroupElement<T> {
    pub fn plane(x1: T, x2: T) -> Self {
        Self::PlaneVec { x1, x2 }
    }

    pub fn cyl(theta: T, eta: T) -> Self {
        Self::CylElem {
            theta: wrap_angle(theta),
            eta,
        }
    }

    pub fn per_cyl(phi: T, m: i64) -> Self {
        Self::PerCylElem {
            phi: wrap_angle(phi),
            m,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Self::PlaneVec { .. } => "plane vector",
            Self::CylElem { .. } => "cylinder element",
            Self::PerCylElem { .. } => "periodic-cylinder element",
        }
    }

    /// Identity of the same group.
    pub fn identity_like(&self) -> Self {
        match self {
            Self::PlaneVec { .. } => Self::plane(T::zero(), T::zero()),
            Self::CylElem { .. } => Self::cyl(T::zero(), T::zero()),
            Self::PerCylElem { .. } => Self::per_cyl(T::zero(), 0),
        }
    }

    pub fn neg(&self) -> Self {
        match *self {
            Self::PlaneVec { x1, x2 } => Self::plane(-x1, -x2),
            Self::CylElem { theta, eta } => Self::cyl(-theta, -eta),
            Self::PerCylElem { phi, m } => Self::per_cyl(-phi, -m),
        }
    }

    /// Group law, angles reduced mod 2π.
    pub fn add(&self, other: &Self) -> Result<Self> {
        match (*self, *other) {
            (Self::PlaneVec { x1, x2 }, Self::PlaneVec { x1: y1, x2: y2 }) => {
                Ok(Self::plane(x1 + y1, x2 + y2))
            }
            (Self::CylElem { theta, eta }, Self::CylElem { theta: t, eta: e }) => {
                Ok(Self::cyl(theta + t, eta + e))
            }
            (Self::PerCylElem { phi, m }, Self::PerCylElem { phi: p, m: n }) => {
                Ok(Self::per_cyl(phi + p, m + n))
            }
            _ => Err(Error::KindMismatch(format!(
                "cannot add {} and {}",
                self.kind(),
                other.kind()
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CommutatorFunction<T> {
    PlaneLambda(T),
    PeriodicCylinderNu(i64),
    /// The would-be commutator of `SO(2) × ℝ`; inconsistent unless λ = 0.
    CylinderCandidate(T),
}

impl<T: Real> CommutatorFunction<T> {
    fn mismatch(&self, g: &GroupElement<T>, h: &GroupElement<T>) -> Error {
        Error::KindMismatch(format!(
            "{self:?} evaluated on {} and {}",
            g.kind(),
            h.kind()
        ))
    }

    /// Exponent `α(g, h)`.
    pub fn alpha(&self, g: &GroupElement<T>, h: &GroupElement<T>) -> Result<T> {
        use GroupElement::*;
        match (*self, *g, *h) {
            (Self::PlaneLambda(l), PlaneVec { x1, x2 }, PlaneVec { x1: y1, x2: y2 }) => {
                Ok(l * (x1 * y2 - x2 * y1))
            }
            (Self::PeriodicCylinderNu(nu), PerCylElem { phi, m }, PerCylElem { phi: p, m: n }) => {
                Ok(T::from_int(nu) * (T::from_int(n) * phi - T::from_int(m) * p))
            }
            (Self::CylinderCandidate(l), CylElem { theta, eta }, CylElem { theta: t, eta: e }) => {
                Ok(l * (theta * e - t * eta))
            }
            _ => Err(self.mismatch(g, h)),
        }
    }

    /// Extension cocycle exponent `β(g, h)`, with `β(g,h) − β(h,g) = α(g,h)`.
    pub fn beta(&self, g: &GroupElement<T>, h: &GroupElement<T>) -> Result<T> {
        use GroupElement::*;
        match (*self, *g, *h) {
            (Self::PlaneLambda(_), PlaneVec { .. }, PlaneVec { .. }) => {
                Ok(self.alpha(g, h)? * T::lit(0.5))
            }
            (Self::PeriodicCylinderNu(nu), PerCylElem { phi, .. }, PerCylElem { m, .. }) => {
                Ok(T::from_int(nu) * phi * T::from_int(m))
            }
            (Self::CylinderCandidate(l), CylElem { theta, .. }, CylElem { eta, .. }) => {
                Ok(l * theta * eta)
            }
            _ => Err(self.mismatch(g, h)),
        }
    }
}

pub fn eval_commutator<T: Real>(
    cf: &CommutatorFunction<T>,
    g: &GroupElement<T>,
    h: &GroupElement<T>,
) -> Result<Complex<T>> {
    Ok(cis(cf.alpha(g, h)?))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CocycleReport<T> {
    pub samples: usize,
    /// `max |c(g+h, k) − c(g,k) c(h,k)|`
    pub left_linearity: T,
    /// `max |c(g, h+k) − c(g,h) c(g,k)|`
    pub right_linearity: T,
    /// `max |c(g,h) c(h,g) − 1|`
    pub antisymmetry: T,
    pub max_deviation: T,
    pub tolerance: T,
    pub pass: bool,
}

pub type Triple<T> = (GroupElement<T>, GroupElement<T>, GroupElement<T>);

pub fn check_cocycle_laws<T: Real>(
    cf: &CommutatorFunction<T>,
    triples: &[Triple<T>],
) -> Result<CocycleReport<T>> {
    let one = Complex::new(T::one(), T::zero());
    let (mut left, mut right, mut anti) = (T::zero(), T::zero(), T::zero());
    for (g, h, k) in triples {
        let c = |a: &GroupElement<T>, b: &GroupElement<T>| eval_commutator(cf, a, b);
        left = left.max((c(&g.add(h)?, k)? - c(g, k)? * c(h, k)?).norm());
        right = right.max((c(g, &h.add(k)?)? - c(g, h)? * c(g, k)?).norm());
        anti = anti.max((c(g, h)? * c(h, g)? - one).norm());
    }
    let max_deviation = left.max(right).max(anti);
    let tolerance = T::lit(COCYCLE_TOL);
    Ok(CocycleReport {
        samples: triples.len(),
        left_linearity: left,
        right_linearity: right,
        antisymmetry: anti,
        max_deviation,
        tolerance,
        pass: max_deviation <= tolerance,
    })
}

/// Random triples of elements of the group `cf` lives on.
///
/// Angles are uniform in `[0, 2π)` so sums wrap around regularly; reals are
/// uniform in `[-3, 3]`, integers in `[-5, 5]`.
pub fn sample_triples<T: Real, R: Rng + ?Sized>(
    cf: &CommutatorFunction<T>,
    count: usize,
    rng: &mut R,
) -> Vec<Triple<T>> {
    let one = |rng: &mut R| -> GroupElement<T> {
        let a = T::lit(rng.gen_range(0.0..std::f64::consts::TAU));
        let x = T::lit(rng.gen_range(-3.0..3.0));
        match cf {
            CommutatorFunction::PlaneLambda(_) => GroupElement::plane(x, T::lit(rng.gen_range(-3.0..3.0))),
            CommutatorFunction::PeriodicCylinderNu(_) => GroupElement::per_cyl(a, rng.gen_range(-5..=5)),
            CommutatorFunction::CylinderCandidate(_) => GroupElement::cyl(a, x),
        }
    };
    (0..count).map(|_| (one(rng), one(rng), one(rng))).collect()
}

/// `max_η |e^{iλ 2π η} − 1|`: the mismatch of the candidate commutator
/// `e^{iλθη}` between θ and θ + 2π.
pub fn cylinder_obstruction<T: Real>(lambda: T, eta_samples: &[T]) -> T {
    let one = Complex::new(T::one(), T::zero());
    eta_samples
        .iter()
        .map(|&eta| (cis(lambda * T::TAU() * eta) - one).norm())
        .fold(T::zero(), T::max)
}

/// Whether `c_ν((2π,0),(0,1)) = e^{2πiν}` equals 1, i.e. the flux per slice
/// is a whole number of flux quanta.
pub fn flux_quantization_check<T: Real>(nu: T) -> bool {
    (cis(T::TAU() * nu) - Complex::new(T::one(), T::zero())).norm() <= T::lit(FLUX_TOL)
}

/// The integer flux `ν`, if `nu` passes [`flux_quantization_check`].
pub fn quantized_flux<T: Real>(nu: T) -> Option<i64> {
    flux_quantization_check(nu).then(|| nu.round().to_i64()).flatten()
}

/// Element `(g, s)` of the central extension `G ×_c U(1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtensionElement<T> {
    pub g: GroupElement<T>,
    pub s: Complex<T>,
}

impl<T: Real> ExtensionElement<T> {
    pub fn new(g: GroupElement<T>, s: Complex<T>) -> Result<Self> {
        if (s.norm() - T::one()).abs() > T::lit(1e-12) {
            return Err(Error::InvalidInput(format!("|s| = {} is not 1", s.norm())));
        }
        Ok(Self { g, s })
    }

    pub fn central(like: &GroupElement<T>, s: Complex<T>) -> Result<Self> {
        Self::new(like.identity_like(), s)
    }
}

/// `(g,s)·(h,t) = (g + h, e^{iβ(g,h)} s t)`.
pub fn extension_multiply<T: Real>(
    a: &ExtensionElement<T>,
    b: &ExtensionElement<T>,
    cf: &CommutatorFunction<T>,
) -> Result<ExtensionElement<T>> {
    Ok(ExtensionElement {
        g: a.g.add(&b.g)?,
        s: cis(cf.beta(&a.g, &b.g)?) * a.s * b.s,
    })
}

pub fn extension_inverse<T: Real>(
    a: &ExtensionElement<T>,
    cf: &CommutatorFunction<T>,
) -> Result<ExtensionElement<T>> {
    let g_inv = a.g.neg();
    Ok(ExtensionElement {
        g: g_inv,
        s: cis(-cf.beta(&a.g, &g_inv)?) / a.s,
    })
}

/// Group commutator `a b a⁻¹ b⁻¹` in the extension.
pub fn extension_commutator<T: Real>(
    a: &ExtensionElement<T>,
    b: &ExtensionElement<T>,
    cf: &CommutatorFunction<T>,
) -> Result<ExtensionElement<T>> {
    let ab = extension_multiply(a, b, cf)?;
    let ab_ai = extension_multiply(&ab, &extension_inverse(a, cf)?, cf)?;
    extension_multiply(&ab_ai, &extension_inverse(b, cf)?, cf)
}

/// Hilbert space of a truncated irreducible representation of `SO(2) ×_ν ℤ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RepSpace {
    /// Fourier modes `e^{inφ}` of `L²(S¹)`.
    FourierS1,
    /// Sequences in `l²(ℤ)`.
    SequenceZ,
}

/// Representation restricted to indices `n ∈ [−N, N]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TruncatedRep {
    pub space: RepSpace,
    pub nu: i64,
    pub cutoff: i64,
}

pub type CMatrix<T> = DMatrix<Complex<T>>;

fn dagger<T: Real>(u: &CMatrix<T>) -> CMatrix<T> {
    u.transpose().map(|z| z.conj())
}

impl TruncatedRep {
    pub fn new(space: RepSpace, nu: i64, cutoff: i64) -> Self {
        Self { space, nu, cutoff }
    }

    pub fn dim(&self) -> usize {
        (2 * self.cutoff + 1) as usize
    }

    /// Index displacement produced by the ℤ part of `(φ, m)`.
    pub fn shift(&self, m: i64) -> i64 {
        match self.space {
            RepSpace::FourierS1 => self.nu * m,
            RepSpace::SequenceZ => m,
        }
    }

    /// `U(φ, m) = U(0, m) U(φ, 0)`.
    pub fn matrix<T: Real>(&self, element: &GroupElement<T>) -> Result<CMatrix<T>> {
        let GroupElement::PerCylElem { phi, m } = *element else {
            return Err(Error::KindMismatch(
                "truncated representations act on periodic-cylinder elements".into(),
            ));
        };
        let shift = self.shift(m);
        if shift.abs() > self.cutoff {
            return Err(Error::WindowOverflow {
                shift,
                cutoff: self.cutoff,
            });
        }
        let n_cut = self.cutoff;
        let dim = self.dim();
        let nu = T::from_int(self.nu);
        let zero = Complex::new(T::zero(), T::zero());
        let mut out = DMatrix::from_element(dim, dim, zero);
        for n in -n_cut..=n_cut {
            // column n: e_n ↦ phase · e_{target}
            let (phase, target) = match self.space {
                // (Tf)_n = e^{inφ} f_n, then (Mf)_{n'} = f_{n' − νm}
                RepSpace::FourierS1 => (cis(T::from_int(n) * phi), n + shift),
                // (Df)(n) = e^{−iνnφ} f(n), then (Sf)(n) = f(n + m)
                RepSpace::SequenceZ => (cis(-nu * T::from_int(n) * phi), n - shift),
            };
            if (-n_cut..=n_cut).contains(&target) {
                out[((target + n_cut) as usize, (n + n_cut) as usize)] = phase;
            }
        }
        Ok(out)
    }

    /// Indices whose images stay inside the window after moves totalling `margin`.
    pub fn interior(&self, margin: i64) -> std::ops::Range<usize> {
        let m = margin.abs().min(self.cutoff + 1) as usize;
        m..self.dim().saturating_sub(m)
    }

    /// `max |(U†U − I)_{ij}|` over the interior block.
    pub fn unitarity_defect<T: Real>(&self, element: &GroupElement<T>) -> Result<T> {
        let u = self.matrix(element)?;
        let margin = match element {
            GroupElement::PerCylElem { m, .. } => self.shift(*m),
            _ => 0,
        };
        let prod = dagger(&u) * &u;
        Ok(block_deviation(&prod, self.interior(margin), Complex::new(T::one(), T::zero())))
    }

    /// `U(g) U(h) U(g)† U(h)†` and the interior range where it is exact.
    pub fn commutator<T: Real>(
        &self,
        g: &GroupElement<T>,
        h: &GroupElement<T>,
    ) -> Result<(CMatrix<T>, std::ops::Range<usize>)> {
        let (ug, uh) = (self.matrix(g)?, self.matrix(h)?);
        let prod = &ug * &uh * dagger(&ug) * dagger(&uh);
        let shift = |e: &GroupElement<T>| match e {
            GroupElement::PerCylElem { m, .. } => self.shift(*m).abs(),
            _ => 0,
        };
        Ok((prod, self.interior(shift(g) + shift(h))))
    }

    /// Largest entrywise deviation of the interior commutator block from
    /// `c_ν(g, h) · I`.
    pub fn commutator_deviation<T: Real>(
        &self,
        g: &GroupElement<T>,
        h: &GroupElement<T>,
    ) -> Result<T> {
        let (prod, range) = self.commutator(g, h)?;
        let expected = eval_commutator(&CommutatorFunction::PeriodicCylinderNu(self.nu), g, h)?;
        Ok(block_deviation(&prod, range, expected))
    }
}

fn block_deviation<T: Real>(m: &CMatrix<T>, range: std::ops::Range<usize>, diag: Complex<T>) -> T {
    let mut worst = T::zero();
    for i in range.clone() {
        for j in range.clone() {
            let target = if i == j { diag } else { Complex::new(T::zero(), T::zero()) };
            worst = worst.max((m[(i, j)] - target).norm());
        }
    }
    worst
}

/// Truncated `L²(S¹)` representation matrix of `(φ, m)`.
pub fn rep_s1<T: Real>(nu: i64, element: &GroupElement<T>, cutoff: i64) -> Result<CMatrix<T>> {
    TruncatedRep::new(RepSpace::FourierS1, nu, cutoff).matrix(element)
}

/// Truncated `l²(ℤ)` representation matrix of `(φ, m)`.
pub fn rep_z<T: Real>(nu: i64, element: &GroupElement<T>, cutoff: i64) -> Result<CMatrix<T>> {
    TruncatedRep::new(RepSpace::SequenceZ, nu, cutoff).matrix(element)
}

/// `(W_ν(φ, m)ψ)(θ, y) = e^{i(νmθ − qφ)} ψ(θ + φ, y + m)`.
///
/// Mode `n` moves to `n + νm` with profile `e^{inφ} f_n(y + m)`.
pub fn wavefunction_rep_w<T: Real>(
    nu: i64,
    phi: T,
    m: i64,
    psi: &WaveFunction<T>,
) -> Result<WaveFunction<T>> {
    let grid = *psi.grid();
    let mut out = WaveFunction::zero(psi.q(), grid);
    for (n, f) in psi.modes() {
        let shifted = grid.shift_profile(f, T::from_int(m))?;
        let phase = cis(T::from_int(n) * phi);
        out.set_mode(n + nu * m, shifted.into_iter().map(|z| z * phase).collect())?;
    }
    Ok(out)
}

/// `(V_{−ν}(ξ, η)ψ)(θ, y) = e^{iνξy} ψ(θ + ξ, y + η)`.
pub fn heisenberg_rep_v<T: Real>(
    nu: i64,
    xi: T,
    eta: T,
    psi: &WaveFunction<T>,
) -> Result<WaveFunction<T>> {
    let grid = *psi.grid();
    let nu = T::from_int(nu);
    let q = psi.q();
    let mut out = WaveFunction::zero(q, grid);
    for (n, f) in psi.modes() {
        let shifted = grid.shift_profile(f, eta)?;
        let angular = cis((T::from_int(n) + q) * xi);
        let profile = shifted
            .into_iter()
            .zip(grid.points())
            .map(|(z, y)| z * angular * cis(nu * xi * y))
            .collect();
        out.set_mode(n, profile)?;
    }
    Ok(out)
}

/// A plane wavefunction given pointwise.
pub type PlaneFn<'a, T> = Box<dyn Fn(T, T) -> Complex<T> + 'a>;

/// A pair of plane translations `(x, x')`.
pub type PlanePair<T> = ((T, T), (T, T));

/// `(W_λ(x)ψ)(w) = e^{i(λ/2) x∧w} ψ(w + x)`, composed symbolically.
pub fn plane_translate<'a, T: Real>(lambda: T, x: (T, T), psi: PlaneFn<'a, T>) -> PlaneFn<'a, T> {
    Box::new(move |w1, w2| {
        let wedge = x.0 * w2 - x.1 * w1;
        cis(lambda * T::lit(0.5) * wedge) * psi(w1 + x.0, w2 + x.1)
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlanePairResult<T> {
    pub x: (T, T),
    pub x_prime: (T, T),
    pub expected: Complex<T>,
    pub measured: Complex<T>,
    pub deviation: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlaneRepReport<T> {
    pub lambda: T,
    pub pairs: Vec<PlanePairResult<T>>,
    pub max_deviation: T,
    pub tolerance: T,
    pub pass: bool,
}

/// Square sampling grid `[-half_width, half_width]²` for plane checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlaneSampling<T> {
    pub half_width: T,
    pub points_per_axis: usize,
}

/// Checks `W(x) W(x') W(x)⁻¹ W(x')⁻¹ ψ = e^{−iλ x∧x'} ψ` on sampled points.
///
/// `W(x)⁻¹ = W(−x)`. The measured phase is `⟨ψ, Pψ⟩/⟨ψ, ψ⟩` and the
/// deviation is `‖Pψ − e^{−iλx∧x'}ψ‖ / ‖ψ‖`, both by Riemann sums.
pub fn plane_rep_check<T: Real>(
    lambda: T,
    pairs: &[PlanePair<T>],
    psi: &(dyn Fn(T, T) -> Complex<T> + Sync),
    sampling: PlaneSampling<T>,
) -> PlaneRepReport<T> {
    let n = sampling.points_per_axis.max(2);
    let h = T::lit(2.0) * sampling.half_width / T::from_usize(n - 1).unwrap();
    let coord = |i: usize| -sampling.half_width + h * T::from_usize(i).unwrap();
    let tol = T::lit(1e-6);
    let mut results = Vec::with_capacity(pairs.len());
    for &(x, xp) in pairs {
        let neg = |v: (T, T)| (-v.0, -v.1);
        let base: PlaneFn<T> = Box::new(psi);
        // P = W(x) W(x') W(−x) W(−x'); the innermost operator acts first.
        let p = plane_translate(
            lambda,
            x,
            plane_translate(lambda, xp, plane_translate(lambda, neg(x), plane_translate(lambda, neg(xp), base))),
        );
        let expected = cis(-lambda * (x.0 * xp.1 - x.1 * xp.0));
        let (mut norm2, mut overlap, mut diff2) =
            (T::zero(), Complex::new(T::zero(), T::zero()), T::zero());
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (coord(i), coord(j));
                let v = psi(a, b);
                let pv = p(a, b);
                norm2 += v.norm_sqr();
                overlap += v.conj() * pv;
                diff2 += (pv - expected * v).norm_sqr();
            }
        }
        let (measured, deviation) = if norm2 > T::zero() {
            (overlap / norm2, (diff2 / norm2).sqrt())
        } else {
            (Complex::new(T::zero(), T::zero()), T::zero())
        };
        results.push(PlanePairResult {
            x,
            x_prime: xp,
            expected,
            measured,
            deviation,
        });
    }
    let max_deviation = results.iter().map(|r| r.deviation).fold(T::zero(), T::max);
    PlaneRepReport {
        lambda,
        pairs: results,
        max_deviation,
        tolerance: tol,
        pass: max_deviation <= tol,
    }
}

/// `ν` as an integer, or `KindMismatch` when it is not one.
pub fn integral_nu<T: Real>(nu: T) -> Result<i64> {
    if dist_to_integer(nu) <= T::lit(1e-12) {
        Ok(nu.round().to_i64().unwrap())
    } else {
        Err(Error::KindMismatch(format!("ν = {nu} is not an integer")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use std::f64::consts::{PI, TAU};

    fn rng() -> rand_chacha::ChaCha8Rng {
        rand_chacha::ChaCha8Rng::seed_from_u64(7)
    }

    #[test]
    fn commutator_examples() {
        let c = eval_commutator(
            &CommutatorFunction::PlaneLambda(PI),
            &GroupElement::plane(1.0, 0.0),
            &GroupElement::plane(0.0, 1.0),
        )
        .unwrap();
        assert!((c - Complex::new(-1.0, 0.0)).norm() < 1e-15);

        let c = eval_commutator(
            &CommutatorFunction::PeriodicCylinderNu(1),
            &GroupElement::per_cyl(TAU, 0),
            &GroupElement::per_cyl(0.0, 1),
        )
        .unwrap();
        assert!((c - Complex::new(1.0, 0.0)).norm() < 1e-15);

        for (cf, h) in [
            (CommutatorFunction::PlaneLambda(2.3), GroupElement::plane(0.4, -1.0)),
            (CommutatorFunction::PeriodicCylinderNu(3), GroupElement::per_cyl(1.0, 4)),
            (CommutatorFunction::CylinderCandidate(0.7), GroupElement::cyl(2.0, 0.3)),
        ] {
            let c = eval_commutator(&cf, &h.identity_like(), &h).unwrap();
            assert_eq!(c, Complex::new(1.0, 0.0));
        }
    }

    #[test]
    fn kind_mismatch_is_reported() {
        let err = eval_commutator(
            &CommutatorFunction::PlaneLambda(1.0),
            &GroupElement::per_cyl(0.0, 1),
            &GroupElement::plane(0.0, 1.0),
        )
        .unwrap_err();
        assert!(matches!(err, Error::KindMismatch(_)));
    }

    #[test]
    fn cocycle_laws_hold_for_consistent_kinds() {
        let mut r = rng();
        for cf in [
            CommutatorFunction::PlaneLambda(1.7),
            CommutatorFunction::PlaneLambda(-0.2),
            CommutatorFunction::PeriodicCylinderNu(2),
        ] {
            let triples = sample_triples(&cf, 200, &mut r);
            let rep = check_cocycle_laws(&cf, &triples).unwrap();
            assert!(rep.pass, "{cf:?}: {rep:?}");
        }
    }

    #[test]
    fn candidate_fails_on_wraparound() {
        let cf = CommutatorFunction::CylinderCandidate(1.0);
        let mut triples = sample_triples(&cf, 100, &mut rng());
        triples.push((
            GroupElement::cyl(PI, 0.0),
            GroupElement::cyl(PI, 0.0),
            GroupElement::cyl(0.0, 0.5),
        ));
        let rep = check_cocycle_laws(&cf, &triples).unwrap();
        assert!(!rep.pass);
        assert!((rep.max_deviation - 2.0).abs() < 1e-12, "{}", rep.max_deviation);
    }

    #[test]
    fn obstruction_examples() {
        assert_eq!(cylinder_obstruction(0.0, &[0.5, 0.3]), 0.0);
        assert!((cylinder_obstruction::<f64>(1.0, &[0.1, 0.5]) - 2.0).abs() < 1e-15);
        assert!(cylinder_obstruction(1.0, &[1.0, -2.0, 5.0]) < 1e-12);
    }

    #[test]
    fn flux_quantization_examples() {
        assert!(flux_quantization_check(1.0));
        assert!(flux_quantization_check(0.0));
        assert!(!flux_quantization_check(0.5));
        assert_eq!(quantized_flux(-3.0), Some(-3));
        assert_eq!(quantized_flux(2.5), None);
    }

    #[test]
    fn extension_group_law() {
        let cf = CommutatorFunction::PeriodicCylinderNu(2);
        let a = ExtensionElement::new(GroupElement::per_cyl(1.2, 3), cis(0.4)).unwrap();
        let e = ExtensionElement::central(&a.g, Complex::new(1.0, 0.0)).unwrap();
        let ae = extension_multiply(&a, &e, &cf).unwrap();
        assert_eq!(ae.g, a.g);
        assert!((ae.s - a.s).norm() < 1e-15);

        let b = ExtensionElement::new(GroupElement::per_cyl(4.0, -1), cis(-1.0)).unwrap();
        let comm = extension_commutator(&a, &b, &cf).unwrap();
        assert_eq!(comm.g, GroupElement::per_cyl(0.0, 0));
        let expected = eval_commutator(&cf, &a.g, &b.g).unwrap();
        assert!((comm.s - expected).norm() < 1e-12);
    }

    #[test]
    fn truncated_reps_examples() {
        let full = rep_s1::<f64>(1, &GroupElement::per_cyl(TAU, 0), 8).unwrap();
        let id = CMatrix::<f64>::identity(17, 17);
        assert!((full - &id).norm() < 1e-12);
        let zid = rep_z::<f64>(3, &GroupElement::per_cyl(0.0, 0), 8).unwrap();
        assert_eq!(zid, id);

        let d = rep_z::<f64>(1, &GroupElement::per_cyl(PI, 0), 4).unwrap();
        for n in -4i64..=4 {
            let i = (n + 4) as usize;
            let sign = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            assert!((d[(i, i)] - Complex::new(sign, 0.0)).norm() < 1e-12);
        }

        let rep = TruncatedRep::new(RepSpace::FourierS1, 2, 8);
        let u = rep.matrix(&GroupElement::per_cyl(0.0, 1)).unwrap();
        // e_n ↦ e_{n+2}
        assert_eq!(u[(2, 0)], Complex::new(1.0, 0.0));
        assert_eq!(u.column(15).iter().filter(|z| z.norm() > 0.0).count(), 0);
        assert_eq!(rep.interior(2), 2..15);
        assert!(rep.unitarity_defect(&GroupElement::per_cyl(0.3, 1)).unwrap() < 1e-12);
    }

    #[test]
    fn window_overflow() {
        assert!(matches!(
            rep_s1::<f64>(3, &GroupElement::per_cyl(0.0, 2), 5),
            Err(Error::WindowOverflow { shift: 6, cutoff: 5 })
        ));
        assert!(rep_z::<f64>(3, &GroupElement::per_cyl(0.0, 2), 5).is_ok());
    }

    #[test]
    fn interior_commutators_match_phase() {
        for space in [RepSpace::FourierS1, RepSpace::SequenceZ] {
            let rep = TruncatedRep::new(space, 2, DEFAULT_CUTOFF);
            let g = GroupElement::per_cyl(0.9, 0);
            let h = GroupElement::per_cyl(0.0, 3);
            assert!(rep.commutator_deviation(&g, &h).unwrap() < 1e-12);
        }
    }

    #[test]
    fn plane_commutator_phase() {
        let psi = |a: f64, b: f64| Complex::new((-(a * a + b * b) / 2.0).exp(), 0.0);
        let s = PlaneSampling { half_width: 8.0, points_per_axis: 81 };
        let rep = plane_rep_check(1.0, &[((1.0, 0.0), (0.0, 1.0)), ((0.5, 0.5), (1.0, 1.0))], &psi, s);
        assert!(rep.pass, "{rep:?}");
        assert!((rep.pairs[0].expected - cis(-1.0)).norm() < 1e-15);
        assert!((rep.pairs[0].measured - cis(-1.0)).norm() < 1e-12);
        assert!((rep.pairs[1].expected - Complex::new(1.0, 0.0)).norm() < 1e-15);

        let free = plane_rep_check(0.0, &[((0.3, 1.0), (-2.0, 0.1))], &psi, s);
        assert!((free.pairs[0].measured - Complex::new(1.0, 0.0)).norm() < 1e-12);
    }
}
