use std::f64::consts::{PI, TAU};

use anyhow::{bail, Context, Result};
use landau_cylinder::grouprep::{sample_triples, RepSpace, TruncatedRep};
use landau_cylinder::spectral::{eigensolve, energy_expectation, mode_grid};
use landau_cylinder::symmetry::energy_invariance_check;
use landau_cylinder::*;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::report::{Check, Tolerances};

pub struct Outcome {
    pub results: serde_json::Value,
    pub checks: Vec<Check>,
}

/// A gauge potential on disk: `ζ` (defaults to `BRρ`) and the terms of Λ.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialSpec {
    pub zeta: Option<f64>,
    #[serde(default)]
    pub lambda: Vec<LambdaTerm<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum LoopInput {
    One(LoopSpec),
    Many(Vec<LoopSpec>),
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &std::path::Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("malformed JSON in {}", path.display()))
}

pub fn load_potential(cfg: &Config, path: Option<&std::path::Path>) -> Result<Potential> {
    let spec = match path {
        Some(p) => read_json::<PotentialSpec>(p)?,
        None => PotentialSpec::default(),
    };
    Ok(make_potential(cfg, spec.zeta.unwrap_or(cfg.zeta()), spec.lambda)?)
}

pub fn load_loops(path: Option<&std::path::Path>) -> Result<Vec<LoopF64>> {
    let Some(path) = path else {
        return Ok(default_loop_suite());
    };
    let specs = match read_json::<LoopInput>(path)? {
        LoopInput::One(s) => vec![s],
        LoopInput::Many(v) => v,
    };
    if specs.is_empty() {
        bail!("{} lists no loops", path.display());
    }
    specs.iter().map(|s| Ok(Loop::from_spec(s)?)).collect()
}

#[derive(Serialize)]
struct LevelRow {
    level: usize,
    energy: f64,
    analytic: f64,
    degeneracy: usize,
    spread: f64,
}

pub fn spectrum_cmd(cfg: &Config, tol: &Tolerances, window: (i64, i64), levels: usize, points: usize) -> Result<(Outcome, Vec<impl Serialize>)> {
    let grid = default_grid(cfg, window, points)?;
    let s = spectrum_on_grid(cfg, window, levels, &grid)?;
    let size = s.window_size();
    let mut checks = Vec::new();
    let rows: Vec<LevelRow> = s
        .levels
        .iter()
        .map(|l| LevelRow {
            level: l.index,
            energy: l.energy,
            analytic: l.analytic,
            degeneracy: l.degeneracy,
            spread: l.spread,
        })
        .collect();
    for l in &s.levels {
        checks.push(Check::at_most(
            format!("level {} relative error", l.index),
            (l.energy - l.analytic).abs() / l.analytic,
            tol.get("spectrum_rel"),
        ));
        checks.push(Check::flag(format!("level {} degeneracy equals window size {size}", l.index), l.degeneracy == size));
    }
    checks.push(Check::flag(format!("{levels} distinct levels"), s.levels.len() == levels));
    let results = json!({
        "window": window,
        "grid": { "y_min": grid.y_min(), "y_max": grid.y_max(), "points": grid.len() },
        "levels": &rows,
        "per_mode": s.per_mode,
        "level_match_tolerance": s.match_tolerance,
    });
    Ok((Outcome { results, checks }, rows))
}

pub fn holonomy_cmd(cfg: &Config, tol: &Tolerances, potential: &Potential, loops: &[LoopF64], samples: usize) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    for (i, lp) in loops.iter().enumerate() {
        let h = holonomy(potential, lp, samples)?;
        let exact = closed_form_holonomy(potential, lp);
        let dev = (h - exact).norm();
        checks.push(Check::at_most(format!("loop {i} quadrature vs closed form"), dev, tol.get("holonomy")));
        rows.push(json!({
            "loop": i,
            "winding": lp.winding(),
            "holonomy": [h.re, h.im],
            "phase": h.arg(),
            "closed_form": [exact.re, exact.im],
            "flux": loop_flux(cfg, lp),
        }));
    }
    let results = json!({
        "zeta": potential.zeta(),
        "lambda_terms": potential.lambda_terms().len(),
        "samples_per_segment": samples,
        "class": classify(potential),
        "loops": rows,
    });
    Ok(Outcome { results, checks })
}

pub fn classify_cmd(potentials: &[Potential]) -> Result<Outcome> {
    let classes: Vec<GaugeClass<f64>> = potentials.iter().map(classify).collect();
    let mut checks = Vec::new();
    let mut results = json!({ "classes": classes.iter().map(|c| json!({
        "zeta_mod": c.zeta_mod,
        "fraction_of_quantum": c.fraction(),
        "quantum": c.quantum,
    })).collect::<Vec<_>>() });
    if potentials.len() == 2 {
        let report = holonomically_equivalent(&potentials[0], &potentials[1], &default_loop_suite())?;
        let same_class = classes[0].same_as(&classes[1], 1e-9);
        checks.push(Check::flag("holonomy verdict matches class labels", report.equivalent == same_class));
        results["equivalent"] = json!(report.equivalent);
        results["same_class"] = json!(same_class);
        results["holonomy_comparison"] = serde_json::to_value(&report)?;
    }
    Ok(Outcome { results, checks })
}

/// Random smooth state: complex Gaussians times linear factors on each mode.
fn random_state(rng: &mut ChaCha8Rng, cfg: &Config, grid: Grid<f64>, window: (i64, i64)) -> Result<State> {
    let sigma = cfg.magnetic_length();
    let mut psi = State::zero(cfg.q(), grid);
    for n in window.0..=window.1 {
        let c = cfg.mode_center(n) + rng.gen_range(-0.3..0.3) * sigma;
        let a = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let b = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
        let profile = grid
            .points()
            .map(|y| {
                let u = (y - c) / sigma;
                (a + b * u) * (-0.5 * u * u).exp()
            })
            .collect();
        psi.set_mode(n, profile)?;
    }
    Ok(psi.normalize()?)
}

pub fn symmetry_cmd(
    cfg: &Config,
    tol: &Tolerances,
    seed: u64,
    phi: f64,
    k: i64,
    shift_length: Option<f64>,
    window: (i64, i64),
) -> Result<Outcome> {
    let reach = k.abs();
    let grid = default_grid(cfg, (window.0 - reach, window.1 + reach), 2001)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let psi = random_state(&mut rng, cfg, grid, window)?;
    let proj = projective_phase_check(cfg, phi, k, &psi)?;
    let ground: Vec<State> = (window.0..=window.1)
        .map(|n| analytic_ground_state(cfg, n, &grid))
        .collect::<landau_cylinder::Result<_>>()?;
    let rot = hamiltonian_commutation_check(cfg, SymmetryOp::Rotation(phi), &ground)?;
    let shift = hamiltonian_commutation_check(cfg, SymmetryOp::AxialShift(k), &ground)?;
    let energy_before = energy_expectation(cfg, &psi)?;
    let energy_shift = energy_invariance_check(cfg, SymmetryOp::AxialShift(k), std::slice::from_ref(&psi))?;
    let energy_rot = energy_invariance_check(cfg, SymmetryOp::Rotation(phi), std::slice::from_ref(&psi))?;

    let checks = vec![
        Check::at_most("projective phase deviation", proj.deviation, tol.get("projective")),
        Check::at_most("rotation commutes with H", rot, tol.get("commutation")),
        Check::at_most("axial shift commutes with H", shift, tol.get("commutation")),
        Check::at_most("energy change under rotation", energy_rot, tol.get("energy")),
        Check::at_most("energy change under axial shift", energy_shift, tol.get("energy")),
    ];
    let mut results = json!({
        "phi": phi,
        "k": k,
        "theta_constant": symmetry::theta_constant(cfg),
        "axial_constant": symmetry::axial_constant(cfg),
        "expected_phase": [proj.expected_phase.re, proj.expected_phase.im],
        "measured_phase": [proj.measured_phase.re, proj.measured_phase.im],
        "state_energy": energy_before,
        "window": window,
    });
    if let Some(a) = shift_length {
        results["admissibility"] = admissibility(cfg, a);
    }
    Ok(Outcome { results, checks })
}

/// Verdict on an axial shift of length `a`, with the nearest lengths `k/μ`.
fn admissibility(cfg: &Config, a: f64) -> serde_json::Value {
    let mu = cfg.mu();
    let a_mu = a * mu;
    match SymmetryOp::axial_shift_by_length(cfg, a) {
        Ok(SymmetryOp::AxialShift(k)) => json!({
            "length": a, "a_mu": a_mu, "verdict": "admissible", "k": k,
        }),
        Ok(other) => json!({ "length": a, "verdict": format!("{other:?}") }),
        Err(err) => {
            let (lo, hi) = (a_mu.floor(), a_mu.ceil());
            let nearest: Vec<f64> = if (a_mu - lo - 0.5).abs() < 1e-9 {
                vec![lo / mu, hi / mu]
            } else {
                vec![a_mu.round() / mu]
            };
            json!({
                "length": a,
                "a_mu": a_mu,
                "verdict": "non_admissible",
                "error": err.to_string(),
                "nearest_admissible": nearest,
                "multiplier_mismatch": symmetry::axial_multiplier_mismatch(cfg, a, 0.0),
            })
        }
    }
}

pub fn rep_check_cmd(tol: &Tolerances, seed: u64, nu: f64, cutoff: i64, lambda: f64) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = vec![Check::flag(format!("flux quantization at ν = {nu}"), flux_quantization_check(nu))];
    let etas = [0.5, 1.0 / 3.0, 2f64.sqrt() / 2.0];
    let obstruction = cylinder_obstruction(lambda, &etas);
    if lambda == 0.0 {
        checks.push(Check::at_most("obstruction vanishes at λ = 0", obstruction, tol.get("obstruction")));
    } else if lambda.abs() >= 1e-3 {
        checks.push(Check::at_least(format!("obstruction present at λ = {lambda}"), obstruction, 1e-3));
    }

    let plane = CommutatorFunction::PlaneLambda(lambda);
    let plane_report = check_cocycle_laws(&plane, &sample_triples(&plane, 200, &mut rng))?;
    checks.push(Check::at_most("plane cocycle laws", plane_report.max_deviation, tol.get("cocycle")));

    let mut results = json!({
        "nu": nu,
        "lambda": lambda,
        "eta_samples": etas,
        "obstruction": obstruction,
        "plane_cocycle": plane_report,
    });

    match landau_cylinder::grouprep::quantized_flux(nu) {
        Some(nu) => {
            let cf = CommutatorFunction::PeriodicCylinderNu(nu);
            let report = check_cocycle_laws(&cf, &sample_triples(&cf, 200, &mut rng))?;
            checks.push(Check::at_most("cylinder cocycle laws", report.max_deviation, tol.get("cocycle")));
            let mut rep_rows = Vec::new();
            for space in [RepSpace::FourierS1, RepSpace::SequenceZ] {
                let rep = TruncatedRep::new(space, nu, cutoff);
                let (mut comm, mut unit): (f64, f64) = (0.0, 0.0);
                for i in 0..5 {
                    let theta = TAU * i as f64 / 5.0 + 0.1;
                    for m in -2i64..=2 {
                        if (nu * m).abs() * 2 > cutoff {
                            continue;
                        }
                        let g = GroupElement::per_cyl(theta, 0);
                        let h = GroupElement::per_cyl(0.0, m);
                        comm = comm.max(rep.commutator_deviation(&g, &h)?);
                        unit = unit.max(rep.unitarity_defect(&GroupElement::per_cyl(theta, m))?);
                    }
                }
                checks.push(Check::at_most(format!("{space:?} commutator phases"), comm, tol.get("rep")));
                checks.push(Check::at_most(format!("{space:?} interior unitarity"), unit, tol.get("rep")));
                rep_rows.push(json!({ "space": space, "commutator_deviation": comm, "unitarity_defect": unit }));
            }
            results["cylinder_cocycle"] = serde_json::to_value(report)?;
            results["truncated_reps"] = json!({ "cutoff": cutoff, "spaces": rep_rows });
        }
        None => {
            results["truncated_reps"] = json!("skipped: ν is not an integer");
        }
    }
    Ok(Outcome { results, checks })
}

#[derive(Serialize)]
struct ProfileRow {
    y: f64,
    analytic: f64,
    numeric: f64,
}

pub fn groundstate_cmd(cfg: &Config, tol: &Tolerances, n: i64, points: usize) -> Result<(Outcome, Vec<impl Serialize>)> {
    let grid = mode_grid(cfg, n, points)?;
    let analytic = analytic_ground_state(cfg, n, &grid)?;
    let h = mode_hamiltonian(cfg, n, &grid)?;
    let pairs = eigensolve(&h, 1)?;
    let numeric = pairs.state(cfg, &h, 0);
    let overlap = inner_product(&analytic, &numeric)?.norm();
    let (fa, fn_) = (analytic.mode(n).unwrap(), numeric.mode(n).unwrap());
    let ys: Vec<f64> = grid.points().collect();
    let peak = (0..fn_.len()).max_by(|&i, &j| fn_[i].norm().total_cmp(&fn_[j].norm())).unwrap();
    let center = cfg.mode_center(n);
    let rows: Vec<ProfileRow> = ys
        .iter()
        .zip(fa.iter().zip(fn_))
        .map(|(&y, (a, b))| ProfileRow { y, analytic: a.re, numeric: b.re })
        .collect();
    let checks = vec![
        Check::at_least("numeric/analytic overlap", overlap, 1.0 - tol.get("overlap")),
        Check::at_most("peak offset from center in grid steps", (ys[peak] - center).abs() / grid.spacing(), 1.0),
        Check::at_most(
            "ground energy relative error",
            (pairs.values[0] - cfg.landau_energy(0)).abs() / cfg.landau_energy(0),
            tol.get("spectrum_rel"),
        ),
    ];
    let results = json!({
        "n": n,
        "center": center,
        "peak_y": ys[peak],
        "grid_spacing": grid.spacing(),
        "overlap": overlap,
        "energy": pairs.values[0],
        "analytic_energy": cfg.landau_energy(0),
        "profile_norm": (cfg.mu() / (PI * cfg.r())).powf(0.25),
    });
    Ok((Outcome { results, checks }, rows))
}

pub fn step_size_cmd(b_gauss: f64, r_cm: f64) -> Result<Outcome> {
    let step = physical_step_size(PhysicalInput { b_gauss, r_cm })?;
    Ok(Outcome {
        results: json!({ "b_gauss": b_gauss, "r_cm": r_cm, "step_cm": step }),
        checks: vec![Check::flag("step is finite and positive", step.is_finite() && step > 0.0)],
    })
}
