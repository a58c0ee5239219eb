//! The named identity/property suite behind `torusdet validate`.
//!
//! Each check evaluates a residual against a documented tolerance.
//! Adjudicated checks pass or fail; measurement rows (status `report`)
//! record quantities the library deliberately does not assert, such as the
//! gap between the published series and the subtraction oracle.

use crate::error::Error;
use crate::heat::{heat_remainder, heat_trace, poisson_lhs_rhs};
use crate::special::check_k_integral_identity;
use crate::spectrum::{
    eigenvalue, gram_matrix, make_operator, quadratic_form, quadratic_form_expanded, ModeIndex,
    OperatorSpec,
};
use crate::zeta::{
    compare_routes, determinant, psi_closed_form, psi_paper, zeta1_prime0, zeta_direct,
    zeta_mellin, zeta_prime0_finite_difference, zeta_prime0_oracle, zeta_subtraction, DetRoute,
    EvalOptions,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Measurement row; never fails the run.
    Report,
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub residual: f64,
    /// Tolerance the residual was adjudicated against; absent for reports.
    pub tolerance: Option<f64>,
    pub status: CheckStatus,
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct SuiteOutcome {
    pub checks: Vec<CheckResult>,
    /// Budget-style failures that prevented a check from completing.
    pub budget_failures: Vec<String>,
}

impl SuiteOutcome {
    pub fn all_adjudicated_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }
}

fn adjudicated(name: &str, residual: f64, tol: f64) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        residual,
        tolerance: Some(tol),
        status: if residual.is_finite() && residual <= tol {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
    }
}

fn record_budget(buf: &mut Vec<String>, label: &str, e: &Error) {
    if e.is_budget() {
        buf.push(format!("{label}: {e}"));
    } else {
        buf.push(format!("{label} (unexpected): {e}"));
    }
}

fn report(name: &str, residual: f64) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        residual,
        tolerance: None,
        status: CheckStatus::Report,
    }
}

fn random_spec(rng: &mut ChaCha8Rng) -> OperatorSpec {
    let tau1 = rng.gen_range(-0.8..0.8);
    let tau2 = rng.gen_range(0.6..2.5);
    let v0 = rng.gen_range(0.3..6.0);
    make_operator(tau1, tau2, v0).expect("ranges keep the spec valid")
}

/// Run the whole suite. `seed` drives the randomized specs; `tol_scale`
/// optionally tightens every tolerance (values < 1 may push tolerances
/// beyond what the evaluation budgets can reach, which surfaces as budget
/// failures rather than silent loosening).
pub fn run_suite(seed: u64, tol_override: Option<f64>) -> SuiteOutcome {
    let mut checks: Vec<CheckResult> = Vec::new();
    let mut budget_failures: Vec<String> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opts = match tol_override {
        Some(t) => EvalOptions::with_tol(t),
        None => EvalOptions::default(),
    };
    let series_tol = opts.series_tol;
    let quad_tol = opts.quad_tol;



    // --- closed forms and identities -------------------------------------

    {
        let mut worst: f64 = 0.0;
        for v0 in [0.5, 1.0, std::f64::consts::E, 10.0] {
            let s = make_operator(0.0, 1.0, v0).unwrap();
            worst = worst.max((zeta1_prime0(&s) + v0.ln()).abs());
        }
        checks.push(adjudicated("zeta1_prime0_closed_form", worst, 1e-15));
    }

    {
        let mut worst: f64 = 0.0;
        for _ in 0..100 {
            let s = random_spec(&mut rng);
            let rel = (gram_matrix(&s).det() - s.tau2 * s.tau2).abs() / (s.tau2 * s.tau2);
            worst = worst.max(rel);
        }
        checks.push(adjudicated("gram_determinant_tau2_squared", worst, 1e-14));
    }

    {
        let mut worst: f64 = 0.0;
        for _ in 0..1000 {
            let s = random_spec(&mut rng);
            let mode = ModeIndex::new(rng.gen_range(-50..50), rng.gen_range(-50..50));
            let a = quadratic_form(&s, mode);
            let b = quadratic_form_expanded(&s, mode);
            worst = worst.max((a - b).abs() / (1.0 + a.abs()));
        }
        checks.push(adjudicated("quadratic_form_two_representations", worst, 1e-14));
    }

    {
        let mut worst: f64 = 0.0;
        for t in [0.2, 1.0, 5.0] {
            for v in [0.0, 0.25, 0.5, 0.9] {
                let (lhs, rhs) = poisson_lhs_rhs(t, v, 32).unwrap();
                worst = worst.max((lhs - rhs).abs());
            }
        }
        checks.push(adjudicated("resummation_identity_1d", worst, 1e-11));
    }

    {
        let mut worst: f64 = 0.0;
        let grid = [0.25, 0.5, 1.0, 2.0, 4.0];
        'outer: for nu in [-0.5, 0.5, 1.0] {
            for &alpha in &grid {
                for &beta in &grid {
                    match check_k_integral_identity(nu, alpha, beta) {
                        Ok(r) => worst = worst.max(r),
                        Err(e) => {
                            record_budget(&mut budget_failures, "bessel_integral_identity", &e);
                            break 'outer;
                        }
                    }
                }
            }
        }
        checks.push(adjudicated("bessel_integral_identity_grid", worst, 1e-8));
    }

    // --- heat kernel ------------------------------------------------------

    {
        let mut worst: f64 = 0.0;
        for (t1, t2, v0, t) in [
            (0.0, 1.0, 1.0, 0.25),
            (0.5, 1.2, 0.8, 0.3),
            (0.3, 2.0, 1.0, 0.1),
        ] {
            let s = make_operator(t1, t2, v0).unwrap();
            // Direct window vs resummed dual form, both explicit.
            let direct = {
                let g = gram_matrix(&s);
                let b = 4.0 * PI * PI * t / t2;
                let mut acc = 0.0;
                for m in -24i64..=24 {
                    for n in -24i64..=24 {
                        acc += (-b * g.form(n as f64, m as f64)).exp();
                    }
                }
                acc * (-v0 * t).exp()
            };
            let dual = {
                let gi = gram_matrix(&s).inverse();
                let b = t2 / (4.0 * t);
                let mut acc = 0.0;
                for m in -24i64..=24 {
                    for n in -24i64..=24 {
                        acc += (-b * gi.form(n as f64, m as f64)).exp();
                    }
                }
                acc * (-v0 * t).exp() / (4.0 * PI * t)
            };
            worst = worst.max((direct - dual).abs());
        }
        checks.push(adjudicated("resummation_identity_2d", worst, 1e-10));
    }

    {
        let s = make_operator(0.3, 1.4, 0.8).unwrap();
        let mut prev = f64::INFINITY;
        let mut ok = true;
        for t in [0.05, 0.1, 0.3, 0.7, 1.5, 3.0] {
            let v = heat_trace(&s, t, 1e-12).unwrap().value;
            ok &= v < prev;
            prev = v;
        }
        checks.push(adjudicated(
            "heat_trace_monotone_decreasing",
            if ok { 0.0 } else { 1.0 },
            0.5,
        ));
    }

    {
        let mut worst: f64 = 0.0;
        for t in [0.05, 0.4, 2.0] {
            let a = heat_trace(&make_operator(0.6, 1.1, 1.3).unwrap(), t, 1e-13)
                .unwrap()
                .value;
            let b = heat_trace(&make_operator(-0.6, 1.1, 1.3).unwrap(), t, 1e-13)
                .unwrap()
                .value;
            worst = worst.max((a - b).abs());
        }
        checks.push(adjudicated("heat_trace_tau1_reflection", worst, 1e-13));
    }

    {
        let s = make_operator(0.2, 1.3, 0.9).unwrap();
        let mut worst: f64 = 0.0;
        for t in [0.05, 0.3, 1.0, 4.0] {
            let theta = heat_trace(&s, t, 1e-13).unwrap().value;
            let r = heat_remainder(&s, t, 1e-13).unwrap();
            let sub = (-s.v0 * t).exp() / (4.0 * PI * t);
            worst = worst.max((r + sub - theta).abs());
        }
        checks.push(adjudicated("heat_remainder_definition", worst, 1e-12));
    }

    // --- spectrum symmetries ----------------------------------------------

    {
        let s = random_spec(&mut rng);
        let n = 12i64;
        let mut worst: f64 = 0.0;
        for m in -n..=n {
            for k in -n..=n {
                let a = eigenvalue(&s, ModeIndex::new(m, k));
                let b = eigenvalue(&s, ModeIndex::new(-m, -k));
                worst = worst.max((a - b).abs() / a);
            }
        }
        checks.push(adjudicated("spectrum_negation_symmetry", worst, 1e-14));
    }

    {
        // τ₁ → τ₁ + 1 with n → n + m relabelling preserves the spectrum.
        let base = random_spec(&mut rng);
        let shifted = make_operator(base.tau1 + 1.0, base.tau2, base.v0).unwrap();
        let n = 10i64;
        let mut worst: f64 = 0.0;
        for m in -n..=n {
            for k in -n..=n {
                let a = quadratic_form(&base, ModeIndex::new(m, k));
                let b = quadratic_form(&shifted, ModeIndex::new(m, k + m));
                worst = worst.max((a - b).abs() / (1.0 + a));
            }
        }
        checks.push(adjudicated("spectrum_modular_t_shift", worst, 1e-12));
    }

    // --- zeta routes --------------------------------------------------------

    {
        let mut worst_dm: f64 = 0.0;
        let mut worst_ds: f64 = 0.0;
        let mut failed = false;
        for _ in 0..10 {
            let spec = random_spec(&mut rng);
            for s_re in [1.5, 2.0, 3.0] {
                let s = Complex64::new(s_re, 0.0);
                let zd = zeta_direct(&spec, s, 1e-9);
                let zm = zeta_mellin(&spec, s, 1e-9);
                let zs = zeta_subtraction(&spec, s, 1e-9);
                match (zd, zm, zs) {
                    (Ok(zd), Ok(zm), Ok(zs)) => {
                        worst_dm = worst_dm.max((zd.value - zm.value).norm());
                        worst_ds = worst_ds.max((zd.value - zs.value).norm());
                    }
                    (a, b, c) => {
                        for r in [a, b, c] {
                            if let Err(e) = r {
                                record_budget(&mut budget_failures, "zeta_route_agreement", &e);
                                failed = true;
                            }
                        }
                    }
                }
                if failed {
                    break;
                }
            }
            if failed {
                break;
            }
        }
        checks.push(adjudicated("zeta_direct_vs_mellin", worst_dm, 1e-7));
        checks.push(adjudicated("zeta_direct_vs_subtraction", worst_ds, 1e-7));
    }

    {
        let spec = make_operator(0.0, 1.0, 1.0).unwrap();
        let z0 = zeta_subtraction(&spec, Complex64::new(1e-4, 0.0), 1e-11).unwrap();
        let z1 = zeta_subtraction(&spec, Complex64::new(-1e-4, 0.0), 1e-11).unwrap();
        let mid = 0.5 * (z0.value.re + z1.value.re);
        let expect = -spec.v0 / (4.0 * PI);
        checks.push(adjudicated(
            "zeta_at_origin_matches_minus_v0_over_4pi",
            (mid - expect).abs(),
            1e-6,
        ));
    }

    {
        let specs = [
            (0.0, 1.0, 1.0),
            (0.5, 1.0, 1.0),
            (0.3, 2.0, 0.5),
            (-0.4, 0.8, 2.0),
            (0.25, 1.6, 4.0),
        ];
        let mut worst: f64 = 0.0;
        for (t1, t2, v0) in specs {
            let spec = make_operator(t1, t2, v0).unwrap();
            match (
                zeta_prime0_oracle(&spec, 1e-12),
                zeta_prime0_finite_difference(&spec, 1e-12),
            ) {
                (Ok((v, _)), Ok(fd)) => worst = worst.max((v - fd).abs()),
                (a, b) => {
                    if let Err(e) = a {
                        record_budget(&mut budget_failures, "oracle_fd", &e);
                    }
                    if let Err(e) = b {
                        record_budget(&mut budget_failures, "oracle_fd", &e);
                    }
                }
            }
        }
        checks.push(adjudicated(
            "oracle_vs_richardson_finite_difference",
            worst,
            1e-6,
        ));
    }

    {
        // Both sides evaluated well below the asserted 1e-10 agreement so
        // the certified truncation tails cannot consume the budget.
        let tight = series_tol.min(1e-11);
        let mut worst: f64 = 0.0;
        for _ in 0..10 {
            let spec = random_spec(&mut rng);
            let a = psi_paper(&spec, tight).unwrap();
            let b = psi_closed_form(&spec, tight).unwrap();
            worst = worst.max((a.total - b.total).abs());
        }
        checks.push(adjudicated("psi_paper_vs_closed_form", worst, 1e-10));
    }

    {
        let specs = [
            (0.0, 1.0, 1.0),
            (0.3, 0.8, 0.5),
            (0.5, 1.0, 4.0),
            (0.3, 2.0, 1.0),
            (0.5, 2.0, 0.5),
        ];
        let mut worst: f64 = 0.0;
        for (t1, t2, v0) in specs {
            let spec = make_operator(t1, t2, v0).unwrap();
            let r = compare_routes(&spec, &opts);
            match r.residual_corrected_vs_oracle {
                Some(res) => worst = worst.max(res),
                None => {
                    for e in &r.route_errors {
                        budget_failures.push(format!("corrected_vs_oracle: {e}"));
                    }
                }
            }
        }
        checks.push(adjudicated("corrected_vs_oracle", worst, 1e-5));
    }

    {
        // Every route even under τ₁ → −τ₁.
        let spec_p = make_operator(0.45, 1.1, 0.9).unwrap();
        let spec_m = make_operator(-0.45, 1.1, 0.9).unwrap();
        let rp = compare_routes(&spec_p, &opts);
        let rm = compare_routes(&spec_m, &opts);
        let mut worst: f64 = 0.0;
        for (a, b) in [
            (rp.psi_paper, rm.psi_paper),
            (rp.psi_corrected, rm.psi_corrected),
            (rp.psi_oracle, rm.psi_oracle),
        ] {
            if let (Some(x), Some(y)) = (a, b) {
                worst = worst.max((x - y).abs());
            }
        }
        checks.push(adjudicated("routes_tau1_reflection", worst, 1e-6));
    }

    {
        // True spectral invariance under τ₁ → τ₁ + 1: oracle route only.
        let a = zeta_prime0_oracle(&make_operator(0.3, 1.2, 1.0).unwrap(), quad_tol);
        let b = zeta_prime0_oracle(&make_operator(1.3, 1.2, 1.0).unwrap(), quad_tol);
        match (a, b) {
            (Ok((x, _)), Ok((y, _))) => {
                checks.push(adjudicated("oracle_modular_t_shift", (x - y).abs(), 1e-6));
                // Whether the published series shares it is measured, not asserted.
                let pa = psi_paper(&make_operator(0.3, 1.2, 1.0).unwrap(), series_tol).unwrap();
                let pb = psi_paper(&make_operator(1.3, 1.2, 1.0).unwrap(), series_tol).unwrap();
                checks.push(report("paper_t_shift_deviation", (pa.total - pb.total).abs()));
            }
            (a, b) => {
                for r in [a, b] {
                    if let Err(e) = r {
                        record_budget(&mut budget_failures, "oracle_modular_t_shift", &e);
                    }
                }
            }
        }
    }

    {
        let mut dets = Vec::new();
        let mut failed = false;
        for v0 in [0.5, 1.0, 2.0, 4.0] {
            let spec = make_operator(0.0, 1.0, v0).unwrap();
            match determinant(&spec, DetRoute::Oracle, &opts) {
                Ok(d) => dets.push(d),
                Err(e) => {
                    record_budget(&mut budget_failures, "determinant_monotone_in_v0", &e);
                    failed = true;
                    break;
                }
            }
        }
        if !failed {
            let monotone = dets.windows(2).all(|w| w[1] > w[0]);
            checks.push(adjudicated(
                "determinant_monotone_in_v0",
                if monotone { 0.0 } else { 1.0 },
                0.5,
            ));
        }
    }

    {
        // Measured relation behind Ψ = lim (Γ(s)ζ(s) + 1/s): the limit only
        // exists when ζ(0) = −1; here ζ(0) = −V₀/(4π), so the measured
        // offset at s = 1e−3 should track (1 + ζ(0))/s − γ ζ(0).
        let spec = make_operator(0.0, 1.0, 1.0).unwrap();
        let s = 1e-3;
        let zs = zeta_subtraction(&spec, Complex64::new(s, 0.0), 1e-12).unwrap();
        let lhs = crate::special::gamma(s).unwrap() * zs.value.re + 1.0 / s;
        let (zp0, _) = zeta_prime0_oracle(&spec, 1e-12).unwrap();
        let z0 = -spec.v0 / (4.0 * PI);
        let euler_gamma = 0.577_215_664_901_532_9;
        let predicted_offset = (1.0 + z0) / s - euler_gamma * z0;
        checks.push(report("gamma_zeta_limit_measured_offset", lhs - zp0));
        checks.push(report(
            "gamma_zeta_limit_offset_minus_predicted",
            (lhs - zp0 - predicted_offset).abs(),
        ));
    }

    {
        // Residual of the published series against the oracle: measurement.
        let spec = make_operator(0.5, 1.0, 1.0).unwrap();
        let r = compare_routes(&spec, &opts);
        if let Some(res) = r.residual_paper_vs_oracle {
            checks.push(report("paper_vs_oracle_residual_at_half", res));
        }
        let bar = r.err_psi_paper.unwrap_or(f64::INFINITY)
            + r.err_psi_oracle.unwrap_or(f64::INFINITY);
        checks.push(adjudicated("paper_vs_oracle_error_bar", bar, 2e-5));
    }

    SuiteOutcome {
        checks,
        budget_failures,
    }
}
